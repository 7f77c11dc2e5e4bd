// Copyright 2026 The qobs developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qobs/rational.hpp"

namespace qobs {

/// Index of an element within one structure.
using ElementId = int32_t;

/// Hard cap on carrier size. Suprema and infima of monotone sequences in a
/// finite carrier are attained, so sigma-completeness is automatic at this
/// scale.
inline constexpr int kMaxElements = 4096;
/// Exhaustive refinement search is run only up to this size; larger
/// structures carry the flag only when built by flag-preserving combinators.
inline constexpr int kRdpExhaustiveMax = 12;
/// Meet/join tables and the lattice-dependent flags are computed
/// exhaustively up to this size.
inline constexpr int kExhaustiveFlavorMax = 512;
/// Fixed-point closure bound for fuzzy carriers.
inline constexpr int kFuzzyClosureMax = 4096;

/// Verified structure classes. A cleared flag means "not verified", which
/// for small structures (every exhaustive check ran) coincides with "false".
struct Flavor {
  bool mv = false;
  bool lattice = false;
  bool boolean_algebra = false;
  bool orthomodular_poset = false;
  bool rdp = false;

  /// Fixed display order: mv, lattice, boolean, omp, rdp.
  std::vector<std::string> names() const;
};

class QuantumStructure;
using StructurePtr = std::shared_ptr<const QuantumStructure>;

/// Parsed but unvalidated partial-addition table. Entries are one-sided;
/// the symmetric closure and the 0+a=a rows are filled in automatically
/// before the axioms are checked.
struct RawStructureTable {
  std::vector<std::string> names;
  std::string zero_name = "0";
  std::string one_name = "1";
  std::vector<std::array<ElementId, 3>> entries;  // a + b = c
};

/// A finite effect algebra as a validated table: partial +, constants 0/1,
/// the derived complement, order, and verified class flags. Immutable after
/// construction; every operation on it is pure.
class QuantumStructure {
 public:
  int size() const { return n_; }
  const std::string& name(ElementId a) const { return names_[a]; }
  std::optional<ElementId> find(std::string_view name) const;
  /// Like find() but throws Error(precondition_failed) when absent.
  ElementId id_of(std::string_view name) const;

  ElementId zero() const { return zero_; }
  ElementId one() const { return one_; }

  bool plus_defined(ElementId a, ElementId b) const {
    return plus_[idx(a, b)] >= 0;
  }
  std::optional<ElementId> try_plus(ElementId a, ElementId b) const;
  /// Throws Error(not_summable) when a+b is undefined.
  ElementId plus(ElementId a, ElementId b) const;

  ElementId complement(ElementId a) const { return comp_[a]; }

  bool leq(ElementId a, ElementId b) const;
  /// b - a when a <= b, i.e. the unique c with a + c = b.
  std::optional<ElementId> try_minus(ElementId b, ElementId a) const;

  std::optional<ElementId> meet(ElementId a, ElementId b) const;
  std::optional<ElementId> join(ElementId a, ElementId b) const;

  const Flavor& flavor() const { return flavor_; }

  /// Partners b with a+b defined, ascending.
  const std::vector<ElementId>& addable(ElementId a) const {
    return addable_[a];
  }

  /// Structural equality: same names, constants and table.
  bool same_as(const QuantumStructure& other) const;

  /// Elements c with c <= a, as a bit row (words of 64).
  std::span<const uint64_t> lower_cone(ElementId a) const;

 private:
  QuantumStructure() = default;
  friend class StructureBuilder;

  size_t idx(ElementId a, ElementId b) const {
    return size_t(a) * size_t(n_) + size_t(b);
  }

  int n_ = 0;
  std::vector<std::string> names_;
  ElementId zero_ = 0, one_ = 0;
  std::vector<int32_t> plus_;  // n*n, -1 = undefined
  std::vector<int32_t> sub_;   // sub_[b*n+a] = b-a, -1 = undefined
  std::vector<ElementId> comp_;
  size_t words_ = 0;
  std::vector<uint64_t> down_;  // lower-cone bitsets, row-major
  std::vector<std::vector<ElementId>> addable_;
  bool has_lattice_tables_ = false;
  std::vector<int32_t> meet_, join_;  // -1 = does not exist
  Flavor flavor_;
};

/// Exhaustively checks axioms (i)-(iv), derives complement/order/flags and
/// freezes the structure. Errors: AxiomViolation (axiom_i..axiom_iv with a
/// witness), missing_complement, duplicate_entry.
StructurePtr validate_structure(const RawStructureTable& raw);

/// Total MV reduct on top of an effect-algebra carrier. The induced partial
/// sum (a+b defined iff a <= b*, then a+b = a (+) b) is the base table.
struct MvStructure {
  StructurePtr base;
  std::vector<int32_t> oplus;  // n*n, total
  std::vector<ElementId> star;

  ElementId op(ElementId a, ElementId b) const {
    return oplus[size_t(a) * size_t(base->size()) + size_t(b)];
  }
  ElementId st(ElementId a) const { return star[a]; }
};

/// Recovers the MV reduct of a structure whose mv flag is verified, via
/// a (+) b = a + (a' /\ b).
MvStructure to_mv(StructurePtr s);

/// The chain 0, 1/n, ..., 1 with a (+) b = min(a+b, 1) and a* = 1 - a.
MvStructure make_chain(int n);

/// Boolean algebra of all subsets of the labels; + is disjoint union.
/// Caps at 12 labels (the carrier cap of 4096 elements).
MvStructure make_power_set(std::span<const std::string> labels);

/// Coordinatewise partial sum; (a1,a2)+(b1,b2) defined iff both coordinates
/// are. Errors: size_overflow above kMaxElements.
StructurePtr product(const QuantumStructure& s1, const QuantumStructure& s2);

/// System of [0,1]-valued rational vectors over a finite point set, closed
/// under f -> 1-f and admissible pointwise sums.
struct FuzzyCarrier {
  std::vector<std::string> omega;
  std::vector<std::vector<Rational>> functions;  // [element][point]
};

struct FuzzyStructure {
  StructurePtr structure;
  FuzzyCarrier carrier;
};

/// Closes the given functions under complement and admissible pointwise
/// sums to a fixed point, then validates the resulting structure.
/// `names` (optional, parallel to `functions`) label the listed generators;
/// closure elements get canonical vector names, constants are named 0 / 1.
/// Errors: closure_overflow beyond kFuzzyClosureMax, out_of_range.
FuzzyStructure make_fuzzy(std::vector<std::string> omega,
                          std::vector<std::vector<Rational>> functions,
                          std::vector<std::string> names = {});

/// Effect-algebra homomorphism with verified properties.
struct Homomorphism {
  StructurePtr source, target;
  std::vector<ElementId> map;
  bool surjective = false;
  bool mv = false;  // preserves (+) and * of the MV reducts

  ElementId operator()(ElementId a) const { return map[a]; }
};

/// Verifies h(1)=1 and preservation of every defined sum.
Homomorphism make_homomorphism(StructurePtr source, StructurePtr target,
                               std::vector<ElementId> map);

/// Additionally verifies preservation of (+) and *.
Homomorphism make_mv_homomorphism(const MvStructure& source,
                                  const MvStructure& target,
                                  std::vector<ElementId> map);

/// First or second coordinate projection of a structure built by product().
Homomorphism product_projection(StructurePtr prod, StructurePtr s1,
                                StructurePtr s2, int which);

/// Restriction f -> f|kept of a fuzzy structure onto a subset of its points.
/// The target is the closure of the restricted functions (written to
/// `target_out`), so the map need not be onto; the surjective flag reports
/// the truth.
Homomorphism fuzzy_restriction(const FuzzyStructure& source,
                               std::span<const int> keep_points,
                               FuzzyStructure* target_out);

/// Witness for compatibility: a = a1 + c, b = b1 + c, a1 + b1 + c defined.
struct CompatibilityWitness {
  ElementId a1, b1, c;
};

std::optional<CompatibilityWitness> is_compatible(const QuantumStructure& s,
                                                  ElementId a, ElementId b);

/// All maximal sets of mutually compatible elements, each sorted ascending,
/// listed in lexicographic order. In lattice structures every block is
/// additionally verified closed under meet, join and complement.
std::vector<std::vector<ElementId>> blocks(const QuantumStructure& s);

struct SharpElementsReport {
  std::vector<ElementId> elements;        // a with a /\ a' = 0
  std::vector<ElementId> meet_undefined;  // excluded: a /\ a' does not exist
};

SharpElementsReport sharp_elements(const QuantumStructure& s);

/// Common refinement of a1 + a2 = b1 + b2:
///   a1 = c11 + c12, a2 = c21 + c22, b1 = c11 + c21, b2 = c12 + c22.
struct RefinementMatrix {
  ElementId c11, c12, c21, c22;
};

/// Exhaustive search, returning the lexicographically smallest
/// (c11, c12, c21) index tuple. Errors: precondition_failed, no_refinement.
RefinementMatrix rdp_refine(const QuantumStructure& s, ElementId a1,
                            ElementId a2, ElementId b1, ElementId b2);

/// For h with h(a) = 0 = h(b) on a structure with verified RDP: an element
/// c >= a, c >= b with h(c) = 0, built as c11 + c12 + c21 from a refinement
/// of a + a' = b + b'.
ElementId jauch_piron_witness(const Homomorphism& h, ElementId a, ElementId b);

/// For a surjective MV-homomorphism h and A <= B with h(A) <= c <= h(B):
/// an element C = A \/ (B /\ C1) with A <= C <= B and h(C) = c, where C1 is
/// the lowest-index preimage of c. Errors: precondition_failed,
/// not_surjective.
ElementId mv_lift(const Homomorphism& h, ElementId A, ElementId B, ElementId c);

/// Left fold in ascending index order; order-independence follows from the
/// verified axioms. Errors: not_summable, reporting the failing prefix.
ElementId summable_sum(const QuantumStructure& s,
                       std::span<const ElementId> items);

/// Closure of `subset` under + and complement, with 0 and 1 present.
bool is_subalgebra(const QuantumStructure& s, std::span<const ElementId> subset);

}  // namespace qobs

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

#include <optional>
#include <string>
#include <vector>

#include "qobs/algebra.hpp"
#include "qobs/intervals.hpp"

namespace qobs {

/// Spectrum-point caps for the quantified checks over the generated
/// interval algebra (2^(2k+1) members for k points).
inline constexpr int kUniquenessMaxPoints = 10;
inline constexpr int kPairScanMaxPoints = 6;

struct ObservableAtom {
  Rational point;
  ElementId effect;
};

/// Finite-support observable: x(E) = sum of the atom effects whose spectrum
/// point lies in E. Canonical form: atoms sorted by strictly increasing
/// point, zero effects dropped, effects summing to 1.
class Observable {
 public:
  /// Errors: duplicate_point, not_summable, total_not_one.
  static Observable make(StructurePtr s, std::vector<ObservableAtom> atoms);

  const StructurePtr& structure() const { return s_; }
  const std::vector<ObservableAtom>& atoms() const { return atoms_; }
  std::vector<Rational> spectrum_points() const;

  ElementId evaluate(const IntervalSet& e) const;

  friend bool operator==(const Observable& a, const Observable& b);

 private:
  Observable(StructurePtr s, std::vector<ObservableAtom> atoms)
      : s_(std::move(s)), atoms_(std::move(atoms)) {}
  StructurePtr s_;
  std::vector<ObservableAtom> atoms_;
};

/// The two-valued observable of a: atoms (0, a') and (1, a).
Observable make_question(StructurePtr s, ElementId a);

struct SpectralJump {
  Rational point;
  ElementId cumulative;
};

/// Left-continuous step family t -> x_t given by jump points and cumulative
/// values: x_t = c_i for t in (t_i, t_{i+1}], x_t = 0 for t <= t_1, with the
/// final cumulative value 1. Monotonicity with defined differences is
/// verified at construction; left continuity and the 0/1 limits hold by the
/// representation.
class SpectralFamily {
 public:
  /// Errors: family_invalid with the first failing condition.
  static SpectralFamily make(StructurePtr s, std::vector<SpectralJump> jumps);

  const StructurePtr& structure() const { return s_; }
  const std::vector<SpectralJump>& jumps() const { return jumps_; }

  /// x_t for an arbitrary real cut point.
  ElementId at(const Rational& t) const;

  friend bool operator==(const SpectralFamily& a, const SpectralFamily& b);

 private:
  SpectralFamily(StructurePtr s, std::vector<SpectralJump> jumps)
      : s_(std::move(s)), jumps_(std::move(jumps)) {}
  StructurePtr s_;
  std::vector<SpectralJump> jumps_;
};

struct FamilyAxiomReport {
  bool representation_ok = true;   // strictly increasing jump points
  bool monotone_ok = true;         // cumulative values increase with defined differences
  bool top_is_one = true;          // supremum half of the 0/1 limits
  bool bottom_is_zero = true;      // infimum half; holds by the step form
  bool left_continuous = true;     // holds by the step form
  std::string detail;              // first failure, human-readable

  bool all_ok() const {
    return representation_ok && monotone_ok && top_is_one && bottom_is_zero &&
           left_continuous;
  }
};

/// Non-throwing diagnosis of a raw jump list.
FamilyAxiomReport check_family_axioms(const StructurePtr& s,
                                      const std::vector<SpectralJump>& raw);

/// x_t = x((-inf, t)) of a finite observable, as cumulative sums.
SpectralFamily spectral_family(const Observable& x);

/// The unique observable with the given spectral family: atoms are the
/// consecutive differences, zero differences dropped.
Observable reconstruct(const SpectralFamily& f);

struct UniquenessReport {
  bool agree = false;
  std::optional<IntervalSet> witness;  // a set where the two disagree
};

/// Exhausts the finite algebra generated by both spectra and reports
/// whether the two observables agree on all of it. Capped at
/// kUniquenessMaxPoints combined points.
UniquenessReport uniqueness_oracle(const Observable& x, const Observable& y);

/// All values x(E): the subset sums of the atom effects, ascending.
std::vector<ElementId> range(const Observable& x);

/// Point function of a spectral family on a Boolean structure: for each
/// atom w of the algebra, the least jump point whose cumulative value lies
/// above w.
struct PointFunction {
  std::vector<ElementId> carrier;       // atoms of the Boolean structure
  std::vector<std::string> labels;      // their display names
  std::vector<Rational> values;         // f(w) per carrier atom
};

PointFunction boolean_point_function(const SpectralFamily& f);

/// The observable induced by a point function: effects are joins of the
/// carrier atoms sharing a value.
Observable preimage_observable(StructurePtr s, const PointFunction& f);

/// Whether evaluation turns intersections into meets on the whole generated
/// algebra of the spectrum. Requires the boolean flag.
bool is_boolean_sigma_hom(const Observable& x);

/// Range contained in the sharp elements.
bool is_sharp(const Observable& x);

/// Meets of pairs of range values exist and match evaluation on
/// intersections, over the generated algebra. Errors: meet_undefined.
bool preserves_finite_intersections(const Observable& x);

/// x(E) = 1 = x(F) implies x(E n F) = 1, quantified over the generated
/// algebra.
bool jauch_piron_check(const Observable& x);

/// The least closed full-measure set: exactly the spectrum points.
/// Errors: jauch_piron_failed when the gate fails.
IntervalSet spectrum(const Observable& x);

/// f applied to the outcomes: atoms regrouped by equal f-values. The table
/// must cover every spectrum point (partial_function).
Observable functional_calculus(
    const Observable& x,
    const std::vector<std::pair<Rational, Rational>>& table);

}  // namespace qobs

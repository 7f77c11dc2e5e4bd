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

#include "qobs/observable.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qobs/errors.hpp"

namespace qobs {

namespace {

// The partition of the reals induced by a point set: k+1 open gaps
// interleaved with k singletons. Every member of the generated algebra is a
// union of these atoms, addressed by a bit mask (bit 2i = gap i, bit 2i+1 =
// singleton i).
class SpectrumPartition {
 public:
  explicit SpectrumPartition(std::vector<Rational> points)
      : points_(std::move(points)) {
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  }

  size_t point_count() const { return points_.size(); }
  size_t atom_count() const { return 2 * points_.size() + 1; }
  const std::vector<Rational>& points() const { return points_; }

  uint32_t singleton_bit(size_t i) const { return uint32_t(1) << (2 * i + 1); }

  uint32_t all_singletons_mask() const {
    uint32_t m = 0;
    for (size_t i = 0; i < points_.size(); ++i) m |= singleton_bit(i);
    return m;
  }

  IntervalSet set_for_mask(uint32_t mask) const {
    std::vector<IntervalPiece> pieces;
    auto endpoint = [&](std::optional<Rational> v,
                        bool closed) -> Endpoint {
      if (!v) return Endpoint{Endpoint::Kind::neg_inf, Rational(0), false};
      return Endpoint{Endpoint::Kind::finite, *v, closed};
    };
    const size_t k = points_.size();
    for (size_t i = 0; i <= k; ++i) {
      if (mask & (uint32_t(1) << (2 * i))) {
        Endpoint lo = i == 0 ? Endpoint{Endpoint::Kind::neg_inf, Rational(0), false}
                             : endpoint(points_[i - 1], false);
        Endpoint hi = i == k ? Endpoint{Endpoint::Kind::pos_inf, Rational(0), false}
                             : endpoint(points_[i], false);
        pieces.push_back(IntervalPiece{lo, hi});
      }
      if (i < k && (mask & singleton_bit(i)))
        pieces.push_back(IntervalPiece{endpoint(points_[i], true),
                                       endpoint(points_[i], true)});
    }
    return IntervalSet::from_pieces(pieces);
  }

  /// evaluate(x, set_for_mask(m)) for every mask, by subset-sum recursion.
  /// Gap atoms carry no spectrum point, so only singleton bits contribute.
  std::vector<ElementId> evaluation_table(const Observable& x) const {
    const QuantumStructure& s = *x.structure();
    std::vector<ElementId> contrib(atom_count(), s.zero());
    for (const auto& atom : x.atoms()) {
      auto it = std::lower_bound(points_.begin(), points_.end(), atom.point);
      if (it == points_.end() || *it != atom.point)
        fail(Errc::internal_error, "partition misses a spectrum point");
      contrib[2 * (it - points_.begin()) + 1] = atom.effect;
    }
    std::vector<ElementId> table(size_t(1) << atom_count());
    table[0] = s.zero();
    for (uint32_t mask = 1; mask < table.size(); ++mask) {
      uint32_t low = mask & (~mask + 1);
      int bit = std::countr_zero(low);
      auto sum = s.try_plus(table[mask ^ low], contrib[bit]);
      if (!sum)
        fail(Errc::internal_error, "sub-multiset of a summable family not summable");
      table[mask] = *sum;
    }
    return table;
  }

 private:
  std::vector<Rational> points_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Observable

Observable Observable::make(StructurePtr s, std::vector<ObservableAtom> atoms) {
  const QuantumStructure& q = *s;
  std::sort(atoms.begin(), atoms.end(),
            [](const ObservableAtom& a, const ObservableAtom& b) {
              return a.point < b.point;
            });
  for (size_t i = 0; i + 1 < atoms.size(); ++i)
    if (atoms[i].point == atoms[i + 1].point)
      fail(Errc::duplicate_point,
           "duplicate spectrum point " + to_string(atoms[i].point));
  std::vector<ObservableAtom> canonical;
  std::vector<ElementId> effects;
  for (auto& a : atoms) {
    if (a.effect < 0 || a.effect >= q.size())
      fail(Errc::precondition_failed, "effect id out of range");
    if (a.effect == q.zero()) continue;
    effects.push_back(a.effect);
    canonical.push_back(std::move(a));
  }
  ElementId total =
      effects.empty() ? q.zero() : summable_sum(q, effects);  // not_summable
  if (total != q.one())
    fail(Errc::total_not_one, "atom effects sum to " + q.name(total));
  return Observable(std::move(s), std::move(canonical));
}

std::vector<Rational> Observable::spectrum_points() const {
  std::vector<Rational> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back(a.point);
  return out;
}

ElementId Observable::evaluate(const IntervalSet& e) const {
  ElementId acc = s_->zero();
  for (const auto& atom : atoms_) {
    if (!e.contains(atom.point)) continue;
    auto sum = s_->try_plus(acc, atom.effect);
    if (!sum)
      fail(Errc::internal_error, "sub-multiset of a summable family not summable");
    acc = *sum;
  }
  return acc;
}

bool operator==(const Observable& a, const Observable& b) {
  if (!a.s_->same_as(*b.s_)) return false;
  if (a.atoms_.size() != b.atoms_.size()) return false;
  for (size_t i = 0; i < a.atoms_.size(); ++i)
    if (a.atoms_[i].point != b.atoms_[i].point ||
        a.atoms_[i].effect != b.atoms_[i].effect)
      return false;
  return true;
}

Observable make_question(StructurePtr s, ElementId a) {
  const QuantumStructure& q = *s;
  if (a < 0 || a >= q.size())
    fail(Errc::precondition_failed, "element id out of range");
  std::vector<ObservableAtom> atoms{{Rational(0), q.complement(a)},
                                    {Rational(1), a}};
  return Observable::make(std::move(s), std::move(atoms));
}

// ---------------------------------------------------------------------------
// Spectral families

SpectralFamily SpectralFamily::make(StructurePtr s,
                                    std::vector<SpectralJump> jumps) {
  FamilyAxiomReport report = check_family_axioms(s, jumps);
  if (!report.all_ok()) fail(Errc::family_invalid, report.detail);
  return SpectralFamily(std::move(s), std::move(jumps));
}

ElementId SpectralFamily::at(const Rational& t) const {
  ElementId value = s_->zero();
  for (const auto& j : jumps_) {
    if (j.point < t) value = j.cumulative;  // x_t = x((-inf, t)), open above
  }
  return value;
}

bool operator==(const SpectralFamily& a, const SpectralFamily& b) {
  if (!a.s_->same_as(*b.s_)) return false;
  if (a.jumps_.size() != b.jumps_.size()) return false;
  for (size_t i = 0; i < a.jumps_.size(); ++i)
    if (a.jumps_[i].point != b.jumps_[i].point ||
        a.jumps_[i].cumulative != b.jumps_[i].cumulative)
      return false;
  return true;
}

FamilyAxiomReport check_family_axioms(const StructurePtr& s,
                                      const std::vector<SpectralJump>& raw) {
  const QuantumStructure& q = *s;
  FamilyAxiomReport report;
  for (size_t i = 0; i + 1 < raw.size(); ++i) {
    if (!(raw[i].point < raw[i + 1].point)) {
      report.representation_ok = false;
      report.detail = "jump points not strictly increasing at " +
                      to_string(raw[i + 1].point);
      return report;
    }
  }
  ElementId prev = q.zero();
  for (const auto& j : raw) {
    if (j.cumulative < 0 || j.cumulative >= q.size()) {
      report.representation_ok = false;
      report.detail = "cumulative element out of range";
      return report;
    }
    if (!q.leq(prev, j.cumulative) || !q.try_minus(j.cumulative, prev)) {
      report.monotone_ok = false;
      report.detail = "monotonicity fails at t = " + to_string(j.point) +
                      ": " + q.name(prev) + " is not below " +
                      q.name(j.cumulative);
      return report;
    }
    prev = j.cumulative;
  }
  if (prev != q.one()) {
    report.top_is_one = false;
    report.detail = "family tops out at " + q.name(prev) + ", not 1";
  }
  return report;
}

SpectralFamily spectral_family(const Observable& x) {
  const QuantumStructure& q = *x.structure();
  std::vector<SpectralJump> jumps;
  ElementId acc = q.zero();
  for (const auto& atom : x.atoms()) {
    acc = q.plus(acc, atom.effect);
    jumps.push_back(SpectralJump{atom.point, acc});
  }
  if (x.atoms().empty() && q.zero() != q.one())
    fail(Errc::internal_error, "observable with empty support");
  return SpectralFamily::make(x.structure(), std::move(jumps));
}

Observable reconstruct(const SpectralFamily& f) {
  const QuantumStructure& q = *f.structure();
  std::vector<ObservableAtom> atoms;
  ElementId prev = q.zero();
  for (const auto& j : f.jumps()) {
    auto diff = q.try_minus(j.cumulative, prev);
    if (!diff) fail(Errc::internal_error, "validated family lost monotonicity");
    if (*diff != q.zero()) atoms.push_back(ObservableAtom{j.point, *diff});
    prev = j.cumulative;
  }
  return Observable::make(f.structure(), std::move(atoms));
}

// ---------------------------------------------------------------------------
// Uniqueness and range

namespace {

std::vector<Rational> merged_points(const Observable& x, const Observable& y) {
  std::vector<Rational> points = x.spectrum_points();
  auto more = y.spectrum_points();
  points.insert(points.end(), more.begin(), more.end());
  return points;
}

}  // namespace

UniquenessReport uniqueness_oracle(const Observable& x, const Observable& y) {
  if (!x.structure()->same_as(*y.structure()))
    fail(Errc::structure_mismatch, "observables live on different structures");
  SpectrumPartition partition(merged_points(x, y));
  if (partition.point_count() > kUniquenessMaxPoints)
    fail(Errc::too_large, "combined spectrum exceeds the oracle cap of " +
                              std::to_string(kUniquenessMaxPoints) + " points");
  auto ex = partition.evaluation_table(x);
  auto ey = partition.evaluation_table(y);
  for (uint32_t mask = 0; mask < ex.size(); ++mask) {
    if (ex[mask] != ey[mask]) {
      UniquenessReport r;
      r.agree = false;
      r.witness = partition.set_for_mask(mask);
      return r;
    }
  }
  return UniquenessReport{true, std::nullopt};
}

std::vector<ElementId> range(const Observable& x) {
  const QuantumStructure& q = *x.structure();
  std::vector<char> reachable(q.size(), 0);
  reachable[q.zero()] = 1;
  for (const auto& atom : x.atoms()) {
    // each atom used at most once: extend the previous generation only
    std::vector<ElementId> current;
    for (ElementId v = 0; v < q.size(); ++v)
      if (reachable[v]) current.push_back(v);
    for (ElementId v : current) {
      auto sum = q.try_plus(v, atom.effect);
      if (!sum)
        fail(Errc::internal_error, "sub-multiset of a summable family not summable");
      reachable[*sum] = 1;
    }
  }
  std::vector<ElementId> out;
  for (ElementId v = 0; v < q.size(); ++v)
    if (reachable[v]) out.push_back(v);
  return out;
}

// ---------------------------------------------------------------------------
// Boolean point functions

namespace {

std::vector<ElementId> boolean_atoms(const QuantumStructure& s) {
  std::vector<ElementId> atoms;
  for (ElementId a = 0; a < s.size(); ++a) {
    if (a == s.zero()) continue;
    auto cone = s.lower_cone(a);
    size_t below = 0;
    for (uint64_t w : cone) below += std::popcount(w);
    if (below == 2) atoms.push_back(a);  // exactly 0 and a itself
  }
  return atoms;
}

}  // namespace

PointFunction boolean_point_function(const SpectralFamily& f) {
  const QuantumStructure& s = *f.structure();
  if (!s.flavor().boolean_algebra)
    fail(Errc::precondition_failed, "structure is not a verified Boolean algebra");
  PointFunction out;
  out.carrier = boolean_atoms(s);
  for (ElementId w : out.carrier) {
    out.labels.push_back(s.name(w));
    bool found = false;
    for (const auto& j : f.jumps()) {
      if (s.leq(w, j.cumulative)) {
        out.values.push_back(j.point);
        found = true;
        break;
      }
    }
    if (!found)
      fail(Errc::internal_error, "carrier atom not below the top of the family");
  }
  return out;
}

Observable preimage_observable(StructurePtr s, const PointFunction& f) {
  const QuantumStructure& q = *s;
  std::map<Rational, ElementId> groups;  // value -> join of carrier atoms
  for (size_t i = 0; i < f.carrier.size(); ++i) {
    auto [it, fresh] = groups.emplace(f.values[i], f.carrier[i]);
    if (!fresh) {
      auto j = q.join(it->second, f.carrier[i]);
      if (!j) fail(Errc::internal_error, "join missing in Boolean structure");
      it->second = *j;
    }
  }
  std::vector<ObservableAtom> atoms;
  for (const auto& [value, effect] : groups)
    atoms.push_back(ObservableAtom{value, effect});
  return Observable::make(std::move(s), std::move(atoms));
}

// ---------------------------------------------------------------------------
// Sharpness, meets, Jauch-Piron, spectrum

bool is_boolean_sigma_hom(const Observable& x) {
  const QuantumStructure& s = *x.structure();
  if (!s.flavor().boolean_algebra)
    fail(Errc::precondition_failed, "structure is not a verified Boolean algebra");
  SpectrumPartition partition(x.spectrum_points());
  if (partition.point_count() > kPairScanMaxPoints)
    fail(Errc::too_large, "spectrum exceeds the pairwise-scan cap of " +
                              std::to_string(kPairScanMaxPoints) + " points");
  auto table = partition.evaluation_table(x);
  for (uint32_t m1 = 0; m1 < table.size(); ++m1)
    for (uint32_t m2 = 0; m2 <= m1; ++m2) {
      auto meet = s.meet(table[m1], table[m2]);
      if (!meet || *meet != table[m1 & m2]) return false;
    }
  return true;
}

bool is_sharp(const Observable& x) {
  const QuantumStructure& s = *x.structure();
  for (ElementId r : range(x)) {
    auto m = s.meet(r, s.complement(r));
    if (!m || *m != s.zero()) return false;
  }
  return true;
}

bool preserves_finite_intersections(const Observable& x) {
  const QuantumStructure& s = *x.structure();
  SpectrumPartition partition(x.spectrum_points());
  if (partition.point_count() > kPairScanMaxPoints)
    fail(Errc::too_large, "spectrum exceeds the pairwise-scan cap of " +
                              std::to_string(kPairScanMaxPoints) + " points");
  auto table = partition.evaluation_table(x);
  for (uint32_t m1 = 0; m1 < table.size(); ++m1)
    for (uint32_t m2 = 0; m2 <= m1; ++m2) {
      auto meet = s.meet(table[m1], table[m2]);
      if (!meet)
        fail(Errc::meet_undefined,
             "meet of x(" + partition.set_for_mask(m1).str() + ") and x(" +
                 partition.set_for_mask(m2).str() + ") does not exist");
      if (*meet != table[m1 & m2]) return false;
    }
  return true;
}

bool jauch_piron_check(const Observable& x) {
  const QuantumStructure& s = *x.structure();
  SpectrumPartition partition(x.spectrum_points());
  const size_t k = partition.point_count();
  // In canonical form x(E) = 1 exactly when E holds every spectrum point:
  // a proper sub-sum equal to 1 would force a remaining atom a with 1 + a
  // defined, hence a = 0, and zero atoms are dropped. The full-measure
  // members of the generated algebra are therefore the masks with all
  // singleton bits set, and only the gap bits vary.
  if (k > kUniquenessMaxPoints) return true;
  auto table = partition.evaluation_table(x);
  const uint32_t singletons = partition.all_singletons_mask();
  std::vector<uint32_t> gap_bits;
  for (size_t i = 0; i <= k; ++i) gap_bits.push_back(uint32_t(1) << (2 * i));
  const uint32_t gaps = uint32_t(gap_bits.size());
  std::vector<uint32_t> full_masks;
  for (uint32_t g = 0; g < (uint32_t(1) << gaps); ++g) {
    uint32_t mask = singletons;
    for (uint32_t b = 0; b < gaps; ++b)
      if (g & (uint32_t(1) << b)) mask |= gap_bits[b];
    if (table[mask] == s.one()) full_masks.push_back(mask);
  }
  for (uint32_t m1 : full_masks)
    for (uint32_t m2 : full_masks)
      if (table[m1 & m2] != s.one()) return false;
  return true;
}

IntervalSet spectrum(const Observable& x) {
  if (!jauch_piron_check(x))
    fail(Errc::jauch_piron_failed,
         "observable lacks the Jauch-Piron property");
  IntervalSet out;
  for (const auto& atom : x.atoms())
    out = set_union(out, IntervalSet::singleton(atom.point));
  return out;
}

Observable functional_calculus(
    const Observable& x,
    const std::vector<std::pair<Rational, Rational>>& table) {
  const QuantumStructure& s = *x.structure();
  std::map<Rational, Rational> f(table.begin(), table.end());
  std::map<Rational, std::vector<ElementId>> groups;
  for (const auto& atom : x.atoms()) {
    auto it = f.find(atom.point);
    if (it == f.end())
      fail(Errc::partial_function,
           "f is undefined at spectrum point " + to_string(atom.point));
    groups[it->second].push_back(atom.effect);
  }
  std::vector<ObservableAtom> atoms;
  for (const auto& [value, effects] : groups)
    atoms.push_back(ObservableAtom{value, summable_sum(s, effects)});
  return Observable::make(x.structure(), std::move(atoms));
}

}  // namespace qobs

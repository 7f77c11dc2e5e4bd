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

#include "qobs/algebra.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>

#include "qobs/errors.hpp"

namespace qobs {

namespace {

std::string triple(const QuantumStructure& s, ElementId a, ElementId b) {
  return "(" + s.name(a) + ", " + s.name(b) + ")";
}

// Plain dynamic bitset, enough for clique search and cone arithmetic.
struct Bits {
  std::vector<uint64_t> w;

  explicit Bits(size_t n = 0) : w((n + 63) / 64, 0) {}
  void set(size_t i) { w[i / 64] |= uint64_t(1) << (i % 64); }
  void reset(size_t i) { w[i / 64] &= ~(uint64_t(1) << (i % 64)); }
  bool test(size_t i) const { return (w[i / 64] >> (i % 64)) & 1; }
  bool any() const {
    for (uint64_t x : w)
      if (x) return true;
    return false;
  }
  size_t count_and(const Bits& o) const {
    size_t c = 0;
    for (size_t i = 0; i < w.size(); ++i) c += std::popcount(w[i] & o.w[i]);
    return c;
  }
  Bits and_with(const Bits& o) const {
    Bits r = *this;
    for (size_t i = 0; i < w.size(); ++i) r.w[i] &= o.w[i];
    return r;
  }
  template <typename F>
  void for_each(F&& f) const {
    for (size_t i = 0; i < w.size(); ++i) {
      uint64_t x = w[i];
      while (x) {
        f(i * 64 + std::countr_zero(x));
        x &= x - 1;
      }
    }
  }
};

}  // namespace

std::vector<std::string> Flavor::names() const {
  std::vector<std::string> out;
  if (mv) out.push_back("mv");
  if (lattice) out.push_back("lattice");
  if (boolean_algebra) out.push_back("boolean");
  if (orthomodular_poset) out.push_back("omp");
  if (rdp) out.push_back("rdp");
  return out;
}

std::optional<ElementId> QuantumStructure::find(std::string_view name) const {
  for (int i = 0; i < n_; ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

ElementId QuantumStructure::id_of(std::string_view name) const {
  auto id = find(name);
  if (!id)
    fail(Errc::precondition_failed, "no element named '" + std::string(name) + "'");
  return *id;
}

std::optional<ElementId> QuantumStructure::try_plus(ElementId a,
                                                    ElementId b) const {
  int32_t v = plus_[idx(a, b)];
  if (v < 0) return std::nullopt;
  return v;
}

ElementId QuantumStructure::plus(ElementId a, ElementId b) const {
  int32_t v = plus_[idx(a, b)];
  if (v < 0)
    fail(Errc::not_summable, "sum undefined: " + triple(*this, a, b));
  return v;
}

bool QuantumStructure::leq(ElementId a, ElementId b) const {
  return (down_[size_t(b) * words_ + size_t(a) / 64] >> (size_t(a) % 64)) & 1;
}

std::optional<ElementId> QuantumStructure::try_minus(ElementId b,
                                                     ElementId a) const {
  int32_t v = sub_[idx(b, a)];
  if (v < 0) return std::nullopt;
  return v;
}

std::span<const uint64_t> QuantumStructure::lower_cone(ElementId a) const {
  return {down_.data() + size_t(a) * words_, words_};
}

namespace {

// Shared meet computation against the lower-cone bitsets: the meet is the
// element of L = cone(a) & cone(b) whose cone contains all of L.
std::optional<ElementId> cone_meet(const QuantumStructure& s, int n,
                                   ElementId a, ElementId b) {
  auto ca = s.lower_cone(a);
  auto cb = s.lower_cone(b);
  size_t words = ca.size();
  std::vector<uint64_t> lower(words);
  for (size_t i = 0; i < words; ++i) lower[i] = ca[i] & cb[i];
  for (size_t i = 0; i < words; ++i) {
    uint64_t x = lower[i];
    while (x) {
      ElementId m = ElementId(i * 64 + std::countr_zero(x));
      x &= x - 1;
      auto cm = s.lower_cone(m);
      bool covers = true;
      for (size_t j = 0; j < words && covers; ++j)
        covers = (lower[j] & ~cm[j]) == 0;
      if (covers) return m;
    }
  }
  (void)n;
  return std::nullopt;
}

}  // namespace

std::optional<ElementId> QuantumStructure::meet(ElementId a, ElementId b) const {
  if (has_lattice_tables_) {
    int32_t v = meet_[idx(a, b)];
    if (v < 0) return std::nullopt;
    return v;
  }
  return cone_meet(*this, n_, a, b);
}

std::optional<ElementId> QuantumStructure::join(ElementId a, ElementId b) const {
  if (has_lattice_tables_) {
    int32_t v = join_[idx(a, b)];
    if (v < 0) return std::nullopt;
    return v;
  }
  auto m = cone_meet(*this, n_, comp_[a], comp_[b]);
  if (!m) return std::nullopt;
  return comp_[*m];
}

bool QuantumStructure::same_as(const QuantumStructure& other) const {
  return n_ == other.n_ && zero_ == other.zero_ && one_ == other.one_ &&
         names_ == other.names_ && plus_ == other.plus_;
}

// ---------------------------------------------------------------------------
// Construction and validation

class StructureBuilder {
 public:
  StructureBuilder(std::vector<std::string> names, ElementId zero,
                   ElementId one) {
    s_.names_ = std::move(names);
    s_.n_ = int(s_.names_.size());
    s_.zero_ = zero;
    s_.one_ = one;
    s_.plus_.assign(size_t(s_.n_) * size_t(s_.n_), -1);
  }

  // One declared table row; rejects conflicting redeclaration.
  void declare_plus(ElementId a, ElementId b, ElementId c) {
    int32_t& slot = s_.plus_[s_.idx(a, b)];
    if (slot >= 0 && slot != c)
      fail(Errc::duplicate_entry,
           "conflicting entries for " + triple(s_, a, b) + ": " +
               s_.name(slot) + " vs " + s_.name(c));
    slot = c;
  }

  // Table filled by a combinator that is correct by construction.
  void set_plus(ElementId a, ElementId b, ElementId c) {
    s_.plus_[s_.idx(a, b)] = c;
  }

  void hint(const Flavor& f) { hints_ = f; hinted_ = true; }

  void supply_lattice_tables(std::vector<int32_t> meet,
                             std::vector<int32_t> join) {
    s_.meet_ = std::move(meet);
    s_.join_ = std::move(join);
    s_.has_lattice_tables_ = true;
  }

  StructurePtr build(bool trusted_construction = false);

 private:
  void check_sizes();
  void close_table();
  void check_axiom_i();
  void check_axiom_ii();
  void check_axiom_iii();
  void check_axiom_iv();
  void derive_order();
  void derive_subtraction();
  void compute_flavor(bool trusted_construction);

  QuantumStructure s_;
  Flavor hints_;
  bool hinted_ = false;
};

void StructureBuilder::check_sizes() {
  if (s_.n_ < 1) fail(Errc::precondition_failed, "element list is empty");
  if (s_.n_ > kMaxElements)
    fail(Errc::too_large, "carrier of " + std::to_string(s_.n_) +
                              " elements exceeds the cap of " +
                              std::to_string(kMaxElements));
  std::set<std::string> seen;
  for (const auto& name : s_.names_)
    if (!seen.insert(name).second)
      fail(Errc::duplicate_entry, "duplicate element name '" + name + "'");
  if (s_.zero_ < 0 || s_.zero_ >= s_.n_ || s_.one_ < 0 || s_.one_ >= s_.n_)
    fail(Errc::precondition_failed, "zero/one out of range");
}

void StructureBuilder::close_table() {
  const int n = s_.n_;
  // symmetric closure; a declared asymmetric conflict is an axiom (i) breach
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b) {
      int32_t v = s_.plus_[s_.idx(a, b)];
      if (v < 0) continue;
      int32_t& mirror = s_.plus_[s_.idx(b, a)];
      if (mirror < 0)
        mirror = v;
      else if (mirror != v)
        fail(Errc::axiom_i, "a+b != b+a at " + triple(s_, a, b) + ": " +
                                s_.name(v) + " vs " + s_.name(mirror));
    }
  // 0 + a = a rows are implicit
  for (ElementId a = 0; a < n; ++a) {
    if (s_.plus_[s_.idx(s_.zero_, a)] < 0 && s_.plus_[s_.idx(a, s_.zero_)] < 0) {
      s_.plus_[s_.idx(s_.zero_, a)] = a;
      s_.plus_[s_.idx(a, s_.zero_)] = a;
    }
  }
}

void StructureBuilder::check_axiom_i() {
  const int n = s_.n_;
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b) {
      int32_t ab = s_.plus_[s_.idx(a, b)];
      int32_t ba = s_.plus_[s_.idx(b, a)];
      if ((ab < 0) != (ba < 0) || ab != ba)
        fail(Errc::axiom_i, "commutativity fails at " + triple(s_, a, b));
    }
}

void StructureBuilder::check_axiom_ii() {
  // Both directions of the biconditional, iterating only defined sums.
  for (ElementId a = 0; a < s_.n_; ++a) {
    for (ElementId b : s_.addable_[a]) {
      ElementId ab = s_.plus_[s_.idx(a, b)];
      for (ElementId c : s_.addable_[ab]) {
        ElementId abc = s_.plus_[s_.idx(ab, c)];
        int32_t bc = s_.plus_[s_.idx(b, c)];
        if (bc < 0)
          fail(Errc::axiom_ii, "(a+b)+c defined but b+c undefined at (" +
                                   s_.name(a) + ", " + s_.name(b) + ", " +
                                   s_.name(c) + ")");
        int32_t a_bc = s_.plus_[s_.idx(a, bc)];
        if (a_bc < 0 || a_bc != abc)
          fail(Errc::axiom_ii, "associativity fails at (" + s_.name(a) + ", " +
                                   s_.name(b) + ", " + s_.name(c) + ")");
      }
    }
  }
  for (ElementId b = 0; b < s_.n_; ++b) {
    for (ElementId c : s_.addable_[b]) {
      ElementId bc = s_.plus_[s_.idx(b, c)];
      for (ElementId a : s_.addable_[bc]) {
        int32_t ab = s_.plus_[s_.idx(a, b)];
        if (ab < 0)
          fail(Errc::axiom_ii, "a+(b+c) defined but a+b undefined at (" +
                                   s_.name(a) + ", " + s_.name(b) + ", " +
                                   s_.name(c) + ")");
        int32_t abc = s_.plus_[s_.idx(ab, c)];
        if (abc < 0 || abc != s_.plus_[s_.idx(a, bc)])
          fail(Errc::axiom_ii, "associativity fails at (" + s_.name(a) + ", " +
                                   s_.name(b) + ", " + s_.name(c) + ")");
      }
    }
  }
}

void StructureBuilder::check_axiom_iii() {
  const int n = s_.n_;
  s_.comp_.assign(n, -1);
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b : s_.addable_[a]) {
      if (s_.plus_[s_.idx(a, b)] != s_.one_) continue;
      if (s_.comp_[a] >= 0 && s_.comp_[a] != b)
        fail(Errc::axiom_iii, "two complements for '" + s_.name(a) + "': " +
                                  s_.name(s_.comp_[a]) + " and " + s_.name(b));
      s_.comp_[a] = b;
    }
    if (s_.comp_[a] < 0)
      fail(Errc::missing_complement, "no complement for '" + s_.name(a) + "'");
  }
}

void StructureBuilder::check_axiom_iv() {
  for (ElementId a = 0; a < s_.n_; ++a)
    if (s_.plus_[s_.idx(a, s_.one_)] >= 0 && a != s_.zero_)
      fail(Errc::axiom_iv, "a+1 defined for a = '" + s_.name(a) + "'");
}

void StructureBuilder::derive_order() {
  const int n = s_.n_;
  s_.words_ = (size_t(n) + 63) / 64;
  s_.down_.assign(size_t(n) * s_.words_, 0);
  auto mark = [&](ElementId below, ElementId above) {
    s_.down_[size_t(above) * s_.words_ + size_t(below) / 64] |=
        uint64_t(1) << (size_t(below) % 64);
  };
  for (ElementId a = 0; a < n; ++a)
    for (ElementId c : s_.addable_[a]) mark(a, s_.plus_[s_.idx(a, c)]);

  for (ElementId a = 0; a < n; ++a) {
    if (!s_.leq(s_.zero_, a) || !s_.leq(a, s_.one_) || !s_.leq(a, a))
      fail(Errc::internal_error, "order bounds broken at '" + s_.name(a) + "'");
    for (ElementId b = a + 1; b < n; ++b)
      if (s_.leq(a, b) && s_.leq(b, a))
        fail(Errc::internal_error,
             "antisymmetry broken at " + triple(s_, a, b));
  }
}

void StructureBuilder::derive_subtraction() {
  const int n = s_.n_;
  s_.sub_.assign(size_t(n) * size_t(n), -1);
  for (ElementId a = 0; a < n; ++a)
    for (ElementId c : s_.addable_[a]) {
      ElementId b = s_.plus_[s_.idx(a, c)];
      int32_t& slot = s_.sub_[s_.idx(b, a)];
      if (slot >= 0 && slot != c)
        fail(Errc::internal_error, "cancellativity broken at '" + s_.name(b) +
                                       "' - '" + s_.name(a) + "'");
      slot = c;
    }
}

namespace {

std::optional<RefinementMatrix> find_refinement(const QuantumStructure& s,
                                                ElementId a1, ElementId a2,
                                                ElementId b1, ElementId b2) {
  auto ca = s.lower_cone(a1);
  auto cb = s.lower_cone(b1);
  for (size_t w = 0; w < ca.size(); ++w) {
    uint64_t x = ca[w] & cb[w];
    while (x) {
      ElementId c11 = ElementId(w * 64 + std::countr_zero(x));
      x &= x - 1;
      ElementId c12 = *s.try_minus(a1, c11);
      ElementId c21 = *s.try_minus(b1, c11);
      if (!s.leq(c21, a2)) continue;
      ElementId c22 = *s.try_minus(a2, c21);
      auto cross = s.try_plus(c12, c22);
      if (!cross || *cross != b2) continue;
      return RefinementMatrix{c11, c12, c21, c22};
    }
  }
  return std::nullopt;
}

bool check_rdp_exhaustive(const QuantumStructure& s) {
  std::map<ElementId, std::vector<std::pair<ElementId, ElementId>>> by_sum;
  for (ElementId a = 0; a < s.size(); ++a)
    for (ElementId b : s.addable(a)) by_sum[*s.try_plus(a, b)].push_back({a, b});
  for (const auto& [sum, decs] : by_sum)
    for (const auto& p : decs)
      for (const auto& q : decs)
        if (!find_refinement(s, p.first, p.second, q.first, q.second))
          return false;
  return true;
}

}  // namespace

void StructureBuilder::compute_flavor(bool trusted_construction) {
  const int n = s_.n_;
  Flavor& f = s_.flavor_;

  bool can_scan_lattice = n <= kExhaustiveFlavorMax;
  if (can_scan_lattice) {
    std::vector<int32_t> meet(size_t(n) * size_t(n), -1);
    std::vector<int32_t> join(size_t(n) * size_t(n), -1);
    bool all = true;
    for (ElementId a = 0; a < n; ++a)
      for (ElementId b = 0; b < n; ++b) {
        auto m = cone_meet(s_, n, a, b);
        if (m) meet[s_.idx(a, b)] = *m;
        auto jm = cone_meet(s_, n, s_.comp_[a], s_.comp_[b]);
        if (jm) join[s_.idx(a, b)] = s_.comp_[*jm];
        all = all && m && jm;
      }
    if (s_.has_lattice_tables_) {
      if (meet != s_.meet_ || join != s_.join_)
        fail(Errc::internal_error, "supplied lattice tables disagree");
    } else {
      s_.meet_ = std::move(meet);
      s_.join_ = std::move(join);
      s_.has_lattice_tables_ = true;
    }
    f.lattice = all;
  } else {
    f.lattice = hinted_ && hints_.lattice;
  }

  if (can_scan_lattice) {
    bool omp = true;
    for (ElementId a = 0; a < n && omp; ++a)
      for (ElementId b : s_.addable_[a]) {
        int32_t j = s_.join_[s_.idx(a, b)];
        if (j < 0 || j != s_.plus_[s_.idx(a, b)]) {
          omp = false;
          break;
        }
      }
    f.orthomodular_poset = omp;
  } else {
    f.orthomodular_poset = hinted_ && hints_.orthomodular_poset;
  }

  if (n <= kRdpExhaustiveMax)
    f.rdp = check_rdp_exhaustive(s_);
  else
    f.rdp = hinted_ && hints_.rdp;

  f.mv = f.lattice && f.rdp;

  if (f.mv && s_.has_lattice_tables_) {
    bool all_sharp = true;
    for (ElementId a = 0; a < n && all_sharp; ++a) {
      int32_t m = s_.meet_[s_.idx(a, s_.comp_[a])];
      all_sharp = m == s_.zero_;
    }
    f.boolean_algebra = all_sharp;
  } else {
    f.boolean_algebra = hinted_ && hints_.boolean_algebra;
  }

  // a combinator's by-construction claims must never contradict a scan
  if (hinted_ && trusted_construction) {
    if ((can_scan_lattice && hints_.lattice != f.lattice) ||
        (n <= kRdpExhaustiveMax && hints_.rdp != f.rdp))
      fail(Errc::internal_error, "constructor flavor hints contradicted");
  }
}

StructurePtr StructureBuilder::build(bool trusted_construction) {
  check_sizes();
  close_table();
  const int n = s_.n_;

  s_.addable_.assign(n, {});
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b)
      if (s_.plus_[s_.idx(a, b)] >= 0) s_.addable_[a].push_back(b);

  check_axiom_i();
  check_axiom_iv();
  check_axiom_iii();
  if (!trusted_construction || n <= kExhaustiveFlavorMax) check_axiom_ii();
  derive_order();
  derive_subtraction();
  compute_flavor(trusted_construction);

  auto out = std::make_shared<QuantumStructure>(std::move(s_));
  return out;
}

StructurePtr validate_structure(const RawStructureTable& raw) {
  std::vector<std::string> names = raw.names;
  auto locate = [&](const std::string& name) -> ElementId {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return ElementId(i);
    fail(Errc::precondition_failed, "declared constant '" + name +
                                        "' is not in the element list");
  };
  if (names.empty()) fail(Errc::precondition_failed, "element list is empty");
  ElementId zero = locate(raw.zero_name);
  ElementId one = locate(raw.one_name);
  StructureBuilder builder(names, zero, one);
  for (const auto& e : raw.entries) {
    for (ElementId v : e)
      if (v < 0 || size_t(v) >= names.size())
        fail(Errc::precondition_failed, "table entry out of range");
    builder.declare_plus(e[0], e[1], e[2]);
  }
  return builder.build(false);
}

// ---------------------------------------------------------------------------
// MV reducts

namespace {

void validate_mv(const MvStructure& m) {
  const QuantumStructure& s = *m.base;
  const int n = s.size();
  auto die = [&](const std::string& what) {
    fail(Errc::internal_error, "MV reduct invalid: " + what);
  };
  if (m.star.size() != size_t(n) || m.oplus.size() != size_t(n) * size_t(n))
    die("table sizes");
  for (ElementId a = 0; a < n; ++a) {
    if (m.op(a, s.zero()) != a) die("a(+)0 != a at '" + s.name(a) + "'");
    if (m.op(a, s.one()) != s.one()) die("a(+)1 != 1 at '" + s.name(a) + "'");
    if (m.st(m.st(a)) != a) die("a** != a at '" + s.name(a) + "'");
    if (m.op(a, m.st(a)) != s.one()) die("a(+)a* != 1 at '" + s.name(a) + "'");
  }
  if (m.st(s.zero()) != s.one()) die("0* != 1");
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b) {
      if (m.op(a, b) != m.op(b, a)) die("commutativity at " + triple(s, a, b));
      if (m.op(m.st(m.op(m.st(a), b)), b) != m.op(m.st(m.op(a, m.st(b))), a))
        die("axiom (viii) at " + triple(s, a, b));
      // induced partial sum must be the base table
      bool defined = s.plus_defined(a, b);
      bool admissible = s.leq(a, m.st(b));
      if (defined != admissible) die("induced domain at " + triple(s, a, b));
      if (defined && *s.try_plus(a, b) != m.op(a, b))
        die("induced sum at " + triple(s, a, b));
    }
  if (n <= 300) {
    for (ElementId a = 0; a < n; ++a)
      for (ElementId b = 0; b < n; ++b)
        for (ElementId c = 0; c < n; ++c) {
          if (m.op(m.op(a, b), c) != m.op(a, m.op(b, c)))
            die("associativity");
          // induced order is a distributive lattice
          auto bc = s.join(b, c);
          auto ab = s.meet(a, b), ac = s.meet(a, c);
          if (!bc || !ab || !ac) die("lattice gap");
          auto lhs = s.meet(a, *bc);
          auto rhs = s.join(*ab, *ac);
          if (!lhs || !rhs || *lhs != *rhs) die("distributivity");
        }
  }
}

}  // namespace

MvStructure to_mv(StructurePtr s) {
  if (!s->flavor().mv)
    fail(Errc::precondition_failed,
         "structure is not a verified MV-effect algebra");
  const int n = s->size();
  MvStructure m;
  m.base = s;
  m.star.resize(n);
  m.oplus.assign(size_t(n) * size_t(n), -1);
  for (ElementId a = 0; a < n; ++a) m.star[a] = s->complement(a);
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b) {
      auto cap = s->meet(s->complement(a), b);
      if (!cap) fail(Errc::internal_error, "meet missing in MV structure");
      m.oplus[size_t(a) * size_t(n) + size_t(b)] = *s->try_plus(a, *cap);
    }
  if (n <= 300) validate_mv(m);
  return m;
}

MvStructure make_chain(int n) {
  if (n < 1) fail(Errc::precondition_failed, "chain denominator must be >= 1");
  if (n + 1 > kMaxElements)
    fail(Errc::too_large, "chain carrier exceeds the element cap");
  const int count = n + 1;
  std::vector<std::string> names;
  names.reserve(count);
  for (int k = 0; k <= n; ++k) names.push_back(to_string(frac(k, n)));

  StructureBuilder builder(names, 0, n);
  std::vector<int32_t> meet(size_t(count) * size_t(count));
  std::vector<int32_t> join(size_t(count) * size_t(count));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      if (i + j <= n) builder.set_plus(i, j, i + j);
      meet[size_t(i) * count + j] = std::min(i, j);
      join[size_t(i) * count + j] = std::max(i, j);
    }
  builder.supply_lattice_tables(std::move(meet), std::move(join));
  Flavor hints;
  hints.mv = hints.lattice = hints.rdp = true;
  hints.boolean_algebra = hints.orthomodular_poset = n == 1;
  builder.hint(hints);

  MvStructure m;
  m.base = builder.build(true);
  m.star.resize(count);
  m.oplus.assign(size_t(count) * size_t(count), -1);
  for (int i = 0; i <= n; ++i) {
    m.star[i] = n - i;
    for (int j = 0; j <= n; ++j)
      m.oplus[size_t(i) * count + j] = std::min(i + j, n);
  }
  if (count <= 300) validate_mv(m);
  return m;
}

MvStructure make_power_set(std::span<const std::string> labels) {
  const int k = int(labels.size());
  if (k < 1) fail(Errc::precondition_failed, "at least one label required");
  if (k > 12)
    fail(Errc::too_large,
         "power set of " + std::to_string(k) +
             " labels exceeds the carrier cap of 4096 elements");
  {
    std::set<std::string> seen(labels.begin(), labels.end());
    if (int(seen.size()) != k)
      fail(Errc::duplicate_entry, "duplicate labels");
  }
  const int n = 1 << k;
  std::vector<std::string> names(n);
  for (int mask = 0; mask < n; ++mask) {
    if (mask == 0) {
      names[mask] = "0";
    } else if (mask == n - 1) {
      names[mask] = "1";
    } else {
      std::string name = "{";
      for (int b = 0; b < k; ++b)
        if (mask & (1 << b)) {
          if (name.size() > 1) name += ",";
          name += labels[b];
        }
      names[mask] = name + "}";
    }
  }

  StructureBuilder builder(names, 0, n - 1);
  std::vector<int32_t> meet(size_t(n) * size_t(n));
  std::vector<int32_t> join(size_t(n) * size_t(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if ((a & b) == 0) builder.set_plus(a, b, a | b);
      meet[size_t(a) * n + b] = a & b;
      join[size_t(a) * n + b] = a | b;
    }
  builder.supply_lattice_tables(std::move(meet), std::move(join));
  Flavor hints;
  hints.mv = hints.lattice = hints.rdp = true;
  hints.boolean_algebra = hints.orthomodular_poset = true;
  builder.hint(hints);

  MvStructure m;
  m.base = builder.build(true);
  m.star.resize(n);
  m.oplus.assign(size_t(n) * size_t(n), -1);
  for (int a = 0; a < n; ++a) {
    m.star[a] = (n - 1) & ~a;
    for (int b = 0; b < n; ++b) m.oplus[size_t(a) * n + b] = a | b;
  }
  if (n <= 300) validate_mv(m);
  return m;
}

StructurePtr product(const QuantumStructure& s1, const QuantumStructure& s2) {
  const long long n1 = s1.size(), n2 = s2.size();
  if (n1 * n2 > kMaxElements)
    fail(Errc::size_overflow, "product carrier of " + std::to_string(n1 * n2) +
                                  " elements exceeds the cap of " +
                                  std::to_string(kMaxElements));
  const int n = int(n1 * n2);
  std::vector<std::string> names(n);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j)
      names[i * n2 + j] = "(" + s1.name(i) + "," + s2.name(j) + ")";

  StructureBuilder builder(names, ElementId(s1.zero() * n2 + s2.zero()),
                           ElementId(s1.one() * n2 + s2.one()));
  const Flavor &f1 = s1.flavor(), &f2 = s2.flavor();
  bool tables = n <= kExhaustiveFlavorMax;
  std::vector<int32_t> meet, join;
  if (tables) {
    meet.assign(size_t(n) * size_t(n), -1);
    join.assign(size_t(n) * size_t(n), -1);
  }
  for (int a1 = 0; a1 < n1; ++a1)
    for (int a2 = 0; a2 < n2; ++a2) {
      ElementId a = ElementId(a1 * n2 + a2);
      for (int b1 = 0; b1 < n1; ++b1)
        for (int b2 = 0; b2 < n2; ++b2) {
          ElementId b = ElementId(b1 * n2 + b2);
          auto p1 = s1.try_plus(a1, b1);
          auto p2 = s2.try_plus(a2, b2);
          if (p1 && p2) builder.set_plus(a, b, ElementId(*p1 * n2 + *p2));
          if (tables) {
            auto m1 = s1.meet(a1, b1);
            auto m2 = s2.meet(a2, b2);
            if (m1 && m2) meet[size_t(a) * n + b] = ElementId(*m1 * n2 + *m2);
            auto j1 = s1.join(a1, b1);
            auto j2 = s2.join(a2, b2);
            if (j1 && j2) join[size_t(a) * n + b] = ElementId(*j1 * n2 + *j2);
          }
        }
    }
  // coordinatewise tables are only supplied when both factors are lattices;
  // otherwise a factor pair may lack a bound the product still has
  if (tables && f1.lattice && f2.lattice)
    builder.supply_lattice_tables(std::move(meet), std::move(join));
  Flavor hints;
  hints.lattice = f1.lattice && f2.lattice;
  hints.rdp = f1.rdp && f2.rdp;
  hints.mv = hints.lattice && hints.rdp;
  hints.boolean_algebra = f1.boolean_algebra && f2.boolean_algebra;
  hints.orthomodular_poset = f1.orthomodular_poset && f2.orthomodular_poset;
  builder.hint(hints);
  return builder.build(true);
}

// ---------------------------------------------------------------------------
// Fuzzy carriers

FuzzyStructure make_fuzzy(std::vector<std::string> omega,
                          std::vector<std::vector<Rational>> functions,
                          std::vector<std::string> names) {
  if (omega.empty()) fail(Errc::precondition_failed, "omega is empty");
  {
    std::set<std::string> seen(omega.begin(), omega.end());
    if (seen.size() != omega.size())
      fail(Errc::duplicate_entry, "duplicate point labels");
  }
  if (!names.empty() && names.size() != functions.size())
    fail(Errc::precondition_failed, "names/functions length mismatch");
  const size_t pts = omega.size();
  for (const auto& f : functions) {
    if (f.size() != pts)
      fail(Errc::precondition_failed, "function arity != |omega|");
    for (const auto& v : f)
      if (v < 0 || v > 1)
        fail(Errc::out_of_range, "fuzzy value outside [0,1]: " + to_string(v));
  }

  const std::vector<Rational> one_vec(pts, Rational(1));
  std::map<std::vector<Rational>, int> index;
  std::vector<std::vector<Rational>> members;
  auto insert = [&](std::vector<Rational> v) -> bool {
    if (index.count(v)) return false;
    if (int(members.size()) >= kFuzzyClosureMax)
      fail(Errc::closure_overflow, "fuzzy closure exceeds " +
                                       std::to_string(kFuzzyClosureMax) +
                                       " elements");
    index.emplace(v, int(members.size()));
    members.push_back(std::move(v));
    return true;
  };
  insert(one_vec);
  for (auto& f : functions) insert(f);

  // fixed point under complement and admissible pointwise sums
  for (size_t head = 0; head < members.size(); ++head) {
    {
      std::vector<Rational> c(pts);
      for (size_t i = 0; i < pts; ++i) c[i] = 1 - members[head][i];
      insert(std::move(c));
    }
    for (size_t other = 0; other <= head; ++other) {
      std::vector<Rational> sum(pts);
      bool admissible = true;
      for (size_t i = 0; i < pts && admissible; ++i) {
        sum[i] = members[head][i] + members[other][i];
        admissible = sum[i] <= 1;
      }
      if (admissible) insert(std::move(sum));
    }
  }

  // canonical element order: lexicographic on the vectors
  std::vector<std::vector<Rational>> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  std::map<std::vector<Rational>, int> id;
  for (size_t i = 0; i < sorted.size(); ++i) id[sorted[i]] = int(i);

  const int n = int(sorted.size());
  std::vector<std::string> element_names(n);
  for (int i = 0; i < n; ++i) {
    bool zero = true, one = true;
    for (const auto& v : sorted[i]) {
      zero = zero && v == 0;
      one = one && v == 1;
    }
    if (zero) {
      element_names[i] = "0";
    } else if (one) {
      element_names[i] = "1";
    } else {
      std::string name = "(";
      for (size_t j = 0; j < sorted[i].size(); ++j) {
        if (j) name += ",";
        name += to_string(sorted[i][j]);
      }
      element_names[i] = name + ")";
    }
  }
  for (size_t k = 0; k < names.size(); ++k) {
    int i = id[functions[k]];
    if (element_names[i] == "0" || element_names[i] == "1") continue;
    element_names[i] = names[k];
  }

  StructureBuilder builder(element_names, id[std::vector<Rational>(pts, Rational(0))],
                           id[one_vec]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b <= a; ++b) {
      std::vector<Rational> sum(pts);
      bool admissible = true;
      for (size_t i = 0; i < pts && admissible; ++i) {
        sum[i] = sorted[a][i] + sorted[b][i];
        admissible = sum[i] <= 1;
      }
      if (admissible) {
        auto it = id.find(sum);
        if (it == id.end())
          fail(Errc::internal_error, "closure not closed under +");
        builder.set_plus(a, b, it->second);
        builder.set_plus(b, a, it->second);
      }
    }

  FuzzyStructure out;
  out.structure = builder.build(true);
  out.carrier.omega = std::move(omega);
  out.carrier.functions = std::move(sorted);
  return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms

Homomorphism make_homomorphism(StructurePtr source, StructurePtr target,
                               std::vector<ElementId> map) {
  const QuantumStructure& s = *source;
  const QuantumStructure& t = *target;
  if (map.size() != size_t(s.size()))
    fail(Errc::precondition_failed, "map arity != source size");
  for (ElementId v : map)
    if (v < 0 || v >= t.size())
      fail(Errc::precondition_failed, "map value out of range");
  if (map[s.one()] != t.one())
    fail(Errc::precondition_failed, "h(1) != 1");
  for (ElementId a = 0; a < s.size(); ++a)
    for (ElementId b : s.addable(a)) {
      auto hv = t.try_plus(map[a], map[b]);
      if (!hv)
        fail(Errc::precondition_failed,
             "h(a)+h(b) undefined at " + triple(s, a, b));
      if (*hv != map[*s.try_plus(a, b)])
        fail(Errc::precondition_failed,
             "h(a+b) != h(a)+h(b) at " + triple(s, a, b));
    }
  Homomorphism h;
  h.source = std::move(source);
  h.target = std::move(target);
  h.map = std::move(map);
  std::vector<bool> hit(t.size(), false);
  for (ElementId v : h.map) hit[v] = true;
  h.surjective = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  return h;
}

Homomorphism make_mv_homomorphism(const MvStructure& source,
                                  const MvStructure& target,
                                  std::vector<ElementId> map) {
  Homomorphism h = make_homomorphism(source.base, target.base, std::move(map));
  const int n = source.base->size();
  for (ElementId a = 0; a < n; ++a) {
    if (h.map[source.st(a)] != target.st(h.map[a]))
      fail(Errc::precondition_failed,
           "h(a*) != h(a)* at '" + source.base->name(a) + "'");
    for (ElementId b = 0; b < n; ++b)
      if (h.map[source.op(a, b)] != target.op(h.map[a], h.map[b]))
        fail(Errc::precondition_failed,
             "h(a(+)b) != h(a)(+)h(b) at " + triple(*source.base, a, b));
  }
  h.mv = true;
  return h;
}

Homomorphism product_projection(StructurePtr prod, StructurePtr s1,
                                StructurePtr s2, int which) {
  if (which != 0 && which != 1)
    fail(Errc::precondition_failed, "projection index must be 0 or 1");
  const int n1 = s1->size(), n2 = s2->size();
  if (prod->size() != n1 * n2)
    fail(Errc::precondition_failed, "structure is not the given product");
  std::vector<ElementId> map(prod->size());
  for (int i = 0; i < prod->size(); ++i)
    map[i] = which == 0 ? ElementId(i / n2) : ElementId(i % n2);
  StructurePtr target = which == 0 ? s1 : s2;
  Homomorphism h = make_homomorphism(prod, target, std::move(map));
  if (prod->flavor().mv && target->flavor().mv) {
    // re-verify as an MV-homomorphism so the lifting lemma applies
    h = make_mv_homomorphism(to_mv(prod), to_mv(target), h.map);
  }
  return h;
}

Homomorphism fuzzy_restriction(const FuzzyStructure& source,
                               std::span<const int> keep_points,
                               FuzzyStructure* target_out) {
  const size_t pts = source.carrier.omega.size();
  if (keep_points.empty())
    fail(Errc::precondition_failed, "keep at least one point");
  for (int p : keep_points)
    if (p < 0 || size_t(p) >= pts)
      fail(Errc::precondition_failed, "point index out of range");

  std::vector<std::string> omega;
  for (int p : keep_points) omega.push_back(source.carrier.omega[p]);
  std::vector<std::vector<Rational>> restricted;
  for (const auto& f : source.carrier.functions) {
    std::vector<Rational> r;
    for (int p : keep_points) r.push_back(f[p]);
    restricted.push_back(std::move(r));
  }
  FuzzyStructure target = make_fuzzy(omega, restricted);

  std::map<std::vector<Rational>, ElementId> lookup;
  for (size_t i = 0; i < target.carrier.functions.size(); ++i)
    lookup[target.carrier.functions[i]] = ElementId(i);
  std::vector<ElementId> map;
  for (const auto& r : restricted) map.push_back(lookup.at(r));

  Homomorphism h =
      make_homomorphism(source.structure, target.structure, std::move(map));
  if (target_out) *target_out = std::move(target);
  return h;
}

// ---------------------------------------------------------------------------
// Compatibility, blocks, sharpness

std::optional<CompatibilityWitness> is_compatible(const QuantumStructure& s,
                                                  ElementId a, ElementId b) {
  auto attempt = [&](ElementId c) -> std::optional<CompatibilityWitness> {
    ElementId a1 = *s.try_minus(a, c);
    ElementId b1 = *s.try_minus(b, c);
    auto t = s.try_plus(a1, b1);
    if (!t) return std::nullopt;
    if (!s.try_plus(*t, c)) return std::nullopt;
    return CompatibilityWitness{a1, b1, c};
  };
  // comparable elements first, reproducing a = 0 + a, b = (b-a) + a
  if (s.leq(a, b)) return attempt(a);
  if (s.leq(b, a)) return attempt(b);
  auto ca = s.lower_cone(a);
  auto cb = s.lower_cone(b);
  for (size_t w = 0; w < ca.size(); ++w) {
    uint64_t x = ca[w] & cb[w];
    while (x) {
      ElementId c = ElementId(w * 64 + std::countr_zero(x));
      x &= x - 1;
      if (auto witness = attempt(c)) return witness;
    }
  }
  return std::nullopt;
}

namespace {

void bron_kerbosch(const std::vector<Bits>& adj, Bits R, Bits P, Bits X, int n,
                   std::vector<std::vector<ElementId>>& out) {
  if (!P.any() && !X.any()) {
    std::vector<ElementId> clique;
    R.for_each([&](size_t v) { clique.push_back(ElementId(v)); });
    out.push_back(std::move(clique));
    return;
  }
  // pivot: vertex of P|X with the most neighbours in P
  int pivot = -1;
  size_t best = 0;
  for (int u = 0; u < n; ++u) {
    if (!P.test(u) && !X.test(u)) continue;
    size_t d = P.count_and(adj[u]);
    if (pivot < 0 || d > best) {
      pivot = u;
      best = d;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!P.test(v) || adj[pivot].test(v)) continue;
    Bits R2 = R;
    R2.set(v);
    bron_kerbosch(adj, std::move(R2), P.and_with(adj[v]), X.and_with(adj[v]), n,
                  out);
    P.reset(v);
    X.set(v);
  }
}

}  // namespace

std::vector<std::vector<ElementId>> blocks(const QuantumStructure& s) {
  const int n = s.size();
  std::vector<Bits> adj(n, Bits(n));
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = a + 1; b < n; ++b)
      if (is_compatible(s, a, b)) {
        adj[a].set(b);
        adj[b].set(a);
      }
  Bits P(n);
  for (int i = 0; i < n; ++i) P.set(i);
  std::vector<std::vector<ElementId>> out;
  bron_kerbosch(adj, Bits(n), std::move(P), Bits(n), n, out);
  for (auto& block : out) std::sort(block.begin(), block.end());
  std::sort(out.begin(), out.end());

  if (s.flavor().lattice) {
    for (const auto& block : out) {
      std::set<ElementId> members(block.begin(), block.end());
      for (ElementId a : block) {
        if (!members.count(s.complement(a)))
          fail(Errc::internal_error, "block not closed under complement");
        for (ElementId b : block) {
          auto m = s.meet(a, b);
          auto j = s.join(a, b);
          if (!m || !j || !members.count(*m) || !members.count(*j))
            fail(Errc::internal_error, "block not closed under meet/join");
        }
      }
    }
  }
  return out;
}

SharpElementsReport sharp_elements(const QuantumStructure& s) {
  SharpElementsReport report;
  for (ElementId a = 0; a < s.size(); ++a) {
    auto m = s.meet(a, s.complement(a));
    if (!m)
      report.meet_undefined.push_back(a);
    else if (*m == s.zero())
      report.elements.push_back(a);
  }
  if (s.flavor().rdp && s.size() <= kExhaustiveFlavorMax) {
    // with RDP the sharp elements must form a Boolean subalgebra
    std::set<ElementId> sharp(report.elements.begin(), report.elements.end());
    auto in = [&](std::optional<ElementId> v) { return v && sharp.count(*v); };
    for (ElementId a : report.elements) {
      if (!sharp.count(s.complement(a)))
        fail(Errc::internal_error, "sharp set not closed under complement");
      for (ElementId b : report.elements) {
        if (!in(s.meet(a, b)) || !in(s.join(a, b)))
          fail(Errc::internal_error, "sharp set not closed under meet/join");
        for (ElementId c : report.elements) {
          auto bc = s.join(b, c);
          auto lhs = s.meet(a, *bc);
          auto rhs = s.join(*s.meet(a, b), *s.meet(a, c));
          if (!lhs || !rhs || *lhs != *rhs)
            fail(Errc::internal_error, "sharp set not distributive");
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// RDP machinery and liftings

RefinementMatrix rdp_refine(const QuantumStructure& s, ElementId a1,
                            ElementId a2, ElementId b1, ElementId b2) {
  auto left = s.try_plus(a1, a2);
  auto right = s.try_plus(b1, b2);
  if (!left || !right)
    fail(Errc::precondition_failed, "a1+a2 or b1+b2 undefined");
  if (*left != *right)
    fail(Errc::precondition_failed,
         "a1+a2 = " + s.name(*left) + " differs from b1+b2 = " + s.name(*right));
  auto m = find_refinement(s, a1, a2, b1, b2);
  if (!m)
    fail(Errc::no_refinement,
         "no refinement matrix for (" + s.name(a1) + ", " + s.name(a2) +
             ") vs (" + s.name(b1) + ", " + s.name(b2) + ")");
  return *m;
}

ElementId jauch_piron_witness(const Homomorphism& h, ElementId a, ElementId b) {
  const QuantumStructure& s = *h.source;
  if (!s.flavor().rdp)
    fail(Errc::precondition_failed, "source RDP flag not verified");
  if (h(a) != h.target->zero() || h(b) != h.target->zero())
    fail(Errc::precondition_failed, "h(a) and h(b) must both be 0");
  RefinementMatrix m =
      rdp_refine(s, a, s.complement(a), b, s.complement(b));
  // c = c11 + c12 + c21 = a + c21
  ElementId c = s.plus(a, m.c21);
  if (!s.leq(a, c) || !s.leq(b, c) || h(c) != h.target->zero())
    fail(Errc::internal_error, "witness postcondition failed");
  return c;
}

ElementId mv_lift(const Homomorphism& h, ElementId A, ElementId B,
                  ElementId c) {
  const QuantumStructure& s = *h.source;
  const QuantumStructure& t = *h.target;
  if (!h.mv)
    fail(Errc::precondition_failed, "homomorphism is not a verified MV-homomorphism");
  if (!h.surjective) fail(Errc::not_surjective, "homomorphism is not onto");
  if (!s.leq(A, B)) fail(Errc::precondition_failed, "A <= B required");
  if (!t.leq(h(A), c) || !t.leq(c, h(B)))
    fail(Errc::precondition_failed, "h(A) <= c <= h(B) required");

  ElementId C1 = -1;
  for (ElementId x = 0; x < s.size(); ++x)
    if (h(x) == c) {
      C1 = x;
      break;
    }
  if (C1 < 0) fail(Errc::internal_error, "surjective map lost a preimage");
  auto inner = s.meet(B, C1);
  if (!inner) fail(Errc::internal_error, "meet missing in MV structure");
  auto C = s.join(A, *inner);
  if (!C) fail(Errc::internal_error, "join missing in MV structure");
  if (!s.leq(A, *C) || !s.leq(*C, B) || h(*C) != c)
    fail(Errc::internal_error, "lift postcondition failed");
  return *C;
}

ElementId summable_sum(const QuantumStructure& s,
                       std::span<const ElementId> items) {
  if (items.empty()) fail(Errc::precondition_failed, "empty multiset");
  std::vector<ElementId> sorted(items.begin(), items.end());
  std::sort(sorted.begin(), sorted.end());
  ElementId acc = sorted[0];
  for (size_t i = 1; i < sorted.size(); ++i) {
    auto next = s.try_plus(acc, sorted[i]);
    if (!next) {
      std::ostringstream msg;
      msg << "not summable: prefix ";
      for (size_t j = 0; j <= i; ++j)
        msg << (j ? " + " : "") << s.name(sorted[j]);
      msg << " undefined";
      fail(Errc::not_summable, msg.str());
    }
    acc = *next;
  }
  return acc;
}

bool is_subalgebra(const QuantumStructure& s,
                   std::span<const ElementId> subset) {
  std::set<ElementId> set(subset.begin(), subset.end());
  if (!set.count(s.zero()) || !set.count(s.one())) return false;
  for (ElementId a : set) {
    if (!set.count(s.complement(a))) return false;
    for (ElementId b : set) {
      auto sum = s.try_plus(a, b);
      if (sum && !set.count(*sum)) return false;
    }
  }
  return true;
}

}  // namespace qobs

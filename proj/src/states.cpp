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

#include "qobs/states.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "qobs/errors.hpp"

namespace qobs {

State State::make(StructurePtr s, std::vector<Rational> values) {
  const QuantumStructure& q = *s;
  if (values.size() != size_t(q.size()))
    fail(Errc::precondition_failed, "values not total on the elements");
  for (ElementId a = 0; a < q.size(); ++a)
    if (values[a] < 0 || values[a] > 1)
      fail(Errc::out_of_range, "s(" + q.name(a) + ") = " +
                                   to_string(values[a]) + " outside [0,1]");
  if (values[q.one()] != 1)
    fail(Errc::unit_not_one, "s(1) = " + to_string(values[q.one()]));
  for (ElementId a = 0; a < q.size(); ++a)
    for (ElementId b : q.addable(a)) {
      ElementId sum = *q.try_plus(a, b);
      if (values[a] + values[b] != values[sum])
        fail(Errc::not_additive, "additivity fails at (" + q.name(a) + ", " +
                                     q.name(b) + ")");
    }
  return State(std::move(s), std::move(values));
}

State convex_mix(const State& s1, const State& s2, const Rational& lambda) {
  if (!s1.structure()->same_as(*s2.structure()))
    fail(Errc::structure_mismatch, "states live on different structures");
  if (lambda < 0 || lambda > 1)
    fail(Errc::out_of_range, "mixing weight outside [0,1]");
  std::vector<Rational> values;
  values.reserve(s1.values().size());
  for (size_t i = 0; i < s1.values().size(); ++i)
    values.push_back(lambda * s1.values()[i] +
                     (1 - lambda) * s2.values()[i]);
  return State::make(s1.structure(), std::move(values));
}

// ---------------------------------------------------------------------------
// Polytope solve

namespace {

using Row = std::vector<Rational>;  // n coefficients then the constant

// Reduced row echelon form; returns pivot column per row, or nullopt when
// the system is inconsistent.
std::optional<std::vector<int>> rref(std::vector<Row>& rows, int vars) {
  std::vector<int> pivots;
  size_t rank = 0;
  for (int col = 0; col < vars && rank < rows.size(); ++col) {
    size_t lead = rank;
    while (lead < rows.size() && rows[lead][col] == 0) ++lead;
    if (lead == rows.size()) continue;
    std::swap(rows[rank], rows[lead]);
    Rational inv = rows[rank][col];
    for (auto& v : rows[rank]) v /= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      Rational factor = rows[r][col];
      for (int c = 0; c <= vars; ++c) rows[r][c] -= factor * rows[rank][c];
    }
    pivots.push_back(col);
    ++rank;
  }
  for (size_t r = rank; r < rows.size(); ++r)
    if (rows[r][vars] != 0) return std::nullopt;
  rows.resize(rank);
  return pivots;
}

struct Inequality {
  std::vector<Rational> g;  // g . y <= h
  Rational h;
};

// Scale to a primitive integer vector so duplicates collapse.
void normalize(Inequality& q) {
  mpz_class lcm = 1;
  for (const auto& v : q.g) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
                                    v.get_den().get_mpz_t());
  mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.h.get_den().get_mpz_t());
  mpz_class gcd = 0;
  for (auto& v : q.g) {
    v *= lcm;
    mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), v.get_num().get_mpz_t());
  }
  q.h *= lcm;
  mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), q.h.get_num().get_mpz_t());
  if (gcd == 0) return;
  for (auto& v : q.g) v /= Rational(gcd);
  q.h /= Rational(gcd);
}

// Exhaustive basic-solution search: every choice of `dim` independent tight
// constraints, solved exactly and filtered for feasibility.
class VertexSearch {
 public:
  VertexSearch(const std::vector<Inequality>& cons, int dim)
      : cons_(cons), dim_(dim) {}

  std::vector<Row> run() {
    chosen_.clear();
    descend(0);
    std::vector<Row> out(found_.begin(), found_.end());
    return out;
  }

 private:
  void descend(size_t start) {
    if (int(chosen_.size()) == dim_) {
      solve();
      return;
    }
    for (size_t i = start; i < cons_.size(); ++i) push(i);
  }

  // Gaussian elimination against the rows already chosen; only independent
  // constraints extend the basis.
  void push(size_t i) {
    Row row(cons_[i].g);
    row.push_back(cons_[i].h);
    for (size_t r = 0; r < chosen_.size(); ++r) {
      Rational factor = row[pivot_[r]];
      if (factor == 0) continue;
      for (int c = 0; c <= dim_; ++c) row[c] -= factor * chosen_[r][c];
    }
    int p = -1;
    for (int c = 0; c < dim_; ++c)
      if (row[c] != 0) {
        p = c;
        break;
      }
    if (p < 0) return;  // dependent
    Rational inv = row[p];
    for (auto& v : row) v /= inv;
    chosen_.push_back(std::move(row));
    pivot_.push_back(p);
    descend(i + 1);
    chosen_.pop_back();
    pivot_.pop_back();
  }

  void solve() {
    // back-substitute: rows are upper triangular across their pivots
    Row y(dim_, Rational(0));
    for (int r = int(chosen_.size()) - 1; r >= 0; --r) {
      Rational v = chosen_[r][dim_];
      for (int c = 0; c < dim_; ++c)
        if (c != pivot_[r]) v -= chosen_[r][c] * y[c];
      y[pivot_[r]] = v;
    }
    for (const auto& q : cons_) {
      Rational dot(0);
      for (int c = 0; c < dim_; ++c) dot += q.g[c] * y[c];
      if (dot > q.h) return;
    }
    found_.insert(std::move(y));
  }

  const std::vector<Inequality>& cons_;
  int dim_;
  std::vector<Row> chosen_;
  std::vector<int> pivot_;
  std::set<Row> found_;
};

double binomial_estimate(size_t m, int d) {
  if (m < size_t(d)) return 0;
  double v = 1;
  for (int i = 0; i < d; ++i) v *= (double(m) - i) / double(i + 1);
  return v;
}

}  // namespace

StatePolytope state_polytope(StructurePtr s) {
  const QuantumStructure& q = *s;
  const int n = q.size();
  if (n > kMaxStateElements)
    fail(Errc::precondition_failed,
         "state polytope supported up to " +
             std::to_string(kMaxStateElements) + " elements");

  StatePolytope out;
  out.s_ = s;

  // equality system: s(1) = 1 and additivity on every defined sum
  std::vector<Row> rows;
  {
    Row unit(n + 1, Rational(0));
    unit[q.one()] = 1;
    unit[n] = 1;
    rows.push_back(std::move(unit));
    std::set<std::pair<ElementId, ElementId>> seen;
    for (ElementId a = 0; a < n; ++a)
      for (ElementId b : q.addable(a)) {
        auto key = std::minmax(a, b);
        if (!seen.insert({key.first, key.second}).second) continue;
        Row row(n + 1, Rational(0));
        row[a] += 1;
        row[b] += 1;
        row[*q.try_plus(a, b)] -= 1;
        bool trivial = std::all_of(row.begin(), row.end(),
                                   [](const Rational& v) { return v == 0; });
        if (!trivial) rows.push_back(std::move(row));
      }
  }
  auto pivots = rref(rows, n);
  if (!pivots) return out;  // inconsistent: no states at all

  std::vector<int> pivot_of(n, -1);
  for (size_t r = 0; r < pivots->size(); ++r) pivot_of[(*pivots)[r]] = int(r);
  std::vector<ElementId> free_cols;
  for (int c = 0; c < n; ++c)
    if (pivot_of[c] < 0) free_cols.push_back(c);
  const int d = int(free_cols.size());

  // affine parameterization x_e = base[e] + A[e] . y over the free values
  std::vector<Rational> base(n, Rational(0));
  std::vector<Row> span(n, Row(d, Rational(0)));
  for (int e = 0; e < n; ++e) {
    if (pivot_of[e] < 0) {
      span[e][std::find(free_cols.begin(), free_cols.end(), e) -
              free_cols.begin()] = 1;
    } else {
      const Row& row = rows[pivot_of[e]];
      base[e] = row[n];
      for (int j = 0; j < d; ++j) span[e][j] = -row[free_cols[j]];
    }
  }

  // box constraints 0 <= x_e <= 1 in the free coordinates
  std::vector<Inequality> cons;
  std::set<std::pair<Row, Rational>> dedupe;
  for (int e = 0; e < n; ++e) {
    bool constant = std::all_of(span[e].begin(), span[e].end(),
                                [](const Rational& v) { return v == 0; });
    if (constant) {
      if (base[e] < 0 || base[e] > 1) return out;  // infeasible throughout
      continue;
    }
    for (int side = 0; side < 2; ++side) {
      Inequality iq;
      iq.g = span[e];
      iq.h = 1 - base[e];
      if (side) {
        for (auto& v : iq.g) v = -v;
        iq.h = base[e];
      }
      normalize(iq);
      if (dedupe.insert({iq.g, iq.h}).second) cons.push_back(std::move(iq));
    }
  }

  auto vertex_to_state = [&](const Row& y) {
    std::vector<Rational> values(n);
    for (int e = 0; e < n; ++e) {
      values[e] = base[e];
      for (int j = 0; j < d; ++j) values[e] += span[e][j] * y[j];
    }
    return State::make(s, std::move(values));
  };

  if (d == 0) {
    Row y;
    bool ok = true;
    for (int e = 0; e < n && ok; ++e) ok = base[e] >= 0 && base[e] <= 1;
    if (ok) {
      out.vertices_.push_back(vertex_to_state(y));
      out.dimension_ = 0;
    }
    return out;
  }

  if (binomial_estimate(cons.size(), d) > kMaxPolytopeBases)
    fail(Errc::too_large, "basic-solution search too large: C(" +
                              std::to_string(cons.size()) + ", " +
                              std::to_string(d) + ") bases");

  VertexSearch search(cons, d);
  for (const Row& y : search.run()) out.vertices_.push_back(vertex_to_state(y));
  std::sort(out.vertices_.begin(), out.vertices_.end(),
            [](const State& a, const State& b) { return a.values() < b.values(); });
  if (!out.vertices_.empty()) {
    out.dimension_ = d;
    for (ElementId e : free_cols) out.free_.push_back(e);
  }
  return out;
}

Rational HatFunctional::operator()(const State& state) const {
  if (!state.structure()->same_as(*s_))
    fail(Errc::structure_mismatch, "state lives on a different structure");
  return state.value(a_);
}

HatFunctional hat(const StatePolytope& polytope, ElementId a) {
  if (polytope.empty())
    fail(Errc::empty_state_space, "the structure admits no states");
  if (a < 0 || a >= polytope.structure()->size())
    fail(Errc::precondition_failed, "element id out of range");
  return HatFunctional(polytope.structure(), a);
}

// ---------------------------------------------------------------------------
// Distributions and moments

std::vector<std::pair<Rational, Rational>> distribution(const State& s,
                                                        const Observable& x) {
  if (!s.structure()->same_as(*x.structure()))
    fail(Errc::structure_mismatch,
         "state and observable live on different structures");
  std::vector<std::pair<Rational, Rational>> out;
  Rational total(0);
  for (const auto& atom : x.atoms()) {
    out.push_back({atom.point, s.value(atom.effect)});
    total += s.value(atom.effect);
  }
  if (total != 1)
    fail(Errc::internal_error, "distribution does not sum to 1");
  return out;
}

Rational expectation(const State& s, const Observable& x) {
  Rational acc(0);
  for (const auto& [t, p] : distribution(s, x)) acc += t * p;
  return acc;
}

Rational expectation(const State& s, const Observable& x,
                     const std::vector<std::pair<Rational, Rational>>& table) {
  std::map<Rational, Rational> f(table.begin(), table.end());
  Rational acc(0);
  for (const auto& [t, p] : distribution(s, x)) {
    auto it = f.find(t);
    if (it == f.end())
      fail(Errc::partial_function,
           "f is undefined at spectrum point " + to_string(t));
    acc += it->second * p;
  }
  return acc;
}

Rational moment(const State& s, const Observable& x, int k) {
  if (k < 0) fail(Errc::precondition_failed, "moment order must be >= 0");
  Rational acc(0);
  for (const auto& [t, p] : distribution(s, x)) {
    Rational power(1);
    for (int i = 0; i < k; ++i) power *= t;
    acc += power * p;
  }
  return acc;
}

std::vector<Rational> sample(const State& s, const Observable& x, int count,
                             uint64_t seed) {
  if (count < 1) fail(Errc::precondition_failed, "sample count must be >= 1");
  auto dist = distribution(s, x);
  // common denominator so every draw is an exact integer threshold test
  mpz_class denom = 1;
  for (const auto& [t, p] : dist)
    mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), p.get_den().get_mpz_t());
  if (mpz_sizeinbase(denom.get_mpz_t(), 2) > 62)
    fail(Errc::too_large, "outcome denominators exceed the sampler range");
  uint64_t d = mpz_get_ui(denom.get_mpz_t());
  std::vector<uint64_t> cumulative;
  uint64_t acc = 0;
  for (const auto& [t, p] : dist) {
    Rational scaled = p * Rational(denom);
    acc += mpz_get_ui(mpz_class(scaled.get_num()).get_mpz_t());
    cumulative.push_back(acc);
  }
  std::mt19937_64 gen(seed);
  std::vector<Rational> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    uint64_t r = gen() % d;
    size_t idx = 0;
    while (idx < cumulative.size() && r >= cumulative[idx]) ++idx;
    if (idx >= dist.size())
      fail(Errc::internal_error, "sampler fell off the distribution");
    out.push_back(dist[idx].first);
  }
  return out;
}

}  // namespace qobs

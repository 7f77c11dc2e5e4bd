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

// Brute-force reference implementations. These deliberately take the naive
// route (full quadruple scans, full subset scans) so the library's smarter
// search paths are checked against something independent.

#pragma once

#include <optional>
#include <set>
#include <vector>

#include "qobs/algebra.hpp"
#include "qobs/intervals.hpp"
#include "qobs/observable.hpp"

namespace qobs::testsupport {

// Every (c11, c12, c21, c22) quadruple, checked against the four defining
// sums directly.
inline std::optional<RefinementMatrix> oracle_refinement(
    const QuantumStructure& s, ElementId a1, ElementId a2, ElementId b1,
    ElementId b2) {
  const int n = s.size();
  for (ElementId c11 = 0; c11 < n; ++c11)
    for (ElementId c12 = 0; c12 < n; ++c12) {
      auto row1 = s.try_plus(c11, c12);
      if (!row1 || *row1 != a1) continue;
      for (ElementId c21 = 0; c21 < n; ++c21) {
        auto col1 = s.try_plus(c11, c21);
        if (!col1 || *col1 != b1) continue;
        for (ElementId c22 = 0; c22 < n; ++c22) {
          auto row2 = s.try_plus(c21, c22);
          if (!row2 || *row2 != a2) continue;
          auto col2 = s.try_plus(c12, c22);
          if (!col2 || *col2 != b2) continue;
          return RefinementMatrix{c11, c12, c21, c22};
        }
      }
    }
  return std::nullopt;
}

// Exhaustive witness search straight from the definition.
inline bool oracle_compatible(const QuantumStructure& s, ElementId a,
                              ElementId b) {
  const int n = s.size();
  for (ElementId a1 = 0; a1 < n; ++a1)
    for (ElementId b1 = 0; b1 < n; ++b1)
      for (ElementId c = 0; c < n; ++c) {
        auto xa = s.try_plus(a1, c);
        if (!xa || *xa != a) continue;
        auto xb = s.try_plus(b1, c);
        if (!xb || *xb != b) continue;
        auto s1 = s.try_plus(a1, b1);
        if (s1 && s.try_plus(*s1, c)) return true;
      }
  return false;
}

// All maximal pairwise-compatible subsets by scanning the full power set
// (structures of up to ~16 elements).
inline std::vector<std::vector<ElementId>> oracle_blocks(
    const QuantumStructure& s) {
  const int n = s.size();
  std::vector<std::vector<bool>> compat(n, std::vector<bool>(n));
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b)
      compat[a][b] = oracle_compatible(s, a, b);
  auto pairwise = [&](uint32_t mask) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if ((mask >> a & 1) && (mask >> b & 1) && !compat[a][b]) return false;
    return true;
  };
  std::vector<uint32_t> cliques;
  for (uint32_t mask = 1; mask < (uint32_t(1) << n); ++mask)
    if (pairwise(mask)) cliques.push_back(mask);
  std::vector<std::vector<ElementId>> out;
  for (uint32_t mask : cliques) {
    bool maximal = true;
    for (uint32_t other : cliques)
      if (other != mask && (other & mask) == mask) {
        maximal = false;
        break;
      }
    if (!maximal) continue;
    std::vector<ElementId> block;
    for (int a = 0; a < n; ++a)
      if (mask >> a & 1) block.push_back(a);
    out.push_back(std::move(block));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Naive fixed point: rescan all pairs until nothing new appears.
inline std::set<std::vector<Rational>> oracle_fuzzy_closure(
    const std::vector<std::vector<Rational>>& generators, size_t points) {
  std::set<std::vector<Rational>> closed(generators.begin(), generators.end());
  closed.insert(std::vector<Rational>(points, Rational(1)));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<Rational>> snapshot(closed.begin(), closed.end());
    for (const auto& f : snapshot) {
      std::vector<Rational> c(points);
      for (size_t i = 0; i < points; ++i) c[i] = 1 - f[i];
      grew |= closed.insert(c).second;
      for (const auto& g : snapshot) {
        std::vector<Rational> sum(points);
        bool ok = true;
        for (size_t i = 0; i < points && ok; ++i) {
          sum[i] = f[i] + g[i];
          ok = sum[i] <= 1;
        }
        if (ok) grew |= closed.insert(sum).second;
      }
    }
  }
  return closed;
}

// range via the definition: evaluate on every member of the generated
// algebra of the spectrum.
inline std::set<ElementId> oracle_range(const Observable& x) {
  auto points = x.spectrum_points();
  std::set<ElementId> out;
  for (const auto& e : generated_algebra(points)) out.insert(x.evaluate(e));
  return out;
}

// Uniqueness by materialized enumeration instead of the mask tables.
inline bool oracle_agree_everywhere(const Observable& x, const Observable& y) {
  std::vector<Rational> points = x.spectrum_points();
  auto more = y.spectrum_points();
  points.insert(points.end(), more.begin(), more.end());
  for (const auto& e : generated_algebra(points))
    if (x.evaluate(e) != y.evaluate(e)) return false;
  return true;
}

// Full-pair Jauch-Piron scan over the materialized generated algebra.
inline bool oracle_jauch_piron(const Observable& x) {
  auto points = x.spectrum_points();
  auto algebra = generated_algebra(points);
  const QuantumStructure& s = *x.structure();
  for (const auto& e : algebra)
    for (const auto& f : algebra) {
      if (x.evaluate(e) != s.one() || x.evaluate(f) != s.one()) continue;
      if (x.evaluate(set_intersect(e, f)) != s.one()) return false;
    }
  return true;
}

}  // namespace qobs::testsupport

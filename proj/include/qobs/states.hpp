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

#include <cstdint>
#include <vector>

#include "qobs/algebra.hpp"
#include "qobs/observable.hpp"

namespace qobs {

inline constexpr int kMaxStateElements = 64;
inline constexpr double kMaxPolytopeBases = 2e7;

/// Additive [0,1]-valuation with s(1) = 1. Both axioms are verified
/// exhaustively at construction.
class State {
 public:
  /// Errors: unit_not_one, out_of_range, not_additive (with witness pair).
  static State make(StructurePtr s, std::vector<Rational> values);

  const StructurePtr& structure() const { return s_; }
  const Rational& value(ElementId a) const { return values_[a]; }
  const std::vector<Rational>& values() const { return values_; }

  friend bool operator==(const State& a, const State& b) {
    return a.s_->same_as(*b.s_) && a.values_ == b.values_;
  }

 private:
  State(StructurePtr s, std::vector<Rational> values)
      : s_(std::move(s)), values_(std::move(values)) {}
  StructurePtr s_;
  std::vector<Rational> values_;
};

/// lambda * s1 + (1 - lambda) * s2; validates the result.
State convex_mix(const State& s1, const State& s2, const Rational& lambda);

/// The solution set of the additivity equations inside the unit box, with
/// its extremal points. Vertices are enumerated exhaustively from the
/// rank-reduced equality system and listed in a deterministic order.
class StatePolytope {
 public:
  const StructurePtr& structure() const { return s_; }
  bool empty() const { return vertices_.empty(); }
  /// Affine dimension of the solution set (-1 when empty).
  int dimension() const { return dimension_; }
  /// Free element coordinates determining all values.
  const std::vector<ElementId>& free_coordinates() const { return free_; }
  const std::vector<State>& vertices() const { return vertices_; }

 private:
  friend StatePolytope state_polytope(StructurePtr s);
  StructurePtr s_;
  int dimension_ = -1;
  std::vector<ElementId> free_;
  std::vector<State> vertices_;
};

/// Errors: precondition_failed above kMaxStateElements; too_large when the
/// basic-solution search would exceed kMaxPolytopeBases bases.
StatePolytope state_polytope(StructurePtr s);

/// The evaluation functional a-hat: s -> s(a). Affine on the state space.
class HatFunctional {
 public:
  HatFunctional(StructurePtr s, ElementId a) : s_(std::move(s)), a_(a) {}
  Rational operator()(const State& state) const;
  ElementId element() const { return a_; }

 private:
  StructurePtr s_;
  ElementId a_;
};

/// Errors: empty_state_space.
HatFunctional hat(const StatePolytope& polytope, ElementId a);

/// Outcome probabilities s(a_n) at the spectrum points; sums to exactly 1.
std::vector<std::pair<Rational, Rational>> distribution(const State& s,
                                                        const Observable& x);

/// Sum of t * s(a_t) over the atoms.
Rational expectation(const State& s, const Observable& x);

/// Sum of f(t) * s(a_t); the table must cover the spectrum
/// (partial_function).
Rational expectation(const State& s, const Observable& x,
                     const std::vector<std::pair<Rational, Rational>>& table);

/// Sum of t^k * s(a_t).
Rational moment(const State& s, const Observable& x, int k);

/// Deterministic sampling of outcomes; identical seeds give identical
/// outcome sequences.
std::vector<Rational> sample(const State& s, const Observable& x, int count,
                             uint64_t seed);

}  // namespace qobs

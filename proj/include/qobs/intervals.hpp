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

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qobs/rational.hpp"

namespace qobs {

/// A position on the extended real line with an "approach side". Every
/// interval endpoint, whatever its open/closed flags, maps to a half-open
/// range of cuts, which turns all the flag bookkeeping into plain ordering:
///   [a,...  -> cut (a, before)        (a,...  -> cut (a, after)
///   ...,b]  -> cut (b, after)         ...,b)  -> cut (b, before)
/// A piece is then the half-open cut interval [lo, hi) and is empty iff
/// lo >= hi.
struct Cut {
  int8_t inf = 0;  // -1: below all reals, 0: finite, +1: above all reals
  Rational value;  // meaningful only when inf == 0
  int8_t side = 0;  // 0: immediately before `value`, 1: immediately after

  static Cut neg_inf() { return Cut{-1, Rational(0), 0}; }
  static Cut pos_inf() { return Cut{+1, Rational(0), 0}; }
  static Cut before(Rational v) { return Cut{0, std::move(v), 0}; }
  static Cut after(Rational v) { return Cut{0, std::move(v), 1}; }

  friend bool operator==(const Cut& a, const Cut& b) {
    if (a.inf != b.inf) return false;
    if (a.inf != 0) return true;
    return a.side == b.side && a.value == b.value;
  }
  friend bool operator<(const Cut& a, const Cut& b) {
    if (a.inf != b.inf) return a.inf < b.inf;
    if (a.inf != 0) return false;
    int c = cmp(a.value, b.value);
    if (c != 0) return c < 0;
    return a.side < b.side;
  }
  friend bool operator<=(const Cut& a, const Cut& b) { return a < b || a == b; }
};

/// User-facing endpoint of one interval piece.
struct Endpoint {
  enum class Kind { neg_inf, finite, pos_inf };
  Kind kind = Kind::finite;
  Rational value;      // only when finite
  bool closed = false;  // always false at infinities
};

struct IntervalPiece {
  Endpoint lo, hi;
  bool is_singleton() const;
};

/// Canonical finite union of disjoint, non-adjacent real intervals. Value
/// type; all operations are pure.
class IntervalSet {
 public:
  IntervalSet() = default;  // the empty set

  static IntervalSet empty() { return IntervalSet(); }
  static IntervalSet reals();
  static IntervalSet singleton(const Rational& t);
  /// Missing optional = the corresponding infinity.
  static IntervalSet interval(std::optional<Rational> lo, bool lo_closed,
                              std::optional<Rational> hi, bool hi_closed);
  /// Canonicalizes: sorts, drops empty pieces, merges overlap and adjacency.
  /// When `dropped_empty` is given, reports whether a lo > hi piece was seen.
  static IntervalSet from_pieces(const std::vector<IntervalPiece>& pieces,
                                 bool* dropped_empty = nullptr);

  bool is_empty() const { return pieces_.empty(); }
  bool is_reals() const;
  /// Topologically closed as a subset of the reals.
  bool is_closed() const;
  std::vector<IntervalPiece> pieces() const;
  size_t piece_count() const { return pieces_.size(); }

  bool contains(const Rational& t) const;

  IntervalSet complement() const;
  friend IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
  friend IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b);
  friend IntervalSet set_difference(const IntervalSet& a, const IntervalSet& b);

  /// Minimal canonical form, `U`-separated, endpoints in lowest terms.
  /// The empty set prints as `{}`.
  std::string str() const;

  friend bool operator==(const IntervalSet& a, const IntervalSet& b);

 private:
  struct Piece {
    Cut lo, hi;  // invariant: lo < hi
  };
  explicit IntervalSet(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {}
  static IntervalSet from_cut_pieces(std::vector<Piece> raw,
                                     bool* dropped_empty = nullptr);

  std::vector<Piece> pieces_;  // sorted, pairwise disjoint and non-adjacent
};

/// Grammar: unions of `(a,b)`, `[a,b)`, `(a,b]`, `[a,b]`, `{t}` joined by
/// `U`; endpoints are rationals (decimal or p/q) or `-inf`/`inf`; `{}` is
/// the empty set. Throws Error(syntax_error) with a character position.
/// Pieces with lo > hi are dropped and reported through `dropped_empty`.
IntervalSet parse_interval_set(std::string_view text,
                               bool* dropped_empty = nullptr);

inline constexpr int kGeneratedAlgebraMaxPoints = 8;

/// The finite algebra of sets separating `points`: all unions of the atoms
/// of the partition of the reals into the singletons {p} and the open gaps
/// between and around them. 2^(2k+1) members for k distinct points; capped
/// at kGeneratedAlgebraMaxPoints (Error too_large beyond).
std::vector<IntervalSet> generated_algebra(std::span<const Rational> points);

}  // namespace qobs

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

#include "qobs/intervals.hpp"

#include <algorithm>
#include <cctype>

#include "qobs/errors.hpp"

namespace qobs {

namespace {

Cut lo_cut(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::neg_inf:
      return Cut::neg_inf();
    case Endpoint::Kind::pos_inf:
      return Cut::pos_inf();
    case Endpoint::Kind::finite:
      return e.closed ? Cut::before(e.value) : Cut::after(e.value);
  }
  fail(Errc::internal_error, "bad endpoint kind");
}

Cut hi_cut(const Endpoint& e) {
  switch (e.kind) {
    case Endpoint::Kind::neg_inf:
      return Cut::neg_inf();
    case Endpoint::Kind::pos_inf:
      return Cut::pos_inf();
    case Endpoint::Kind::finite:
      return e.closed ? Cut::after(e.value) : Cut::before(e.value);
  }
  fail(Errc::internal_error, "bad endpoint kind");
}

Endpoint lo_endpoint(const Cut& c) {
  if (c.inf < 0) return Endpoint{Endpoint::Kind::neg_inf, Rational(0), false};
  if (c.inf > 0) fail(Errc::internal_error, "lo endpoint at +inf");
  return Endpoint{Endpoint::Kind::finite, c.value, c.side == 0};
}

Endpoint hi_endpoint(const Cut& c) {
  if (c.inf > 0) return Endpoint{Endpoint::Kind::pos_inf, Rational(0), false};
  if (c.inf < 0) fail(Errc::internal_error, "hi endpoint at -inf");
  return Endpoint{Endpoint::Kind::finite, c.value, c.side == 1};
}

}  // namespace

bool IntervalPiece::is_singleton() const {
  return lo.kind == Endpoint::Kind::finite &&
         hi.kind == Endpoint::Kind::finite && lo.closed && hi.closed &&
         lo.value == hi.value;
}

IntervalSet IntervalSet::reals() {
  return IntervalSet({Piece{Cut::neg_inf(), Cut::pos_inf()}});
}

IntervalSet IntervalSet::singleton(const Rational& t) {
  return IntervalSet({Piece{Cut::before(t), Cut::after(t)}});
}

IntervalSet IntervalSet::interval(std::optional<Rational> lo, bool lo_closed,
                                  std::optional<Rational> hi, bool hi_closed) {
  Cut l = lo ? (lo_closed ? Cut::before(*lo) : Cut::after(*lo)) : Cut::neg_inf();
  Cut h = hi ? (hi_closed ? Cut::after(*hi) : Cut::before(*hi)) : Cut::pos_inf();
  return from_cut_pieces({Piece{l, h}});
}

IntervalSet IntervalSet::from_pieces(const std::vector<IntervalPiece>& pieces,
                                     bool* dropped_empty) {
  std::vector<Piece> raw;
  raw.reserve(pieces.size());
  for (const auto& p : pieces) raw.push_back(Piece{lo_cut(p.lo), hi_cut(p.hi)});
  return from_cut_pieces(std::move(raw), dropped_empty);
}

IntervalSet IntervalSet::from_cut_pieces(std::vector<Piece> raw,
                                         bool* dropped_empty) {
  if (dropped_empty) *dropped_empty = false;
  std::vector<Piece> live;
  live.reserve(raw.size());
  for (auto& p : raw) {
    if (p.lo < p.hi)
      live.push_back(std::move(p));
    else if (dropped_empty)
      *dropped_empty = true;
  }
  std::sort(live.begin(), live.end(), [](const Piece& a, const Piece& b) {
    if (a.lo == b.lo) return a.hi < b.hi;
    return a.lo < b.lo;
  });
  std::vector<Piece> merged;
  for (auto& p : live) {
    if (!merged.empty() && p.lo <= merged.back().hi) {
      if (merged.back().hi < p.hi) merged.back().hi = p.hi;
    } else {
      merged.push_back(std::move(p));
    }
  }
  return IntervalSet(std::move(merged));
}

bool IntervalSet::is_reals() const {
  return pieces_.size() == 1 && pieces_[0].lo.inf < 0 && pieces_[0].hi.inf > 0;
}

bool IntervalSet::is_closed() const {
  for (const auto& p : pieces_) {
    if (p.lo.inf == 0 && p.lo.side != 0) return false;
    if (p.hi.inf == 0 && p.hi.side != 1) return false;
  }
  return true;
}

std::vector<IntervalPiece> IntervalSet::pieces() const {
  std::vector<IntervalPiece> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_)
    out.push_back(IntervalPiece{lo_endpoint(p.lo), hi_endpoint(p.hi)});
  return out;
}

bool IntervalSet::contains(const Rational& t) const {
  for (const auto& p : pieces_) {
    if (p.lo <= Cut::before(t) && Cut::after(t) <= p.hi) return true;
    if (Cut::after(t) <= p.lo) break;  // pieces are sorted
  }
  return false;
}

IntervalSet IntervalSet::complement() const {
  std::vector<Piece> out;
  Cut cursor = Cut::neg_inf();
  for (const auto& p : pieces_) {
    if (cursor < p.lo) out.push_back(Piece{cursor, p.lo});
    cursor = p.hi;
  }
  if (cursor < Cut::pos_inf()) out.push_back(Piece{cursor, Cut::pos_inf()});
  return IntervalSet(std::move(out));
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<IntervalSet::Piece> raw = a.pieces_;
  raw.insert(raw.end(), b.pieces_.begin(), b.pieces_.end());
  return IntervalSet::from_cut_pieces(std::move(raw));
}

IntervalSet set_intersect(const IntervalSet& a, const IntervalSet& b) {
  std::vector<IntervalSet::Piece> out;
  size_t i = 0, j = 0;
  while (i < a.pieces_.size() && j < b.pieces_.size()) {
    const auto& p = a.pieces_[i];
    const auto& q = b.pieces_[j];
    Cut lo = p.lo < q.lo ? q.lo : p.lo;
    Cut hi = p.hi < q.hi ? p.hi : q.hi;
    if (lo < hi) out.push_back(IntervalSet::Piece{lo, hi});
    if (p.hi < q.hi)
      ++i;
    else
      ++j;
  }
  return IntervalSet(std::move(out));
}

IntervalSet set_difference(const IntervalSet& a, const IntervalSet& b) {
  return set_intersect(a, b.complement());
}

bool operator==(const IntervalSet& a, const IntervalSet& b) {
  if (a.pieces_.size() != b.pieces_.size()) return false;
  for (size_t i = 0; i < a.pieces_.size(); ++i) {
    if (!(a.pieces_[i].lo == b.pieces_[i].lo) ||
        !(a.pieces_[i].hi == b.pieces_[i].hi))
      return false;
  }
  return true;
}

std::string IntervalSet::str() const {
  if (pieces_.empty()) return "{}";
  std::string out;
  bool first = true;
  for (const auto& piece : pieces()) {
    if (!first) out += " U ";
    first = false;
    if (piece.is_singleton()) {
      out += "{" + to_string(piece.lo.value) + "}";
      continue;
    }
    out += piece.lo.kind == Endpoint::Kind::finite && piece.lo.closed ? "[" : "(";
    out += piece.lo.kind == Endpoint::Kind::neg_inf ? "-inf"
                                                    : to_string(piece.lo.value);
    out += ",";
    out += piece.hi.kind == Endpoint::Kind::pos_inf ? "inf"
                                                    : to_string(piece.hi.value);
    out += piece.hi.kind == Endpoint::Kind::finite && piece.hi.closed ? "]" : ")";
  }
  return out;
}

namespace {

// Recursive-descent reader for the interval grammar.
class IntervalReader {
 public:
  explicit IntervalReader(std::string_view text) : text_(text) {}

  IntervalSet read(bool* dropped_empty) {
    std::vector<IntervalPiece> pieces;
    bool any_content = false;
    skip_ws();
    while (pos_ < text_.size()) {
      read_piece(pieces);
      any_content = true;
      skip_ws();
      if (pos_ < text_.size()) {
        if (text_[pos_] != 'U')
          error("expected 'U' between pieces");
        ++pos_;
        skip_ws();
        if (pos_ >= text_.size()) error("trailing 'U'");
      }
    }
    if (!any_content) error("empty interval expression");
    return IntervalSet::from_pieces(pieces, dropped_empty);
  }

 private:
  [[noreturn]] void error(const std::string& what) {
    fail(Errc::syntax_error,
         "interval syntax error at position " + std::to_string(pos_) + ": " +
             what);
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  // A signed decimal/fraction literal, or -inf / inf.
  enum class Value { finite, neg_inf, pos_inf };
  Value read_value(Rational* out) {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ')' &&
           text_[pos_] != ']' && text_[pos_] != '}' && text_[pos_] != 'U' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::string_view token = text_.substr(start, pos_ - start);
    if (token.empty()) error("expected a number");
    if (token == "inf" || token == "+inf") return Value::pos_inf;
    if (token == "-inf") return Value::neg_inf;
    try {
      *out = parse_rational(token);
    } catch (const Error&) {
      pos_ = start;
      error("malformed number '" + std::string(token) + "'");
    }
    return Value::finite;
  }

  void read_piece(std::vector<IntervalPiece>& pieces) {
    if (text_[pos_] == '{') {
      ++pos_;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '}') {  // {} = empty set
        ++pos_;
        return;
      }
      Rational t;
      if (read_value(&t) != Value::finite) error("singleton must be finite");
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '}') error("expected '}'");
      ++pos_;
      pieces.push_back(IntervalPiece{
          Endpoint{Endpoint::Kind::finite, t, true},
          Endpoint{Endpoint::Kind::finite, t, true}});
      return;
    }
    if (text_[pos_] != '(' && text_[pos_] != '[') error("expected '(', '[' or '{'");
    bool lo_closed = text_[pos_] == '[';
    ++pos_;
    Rational lo_v;
    Value lo_kind = read_value(&lo_v);
    if (lo_kind == Value::pos_inf) error("lower endpoint cannot be +inf");
    if (lo_kind == Value::neg_inf && lo_closed)
      error("-inf endpoint cannot be closed");
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ',') error("expected ','");
    ++pos_;
    Rational hi_v;
    Value hi_kind = read_value(&hi_v);
    if (hi_kind == Value::neg_inf) error("upper endpoint cannot be -inf");
    skip_ws();
    if (pos_ >= text_.size() || (text_[pos_] != ')' && text_[pos_] != ']'))
      error("expected ')' or ']'");
    bool hi_closed = text_[pos_] == ']';
    if (hi_kind == Value::pos_inf && hi_closed)
      error("inf endpoint cannot be closed");
    ++pos_;
    Endpoint lo = lo_kind == Value::neg_inf
                      ? Endpoint{Endpoint::Kind::neg_inf, Rational(0), false}
                      : Endpoint{Endpoint::Kind::finite, lo_v, lo_closed};
    Endpoint hi = hi_kind == Value::pos_inf
                      ? Endpoint{Endpoint::Kind::pos_inf, Rational(0), false}
                      : Endpoint{Endpoint::Kind::finite, hi_v, hi_closed};
    pieces.push_back(IntervalPiece{lo, hi});
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

IntervalSet parse_interval_set(std::string_view text, bool* dropped_empty) {
  return IntervalReader(text).read(dropped_empty);
}

std::vector<IntervalSet> generated_algebra(std::span<const Rational> points) {
  std::vector<Rational> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  const size_t k = sorted.size();
  if (k > kGeneratedAlgebraMaxPoints)
    fail(Errc::too_large, "generated algebra over " + std::to_string(k) +
                              " points exceeds the cap of " +
                              std::to_string(kGeneratedAlgebraMaxPoints));

  // Atoms of the induced partition: k+1 open gaps interleaved with k
  // singletons, ordered left to right.
  std::vector<IntervalSet> atoms;
  for (size_t i = 0; i <= k; ++i) {
    std::optional<Rational> lo =
        i == 0 ? std::nullopt : std::optional<Rational>(sorted[i - 1]);
    std::optional<Rational> hi =
        i == k ? std::nullopt : std::optional<Rational>(sorted[i]);
    atoms.push_back(IntervalSet::interval(lo, false, hi, false));
    if (i < k) atoms.push_back(IntervalSet::singleton(sorted[i]));
  }

  const size_t m = atoms.size();  // 2k+1
  std::vector<IntervalSet> out;
  out.reserve(size_t(1) << m);
  for (size_t mask = 0; mask < (size_t(1) << m); ++mask) {
    IntervalSet u;
    for (size_t b = 0; b < m; ++b)
      if (mask & (size_t(1) << b)) u = set_union(u, atoms[b]);
    out.push_back(std::move(u));
  }
  return out;
}

}  // namespace qobs

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

#include <doctest.h>

#include <random>

#include "qobs/errors.hpp"
#include "qobs/rational.hpp"

using namespace qobs;

namespace {

IntervalSet random_interval_set(std::mt19937_64& rng) {
  std::vector<IntervalPiece> pieces;
  int count = int(rng() % 4);
  for (int i = 0; i < count; ++i) {
    auto value = [&] { return frac(long(rng() % 21) - 10, 1 + long(rng() % 3)); };
    int shape = int(rng() % 4);
    if (shape == 0) {
      Rational t = value();
      pieces.push_back({Endpoint{Endpoint::Kind::finite, t, true},
                        Endpoint{Endpoint::Kind::finite, t, true}});
    } else {
      Endpoint lo = shape == 1
                        ? Endpoint{Endpoint::Kind::neg_inf, Rational(0), false}
                        : Endpoint{Endpoint::Kind::finite, value(), rng() % 2 == 0};
      Endpoint hi = shape == 2
                        ? Endpoint{Endpoint::Kind::pos_inf, Rational(0), false}
                        : Endpoint{Endpoint::Kind::finite, value(), rng() % 2 == 0};
      pieces.push_back({lo, hi});
    }
  }
  return IntervalSet::from_pieces(pieces);
}

}  // namespace

TEST_CASE("rational parsing and canonical printing") {
  CHECK(to_string(parse_rational("3/5")) == "3/5");
  CHECK(to_string(parse_rational("6/10")) == "3/5");
  CHECK(to_string(parse_rational("-0.4")) == "-2/5");
  CHECK(to_string(parse_rational("1.5")) == "3/2");
  CHECK(to_string(parse_rational(".25")) == "1/4");
  CHECK(to_string(parse_rational("7")) == "7");
  CHECK(to_string(parse_rational("-12/4")) == "-3");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("a"), Error);
  CHECK_THROWS_AS(parse_rational("1.2.3"), Error);
  CHECK(format_real(0.3) == "0.3");
  CHECK(format_real(1.0) == "1");
}

TEST_CASE("parsing the interval grammar") {
  CHECK(parse_interval_set("(-inf,1.5)").piece_count() == 1);
  CHECK(parse_interval_set("(-inf,1.5)").str() == "(-inf,3/2)");
  CHECK(parse_interval_set("[0,1) U [1,2)").str() == "[0,2)");
  CHECK(parse_interval_set("{1} U {2}").piece_count() == 2);
  CHECK(parse_interval_set("{1} U {2}").str() == "{1} U {2}");
  CHECK(parse_interval_set("{}").is_empty());
  CHECK(parse_interval_set("(-inf,inf)").is_reals());
  CHECK(parse_interval_set("(0,1) U (1,2)").piece_count() == 2);
  CHECK(parse_interval_set("[1,1]").str() == "{1}");

  bool dropped = false;
  CHECK(parse_interval_set("[2,1] U {0}", &dropped).str() == "{0}");
  CHECK(dropped);
  dropped = false;
  CHECK(parse_interval_set("[1,1)", &dropped).is_empty());
  CHECK(dropped);

  CHECK_THROWS_AS(parse_interval_set("(1,2"), Error);
  CHECK_THROWS_AS(parse_interval_set("&"), Error);
  CHECK_THROWS_AS(parse_interval_set("(1,2) X (3,4)"), Error);
  CHECK_THROWS_AS(parse_interval_set("[inf,2)"), Error);
  CHECK_THROWS_AS(parse_interval_set(""), Error);
  CHECK_THROWS_AS(parse_interval_set("(2,-inf)"), Error);
}

TEST_CASE("complement") {
  CHECK(IntervalSet::empty().complement().is_reals());
  CHECK(parse_interval_set("(-inf,0)").complement().str() == "[0,inf)");
  CHECK(parse_interval_set("[1,2)").complement().str() == "(-inf,1) U [2,inf)");
}

TEST_CASE("union and intersection") {
  auto e = parse_interval_set("(0,3) U {5}");
  CHECK(set_union(e, IntervalSet::empty()) == e);
  CHECK(set_intersect(e, IntervalSet::reals()) == e);
  CHECK(set_intersect(parse_interval_set("(-inf,2)"), parse_interval_set("[1,3)"))
            .str() == "[1,2)");
  CHECK(set_union(parse_interval_set("(-inf,1)"), parse_interval_set("[1,inf)"))
            .is_reals());
}

TEST_CASE("membership respects open and closed endpoints") {
  auto e = parse_interval_set("[1,2)");
  CHECK(e.contains(Rational(1)));
  CHECK(!e.contains(Rational(2)));
  CHECK(!parse_interval_set("(-inf,1.5)").contains(frac(3, 2)));
  CHECK(parse_interval_set("{7}").contains(Rational(7)));
  CHECK(!parse_interval_set("{7}").contains(Rational(8)));
}

TEST_CASE("closedness") {
  CHECK(IntervalSet::reals().is_closed());
  CHECK(IntervalSet::empty().is_closed());
  CHECK(parse_interval_set("{1} U [2,3]").is_closed());
  CHECK(parse_interval_set("(-inf,0]").is_closed());
  CHECK(!parse_interval_set("[1,2)").is_closed());
}

TEST_CASE("generated algebra sizes") {
  CHECK(generated_algebra(std::vector<Rational>{}).size() == 2);
  CHECK(generated_algebra(std::vector<Rational>{Rational(1)}).size() == 8);
  CHECK(generated_algebra(std::vector<Rational>{Rational(1), Rational(2)}).size()
        == 32);
  // duplicates collapse
  CHECK(generated_algebra(std::vector<Rational>{Rational(1), Rational(1)}).size()
        == 8);
  std::vector<Rational> too_many;
  for (int i = 0; i < 9; ++i) too_many.push_back(Rational(i));
  CHECK_THROWS_AS(generated_algebra(too_many), Error);
}

TEST_CASE("generated algebra members are distinct and closed under complement") {
  std::vector<Rational> points{Rational(0), frac(1, 2), Rational(3)};
  auto algebra = generated_algebra(points);
  for (size_t i = 0; i < algebra.size(); ++i) {
    bool complement_found = false;
    for (size_t j = 0; j < algebra.size(); ++j) {
      if (i != j) CHECK(!(algebra[i] == algebra[j]));
      if (algebra[i].complement() == algebra[j]) complement_found = true;
    }
    CHECK(complement_found);
  }
}

TEST_CASE("interval set properties on random inputs") {
  std::mt19937_64 rng(20260810);
  for (int round = 0; round < 300; ++round) {
    auto e = random_interval_set(rng);
    auto f = random_interval_set(rng);
    CHECK(e.complement().complement() == e);
    CHECK(set_union(e, f).complement() ==
          set_intersect(e.complement(), f.complement()));
    Rational t = frac(long(rng() % 21) - 10, 1 + long(rng() % 3));
    CHECK(set_union(e, f).contains(t) == (e.contains(t) || f.contains(t)));
    CHECK(set_intersect(e, f).contains(t) == (e.contains(t) && f.contains(t)));
    CHECK(set_difference(e, f).contains(t) == (e.contains(t) && !f.contains(t)));
    // canonical print round trip
    if (!e.is_empty()) CHECK(parse_interval_set(e.str()) == e);
  }
}

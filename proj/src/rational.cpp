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

#include "qobs/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "qobs/errors.hpp"

namespace qobs {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) fail(Errc::syntax_error, "empty rational literal");

  Rational value;
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      fail(Errc::syntax_error, "malformed fraction: " + std::string(text));
    value = Rational(mpz_class(std::string(num), 10),
                     mpz_class(std::string(den), 10));
    if (value.get_den() == 0)
      fail(Errc::syntax_error, "zero denominator: " + std::string(text));
    value.canonicalize();
  } else if (dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty())
      fail(Errc::syntax_error, "malformed decimal: " + std::string(text));
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      fail(Errc::syntax_error, "malformed decimal: " + std::string(text));
    mpz_class digits(std::string(ip) + std::string(fp), 10);
    mpz_class den = 1;
    for (size_t i = 0; i < fp.size(); ++i) den *= 10;
    value = Rational(digits, den);
    value.canonicalize();
  } else {
    if (!all_digits(s))
      fail(Errc::syntax_error, "malformed number: " + std::string(text));
    value = Rational(mpz_class(std::string(s), 10));
  }
  if (negative) value = -value;
  return value;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) { return r.get_d(); }

Rational frac(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string format_real(double x, int significant) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, x);
  // normalize "-0" to "0"
  if (std::strcmp(buf, "-0") == 0) return "0";
  return buf;
}

}  // namespace qobs

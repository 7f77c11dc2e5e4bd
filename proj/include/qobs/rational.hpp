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

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qobs {

/// Exact rational scalar. All algebraic and probabilistic arithmetic in the
/// library is exact; floating point appears only in the hilbert module.
using Rational = mpq_class;

/// Accepts `p/q`, integers, and decimal literals (`1.5`, `-0.4`, `.25`).
/// Throws Error(syntax_error) on anything else.
Rational parse_rational(std::string_view text);

/// Canonical form: lowest terms, `p/q`, integers without denominator.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

/// num/den reduced to lowest terms. Bare mpq_class(num, den) does not
/// canonicalize; use this instead.
Rational frac(long num, long den);

/// Fixed number of significant digits, trailing zeros trimmed. Used for all
/// real-valued report output.
std::string format_real(double x, int significant = 12);

}  // namespace qobs

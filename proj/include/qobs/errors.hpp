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

#include <stdexcept>
#include <string>

namespace qobs {

/// Machine-readable failure codes. `reason_code()` yields the kebab-case
/// string used by the CLI (`FAIL <reason-code>`).
enum class Errc {
  // parsing
  syntax_error,
  // structure validation
  axiom_i,
  axiom_ii,
  axiom_iii,
  axiom_iv,
  missing_complement,
  duplicate_entry,
  kind_mismatch,
  too_large,
  size_overflow,
  closure_overflow,
  // partial operations
  not_summable,
  no_refinement,
  precondition_failed,
  not_surjective,
  meet_undefined,
  // observables
  total_not_one,
  duplicate_point,
  family_invalid,
  jauch_piron_failed,
  partial_function,
  // states
  not_additive,
  unit_not_one,
  out_of_range,
  empty_state_space,
  structure_mismatch,
  // hilbert
  dimension_mismatch,
  not_unit_vector,
  effect_invalid,
  density_invalid,
  // catch-all for broken internal invariants
  internal_error,
};

const char* reason_code(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace qobs

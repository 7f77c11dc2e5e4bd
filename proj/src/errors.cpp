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

#include "qobs/errors.hpp"

namespace qobs {

const char* reason_code(Errc code) {
  switch (code) {
    case Errc::syntax_error: return "syntax-error";
    case Errc::axiom_i: return "axiom-i";
    case Errc::axiom_ii: return "axiom-ii";
    case Errc::axiom_iii: return "axiom-iii";
    case Errc::axiom_iv: return "axiom-iv";
    case Errc::missing_complement: return "missing-complement";
    case Errc::duplicate_entry: return "duplicate-entry";
    case Errc::kind_mismatch: return "kind-mismatch";
    case Errc::too_large: return "too-large";
    case Errc::size_overflow: return "size-overflow";
    case Errc::closure_overflow: return "closure-overflow";
    case Errc::not_summable: return "not-summable";
    case Errc::no_refinement: return "no-refinement";
    case Errc::precondition_failed: return "precondition-failed";
    case Errc::not_surjective: return "not-surjective";
    case Errc::meet_undefined: return "meet-undefined";
    case Errc::total_not_one: return "total-not-one";
    case Errc::duplicate_point: return "duplicate-point";
    case Errc::family_invalid: return "family-invalid";
    case Errc::jauch_piron_failed: return "jauch-piron-failed";
    case Errc::partial_function: return "partial-function";
    case Errc::not_additive: return "not-additive";
    case Errc::unit_not_one: return "unit-not-one";
    case Errc::out_of_range: return "out-of-range";
    case Errc::empty_state_space: return "empty-state-space";
    case Errc::structure_mismatch: return "structure-mismatch";
    case Errc::dimension_mismatch: return "dimension-mismatch";
    case Errc::not_unit_vector: return "not-unit-vector";
    case Errc::effect_invalid: return "effect-invalid";
    case Errc::density_invalid: return "density-invalid";
    case Errc::internal_error: return "internal-error";
  }
  return "unknown";
}

}  // namespace qobs

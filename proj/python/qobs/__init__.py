# Copyright 2026 The qobs developers

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Finite quantum structures, observables and spectral families.

Exact-rational effect algebras, MV-algebras, orthomodular posets and fuzzy
carriers; finite-support observables with their spectral families and the
reconstruction/uniqueness machinery; state polytopes; and the effect
operators of a finite-dimensional Hilbert space with POVM statistics.
Rational values cross the boundary as ``fractions.Fraction``.
"""

from qobs._core import (
    DensityState,
    EffectOperator,
    Flavor,
    FuzzyStructure,
    Homomorphism,
    IntervalSet,
    MvStructure,
    Observable,
    OperatorSpectralFamily,
    Povm,
    PovmStatistics,
    QobsError,
    SpectralFamily,
    State,
    StatePolytope,
    Structure,
    blocks,
    boolean_point_function,
    check_family_axioms,
    convex_mix,
    distribution,
    distribution_function,
    effect_probability,
    expectation,
    functional_calculus,
    fuzzy_restriction,
    generated_algebra,
    hat,
    is_boolean_sigma_hom,
    is_compatible,
    is_sharp,
    is_subalgebra,
    jauch_piron_check,
    jauch_piron_witness,
    load_family_document,
    load_observable_document,
    load_state_document,
    load_structure_document,
    loewner_leq,
    make_chain,
    make_fuzzy,
    make_homomorphism,
    make_mv_homomorphism,
    make_power_set,
    make_question,
    moment,
    mv_lift,
    povm_statistics,
    preserves_finite_intersections,
    product,
    product_projection,
    range,
    rdp_refine,
    reconstruct,
    reconstruct_povm,
    sample,
    sharp_elements,
    spectral_family,
    spectrum,
    state_polytope,
    summable_sum,
    uniqueness_oracle,
    validate_structure,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

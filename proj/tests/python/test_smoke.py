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

import os
from fractions import Fraction

import numpy as np
import pytest

import qobs

CORPUS = os.path.join(os.path.dirname(__file__), "..", "..", "corpus")


def paper_observable():
    chain = qobs.make_chain(5)
    return chain, qobs.Observable.make(
        chain.base, [(Fraction(1), "1/5"), (Fraction(2), "4/5")]
    )


def test_chain_structure():
    chain = qobs.make_chain(5)
    s = chain.base
    assert s.size == 6
    assert s.name(s.id_of("2/5")) == "2/5"
    assert s.plus(s.id_of("1/5"), s.id_of("2/5")) == s.id_of("3/5")
    assert s.plus(s.id_of("4/5"), s.id_of("4/5")) is None
    assert s.flavor.mv and s.flavor.lattice and s.flavor.rdp
    assert chain.oplus(s.id_of("4/5"), s.id_of("4/5")) == s.one


def test_observable_round_trip():
    chain, x = paper_observable()
    s = chain.base
    assert x.evaluate("(-inf,1.5)") == s.id_of("1/5")
    assert x.evaluate(qobs.IntervalSet.reals()) == s.one

    family = qobs.spectral_family(x)
    assert family.jumps == [(Fraction(1), s.id_of("1/5")), (Fraction(2), s.one)]
    assert qobs.reconstruct(family) == x

    r = qobs.range(x)
    assert r == [s.zero, s.id_of("1/5"), s.id_of("4/5"), s.one]
    assert not qobs.is_subalgebra(s, r)

    assert str(qobs.spectrum(x)) == "{1} U {2}"


def test_uniqueness():
    chain, x = paper_observable()
    point = qobs.Observable.make(chain.base, [(Fraction(1), "1")])
    agree, witness = qobs.uniqueness_oracle(x, point)
    assert not agree
    assert str(witness) == "{1}"
    agree, witness = qobs.uniqueness_oracle(x, x)
    assert agree and witness is None


def test_states_and_moments():
    chain, x = paper_observable()
    polytope = qobs.state_polytope(chain.base)
    assert not polytope.empty
    assert len(polytope.vertices) == 1
    state = polytope.vertices[0]
    assert state.value(chain.base.id_of("2/5")) == Fraction(2, 5)
    assert qobs.expectation(state, x) == Fraction(9, 5)
    assert qobs.moment(state, x, 2) == Fraction(17, 5)
    dist = qobs.distribution(state, x)
    assert dist == [(Fraction(1), Fraction(1, 5)), (Fraction(2), Fraction(4, 5))]
    outcomes = qobs.sample(state, x, 100, seed=7)
    assert outcomes == qobs.sample(state, x, 100, seed=7)
    assert set(outcomes) <= {Fraction(1), Fraction(2)}


def test_blocks_and_sharp():
    mv = qobs.make_power_set(["u", "v"])
    assert len(qobs.blocks(mv.base)) == 1
    sharp, excluded = qobs.sharp_elements(mv.base)
    assert len(sharp) == 4 and not excluded

    c11, c12, c21, c22 = qobs.rdp_refine(
        qobs.make_chain(5).base, 2, 1, 3, 0
    )
    assert (c11, c12, c21, c22) == (2, 0, 1, 0)


def test_povm_reconstruction():
    family = qobs.OperatorSpectralFamily.make(
        [(0.0, np.diag([0.7, 0.2]).astype(complex)), (1.0, np.eye(2, dtype=complex))]
    )
    povm = qobs.reconstruct_povm(family)
    assert povm.sum_residual <= 1e-9
    atoms = povm.atoms
    assert np.allclose(atoms[0][1], np.diag([0.7, 0.2]))
    assert np.allclose(atoms[1][1], np.diag([0.3, 0.8]))

    rho = qobs.DensityState.make(np.diag([1.0, 0.0]).astype(complex))
    stats = qobs.povm_statistics(povm, rho)
    assert stats.probabilities == pytest.approx([0.7, 0.3])
    assert stats.expectation == pytest.approx(0.3)

    phi = np.array([1.0, 0.0], dtype=complex)
    table = qobs.distribution_function(family, phi)
    assert [v for _, v in table] == pytest.approx([0.7, 1.0])


def test_document_loading():
    x = qobs.load_observable_document(os.path.join(CORPUS, "paper.obs"))
    assert len(x.atoms) == 2
    state = qobs.load_state_document(os.path.join(CORPUS, "chain5.qst"))
    assert qobs.expectation(state, x) == Fraction(9, 5)
    loaded = qobs.load_structure_document(os.path.join(CORPUS, "mo2.qsa"))
    assert loaded["kind"] == "omp"
    assert loaded["structure"].size == 6


def test_errors_surface_as_python_exceptions():
    chain = qobs.make_chain(5)
    with pytest.raises(qobs.QobsError):
        qobs.Observable.make(chain.base, [(Fraction(1), "1/5")])
    with pytest.raises(qobs.QobsError):
        qobs.make_chain(0)

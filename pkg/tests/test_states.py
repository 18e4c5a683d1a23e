"""Graph-state construction, generators, stabilizers, and reduced forms."""

from itertools import permutations, product

import numpy as np
import pytest

from quditgraph import (
    AdjacencyMatrix,
    PauliWord,
    StateVector,
    apply_local_fourier,
    apply_pauli,
    build_state,
    cluster_graph,
    dense_matrix,
    gamma_graph,
    generators,
    ghz_graph,
    iter_stabilizers,
    p_graph,
    path_graph,
    pauli_mul,
    psi_gamma,
    purity_profile,
    stabilizer,
    verify_eigen,
)
from quditgraph.pauli import omega_powers
from quditgraph.states import family_reduced_generators, family_reduced_state


def state_from_phase_fn(d, phase_fn):
    """Direct construction from an index -> phase-exponent function."""
    arr = np.zeros((d,) * 4, dtype=complex)
    for idx in product(range(d), repeat=4):
        arr[idx] = omega_powers(d)[phase_fn(*idx) % d] / d**2
    return StateVector(d, 4, arr.reshape(-1))


def test_adjacency_validation():
    with pytest.raises(ValueError):
        AdjacencyMatrix(3, ((0, 1, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)))
    with pytest.raises(ValueError):
        AdjacencyMatrix(3, ((1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)))
    with pytest.raises(ValueError):
        AdjacencyMatrix(3, tuple((0,) * 3 for _ in range(3)))
    with pytest.raises(ValueError):
        AdjacencyMatrix.from_edges(6, {(0, 1): 1})


def test_build_state_zero_index_amplitude():
    for d in (2, 3, 5):
        s = build_state(ghz_graph(d))
        amp = s.amps[0]
        assert abs(amp - 1.0 / d**2) < 1e-12 and amp.imag == pytest.approx(0.0)


def test_build_state_ghz_phases():
    # star graph carries omega^(i(j+k+l)) on |i,j,k,l>
    d = 3
    expected = state_from_phase_fn(d, lambda i, j, k, l: i * (j + k + l))
    np.testing.assert_allclose(build_state(ghz_graph(d)).amps, expected.amps, atol=1e-12)
    assert np.all(np.abs(np.abs(expected.amps) - 1 / 9) < 1e-12)


def test_build_state_cluster_phases():
    d = 3
    expected = state_from_phase_fn(d, lambda i, j, k, l: j * (i + k) + l * (k + i))
    np.testing.assert_allclose(build_state(cluster_graph(d)).amps, expected.amps, atol=1e-12)


def test_build_state_p_phases():
    d = 3
    expected = state_from_phase_fn(d, lambda i, j, k, l: j * (i - k) + l * (i + k))
    np.testing.assert_allclose(build_state(p_graph(d)).amps, expected.amps, atol=1e-12)


def word(d, x_powers, z_powers):
    return PauliWord.from_powers(d, x_powers, z_powers)


def test_generators_ghz():
    d = 3
    gens = generators(ghz_graph(d))
    assert gens.eigen_exps == (0, 0, 0, 0)
    assert gens.words == (
        word(d, [1, 0, 0, 0], [0, 1, 1, 1]),  # X Z Z Z
        word(d, [0, 1, 0, 0], [1, 0, 0, 0]),  # Z X I I
        word(d, [0, 0, 1, 0], [1, 0, 0, 0]),  # Z I X I
        word(d, [0, 0, 0, 1], [1, 0, 0, 0]),  # Z I I X
    )


def test_generators_p():
    d = 3
    gens = generators(p_graph(d))
    assert gens.words == (
        word(d, [1, 0, 0, 0], [0, 1, 0, 1]),       # X Z I Z
        word(d, [0, 1, 0, 0], [1, 0, d - 1, 0]),   # Z X Z^-1 I
        word(d, [0, 0, 1, 0], [0, d - 1, 0, 1]),   # I Z^-1 X Z
        word(d, [0, 0, 0, 1], [1, 0, 1, 0]),       # Z I Z X
    )


@pytest.mark.parametrize("d,gm", [(3, 2), (5, 3)])
def test_generators_gamma_family(d, gm):
    gens = generators(gamma_graph(gm, d))
    assert gens.words == (
        word(d, [1, 0, 0, 0], [0, 1, 0, gm]),  # X Z I Z^gamma
        word(d, [0, 1, 0, 0], [1, 0, 1, 0]),   # Z X Z I
        word(d, [0, 0, 1, 0], [0, 1, 0, 1]),   # I Z X Z
        word(d, [0, 0, 0, 1], [gm, 0, 1, 0]),  # Z^gamma I Z X
    )


def test_stabilizer_zero_powers_is_identity():
    assert stabilizer(cluster_graph(3), (0, 0, 0, 0)) == PauliWord.identity(3, 4)


def test_stabilizer_cluster_two_identity_factor_words():
    # the square graph hides stabilizers acting on only two sites
    d = 3
    g = cluster_graph(d)
    s1 = stabilizer(g, (1, 0, -1, 0))
    assert s1.x_powers == (1, 0, d - 1, 0) and s1.z_powers == (0, 0, 0, 0)
    s2 = stabilizer(g, (0, 1, 0, -1))
    assert s2.x_powers == (0, 1, 0, d - 1) and s2.z_powers == (0, 0, 0, 0)
    # in the Fourier frame of the reduced state the second becomes I Z^-1 I Z
    from quditgraph import fourier_conjugate

    conj = fourier_conjugate(s2, (1, 3))
    assert conj.x_powers == (0, 0, 0, 0) and conj.z_powers == (0, d - 1, 0, 1)


def test_stabilizer_equals_generator_product():
    rng = np.random.default_rng(5)
    for d in (3, 5):
        for g in (ghz_graph(d), p_graph(d), gamma_graph(2, d)):
            gens = generators(g)
            for _ in range(25):
                p = [int(v) for v in rng.integers(0, d, size=4)]
                prod_word = PauliWord.identity(d, 4)
                for w, k in zip(gens.words, p):
                    for _ in range(k):
                        prod_word = pauli_mul(prod_word, w)
                assert prod_word == stabilizer(g, p)


def test_stabilizer_power_map_is_homomorphism():
    rng = np.random.default_rng(6)
    for d in (3, 5):
        g = p_graph(d)
        for _ in range(40):
            p = rng.integers(0, d, size=4)
            q = rng.integers(0, d, size=4)
            combined = stabilizer(g, tuple((p + q) % d))
            assert combined == pauli_mul(stabilizer(g, tuple(p)), stabilizer(g, tuple(q)))


@pytest.mark.parametrize("d", [3, 5, 7])
def test_graph_states_stabilized(d):
    rng = np.random.default_rng(d)
    for g in (ghz_graph(d), cluster_graph(d), p_graph(d), gamma_graph(2, d)):
        s = build_state(g)
        for w in generators(g).words:
            assert verify_eigen(s, w) == 0
        for _ in range(50):
            p = tuple(int(v) for v in rng.integers(0, d, size=4))
            assert verify_eigen(s, stabilizer(g, p)) == 0


def test_generators_commute_and_are_independent():
    for d in (3, 5):
        for g in (ghz_graph(d), p_graph(d)):
            words = generators(g).words
            for a in words:
                for b in words:
                    assert pauli_mul(a, b) == pauli_mul(b, a)
            # x powers of S(p) equal p, so only p = 0 gives the identity
            for p, w in iter_stabilizers(g):
                if any(p):
                    assert not w.is_identity()


def test_verify_eigen_non_eigenstate():
    d = 3
    gp = family_reduced_state("G", d)
    z1 = PauliWord.single(d, 4, 0, z=1)
    assert verify_eigen(gp, z1) is None


def test_verify_eigen_identity_word():
    s = build_state(p_graph(3))
    assert verify_eigen(s, PauliWord.identity(3, 4)) == 0


def test_verify_eigen_nonzero_exponent():
    # omega^r scalar multiples are detected with the right exponent
    d = 3
    s = build_state(ghz_graph(d))
    w = stabilizer(ghz_graph(d), (1, 0, 0, 0))
    shifted = PauliWord(d, (w.phase + 2) % d, w.xz)
    assert verify_eigen(s, shifted) == 2


def test_apply_pauli_matches_dense(rng):
    d = 3
    from conftest import random_state_amps, random_word

    for _ in range(20):
        s = StateVector(d, 2, random_state_amps(rng, d**2))
        w = random_word(rng, d, 2)
        np.testing.assert_allclose(
            apply_pauli(s, w).amps, dense_matrix(w) @ s.amps, atol=1e-12
        )


def psi_state(d, label_fn):
    """(1/d) sum_{i,k} |label_fn(i,k)> built directly."""
    arr = np.zeros((d,) * 4, dtype=complex)
    for i in range(d):
        for k in range(d):
            arr[tuple(v % d for v in label_fn(i, k))] = 1.0 / d
    return StateVector(d, 4, arr.reshape(-1))


@pytest.mark.parametrize("d", [2, 3, 5, 7])
def test_psi_gamma_one_is_reduced_cluster(d):
    expected = psi_state(d, lambda i, k: (i, i + k, k, i + k))
    np.testing.assert_allclose(psi_gamma(1, d).amps, expected.amps, atol=1e-12)


@pytest.mark.parametrize("d", [3, 5, 7])
def test_psi_gamma_minus_one_is_reduced_p(d):
    expected = psi_state(d, lambda i, k: (i, i - k, k, i + k))
    np.testing.assert_allclose(psi_gamma(-1, d).amps, expected.amps, atol=1e-12)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_psi_gamma_zero_is_permuted_three_sided_form(d):
    # reduced open chain gives (1/d) sum |i, i+k, k, k>; swapping the pairs
    # (qudits 0,1) <-> (qudits 2,3) turns it into psi(0)
    reduced = apply_local_fourier(build_state(path_graph(d)), (1, 3))
    expected = psi_state(d, lambda i, k: (i, i + k, k, k))
    np.testing.assert_allclose(reduced.amps, expected.amps, atol=1e-12)
    np.testing.assert_allclose(
        expected.permute_qudits((2, 3, 0, 1)).amps, psi_gamma(0, d).amps, atol=1e-12
    )


def test_local_fourier_reduces_ghz():
    for d in (2, 3, 5):
        reduced = apply_local_fourier(build_state(ghz_graph(d)), (1, 2, 3))
        arr = np.zeros((d,) * 4, dtype=complex)
        for i in range(d):
            arr[i, i, i, i] = 1 / np.sqrt(d)
        expected = StateVector(d, 4, arr.reshape(-1))
        assert reduced.equals_up_to_phase(expected)


def test_local_fourier_empty_site_set_is_identity():
    s = build_state(p_graph(3))
    np.testing.assert_allclose(apply_local_fourier(s, ()).amps, s.amps, atol=1e-14)


def test_local_fourier_reduces_cluster_and_p():
    for d in (3, 5):
        assert apply_local_fourier(build_state(cluster_graph(d)), (1, 3)).equals_up_to_phase(
            psi_gamma(1, d)
        )
        assert apply_local_fourier(build_state(p_graph(d)), (1, 3)).equals_up_to_phase(
            psi_gamma(-1, d)
        )


def test_reduced_generators_match_fourier_frame():
    # reduced generator sets stabilize the reduced states with unit eigenvalue
    for d in (3, 5):
        for family in ("G", "C", "P"):
            state = family_reduced_state(family, d)
            for w in family_reduced_generators(family, d).words:
                assert verify_eigen(state, w) == 0


def test_reduced_generator_words_ghz():
    # X X X X, Z Z^-1 I I, Z I Z^-1 I, Z I I Z^-1
    d = 3
    words = family_reduced_generators("G", d).words
    assert words == (
        word(d, [1, 1, 1, 1], [0, 0, 0, 0]),
        word(d, [0, 0, 0, 0], [1, d - 1, 0, 0]),
        word(d, [0, 0, 0, 0], [1, 0, d - 1, 0]),
        word(d, [0, 0, 0, 0], [1, 0, 0, d - 1]),
    )


def test_reduced_generator_words_p():
    # X X I X, Z Z^-1 Z^-1 I, I X^-1 X X, Z I Z Z^-1
    d = 3
    words = family_reduced_generators("P", d).words
    assert words == (
        word(d, [1, 1, 0, 1], [0, 0, 0, 0]),
        word(d, [0, 0, 0, 0], [1, d - 1, d - 1, 0]),
        word(d, [0, d - 1, 1, 1], [0, 0, 0, 0]),
        word(d, [0, 0, 0, 0], [1, 0, 1, d - 1]),
    )


def test_cluster_equals_p_at_d2():
    # with only one nonzero weight the negated edge changes nothing
    np.testing.assert_allclose(
        build_state(cluster_graph(2)).amps, build_state(p_graph(2)).amps, atol=1e-14
    )


def test_ghz_reduced_permutation_invariant():
    d = 3
    gp = family_reduced_state("G", d)
    for axes in permutations(range(4)):
        assert gp.permute_qudits(axes).equals_up_to_phase(gp)


def test_p_reduced_profile_permutation_invariant():
    d = 3
    pp = family_reduced_state("P", d)
    base = sorted(purity_profile(pp).values.values())
    for axes in permutations(range(4)):
        vals = sorted(purity_profile(pp.permute_qudits(axes)).values.values())
        np.testing.assert_allclose(vals, base, atol=1e-9)


def test_graph_permutation_consistent_with_state_permutation(rng):
    d = 3
    for _ in range(10):
        entries = np.zeros((4, 4), dtype=int)
        for n in range(4):
            for m in range(n + 1, 4):
                entries[n, m] = entries[m, n] = int(rng.integers(0, d))
        g = AdjacencyMatrix.from_array(entries, d)
        axes = tuple(int(a) for a in rng.permutation(4))
        left = build_state(g.permuted(axes))
        right = build_state(g).permute_qudits(axes)
        np.testing.assert_allclose(left.amps, right.amps, atol=1e-12)


def test_state_vector_norm_enforced():
    with pytest.raises(ValueError):
        StateVector(3, 1, np.array([1.0, 1.0, 0.0]))

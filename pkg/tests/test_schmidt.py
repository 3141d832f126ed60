import numpy as np
import pytest

from triwit import (
    ALL_PERMUTATIONS,
    DimMismatch,
    NotAdmissible,
    SchmidtRank,
    TriDims,
    TriVector,
    ZeroVector,
    admissible,
    all_admissible,
    construct_state_with_sr,
    flip,
    multirank,
    product_vector,
    schmidt_rank,
    schmidt_rank_by_definition,
    sr_leq,
)

QUBITS = TriDims(2, 2, 2)


def _rand_vector(rng, dims):
    data = rng.standard_normal(dims.total) + 1j * rng.standard_normal(dims.total)
    return TriVector(dims, data)


def _basis(n, i):
    e = np.zeros(n, dtype=complex)
    e[i] = 1.0
    return e


def _diag_sum(n):
    data = np.zeros(n**3, dtype=complex)
    for i in range(n):
        data[(i * n + i) * n + i] = 1.0
    return TriVector(TriDims(n, n, n), data)


def test_schmidt_rank_product_vector():
    xi = product_vector(_basis(2, 0), _basis(2, 0), _basis(2, 0))
    assert schmidt_rank(xi) == SchmidtRank(1, 1, 1)


@pytest.mark.parametrize("n", [2, 3])
def test_schmidt_rank_diagonal_sum(n):
    assert schmidt_rank(_diag_sum(n)) == SchmidtRank(n, n, n)


def test_schmidt_rank_generated_223():
    xi = construct_state_with_sr((2, 2, 3), TriDims(2, 2, 3))
    assert schmidt_rank(xi) == SchmidtRank(2, 2, 3)
    assert schmidt_rank_by_definition(xi) == SchmidtRank(2, 2, 3)


def test_schmidt_rank_rejects_zero_vector():
    with pytest.raises(ZeroVector):
        schmidt_rank(TriVector(QUBITS, np.zeros(8)))


def test_by_definition_agrees_on_random_qubit_vectors():
    rng = np.random.default_rng(30)
    for _ in range(500):
        xi = _rand_vector(rng, QUBITS)
        assert schmidt_rank(xi) == schmidt_rank_by_definition(xi)


def test_by_definition_agrees_on_generator_outputs():
    for t in all_admissible(QUBITS):
        xi = construct_state_with_sr(t, QUBITS)
        assert schmidt_rank(xi) == schmidt_rank_by_definition(xi) == t


def test_one_component_rank_one_forces_equality():
    # e0 x (e0 x e0 + e1 x e1) has ranks (1, 2, 2)
    eta = np.zeros(4, dtype=complex)
    eta[0] = eta[3] = 1.0
    xi = TriVector(QUBITS, np.kron(_basis(2, 0), eta))
    assert schmidt_rank(xi) == SchmidtRank(1, 2, 2)
    assert schmidt_rank_by_definition(xi) == SchmidtRank(1, 2, 2)


def test_sr_leq_product_vector():
    rng = np.random.default_rng(31)
    u, v, w = rng.standard_normal(2), rng.standard_normal(2), rng.standard_normal(2)
    assert sr_leq(product_vector(u, v, w), (1, 1, 1))


def test_sr_leq_ghz():
    ghz = TriVector(QUBITS, _basis(8, 0) + _basis(8, 7))
    assert not sr_leq(ghz, (1, 2, 2))
    assert sr_leq(ghz, (2, 2, 2))


def test_admissible_examples():
    assert admissible((1, 2, 2), QUBITS)
    assert not admissible((1, 2, 3), TriDims(3, 3, 3))  # third component exceeds 1*2
    assert admissible((2, 2, 4), TriDims(2, 2, 4))  # boundary: 4 == 2*2


def test_all_admissible_counts():
    assert len(all_admissible(QUBITS)) == 5
    assert len(all_admissible(TriDims(3, 3, 3))) == 15
    assert len(all_admissible(TriDims(4, 4, 4))) == 37


def test_construct_trivial_target():
    xi = construct_state_with_sr((1, 1, 1), QUBITS)
    assert schmidt_rank(xi) == SchmidtRank(1, 1, 1)
    assert np.count_nonzero(xi.data) == 1


def test_construct_full_qubit_target():
    xi = construct_state_with_sr((2, 2, 2), QUBITS)
    assert schmidt_rank(xi) == SchmidtRank(2, 2, 2)


def test_construct_exhaustive_333():
    dims = TriDims(3, 3, 3)
    for t in all_admissible(dims):
        xi = construct_state_with_sr(t, dims)
        assert schmidt_rank(xi) == t


def test_construct_rejects_inadmissible():
    with pytest.raises(NotAdmissible):
        construct_state_with_sr((1, 2, 3), TriDims(3, 3, 3))


def test_construct_in_larger_dims():
    dims = TriDims(4, 3, 5)
    for t in all_admissible(TriDims(2, 2, 4)):
        xi = construct_state_with_sr(t, dims)
        assert xi.dims == dims
        assert schmidt_rank(xi) == t


def test_multirank_bipartite():
    lam = np.array([0.6, 0.4])
    xi = np.zeros(4, dtype=complex)
    xi[0], xi[3] = np.sqrt(lam)
    assert multirank(xi, (2, 2)) == [2, 2]
    assert multirank(np.kron(_basis(2, 0), _basis(2, 1)), (2, 2)) == [1, 1]


def test_multirank_three_party_consistency():
    rng = np.random.default_rng(32)
    for _ in range(50):
        xi = _rand_vector(rng, TriDims(2, 3, 2))
        assert tuple(multirank(xi.data, (2, 3, 2))) == tuple(schmidt_rank(xi))


def test_multirank_four_party_ghz():
    xi = np.zeros(16, dtype=complex)
    xi[0] = xi[15] = 1.0
    assert multirank(xi, (2, 2, 2, 2)) == [2, 2, 2, 2]


def test_multirank_errors():
    with pytest.raises(ZeroVector):
        multirank(np.zeros(8), (2, 2, 2))
    with pytest.raises(DimMismatch):
        multirank(np.zeros(9), (2, 2, 2))


def test_permutation_covariance():
    rng = np.random.default_rng(33)
    dims = TriDims(2, 3, 4)
    for _ in range(40):
        xi = _rand_vector(rng, dims)
        base = tuple(schmidt_rank(xi))
        for sigma in ALL_PERMUTATIONS:
            assert tuple(schmidt_rank(flip(xi, sigma))) == sigma.apply(base)


def test_rank_triplet_always_admissible():
    rng = np.random.default_rng(34)
    for dims in (QUBITS, TriDims(2, 3, 4), TriDims(4, 4, 4)):
        for _ in range(40):
            assert admissible(schmidt_rank(_rand_vector(rng, dims)), dims)
    # low-rank inputs as well, via the generator in bigger ambient dims
    for t in all_admissible(TriDims(2, 2, 3)):
        xi = construct_state_with_sr(t, TriDims(3, 4, 4))
        assert admissible(schmidt_rank(xi), TriDims(3, 4, 4))


def test_scaling_invariance():
    rng = np.random.default_rng(35)
    xi = _rand_vector(rng, TriDims(3, 2, 3))
    base = schmidt_rank(xi)
    for lam in (2.0, -0.5, 1e-4 + 3j):
        assert schmidt_rank(TriVector(xi.dims, lam * xi.data)) == base

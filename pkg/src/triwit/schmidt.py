"""Schmidt-rank triplets, the admissible region, and a constructive generator.

The rank triplet of a tri-partite vector is computed two ways: from the
numerical ranks of the three mode unfoldings (the fast route used
everywhere), and literally from the nested-map definition (a slower
independent oracle, kept so tests can guard the equivalence instead of
assuming it).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimMismatch, NotAdmissible, ZeroVector
from .linalg import DEFAULT_TOL, Tolerance, svd_rank
from .tensor import Permutation3, TriDims, TriVector, multi_unfold, unfold


class SchmidtRank(NamedTuple):
    alpha: int
    beta: int
    gamma: int


class PosTriple(NamedTuple):
    """A positivity-class / rank-bound triplet, componentwise partial order."""

    p: int
    q: int
    r: int


def triple_leq(s, t) -> bool:
    """Componentwise (product) partial order on triplets."""
    return all(int(x) <= int(y) for x, y in zip(tuple(s), tuple(t)))


def _require_nonzero(xi: TriVector, tol: Tolerance) -> None:
    if xi.norm() <= tol.psd_abs:
        raise ZeroVector("Schmidt rank is undefined for the zero vector")


def schmidt_rank(xi: TriVector, tol: Tolerance = DEFAULT_TOL) -> SchmidtRank:
    """Rank triplet of a nonzero tri-partite vector via mode-unfolding ranks."""
    _require_nonzero(xi, tol)
    return SchmidtRank(*(svd_rank(unfold(xi, mode), tol) for mode in (0, 1, 2)))


def schmidt_rank_by_definition(xi: TriVector, tol: Tolerance = DEFAULT_TOL) -> SchmidtRank:
    """Rank triplet computed literally from the nested-map definition.

    The vector is identified with a linear map sending the first party to
    c x b matrices.  The first component is the dimension of the span of
    those matrices over a basis of inputs, the second the dimension of the
    join of their supports, the third the join of their ranges.  Slower
    than :func:`schmidt_rank` but structurally independent; the two must
    agree on every input.
    """
    _require_nonzero(xi, tol)
    a = xi.dims.a
    t = xi.as_tensor()
    # value of the map on the i-th basis vector of the first party, as a c x b matrix
    maps = [t[i].T for i in range(a)]

    vecs = np.array([m.ravel() for m in maps])
    gram = vecs @ vecs.conj().T
    gw = np.linalg.eigvalsh(gram)
    top = gw[-1]
    # Gram eigenvalues square the singular values, so the rank cutoff squares
    # too; it must stay above the eigensolver's own noise floor of order
    # eps * top, which squared cutoffs like 1e-18 would otherwise undercut
    floor = max(tol.rank_rel**2, 64.0 * a * np.finfo(float).eps) * top
    alpha = int(np.count_nonzero(gw > floor)) if top > 0 else 0

    svds = [np.linalg.svd(m) for m in maps]
    sig_ref = max(s[0] if s.size else 0.0 for _, s, _ in svds)
    ranges, supports = [], []
    for u, s, vh in svds:
        r = int(np.count_nonzero(s > tol.rank_rel * sig_ref))
        ranges.append(u[:, :r])
        supports.append(vh[:r].conj().T)
    beta = svd_rank(np.hstack(supports), tol)
    gamma = svd_rank(np.hstack(ranges), tol)
    return SchmidtRank(alpha, beta, gamma)


def sr_leq(xi: TriVector, t, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True when the rank triplet of ``xi`` is componentwise at most ``t``."""
    if xi.norm() <= tol.psd_abs:
        return True  # the zero vector sits in every cone
    return triple_leq(schmidt_rank(xi, tol), t)


def admissible(t, dims: TriDims) -> bool:
    """Membership in the admissible region of rank triplets.

    Requires 1 <= alpha <= a, 1 <= beta <= b, 1 <= gamma <= c and each
    component at most the product of the other two.
    """
    al, be, ga = (int(x) for x in tuple(t))
    a, b, c = dims.as_tuple()
    return (
        1 <= al <= a
        and 1 <= be <= b
        and 1 <= ga <= c
        and al <= be * ga
        and be <= ga * al
        and ga <= al * be
    )


def all_admissible(dims: TriDims) -> list[SchmidtRank]:
    """All admissible rank triplets for the given dimensions, lexicographic."""
    a, b, c = dims.as_tuple()
    return [
        SchmidtRank(al, be, ga)
        for al in range(1, a + 1)
        for be in range(1, b + 1)
        for ga in range(1, c + 1)
        if admissible((al, be, ga), dims)
    ]


def _construct_ascending(al: int, be: int, ga: int, dims: tuple[int, int, int]) -> np.ndarray:
    """Build a tensor with rank triplet (al, be, ga), assuming al <= be <= ga.

    Splits the third rank as ga = be * k + r.  The first k basis vectors of
    the first party each carry a full block of be products hitting fresh
    third-party vectors, one more carries the remaining r products, and the
    leftover first-party vectors are attached to rank-one products whose
    ranges sit inside the first block.  The division is taken with
    0 < r <= be (rather than 0 <= r < be) so that the partial block is
    never empty and every first-party vector contributes.
    """
    a, b, c = dims
    k, r = divmod(ga, be)
    if r == 0:
        k, r = k - 1, be
    t = np.zeros((a, b, c), dtype=complex)
    for i in range(k):
        for j in range(be):
            t[i, j, i * be + j] = 1.0
    for j in range(r):
        t[k, j, k * be + j] = 1.0
    for i in range(1, al - k):
        t[k + i, i - 1, i - 1] = 1.0
    return t


def construct_state_with_sr(t, dims: TriDims, tol: Tolerance = DEFAULT_TOL) -> TriVector:
    """Return a vector whose rank triplet equals ``t`` exactly.

    The target is sorted ascending, the three-block construction is applied
    with standard basis vectors in the correspondingly permuted dimensions,
    and the result is flipped back.  Raises NotAdmissible outside the
    admissible region.
    """
    t = tuple(int(x) for x in tuple(t))
    if not admissible(t, dims):
        raise NotAdmissible(f"rank triplet {t} is not admissible in dims {dims.as_tuple()}")
    order = Permutation3(tuple(int(i) for i in np.argsort(t, kind="stable")))
    ts = order.apply(t)
    ds = order.apply(dims.as_tuple())
    tensor = _construct_ascending(*ts, ds)
    sorted_vec = TriVector(TriDims(*ds), tensor.ravel())
    from .tensor import flip  # local import keeps module load order simple

    return flip(sorted_vec, order.inverse())


def multirank(xi, dims, tol: Tolerance = DEFAULT_TOL) -> list[int]:
    """Mode-k unfolding ranks of an n-partite vector, one per subsystem.

    Agrees with :func:`schmidt_rank` when n == 3.  Raises ZeroVector for a
    numerically zero input and DimMismatch when the length does not factor.
    """
    dims = tuple(int(d) for d in dims)
    arr = np.asarray(xi, dtype=complex).reshape(-1)
    if arr.size != int(np.prod(dims)):
        raise DimMismatch(f"vector length {arr.size} does not match dims {dims}")
    if np.linalg.norm(arr) <= tol.psd_abs:
        raise ZeroVector("multirank is undefined for the zero vector")
    return [svd_rank(multi_unfold(arr, dims, mode), tol) for mode in range(len(dims))]

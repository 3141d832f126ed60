"""Rank-constrained state sampling and see-saw block-positivity search.

The see-saw minimizes <xi|W|xi> over unit vectors whose rank triplet is
bounded by a target.  The vector is parameterized by three factor blocks
and a core; with all other blocks frozen, the vector is linear in the free
block, so each update is an exact generalized Hermitian eigenproblem and
the objective never increases.  A negative enough final value yields a
violation certificate; anything else is reported as "no violation found",
which is deliberately not a positivity proof.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DegeneratePencil, DimMismatch
from .linalg import DEFAULT_TOL, Tolerance, hermitize, min_gen_eig
from .schmidt import PosTriple, sr_leq, triple_leq
from .tensor import TriDims, TriOperator, TriVector


@dataclass(frozen=True)
class SeesawConfig:
    restarts: int = 20
    max_sweeps: int = 200
    convergence_eps: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1 or self.max_sweeps < 1:
            raise ValueError("restarts and max_sweeps must be >= 1")
        if not self.convergence_eps > 0:
            raise ValueError("convergence_eps must be positive")


@dataclass(frozen=True)
class ViolationCertificate:
    """A unit vector in the target cone with a negative quadratic form value."""

    xi: TriVector
    value: float
    target: PosTriple


@dataclass(frozen=True)
class NoViolation:
    """Best (non-violating) value found; not a proof of block positivity."""

    best_value: float
    best_xi: TriVector


@dataclass(frozen=True)
class SeesawRun:
    """Outcome of a single restart, with the per-update objective trace."""

    value: float
    xi: np.ndarray
    objective_trace: list[float]


def _draw_complex(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _orthonormal_columns(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    q, _ = np.linalg.qr(_draw_complex(rng, (n, k)))
    return q[:, :k]


def sample_sr_vector(
    dims: TriDims, target, rng: np.random.Generator, tol: Tolerance = DEFAULT_TOL
) -> TriVector:
    """Draw a random unit vector with rank triplet at most ``target``.

    Random orthonormal factor sets of the target sizes are combined through
    a random dense core, which bounds every unfolding rank by construction;
    generically the bound is attained.
    """
    p, q, r = (int(x) for x in tuple(target))
    a, b, c = dims.as_tuple()
    if not triple_leq((p, q, r), (a, b, c)) or min(p, q, r) < 1:
        raise DimMismatch(f"target {target} does not fit in dims {dims.as_tuple()}")
    u = _orthonormal_columns(rng, a, p)
    v = _orthonormal_columns(rng, b, q)
    w = _orthonormal_columns(rng, c, r)
    core = _draw_complex(rng, (p, q, r))
    data = np.einsum("xi,yj,zk,ijk->xyz", u, v, w, core).ravel()
    return TriVector(dims, data / np.linalg.norm(data))


def sample_state(
    dims: TriDims, target, n_terms: int, rng: np.random.Generator, tol: Tolerance = DEFAULT_TOL
) -> TriOperator:
    """Unit-trace mixture of projectors onto sampled rank-bounded vectors."""
    if n_terms < 1:
        raise ValueError("n_terms must be >= 1")
    mat = np.zeros((dims.total, dims.total), dtype=complex)
    for _ in range(n_terms):
        xi = sample_sr_vector(dims, target, rng, tol).data
        mat += np.outer(xi, xi.conj())
    return TriOperator(dims, mat / np.trace(mat).real)


def _assemble(u, v, w, core) -> np.ndarray:
    return np.einsum("xi,yj,zk,ijk->xyz", u, v, w, core).ravel()


def _block_jacobians(u, v, w, core):
    """Linear maps from each vectorized block to the assembled vector."""
    a, p = u.shape
    b, q = v.shape
    c, r = w.shape
    ju = np.einsum(
        "xw,yzi->xyzwi", np.eye(a), np.einsum("ijk,yj,zk->yzi", core, v, w)
    ).reshape(a * b * c, a * p)
    jv = np.einsum(
        "yw,xzj->xyzwj", np.eye(b), np.einsum("xi,ijk,zk->xzj", u, core, w)
    ).reshape(a * b * c, b * q)
    jw = np.einsum(
        "zw,xyk->xyzwk", np.eye(c), np.einsum("xi,ijk,yj->xyk", u, core, v)
    ).reshape(a * b * c, c * r)
    jc = np.einsum("xi,yj,zk->xyzijk", u, v, w).reshape(a * b * c, p * q * r)
    return ju, jv, jw, jc


def seesaw_minimize(
    wmat: np.ndarray,
    dims: TriDims,
    target,
    rng: np.random.Generator,
    max_sweeps: int = 200,
    convergence_eps: float = 1e-10,
    tol: Tolerance = DEFAULT_TOL,
) -> SeesawRun:
    """One see-saw descent from a random start; ``wmat`` must already be Hermitian.

    Sweeps cycle through the three factor blocks and the core.  Each update
    solves the induced generalized eigenproblem exactly and is kept only if
    the directly evaluated quotient does not increase, so the recorded
    objective is non-increasing by construction; a degenerate pencil
    re-randomizes the offending block instead of failing.
    """
    a, b, c = dims.as_tuple()
    p, q, r = (int(x) for x in tuple(target))
    blocks = {
        "u": _draw_complex(rng, (a, p)),
        "v": _draw_complex(rng, (b, q)),
        "w": _draw_complex(rng, (c, r)),
        "core": _draw_complex(rng, (p, q, r)),
    }

    def quotient() -> float:
        xi = _assemble(blocks["u"], blocks["v"], blocks["w"], blocks["core"])
        return float((xi.conj() @ wmat @ xi).real / (xi.conj() @ xi).real)

    trace: list[float] = []
    value = quotient()
    for _ in range(max_sweeps):
        sweep_start = value
        for name in ("u", "v", "w", "core"):
            ju, jv, jw, jc = _block_jacobians(
                blocks["u"], blocks["v"], blocks["w"], blocks["core"]
            )
            jac = {"u": ju, "v": jv, "w": jw, "core": jc}[name]
            big_a = jac.conj().T @ wmat @ jac
            big_b = jac.conj().T @ jac
            try:
                _, z = min_gen_eig(big_a, big_b, tol)
            except DegeneratePencil:
                blocks[name] = _draw_complex(rng, blocks[name].shape)
                continue
            new = z.reshape(blocks[name].shape)
            # accept only non-increasing steps: the exact block minimum never
            # increases the quotient, but the eigenvalue floor inside
            # min_gen_eig can clip near-null directions and jitter the value
            previous = blocks[name]
            blocks[name] = new / np.linalg.norm(new)
            candidate = quotient()
            if candidate <= value:
                value = candidate
            else:
                blocks[name] = previous
            trace.append(value)
        if sweep_start - value < convergence_eps:
            break
    xi = _assemble(blocks["u"], blocks["v"], blocks["w"], blocks["core"])
    xi = xi / np.linalg.norm(xi)
    return SeesawRun(value=value, xi=xi, objective_trace=trace)


def violation_search(
    w: TriOperator,
    target,
    cfg: SeesawConfig = SeesawConfig(),
    tol: Tolerance = DEFAULT_TOL,
):
    """Search for a rank-bounded unit vector with <xi|W|xi> < 0.

    Conjugation preserves rank triplets, so a certificate also exhibits a
    state in the corresponding Schmidt-number cone whose duality pairing
    against W is negative.  Restart seeds derive from ``cfg.seed`` plus the
    restart index, so runs are reproducible and restarts are independent.
    Returns a validated ViolationCertificate, or NoViolation with the best
    value found.
    """
    target = PosTriple(*(int(x) for x in tuple(target)))
    wmat = hermitize(w.mat, tol)
    scale = np.linalg.norm(wmat)
    best: SeesawRun | None = None
    for restart in range(cfg.restarts):
        rng = np.random.default_rng(cfg.seed + restart)
        run = seesaw_minimize(
            wmat, w.dims, target, rng, cfg.max_sweeps, cfg.convergence_eps, tol
        )
        if best is None or run.value < best.value:
            best = run
    xi = TriVector(w.dims, best.xi)
    value = float((best.xi.conj() @ wmat @ best.xi).real)
    if value < -tol.ineq_abs * scale:
        if not sr_leq(xi, target, tol):
            raise ConsistencyError("candidate violates its own rank-triplet bound")
        if abs(xi.norm() - 1.0) > 1e-9:
            raise ConsistencyError("candidate is not unit norm")
        return ViolationCertificate(xi=xi, value=value, target=target)
    return NoViolation(best_value=value, best_xi=xi)

"""The two-qubit anti-diagonal witness family and its positivity classes.

Family members are 8 x 8 Hermitian Choi matrices with diagonal
(s1, s2, s3, s4, t4, t3, t2, t1) and anti-diagonal
(u1, u2, u3, u4, conj u4, conj u3, conj u2, conj u1) in the flat
lexicographic qubit basis.  For this family every positivity class in the
admissible region for qubits has an exact closed-form criterion except
(1, 1, 1), which is certified by sufficient conditions or refuted by a
grid-plus-descent search over a complex parameter.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .choi import BiLinearMap, from_choi, pair
from .errors import ConsistencyError, NonPositive
from .linalg import DEFAULT_TOL, Tolerance
from .tensor import TriDims, TriOperator

QUBIT_DIMS = TriDims(2, 2, 2)

# index pairs (0-based) whose inequalities decide each mixed class
PAIR_CLASSES = {
    (1, 2, 2): ((0, 3), (1, 2)),
    (2, 1, 2): ((0, 2), (1, 3)),
    (2, 2, 1): ((0, 1), (2, 3)),
}
ALL_CLASSES = ((2, 2, 2), (1, 2, 2), (2, 1, 2), (2, 2, 1), (1, 1, 1))


@dataclass(frozen=True)
class QubitWitnessParams:
    """The 12 parameters of the family: s, t nonnegative, u complex."""

    s: tuple[float, float, float, float]
    t: tuple[float, float, float, float]
    u: tuple[complex, complex, complex, complex]

    def __post_init__(self):
        s = tuple(float(x) for x in self.s)
        t = tuple(float(x) for x in self.t)
        u = tuple(complex(x) for x in self.u)
        if len(s) != 4 or len(t) != 4 or len(u) != 4:
            raise ValueError("s, t and u must each have 4 entries")
        if min(s) < 0 or min(t) < 0:
            raise ValueError("s and t must be entrywise nonnegative")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "u", u)

    def root_st(self) -> tuple[float, float, float, float]:
        return tuple(math.sqrt(si * ti) for si, ti in zip(self.s, self.t))

    def abs_u(self) -> tuple[float, float, float, float]:
        return tuple(abs(ui) for ui in self.u)


class Verdict(enum.Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    NUMERICALLY_SUPPORTED = "numerically_supported"


@dataclass(frozen=True)
class ClassVerdict:
    verdict: Verdict
    evidence: str
    alpha: complex | None = None  # violating parameter for a refuted (1,1,1)


@dataclass(frozen=True)
class PositivityReport:
    """Per-class verdicts plus the all-pairs bi-separability-witness flag."""

    classes: dict[tuple[int, int, int], ClassVerdict] = field(default_factory=dict)
    biseparability_witness: bool = False

    def verdict(self, cls) -> Verdict:
        return self.classes[tuple(cls)].verdict

    def certified(self, cls) -> bool:
        return self.verdict(cls) is Verdict.CERTIFIED


@dataclass(frozen=True)
class AlphaGrid:
    """Polar sampling grid for the (1,1,1) refutation search.

    Radii are log-spaced so both small and large parameters are covered;
    the most promising grid points get a local derivative-free polish.
    """

    radii: int = 64
    angles: int = 64
    radius_min: float = 1e-3
    radius_max: float = 1e3
    refine: int = 4

    def __post_init__(self):
        if self.radii < 1 or self.angles < 1:
            raise ValueError("grid counts must be >= 1")


def family_choi(params: QubitWitnessParams) -> BiLinearMap:
    """Build the 8 x 8 family Choi matrix."""
    s, t, u = params.s, params.t, params.u
    m = np.zeros((8, 8), dtype=complex)
    diag = (s[0], s[1], s[2], s[3], t[3], t[2], t[1], t[0])
    for i, d in enumerate(diag):
        m[i, i] = d
    for i in range(4):
        m[i, 7 - i] = u[i]
        m[7 - i, i] = np.conj(u[i])
    return from_choi(m, QUBIT_DIMS)


def check_222(params: QubitWitnessParams, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Exact criterion for the top class: sqrt(s_i t_i) >= |u_i| for each i."""
    return all(rst >= au - tol.ineq_abs for rst, au in zip(params.root_st(), params.abs_u()))


def _pair_ineq(params: QubitWitnessParams, i: int, j: int, tol: Tolerance) -> bool:
    rst, au = params.root_st(), params.abs_u()
    return rst[i] + rst[j] >= au[i] + au[j] - tol.ineq_abs


def check_pair_class(params: QubitWitnessParams, cls, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Exact criterion for the three mixed classes, two index pairs each."""
    cls = tuple(cls)
    if cls not in PAIR_CLASSES:
        raise ValueError(f"not a pair class: {cls}")
    return all(_pair_ineq(params, i, j, tol) for i, j in PAIR_CLASSES[cls])


def alpha_slack(params: QubitWitnessParams, alpha) -> np.ndarray:
    """Slack of the (1,1,1) inequality at the complex parameter(s) ``alpha``.

    Nonnegative for every alpha exactly when the map is in the bottom
    class.  Vectorized over numpy arrays of alphas.
    """
    alpha = np.asarray(alpha, dtype=complex)
    s, t, u = params.s, params.t, params.u
    m = np.abs(alpha) ** 2
    lhs = np.sqrt((s[0] + t[3] * m) * (s[3] + t[0] * m)) + np.sqrt(
        (s[1] + t[2] * m) * (s[2] + t[1] * m)
    )
    rhs = np.abs(u[0] * alpha.conj() + np.conj(u[3]) * alpha) + np.abs(
        u[1] * alpha.conj() + np.conj(u[2]) * alpha
    )
    return lhs - rhs


def check_111(
    params: QubitWitnessParams,
    grid: AlphaGrid = AlphaGrid(),
    tol: Tolerance = DEFAULT_TOL,
) -> ClassVerdict:
    """One-sided test of the bottom class.

    Certified when the summed closed-form condition holds, or when any
    mixed class holds (the class cones shrink as the triplets grow, so a
    bigger class implies the bottom one).  Refuted with a witnessing alpha
    when the inequality fails beyond tolerance somewhere on the refined
    grid.  Otherwise the verdict is NumericallySupported, which is
    explicitly not a proof.
    """
    eps = tol.ineq_abs
    if sum(params.root_st()) >= sum(params.abs_u()) - eps:
        return ClassVerdict(Verdict.CERTIFIED, "sum criterion: sum sqrt(s_i t_i) >= sum |u_i|")
    for cls in PAIR_CLASSES:
        if check_pair_class(params, cls, tol):
            return ClassVerdict(Verdict.CERTIFIED, f"dominated by certified class {cls}")

    radii = np.geomspace(grid.radius_min, grid.radius_max, grid.radii)
    angles = np.linspace(0.0, 2.0 * np.pi, grid.angles, endpoint=False)
    alphas = radii[:, None] * np.exp(1j * angles[None, :])
    slack = alpha_slack(params, alphas)

    # keep the polish inside an extended grid range so radii cannot overflow
    log_lo = math.log(grid.radius_min) - 3.0
    log_hi = math.log(grid.radius_max) + 3.0

    def refined(alpha0: complex) -> complex:
        def objective(x):
            radius = math.exp(min(max(x[0], log_lo), log_hi))
            return float(alpha_slack(params, radius * np.exp(1j * x[1])))

        x0 = np.array([math.log(abs(alpha0)), np.angle(alpha0)])
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"maxiter": 400, "xatol": 1e-12, "fatol": 1e-14},
        )
        radius = math.exp(min(max(res.x[0], log_lo), log_hi))
        return radius * np.exp(1j * res.x[1])

    flat = np.argsort(slack, axis=None)[: grid.refine]
    best_alpha, best_slack = None, np.inf
    for idx in flat:
        cand = refined(alphas.ravel()[idx])
        val = float(alpha_slack(params, cand))
        if val < best_slack:
            best_alpha, best_slack = cand, val
    if best_slack < -eps:
        return ClassVerdict(
            Verdict.REFUTED,
            f"inequality fails by {-best_slack:.3e} at alpha = {best_alpha:.6g}",
            alpha=complex(best_alpha),
        )
    return ClassVerdict(
        Verdict.NUMERICALLY_SUPPORTED,
        f"no violating alpha found on a {grid.radii} x {grid.angles} grid with local descent",
    )


def classify(
    params: QubitWitnessParams,
    tol: Tolerance = DEFAULT_TOL,
    grid: AlphaGrid = AlphaGrid(),
) -> PositivityReport:
    """Verdicts for all five classes plus the bi-separability-witness flag.

    The exact criteria are chained through the class order (a certified
    bigger class certifies every smaller one) so the report is monotone by
    construction even at tolerance boundaries.
    """
    rst, au = params.root_st(), params.abs_u()
    classes: dict[tuple[int, int, int], ClassVerdict] = {}

    top = check_222(params, tol)
    if top:
        margin = min(r - a for r, a in zip(rst, au))
        classes[(2, 2, 2)] = ClassVerdict(
            Verdict.CERTIFIED, f"sqrt(s_i t_i) >= |u_i| for all i (min margin {margin:.3e})"
        )
    else:
        bad = min(range(4), key=lambda i: rst[i] - au[i])
        classes[(2, 2, 2)] = ClassVerdict(
            Verdict.REFUTED, f"sqrt(s_{bad + 1} t_{bad + 1}) = {rst[bad]:.6g} < |u_{bad + 1}| = {au[bad]:.6g}"
        )

    for cls, pairs in PAIR_CLASSES.items():
        ok = check_pair_class(params, cls, tol) or top
        if ok:
            classes[cls] = ClassVerdict(Verdict.CERTIFIED, f"pair inequalities {pairs} hold")
        else:
            i, j = next(p for p in pairs if not _pair_ineq(params, *p, tol))
            classes[cls] = ClassVerdict(
                Verdict.REFUTED,
                f"pair ({i + 1},{j + 1}): {rst[i]:.6g} + {rst[j]:.6g} < {au[i]:.6g} + {au[j]:.6g}",
            )

    classes[(1, 1, 1)] = check_111(params, grid, tol)

    all_pairs = all(
        _pair_ineq(params, i, j, tol) for i in range(4) for j in range(i + 1, 4)
    )
    return PositivityReport(classes=classes, biseparability_witness=all_pairs)


def genuine_witness(s: float) -> QubitWitnessParams:
    """Family parameters of the genuine-entanglement witness with scale s > 0.

    The Choi matrix has diagonal (0, s, s, s, t, t, t, 0) with t = 1/s and
    -1 in the two corners; all six pair inequalities hold, so a negative
    pairing against a state certifies genuine entanglement.
    """
    s = float(s)
    if s <= 0:
        raise NonPositive(f"scale must be > 0, got {s}")
    t = 1.0 / s
    return QubitWitnessParams(s=(0.0, s, s, s), t=(0.0, t, t, t), u=(-1.0, 0.0, 0.0, 0.0))


def ghz_value(s: float, lambdas, theta: float) -> float:
    """Pairing of a GHZ-type pure state against the genuine witness.

    The state is lam0|000> + lam1 e^{i theta}|100> + lam2|101> + lam3|110>
    + lam4|111> with nonnegative coefficients.  The pairing is evaluated
    through the Choi machinery and cross-checked against the closed form
    t*(lam1^2 + lam2^2 + lam3^2) - 2*lam0*lam4 within 1e-10.
    """
    lam = tuple(float(x) for x in lambdas)
    if len(lam) != 5:
        raise ValueError("expected 5 coefficients")
    if min(lam) < 0:
        raise ValueError("coefficients must be nonnegative")
    psi = np.zeros(8, dtype=complex)
    psi[0] = lam[0]
    psi[4] = lam[1] * np.exp(1j * theta)
    psi[5] = lam[2]
    psi[6] = lam[3]
    psi[7] = lam[4]
    rho = TriOperator(QUBIT_DIMS, np.outer(psi, psi.conj()))
    value = pair(rho, family_choi(genuine_witness(s)))
    closed = (1.0 / s) * (lam[1] ** 2 + lam[2] ** 2 + lam[3] ** 2) - 2.0 * lam[0] * lam[4]
    if abs(value - closed) > 1e-10:
        raise ConsistencyError(
            f"pairing {value} disagrees with closed form {closed} beyond 1e-10"
        )
    return float(value.real)

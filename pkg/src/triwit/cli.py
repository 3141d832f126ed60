"""Batch command-line front end with a stable JSON interchange format.

Complex numbers serialize as [re, im] pairs, row-major, never as strings.
Vectors are {"dims": [a, b, c], "data": [[re, im], ...]}; operators add
"rows" and "cols".  Reports are deterministic for fixed inputs and seed.

Exit codes: 0 success (including "no violation found"), 2 input error,
3 contract violation (non-Hermitian input where Hermitian is required).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

import numpy as np

from . import __version__
from .choi import BiLinearMap, pair
from .errors import NotHermitian, TriwitError
from .linalg import Tolerance
from .schmidt import admissible, schmidt_rank
from .search import NoViolation, SeesawConfig, violation_search
from .tensor import TriDims, TriOperator, TriVector, unfold
from .witness import AlphaGrid, QubitWitnessParams, classify, family_choi


# ---------------------------------------------------------------------------
# JSON interchange helpers

def _complex_pairs(values) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex).ravel()]


def _from_pairs(pairs) -> np.ndarray:
    return np.array([complex(re, im) for re, im in pairs], dtype=complex)


def vector_to_json(v: TriVector) -> dict:
    return {"dims": list(v.dims.as_tuple()), "data": _complex_pairs(v.data)}


def operator_to_json(op: TriOperator) -> dict:
    n = op.dims.total
    return {
        "dims": list(op.dims.as_tuple()),
        "rows": n,
        "cols": n,
        "data": _complex_pairs(op.mat),
    }


def _resolve_dims(doc: dict, flag) -> TriDims:
    if flag is not None:
        return TriDims(*flag)
    if "dims" in doc:
        return TriDims(*(int(d) for d in doc["dims"]))
    raise TriwitError("no dimensions: provide --dims or a 'dims' field in the file")


def read_vector(path: str, dims_flag=None) -> TriVector:
    doc = _load_json(path)
    dims = _resolve_dims(doc, dims_flag)
    return TriVector(dims, _from_pairs(doc["data"]))


def read_operator(path: str, dims_flag=None) -> TriOperator:
    doc = _load_json(path)
    dims = _resolve_dims(doc, dims_flag)
    n = dims.total
    data = _from_pairs(doc["data"])
    if "rows" in doc or data.size == n * n:
        rows = int(doc.get("rows", n))
        cols = int(doc.get("cols", n))
        if (rows, cols) != (n, n) or data.size != n * n:
            raise TriwitError(f"operator shape {rows}x{cols} does not match dims {dims.as_tuple()}")
        return TriOperator(dims, data.reshape(n, n))
    if data.size == n:  # a vector file: promote to the pure-state projector
        return TriOperator(dims, np.outer(data, data.conj()))
    raise TriwitError(f"file holds {data.size} entries, expected {n} or {n * n}")


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise TriwitError(f"cannot read {path}: {exc}") from exc


def _digest(payload) -> str:
    if isinstance(payload, (bytes, bytearray)):
        raw = bytes(payload)
    else:
        raw = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(raw).hexdigest()


def _file_digest(path: str) -> str:
    with open(path, "rb") as fh:
        return _digest(fh.read())


# ---------------------------------------------------------------------------
# flag parsing

def _parse_ints(text: str, n: int, what: str) -> tuple[int, ...]:
    parts = text.split(",")
    if len(parts) != n:
        raise TriwitError(f"{what}: expected {n} comma-separated integers, got {text!r}")
    return tuple(int(p) for p in parts)


def _parse_floats(text: str, n: int, what: str) -> tuple[float, ...]:
    parts = text.split(",")
    if len(parts) != n:
        raise TriwitError(f"{what}: expected {n} comma-separated numbers, got {text!r}")
    return tuple(float(p) for p in parts)


def _parse_complexes(text: str, n: int, what: str) -> tuple[complex, ...]:
    parts = text.split(",")
    if len(parts) != n:
        raise TriwitError(f"{what}: expected {n} comma-separated re:im values, got {text!r}")
    out = []
    for p in parts:
        re, _, im = p.partition(":")
        out.append(complex(float(re), float(im) if im else 0.0))
    return tuple(out)


def _tolerance(args) -> Tolerance:
    return Tolerance(rank_rel=args.tol_rank, psd_abs=args.tol_psd, ineq_abs=args.tol_ineq)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    return int(os.environ.get("TRIWIT_SEED", "0"))


def _family_params(args) -> QubitWitnessParams:
    s = _parse_floats(args.s, 4, "--s")
    t = _parse_floats(args.t, 4, "--t")
    if min(s) < 0 or min(t) < 0:
        raise TriwitError("--s and --t must be nonnegative")
    u = _parse_complexes(args.u, 4, "--u") if args.u else (0j, 0j, 0j, 0j)
    return QubitWitnessParams(s=s, t=t, u=u)


def _report(command: str, args, inputs: dict, results: dict) -> dict:
    tol = _tolerance(args)
    return {
        "command": command,
        "inputs": inputs,
        "results": results,
        "tolerance": {"rank_rel": tol.rank_rel, "psd_abs": tol.psd_abs, "ineq_abs": tol.ineq_abs},
        "version": __version__,
    }


def _emit(doc: dict, out) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# ---------------------------------------------------------------------------
# subcommands

def cmd_sr(args) -> dict:
    dims_flag = _parse_ints(args.dims, 3, "--dims") if args.dims else None
    xi = read_vector(args.vector, dims_flag)
    tol = _tolerance(args)
    rank = schmidt_rank(xi, tol)
    sing = {
        mode: sorted(np.linalg.svd(unfold(xi, i), compute_uv=False).tolist(), reverse=True)
        for i, mode in enumerate(("A", "B", "C"))
    }
    results = {
        "schmidt_rank": list(rank),
        "singular_values": sing,
        "admissible": admissible(rank, xi.dims),
        "dims": list(xi.dims.as_tuple()),
    }
    inputs = {"vector": args.vector, "sha256": _file_digest(args.vector)}
    return _report("sr", args, inputs, results)


def cmd_classify(args) -> dict:
    params = _family_params(args)
    tol = _tolerance(args)
    grid = AlphaGrid(radii=args.grid_radii, angles=args.grid_angles)
    report = classify(params, tol, grid)
    classes = {}
    for cls, cv in report.classes.items():
        entry = {"verdict": cv.verdict.value, "evidence": cv.evidence}
        if cv.alpha is not None:
            entry["alpha"] = [cv.alpha.real, cv.alpha.imag]
        classes[",".join(map(str, cls))] = entry
    results = {
        "classes": classes,
        "biseparability_witness": report.biseparability_witness,
        "params": {
            "s": list(params.s),
            "t": list(params.t),
            "u": _complex_pairs(params.u),
        },
    }
    inputs = {"params_sha256": _digest(results["params"])}
    return _report("classify", args, inputs, results)


def _map_from_args(args, what: str) -> tuple[BiLinearMap, dict]:
    path = getattr(args, "map", None)
    if path:
        op = read_operator(path)
        return BiLinearMap(op.dims, op), {what: path, "sha256": _file_digest(path)}
    if args.s and args.t:
        params = _family_params(args)
        payload = {"s": list(params.s), "t": list(params.t), "u": _complex_pairs(params.u)}
        return family_choi(params), {"family_params": payload, "sha256": _digest(payload)}
    raise TriwitError(f"provide a {what} file or family parameters --s/--t/--u")


def cmd_pair(args) -> dict:
    state = read_operator(args.state)
    phi, map_inputs = _map_from_args(args, "map")
    value = pair(state, phi)
    results = {"value": [value.real, value.imag]}
    inputs = {"state": args.state, "state_sha256": _file_digest(args.state), **map_inputs}
    return _report("pair", args, inputs, results)


def cmd_search(args) -> dict:
    if args.witness:
        w = read_operator(args.witness)
        inputs = {"witness": args.witness, "sha256": _file_digest(args.witness)}
    else:
        phi, inputs = _map_from_args(args, "witness")
        w = phi.choi
    target = _parse_ints(args.sr, 3, "--sr")
    tol = _tolerance(args)
    cfg = SeesawConfig(restarts=args.restarts, max_sweeps=args.sweeps, seed=_seed(args))
    outcome = violation_search(w, target, cfg, tol)
    if isinstance(outcome, NoViolation):
        results = {
            "no_violation": {
                "best_value": outcome.best_value,
                "note": "no violation found; this is not a positivity proof",
            }
        }
    else:
        results = {
            "violation": {
                "value": outcome.value,
                "vector": vector_to_json(outcome.xi),
            }
        }
    results["target"] = list(target)
    results["config"] = {"restarts": cfg.restarts, "max_sweeps": cfg.max_sweeps, "seed": cfg.seed}
    return _report("search", args, inputs, results)


def cmd_gen(args) -> dict:
    target = _parse_ints(args.sr, 3, "--sr")
    dims = TriDims(*_parse_ints(args.dims, 3, "--dims")) if args.dims else TriDims(*target)
    tol = _tolerance(args)
    if args.sample:
        from .search import sample_state

        rng = np.random.default_rng(_seed(args))
        state = sample_state(dims, target, args.terms, rng, tol)
        return operator_to_json(state)
    from .schmidt import construct_state_with_sr

    return vector_to_json(construct_state_with_sr(target, dims, tol))


# ---------------------------------------------------------------------------
# parser

def _add_tol_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol-rank", type=float, default=1e-9, help="relative singular-value cutoff")
    p.add_argument("--tol-psd", type=float, default=1e-9, help="eigenvalue floor (norm-scaled)")
    p.add_argument("--tol-ineq", type=float, default=1e-9, help="inequality slack")
    p.add_argument("--out", default=None, help="write output to this file instead of stdout")


def _add_family_flags(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--s", required=required, help="four nonnegative values, e.g. 0,1,1,2")
    p.add_argument("--t", required=required, help="four nonnegative values")
    p.add_argument("--u", default=None, help="four complex values as re:im, e.g. 1:0,1:0,1:0,1:0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triwit",
        description="Schmidt-rank triplets, witness classification and entanglement certification",
    )
    parser.add_argument("--version", action="version", version=f"triwit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sr", help="Schmidt-rank triplet of a vector file")
    p.add_argument("vector", help="JSON vector file")
    p.add_argument("--dims", default=None, help="a,b,c (overrides the file)")
    _add_tol_flags(p)
    p.set_defaults(func=cmd_sr)

    p = sub.add_parser("classify", help="positivity classes of a witness-family member")
    _add_family_flags(p, required=True)
    p.add_argument("--grid-radii", type=int, default=64)
    p.add_argument("--grid-angles", type=int, default=64)
    _add_tol_flags(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("pair", help="duality pairing of a state with a map")
    p.add_argument("state", help="JSON state file (operator, or vector promoted to a projector)")
    p.add_argument("--map", default=None, help="JSON Choi-matrix file")
    _add_family_flags(p, required=False)
    _add_tol_flags(p)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("search", help="see-saw search for a block-positivity violation")
    p.add_argument("witness", nargs="?", default=None, help="JSON Hermitian matrix file")
    _add_family_flags(p, required=False)
    p.add_argument("--sr", required=True, help="target rank triplet p,q,r")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--sweeps", type=int, default=200)
    p.add_argument("--seed", type=int, default=None, help="defaults to $TRIWIT_SEED or 0")
    _add_tol_flags(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("gen", help="generate a vector with an exact rank triplet, or sample a state")
    p.add_argument("--sr", required=True, help="target triplet alpha,beta,gamma")
    p.add_argument("--dims", default=None, help="a,b,c (defaults to the triplet itself)")
    p.add_argument("--sample", action="store_true", help="sample a mixed state instead")
    p.add_argument("--terms", type=int, default=5, help="number of projectors in a sampled state")
    p.add_argument("--seed", type=int, default=None, help="defaults to $TRIWIT_SEED or 0")
    _add_tol_flags(p)
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc = args.func(args)
    except NotHermitian as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (TriwitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(doc, args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())

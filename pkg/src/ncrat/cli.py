"""Command-line interface.

Subcommands: chi, phi, equal, minimize, reconstruct, qdet-check,
alexander, prop43-report. Inputs are JSON files in the formats of the
owning modules; output is deterministic text or JSON. Exit codes: 0 for
success (or "equal"/PASS), 1 for a well-formed negative result (unequal,
FAIL), 2 for parse/validation/I-O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .linrep import LinRep, expand, first_difference, coeff as rep_coeff
from .linrep import minimize as rep_minimize
from .linrep import rep_from_obj, rep_to_obj
from .modchar import chi_rep, chi_trace_oracle, module_from_obj, module_to_obj, reconstruct
from .ncseries import TruncSeries, series_add, series_scale, series_to_obj
from .pmu import (
    AlexanderPoly,
    alexander_invariants,
    phi_rep,
    pmu_from_obj,
    prop43_report,
    validate,
)
from .exactlinalg import rational_to_str
from .quasidet import chi_via_qdet


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple[str, ...]
    order: int
    fmt: str
    seed: int
    output: str | None


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_module(path: str):
    obj = _load_json(path)
    if not isinstance(obj, dict) or obj.get("kind") != "free_module":
        raise ValueError(f"{path}: expected a free_module file")
    return module_from_obj(obj)


def _load_pmu(path: str):
    obj = _load_json(path)
    if not isinstance(obj, dict) or obj.get("kind") != "pmu_module":
        raise ValueError(f"{path}: expected a pmu_module file")
    A = pmu_from_obj(obj)
    if not validate(A):
        raise ValueError(f"{path}: idempotent relations fail (pi_i pi_j = delta_ij pi_i, sum pi_i = 1)")
    return A


def _load_as_rep(path: str) -> LinRep:
    """Coerce a file to a realization: rep files directly, free modules
    through chi, idempotent-shift modules through phi."""
    obj = _load_json(path)
    if isinstance(obj, dict):
        kind = obj.get("kind")
        if kind == "free_module":
            return chi_rep(module_from_obj(obj))
        if kind == "pmu_module":
            A = pmu_from_obj(obj)
            if not validate(A):
                raise ValueError(f"{path}: idempotent relations fail")
            return phi_rep(A)
        if "init" in obj and "trans" in obj and "fin" in obj:
            return rep_from_obj(obj)
    raise ValueError(f"{path}: unrecognized input format")


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _word_str(w) -> str:
    return json.dumps(list(w), separators=(",", ""))


def _series_lines(f: TruncSeries) -> list[str]:
    return [f"{_word_str(w)} {rational_to_str(f.coeffs[w])}" for w in f.support()]


def _series_text(f: TruncSeries, header: str) -> str:
    lines = [f"{header} mu={f.mu} order={f.order} terms={len(f.coeffs)}"]
    lines.extend(_series_lines(f))
    return "\n".join(lines)


def _json_dump(obj) -> str:
    return json.dumps(obj, indent=2)


def _cmd_chi(cfg: RunConfig) -> int:
    M = _load_module(cfg.inputs[0])
    f = expand(chi_rep(M), cfg.order)
    if cfg.fmt == "json":
        _emit(cfg, _json_dump(series_to_obj(f)))
    else:
        _emit(cfg, _series_text(f, "chi"))
    return 0


def _cmd_phi(cfg: RunConfig) -> int:
    A = _load_pmu(cfg.inputs[0])
    f = expand(phi_rep(A), cfg.order)
    if cfg.fmt == "json":
        _emit(cfg, _json_dump(series_to_obj(f)))
    else:
        _emit(cfg, _series_text(f, "phi"))
    return 0


def _cmd_equal(cfg: RunConfig) -> int:
    a = _load_as_rep(cfg.inputs[0])
    b = _load_as_rep(cfg.inputs[1])
    w = first_difference(a, b)
    if w is None:
        if cfg.fmt == "json":
            _emit(cfg, _json_dump({"equal": True}))
        else:
            _emit(cfg, "equal")
        return 0
    ca, cb = rep_coeff(a, w), rep_coeff(b, w)
    if cfg.fmt == "json":
        _emit(cfg, _json_dump({
            "equal": False,
            "first_difference": list(w),
            "left": rational_to_str(ca),
            "right": rational_to_str(cb),
        }))
    else:
        _emit(cfg, f"differ at word {_word_str(w)}: {rational_to_str(ca)} vs {rational_to_str(cb)}")
    return 1


def _cmd_minimize(cfg: RunConfig) -> int:
    r = _load_as_rep(cfg.inputs[0])
    m = rep_minimize(r)
    if cfg.fmt == "text":
        head = f"minimized dim={m.dim} (from {r.dim})\n"
        _emit(cfg, head + _json_dump(rep_to_obj(m)))
    else:
        _emit(cfg, _json_dump(rep_to_obj(m)))
    return 0


def _cmd_reconstruct(cfg: RunConfig) -> int:
    r = _load_as_rep(cfg.inputs[0])
    M, gen = reconstruct(r)
    payload = {
        "module": module_to_obj(M),
        "generator": [rational_to_str(c) for c in gen],
    }
    if cfg.fmt == "text":
        head = f"reconstructed dim={M.dim}\n"
        _emit(cfg, head + _json_dump(payload))
    else:
        _emit(cfg, _json_dump(payload))
    return 0


def _cmd_qdet_check(cfg: RunConfig) -> int:
    M = _load_module(cfg.inputs[0])
    via_qdet = chi_via_qdet(M, cfg.order)
    via_trace = chi_trace_oracle(M, cfg.order)
    diff = series_add(via_qdet, series_scale(-1, via_trace))
    ok = diff.is_zero()
    if cfg.fmt == "json":
        _emit(cfg, _json_dump({
            "pass": ok,
            "quasidet": series_to_obj(via_qdet),
            "trace": series_to_obj(via_trace),
            "difference": series_to_obj(diff),
        }))
    else:
        words = sorted(set(via_qdet.coeffs) | set(via_trace.coeffs), key=lambda w: (len(w), w))
        lines = [f"qdet-check mu={M.mu} dim={M.dim} order={cfg.order}"]
        for w in words:
            a, b = via_qdet.coeff(w), via_trace.coeff(w)
            mark = "ok" if a == b else "DIFF"
            lines.append(f"{_word_str(w)} {rational_to_str(a)} {rational_to_str(b)} {mark}")
        lines.append(f"summary: {'PASS' if ok else 'FAIL'}")
        _emit(cfg, "\n".join(lines))
    return 0 if ok else 1


def _parse_poly(text: str) -> AlexanderPoly:
    return AlexanderPoly.from_coeffs([c.strip() for c in text.split(",") if c.strip()])


def _cmd_alexander(cfg: RunConfig) -> int:
    arg = cfg.inputs[0]
    if arg.endswith(".json"):
        obj = _load_json(arg)
        delta = AlexanderPoly.from_coeffs(obj["delta"])
    else:
        delta = _parse_poly(arg)
    chi, phi = alexander_invariants(delta, cfg.order)
    ec, ep = expand(chi, cfg.order), expand(phi, cfg.order)
    if cfg.fmt == "json":
        _emit(cfg, _json_dump({"chi": series_to_obj(ec), "phi": series_to_obj(ep)}))
    else:
        _emit(cfg, _series_text(ec, "chi") + "\n" + _series_text(ep, "phi"))
    return 0


def _cmd_prop43(cfg: RunConfig) -> int:
    A = _load_pmu(cfg.inputs[0])
    rep = prop43_report(A, cfg.order)
    if cfg.fmt == "json":
        _emit(cfg, _json_dump({
            "match": rep.matches,
            "quasidet_sum": series_to_obj(rep.quasidet_sum),
            "phi": series_to_obj(rep.phi),
            "difference": series_to_obj(rep.difference),
        }))
    else:
        words = sorted(set(rep.quasidet_sum.coeffs) | set(rep.phi.coeffs),
                       key=lambda w: (len(w), w))
        lines = [f"prop43-report mu={A.mu} dim={A.dim} order={cfg.order}",
                 "word qdet_sum phi difference"]
        for w in words:
            lines.append(f"{_word_str(w)} {rational_to_str(rep.quasidet_sum.coeff(w))} "
                         f"{rational_to_str(rep.phi.coeff(w))} "
                         f"{rational_to_str(rep.difference.coeff(w))}")
        n_diff = len(rep.difference.coeffs)
        lines.append("summary: MATCH" if rep.matches
                     else f"summary: MISMATCH ({n_diff} words differ)")
        _emit(cfg, "\n".join(lines))
    return 0


_HANDLERS = {
    "chi": (_cmd_chi, 1, "free_module file"),
    "phi": (_cmd_phi, 1, "pmu_module file"),
    "equal": (_cmd_equal, 2, "two rep/module files"),
    "minimize": (_cmd_minimize, 1, "rep (or module) file"),
    "reconstruct": (_cmd_reconstruct, 1, "rep (or module) file"),
    "qdet-check": (_cmd_qdet_check, 1, "free_module file"),
    "alexander": (_cmd_alexander, 1, "comma-separated coefficients (constant first) or a {\"delta\": [...]} file"),
    "prop43-report": (_cmd_prop43, 1, "pmu_module file"),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncrat",
        description="Exact invariants of noncommutative rational series: "
                    "trace series of free-algebra modules, realizations, "
                    "quasideterminant cross-checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, nargs, help_) in _HANDLERS.items():
        p = sub.add_parser(name, help=help_)
        p.add_argument("inputs", nargs=nargs, metavar="INPUT", help=help_)
        p.add_argument("--order", type=int, default=8, help="truncation order (default 8)")
        p.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized commands (accepted everywhere; "
                            "the current commands are deterministic)")
        p.add_argument("--output", default=None, help="write output to this path instead of stdout")
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    inputs = args.inputs if isinstance(args.inputs, list) else [args.inputs]
    cfg = RunConfig(args.command, tuple(inputs), args.order, args.fmt, args.seed, args.output)
    if cfg.order < 0:
        print("error: --order must be >= 0", file=sys.stderr)
        return 2
    handler = _HANDLERS[cfg.command][0]
    try:
        return handler(cfg)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

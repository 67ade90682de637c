"""Command line front end.

Inputs are JSON files. A file with an "adjacency" key is a Cuntz-Krieger
input (K0 = coker(A^T - I), K1 = ker(A^T - I)); a file with "groups" and
"maps" is a six-term literal; a file that also has "base" is an invariant
dump as written by the `invariant` command.

Exit codes: 0 success, 2 input error, 3 verification failure, 4 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from .chains import ModelError
from .coeffs import CoeffInvariant, InvariantError, build_invariant, default_support, verify_invariant
from .fgab import GroupError, kernel
from .homsolver import (HomSolverError, aut_lambda_red, compare_with_oracle, delta_matrix,
                        hom_lambda_red, hom_six)
from .resolution import (ResolutionError, build_resolution, hom_sequence_report, kernel_on_H)
from .sixterm import CKInput, SixTerm, SixTermError, check_exact, ck_model, class_flags

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_INTERNAL = 0, 2, 3, 4

COMMANDS = ("ktheory", "invariant", "verify", "resolve", "hom", "aut", "oracle")


class InputError(ValueError):
    pass


class VerificationFailure(RuntimeError):
    def __init__(self, report: dict, relation: str = ""):
        super().__init__(relation or "verification failed")
        self.report = report
        self.relation = relation


# ---------------------------------------------------------------------------
# loading


def _read(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} at line {exc.lineno}") from exc
    if not isinstance(obj, dict):
        raise InputError(f"{path} must hold a JSON object")
    return obj


def _kind(obj: dict) -> str:
    if "adjacency" in obj:
        return "ck"
    if "base" in obj and "maps" in obj:
        return "invariant"
    if "groups" in obj and "maps" in obj:
        return "sixterm"
    raise InputError("input is neither a Cuntz-Krieger, six-term nor invariant literal")


def _parse(obj: dict):
    kind = _kind(obj)
    try:
        if kind == "ck":
            return kind, CKInput.from_json(obj)
        if kind == "sixterm":
            return kind, SixTerm.from_json(obj)
        return kind, CoeffInvariant.from_json(obj)
    except (SixTermError, GroupError, InvariantError) as exc:
        raise InputError(str(exc)) from exc


def _base(kind: str, val) -> SixTerm:
    if kind == "ck":
        return SixTerm.from_model(ck_model(val))
    if kind == "sixterm":
        return val
    return val.base


def _exact_or_fail(s: SixTerm):
    rep = check_exact(s)
    if not rep.ok:
        bad = rep.first_failure()
        raise InputError(f"six-term input is not exact at node {bad.index} ({bad.kind})")


def _invariant(kind: str, val, support: Optional[List[int]]) -> CoeffInvariant:
    if kind == "invariant":
        if support is not None and list(val.support) != support:
            val = _rebuild(val, support)
        return val
    if kind == "ck":
        model = ck_model(val)
        return build_invariant(model, support)
    _exact_or_fail(val)
    return build_invariant(val, support)


def _rebuild(inv: CoeffInvariant, support: Sequence[int]) -> CoeffInvariant:
    _exact_or_fail(inv.base)
    return build_invariant(inv.base, support)


def _with_model(inv: CoeffInvariant) -> CoeffInvariant:
    return inv if inv.model is not None else _rebuild(inv, inv.support)


# ---------------------------------------------------------------------------
# commands


def cmd_ktheory(args) -> dict:
    kind, val = _parse(_read(args.input))
    if kind != "ck":
        raise InputError("ktheory expects a Cuntz-Krieger literal")
    s = SixTerm.from_model(ck_model(val))
    rep = check_exact(s)
    if not rep.ok:
        raise InvariantError(f"Cuntz-Krieger six-term fails exactness at node {rep.first_failure().index}",
                             "six-term exactness")
    return {"input": val.to_json(), "sixterm": s.to_json(), "flags": class_flags(s), "exact": True}


def cmd_invariant(args) -> dict:
    kind, val = _parse(_read(args.input))
    return _invariant(kind, val, args.support).to_json()


def cmd_verify(args) -> dict:
    kind, val = _parse(_read(args.input))
    inv = val if kind == "invariant" else _invariant(kind, val, args.support)
    rep = verify_invariant(inv).to_json()
    if not rep["ok"]:
        raise VerificationFailure({"verify": rep}, rep["failures"][0]["name"])
    return {"verify": rep}


def cmd_resolve(args) -> dict:
    kind, val = _parse(_read(args.input))
    s = _base(kind, val)
    _exact_or_fail(s)
    try:
        res = build_resolution(s)
    except ResolutionError as exc:
        raise InputError(str(exc)) from exc
    out = res.to_json()
    out["exactness"] = {"F": check_exact(res.F).ok, "H": check_exact(res.H).ok}
    kernels = {}
    for q in sorted(set(res.decomposition.prime_powers())):
        kernels[str(q)] = kernel_on_H(res, q)[0].to_json()
    out["kernels_on_H"] = kernels
    target = _invariant(kind, val, args.support)
    flags = class_flags(s)
    if flags["zero_exponential"] and flags["quotient_K1_free"]:
        out["hom_sequence"] = hom_sequence_report(res, _with_model(target)).to_json()
    else:
        out["hom_sequence"] = None
    return out


def _pair(args):
    if not args.second:
        raise InputError("this command needs --second")
    k1, v1 = _parse(_read(args.input))
    k2, v2 = _parse(_read(args.second))
    support = args.support
    if support is None:
        support = sorted(set(default_support(_base(k1, v1))) | set(default_support(_base(k2, v2))))
    return _invariant(k1, v1, support), _invariant(k2, v2, support)


def cmd_hom(args) -> dict:
    inv1, inv2 = _pair(args)
    hl = hom_lambda_red(inv1, inv2)
    hs = hom_six(inv1.base, inv2.base)
    K = kernel(delta_matrix(hl, hs))[0]
    out = hl.to_json()
    out["support"] = list(inv1.support)
    out["hom_six"] = hs.group.to_json()
    out["delta_kernel"] = K.to_json()
    return out


def cmd_aut(args) -> dict:
    kind, val = _parse(_read(args.input))
    inv = _invariant(kind, val, args.support)
    return {"support": list(inv.support), "aut": aut_lambda_red(inv).to_json()}


def cmd_oracle(args) -> dict:
    if args.second:
        inv1, inv2 = _pair(args)
    else:
        kind, val = _parse(_read(args.input))
        inv1 = inv2 = _invariant(kind, val, args.support)
    if not (inv1.is_finite() and inv2.is_finite()):
        raise InputError("the brute-force oracle needs every group finite")
    agree, n_solver, n_oracle = compare_with_oracle(inv1, inv2)
    out = {"support": list(inv1.support), "solver_order": n_solver, "oracle_order": n_oracle,
           "agree": agree}
    if not agree:
        raise VerificationFailure(out, "solver disagrees with brute force")
    return out


HANDLERS = {"ktheory": cmd_ktheory, "invariant": cmd_invariant, "verify": cmd_verify,
            "resolve": cmd_resolve, "hom": cmd_hom, "aut": cmd_aut, "oracle": cmd_oracle}


# ---------------------------------------------------------------------------
# output


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if set(obj) == {"torsion", "free_rank"}:
            parts = [f"Z/{d}" for d in obj["torsion"]] + ["Z"] * obj["free_rank"]
            return " + ".join(parts) if parts else "0"
        lines = []
        for k, v in obj.items():
            r = render_text(v, indent + 1)
            if "\n" in r:
                lines.append(f"{pad}{k}:\n{r}")
            else:
                lines.append(f"{pad}{k}: {r.strip()}")
        return "\n".join(lines)
    if isinstance(obj, list) and any(isinstance(v, dict) for v in obj):
        return "\n".join(f"{pad}- {render_text(v, indent + 1).strip()}" for v in obj)
    return json.dumps(obj)


def _emit(obj: dict, fmt: str, path: Optional[str]):
    text = json.dumps(obj, indent=2) if fmt == "json" else render_text(obj)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _support(text: str) -> List[int]:
    try:
        vals = sorted(set(int(x) for x in text.split(",") if x.strip()))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("support must be a comma separated list of integers") from exc
    if any(v < 2 for v in vals):
        raise argparse.ArgumentTypeError("support entries must be at least 2")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="artifact", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", required=True, help="input JSON file")
    p.add_argument("--second", help="second input for hom and oracle")
    p.add_argument("--support", type=_support, help="comma separated support, e.g. 2,4")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--output", help="write the report here instead of stdout")
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        report = HANDLERS[args.command](args)
        code = EXIT_OK
    except InputError as exc:
        report, code = {"error": {"type": "input", "message": str(exc)}}, EXIT_INPUT
    except VerificationFailure as exc:
        report = {"error": {"type": "verification", "relation": exc.relation}}
        report.update(exc.report)
        code = EXIT_VERIFY
    except (InvariantError, ModelError, HomSolverError, ResolutionError, GroupError, SixTermError) as exc:
        report = {"error": {"type": "internal", "message": str(exc),
                            "relation": getattr(exc, "relation", "")}}
        code = EXIT_INTERNAL
    _emit(report, args.format, args.output)
    return code


def main() -> None:
    sys.exit(run())

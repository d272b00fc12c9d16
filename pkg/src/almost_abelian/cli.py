"""Command line front end: ``almost-abelian {decide,enumerate,jordan,witness,oracle}``.

Exit codes: 0 success, 1 failed verification or unexpected error, 2 parse
error, 3 precondition violated (even size, inadmissible witness request, ...),
4 characteristic polynomial outside the factorization kernel.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .decide import decide, decide_tuple
from .errors import AlmostAbelianError, ParseError, PreconditionError, UnsupportedFactorError
from .exact import Matrix
from .jordan import SpectralProfile, nilpotent_matrix, normalize_generator, realize, spectral_profile
from .tuples import COMPLEX, SYMPLECTIC, generate_all, is_complex_admissible, is_symplectic_admissible, parse_tuple
from .witness import (
    BracketTable,
    build_complex_witness,
    build_symplectic_witness,
    format_form,
    symplectic_oracle,
    verify_complex,
    verify_symplectic,
)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRECONDITION, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4


class VerificationFailed(AlmostAbelianError):
    pass


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None


def _load_matrix(path: str) -> Matrix:
    m = Matrix.from_json(_load_json(path))
    if not m.is_square:
        raise ParseError(f"{path}: matrix is {m.nrows}x{m.ncols}, not square")
    return m


def _structures(value: str) -> list[str]:
    return [COMPLEX, SYMPLECTIC] if value == "both" else [value]


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# ----------------------------------------------------------------------------
# subcommands; each returns (json payload, table text)


def _read_input(args):
    """Return (profile, tuple or None, matrix or None, description)."""
    if args.tuple is not None:
        t = parse_tuple(args.tuple)
        return SpectralProfile.nilpotent(t), t, None, f"tuple {t}"
    if args.matrix is not None:
        m = _load_matrix(args.matrix)
        if m.nrows % 2 == 0:
            raise PreconditionError(f"matrix size {m.nrows} is even; g_A needs an odd-dimensional ideal")
        return spectral_profile(m), None, m, f"matrix {args.matrix}"
    p = SpectralProfile.from_json(_load_json(args.profile))
    return p, None, None, f"profile {args.profile}"


def _attach_witness(structure: str, t):
    if structure == COMPLEX:
        w = build_complex_witness(t)
        if not verify_complex(w):
            raise VerificationFailed(f"complex witness for {t} failed verification")
    else:
        w = build_symplectic_witness(t)
        if not verify_symplectic(w):
            raise VerificationFailed(f"symplectic witness for {t} failed verification")
    return w


def cmd_decide(args):
    profile, t, matrix, desc = _read_input(args)
    if profile.dimension % 2 == 0:
        raise PreconditionError(f"dimension {profile.dimension} is even; g_A needs an odd-dimensional ideal")
    if t is None and profile.is_nilpotent():
        t = profile.zero_class().tuple
    payload = {"input": desc, "dimension": profile.dimension + 1, "profile": profile.to_json(), "results": {}}
    lines = [f"input: {desc} (algebra dimension {profile.dimension + 1})", f"profile: {profile}"]
    for s in _structures(args.structure):
        d = decide_tuple(t, s) if t is not None else decide(profile, s)
        entry = {"decision": d.to_json()}
        lines.append(f"{s}: {_yes(d.admissible)}  [{d.case}]")
        for f in d.failures:
            lines.append(f"    - {f}")
        if args.witness:
            if t is None:
                entry["witness"] = None
                lines.append("    witness: only available for nilpotent inputs")
            elif d.admissible:
                w = _attach_witness(s, t)
                entry["witness"] = dict(w.to_json(), verified=True)
                shown = format_form(w.omega) if s == SYMPLECTIC else "j e0 = e1, standard j on u"
                lines.append(f"    witness (verified): {shown}")
        if args.oracle and s == SYMPLECTIC:
            source = matrix if matrix is not None else (nilpotent_matrix(t) if t is not None else realize(profile))
            r = symplectic_oracle(BracketTable(source), seed=args.seed, trials=args.trials)
            agree = r.exists == d.admissible
            entry["oracle"] = dict(r.to_json(), agrees=agree)
            conf = "certain" if r.certain else f"false-negative probability <= 2^{r.log2_bound:.0f}"
            lines.append(f"    oracle: {'exists' if r.exists else 'none'} ({r.method}, {conf}); "
                         f"{'agrees' if agree else 'DISAGREES'} with the decision")
            if not agree:
                payload["results"][s] = entry
                raise VerificationFailed("oracle and decision disagree:\n" + "\n".join(lines))
        payload["results"][s] = entry
    return payload, "\n".join(lines)


def cmd_enumerate(args):
    if args.dim < 2 or args.dim % 2:
        raise PreconditionError(f"--dim must be an even number >= 2 (got {args.dim})")
    m = args.dim - 1
    structures = _structures(args.structure)
    preds = {COMPLEX: is_complex_admissible, SYMPLECTIC: is_symplectic_admissible}
    rows = []
    for t in generate_all(m):
        rows.append({"tuple": str(t), **{s: preds[s](t) for s in structures}})
    counts = {s: {"admissible": sum(r[s] for r in rows), "not": sum(not r[s] for r in rows)} for s in structures}
    payload = {"dimension": args.dim, "total": len(rows), "tuples": rows, "counts": counts}
    width = max(len(r["tuple"]) for r in rows)
    head = "tuple".ljust(width) + "".join(f"  {s:>10}" for s in structures)
    lines = [head, "-" * len(head)]
    for r in rows:
        lines.append(r["tuple"].ljust(width) + "".join(f"  {_yes(r[s]):>10}" for s in structures))
    lines.append("")
    for s in structures:
        lines.append(f"{s}: {counts[s]['admissible']} admissible / {counts[s]['not']} not (of {len(rows)})")
    return payload, "\n".join(lines)


def cmd_jordan(args):
    m = nilpotent_matrix(parse_tuple(args.tuple)) if args.tuple is not None else _load_matrix(args.matrix)
    p = spectral_profile(m)
    payload = {"profile": p.to_json(), "nilpotent": p.is_nilpotent()}
    if p.is_nilpotent():
        t = p.zero_class().tuple if p.classes else None
        payload.update(tuple=str(t), step=t.step())
        return payload, f"{t}, nilpotent, {t.step()}-step"
    norm, note = normalize_generator(p)
    payload.update(normalized=norm.to_json(), note=note)
    lines = [f"dimension {p.dimension}"]
    for c in p.classes:
        ev = c.eigenvalue
        kind = "rational" if ev.is_rational else (
            "purely imaginary" if ev.imaginary else f"{ev.real_roots} real root(s) of {ev.degree}")
        lines.append(f"  {ev}: {c.tuple}  ({kind})")
    lines.append(f"normalized: {norm}  [{note}]")
    return payload, "\n".join(lines)


def cmd_witness(args):
    t = parse_tuple(args.tuple)
    w = _attach_witness(args.structure, t)
    payload = dict(w.to_json(), tuple=str(t), verified=True)
    if args.structure == SYMPLECTIC:
        text = f"{t}: dimension {w.bracket.dimension}, verified\nC = {w.bracket.C}\nω = {format_form(w.omega)}"
    else:
        text = f"{t}: dimension {w.bracket.dimension}, verified\nC = {w.bracket.C}\nj = {w.j}"
    return payload, text


def cmd_oracle(args):
    if args.tuple is not None:
        m = nilpotent_matrix(parse_tuple(args.tuple))
    else:
        m = _load_matrix(args.matrix)
    if m.nrows % 2 == 0:
        raise PreconditionError(f"matrix size {m.nrows} is even; g_A needs an odd-dimensional ideal")
    r = symplectic_oracle(BracketTable(m), seed=args.seed, trials=args.trials)
    payload = r.to_json()
    if r.exists:
        text = f"exists ({r.method}): ω = {format_form(r.form)}"
    else:
        conf = "certain" if r.certain else f"false-negative probability <= 2^{r.log2_bound:.0f}"
        text = f"none ({r.method}, {r.samples} samples, {conf})"
    return payload, text


# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--output", metavar="FILE", help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(
        prog="almost-abelian",
        description="Complex and symplectic structures on almost abelian Lie algebras R e0 ⋉_A R^(2n-1).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", parents=[common], help="decide existence of structures")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", metavar="FILE", help='matrix JSON {"rows": [["1", "-1/2"], ...]}')
    src.add_argument("--profile", metavar="FILE", help="spectral profile JSON")
    src.add_argument("--tuple", metavar="TUPLE", help='nilpotent Jordan type, e.g. "5,3;1,1;1" or "7"')
    p.add_argument("--structure", choices=(COMPLEX, SYMPLECTIC, "both"), default="both")
    p.add_argument("--witness", action="store_true", help="attach a verified witness (nilpotent inputs)")
    p.add_argument("--oracle", action="store_true", help="cross-check the symplectic answer by search")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("enumerate", parents=[common], help="list all nilpotent algebras of a dimension")
    p.add_argument("--dim", type=int, required=True, help="even algebra dimension 2n")
    p.add_argument("--structure", choices=(COMPLEX, SYMPLECTIC, "both"), default="both")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("jordan", parents=[common], help="spectral profile of a matrix")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", metavar="FILE")
    src.add_argument("--tuple", metavar="TUPLE")
    p.set_defaults(func=cmd_jordan)

    p = sub.add_parser("witness", parents=[common], help="construct and verify a witness structure")
    p.add_argument("--tuple", metavar="TUPLE", required=True)
    p.add_argument("--structure", choices=(COMPLEX, SYMPLECTIC), required=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("oracle", parents=[common], help="search for a symplectic form directly")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", metavar="FILE")
    src.add_argument("--tuple", metavar="TUPLE")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=None)
    p.set_defaults(func=cmd_oracle)
    return parser


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload, table = args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except UnsupportedFactorError as exc:
        print(f"error: unsupported factor: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except AlmostAbelianError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = json.dumps(payload, indent=2) if args.format == "json" else table
    _emit(text, args.output)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end.

Every command reads an arrangement (a bare arrangement object, or any earlier
command's output, which always carries an ``"arrangement"`` key) from
``--input``/``--arrangement`` or standard input, and writes JSON or a plain
table.  Flags can also be given as ``HYPERRES_<FLAG>`` environment variables.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import __version__
from .arrangement import (
    Arrangement,
    ArrangementError,
    enumerate_irreducibles,
    irreducible_components,
    type_a_preset,
)
from .jk import (
    OrientationContext,
    intersection_form,
    jk_terms,
    positive_functional,
)
from .laurent import SeriesError
from .linalg import LinalgError, format_rational, parse_rational
from .nested import (
    enumerate_maximal_nested,
    enumerate_nbc,
    enumerate_proper_mns,
    type_a_encode,
    type_a_permutation,
)
from .polynomial import Polynomial
from .residue import (
    RationalTopForm,
    ResidueError,
    pairing_matrix,
    project,
    residue,
)
from .verify import (
    OracleError,
    QuadratureSpec,
    brute_maximal_nested,
    numeric_cycle_integral,
)

ENV_PREFIX = "HYPERRES_"

COMMANDS = (
    "info", "irreducibles", "nbc", "nested", "proper-mns", "pairing", "residue",
    "project", "jk", "intersection", "verify", "preset-a",
)

DOMAIN_ERRORS = (ArrangementError, ResidueError, SeriesError, OracleError, LinalgError,
                 ValueError, KeyError, TypeError, ZeroDivisionError)


class UsageError(Exception):
    pass


def _env(name, default=None):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)


# -- parsing helpers -----------------------------------------------------------

def _parse_vector(text: str) -> tuple:
    return tuple(parse_rational(x) for x in text.split(","))


def _parse_basis(text: str) -> tuple:
    return tuple(_parse_vector(row) for row in text.split(";"))


def _load_json(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON in {what}: {exc}") from None


def _read_arrangement(args) -> Arrangement:
    if args.arrangement is not None:
        data = _load_json(args.arrangement, "--arrangement")
    else:
        src = args.input
        if src in (None, "-"):
            if src is None and sys.stdin.isatty():
                raise UsageError("no arrangement given (use --input, --arrangement or a pipe)")
            text = sys.stdin.read()
        else:
            with open(src) as fh:
                text = fh.read()
        data = _load_json(text, "arrangement input")
    if isinstance(data, dict) and "arrangement" in data:
        data = data["arrangement"]
    return Arrangement.from_json(data)


def _context(args, arr: Arrangement) -> OrientationContext:
    std = OrientationContext.standard(arr.rank)
    xi = _parse_basis(args.xi) if args.xi else std.xi
    lattice = _parse_basis(args.lattice) if args.lattice else std.lattice
    return OrientationContext(xi, lattice)


def _form(args, arr: Arrangement) -> RationalTopForm:
    if args.form is None:
        raise UsageError("--form is required")
    data = _load_json(args.form, "--form")
    if isinstance(data, dict) and "poly_in_alphas" in data:
        return intersection_form(arr, Polynomial.from_json(data["poly_in_alphas"], len(arr)))
    return RationalTopForm.from_json(arr, data)


def _point(args) -> tuple:
    if args.c is None:
        raise UsageError("--c is required")
    return _parse_vector(args.c)


def _mns_json(m) -> dict:
    return {"members": [list(s) for s in m.members], "phi": list(m.phi)}


# -- commands ----------------------------------------------------------------

def cmd_preset_a(args):
    if args.n is None:
        raise UsageError("preset-a needs n")
    return type_a_preset(args.n).to_json(), None


def cmd_info(args, arr):
    ell = positive_functional(arr)
    out = {
        "arrangement": arr.to_json(),
        "rank": arr.rank,
        "size": len(arr),
        "components": [list(s) for s in irreducible_components(arr, arr.everything)],
        "irreducibles": len(enumerate_irreducibles(arr)),
        "nbc": len(enumerate_nbc(arr)),
        "proper_mns": len(enumerate_proper_mns(arr)),
        "positive_functional": None if ell is None else [format_rational(x) for x in ell],
    }
    table = [
        f"rank {arr.rank}, {len(arr)} vectors",
        f"components of the arrangement: {out['components']}",
        f"irreducible subsets: {out['irreducibles']}",
        f"NBC bases: {out['nbc']}  proper maximal nested sets: {out['proper_mns']}",
        f"positive functional: {out['positive_functional']}",
    ]
    return out, table


def cmd_irreducibles(args, arr):
    irr = enumerate_irreducibles(arr)
    out = {"arrangement": arr.to_json(), "irreducibles": [list(s) for s in irr]}
    return out, [" ".join(map(str, s)) for s in irr]


def cmd_nbc(args, arr):
    nbc = enumerate_nbc(arr)
    out = {"arrangement": arr.to_json(), "nbc": [list(s) for s in nbc]}
    return out, [" ".join(map(str, s)) for s in nbc]


def cmd_nested(args, arr):
    mns = enumerate_maximal_nested(arr)
    out = {
        "arrangement": arr.to_json(),
        "maximal_nested": [[list(s) for s in m.members] for m in mns],
        "proper": [m.proper for m in mns],
    }
    table = [f"{'P' if m.proper else ' '} {[list(s) for s in m.members]}" for m in mns]
    return out, table


def cmd_proper_mns(args, arr):
    mns = enumerate_proper_mns(arr)
    out = {"arrangement": arr.to_json(), "proper_mns": [_mns_json(m) for m in mns]}
    table = [f"phi={list(m.phi)}  {[list(s) for s in m.members]}" for m in mns]
    if arr.roots is not None:
        out["type_a"] = [
            {"pairs": [list(p) for p in type_a_encode(arr, m)],
             "permutation": list(type_a_permutation(arr, m))}
            for m in mns
        ]
    return out, table


def cmd_pairing(args, arr):
    mns = enumerate_proper_mns(arr)
    mat = pairing_matrix(arr)
    out = {
        "arrangement": arr.to_json(),
        "proper_mns": [_mns_json(m) for m in mns],
        "pairing": [[format_rational(x) for x in row] for row in mat],
    }
    return out, [" ".join(f"{format_rational(x):>4}" for x in row) for row in mat]


def cmd_residue(args, arr):
    psi = _form(args, arr)
    mns = enumerate_proper_mns(arr)
    if args.mns is not None:
        if not 0 <= args.mns < len(mns):
            raise ArrangementError(f"--mns must be in [0, {len(mns)})")
        mns = [mns[args.mns]]
    rows = [(m, residue(arr, psi, m)) for m in mns]
    out = {
        "arrangement": arr.to_json(),
        "residues": [dict(_mns_json(m), residue=format_rational(v)) for m, v in rows],
    }
    return out, [f"{list(m.phi)}: {format_rational(v)}" for m, v in rows]


def cmd_project(args, arr):
    psi = _form(args, arr)
    rows = project(arr, psi)
    out = {
        "arrangement": arr.to_json(),
        "projection": [dict(_mns_json(m), coefficient=format_rational(v)) for m, v in rows],
    }
    return out, [f"omega{list(m.phi)}: {format_rational(v)}" for m, v in rows]


def _jk_output(arr, ctx, c, psi):
    terms = jk_terms(arr, ctx, c, psi)
    value = sum((s * v for _, s, v in terms), Fraction(0))
    out = {
        "arrangement": arr.to_json(),
        "c": [format_rational(x) for x in c],
        "value": format_rational(value),
        "decomposition": [
            {"mns": [list(s) for s in m.members], "phi": list(m.phi), "sign": s,
             "residue": format_rational(v)}
            for m, s, v in terms
        ],
    }
    table = [f"JK = {format_rational(value)}"] + [
        f"  {'+' if s > 0 else '-'} res{list(m.phi)} = {format_rational(v)}" for m, s, v in terms
    ]
    return out, table


def cmd_jk(args, arr):
    return _jk_output(arr, _context(args, arr), _point(args), _form(args, arr))


def cmd_intersection(args, arr):
    if args.poly is None:
        raise UsageError("--poly is required")
    poly = Polynomial.from_json(_load_json(args.poly, "--poly"), len(arr))
    return _jk_output(arr, _context(args, arr), _point(args), intersection_form(arr, poly))


def _random_form(rng: random.Random, arr: Arrangement) -> RationalTopForm:
    den = tuple(rng.randint(0, 2) for _ in range(len(arr)))
    terms = {}
    for _ in range(rng.randint(1, 3)):
        e = tuple(rng.randint(0, 2) for _ in range(arr.rank))
        terms[e] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return RationalTopForm(Polynomial(terms, arr.rank), den)


def cmd_verify(args, arr):
    spec = QuadratureSpec(args.epsilon, args.grid, args.tolerance)
    if args.form is not None:
        forms = [_form(args, arr)]
    else:
        rng = random.Random(args.seed)
        forms = [_random_form(rng, arr) for _ in range(args.samples)]
    cases = []
    worst = 0.0
    for k, psi in enumerate(forms):
        for m in enumerate_proper_mns(arr):
            exact = residue(arr, psi, m)
            approx = numeric_cycle_integral(arr, psi, m, spec)
            err = abs(approx - float(exact))
            worst = max(worst, err)
            cases.append({"form": k, "phi": list(m.phi), "exact": format_rational(exact),
                          "numeric": [approx.real, approx.imag], "error": err})
    direct = {frozenset(m.members) for m in enumerate_maximal_nested(arr)}
    brute = set(brute_maximal_nested(arr))
    passed = worst < spec.tolerance and direct == brute
    out = {
        "arrangement": arr.to_json(),
        "quadrature": {"epsilon": spec.epsilon, "grid": spec.grid, "tolerance": spec.tolerance},
        "cases": cases,
        "max_error": worst,
        "maximal_nested_agree": direct == brute,
        "passed": passed,
    }
    table = [f"{c['phi']}: exact {c['exact']}  error {c['error']:.2e}" for c in cases]
    table.append(f"max error {worst:.2e}; enumerations agree: {direct == brute}")
    table.append("PASS" if passed else "FAIL")
    return out, table


HANDLERS = {
    "info": cmd_info,
    "irreducibles": cmd_irreducibles,
    "nbc": cmd_nbc,
    "nested": cmd_nested,
    "proper-mns": cmd_proper_mns,
    "pairing": cmd_pairing,
    "residue": cmd_residue,
    "project": cmd_project,
    "jk": cmd_jk,
    "intersection": cmd_intersection,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hyperres", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("n", nargs="?", type=int, help="size for preset-a")
    p.add_argument("--input", "-i", default=_env("input"), help="arrangement file, '-' for stdin")
    p.add_argument("--arrangement", default=_env("arrangement"), help="inline arrangement JSON")
    p.add_argument("--format", choices=("json", "table"), default=_env("format", "json"))
    p.add_argument("--form", default=_env("form"), help="top form JSON")
    p.add_argument("--poly", default=_env("poly"), help="polynomial in the alpha symbols, JSON")
    p.add_argument("--c", default=_env("c"), help="regular point, e.g. 2/1,1/1")
    p.add_argument("--mns", type=int, default=_env("mns"), help="index into the proper nested sets")
    p.add_argument("--xi", default=_env("xi"), help="reference basis rows, e.g. '1,0;0,1'")
    p.add_argument("--lattice", default=_env("lattice"), help="lattice basis rows")
    p.add_argument("--epsilon", type=float, default=float(_env("epsilon", 0.125)))
    p.add_argument("--grid", type=int, default=int(_env("grid", 64)))
    p.add_argument("--tolerance", type=float, default=float(_env("tolerance", 1e-6)))
    p.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    p.add_argument("--samples", type=int, default=int(_env("samples", 3)))
    return p


def _emit(out, table, fmt, stream):
    if fmt == "table" and table is not None:
        stream.write("\n".join(table) + "\n")
    else:
        stream.write(json.dumps(out, sort_keys=True) + "\n")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "preset-a":
            out, table = cmd_preset_a(args)
        else:
            arr = _read_arrangement(args)
            out, table = HANDLERS[args.command](args, arr)
    except UsageError as exc:
        parser.print_usage(stderr)
        stderr.write(f"hyperres: error: {exc}\n")
        return 2
    except (OSError, *DOMAIN_ERRORS) as exc:
        stderr.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1
    _emit(out, table, args.format, stdout)
    if args.command == "verify" and not out["passed"]:
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

"""Command-line front end: fixture management and report generation.

Exit codes: 0 success, 1 validation error (bad flags, missing files,
schema or census problems), 2 internal invariant failure.  All output is
deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .bredon import (AbelianGroup, BlockSplitError, bredon_complex,
                     bredon_homology_formula, chen_ruan_dims, homology,
                     k_homology, split_blocks)
from .complexes import (ComplexSchemaError, classify_component,
                        connected_components, parse_complex,
                        serialize_complex, torsion_subcomplex)
from .reduction import reduce_complex, replay
from .series import (CensusError, SubgroupCensus, e2_page,
                     equivariant_graph_cohomology_oracle, poincare_2torsion,
                     poincare_3torsion)


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); flag errors are exit 1
        raise CliError(message)


def _fixtures_dir(args) -> Path:
    if args.fixtures_dir:
        return Path(args.fixtures_dir)
    env = os.environ.get("TSR_FIXTURES")
    if env:
        return Path(env)
    return Path(__file__).parent / "fixtures"


def _read_input(args) -> str:
    path = Path(args.input)
    if path.is_file():
        return path.read_text()
    candidate = _fixtures_dir(args) / args.input
    if candidate.is_file():
        return candidate.read_text()
    raise CliError(f"input file not found: {args.input}")


def _load_complex(args):
    return parse_complex(_read_input(args))


def _load_census(args) -> SubgroupCensus:
    text = args.census
    if text is None:
        raise CliError("--census is required for this command")
    if not text.lstrip().startswith("{"):
        path = Path(text)
        if not path.is_file():
            raise CliError(f"census file not found: {text}")
        text = path.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CensusError(f"invalid census JSON: {exc.msg}")
    if not isinstance(doc, dict):
        raise CensusError("census must be a JSON object")
    return SubgroupCensus.from_dict(doc)


def _emit_json(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _series_table(coeffs, lo: int) -> str:
    qs = list(range(lo, len(coeffs)))
    cells = [str(int(coeffs[q])) for q in qs]
    width = [max(len(str(q)), len(c)) for q, c in zip(qs, cells)]
    row_q = " ".join(str(q).rjust(w) for q, w in zip(qs, width))
    row_d = " ".join(c.rjust(w) for c, w in zip(cells, width))
    return f"q:   {row_q}\ndim: {row_d}"


# --------------------------------------------------------------------------
# Subcommands


def _cmd_validate(args) -> int:
    cx = _load_complex(args)
    if args.json:
        _emit_json({"status": "OK", "cells": len(cx.cells),
                    "incidences": len(cx.incidences)})
    else:
        print("OK")
    return 0


def _cmd_extract(args) -> int:
    cx = torsion_subcomplex(_load_complex(args), args.prime)
    sys.stdout.write(serialize_complex(cx))
    return 0


def _cmd_reduce(args) -> int:
    cx = _load_complex(args)
    reduced, log = reduce_complex(cx, args.prime)
    replayed = replay(cx, log, args.prime)
    if serialize_complex(replayed) != serialize_complex(reduced):
        raise AssertionError("reduction log replay diverged from the fixpoint")
    if args.json:
        _emit_json({
            "complex": json.loads(serialize_complex(reduced)),
            "moves": [json.loads(m.to_json()) for m in log.moves],
        })
    else:
        print(f"moves: {len(log.moves)}")
        for move in log.moves:
            print(move.to_json())
        print("log verified")
        sys.stdout.write(serialize_complex(reduced))
    return 0


def _cmd_poincare(args) -> int:
    census = _load_census(args)
    series = poincare_2torsion(census) if args.prime == 2 else poincare_3torsion(census)
    coeffs = series.expand(args.degrees)
    if args.json:
        _emit_json({
            "prime": args.prime,
            "series": str(series),
            "coefficients": {str(q): int(c) for q, c in enumerate(coeffs)},
        })
    else:
        print(f"P^{args.prime}(t) = {series}")
        print(_series_table(coeffs, 3 if args.degrees >= 3 else 0))
    return 0


def _cmd_bredon(args) -> int:
    cx = _load_complex(args)
    bc = bredon_complex(cx)
    blocks = split_blocks(bc)
    named = [("orbit", blocks.trivial), ("2-torsion", blocks.two),
             ("3-torsion", blocks.three)]
    total = homology(bc.chain())
    if args.json:
        doc = {
            "total": [str(h) for h in total],
            "psi1": bc.psi1.tolist(),
            "psi2": bc.psi2.tolist(),
        }
        for name, chain in named:
            doc[name.replace("-", "_")] = [str(h) for h in homology(chain)]
        _emit_json(doc)
    else:
        for name, chain in named:
            hs = homology(chain)
            print(f"{name} block: " + ", ".join(f"H_{i} = {h}" for i, h in enumerate(hs)))
        print("total: " + ", ".join(f"H_{i} = {h}" for i, h in enumerate(total)))
    return 0


def _cmd_khomology(args) -> int:
    census = _load_census(args)
    h1_free = census.beta1 if args.h1_free is None else args.h1_free
    torsion = tuple(int(t) for t in args.h1_torsion.split(",") if t.strip()) \
        if args.h1_torsion else ()
    h1 = AbelianGroup(h1_free, torsion)
    result = k_homology(census, h1, census.beta2)
    if args.json:
        _emit_json({k: str(v) for k, v in result.items()})
    else:
        print(f"K_0 = {result['K0']}")
        print(f"K_1 = {result['K1']}")
    return 0


def _cmd_chenruan(args) -> int:
    census = _load_census(args)
    try:
        qdims = json.loads(args.quotient_dims) if args.quotient_dims else {}
    except json.JSONDecodeError as exc:
        raise CliError(f"invalid --quotient-dims JSON: {exc.msg}")
    if isinstance(qdims, list):
        qdims = {d: int(v) for d, v in enumerate(qdims)}
    elif isinstance(qdims, dict):
        qdims = {int(k): int(v) for k, v in qdims.items()}
    else:
        raise CliError("--quotient-dims must be a JSON list or object")
    dims = chen_ruan_dims(census, qdims, complexified=not args.real)
    if args.json:
        _emit_json({str(d): dims[d] for d in sorted(dims)})
    else:
        label = "real" if args.real else "complexified"
        print(f"orbifold cohomology dimensions ({label}):")
        for d in sorted(dims):
            print(f"  d={d}: {dims[d]}")
    return 0


def _cmd_e2page(args) -> int:
    census = _load_census(args)
    try:
        xs_rows = json.loads(args.xs_rows) if args.xs_rows else {}
    except json.JSONDecodeError as exc:
        raise CliError(f"invalid --xs-rows JSON: {exc.msg}")
    defaults = {"E01": 0, "E11": 0, "E03": 0, "E13": 0, "H2Xsprime": 0}
    defaults.update(xs_rows)
    page = e2_page(census, args.chi_xs, defaults)
    if args.json:
        _emit_json({
            "a1": page.a1, "a2": page.a2, "a3": page.a3,
            "rows": {f"q=4k+{r}": list(page.row(r)) for r in range(4)},
        })
    else:
        print(f"a1 = {page.a1}, a2 = {page.a2}, a3 = {page.a3}")
        for r in (3, 2, 1, 0):
            print(f"q = 4k+{r}: " + "  ".join(str(x) for x in page.row(r)))
        print("columns: n = 0, 1, 2")
    return 0


def _cmd_oracle(args) -> int:
    cx = torsion_subcomplex(_load_complex(args), args.prime)
    lo = max(args.min_degree, 1)
    if args.degrees < lo:
        raise CliError("--degrees must be at least the minimum degree")
    dims = equivariant_graph_cohomology_oracle(cx, args.prime, range(lo, args.degrees + 1))
    if args.json:
        _emit_json({str(q): dims[q] for q in sorted(dims)})
    else:
        coeffs = [0] * (args.degrees + 1)
        for q, d in dims.items():
            coeffs[q] = d
        print(_series_table(coeffs, lo))
    return 0


def _cmd_classify(args) -> int:
    cx = torsion_subcomplex(_load_complex(args), args.prime)
    comps = connected_components(cx)
    rows = []
    for comp in comps:
        least = min(c.id for c in comp.cells)
        rows.append((least, classify_component(comp, args.prime)))
    if args.json:
        _emit_json({least: kind for least, kind in rows})
    else:
        for least, kind in rows:
            print(f"{least}: {kind}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="tsr", description=__doc__)
    parser.add_argument("--version", action="version", version=f"tsr {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *, prime=False, input_file=False, census=False,
            degrees=None):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--fixtures-dir", help="directory searched for --input files")
        if prime:
            p.add_argument("--prime", type=int, choices=(2, 3), required=True)
        if input_file:
            p.add_argument("--input", required=True, help="complex JSON file")
        if census:
            p.add_argument("--census", help="census JSON file or inline object")
        if degrees is not None:
            p.add_argument("--degrees", type=int, default=degrees)
        return p

    add("validate", _cmd_validate, "check a complex document", input_file=True)
    add("extract", _cmd_extract, "extract the torsion subcomplex",
        prime=True, input_file=True)
    add("reduce", _cmd_reduce, "reduce the torsion subcomplex",
        prime=True, input_file=True)
    add("poincare", _cmd_poincare, "Poincare series from a census",
        prime=True, census=True, degrees=10)
    add("bredon", _cmd_bredon, "Bredon chain complex homology of a reduced complex",
        input_file=True)
    p = add("khomology", _cmd_khomology, "equivariant K-homology from a census",
            census=True)
    p.add_argument("--h1-free", type=int, default=None,
                   help="free rank of the orbit-space H1 (default: beta1)")
    p.add_argument("--h1-torsion", default="",
                   help="comma-separated torsion coefficients of the orbit-space H1")
    p = add("chenruan", _cmd_chenruan, "orbifold cohomology dimensions",
            census=True)
    p.add_argument("--real", action="store_true",
                   help="real sectors instead of the complexified default")
    p.add_argument("--quotient-dims", default="",
                   help="quotient-space dims as JSON list or {degree: dim} object")
    p = add("e2page", _cmd_e2page, "assemble the spectral-sequence page",
            census=True)
    p.add_argument("--chi-xs", type=int, required=True,
                   help="Euler characteristic of the torsion subcomplex quotient")
    p.add_argument("--xs-rows", default="",
                   help='JSON object with E01, E11, E03, E13, H2Xsprime (default 0)')
    p = add("oracle", _cmd_oracle, "equivariant cohomology dims of a 1-dim complex",
            prime=True, input_file=True, degrees=10)
    p.add_argument("--min-degree", type=int, default=3)
    add("classify", _cmd_classify, "classify reduced component shapes",
        prime=True, input_file=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ComplexSchemaError, CensusError, FileNotFoundError, ValueError,
            ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (AssertionError, BlockSplitError) as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

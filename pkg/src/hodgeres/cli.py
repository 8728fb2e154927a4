"""Command-line front end.

Two modes:

  * compute one theorem statement for a given perturbation:
      hodgeres --dim 4 --theorem T3.8 --perturbation "c(X)" [--show-cases]
  * verify a manifest of expected results:
      hodgeres --manifest paper_manifest.toml --format json

Exit status: 0 on success (findings are documented discrepancies of the
source, not failures), 1 when any verification verdict is FAIL, 2 for flag
errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from math import pi
from typing import Optional, Sequence

from .manifest import THEOREMS, assemble_theorem, run_manifest
from .moments import omega_value
from .scalars import DXPRIME, HPRIME, OMEGA, PI, SCURV, TR_ID, ScalarExpr
from .wick import parse_perturbation


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hodgeres",
        description="Exact residue computations for perturbed Hodge-de Rham "
                    "operators on manifolds with boundary.")
    p.add_argument("--dim", type=int, choices=(4, 6), help="manifold dimension")
    p.add_argument("--perturbation", type=str, default="0",
                   help="perturbation word, e.g. 'c(X) cb(Y)' (default: 0)")
    p.add_argument("--theorem", type=str, choices=sorted(THEOREMS),
                   help="theorem tag to compute")
    p.add_argument("--manifest", type=str, help="verify a TOML manifest")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--numeric", action="store_true",
                   help="add floating-point companions (pi, Omega bound)")
    p.add_argument("--show-cases", action="store_true",
                   help="include the per-case boundary breakdown")
    return p


def _numeric_companion(e: ScalarExpr, n: int) -> Optional[float]:
    bindings = {PI: pi, OMEGA: omega_value(n), HPRIME: 1.0, SCURV: 1.0,
                TR_ID: float(1 << n), DXPRIME: 1.0, "pair": 1.0,
                "sdiv": 1.0, "snab": 1.0, "xi": 0.0}
    try:
        return e.eval_numeric(bindings)
    except (KeyError, ValueError):
        return None


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.manifest:
        report = run_manifest(args.manifest, show_cases=args.show_cases)
        if args.format == "json":
            print(report.render_json(show_cases=args.show_cases))
        else:
            print(report.render_text(show_cases=args.show_cases))
        return 0 if report.ok else 1

    if not args.theorem:
        parser.error("need --theorem (or --manifest)")
    dim = THEOREMS[args.theorem][0]
    if args.dim is not None and args.dim != dim:
        parser.error(f"{args.theorem} lives in dimension {dim}")
    try:
        a = parse_perturbation(args.perturbation)
    except ValueError as exc:
        parser.error(str(exc))
    interior, bdry = assemble_theorem(dim, args.theorem, a)
    spec_i = (interior.prefactor * interior.integrand).substitute_token(TR_ID, 1 << dim)
    spec_b = bdry.total.substitute_token(TR_ID, 1 << dim)

    if args.format == "json":
        payload = {
            "theorem": args.theorem, "dim": dim, "perturbation": str(a),
            "interior": str(spec_i), "boundary": str(spec_b),
        }
        if args.show_cases:
            payload["cases"] = {c.spec.name: str(c.value.substitute_token(TR_ID, 1 << dim))
                                for c in bdry.cases}
        if args.numeric:
            payload["interior_numeric"] = _numeric_companion(spec_i, dim)
            payload["boundary_numeric"] = _numeric_companion(spec_b, dim)
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"{args.theorem} (n={dim}), A = {a}")
        print(f"  interior integrand: {spec_i}")
        print(f"  boundary term     : {spec_b}")
        if args.show_cases:
            for c in bdry.cases:
                print(f"    case {c.spec.name}: {c.value.substitute_token(TR_ID, 1 << dim)}")
        if args.numeric:
            ni = _numeric_companion(spec_i, dim)
            nb = _numeric_companion(spec_b, dim)
            if ni is not None:
                print(f"  interior numeric (all symbols -> 1): {ni:.6g}")
            if nb is not None:
                print(f"  boundary numeric (all symbols -> 1): {nb:.6g}")
    return 0


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()

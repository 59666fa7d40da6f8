"""Batch command-line front end with reproducible JSON job reports.

Subcommands: decompose, verify, chern2, powermap, normalform.  Every job
writes a self-contained report; re-running the echoed command reproduces
the outputs byte-identically (the elapsed-seconds field is informational
and excluded from reproducibility comparisons).
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
import time
from fractions import Fraction
from itertools import product as iter_product
from math import comb

from . import __version__
from .chernweil import QuadratureGrid, a_form_integral, chern2, clutching_example, mapping_degree
from .generators import decompose, iota, power_map
from .groebner import ideal_for_group, normal_form
from .polyring import (
    Polynomial,
    polynomial_from_dict,
    polynomial_to_dict,
    power_sum,
    two_var_power_sum,
)
from .weyl import GroupSpec, parity, symmetrize

MAX_RANK = {"U": 6, "SU": 6, "Sp": 4}
MAX_DEGREE = 12
MAX_GRID = 256
VERIFY_SEED = 20260809


def _write_report(report: dict, out: str | None) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _report(command: str, argv: list[str], inputs: dict, outputs: dict,
            ok: bool, started: float) -> dict:
    return {
        "command": command,
        "argv": argv,
        "tool_version": __version__,
        "inputs": inputs,
        "outputs": outputs,
        "ok": ok,
        "elapsed_seconds": time.perf_counter() - started,
    }


def _group(args) -> GroupSpec:
    spec = GroupSpec(args.group, args.rank)
    if spec.rank > MAX_RANK[spec.kind]:
        raise ValueError(f"rank {spec.rank} exceeds the cap {MAX_RANK[spec.kind]} for {spec.kind}")
    return spec


def cmd_decompose(args, argv: list[str]) -> tuple[dict, int]:
    started = time.perf_counter()
    spec = _group(args)
    result = decompose(spec, args.a, args.b)
    report = _report("decompose", argv,
                     {"group": spec.kind, "rank": spec.rank, "a": args.a, "b": args.b},
                     result.to_dict(), result.certified, started)
    return report, 0 if result.certified else 1


def _verify_properties(spec: GroupSpec, max_degree: int, cases: int) -> list[dict]:
    rng = random.Random(VERIFY_SEED)
    n = spec.rank
    ideal = ideal_for_group(spec)
    properties: list[dict] = []

    def rand_poly(families="xy", rank=n, terms=3, degree=3) -> Polynomial:
        out = {}
        for _ in range(terms):
            exps = [0] * (3 * rank)
            for _ in range(degree):
                fam = rng.choice(families)
                idx = rng.randrange(rank)
                slot = {"x": 0, "y": 1, "z": 2}[fam] * rank + idx
                if rng.random() < 0.7:
                    exps[slot] += 1
            out[tuple(exps)] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        return Polynomial(rank, out)

    ring_ok = all(
        (lambda p, q, s: (p + q) * s == p * s + q * s and p * q == q * p)(
            rand_poly(), rand_poly(), rand_poly())
        for _ in range(cases))
    properties.append({"name": "ring_laws", "cases": cases, "ok": ring_ok})

    hom_ok = True
    for _ in range(cases):
        p, q = rand_poly(families="z"), rand_poly(families="z")
        if iota(p * q) != iota(p) * iota(q) or iota(p + q) != iota(p) + iota(q):
            hom_ok = False
            break
        k = rng.choice([c for c in range(-4, 5) if c])
        u, v = rand_poly(), rand_poly()
        if power_map(k, u * v) != power_map(k, u) * power_map(k, v):
            hom_ok = False
            break
    properties.append({"name": "homomorphism_laws", "cases": cases, "ok": hom_ok})

    comp_ok = True
    for _ in range(cases):
        k = rng.choice([c for c in range(-4, 5) if c])
        l = rng.choice([c for c in range(-4, 5) if c])
        u = rand_poly()
        if power_map(k, power_map(l, u)) != power_map(k * l, u):
            comp_ok = False
            break
    properties.append({"name": "power_map_composition", "cases": cases, "ok": comp_ok})

    eig_ok = True
    eig_cases = 0
    for a in range(0, max_degree + 1):
        for b in range(0, max_degree + 1 - a):
            if a + b < 1:
                continue
            for k in (-3, -1, 2, 3):
                eig_cases += 1
                if power_map(k, two_var_power_sum(a, b, n)) != \
                        two_var_power_sum(a, b, n).scale(Fraction(k) ** b):
                    eig_ok = False
    properties.append({"name": "power_map_eigenvalue", "cases": eig_cases, "ok": eig_ok})

    # For Sp only even power sums die in the ideal, so the binomial
    # identity mod the ideal is an even-degree statement there.
    binom_ok = True
    binom_cases = 0
    for m in range(1, min(n if spec.kind != "Sp" else 2 * n, max_degree) + 1):
        if spec.kind == "Sp" and m % 2:
            continue
        lhs = normal_form(iota(power_sum(m, n, "z")), ideal)
        rhs = Polynomial.zero(n)
        for j in range(1, m + 1):
            rhs = rhs + two_var_power_sum(m - j, j, n).scale(comb(m, j))
        binom_cases += 1
        if lhs != normal_form(rhs, ideal):
            binom_ok = False
    properties.append({"name": "binomial_identity", "cases": binom_cases, "ok": binom_ok})

    if spec.kind == "Sp":
        mu_ok = True
        checked = 0
        for exps in iter_product(range(max_degree + 1), repeat=2 * n):
            if not 1 <= sum(exps) <= max_degree:
                continue
            I, J = exps[:n], exps[n:]
            mono = {tuple(list(I) + list(J) + [0] * n): Fraction(1)}
            sym = symmetrize(Polynomial(n, mono), spec)
            checked += 1
            if parity(I, J) == "odd":
                if not sym.is_zero():
                    mu_ok = False
                    break
            elif sym.is_zero() or any(c <= 0 for c in sym.terms.values()):
                mu_ok = False
                break
        properties.append({"name": "mu_vanishing_and_positivity", "cases": checked, "ok": mu_ok})

    sweep_ok = True
    swept = 0
    for total in range(1, max_degree + 1):
        if spec.kind in ("U", "SU") and total > n:
            continue
        if spec.kind == "Sp" and (total % 2 or total > 2 * n):
            continue
        for b in range(0, total + 1):
            res = decompose(spec, total - b, b)
            swept += 1
            if not res.certified:
                sweep_ok = False
    properties.append({"name": "certification_sweep", "cases": swept, "ok": sweep_ok})
    return properties


def cmd_verify(args, argv: list[str]) -> tuple[dict, int]:
    started = time.perf_counter()
    spec = _group(args)
    if args.max_degree > MAX_DEGREE:
        raise ValueError(f"max degree {args.max_degree} exceeds the cap {MAX_DEGREE}")
    properties = _verify_properties(spec, args.max_degree, args.cases)
    ok = all(p["ok"] for p in properties)
    report = _report("verify", argv,
                     {"group": spec.kind, "rank": spec.rank, "max_degree": args.max_degree,
                      "cases": args.cases},
                     {"properties": properties}, ok, started)
    return report, 0 if ok else 1


def cmd_chern2(args, argv: list[str]) -> tuple[dict, int]:
    started = time.perf_counter()
    sizes = {"alpha": args.grid_alpha or args.grid,
             "beta": args.grid_beta or args.grid,
             "r": args.grid_r or args.grid}
    for axis, size in sizes.items():
        if not 16 <= size <= MAX_GRID:
            raise ValueError(f"{axis}-axis grid size {size} outside the supported range [16, {MAX_GRID}]")
    phi, reference = clutching_example(args.example)
    grid = QuadratureGrid.make(sizes["alpha"], sizes["beta"], sizes["r"])
    integral = a_form_integral(phi, grid)
    value = integral / math.pi ** 2  # same hemisphere difference as chern2
    coarse = chern2(phi, grid.halved())
    outputs = {
        "example": args.example,
        "grid": grid.counts(),
        "integral_J1_plus_J2": integral,
        "c2": value,
        "reference": reference,
        "converged": bool(abs(value - coarse) < 1e-3),
    }
    if args.degree:
        outputs["mapping_degree"] = mapping_degree(phi, grid)
    report = _report("chern2", argv,
                     {"example": args.example, "grid": grid.counts()},
                     outputs, True, started)
    return report, 0


def cmd_powermap(args, argv: list[str]) -> tuple[dict, int]:
    started = time.perf_counter()
    with open(args.infile) as fh:
        poly = polynomial_from_dict(json.load(fh))
    result = power_map(args.k, poly)
    report = _report("powermap", argv, {"k": args.k, "in": args.infile},
                     polynomial_to_dict(result), True, started)
    return report, 0


def cmd_normalform(args, argv: list[str]) -> tuple[dict, int]:
    started = time.perf_counter()
    spec = _group(args)
    with open(args.infile) as fh:
        poly = polynomial_from_dict(json.load(fh))
    reduced = normal_form(poly, ideal_for_group(spec))
    report = _report("normalform", argv,
                     {"group": spec.kind, "rank": spec.rank, "in": args.infile},
                     polynomial_to_dict(reduced), True, started)
    return report, 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tcclasses",
        description="Decompose transitionally commutative characteristic classes "
                    "and evaluate second Chern numbers of SU(2) clutching data.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_group_args(p):
        p.add_argument("--group", required=True, choices=["U", "SU", "Sp"])
        p.add_argument("--rank", required=True, type=int)

    p = sub.add_parser("decompose", help="certified generator decomposition of P_{a,b}(n)")
    add_group_args(p)
    p.add_argument("--a", required=True, type=int)
    p.add_argument("--b", required=True, type=int)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="run the invariant property suites at a given scale")
    add_group_args(p)
    p.add_argument("--max-degree", required=True, type=int, dest="max_degree")
    p.add_argument("--cases", type=int, default=200, help="randomized cases per law")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("chern2", help="quadrature of the second Chern number of a clutching example")
    p.add_argument("--example", required=True,
                   help="one of: paper, constant, qpow:<d>")
    p.add_argument("--grid", type=int, default=96, help="nodes per axis")
    p.add_argument("--grid-alpha", type=int, dest="grid_alpha")
    p.add_argument("--grid-beta", type=int, dest="grid_beta")
    p.add_argument("--grid-r", type=int, dest="grid_r")
    p.add_argument("--degree", action="store_true",
                   help="also report the mapping-degree oracle")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_chern2)

    p = sub.add_parser("powermap", help="apply the k-th power map to a polynomial JSON file")
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--in", required=True, dest="infile")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_powermap)

    p = sub.add_parser("normalform", help="reduce a polynomial JSON file mod a group ideal")
    add_group_args(p)
    p.add_argument("--in", required=True, dest="infile")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_normalform)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = args.func(args, argv)
    except (ValueError, OSError, RuntimeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    _write_report(report, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())

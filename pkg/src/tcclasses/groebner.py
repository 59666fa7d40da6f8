"""Buchberger Groebner bases and normal forms for the coinvariant ideals.

Equality "mod J" is decided by reducing against a cached reduced Groebner
basis under a block elimination order (x-block before y-block before
z-block, grevlex within each block).  All three group ideals have their
generators in the x-block (plus one y-generator for SU), so reduction
rewrites high x-degrees into the staircase basis of the coinvariant
algebra and leaves the y-part intact.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .polyring import (
    Exponents,
    Polynomial,
    elementary_symmetric,
    monomial_key,
    polynomial_from_dict,
    polynomial_to_dict,
    power_sum,
    substitute,
)
from .weyl import GroupSpec

ORDER_NAME = "block-grevlex-xyz"

CACHE_ENV_VAR = "TC_CACHE_DIR"


def leading_term(p: Polynomial) -> tuple[Exponents, Fraction]:
    if p.is_zero():
        raise ValueError("the zero polynomial has no leading term")
    m = max(p.terms, key=lambda e: monomial_key(e, p.rank))
    return m, p.terms[m]


def _divides(d: Exponents, m: Exponents) -> bool:
    return all(a <= b for a, b in zip(d, m))


def _mono_mul(p: Polynomial, shift: Exponents, coeff: Fraction) -> dict[Exponents, Fraction]:
    return {tuple(e + s for e, s in zip(m, shift)): c * coeff for m, c in p.terms.items()}


def normal_form(p: Polynomial, ideal: "IdealSpec | Sequence[Polynomial]") -> Polynomial:
    """Remainder of multivariate division of ``p`` by the (Groebner) basis."""
    basis = list(ideal.basis) if isinstance(ideal, IdealSpec) else list(ideal)
    if basis and basis[0].rank != p.rank:
        raise ValueError("rank mismatch between polynomial and ideal")
    rank = p.rank
    leads = [leading_term(g) for g in basis]
    work = dict(p.terms)
    remainder: dict[Exponents, Fraction] = {}
    while work:
        m = max(work, key=lambda e: monomial_key(e, rank))
        c = work.pop(m)
        if not c:
            continue
        for g, (lm, lc) in zip(basis, leads):
            if _divides(lm, m):
                shift = tuple(a - b for a, b in zip(m, lm))
                for mm, cc in _mono_mul(g, shift, c / lc).items():
                    if mm == m:
                        continue
                    work[mm] = work.get(mm, Fraction(0)) - cc
                break
        else:
            remainder[m] = remainder.get(m, Fraction(0)) + c
    return Polynomial(rank, remainder)


def _s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    (lf, cf), (lg, cg) = leading_term(f), leading_term(g)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    tf = tuple(a - b for a, b in zip(lcm, lf))
    tg = tuple(a - b for a, b in zip(lcm, lg))
    rank = f.rank
    left = Polynomial(rank, _mono_mul(f, tf, 1 / cf))
    right = Polynomial(rank, _mono_mul(g, tg, 1 / cg))
    return left - right


def _monic(p: Polynomial) -> Polynomial:
    _, c = leading_term(p)
    return p.scale(1 / c)


def buchberger(generators: Sequence[Polynomial]) -> list[Polynomial]:
    """Compute a reduced Groebner basis with sugar-strategy pair selection."""
    gens = [g for g in generators if not g.is_zero()]
    if not gens:
        raise ValueError("cannot build a Groebner basis from an empty generator list")
    rank = gens[0].rank
    if any(g.rank != rank for g in gens):
        raise ValueError("generators must share a common rank")

    basis = [_monic(g) for g in gens]
    sugars = [g.total_degree() for g in basis]

    def pair_data(i: int, j: int):
        li, _ = leading_term(basis[i])
        lj, _ = leading_term(basis[j])
        lcm = tuple(max(a, b) for a, b in zip(li, lj))
        sugar = max(sugars[i] + sum(lcm) - sum(li), sugars[j] + sum(lcm) - sum(lj))
        return sugar, lcm

    pairs: dict[tuple[int, int], tuple[int, Exponents]] = {}
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            pairs[(i, j)] = pair_data(i, j)

    while pairs:
        (i, j), (sugar, lcm) = min(
            pairs.items(), key=lambda kv: (kv[1][0], monomial_key(kv[1][1], rank), kv[0]))
        del pairs[(i, j)]
        li, _ = leading_term(basis[i])
        lj, _ = leading_term(basis[j])
        if all(a + b == c for a, b, c in zip(li, lj, lcm)):
            continue  # coprime leading monomials: S-polynomial reduces to zero
        h = normal_form(_s_polynomial(basis[i], basis[j]), basis)
        if h.is_zero():
            continue
        basis.append(_monic(h))
        sugars.append(sugar)
        k = len(basis) - 1
        for t in range(k):
            pairs[(t, k)] = pair_data(t, k)

    return _reduce_basis(basis)


def _reduce_basis(basis: list[Polynomial]) -> list[Polynomial]:
    rank = basis[0].rank
    # Minimize: drop elements whose leading monomial another one divides.
    kept: list[Polynomial] = []
    leads = [leading_term(g)[0] for g in basis]
    for i, g in enumerate(basis):
        li = leads[i]
        if any(j != i and _divides(leads[j], li)
               and not (leads[j] == li and j > i) for j in range(len(basis))):
            continue
        kept.append(g)
    # Tail-reduce every element against the others.
    reduced: list[Polynomial] = []
    for i, g in enumerate(kept):
        others = kept[:i] + kept[i + 1:]
        r = normal_form(g, others) if others else g
        if not r.is_zero():
            reduced.append(_monic(r))
    reduced.sort(key=lambda g: monomial_key(leading_term(g)[0], rank))
    return reduced


def buchberger_criterion_holds(basis: Sequence[Polynomial]) -> bool:
    """True iff every S-polynomial of basis pairs reduces to zero."""
    basis = list(basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if not normal_form(_s_polynomial(basis[i], basis[j]), basis).is_zero():
                return False
    return True


@dataclass(frozen=True)
class IdealSpec:
    """An ideal with its generators and a cached reduced Groebner basis."""

    group: GroupSpec | None
    generators: tuple[Polynomial, ...]
    basis: tuple[Polynomial, ...]

    @classmethod
    def from_generators(cls, generators: Iterable[Polynomial],
                        group: GroupSpec | None = None) -> "IdealSpec":
        gens = tuple(generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        return cls(group, gens, tuple(buchberger(gens)))

    def verify(self) -> bool:
        """Re-check the Buchberger criterion and generator membership."""
        if not buchberger_criterion_holds(self.basis):
            return False
        return all(normal_form(g, list(self.basis)).is_zero() for g in self.generators)


def group_ideal_generators(spec: GroupSpec) -> list[Polynomial]:
    """The defining generators of the coinvariant ideal for each group kind."""
    n = spec.rank
    if spec.kind == "U":
        return [elementary_symmetric(i, n, "x") for i in range(1, n + 1)]
    if spec.kind == "SU":
        gens = [power_sum(i, n, "x") for i in range(1, n + 1)]
        gens.append(power_sum(1, n, "y"))
        return gens
    # Sp: elementary symmetric polynomials in the squared x-variables.
    squares = {("x", i): Polynomial.variable("x", i, n) ** 2 for i in range(1, n + 1)}
    return [substitute(elementary_symmetric(i, n, "x"), squares) for i in range(1, n + 1)]


_IDEAL_CACHE: dict[tuple[str, int], IdealSpec] = {}


def ideal_for_group(spec: GroupSpec, cache_dir: str | os.PathLike | None = None) -> IdealSpec:
    """The coinvariant ideal with its Groebner basis, cached per (kind, rank).

    When ``cache_dir`` (or the TC_CACHE_DIR environment variable) is set,
    bases are also persisted to disk as JSON.  A loaded basis is re-verified
    against the Buchberger criterion before use and recomputed on mismatch.
    """
    key = (spec.kind, spec.rank)
    if key in _IDEAL_CACHE:
        return _IDEAL_CACHE[key]

    directory = cache_dir if cache_dir is not None else os.environ.get(CACHE_ENV_VAR)
    path = Path(directory) / f"groebner_{spec.kind}_{spec.rank}.json" if directory else None

    ideal: IdealSpec | None = None
    if path is not None and path.exists():
        ideal = _load_basis_file(path, spec)
    if ideal is None:
        ideal = IdealSpec.from_generators(group_ideal_generators(spec), group=spec)
        if path is not None:
            _save_basis_file(path, ideal)
    _IDEAL_CACHE[key] = ideal
    return ideal


def _save_basis_file(path: Path, ideal: IdealSpec) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "group": ideal.group.to_dict() if ideal.group else None,
        "rank": ideal.generators[0].rank,
        "order": ORDER_NAME,
        "basis": [polynomial_to_dict(g) for g in ideal.basis],
    }
    path.write_text(json.dumps(payload, indent=1))


def _load_basis_file(path: Path, spec: GroupSpec) -> IdealSpec | None:
    try:
        payload = json.loads(path.read_text())
        if payload.get("order") != ORDER_NAME or payload.get("rank") != spec.rank:
            return None
        basis = tuple(polynomial_from_dict(d) for d in payload["basis"])
    except (KeyError, ValueError, json.JSONDecodeError):
        return None
    candidate = IdealSpec(spec, tuple(group_ideal_generators(spec)), basis)
    return candidate if candidate.verify() else None


def equal_mod_ideal(p: Polynomial, q: Polynomial, ideal: IdealSpec) -> bool:
    """True iff p - q lies in the ideal (its normal form vanishes)."""
    if p.rank != q.rank:
        raise ValueError("rank mismatch")
    return normal_form(p - q, ideal).is_zero()

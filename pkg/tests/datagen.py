"""Random generators for valid solvable group data, shared by the unit and
acceptance suites. Every datum returned passes validate()."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Tuple

from coherence_lab.coherence import borel_datum_type_A
from coherence_lab.root_datum import (
    GradedLieAlgebraQ,
    PadicFieldParams,
    SolvableGroupDatum,
    Weight,
    validate,
)

PRIMES = (2, 3, 5)


def _random_exponents(rng: random.Random, d: int) -> Tuple[int, ...]:
    return tuple(rng.randint(-3, 3) for _ in range(d))


def _torus_generators(rng: random.Random, d: int):
    count = rng.randint(1, 3)
    return tuple(tuple(rng.randint(-8, 8) for _ in range(d)) for _ in range(count))


def _abelian(rng: random.Random, d: int):
    n_weights = rng.randint(1, 4)
    exps = set()
    while len(exps) < n_weights:
        exps.add(_random_exponents(rng, d))
    weights = []
    basis_weights = []
    total = 0
    for i, e in enumerate(sorted(exps)):
        mult = rng.randint(1, 2)
        if total + mult > 8:
            mult = 1
        weights.append(Weight(e, mult))
        basis_weights.extend([i] * mult)
        total += mult
    lie = GradedLieAlgebraQ(len(basis_weights), basis_weights, {})
    return weights, lie


def _heisenberg(rng: random.Random, d: int):
    while True:
        a = _random_exponents(rng, d)
        b = _random_exponents(rng, d)
        c = tuple(x + y for x, y in zip(a, b))
        if len({a, b, c}) == 3:
            break
    weights = [Weight(a), Weight(b), Weight(c)]
    lie = GradedLieAlgebraQ(3, [0, 1, 2], {(0, 1): {2: Fraction(rng.randint(1, 3))}})
    return weights, lie


def _filiform(rng: random.Random, d: int):
    while True:
        a = _random_exponents(rng, d)
        b = _random_exponents(rng, d)
        c = tuple(x + y for x, y in zip(a, b))
        e = tuple(x + y for x, y in zip(a, c))
        if len({a, b, c, e}) == 4:
            break
    weights = [Weight(a), Weight(b), Weight(c), Weight(e)]
    lie = GradedLieAlgebraQ(
        4,
        [0, 1, 2, 3],
        {(0, 1): {2: Fraction(1)}, (0, 2): {3: Fraction(1)}},
    )
    return weights, lie


def random_datum(rng: random.Random) -> SolvableGroupDatum:
    """A random valid datum with d <= 3, |Phi| <= 6, dim u <= 8."""
    p = rng.choice(PRIMES)
    field = PadicFieldParams(p=p)
    kind = rng.choice(("abelian", "heisenberg", "filiform", "borel"))
    if kind == "borel":
        r = rng.randint(1, 3)
        base = borel_datum_type_A(r, field)
        datum = SolvableGroupDatum(
            field_params=field,
            torus_rank=r,
            torus_generators=_torus_generators(rng, r),
            weights=base.weights,
            lie=base.lie,
        )
    else:
        d = rng.randint(1, 3)
        weights, lie = {
            "abelian": _abelian,
            "heisenberg": _heisenberg,
            "filiform": _filiform,
        }[kind](rng, d)
        datum = SolvableGroupDatum(
            field_params=field,
            torus_rank=d,
            torus_generators=_torus_generators(rng, d),
            weights=tuple(weights),
            lie=lie,
        )
    problems = validate(datum)
    assert not problems, problems
    return datum


def random_on_ray_pair(rng: random.Random, n: int):
    """Two nonnegative vectors on a common ray, entries <= 50."""
    while True:
        base = tuple(rng.randint(0, 5) for _ in range(n))
        if any(base):
            break
    c1, c2 = rng.randint(1, 10), rng.randint(1, 10)
    x = tuple(c1 * b for b in base)
    y = tuple(c2 * b for b in base)
    return x, y


def random_off_ray_pair(rng: random.Random, n: int):
    """Two nonnegative non-parallel vectors (span never fits the cone)."""
    while True:
        x = tuple(rng.randint(0, 8) for _ in range(n))
        y = tuple(rng.randint(0, 8) for _ in range(n))
        if not any(x) or not any(y):
            continue
        # Parallel iff all 2x2 minors vanish.
        parallel = all(
            x[i] * y[j] == x[j] * y[i] for i in range(n) for j in range(i + 1, n)
        )
        if not parallel:
            return x, y

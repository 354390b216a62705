"""Walkthrough: the coherence verdict and its certificates.

A solvable datum records torus valuation generators, the weight set, and a
graded nilpotent Lie algebra. The verdict depends on a single lattice
question: is the image of the torus under the valuation map cyclic with a
nonnegative generator?
"""

from fractions import Fraction as Q

from coherence_lab import (
    GradedLieAlgebraQ,
    PadicFieldParams,
    RootSystemLabel,
    SolvableGroupDatum,
    Weight,
    borel_datum_type_A,
    decide_semisimple,
    decide_solvable,
    f_image,
)

print("=== a coherent example: diag(p, 1) acting on Q_p ===")
datum = SolvableGroupDatum(
    field_params=PadicFieldParams(p=2),
    torus_rank=1,
    torus_generators=((1,),),
    weights=(Weight((1,)),),
    lie=GradedLieAlgebraQ(1, [0], {}),
)
print("image lattice:", f_image(datum))
print("verdict:", decide_solvable(datum))
print()

print("=== the Heisenberg counterexample ===")
# diag(u, 1, 1/v) with v(u) > 0 > v(v) acting on the full unitriangular
# 3x3 group: weights 1, -1, 0 on a three-dimensional Heisenberg algebra.
heis = SolvableGroupDatum(
    field_params=PadicFieldParams(p=3),
    torus_rank=1,
    torus_generators=((1,),),
    weights=(Weight((1,)), Weight((-1,)), Weight((0,))),
    lie=GradedLieAlgebraQ(3, [0, 1, 2], {(0, 1): {2: Q(1)}}),
)
verdict = decide_solvable(heis)
print("verdict:", type(verdict).__name__)
print("mixed-sign image vector:", verdict.mixed_witness)
print("embedded witness subgroup:", verdict.embedded.kind)
print("witness subalgebra basis:")
for vec in verdict.embedded.subalgebra_basis:
    print("   ", vec)
print()

print("=== split semisimple groups: the rank rule ===")
for family, rank in (("A", 1), ("A", 2), ("G", 2)):
    v = decide_semisimple(RootSystemLabel(family, rank))
    print(f"{family}{rank}: coherent={v.coherent}  ({v.reason})")
print()

print("=== the two procedures agree through Borel data ===")
for r in (1, 2, 3):
    borel = borel_datum_type_A(r, PadicFieldParams(p=3))
    solv = decide_solvable(borel)
    semi = decide_semisimple(RootSystemLabel("A", r))
    print(
        f"rank {r}: borel -> {type(solv).__name__}, "
        f"rank rule -> coherent={semi.coherent}"
    )

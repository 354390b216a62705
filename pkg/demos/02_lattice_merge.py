"""Walkthrough: merging lattice generators inside the sign cone.

The coherence criterion reduces to: fold the image vectors pairwise; either
every merge succeeds (one nonnegative generator spans everything) or some
explicit integer combination escapes the sign cone.
"""

from coherence_lab import IntLattice, cyclic_cone_generator, merge_pair
from coherence_lab.int_lattice import ConeViolation

print("two vectors on one ray combine via Bezout coefficients:")
print("  merge (2,2), (3,3) ->", merge_pair((2, 2), (3, 3)))
print("  merge (2,4), (1,2) ->", merge_pair((2, 4), (1, 2)))
print()

print("independent directions cannot stay inside the cone:")
out = merge_pair((1, 0), (0, 1))
assert isinstance(out, ConeViolation)
print(f"  witness {out.witness} = {out.coeff_x}*(1,0) + {out.coeff_y}*(0,1)")
print()

print("a subtler case: supports differ, so a large multiple escapes:")
out = merge_pair((2, 3), (2, 0))
print(f"  witness {out.witness} = {out.coeff_x}*(2,3) + {out.coeff_y}*(2,0)")
print()

print("folding a whole lattice:")
for gens in ([(2, 4), (3, 6)], [(1, 0), (0, 1)], [(-2, -4), (3, 6)]):
    lat = IntLattice(2, gens)
    res = cyclic_cone_generator(lat)
    if res.generator is not None:
        print(f"  span{gens} -> cyclic with generator {res.generator}")
    else:
        print(f"  span{gens} -> mixed-sign witness {res.mixed_witness}")

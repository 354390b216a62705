import random
from fractions import Fraction as Q

import pytest

from coherence_lab import coherence as ch
from coherence_lab.coherence import (
    Coherent,
    InvalidDatum,
    InvalidLabel,
    NotCoherent,
    RootSystemLabel,
    borel_datum_type_A,
    decide_semisimple,
    decide_solvable,
)
from coherence_lab.root_datum import (
    GradedLieAlgebraQ,
    PadicFieldParams,
    SolvableGroupDatum,
    Weight,
    valuation_of_character,
)

from datagen import random_datum


def g3_datum(p=3):
    lie = GradedLieAlgebraQ(2, [0, 1], {})
    return SolvableGroupDatum(
        PadicFieldParams(p=p),
        1,
        ((1,),),
        (Weight((1,)), Weight((-1,))),
        lie,
    )


def h3_datum(p=3):
    lie = GradedLieAlgebraQ(3, [0, 1, 2], {(0, 1): {2: Q(1)}})
    return SolvableGroupDatum(
        PadicFieldParams(p=p),
        1,
        ((1,),),
        (Weight((1,)), Weight((-1,)), Weight((0,))),
        lie,
    )


def test_decide_g3_minimal():
    out = decide_solvable(g3_datum())
    assert isinstance(out, NotCoherent)
    assert out.embedded.kind == "G3"
    assert out.mixed_witness == (1, -1)


def test_decide_h3():
    out = decide_solvable(h3_datum())
    assert isinstance(out, NotCoherent)
    assert out.embedded.kind == "H3"
    assert out.mixed_witness == (1, -1, 0)
    assert (out.embedded.n_u, out.embedded.n_v) == (1, 1)


def test_decide_p_semidirect_qp():
    datum = SolvableGroupDatum(
        PadicFieldParams(p=2),
        1,
        ((1,),),
        (Weight((1,)),),
        GradedLieAlgebraQ(1, [0], {}),
    )
    out = decide_solvable(datum)
    assert isinstance(out, Coherent)
    assert out.generator == (1,)
    assert not out.trivial_image


def test_decide_trivial_torus_unipotent():
    datum = SolvableGroupDatum(
        PadicFieldParams(p=2),
        0,
        (),
        (Weight((), 3),),
        GradedLieAlgebraQ(3, [0, 0, 0], {(0, 1): {2: Q(1)}}),
    )
    out = decide_solvable(datum)
    assert isinstance(out, Coherent)
    assert out.trivial_image
    assert out.generator == (0,)


def test_decide_borel_sl3_not_coherent():
    out = decide_solvable(borel_datum_type_A(2, PadicFieldParams(p=3)))
    assert isinstance(out, NotCoherent)


def test_decide_rejects_invalid():
    bad = SolvableGroupDatum(
        PadicFieldParams(p=2),
        1,
        ((1,),),
        (Weight((1,)), Weight((1,))),
        GradedLieAlgebraQ(2, [0, 1], {}),
    )
    with pytest.raises(InvalidDatum):
        decide_solvable(bad)


def test_semisimple_rank_rule():
    assert decide_semisimple(RootSystemLabel("A", 1)).coherent
    assert not decide_semisimple(RootSystemLabel("A", 2)).coherent
    assert not decide_semisimple(RootSystemLabel("G", 2)).coherent


def test_root_system_label_validation():
    for fam, rank in [("A", 0), ("B", 1), ("D", 2), ("E", 9), ("F", 3), ("G", 1)]:
        with pytest.raises(InvalidLabel):
            RootSystemLabel(fam, rank)
    RootSystemLabel("D", 3)
    RootSystemLabel("E", 8)


def test_borel_rank_one_coherent():
    out = decide_solvable(borel_datum_type_A(1, PadicFieldParams(p=2)))
    assert isinstance(out, Coherent)
    assert out.generator == (1,)


def test_borel_rank_three_not_coherent():
    datum = borel_datum_type_A(3, PadicFieldParams(p=2))
    assert datum.lie.dim == 6
    out = decide_solvable(datum)
    assert isinstance(out, NotCoherent)


def test_cross_oracle_semisimple_vs_borel():
    for r in (1, 2, 3):
        semi = decide_semisimple(RootSystemLabel("A", r))
        solv = decide_solvable(borel_datum_type_A(r, PadicFieldParams(p=3)))
        assert semi.coherent == isinstance(solv, Coherent)


def test_scaling_invariance():
    rng = random.Random(6)
    for _ in range(60):
        datum = random_datum(rng)
        doubled = SolvableGroupDatum(
            datum.field_params,
            datum.torus_rank,
            tuple(tuple(2 * c for c in g) for g in datum.torus_generators),
            datum.weights,
            datum.lie,
        )
        assert isinstance(decide_solvable(datum), Coherent) == isinstance(
            decide_solvable(doubled), Coherent
        )


def test_certificate_soundness_randomized():
    rng = random.Random(7)
    seen = {Coherent: 0, NotCoherent: 0}
    for _ in range(80):
        datum = random_datum(rng)
        out = decide_solvable(datum)
        seen[type(out)] += 1
        images = [
            tuple(
                sum(w.exponents[i] * v[i] for i in range(datum.torus_rank))
                for w in datum.weights
            )
            for v in datum.torus_generators
        ]
        if isinstance(out, Coherent):
            from coherence_lab.int_lattice import IntLattice

            ray = IntLattice(len(datum.weights), [out.generator])
            for img in images:
                assert ray.contains(img)
        else:
            combo = out.torus_combination
            recomputed = tuple(
                sum(combo[a] * images[a][i] for a in range(len(images)))
                for i in range(len(datum.weights))
            )
            assert recomputed == out.mixed_witness
            t_val = tuple(
                sum(combo[a] * datum.torus_generators[a][i] for a in range(len(combo)))
                for i in range(datum.torus_rank)
            )
            w = out.embedded
            assert valuation_of_character(datum.weights[w.alpha], t_val) == w.n_alpha
            assert valuation_of_character(datum.weights[w.beta], t_val) == w.n_beta
            assert w.n_alpha > 0 > w.n_beta
    # The generator must exercise both branches to be worth anything.
    assert seen[Coherent] > 5 and seen[NotCoherent] > 5

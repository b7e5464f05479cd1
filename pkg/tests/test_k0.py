import random

import pytest

from zlincat.abgroup import AbHom
from zlincat.builders import (cyclic_shift_data, graded_category, sum_of_fields,
                              zmod_category)
from zlincat.completion import IdemObject, MatMorphism, mat_compose
from zlincat.intlin import IntMatrix
from zlincat.k0 import (RingMatrix, SemisimpleWitness, auto_witness,
                        block_matrix_ring, class_of, default_sample,
                        direct_sum_idem, k0_bridge_check, negative_k_report,
                        rank_mod_p, verify_witness)
from zlincat.resolutions import check_regular
from zlincat.ringify import build_ring


def _ctilde(n):
    cat = graded_category(cyclic_shift_data(n))
    ring = build_ring(cat)
    w = auto_witness(cat, ring, {"construction": {"kind": "cyclic-shift", "base": "Z"}})
    return cat, ring, w


def test_identity_witness_on_block_ring():
    ring = block_matrix_ring([("Z", 2), (3, 1)])
    w = SemisimpleWitness(ring=ring, blocks=(("Z", 2), (3, 1)),
                          map=AbHom.identity(ring.carrier), block_ring=ring)
    assert verify_witness(ring, w).ok


def test_canonical_witness_ctilde3():
    _, ring, w = _ctilde(3)
    res = verify_witness(ring, w)
    assert res.ok and res.pairs_checked == 81


def test_swapped_witness_fails_with_named_pair():
    _, ring, w = _ctilde(2)
    cols = [list(w.map.matrix.column(j)) for j in range(w.map.matrix.cols)]
    cols[0], cols[1] = cols[1], cols[0]
    bad = SemisimpleWitness(
        ring=ring, blocks=w.blocks,
        map=AbHom(ring.carrier, w.block_ring.carrier,
                  IntMatrix.from_columns(cols, w.block_ring.carrier.ngens)),
        block_ring=w.block_ring)
    res = verify_witness(ring, bad)
    assert not res.ok
    named = [f for f in res.failures if f[0] == "multiplicativity"]
    assert named and len(named[0]) == 3


def test_class_of_zero_idempotent():
    cat, ring, w = _ctilde(2)
    p = IdemObject(cat, ("g0",), MatMorphism.zero(cat, ("g0",), ("g0",)))
    assert class_of(p, w) == (0,)


def test_class_of_representable():
    cat, ring, w = _ctilde(2)
    assert class_of(IdemObject.full(cat, ("g0",)), w) == (1,)
    assert class_of(IdemObject.full(cat, ("g1",)), w) == (1,)


def test_class_of_diag_idempotent_matches_one_tuple():
    cat, ring, w = _ctilde(2)
    carrier = ("g0", "g1")
    rows = [[cat.identity("g0"), cat.zero_mor("g1", "g0")],
            [cat.zero_mor("g0", "g1"), cat.zero_mor("g1", "g1")]]
    p = IdemObject(cat, carrier, MatMorphism(cat, carrier, carrier, rows))
    assert class_of(p, w) == (1,)
    assert class_of(p, w) == class_of(IdemObject.full(cat, ("g0",)), w)


def test_class_of_identity_gives_block_sizes():
    cat, ring, w = _ctilde(3)
    assert class_of(IdemObject.full(cat, ("g0", "g1", "g2")), w) == (3,)
    sf = sum_of_fields([2, 3])
    rsf = build_ring(sf)
    wsf = auto_witness(sf, rsf, {"construction": {"kind": "sum-of-fields",
                                                  "primes": [2, 3]}})
    assert class_of(IdemObject.full(sf, ("F2", "F3")), wsf) == (1, 1)


def test_class_sum_of_fields_unit_a():
    sf = sum_of_fields([2, 3])
    rsf = build_ring(sf)
    wsf = auto_witness(sf, rsf, {"construction": {"kind": "sum-of-fields",
                                                  "primes": [2, 3]}})
    assert verify_witness(rsf, wsf).ok
    assert class_of(IdemObject.full(sf, ("F2",)), wsf) == (1, 0)
    assert class_of(IdemObject.full(sf, ("F3",)), wsf) == (0, 1)


def test_class_invariant_under_conjugation():
    cat, ring, w = _ctilde(2)
    rng = random.Random(12)
    carrier = ("g0", "g1")
    rows = [[cat.identity("g0"), cat.zero_mor("g1", "g0")],
            [cat.zero_mor("g0", "g1"), cat.zero_mor("g1", "g1")]]
    p = MatMorphism(cat, carrier, carrier, rows)
    base_class = class_of(IdemObject(cat, carrier, p), w)
    for _ in range(10):
        t = rng.randint(-3, 3)
        u = MatMorphism(cat, carrier, carrier,
                        [[cat.identity("g0"), cat.mor("g1", "g0", [t])],
                         [cat.zero_mor("g0", "g1"), cat.identity("g1")]])
        u_inv = MatMorphism(cat, carrier, carrier,
                            [[cat.identity("g0"), cat.mor("g1", "g0", [-t])],
                             [cat.zero_mor("g0", "g1"), cat.identity("g1")]])
        q = mat_compose(u, mat_compose(p, u_inv))
        assert class_of(IdemObject(cat, carrier, q), w) == base_class


def test_rank_mod_p():
    assert rank_mod_p([[1, 0], [0, 1]], 2) == 2
    assert rank_mod_p([[2, 0], [0, 1]], 2) == 1
    assert rank_mod_p([[1, 1], [1, 1]], 3) == 1


def test_class_rejects_non_idempotent():
    cat, ring, w = _ctilde(2)
    q = RingMatrix(ring, [[ring.element([2, 0, 0, 0]).coeffs]])
    with pytest.raises(ValueError):
        class_of(q, w)


def test_bridge_ctilde2():
    cat, ring, w = _ctilde(2)
    rep = k0_bridge_check(cat, w, default_sample(cat, 10))
    assert rep.ok


def test_bridge_sum_of_fields():
    sf = sum_of_fields([2, 3])
    rsf = build_ring(sf)
    wsf = auto_witness(sf, rsf, {"construction": {"kind": "sum-of-fields",
                                                  "primes": [2, 3]}})
    rep = k0_bridge_check(sf, wsf, default_sample(sf, 10))
    assert rep.ok


def test_direct_sum_additivity():
    cat, ring, w = _ctilde(2)
    rng = random.Random(77)
    samples = default_sample(cat, 6)
    for i in range(len(samples) - 1):
        s = direct_sum_idem(samples[i], samples[i + 1])
        assert class_of(s, w) == tuple(
            a + b for a, b in zip(class_of(samples[i], w),
                                  class_of(samples[i + 1], w)))


def test_negative_k_certified_family():
    cat, ring, w = _ctilde(2)
    rep = negative_k_report(cat, {"kind": "known-family",
                                  "family": "matrix-ring-over-Z"})
    assert rep["claims"]
    for claim in rep["claims"]:
        assert claim["basis"] == "citation"
        assert claim["tier"] == "certified-family"


def test_negative_k_evidence_tier():
    cat = zmod_category(5)
    dep = check_regular(cat, [("g", MatMorphism.single(cat.mor("*", "*", [1])))],
                        depth=2)
    rep = negative_k_report(cat, {"kind": "depth-certificates",
                                  "report": dep.to_dict()})
    assert rep["claims"]
    for claim in rep["claims"]:
        assert claim["basis"] == "citation"
        assert claim["tier"] == "bounded-depth-evidence"
    assert any("K_i = 0" in c["statement"] for c in rep["claims"])


def test_negative_k_no_claim_when_inconclusive():
    cat = zmod_category(4)
    dep = check_regular(cat, [("mul2", MatMorphism.single(cat.mor("*", "*", [2])))],
                        depth=3)
    rep = negative_k_report(cat, {"kind": "depth-certificates",
                                  "report": dep.to_dict()})
    assert not rep["claims"]
    assert rep["notes"]

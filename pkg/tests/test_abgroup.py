import itertools
import random

from zlincat.abgroup import (AbHom, FpAbelianGroup, cokernel, direct_sum, image,
                             in_image, is_exact_at, is_iso, kernel, solve_affine)
from zlincat.intlin import IntMatrix


def test_invariants():
    assert FpAbelianGroup(3).invariants == (3, ())
    assert FpAbelianGroup(2, [[2, 0], [0, 0]]).invariants == (1, (2,))
    assert FpAbelianGroup(1, [[1]]).invariants == (0, ())


def test_reduce_canonical():
    g = FpAbelianGroup.cyclic(4)
    assert g.reduce((5,)) == (1,)
    assert g.reduce((-1,)) == (3,)
    assert g.is_zero((8,))


def test_kernel_mul2_on_z():
    z = FpAbelianGroup.free(1)
    grp, _ = kernel(AbHom(z, z, [[2]]))
    assert grp.is_trivial()


def test_kernel_reduction_map():
    z = FpAbelianGroup.free(1)
    z2 = FpAbelianGroup.cyclic(2)
    grp, incl = kernel(AbHom(z, z2, [[1]]))
    assert grp.invariants == (1, ())
    assert incl.matrix.data == ((2,),)


def test_kernel_mul2_on_z4():
    z4 = FpAbelianGroup.cyclic(4)
    grp, incl = kernel(AbHom(z4, z4, [[2]]))
    assert grp.invariants == (0, (2,))
    assert incl.matrix.data == ((2,),)
    # the inclusion followed by the map is zero
    h = AbHom(z4, z4, [[2]])
    for j in range(grp.ngens):
        assert z4.is_zero(h.matrix.apply(incl.matrix.column(j)))


def test_cokernel():
    z = FpAbelianGroup.free(1)
    grp, _ = cokernel(AbHom(z, z, [[2]]))
    assert grp.invariants == (0, (2,))


def test_exactness_examples():
    z = FpAbelianGroup.free(1)
    z2 = FpAbelianGroup.cyclic(2)
    triv = FpAbelianGroup.trivial()
    assert is_exact_at(AbHom(triv, z, IntMatrix.zeros(1, 0)), AbHom(z, z, [[1]]))
    assert is_exact_at(AbHom(z, z, [[2]]), AbHom(z, z2, [[1]]))
    assert not is_exact_at(AbHom(z, z, [[4]]), AbHom(z, z2, [[1]]))


def _enumerate_exact(f: AbHom, g: AbHom) -> bool:
    mid = f.tgt
    img = {f.apply(x) for x in _elements(f.src)}
    ker = {y for y in _elements(mid) if g.tgt.is_zero(g.matrix.apply(y))}
    return img == ker


def _elements(g: FpAbelianGroup):
    return g.elements()


def _random_hom(rng, src, tgt, tries=50):
    for _ in range(tries):
        mat = IntMatrix([[rng.randint(-4, 4) for _ in range(src.ngens)]
                         for _ in range(tgt.ngens)])
        h = AbHom(src, tgt, mat)
        if h.is_well_defined():
            return h
    return AbHom.zero(src, tgt)


def test_exactness_agrees_with_enumeration():
    """is_exact_at vs brute-force subgroup enumeration, groups of order <= 64."""
    rng = random.Random(99)
    groups = [FpAbelianGroup.cyclic(2), FpAbelianGroup.cyclic(4),
              FpAbelianGroup.cyclic(8), FpAbelianGroup(2, [[2, 0], [0, 4]]),
              FpAbelianGroup(2, [[4, 0], [0, 8]]), FpAbelianGroup(2, [[3, 0], [0, 9]])]
    cases = 0
    for g1, g2, g3 in itertools.product(groups, repeat=3):
        order = (g1.order() or 10 ** 9) * 1
        if (g2.order() or 10 ** 9) > 64:
            continue
        f = _random_hom(rng, g1, g2)
        g = _random_hom(rng, g2, g3)
        assert is_exact_at(f, g) == _enumerate_exact(f, g)
        cases += 1
    assert cases >= 30


def test_kernel_inclusion_composes_to_zero():
    rng = random.Random(55)
    groups = [FpAbelianGroup.free(1), FpAbelianGroup.free(2),
              FpAbelianGroup.cyclic(4), FpAbelianGroup(2, [[2, 0], [0, 6]]),
              FpAbelianGroup(2, [[3, 1], [0, 9]])]
    cases = 0
    for src in groups:
        for tgt in groups:
            h = _random_hom(rng, src, tgt)
            grp, incl = kernel(h)
            for j in range(grp.ngens):
                assert tgt.is_zero(h.matrix.apply(incl.matrix.column(j)))
            assert incl.is_well_defined()
            cases += 1
    assert cases == len(groups) ** 2


def test_image_and_membership():
    z = FpAbelianGroup.free(1)
    h = AbHom(z, z, [[6]])
    grp, incl = image(h)
    assert grp.invariants == (1, ())
    assert in_image(h, (12,))
    assert not in_image(h, (3,))


def test_is_iso():
    z4 = FpAbelianGroup.cyclic(4)
    assert is_iso(AbHom(z4, z4, [[3]]))
    assert not is_iso(AbHom(z4, z4, [[2]]))
    z = FpAbelianGroup.free(1)
    assert not is_iso(AbHom(z, z, [[2]]))
    assert is_iso(AbHom(z, z, [[-1]]))


def test_direct_sum_offsets():
    a = FpAbelianGroup.cyclic(2)
    b = FpAbelianGroup.free(1)
    s, offs = direct_sum([a, b])
    assert s.ngens == 2 and offs == [0, 1]
    assert s.invariants == (1, (2,))


def test_solve_affine_congruences():
    z4 = FpAbelianGroup.cyclic(4)
    # 2x = 2 (mod 4) and 2x = 0 (mod 4) is infeasible
    assert solve_affine([(IntMatrix([[2]]), z4, (2,)),
                         (IntMatrix([[2]]), z4, (0,))], 1) is None
    sol = solve_affine([(IntMatrix([[2]]), z4, (2,))], 1)
    assert sol is not None and (2 * sol[0]) % 4 == 2

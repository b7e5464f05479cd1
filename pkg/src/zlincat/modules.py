"""Finitely presented functor modules and their ring-module counterparts.

A functor module is the cokernel of a map of representable sums, recorded by
its presentation matrix.  The same matrix, reread as acting on quasi-free
column modules over the associated ring, presents the corresponding ring
module; the sum-over-objects and Peirce-restriction functors are therefore
matrix bookkeeping, and the point of this module is to certify (not assume)
that the bookkeeping gives isomorphisms and preserves exactness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .abgroup import AbHom, FpAbelianGroup, cokernel, direct_sum, is_exact_at, is_iso, solve_affine
from .intlin import IntMatrix
from .zcat import ZCategory
from .completion import HomSpace, MatMorphism, induced_post, mat_compose


@dataclass
class EvalData:
    group: FpAbelianGroup
    projection: AbHom          # from the ambient hom space onto the value
    space_in: HomSpace
    space_out: HomSpace
    induced: AbHom


class FpFunctor:
    """Cokernel of hom(-, src-tuple) -> hom(-, tgt-tuple) given by a matrix."""

    def __init__(self, pres: MatMorphism):
        self.cat = pres.cat
        self.pres = pres

    @classmethod
    def representable(cls, cat: ZCategory, b: str) -> "FpFunctor":
        return cls(MatMorphism.zero(cat, (), (b,)))

    @classmethod
    def free(cls, cat: ZCategory, tup: Sequence[str]) -> "FpFunctor":
        return cls(MatMorphism.zero(cat, (), tuple(tup)))

    def evaluate(self, c: str) -> EvalData:
        if c not in self.cat.objects:
            raise ValueError("unknown object %r" % c)
        h, sp_in, sp_out = induced_post(self.pres, (c,))
        grp, proj = cokernel(h)
        return EvalData(group=grp, projection=proj, space_in=sp_in,
                        space_out=sp_out, induced=h)

    def direct_sum(self, other: "FpFunctor") -> "FpFunctor":
        cat = self.cat
        src = self.pres.src + other.pres.src
        tgt = self.pres.tgt + other.pres.tgt
        rows = []
        for j, b in enumerate(tgt):
            row = []
            for i, a in enumerate(src):
                if j < len(self.pres.tgt) and i < len(self.pres.src):
                    row.append(self.pres.entries[j][i])
                elif j >= len(self.pres.tgt) and i >= len(self.pres.src):
                    row.append(other.pres.entries[j - len(self.pres.tgt)][i - len(self.pres.src)])
                else:
                    row.append(cat.zero_mor(a, b))
            rows.append(row)
        return FpFunctor(MatMorphism(cat, src, tgt, rows))

    def __repr__(self):
        return "FpFunctor(%r -> %r)" % (list(self.pres.src), list(self.pres.tgt))


class FpRingModule:
    """Quasi-free presentation over the associated ring, one column per id_a."""

    def __init__(self, cat: ZCategory, matrix: MatMorphism):
        self.cat = cat
        self.matrix = matrix
        self.row_objects = matrix.tgt
        self.col_objects = matrix.src
        # carrier = cokernel of the block-diagonal induced map over all objects
        homs = []
        in_groups = []
        out_groups = []
        self._eval: Dict[str, EvalData] = {}
        for c in cat.objects:
            h, sp_in, sp_out = induced_post(matrix, (c,))
            grp, proj = cokernel(h)
            self._eval[c] = EvalData(group=grp, projection=proj, space_in=sp_in,
                                     space_out=sp_out, induced=h)
            homs.append(h)
            in_groups.append(sp_in.group)
            out_groups.append(sp_out.group)
        big_in, in_off = direct_sum(in_groups)
        big_out, self.block_offsets = direct_sum(out_groups)
        rows = []
        for bi, h in enumerate(homs):
            for r in range(h.tgt.ngens):
                row = [0] * big_in.ngens
                off = in_off[bi]
                row[off:off + h.src.ngens] = list(h.matrix.data[r])
                rows.append(row)
        big_map = AbHom(big_in, big_out, IntMatrix(rows, len(rows), big_in.ngens))
        self.carrier, self.carrier_projection = cokernel(big_map)

    def value_at(self, a: str) -> EvalData:
        """The Peirce piece carrier * id_a: cokernel of the id_a columns."""
        return self._eval[a]

    def direct_sum(self, other: "FpRingModule") -> "FpRingModule":
        f = FpFunctor(self.matrix).direct_sum(FpFunctor(other.matrix))
        return FpRingModule(self.cat, f.pres)

    def __repr__(self):
        return "FpRingModule(cols=%r, rows=%r)" % (list(self.col_objects), list(self.row_objects))


def to_ring_module(f: FpFunctor) -> FpRingModule:
    """The sum-over-objects functor: same presentation matrix over the ring."""
    return FpRingModule(f.cat, f.pres)


def restrict(n: FpRingModule) -> FpFunctor:
    """The Peirce-restriction functor: same matrix read back objectwise."""
    return FpFunctor(n.matrix)


class PresentedMap:
    """Map of presented modules induced by a matrix between the row tuples.

    Well-definedness needs the matrix composed with the source presentation
    to factor through the target presentation; the factoring witness is
    found by exact linear solving, never assumed.
    """

    def __init__(self, src: FpFunctor, tgt: FpFunctor, t: MatMorphism,
                 check: bool = True):
        if t.src != src.pres.tgt or t.tgt != tgt.pres.tgt:
            raise ValueError("matrix does not connect the presentation rows")
        self.src = src
        self.tgt = tgt
        self.t = t
        self.cat = src.cat
        if check and not self._factors():
            raise ValueError("map does not descend to the cokernels")

    def _factors(self) -> bool:
        cat = self.cat
        tp = mat_compose(self.t, self.src.pres)
        if not self.tgt.pres.src:
            # target presentation has no columns; need T o P = 0 on the nose
            return tp.is_zero()
        # solve T o P = Q o S for an exact witness S
        sp_unknown = HomSpace(cat, self.src.pres.src, self.tgt.pres.src)
        n = sp_unknown.group.ngens
        target_space = HomSpace(cat, self.src.pres.src, self.tgt.pres.tgt)
        cols = []
        for s_basis in sp_unknown.basis():
            cols.append(target_space.flatten(mat_compose(self.tgt.pres, s_basis)))
        lhs = IntMatrix.from_columns(cols, target_space.group.ngens)
        rhs = target_space.flatten(tp)
        return solve_affine([(lhs, target_space.group, rhs)], n) is not None

    def at(self, c: str) -> AbHom:
        """Induced map between the values at c."""
        ev_s = self.src.evaluate(c)
        ev_t = self.tgt.evaluate(c)
        h, _, _ = induced_post(self.t, (c,), sp_in=ev_s.space_out, sp_out=ev_t.space_out)
        return AbHom(ev_s.group, ev_t.group, h.matrix)

    def total(self) -> AbHom:
        """The sum-over-objects map between the ring-module carriers."""
        m_src = to_ring_module(self.src)
        m_tgt = to_ring_module(self.tgt)
        rows_total = m_tgt.carrier.ngens
        cols_total = m_src.carrier.ngens
        mat = [[0] * cols_total for _ in range(rows_total)]
        for bi, c in enumerate(self.cat.objects):
            h = self.at(c)
            roff = m_tgt.block_offsets[bi]
            coff = m_src.block_offsets[bi]
            for r in range(h.matrix.rows):
                for s in range(h.matrix.cols):
                    mat[roff + r][coff + s] = h.matrix.data[r][s]
        return AbHom(m_src.carrier, m_tgt.carrier, IntMatrix(mat, rows_total, cols_total))


def identity_map(f: FpFunctor) -> PresentedMap:
    return PresentedMap(f, f, MatMorphism.identity(f.cat, f.pres.tgt), check=False)


def roundtrip_check(f: FpFunctor) -> bool:
    """Certify both round trips on an object: functor -> ring module -> functor
    and back, with the canonical comparison maps verified as isomorphisms."""
    cat = f.cat
    n = to_ring_module(f)
    g = restrict(n)
    for c in cat.objects:
        ev_f = f.evaluate(c)
        ev_g = g.evaluate(c)
        cmp_map = AbHom(ev_f.group, ev_g.group, IntMatrix.identity(ev_f.group.ngens))
        if not is_iso(cmp_map):
            return False
    n2 = to_ring_module(g)
    cmp_carrier = AbHom(n.carrier, n2.carrier, IntMatrix.identity(n.carrier.ngens))
    if not is_iso(cmp_carrier):
        return False
    # carrier decomposes as the sum of the objectwise values
    summed, _ = direct_sum([f.evaluate(c).group for c in cat.objects])
    return summed.invariants == n.carrier.invariants


def exactness_transport(phi: PresentedMap, psi: PresentedMap, direction: str) -> bool:
    """Transport a certified-exact composable pair and test exactness there.

    direction "to_ring_module": premise objectwise, conclusion on carriers.
    direction "restrict": premise on carriers, conclusion objectwise.
    """
    if not (phi.tgt is psi.src or phi.tgt.pres == psi.src.pres):
        raise ValueError("maps are not composable")
    if direction == "to_ring_module":
        for c in phi.cat.objects:
            if not is_exact_at(phi.at(c), psi.at(c)):
                raise ValueError("input pair is not exact at object %r" % c)
        return is_exact_at(phi.total(), psi.total())
    if direction == "restrict":
        if not is_exact_at(phi.total(), psi.total()):
            raise ValueError("input pair is not exact on the carriers")
        return all(is_exact_at(phi.at(c), psi.at(c)) for c in phi.cat.objects)
    raise ValueError("direction must be 'to_ring_module' or 'restrict'")


def find_quasi_inverse(f: MatMorphism) -> Optional[MatMorphism]:
    """Solve f o h o f = f exactly; success certifies coker(f_*) projective."""
    cat = f.cat
    sp_h = HomSpace(cat, f.tgt, f.src)
    sp_out = HomSpace(cat, f.src, f.tgt)
    n = sp_h.group.ngens
    cols = []
    for h in sp_h.basis():
        cols.append(sp_out.flatten(mat_compose(mat_compose(f, h), f)))
    lhs = IntMatrix.from_columns(cols, sp_out.group.ngens)
    rhs = sp_out.flatten(f)
    sol = solve_affine([(lhs, sp_out.group, rhs)], n)
    if sol is None:
        return None
    return sp_h.unflatten(sol)


def quasi_inverse_splits_projection(f: MatMorphism, h: MatMorphism) -> bool:
    """Certify that a quasi-inverse splits the cokernel projection.

    From f h f = f the endomorphism 1 - f h of the target kills nothing of
    the quotient and fixes it: checked objectwise as pi o s = id on the
    cokernel presentation, with s well-defined.
    """
    cat = f.cat
    e = mat_compose(f, h)
    for c in cat.objects:
        hom_f, sp_in, sp_out = induced_post(f, (c,))
        grp, proj = cokernel(hom_f)
        e_ind, _, _ = induced_post(e, (c,), sp_in=sp_out, sp_out=sp_out)
        n = sp_out.group.ngens
        sec = IntMatrix.identity(n).add(e_ind.matrix.neg())
        s = AbHom(grp, sp_out.group, sec)
        if not s.is_well_defined():
            return False
        comp = proj.compose(s)
        if not comp.equal(AbHom.identity(grp)):
            return False
    return True


# ---------------------------------------------------------------------------
# deterministic random sampling
# ---------------------------------------------------------------------------

def random_matmorphism(cat: ZCategory, rng: random.Random, min_len: int = 1,
                       max_len: int = 2, coeff: int = 2) -> MatMorphism:
    src = tuple(rng.choice(cat.objects) for _ in range(rng.randint(min_len, max_len)))
    tgt = tuple(rng.choice(cat.objects) for _ in range(rng.randint(min_len, max_len)))
    rows = []
    for b in tgt:
        row = []
        for a in src:
            ng = cat.hom(a, b).ngens
            row.append(cat.mor(a, b, [rng.randint(-coeff, coeff) for _ in range(ng)]))
        rows.append(row)
    return MatMorphism(cat, src, tgt, rows)


def random_fp_functor(cat: ZCategory, rng: random.Random) -> FpFunctor:
    tgt_len = rng.randint(1, 2)
    src_len = rng.randint(0, 2)
    tgt = tuple(rng.choice(cat.objects) for _ in range(tgt_len))
    src = tuple(rng.choice(cat.objects) for _ in range(src_len))
    rows = []
    for b in tgt:
        row = []
        for a in src:
            ng = cat.hom(a, b).ngens
            row.append(cat.mor(a, b, [rng.randint(-2, 2) for _ in range(ng)]))
        rows.append(row)
    return FpFunctor(MatMorphism(cat, src, tgt, rows))

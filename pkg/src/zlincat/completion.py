"""The free additive completion and the idempotent completion.

Objects of the additive completion are finite tuples of category objects
(the empty tuple is the zero object); morphisms are matrices of category
morphisms composed by row-by-column multiplication.  Hom-groups between
tuples are direct sums of the component hom-groups in a fixed
(target, source) lexicographic block order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .abgroup import AbHom, FpAbelianGroup, direct_sum, kernel, solve_affine
from .intlin import IntMatrix
from .zcat import Morphism, ZCategory


class MatMorphism:
    """Matrix of morphisms between tuple objects; entries[j][i]: src[i] -> tgt[j]."""

    __slots__ = ("cat", "src", "tgt", "entries")

    def __init__(self, cat: ZCategory, src: Sequence[str], tgt: Sequence[str],
                 entries: Sequence[Sequence[Morphism]]):
        src = tuple(src)
        tgt = tuple(tgt)
        ent = tuple(tuple(row) for row in entries)
        if len(ent) != len(tgt) or any(len(row) != len(src) for row in ent):
            raise ValueError("entry grid must be len(tgt) x len(src)")
        for j, row in enumerate(ent):
            for i, m in enumerate(row):
                if m.src != src[i] or m.tgt != tgt[j]:
                    raise ValueError("entry (%d,%d) has endpoints %s->%s, expected %s->%s"
                                     % (j, i, m.src, m.tgt, src[i], tgt[j]))
        self.cat = cat
        self.src = src
        self.tgt = tgt
        self.entries = ent

    @classmethod
    def zero(cls, cat: ZCategory, src: Sequence[str], tgt: Sequence[str]) -> "MatMorphism":
        return cls(cat, src, tgt,
                   [[cat.zero_mor(a, b) for a in src] for b in tgt])

    @classmethod
    def identity(cls, cat: ZCategory, tup: Sequence[str]) -> "MatMorphism":
        tup = tuple(tup)
        return cls(cat, tup, tup,
                   [[cat.identity(a) if i == j else cat.zero_mor(a, tup[j])
                     for i, a in enumerate(tup)] for j in range(len(tup))])

    @classmethod
    def single(cls, m: Morphism) -> "MatMorphism":
        return cls(m.cat, (m.src,), (m.tgt,), ((m,),))

    def __add__(self, other: "MatMorphism") -> "MatMorphism":
        if self.src != other.src or self.tgt != other.tgt:
            raise ValueError("shape mismatch")
        return MatMorphism(self.cat, self.src, self.tgt,
                           [[a + b for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.entries, other.entries)])

    def __sub__(self, other: "MatMorphism") -> "MatMorphism":
        return self + other.scale(-1)

    def scale(self, c: int) -> "MatMorphism":
        return MatMorphism(self.cat, self.src, self.tgt,
                           [[m.scale(c) for m in row] for row in self.entries])

    def is_zero(self) -> bool:
        return all(m.is_zero() for row in self.entries for m in row)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MatMorphism) and self.src == other.src
                and self.tgt == other.tgt and self.entries == other.entries)

    def __hash__(self):
        return hash((self.src, self.tgt, self.entries))

    def __repr__(self):
        return "MatMorphism(%r -> %r)" % (list(self.src), list(self.tgt))


def mat_compose(g: MatMorphism, f: MatMorphism) -> MatMorphism:
    """Row-by-column composite g o f."""
    if f.tgt != g.src:
        raise ValueError("non-composable tuple morphisms")
    cat = g.cat
    rows = []
    for j in range(len(g.tgt)):
        row = []
        for i in range(len(f.src)):
            acc = cat.zero_mor(f.src[i], g.tgt[j])
            for l in range(len(g.src)):
                acc = acc + cat.compose(g.entries[j][l], f.entries[l][i])
            row.append(acc)
        rows.append(row)
    return MatMorphism(cat, f.src, g.tgt, rows)


class HomSpace:
    """hom(src-tuple, tgt-tuple) as one presented group with block layout.

    Blocks are ordered (j, i)-lexicographically: target component outermost.
    """

    def __init__(self, cat: ZCategory, src: Sequence[str], tgt: Sequence[str]):
        self.cat = cat
        self.src = tuple(src)
        self.tgt = tuple(tgt)
        groups = []
        self.block_index: dict = {}
        slot = 0
        for j, b in enumerate(self.tgt):
            for i, a in enumerate(self.src):
                groups.append(cat.hom(a, b))
                self.block_index[(j, i)] = slot
                slot += 1
        self.group, self.offsets = direct_sum(groups)
        self.block_groups = groups

    def flatten(self, mm: MatMorphism) -> tuple:
        if mm.src != self.src or mm.tgt != self.tgt:
            raise ValueError("morphism does not live in this hom space")
        vec = [0] * self.group.ngens
        for (j, i), slot in self.block_index.items():
            off = self.offsets[slot]
            coeffs = mm.entries[j][i].coeffs
            vec[off:off + len(coeffs)] = list(coeffs)
        return self.group.reduce(vec)

    def unflatten(self, vec: Sequence[int]) -> MatMorphism:
        vec = self.group.reduce(vec)
        rows = []
        for j, b in enumerate(self.tgt):
            row = []
            for i, a in enumerate(self.src):
                slot = self.block_index[(j, i)]
                off = self.offsets[slot]
                n = self.block_groups[slot].ngens
                row.append(self.cat.mor(a, b, vec[off:off + n]))
            rows.append(row)
        return MatMorphism(self.cat, self.src, self.tgt, rows)

    def basis(self) -> List[MatMorphism]:
        out = []
        for k in range(self.group.ngens):
            v = [0] * self.group.ngens
            v[k] = 1
            out.append(self.unflatten(v))
        return out


def hom_tuple(cat: ZCategory, a: Sequence[str], c: Sequence[str]) -> FpAbelianGroup:
    """Direct sum of the component hom-groups; empty tuples give the trivial group."""
    return HomSpace(cat, a, c).group


def induced_post(f: MatMorphism, a: Sequence[str],
                 sp_in: HomSpace | None = None,
                 sp_out: HomSpace | None = None) -> tuple:
    """AbHom hom(a, f.src) -> hom(a, f.tgt), h |-> f o h; returns (hom, in, out)."""
    sp_in = sp_in or HomSpace(f.cat, a, f.src)
    sp_out = sp_out or HomSpace(f.cat, a, f.tgt)
    cols = [sp_out.flatten(mat_compose(f, h)) for h in sp_in.basis()]
    return (AbHom(sp_in.group, sp_out.group,
                  IntMatrix.from_columns(cols, sp_out.group.ngens)), sp_in, sp_out)


def induced_pre(f: MatMorphism, c: Sequence[str],
                sp_in: HomSpace | None = None,
                sp_out: HomSpace | None = None) -> tuple:
    """AbHom hom(f.tgt, c) -> hom(f.src, c), h |-> h o f; returns (hom, in, out)."""
    sp_in = sp_in or HomSpace(f.cat, f.tgt, c)
    sp_out = sp_out or HomSpace(f.cat, f.src, c)
    cols = [sp_out.flatten(mat_compose(h, f)) for h in sp_in.basis()]
    return (AbHom(sp_in.group, sp_out.group,
                  IntMatrix.from_columns(cols, sp_out.group.ngens)), sp_in, sp_out)


class IdemObject:
    """Object of the idempotent completion: a tuple with an idempotent on it."""

    __slots__ = ("cat", "carrier", "p")

    def __init__(self, cat: ZCategory, carrier: Sequence[str], p: MatMorphism):
        carrier = tuple(carrier)
        if p.src != carrier or p.tgt != carrier:
            raise ValueError("idempotent must be an endomorphism of the carrier")
        if mat_compose(p, p) != p:
            raise ValueError("p o p != p: not an idempotent")
        self.cat = cat
        self.carrier = carrier
        self.p = p

    @classmethod
    def full(cls, cat: ZCategory, carrier: Sequence[str]) -> "IdemObject":
        return cls(cat, carrier, MatMorphism.identity(cat, carrier))

    def __repr__(self):
        return "IdemObject(%r)" % (list(self.carrier),)


def idem_hom(p_obj: IdemObject, q_obj: IdemObject) -> tuple:
    """Subgroup {w : q o w o p = w} of hom(carrier_p, carrier_q).

    Computed as the kernel of w |-> w - q o w o p; returns
    (group, inclusion into the ambient hom space, ambient HomSpace).
    """
    space = HomSpace(p_obj.cat, p_obj.carrier, q_obj.carrier)
    n = space.group.ngens
    cols = []
    for w in space.basis():
        tw = mat_compose(q_obj.p, mat_compose(w, p_obj.p))
        diff = space.flatten(w - tw)
        cols.append(diff)
    t = AbHom(space.group, space.group, IntMatrix.from_columns(cols, n))
    grp, incl = kernel(t)
    return grp, incl, space


@dataclass(frozen=True)
class SplitPair:
    """Retraction/section pair splitting an idempotent through a plain tuple."""

    retraction: MatMorphism
    section: MatMorphism
    through: tuple


def split_check(p_obj: IdemObject, max_carrier: int = 12) -> Optional[SplitPair]:
    """Search for (r, s) with r o s = id and s o r = p.

    Candidate sections are the idempotent's column sub-matrices over every
    sub-tuple of the carrier; for each candidate the remaining retraction
    constraints are linear and solved exactly.  Returning None means "not
    split within the search bound", not a proof that no splitting exists.
    """
    cat = p_obj.cat
    carrier = p_obj.carrier
    k = len(carrier)
    if k > max_carrier:
        raise ValueError("carrier too long for the splitting search bound")
    for size in range(k + 1):
        for subset in combinations(range(k), size):
            through = tuple(carrier[i] for i in subset)
            section = MatMorphism(cat, through, carrier,
                                  [[p_obj.p.entries[j][i] for i in subset]
                                   for j in range(k)])
            # unknown retraction r: carrier -> through
            sp_r = HomSpace(cat, carrier, through)
            n = sp_r.group.ngens
            h1, _, out1 = induced_pre(section, through, sp_in=sp_r)
            b1 = out1.flatten(MatMorphism.identity(cat, through))
            h2, _, out2 = induced_post(section, carrier, sp_in=sp_r)
            b2 = out2.flatten(p_obj.p)
            sol = solve_affine([(h1.matrix, out1.group, b1),
                                (h2.matrix, out2.group, b2)], n)
            if sol is not None:
                r = sp_r.unflatten(sol)
                return SplitPair(retraction=r, section=section, through=through)
    return None

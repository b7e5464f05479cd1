"""Finitely presented abelian groups and their homomorphisms.

A group is a generator count plus an integer relation matrix; elements are
coefficient vectors kept in the canonical form determined by the Hermite
basis of the relation lattice, so equality is decidable and deterministic.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .intlin import (
    IntMatrix,
    hermite_rows,
    kernel_basis,
    preimage_lattice,
    reduce_mod_rows,
    snf,
    solve_z,
)


class FpAbelianGroup:
    __slots__ = ("ngens", "relations", "_hrows", "_pivots", "_invariants")

    def __init__(self, ngens: int, relations: IntMatrix | Iterable[Iterable[int]] | None = None):
        self.ngens = int(ngens)
        if relations is None:
            relations = IntMatrix([], 0, self.ngens)
        elif not isinstance(relations, IntMatrix):
            rel = list(relations)
            relations = IntMatrix(rel, len(rel), self.ngens)
        if relations.cols != self.ngens:
            raise ValueError("relation matrix must have one column per generator")
        self.relations = relations
        self._hrows = None
        self._pivots = None
        self._invariants = None

    @classmethod
    def free(cls, n: int) -> "FpAbelianGroup":
        return cls(n)

    @classmethod
    def trivial(cls) -> "FpAbelianGroup":
        return cls(0)

    @classmethod
    def cyclic(cls, m: int) -> "FpAbelianGroup":
        return cls(1, [[m]])

    def _hermite(self):
        if self._hrows is None:
            self._hrows, self._pivots = hermite_rows(self.relations.data, self.ngens)
        return self._hrows, self._pivots

    def reduce(self, vec: Sequence[int]) -> tuple:
        if len(vec) != self.ngens:
            raise ValueError("element vector has wrong length")
        hrows, pivots = self._hermite()
        return reduce_mod_rows(vec, hrows, pivots)

    def is_zero(self, vec: Sequence[int]) -> bool:
        return all(x == 0 for x in self.reduce(vec))

    def zero(self) -> tuple:
        return (0,) * self.ngens

    @property
    def invariants(self) -> tuple:
        """(free rank, nontrivial divisor chain) — a complete isomorphism invariant."""
        if self._invariants is None:
            dec = snf(self.relations)
            divs = dec.divisors
            rank = self.ngens - len(divs)
            self._invariants = (rank, tuple(d for d in divs if d != 1))
        return self._invariants

    def is_trivial(self) -> bool:
        return self.invariants == (0, ())

    def order(self) -> Optional[int]:
        rank, divs = self.invariants
        if rank:
            return None
        n = 1
        for d in divs:
            n *= d
        return n

    def elements(self):
        """Iterate canonical representatives; only valid for finite groups."""
        if self.order() is None:
            raise ValueError("cannot enumerate an infinite group")
        hrows, pivots = self._hermite()
        bounds = {c: row[c] for row, c in zip(hrows, pivots)}
        # rank 0 means every generator column carries a pivot
        ranges = [range(bounds.get(c, 1)) for c in range(self.ngens)]
        out = [self.zero()]
        for c in range(self.ngens):
            new = []
            for v in out:
                for x in ranges[c]:
                    w = list(v)
                    w[c] = x
                    new.append(tuple(w))
            out = new
        seen = []
        found = set()
        for v in out:
            r = self.reduce(v)
            if r not in found:
                found.add(r)
                seen.append(r)
        return seen

    def same_presentation(self, other: "FpAbelianGroup") -> bool:
        return self.ngens == other.ngens and self.relations == other.relations

    def __repr__(self):
        rank, divs = self.invariants
        return "FpAbelianGroup(rank=%d, torsion=%r)" % (rank, list(divs))


def direct_sum(groups: Sequence[FpAbelianGroup]) -> tuple:
    """Block direct sum; returns (group, offsets) with offsets[i] the start of block i."""
    offsets = []
    total = 0
    for g in groups:
        offsets.append(total)
        total += g.ngens
    rows = []
    for g, off in zip(groups, offsets):
        for r in g.relations.data:
            row = [0] * total
            row[off:off + g.ngens] = list(r)
            rows.append(row)
    return FpAbelianGroup(total, IntMatrix(rows, len(rows), total)), offsets


class AbHom:
    """Homomorphism between presented groups, given on generators by a matrix."""

    __slots__ = ("src", "tgt", "matrix")

    def __init__(self, src: FpAbelianGroup, tgt: FpAbelianGroup,
                 matrix: IntMatrix | Iterable[Iterable[int]]):
        if not isinstance(matrix, IntMatrix):
            mat = list(matrix)
            matrix = IntMatrix(mat, len(mat), src.ngens)
        if matrix.rows != tgt.ngens or matrix.cols != src.ngens:
            raise ValueError("hom matrix must be tgt.ngens x src.ngens")
        self.src = src
        self.tgt = tgt
        self.matrix = matrix

    @classmethod
    def identity(cls, g: FpAbelianGroup) -> "AbHom":
        return cls(g, g, IntMatrix.identity(g.ngens))

    @classmethod
    def zero(cls, src: FpAbelianGroup, tgt: FpAbelianGroup) -> "AbHom":
        return cls(src, tgt, IntMatrix.zeros(tgt.ngens, src.ngens))

    def is_well_defined(self) -> bool:
        """Every relation of the source must land in the target relation lattice."""
        for r in self.src.relations.data:
            if not self.tgt.is_zero(self.matrix.apply(r)):
                return False
        return True

    def apply(self, vec: Sequence[int]) -> tuple:
        return self.tgt.reduce(self.matrix.apply(vec))

    def compose(self, other: "AbHom") -> "AbHom":
        """self o other."""
        if other.tgt.ngens != self.src.ngens:
            raise ValueError("non-composable homomorphisms")
        return AbHom(other.src, self.tgt, self.matrix.mul(other.matrix))

    def is_zero_map(self) -> bool:
        return all(self.tgt.is_zero(self.matrix.column(j))
                   for j in range(self.src.ngens))

    def equal(self, other: "AbHom") -> bool:
        if self.src.ngens != other.src.ngens or self.tgt.ngens != other.tgt.ngens:
            return False
        for j in range(self.src.ngens):
            d = [a - b for a, b in zip(self.matrix.column(j), other.matrix.column(j))]
            if not self.tgt.is_zero(d):
                return False
        return True


def kernel(h: AbHom) -> tuple:
    """Presentation of {x in src : h(x) = 0}, with its inclusion.

    Generators are the Hermite-ordered basis of the preimage of the target
    relation lattice, reduced modulo the source relations; the ordering makes
    downstream pseudo-kernels reproducible bit for bit.
    """
    if not h.is_well_defined():
        raise ValueError("kernel of an ill-defined homomorphism")
    lat = preimage_lattice(h.matrix, h.tgt.relations)
    gens = [row for row in lat.data if not h.src.is_zero(row)]
    gmat = IntMatrix.from_columns(gens, h.src.ngens)
    rel = preimage_lattice(gmat, h.src.relations)
    grp = FpAbelianGroup(len(gens), rel)
    return grp, AbHom(grp, h.src, gmat)


def cokernel(h: AbHom) -> tuple:
    """Presentation of tgt / im(h), with the projection from tgt."""
    img_rows = h.matrix.transpose()
    rel = h.tgt.relations.vstack(img_rows) if img_rows.rows else h.tgt.relations
    grp = FpAbelianGroup(h.tgt.ngens, rel)
    return grp, AbHom(h.tgt, grp, IntMatrix.identity(h.tgt.ngens))


def image(h: AbHom) -> tuple:
    """Presentation of im(h) on the source generators, with its inclusion into tgt."""
    rel = preimage_lattice(h.matrix, h.tgt.relations)
    grp = FpAbelianGroup(h.src.ngens, rel)
    return grp, AbHom(grp, h.tgt, h.matrix)


def in_image(h: AbHom, vec: Sequence[int]) -> bool:
    """Membership of a target vector in im(h) as a subgroup of the target."""
    mat = h.matrix
    if h.tgt.relations.rows:
        mat = mat.hstack(h.tgt.relations.transpose())
    return solve_z(mat, vec) is not None


def is_exact_at(f: AbHom, g: AbHom) -> bool:
    """Exactness of src --f--> mid --g--> tgt at the middle group.

    Checked as (a) g o f = 0 and (b) every kernel generator of g lies in
    im(f), the membership resolved against the combined image-plus-relation
    lattice.
    """
    if f.tgt.ngens != g.src.ngens or not f.tgt.relations == g.src.relations:
        raise ValueError("maps are not composable at a common middle group")
    comp = g.compose(AbHom(f.src, g.src, f.matrix))
    if not comp.is_zero_map():
        return False
    lat = preimage_lattice(g.matrix, g.tgt.relations)
    for row in lat.data:
        if not in_image(f, row):
            return False
    return True


def is_iso(h: AbHom) -> bool:
    """Bijectivity of a well-defined homomorphism of presented groups."""
    if not h.is_well_defined():
        return False
    ker, _ = kernel(h)
    if not ker.is_trivial():
        return False
    cok, _ = cokernel(h)
    return cok.is_trivial()


def solve_affine(systems: Sequence[tuple], unknowns: int) -> Optional[tuple]:
    """Simultaneous solution of A_i x = b_i modulo the relations of group G_i.

    Each system is (A_i, G_i, b_i) with A_i of shape (G_i.ngens x unknowns).
    Relation columns are adjoined per block so congruences are solved exactly.
    """
    rows: list = []
    rhs: list = []
    total_slack = sum(g.relations.rows for _, g, _ in systems)
    slack_off = 0
    for A, grp, b in systems:
        if A.rows != grp.ngens or A.cols != unknowns or len(b) != grp.ngens:
            raise ValueError("inconsistent affine system block")
        for i in range(A.rows):
            row = list(A.data[i]) + [0] * total_slack
            for k, rel in enumerate(grp.relations.data):
                row[unknowns + slack_off + k] = rel[i]
            rows.append(row)
            rhs.append(b[i])
        slack_off += grp.relations.rows
    mat = IntMatrix(rows, len(rows), unknowns + total_slack)
    sol = solve_z(mat, rhs)
    if sol is None:
        return None
    return tuple(sol[:unknowns])

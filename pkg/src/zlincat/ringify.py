"""The associated ring of a finite Z-linear category.

The carrier is the direct sum of all hom-groups, block-indexed by ordered
object pairs; the product of two basis morphisms is their composite when the
endpoints match and zero otherwise.  With finitely many objects the sum of
the identities is a two-sided unit, so the local-units family is kept mainly
because every statement downstream is phrased through it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .abgroup import AbHom, FpAbelianGroup, direct_sum, is_iso
from .intlin import IntMatrix
from .zcat import Morphism, ZCategory
from .completion import HomSpace, MatMorphism, mat_compose


class RingPresentation:
    """Ring on a finitely presented carrier with basis-pair structure constants."""

    def __init__(self, carrier: FpAbelianGroup, basis_labels: Sequence,
                 mult: Sequence[Sequence[Sequence[int]]], unit: Sequence[int],
                 local_units: Dict[str, tuple], category: Optional[ZCategory] = None,
                 block_index: Optional[Dict[Tuple[str, str], tuple]] = None):
        self.carrier = carrier
        self.basis_labels = tuple(basis_labels)
        if len(self.basis_labels) != carrier.ngens:
            raise ValueError("one label per carrier generator required")
        self.mult = tuple(tuple(tuple(int(x) for x in vec) for vec in row) for row in mult)
        self.unit = carrier.reduce(unit)
        self.local_units = {k: carrier.reduce(v) for k, v in local_units.items()}
        self.category = category
        self.block_index = dict(block_index) if block_index else None

    @property
    def rank(self) -> int:
        return self.carrier.ngens

    def element(self, coeffs: Sequence[int]) -> "RingElement":
        return RingElement(self, self.carrier.reduce(coeffs))

    def zero(self) -> "RingElement":
        return RingElement(self, self.carrier.zero())

    def one(self) -> "RingElement":
        return RingElement(self, self.unit)

    def basis_element(self, i: int) -> "RingElement":
        v = [0] * self.carrier.ngens
        v[i] = 1
        return self.element(v)

    def mult_vec(self, x: Sequence[int], y: Sequence[int]) -> tuple:
        n = self.carrier.ngens
        acc = [0] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            row = self.mult[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                vec = row[j]
                c = xi * yj
                for k in range(n):
                    acc[k] += c * vec[k]
        return self.carrier.reduce(acc)

    def verify(self) -> "RingCheckReport":
        """Exhaustive certification: associativity on basis triples, the unit
        laws, and (when built from a category) the block multiplication law."""
        rep = RingCheckReport()
        n = self.carrier.ngens
        basis = [self.basis_element(i).coeffs for i in range(n)]
        for i in range(n):
            for j in range(n):
                ij = self.mult_vec(basis[i], basis[j])
                for k in range(n):
                    lhs = self.mult_vec(ij, basis[k])
                    rhs = self.mult_vec(basis[i], self.mult_vec(basis[j], basis[k]))
                    if lhs != rhs:
                        rep.failures.append(("associativity", (i, j, k)))
        for i in range(n):
            if self.mult_vec(self.unit, basis[i]) != self.carrier.reduce(basis[i]):
                rep.failures.append(("left-unit", i))
            if self.mult_vec(basis[i], self.unit) != self.carrier.reduce(basis[i]):
                rep.failures.append(("right-unit", i))
        if self.block_index is not None:
            spans = {}
            for pair, (off, ng) in self.block_index.items():
                spans[pair] = (off, off + ng)
            for i, li in enumerate(self.basis_labels):
                for j, lj in enumerate(self.basis_labels):
                    prod = self.mult_vec(basis[i], basis[j])
                    si, ti = li[0], li[1]
                    sj, tj = lj[0], lj[1]
                    if tj != si:
                        if any(prod):
                            rep.failures.append(("block-orthogonality", (i, j)))
                    else:
                        lo, hi = spans[(sj, ti)]
                        if any(prod[k] for k in range(len(prod)) if not lo <= k < hi):
                            rep.failures.append(("block-target", (i, j)))
        return rep


@dataclass
class RingCheckReport:
    failures: List[tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class RingElement:
    ring: RingPresentation
    coeffs: tuple

    def __add__(self, other: "RingElement") -> "RingElement":
        return self.ring.element([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self.ring.element([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "RingElement":
        return self.ring.element([-a for a in self.coeffs])

    def __mul__(self, other: "RingElement") -> "RingElement":
        return RingElement(self.ring, self.ring.mult_vec(self.coeffs, other.coeffs))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def __repr__(self):
        return "RingElement(%r)" % (list(self.coeffs),)


def ring_mult(f: RingElement, g: RingElement) -> RingElement:
    if f.ring is not g.ring:
        raise ValueError("elements of different rings")
    return f * g


def build_ring(cat: ZCategory, verify: bool = True) -> RingPresentation:
    """Direct sum of all hom-groups with the block-convolution product.

    Basis labels are (src, tgt, k) triples; a basis morphism x: s -> t times
    a basis morphism y: s' -> t' is x o y when t' = s and zero otherwise.
    """
    pairs = [(a, b) for a in cat.objects for b in cat.objects]
    groups = [cat.hom(a, b) for (a, b) in pairs]
    carrier, offsets = direct_sum(groups)
    block_index = {}
    labels: List[tuple] = []
    for (a, b), grp, off in zip(pairs, groups, offsets):
        block_index[(a, b)] = (off, grp.ngens)
        for k in range(grp.ngens):
            labels.append((a, b, k))
    n = carrier.ngens

    def embed(m: Morphism) -> list:
        off, ng = block_index[(m.src, m.tgt)]
        v = [0] * n
        v[off:off + ng] = list(m.coeffs)
        return v

    mult = []
    for (si, ti, ki) in labels:
        row = []
        gen_i = cat.gens(si, ti)[ki]
        for (sj, tj, kj) in labels:
            if tj != si:
                row.append([0] * n)
                continue
            gen_j = cat.gens(sj, tj)[kj]
            row.append(embed(cat.compose(gen_i, gen_j)))
        mult.append(row)

    unit = [0] * n
    local_units = {}
    for a in cat.objects:
        v = embed(cat.identity(a))
        local_units[a] = tuple(v)
        unit = [x + y for x, y in zip(unit, v)]

    ring = RingPresentation(carrier, labels, mult, unit, local_units,
                            category=cat, block_index=block_index)
    if verify:
        rep = ring.verify()
        if not rep.ok:
            raise ValueError("ring construction failed certification: %r" % rep.failures[:3])
    return ring


def embed_morphism(ring: RingPresentation, m: Morphism) -> RingElement:
    if ring.block_index is None:
        raise ValueError("ring was not built from a category")
    off, ng = ring.block_index[(m.src, m.tgt)]
    v = [0] * ring.carrier.ngens
    v[off:off + ng] = list(m.coeffs)
    return ring.element(v)


def peirce_block(ring: RingPresentation, a: str, b: str) -> FpAbelianGroup:
    """id_a * ring * id_b as an abelian group (equals hom(b, a))."""
    if ring.block_index is None:
        raise ValueError("ring was not built from a category")
    ea = ring.local_units[a]
    eb = ring.local_units[b]
    n = ring.carrier.ngens
    imgs = []
    for i in range(n):
        v = [0] * n
        v[i] = 1
        imgs.append(ring.mult_vec(ea, ring.mult_vec(v, eb)))
    h = AbHom(ring.carrier, ring.carrier, IntMatrix.from_columns(imgs, n))
    from .abgroup import image
    grp, _ = image(h)
    return grp


@dataclass
class IsoCheckResult:
    ok: bool
    additive_bijective: bool
    unit_ok: bool
    pairs_checked: int
    failures: List[tuple] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def ring_iso_check(phi: AbHom, a_ring: RingPresentation,
                   b_ring: RingPresentation) -> IsoCheckResult:
    """Certify that phi is a unital ring isomorphism on the presented carriers.

    Bijectivity is decided by triviality of kernel and cokernel;
    multiplicativity is checked on every ordered basis pair.
    """
    if phi.src.ngens != a_ring.carrier.ngens or phi.tgt.ngens != b_ring.carrier.ngens:
        raise ValueError("carrier mismatch")
    failures: List[tuple] = []
    bij = phi.is_well_defined() and is_iso(phi)
    if not bij:
        failures.append(("not-bijective",))
    n = a_ring.carrier.ngens
    basis = []
    for i in range(n):
        v = [0] * n
        v[i] = 1
        basis.append(tuple(v))
    checked = 0
    for i in range(n):
        for j in range(n):
            checked += 1
            lhs = phi.apply(a_ring.mult_vec(basis[i], basis[j]))
            rhs = b_ring.mult_vec(phi.apply(basis[i]), phi.apply(basis[j]))
            if lhs != rhs:
                failures.append(("multiplicativity", a_ring.basis_labels[i],
                                 a_ring.basis_labels[j]))
    unit_ok = phi.apply(a_ring.unit) == b_ring.carrier.reduce(b_ring.unit)
    if not unit_ok:
        failures.append(("unit",))
    return IsoCheckResult(ok=not failures, additive_bijective=bij,
                          unit_ok=unit_ok, pairs_checked=checked, failures=failures)


def rectangular_matrix_sum_ring(base: RingPresentation, n_max: int) -> RingPresentation:
    """The sum over shapes (n, m) <= n_max of n-by-m matrices over a base ring,
    multiplied block-by-block where shapes compose and by zero otherwise."""
    r = base.carrier.ngens
    labels: List[tuple] = []
    for n in range(1, n_max + 1):
        for m in range(1, n_max + 1):
            for i in range(n):
                for j in range(m):
                    for k in range(r):
                        labels.append((n, m, i, j, k))
    total = len(labels)
    index = {lab: idx for idx, lab in enumerate(labels)}
    # relations: one copy of the base relations per (n, m, i, j) slot
    rows = []
    for n in range(1, n_max + 1):
        for m in range(1, n_max + 1):
            for i in range(n):
                for j in range(m):
                    for rel in base.carrier.relations.data:
                        row = [0] * total
                        for k in range(r):
                            row[index[(n, m, i, j, k)]] = rel[k]
                        rows.append(row)
    carrier = FpAbelianGroup(total, IntMatrix(rows, len(rows), total))

    mult = []
    for (n1, m1, i1, j1, k1) in labels:
        row = []
        base_i = [0] * r
        base_i[k1] = 1
        for (n2, m2, i2, j2, k2) in labels:
            vec = [0] * total
            if m1 == n2 and j1 == i2:
                base_j = [0] * r
                base_j[k2] = 1
                prod = base.mult_vec(base_i, base_j)
                for k in range(r):
                    if prod[k]:
                        vec[index[(n1, m2, i1, j2, k)]] = prod[k]
            row.append(vec)
        mult.append(row)

    unit = [0] * total
    local_units: Dict[str, tuple] = {}
    for n in range(1, n_max + 1):
        v = [0] * total
        for i in range(n):
            for k in range(r):
                if base.unit[k]:
                    v[index[(n, n, i, i, k)]] = base.unit[k]
        local_units["shape%d" % n] = tuple(v)
        unit = [x + y for x, y in zip(unit, v)]
    return RingPresentation(carrier, labels, mult, unit, local_units)


def truncated_additive_ring(cat: ZCategory, n_max: int) -> tuple:
    """Associated ring of the additive completion truncated at tuple length n_max,
    identified with the sum of rectangular matrix rings over the base ring.

    Only single-object categories are accepted: with several objects the
    summand-wise comparison is not a bijection (tuple bookkeeping inflates
    multiplicities), so there is no canonical graded identification to check.
    Returns (ring of the truncated completion, report dict).
    """
    if n_max < 1:
        raise ValueError("truncation level must be at least 1")
    if len(cat.objects) != 1:
        raise ValueError("truncated comparison requires a single-object category")
    obj = cat.objects[0]

    tuples = {k: (obj,) * k for k in range(1, n_max + 1)}
    names = {k: "len%d" % k for k in tuples}
    spaces = {(m, n): HomSpace(cat, tuples[m], tuples[n])
              for m in tuples for n in tuples}
    hom = {(names[m], names[n]): spaces[(m, n)].group for m in tuples for n in tuples}
    comp = {}
    for m in tuples:
        for k in tuples:
            for n in tuples:
                s_mk = spaces[(m, k)]
                s_kn = spaces[(k, n)]
                s_mn = spaces[(m, n)]
                if not (s_mk.group.ngens and s_kn.group.ngens):
                    continue
                table = []
                for g in s_kn.basis():
                    row = []
                    for f in s_mk.basis():
                        row.append(s_mn.flatten(mat_compose(g, f)))
                    table.append(tuple(row))
                comp[(names[m], names[k], names[n])] = tuple(table)
    identities = {names[k]: spaces[(k, k)].flatten(MatMorphism.identity(cat, tuples[k]))
                  for k in tuples}
    trunc_cat = ZCategory([names[k] for k in sorted(tuples)], hom, comp, identities,
                          validate=True)
    lhs = build_ring(trunc_cat)

    base = build_ring(cat)
    rhs = rectangular_matrix_sum_ring(base, n_max)

    # canonical identification: morphism-matrix entry (j, i) of a length-m ->
    # length-n map goes to slot (n, m, j, i) of the matrix-ring sum
    rhs_index = {lab: idx for idx, lab in enumerate(rhs.basis_labels)}
    cols = []
    for (src_name, tgt_name, gk) in lhs.basis_labels:
        m = int(src_name[3:])
        n = int(tgt_name[3:])
        space = spaces[(m, n)]
        # locate the block and in-block generator of gk
        slot = None
        for (j, i), s in space.block_index.items():
            off = space.offsets[s]
            ng = space.block_groups[s].ngens
            if off <= gk < off + ng:
                slot = (j, i, gk - off)
                break
        j, i, k = slot
        v = [0] * rhs.carrier.ngens
        v[rhs_index[(n, m, j, i, k)]] = 1
        cols.append(v)
    phi = AbHom(lhs.carrier, rhs.carrier,
                IntMatrix.from_columns(cols, rhs.carrier.ngens))
    check = ring_iso_check(phi, lhs, rhs)
    report = {
        "truncation_level": n_max,
        "completion_ring_rank": lhs.carrier.ngens,
        "matrix_sum_ring_rank": rhs.carrier.ngens,
        "additive_bijective": check.additive_bijective,
        "unit_preserved": check.unit_ok,
        "multiplicative_pairs_checked": check.pairs_checked,
        "ok": check.ok,
        "failures": [list(map(str, f)) for f in check.failures[:5]],
    }
    return lhs, report

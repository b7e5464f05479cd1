"""Finite Z-linear categories with structure-constant composition.

A category is a finite object list, one finitely presented abelian group per
ordered object pair, and a table that writes the composite of two hom-group
generators as a coefficient vector in the target hom-group.  Everything
downstream assumes the category has passed validation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple

from .abgroup import AbHom, FpAbelianGroup
from .intlin import IntMatrix


class CategoryError(Exception):
    """Raised when category data violates the axioms."""


@dataclass(frozen=True)
class Morphism:
    cat: "ZCategory"
    src: str
    tgt: str
    coeffs: tuple

    def __add__(self, other: "Morphism") -> "Morphism":
        if (self.src, self.tgt) != (other.src, other.tgt):
            raise ValueError("cannot add morphisms with different endpoints")
        return self.cat.mor(self.src, self.tgt,
                            [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "Morphism") -> "Morphism":
        return self + other.scale(-1)

    def __neg__(self) -> "Morphism":
        return self.scale(-1)

    def scale(self, c: int) -> "Morphism":
        return self.cat.mor(self.src, self.tgt, [c * a for a in self.coeffs])

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coeffs)

    def __repr__(self):
        return "Morphism(%s->%s, %r)" % (self.src, self.tgt, list(self.coeffs))


@dataclass
class ValidationReport:
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, msg: str) -> None:
        self.violations.append(msg)

    def summary(self) -> str:
        if self.ok:
            return "valid"
        return "%d violation(s); first: %s" % (len(self.violations), self.violations[0])


class ZCategory:
    """Validated finite Z-linear category.

    hom maps ordered pairs to FpAbelianGroup (missing pairs mean the trivial
    group); comp[(a, b, c)][g][f] is the coefficient vector of the composite
    of generator g of hom(b, c) with generator f of hom(a, b) in hom(a, c).
    """

    def __init__(self, objects: Sequence[str],
                 hom: Dict[Tuple[str, str], FpAbelianGroup],
                 comp: Dict[Tuple[str, str, str], Sequence],
                 identities: Dict[str, Sequence[int]],
                 validate: bool = True):
        self.objects = tuple(objects)
        self.hom_groups: Dict[Tuple[str, str], FpAbelianGroup] = {}
        for a in self.objects:
            for b in self.objects:
                g = hom.get((a, b))
                self.hom_groups[(a, b)] = g if g is not None else FpAbelianGroup.trivial()
        self.comp_tables: Dict[Tuple[str, str, str], tuple] = {}
        for key, table in comp.items():
            self.comp_tables[key] = tuple(tuple(tuple(int(x) for x in vec) for vec in row)
                                          for row in table)
        self.identity_coeffs = {a: tuple(int(x) for x in v) for a, v in identities.items()}
        if validate:
            report = self.validate()
            if not report.ok:
                raise CategoryError(report.summary())

    # -- basic accessors -------------------------------------------------

    def hom(self, a: str, b: str) -> FpAbelianGroup:
        return self.hom_groups[(a, b)]

    def mor(self, src: str, tgt: str, coeffs: Sequence[int]) -> Morphism:
        return Morphism(self, src, tgt, self.hom(src, tgt).reduce(coeffs))

    def zero_mor(self, src: str, tgt: str) -> Morphism:
        return Morphism(self, src, tgt, self.hom(src, tgt).zero())

    def identity(self, a: str) -> Morphism:
        return self.mor(a, a, self.identity_coeffs[a])

    def gens(self, a: str, b: str) -> List[Morphism]:
        n = self.hom(a, b).ngens
        out = []
        for k in range(n):
            v = [0] * n
            v[k] = 1
            out.append(self.mor(a, b, v))
        return out

    # -- composition -----------------------------------------------------

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        """Bilinear extension of the structure-constant table: g after f."""
        if f.tgt != g.src:
            raise ValueError("non-composable pair: %s->%s then %s->%s"
                             % (f.src, f.tgt, g.src, g.tgt))
        target = self.hom(f.src, g.tgt)
        acc = [0] * target.ngens
        table = self.comp_tables.get((f.src, f.tgt, g.tgt))
        if table is not None:
            for gi, gc in enumerate(g.coeffs):
                if not gc:
                    continue
                row = table[gi]
                for fi, fc in enumerate(f.coeffs):
                    if not fc:
                        continue
                    vec = row[fi]
                    c = gc * fc
                    for k in range(target.ngens):
                        acc[k] += c * vec[k]
        return self.mor(f.src, g.tgt, acc)

    def induced_hom(self, f: Morphism, c: str) -> AbHom:
        """The map hom(c, f.src) -> hom(c, f.tgt) sending h to f o h."""
        src_grp = self.hom(c, f.src)
        tgt_grp = self.hom(c, f.tgt)
        cols = []
        for h in self.gens(c, f.src):
            cols.append(self.compose(f, h).coeffs)
        return AbHom(src_grp, tgt_grp, IntMatrix.from_columns(cols, tgt_grp.ngens))

    # -- validation --------------------------------------------------------

    def validate(self) -> ValidationReport:
        rep = ValidationReport()
        if not self.objects:
            rep.add("object set is empty")
            return rep
        if len(set(self.objects)) != len(self.objects):
            rep.add("duplicate object names")
            return rep
        for a in self.objects:
            if a not in self.identity_coeffs:
                rep.add("missing identity for object %s" % a)
            elif len(self.identity_coeffs[a]) != self.hom(a, a).ngens:
                rep.add("identity for %s has wrong coefficient length" % a)
        for (a, b, c), table in self.comp_tables.items():
            gbc = self.hom(b, c).ngens
            gab = self.hom(a, b).ngens
            gac = self.hom(a, c).ngens
            if len(table) != gbc or any(len(row) != gab for row in table):
                rep.add("composition table %s->%s->%s has wrong shape" % (a, b, c))
                continue
            if any(len(vec) != gac for row in table for vec in row):
                rep.add("composition table %s->%s->%s has wrong target length" % (a, b, c))
        for a in self.objects:
            for b in self.objects:
                for c in self.objects:
                    if (self.hom(a, b).ngens and self.hom(b, c).ngens
                            and (a, b, c) not in self.comp_tables
                            and self.hom(a, c).ngens):
                        rep.add("missing composition table %s->%s->%s" % (a, b, c))
        if not rep.ok:
            return rep

        # composition must kill relations of either factor
        for a in self.objects:
            for b in self.objects:
                for c in self.objects:
                    hab, hbc, hac = self.hom(a, b), self.hom(b, c), self.hom(a, c)
                    if not (hab.ngens and hbc.ngens):
                        continue
                    for r in hab.relations.data:
                        for gi in range(hbc.ngens):
                            g = self.gens(b, c)[gi]
                            f = Morphism(self, a, b, tuple(r))
                            if not self.compose(g, f).is_zero():
                                rep.add("composition not well defined: relation of "
                                        "hom(%s,%s) survives against generator %d of hom(%s,%s)"
                                        % (a, b, gi, b, c))
                    for r in hbc.relations.data:
                        for fi in range(hab.ngens):
                            f = self.gens(a, b)[fi]
                            g = Morphism(self, b, c, tuple(r))
                            if not self.compose(g, f).is_zero():
                                rep.add("composition not well defined: relation of "
                                        "hom(%s,%s) survives against generator %d of hom(%s,%s)"
                                        % (b, c, fi, a, b))

        # identity laws on generators
        for a in self.objects:
            for b in self.objects:
                if a not in self.identity_coeffs or b not in self.identity_coeffs:
                    continue
                ida = self.identity(a)
                idb = self.identity(b)
                for k, f in enumerate(self.gens(a, b)):
                    if self.compose(idb, f) != f:
                        rep.add("identity law fails: id_%s o (generator %d of hom(%s,%s))"
                                % (b, k, a, b))
                    if self.compose(f, ida) != f:
                        rep.add("identity law fails: (generator %d of hom(%s,%s)) o id_%s"
                                % (k, a, b, a))

        # associativity on all generator triples
        for a in self.objects:
            for b in self.objects:
                for c in self.objects:
                    for d in self.objects:
                        fs = self.gens(a, b)
                        gs = self.gens(b, c)
                        hs = self.gens(c, d)
                        for fi, f in enumerate(fs):
                            for gi, g in enumerate(gs):
                                gf = self.compose(g, f)
                                for hi, h in enumerate(hs):
                                    lhs = self.compose(h, gf)
                                    rhs = self.compose(self.compose(h, g), f)
                                    if lhs != rhs:
                                        rep.add("associativity fails at generators "
                                                "(%s,%s,%s,%s)[%d,%d,%d]"
                                                % (a, b, c, d, fi, gi, hi))
        return rep

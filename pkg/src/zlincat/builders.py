"""Constructors for the example category families.

Covers one-object categories of unital rings, categories of group-graded
rings (one object per degree), Z-linearized orbit categories of finite
permutation groups, and products of prime fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .abgroup import FpAbelianGroup
from .intlin import IntMatrix
from .zcat import CategoryError, ZCategory


# ---------------------------------------------------------------------------
# one-object categories from unital rings
# ---------------------------------------------------------------------------

def from_unital_ring(ngens: int, relations, mult, unit, obj: str = "*") -> ZCategory:
    """One-object category whose endomorphism ring is the given presentation.

    mult[i][j] is the coefficient vector of (generator i) * (generator j);
    ring multiplication x*y corresponds to composing x after y.
    """
    group = FpAbelianGroup(ngens, relations)
    table = tuple(tuple(tuple(int(x) for x in vec) for vec in row) for row in mult)
    cat = ZCategory([obj], {(obj, obj): group},
                    {(obj, obj, obj): table}, {obj: tuple(unit)}, validate=False)
    rep = cat.validate()
    if not rep.ok:
        raise CategoryError("ring data is not associative/unital: " + rep.summary())
    return cat


def integer_category(obj: str = "*") -> ZCategory:
    return from_unital_ring(1, [], [[[1]]], [1], obj=obj)


def zmod_category(m: int, obj: str = "*") -> ZCategory:
    if m < 2:
        raise ValueError("modulus must be at least 2")
    return from_unital_ring(1, [[m]], [[[1]]], [1], obj=obj)


# ---------------------------------------------------------------------------
# finite permutation groups
# ---------------------------------------------------------------------------

class PermGroup:
    """Finite permutation group on points 0..degree-1, closed by enumeration."""

    def __init__(self, degree: int, generators: Sequence[Sequence[int]]):
        self.degree = int(degree)
        gens = [tuple(int(x) for x in g) for g in generators]
        ident = tuple(range(self.degree))
        for g in gens:
            if sorted(g) != list(range(self.degree)):
                raise ValueError("generator %r is not a permutation of 0..%d" % (g, self.degree - 1))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mul(a, g)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
                    c = self.mul(g, a)
                    if c not in seen:
                        seen.add(c)
                        nxt.append(c)
            frontier = nxt
        self.generators = tuple(gens)
        self.elements = tuple(sorted(seen))
        self.identity = ident

    def mul(self, p, q) -> tuple:
        """Composite permutation: apply q first, then p."""
        return tuple(p[q[x]] for x in range(self.degree))

    def inv(self, p) -> tuple:
        out = [0] * self.degree
        for i, v in enumerate(p):
            out[v] = i
        return tuple(out)

    def subgroup(self, generators: Sequence[tuple]) -> frozenset:
        gens = [tuple(g) for g in generators]
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = self.mul(a, g)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(seen)

    def conjugate_subgroup(self, h: frozenset, g: tuple) -> frozenset:
        gi = self.inv(g)
        return frozenset(self.mul(self.mul(g, x), gi) for x in h)

    def all_subgroups_of(self, h: frozenset, max_gens: int = 3) -> List[frozenset]:
        """Subgroups of h found from generating subsets of bounded size."""
        from itertools import combinations
        elems = sorted(h)
        found = {frozenset({self.identity})}
        for r in range(1, max_gens + 1):
            for sub in combinations(elems, r):
                found.add(self.subgroup(sub))
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def left_cosets(self, h: frozenset) -> List[frozenset]:
        seen = set()
        out = []
        for g in self.elements:
            c = frozenset(self.mul(g, x) for x in h)
            if c not in seen:
                seen.add(c)
                out.append(c)
        return out


def parse_cycles(text: str, degree: int) -> tuple:
    """Permutation from 1-based cycle notation like "(12)(3 4)"."""
    perm = list(range(degree))
    text = text.strip()
    if text in ("", "()", "e"):
        return tuple(perm)
    depth = 0
    cycles: List[List[int]] = []
    cur: List[int] = []
    token = ""

    def flush_token():
        nonlocal token
        if token:
            cur.append(int(token) - 1)
            token = ""

    for ch in text:
        if ch == "(":
            if depth:
                raise ValueError("nested parenthesis in cycle notation")
            depth = 1
            cur = []
        elif ch == ")":
            flush_token()
            depth = 0
            if cur:
                cycles.append(cur)
        elif ch.isdigit():
            token += ch
            if degree <= 9:
                flush_token()
        elif ch in " ,":
            flush_token()
        else:
            raise ValueError("unexpected character %r in cycle notation" % ch)
    for cyc in cycles:
        if any(x < 0 or x >= degree for x in cyc):
            raise ValueError("cycle point out of range for degree %d" % degree)
        for k in range(len(cyc)):
            perm[cyc[k]] = cyc[(k + 1) % len(cyc)]
    return tuple(perm)


# ---------------------------------------------------------------------------
# group rings
# ---------------------------------------------------------------------------

def group_ring_category(group: PermGroup, obj: str = "*") -> ZCategory:
    """One-object category with End = the integral group ring of the group."""
    elems = group.elements
    idx = {g: i for i, g in enumerate(elems)}
    n = len(elems)
    mult = []
    for a in elems:
        row = []
        for b in elems:
            vec = [0] * n
            vec[idx[group.mul(a, b)]] = 1
            row.append(vec)
        mult.append(row)
    unit = [0] * n
    unit[idx[group.identity]] = 1
    return from_unital_ring(n, [], mult, unit, obj=obj)


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [])
    cycle = tuple(list(range(1, n)) + [0])
    return PermGroup(n, [cycle])


# ---------------------------------------------------------------------------
# graded rings
# ---------------------------------------------------------------------------

@dataclass
class GradedRingData:
    """Ring graded by a product of cyclic groups, one component per degree.

    components maps each degree tuple to an FpAbelianGroup; mult maps a pair
    of degrees to the structure-constant table of the multiplication
    R_g x R_h -> R_{g+h} ([i][j] -> coefficient vector).  Degrees add
    componentwise modulo the cyclic orders.
    """

    orders: Tuple[int, ...]
    components: Dict[tuple, FpAbelianGroup]
    mult: Dict[Tuple[tuple, tuple], tuple]
    unit: Tuple[int, ...]

    def degrees(self) -> List[tuple]:
        out = [()]
        for o in self.orders:
            out = [d + (k,) for d in out for k in range(o)]
        return out

    def add(self, g: tuple, h: tuple) -> tuple:
        return tuple((a + b) % o for a, b, o in zip(g, h, self.orders))

    def sub(self, g: tuple, h: tuple) -> tuple:
        return tuple((a - b) % o for a, b, o in zip(g, h, self.orders))

    def zero_degree(self) -> tuple:
        return (0,) * len(self.orders)


def graded_category(data: GradedRingData) -> ZCategory:
    """Category with one object per degree and hom(g, h) = component of degree h-g."""
    degrees = data.degrees()
    names = {d: "g" + "_".join(str(x) for x in d) for d in degrees}
    objects = [names[d] for d in degrees]
    hom = {}
    comp = {}
    for a in degrees:
        for b in degrees:
            grp = data.components.get(data.sub(b, a))
            hom[(names[a], names[b])] = grp if grp is not None else FpAbelianGroup.trivial()
    for a in degrees:
        for b in degrees:
            for c in degrees:
                d_ab = data.sub(b, a)
                d_bc = data.sub(c, b)
                gab = data.components.get(d_ab)
                gbc = data.components.get(d_bc)
                if gab is None or gbc is None or not (gab.ngens and gbc.ngens):
                    continue
                table = data.mult.get((d_bc, d_ab))
                if table is None:
                    raise CategoryError("missing multiplication table for degrees %r * %r"
                                        % (d_bc, d_ab))
                comp[(names[a], names[b], names[c])] = table
    zero = data.zero_degree()
    identities = {names[d]: data.unit for d in degrees}
    cat = ZCategory(objects, hom, comp, identities, validate=False)
    rep = cat.validate()
    if not rep.ok:
        raise CategoryError("graded data violates the axioms: " + rep.summary())
    return cat


def cyclic_shift_data(n: int, base: str = "Z") -> GradedRingData:
    """Degree data whose graded category has every hom free of rank one.

    Over the cyclic grading group of order n each component is a copy of the
    base ring (Z, or the prime field Z/p when base is a prime), and the
    product of the degree-g and degree-h basis elements is the degree-(g+h)
    basis element.  The associated ring of the resulting category is the
    n-by-n matrix ring over the base.
    """
    if n < 1:
        raise ValueError("cyclic order must be positive")
    if base == "Z":
        comp_group = FpAbelianGroup.free(1)
    else:
        p = int(base)
        if not _is_prime(p):
            raise ValueError("base must be 'Z' or a prime")
        comp_group = FpAbelianGroup.cyclic(p)
    components = {(g,): comp_group for g in range(n)}
    mult = {((g,), (h,)): (((1,),),) for g in range(n) for h in range(n)}
    return GradedRingData(orders=(n,), components=components, mult=mult, unit=(1,))


# ---------------------------------------------------------------------------
# orbit categories
# ---------------------------------------------------------------------------

@dataclass
class PermGroupData:
    """Permutation group plus a family of subgroups given by generator lists."""

    degree: int
    generators: Sequence[Sequence[int]]
    family: Sequence[Sequence[Sequence[int]]]

    def build_group(self) -> PermGroup:
        return PermGroup(self.degree, self.generators)

    def build_family(self, group: PermGroup) -> List[frozenset]:
        subs = []
        for gens in self.family:
            subs.append(group.subgroup([tuple(g) for g in gens]))
        uniq = []
        for s in subs:
            if s not in uniq:
                uniq.append(s)
        return sorted(uniq, key=lambda s: (len(s), sorted(s)))

    def validate(self) -> tuple:
        """(errors, warnings): conjugation closure is required, subgroup
        closure is reported but not enforced."""
        errors: List[str] = []
        warnings: List[str] = []
        group = self.build_group()
        family = self.build_family(group)
        if not family:
            errors.append("empty subgroup family")
            return errors, warnings
        fam_set = set(family)
        for h in family:
            for g in group.elements:
                c = group.conjugate_subgroup(h, g)
                if c not in fam_set:
                    errors.append("family not closed under conjugation: conjugate of a "
                                  "subgroup of order %d is missing" % len(h))
                    break
        for h in family:
            for s in group.all_subgroups_of(h):
                if s not in fam_set:
                    warnings.append("family not closed under taking subgroups: subgroup "
                                    "of order %d inside a member of order %d is missing"
                                    % (len(s), len(h)))
                    break
        return errors, warnings


def equivariant_coset_reps(group: PermGroup, h: frozenset, k: frozenset) -> List[frozenset]:
    """Left cosets gK with g^-1 H g contained in K; each is one equivariant map."""
    out = []
    seen = set()
    for g in group.elements:
        coset = frozenset(group.mul(g, x) for x in k)
        if coset in seen:
            continue
        seen.add(coset)
        gi = group.inv(g)
        if all(group.mul(group.mul(gi, x), g) in k for x in h):
            out.append(coset)
    return out


def orbit_category(data: PermGroupData) -> ZCategory:
    """Z-linearization of the orbit category of the family.

    Hom-groups are free abelian on the equivariant maps between orbits;
    composition composes the underlying maps.  The linearization step (free
    abelian groups on the hom-sets) is what makes the orbit category fit the
    Z-linear framework, and is flagged in builder metadata.
    """
    errors, _ = data.validate()
    if errors:
        raise CategoryError("; ".join(errors))
    group = data.build_group()
    family = data.build_family(group)
    names = ["G/H%d" % i for i in range(len(family))]
    gens_by_pair: Dict[Tuple[str, str], List[frozenset]] = {}
    hom = {}
    for i, h in enumerate(family):
        for j, k in enumerate(family):
            reps = equivariant_coset_reps(group, h, k)
            reps.sort(key=lambda c: sorted(c))
            gens_by_pair[(names[i], names[j])] = reps
            hom[(names[i], names[j])] = FpAbelianGroup.free(len(reps))
    comp = {}
    for i, h in enumerate(family):
        for j, k in enumerate(family):
            for l, m in enumerate(family):
                fs = gens_by_pair[(names[i], names[j])]
                gs = gens_by_pair[(names[j], names[l])]
                target = gens_by_pair[(names[i], names[l])]
                if not (fs and gs):
                    continue
                table = []
                for gcoset in gs:
                    urep = min(gcoset, key=lambda x: x)
                    row = []
                    for fcoset in fs:
                        vrep = min(fcoset, key=lambda x: x)
                        w = group.mul(vrep, urep)
                        composite = frozenset(group.mul(w, x) for x in m)
                        vec = [0] * len(target)
                        vec[target.index(composite)] = 1
                        row.append(tuple(vec))
                    table.append(tuple(row))
                comp[(names[i], names[j], names[l])] = tuple(table)
    identities = {}
    for i, h in enumerate(family):
        reps = gens_by_pair[(names[i], names[i])]
        ecoset = frozenset(h)
        vec = [0] * len(reps)
        vec[reps.index(ecoset)] = 1
        identities[names[i]] = tuple(vec)
    cat = ZCategory(names, hom, comp, identities, validate=False)
    rep = cat.validate()
    if not rep.ok:
        raise CategoryError("orbit construction violated the axioms: " + rep.summary())
    return cat


def count_equivariant_maps_bruteforce(group: PermGroup, h: frozenset, k: frozenset) -> int:
    """Independent oracle: enumerate all coset functions and filter equivariance."""
    cosets_h = group.left_cosets(h)
    cosets_k = group.left_cosets(k)
    act = {}
    for g in group.elements:
        for ci, c in enumerate(cosets_h):
            act[(g, ci)] = cosets_h.index(frozenset(group.mul(g, x) for x in c))
    act_k = {}
    for g in group.elements:
        for ci, c in enumerate(cosets_k):
            act_k[(g, ci)] = cosets_k.index(frozenset(group.mul(g, x) for x in c))
    count = 0
    nh, nk = len(cosets_h), len(cosets_k)
    assignment = [0] * nh
    while True:
        ok = True
        for g in group.elements:
            for ci in range(nh):
                if assignment[act[(g, ci)]] != act_k[(g, assignment[ci])]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            count += 1
        pos = nh - 1
        while pos >= 0 and assignment[pos] == nk - 1:
            assignment[pos] = 0
            pos -= 1
        if pos < 0:
            break
        assignment[pos] += 1
    return count


# ---------------------------------------------------------------------------
# sums of prime fields
# ---------------------------------------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def sum_of_fields(primes: Sequence[int]) -> ZCategory:
    """One object per prime with End = Z/p and no morphisms across objects."""
    primes = [int(p) for p in primes]
    if not primes:
        raise ValueError("empty prime list gives an empty object set")
    for p in primes:
        if not _is_prime(p):
            raise ValueError("%d is not prime" % p)
    names = []
    seen: Dict[int, int] = {}
    for p in primes:
        k = seen.get(p, 0)
        seen[p] = k + 1
        names.append("F%d" % p if k == 0 else "F%d_%d" % (p, k))
    hom = {}
    comp = {}
    identities = {}
    for name, p in zip(names, primes):
        hom[(name, name)] = FpAbelianGroup.cyclic(p)
        comp[(name, name, name)] = (((1,),),)
        identities[name] = (1,)
    return ZCategory(names, hom, comp, identities, validate=True)

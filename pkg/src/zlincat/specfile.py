"""JSON file formats: category specs, tuple morphisms, witnesses, samples.

Integers are serialized as decimal strings so round trips stay bit-exact at
any magnitude; parsers accept plain JSON numbers as well.
"""

from __future__ import annotations

import hashlib
import json
from typing import Dict, List, Optional, Sequence

from .abgroup import FpAbelianGroup
from .intlin import IntMatrix
from .zcat import ZCategory
from .completion import MatMorphism


class SpecError(Exception):
    """Malformed input document."""


def _enc_int(x: int) -> str:
    return str(int(x))


def _dec_int(x) -> int:
    if isinstance(x, bool):
        raise SpecError("boolean where integer expected")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x, 10)
        except ValueError as e:
            raise SpecError("bad integer literal %r" % x) from e
    raise SpecError("bad integer value %r" % (x,))


def _dec_vec(v) -> list:
    if not isinstance(v, list):
        raise SpecError("expected a list of integers")
    return [_dec_int(x) for x in v]


def _dec_mat(m) -> list:
    if not isinstance(m, list):
        raise SpecError("expected a list of rows")
    return [_dec_vec(r) for r in m]


def _pair_key(a: str, b: str) -> str:
    return "%s->%s" % (a, b)


def _triple_key(a: str, b: str, c: str) -> str:
    return "%s->%s->%s" % (a, b, c)


# ---------------------------------------------------------------------------
# category spec documents
# ---------------------------------------------------------------------------

def category_to_doc(cat: ZCategory, metadata: Optional[dict] = None) -> dict:
    hom = {}
    for (a, b), grp in sorted(cat.hom_groups.items()):
        if grp.ngens == 0:
            continue
        hom[_pair_key(a, b)] = {
            "generators": grp.ngens,
            "relations": [[_enc_int(x) for x in row] for row in grp.relations.data],
        }
    comp = {}
    for (a, b, c), table in sorted(cat.comp_tables.items()):
        comp[_triple_key(a, b, c)] = [[[_enc_int(x) for x in vec] for vec in row]
                                      for row in table]
    doc = {
        "objects": list(cat.objects),
        "hom": hom,
        "identity": {a: [_enc_int(x) for x in cat.identity_coeffs[a]]
                     for a in cat.objects},
        "composition": comp,
    }
    if metadata:
        doc["metadata"] = metadata
    return doc


def category_from_doc(doc: dict, validate: bool = True) -> ZCategory:
    if not isinstance(doc, dict):
        raise SpecError("category document must be a JSON object")
    objects = doc.get("objects")
    if not isinstance(objects, list) or not objects:
        raise SpecError("missing or empty 'objects' list")
    objects = [str(o) for o in objects]
    for o in objects:
        if "->" in o:
            raise SpecError("object name %r may not contain '->'" % o)
    obj_set = set(objects)

    hom: Dict[tuple, FpAbelianGroup] = {}
    for key, spec in (doc.get("hom") or {}).items():
        parts = key.split("->")
        if len(parts) != 2 or parts[0] not in obj_set or parts[1] not in obj_set:
            raise SpecError("bad hom key %r" % key)
        ngens = _dec_int(spec.get("generators", 0))
        rel = _dec_mat(spec.get("relations", []))
        if any(len(r) != ngens for r in rel):
            raise SpecError("relation rows under %r must have %d entries" % (key, ngens))
        hom[(parts[0], parts[1])] = FpAbelianGroup(ngens, IntMatrix(rel, len(rel), ngens))

    def hom_of(a, b):
        return hom.get((a, b), FpAbelianGroup.trivial())

    comp = {}
    for key, table in (doc.get("composition") or {}).items():
        parts = key.split("->")
        if len(parts) != 3 or any(p not in obj_set for p in parts):
            raise SpecError("bad composition key %r" % key)
        a, b, c = parts
        gbc = hom_of(b, c).ngens
        gab = hom_of(a, b).ngens
        gac = hom_of(a, c).ngens
        if not isinstance(table, list) or len(table) != gbc:
            raise SpecError("composition table %r must have %d generator rows" % (key, gbc))
        parsed = []
        for row in table:
            if not isinstance(row, list) or len(row) != gab:
                raise SpecError("composition table %r rows must have %d entries" % (key, gab))
            prow = []
            for vec in row:
                v = _dec_vec(vec)
                if len(v) != gac:
                    raise SpecError("composition vectors under %r must have %d entries"
                                    % (key, gac))
                prow.append(tuple(v))
            parsed.append(tuple(prow))
        comp[(a, b, c)] = tuple(parsed)

    identities = {}
    for a, vec in (doc.get("identity") or {}).items():
        if a not in obj_set:
            raise SpecError("identity for unknown object %r" % a)
        v = _dec_vec(vec)
        if len(v) != hom_of(a, a).ngens:
            raise SpecError("identity for %r must have %d coefficients"
                            % (a, hom_of(a, a).ngens))
        identities[a] = tuple(v)
    for a in objects:
        if a not in identities:
            raise SpecError("missing identity for object %r" % a)

    return ZCategory(objects, hom, comp, identities, validate=validate)


def load_category(path: str, validate: bool = True) -> ZCategory:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as e:
            raise SpecError("not valid JSON: %s" % e) from e
    return category_from_doc(doc, validate=validate)


def load_doc(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as e:
            raise SpecError("not valid JSON: %s" % e) from e


# ---------------------------------------------------------------------------
# tuple morphisms
# ---------------------------------------------------------------------------

def matmorphism_to_doc(mm: MatMorphism, name: Optional[str] = None) -> dict:
    doc = {
        "src": list(mm.src),
        "tgt": list(mm.tgt),
        "entries": [[[_enc_int(x) for x in m.coeffs] for m in row]
                    for row in mm.entries],
    }
    if name is not None:
        doc["name"] = name
    return doc


def matmorphism_from_doc(cat: ZCategory, doc: dict) -> MatMorphism:
    if not isinstance(doc, dict):
        raise SpecError("morphism document must be a JSON object")
    src = tuple(str(o) for o in doc.get("src", []))
    tgt = tuple(str(o) for o in doc.get("tgt", []))
    for o in src + tgt:
        if o not in cat.objects:
            raise SpecError("morphism references unknown object %r" % o)
    rows = doc.get("entries")
    if not isinstance(rows, list) or len(rows) != len(tgt):
        raise SpecError("morphism entries must have one row per target component")
    ents = []
    for j, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(src):
            raise SpecError("morphism entry row %d has wrong length" % j)
        out = []
        for i, vec in enumerate(row):
            v = _dec_vec(vec)
            grp = cat.hom(src[i], tgt[j])
            if len(v) != grp.ngens:
                raise SpecError("entry (%d,%d) needs %d coefficients" % (j, i, grp.ngens))
            out.append(cat.mor(src[i], tgt[j], v))
        ents.append(out)
    return MatMorphism(cat, src, tgt, ents)


def morphisms_from_doc(cat: ZCategory, doc) -> List[tuple]:
    """[(name, MatMorphism)] from a single doc or a {"morphisms": [...]} file."""
    if isinstance(doc, dict) and "morphisms" in doc:
        items = doc["morphisms"]
    elif isinstance(doc, dict):
        items = [doc]
    else:
        raise SpecError("expected a morphism object or a 'morphisms' list")
    out = []
    for i, item in enumerate(items):
        name = str(item.get("name", "m%d" % i))
        out.append((name, matmorphism_from_doc(cat, item)))
    return out


def basis_morphisms(cat: ZCategory) -> List[tuple]:
    """Every hom-group generator as a named 1x1 tuple morphism."""
    out = []
    for a in cat.objects:
        for b in cat.objects:
            for k, g in enumerate(cat.gens(a, b)):
                out.append(("%s->%s:g%d" % (a, b, k), MatMorphism.single(g)))
    return out


# ---------------------------------------------------------------------------
# witnesses and projective samples
# ---------------------------------------------------------------------------

def witness_to_doc(blocks: Sequence[tuple], matrix: IntMatrix) -> dict:
    return {
        "blocks": [{"kind": str(kind), "size": int(size)} for kind, size in blocks],
        "matrix": [[_enc_int(x) for x in row] for row in matrix.data],
    }


def witness_from_doc(doc: dict) -> tuple:
    if not isinstance(doc, dict) or "blocks" not in doc or "matrix" not in doc:
        raise SpecError("witness document needs 'blocks' and 'matrix'")
    blocks = []
    for b in doc["blocks"]:
        kind = str(b.get("kind"))
        size = _dec_int(b.get("size"))
        if kind != "Z":
            p = _dec_int(kind)
            if p < 2:
                raise SpecError("block kind must be 'Z' or a prime")
            kind = p
        if size < 1:
            raise SpecError("block size must be positive")
        blocks.append((kind, size))
    mat = _dec_mat(doc["matrix"])
    return blocks, IntMatrix(mat, len(mat), len(mat[0]) if mat else 0)


def samples_from_doc(cat: ZCategory, doc: dict) -> List:
    from .completion import IdemObject
    if not isinstance(doc, dict) or "samples" not in doc:
        raise SpecError("sample document needs a 'samples' list")
    out = []
    for item in doc["samples"]:
        carrier = tuple(str(o) for o in item.get("carrier", []))
        p = matmorphism_from_doc(cat, {"src": list(carrier), "tgt": list(carrier),
                                       "entries": item.get("p")})
        out.append(IdemObject(cat, carrier, p))
    return out


def samples_to_doc(samples: Sequence) -> dict:
    return {
        "samples": [
            {"carrier": list(s.carrier),
             "p": [[[_enc_int(x) for x in m.coeffs] for m in row]
                   for row in s.p.entries]}
            for s in samples
        ]
    }


# ---------------------------------------------------------------------------
# misc
# ---------------------------------------------------------------------------

def dump_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def digest_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        h.update(fh.read())
    return h.hexdigest()


def digest_doc(doc: dict) -> str:
    return hashlib.sha256(dump_json(doc).encode("utf-8")).hexdigest()

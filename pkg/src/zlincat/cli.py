"""Command-line surface.

Exit codes are a stable contract: 0 success / all checks passed, 1 semantic
failure (invalid category, failed witness, inconclusive or absent
certificates), 2 malformed input.  Reports go to stdout as JSON with a
human-readable summary on stderr; every command is deterministic given its
inputs and seed.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from typing import List, Optional, Sequence

from . import builders, k0 as k0mod, report as reportmod, resolutions, specfile
from .abgroup import direct_sum
from .completion import MatMorphism
from .modules import (FpFunctor, PresentedMap, exactness_transport,
                      find_quasi_inverse, random_fp_functor, random_matmorphism,
                      roundtrip_check, to_ring_module)
from .ringify import build_ring, truncated_additive_ring
from .specfile import SpecError
from .zcat import ZCategory


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ZLINCAT_THREADS", "1")))
    except ValueError:
        return 1


def _load_cat(path: str):
    """(category, metadata, validation report); parse errors raise SpecError."""
    doc = specfile.load_doc(path)
    cat = specfile.category_from_doc(doc, validate=False)
    return cat, doc.get("metadata") or {}, cat.validate()


def _split_outside_parens(text: str, sep: str) -> List[str]:
    out = []
    depth = 0
    cur = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [s.strip() for s in out if s.strip()]


def _parse_group(spec: str) -> builders.PermGroup:
    parts = spec.split(":", 2)
    if len(parts) != 3 or parts[0] != "perm":
        raise SpecError("group spec must look like perm:DEGREE:(cycles),(cycles)")
    degree = int(parts[1])
    gens = [builders.parse_cycles(g, degree)
            for g in _split_outside_parens(parts[2], ",")]
    return builders.PermGroup(degree, gens)


def _parse_family(spec: str, group: builders.PermGroup) -> List[List[tuple]]:
    fam = []
    for item in spec.split(";"):
        item = item.strip()
        if item == "e":
            fam.append([])
        elif item == "full":
            fam.append([list(g) for g in group.generators])
        else:
            fam.append([builders.parse_cycles(c, group.degree)
                        for c in _split_outside_parens(item, ",")])
    return fam


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_validate(args) -> int:
    try:
        cat, _, rep = _load_cat(args.spec)
    except SpecError as e:
        print("parse error: %s" % e, file=sys.stderr)
        return 2
    code = 0 if rep.ok else 1
    doc = reportmod.make_report("validate", {args.spec: None}, {
        "valid": rep.ok,
        "objects": list(cat.objects),
        "violations": rep.violations,
    }, code)
    lines = ["%s: %s" % (args.spec, "valid" if rep.ok else rep.summary())]
    lines += ["  " + v for v in rep.violations[:10]]
    reportmod.emit_report(doc, lines, out_path=args.out)
    return code


def cmd_ring(args) -> int:
    try:
        cat, meta, rep = _load_cat(args.spec)
    except SpecError as e:
        print("parse error: %s" % e, file=sys.stderr)
        return 2
    if not rep.ok:
        print("invalid category: %s" % rep.summary(), file=sys.stderr)
        return 1
    ring = build_ring(cat)
    rank, divs = ring.carrier.invariants
    payload = {
        "objects": list(cat.objects),
        "carrier": {"free_rank": rank, "torsion": [str(d) for d in divs]},
        "basis": [{"index": i, "src": s, "tgt": t, "generator": k}
                  for i, (s, t, k) in enumerate(ring.basis_labels)],
        "unit": [str(x) for x in ring.unit],
        "local_units": {a: [str(x) for x in v] for a, v in ring.local_units.items()},
        "products": [
            {"left": i, "right": j,
             "value": [str(x) for x in ring.mult_vec(
                 [1 if t == i else 0 for t in range(ring.rank)],
                 [1 if t == j else 0 for t in range(ring.rank)])]}
            for i in range(ring.rank) for j in range(ring.rank)
        ],
    }
    lines = ["associated ring: free rank %d, torsion %r" % (rank, list(divs))]
    code = 0

    witness = k0mod.auto_witness(cat, ring, meta)
    if witness is not None:
        check = k0mod.verify_witness(ring, witness)
        payload["witness"] = specfile.witness_to_doc(witness.blocks, witness.map.matrix)
        payload["witness_verified"] = check.ok
        lines.append("canonical block-matrix witness %s (%d basis pairs)"
                     % ("verified" if check.ok else "FAILED", check.pairs_checked))
        if not check.ok:
            code = 1

    if args.truncate:
        try:
            _, trep = truncated_additive_ring(cat, args.truncate)
        except ValueError as e:
            print("cannot run the truncated comparison: %s" % e, file=sys.stderr)
            return 2
        payload["truncated_completion"] = trep
        lines.append("truncation at %d: %s (ranks %d = %d, %d products checked)"
                     % (args.truncate, "identified" if trep["ok"] else "MISMATCH",
                        trep["completion_ring_rank"], trep["matrix_sum_ring_rank"],
                        trep["multiplicative_pairs_checked"]))
        if not trep["ok"]:
            code = 1

    doc = reportmod.make_report("ring", {args.spec: None}, payload, code)
    ranks = {(a, b): cat.hom(a, b).ngens for a in cat.objects for b in cat.objects}
    table = (["src", "tgt", "generators", "free_rank", "torsion"],
             [[a, b, cat.hom(a, b).ngens, cat.hom(a, b).invariants[0],
               ";".join(str(d) for d in cat.hom(a, b).invariants[1])]
              for a in cat.objects for b in cat.objects])
    reportmod.emit_report(doc, lines, out_path=args.out, report_dir=args.report_dir,
                          table=table,
                          figure=reportmod.fig_hom_ranks(cat.objects, ranks))
    return code


def cmd_check_regular(args) -> int:
    try:
        cat, meta, rep = _load_cat(args.spec)
    except SpecError as e:
        print("parse error: %s" % e, file=sys.stderr)
        return 2
    if not rep.ok:
        print("invalid category: %s" % rep.summary(), file=sys.stderr)
        return 1
    inputs = {args.spec: None}
    try:
        if args.basis:
            morphisms = specfile.basis_morphisms(cat)
        else:
            inputs[args.morphisms] = None
            morphisms = specfile.morphisms_from_doc(
                cat, specfile.load_doc(args.morphisms))
    except SpecError as e:
        print("bad morphism file: %s" % e, file=sys.stderr)
        return 2
    reg = resolutions.check_regular(cat, morphisms, depth=args.depth,
                                    threads=_threads())
    reg_dict = reg.to_dict()
    negk = k0mod.negative_k_report(cat, {"kind": "depth-certificates",
                                         "report": reg_dict})
    code = 0 if reg.all_certified else 1
    payload = {"regularity": reg_dict, "negative_k": negk}
    lines = ["depth bound %d: %d/%d morphisms certified"
             % (args.depth, sum(1 for v in reg.verdicts if v.certified),
                len(reg.verdicts))]
    for v in reg.verdicts[:20]:
        lines.append("  %-24s %s" % (v.name,
                     "k=%d" % v.least_depth if v.certified
                     else "inconclusive at depth %d" % args.depth))
    for claim in negk["claims"]:
        lines.append("cited: %s [tier: %s]" % (claim["statement"], claim["tier"]))
    for note in negk["notes"]:
        lines.append("note: %s" % note)
    doc = reportmod.make_report("check-regular", inputs, payload, code)
    entries = reg_dict["morphisms"]
    table = (["morphism", "least_splitting_depth", "status"],
             [[e["name"], e["least_splitting_depth"], e["status"]] for e in entries])
    reportmod.emit_report(doc, lines, out_path=args.out, report_dir=args.report_dir,
                          table=table,
                          figure=reportmod.fig_splitting_depths(entries, args.depth))
    return code


def _equiv_trial(cat: ZCategory, rng: random.Random) -> dict:
    f = random_fp_functor(cat, rng)
    ok_round = roundtrip_check(f)

    p = random_matmorphism(cat, rng)
    free_src = FpFunctor.free(cat, p.src)
    free_tgt = FpFunctor.free(cat, p.tgt)
    cokf = FpFunctor(p)
    phi = PresentedMap(free_src, free_tgt, p)
    psi = PresentedMap(free_tgt, cokf, MatMorphism.identity(cat, p.tgt))
    ok_ring = exactness_transport(phi, psi, "to_ring_module")
    ok_res = exactness_transport(phi, psi, "restrict")

    g = random_fp_functor(cat, rng)
    fg = f.direct_sum(g)
    ok_sum = True
    for c in cat.objects:
        summed, _ = direct_sum([f.evaluate(c).group, g.evaluate(c).group])
        if fg.evaluate(c).group.invariants != summed.invariants:
            ok_sum = False
    m_f = to_ring_module(f)
    m_g = to_ring_module(g)
    m_fg = to_ring_module(fg)
    summed, _ = direct_sum([m_f.carrier, m_g.carrier])
    if m_fg.carrier.invariants != summed.invariants:
        ok_sum = False

    return {"roundtrip": ok_round, "transport_to_ring": ok_ring,
            "transport_restrict": ok_res, "direct_sums": ok_sum}


def cmd_equiv(args) -> int:
    try:
        cat, _, rep = _load_cat(args.spec)
    except SpecError as e:
        print("parse error: %s" % e, file=sys.stderr)
        return 2
    if not rep.ok:
        print("invalid category: %s" % rep.summary(), file=sys.stderr)
        return 1
    rng = random.Random(args.seed)
    trials = [_equiv_trial(cat, rng) for _ in range(args.trials)]
    all_ok = all(all(t.values()) for t in trials)
    code = 0 if all_ok else 1
    payload = {"seed": args.seed, "trials": trials, "all_passed": all_ok}
    lines = ["%d trials with seed %d: %s" % (args.trials, args.seed,
                                             "all passed" if all_ok else "FAILURES")]
    doc = reportmod.make_report("equiv", {args.spec: None}, payload, code)
    table = (["trial", "roundtrip", "transport_to_ring", "transport_restrict",
              "direct_sums"],
             [[i, t["roundtrip"], t["transport_to_ring"], t["transport_restrict"],
               t["direct_sums"]] for i, t in enumerate(trials)])
    reportmod.emit_report(doc, lines, out_path=args.out, report_dir=args.report_dir,
                          table=table,
                          figure=reportmod.fig_trials(trials) if trials else None)
    return code


def cmd_k0(args) -> int:
    try:
        cat, meta, rep = _load_cat(args.spec)
    except SpecError as e:
        print("parse error: %s" % e, file=sys.stderr)
        return 2
    if not rep.ok:
        print("invalid category: %s" % rep.summary(), file=sys.stderr)
        return 1
    ring = build_ring(cat)
    inputs = {args.spec: None}
    try:
        if args.witness:
            inputs[args.witness] = None
            blocks, mat = specfile.witness_from_doc(specfile.load_doc(args.witness))
            from .abgroup import AbHom
            bring = k0mod.block_matrix_ring(blocks)
            witness = k0mod.SemisimpleWitness(ring=ring, blocks=tuple(blocks),
                                              map=AbHom(ring.carrier, bring.carrier, mat),
                                              block_ring=bring)
        else:
            witness = k0mod.auto_witness(cat, ring, meta)
            if witness is None:
                print("no canonical witness available; pass --witness",
                      file=sys.stderr)
                return 2
    except SpecError as e:
        print("bad witness file: %s" % e, file=sys.stderr)
        return 2

    check = k0mod.verify_witness(ring, witness)
    if not check.ok:
        first = next((f for f in check.failures if f[0] == "multiplicativity"), None)
        where = (" at basis pair %r, %r" % (first[1], first[2])) if first else ""
        print("witness failed verification%s" % where, file=sys.stderr)
        doc = reportmod.make_report("k0", inputs, {
            "witness_verified": False,
            "failures": [list(map(str, f)) for f in check.failures[:5]],
        }, 1)
        reportmod.emit_report(doc, ["witness FAILED%s" % where], out_path=args.out)
        return 1

    try:
        if args.sample:
            inputs[args.sample] = None
            samples = specfile.samples_from_doc(cat, specfile.load_doc(args.sample))
        else:
            samples = k0mod.default_sample(cat, 10)
    except (SpecError, ValueError) as e:
        print("bad sample file: %s" % e, file=sys.stderr)
        return 2

    bridge = k0mod.k0_bridge_check(cat, witness, samples)
    classes = [list(k0mod.class_of(p, witness)) for p in samples]
    negk = k0mod.negative_k_report(
        cat, {"kind": "known-family", "family": _family_of(witness)})
    code = 0 if bridge.ok else 1
    block_names = ["M_%d(%s)" % (size, "Z" if kind == "Z" else "F%d" % kind)
                   for kind, size in witness.blocks]
    payload = {
        "k0_group": "Z^%d" % len(witness.blocks),
        "blocks": block_names,
        "witness_verified": True,
        "witness_pairs_checked": check.pairs_checked,
        "class_convention": "[P] is the vector of exact block ranks of the pushed "
                            "idempotent; one coordinate per witness block",
        "samples": [{"index": i, "carrier": list(p.carrier), "class": c}
                    for i, (p, c) in enumerate(zip(samples, classes))],
        "bridge": {"ok": bridge.ok, "checks": bridge.checks},
        "negative_k": negk,
    }
    lines = ["K0 = Z^%d via verified witness (%s)" % (len(witness.blocks),
                                                      ", ".join(block_names)),
             "bridge check: %s over %d samples" % ("ok" if bridge.ok else "FAILED",
                                                   len(samples))]
    for claim in negk["claims"]:
        lines.append("cited: %s [tier: %s]" % (claim["statement"], claim["tier"]))
    doc = reportmod.make_report("k0", inputs, payload, code)
    table = (["sample", "carrier"] + block_names,
             [[i, "+".join(p.carrier)] + c
              for i, (p, c) in enumerate(zip(samples, classes))])
    labels = ["s%d" % i for i in range(len(samples))]
    reportmod.emit_report(doc, lines, out_path=args.out, report_dir=args.report_dir,
                          table=table,
                          figure=reportmod.fig_classes(labels, classes, block_names))
    return code


def _family_of(witness) -> str:
    kinds = {kind for kind, _ in witness.blocks}
    sizes = {size for _, size in witness.blocks}
    if kinds == {"Z"}:
        return "matrix-ring-over-Z" if sizes != {1} else "integers"
    if "Z" in kinds:
        return "block-matrix-ring"
    if sizes == {1}:
        return "sum-of-prime-fields" if len(witness.blocks) > 1 else "prime-field"
    return "matrix-ring-over-prime-field"


def cmd_build(args) -> int:
    try:
        if args.kind == "ring":
            if args.integers:
                cat = builders.integer_category()
                meta = {"construction": {"kind": "integers"}}
            elif args.integers_mod:
                cat = builders.zmod_category(args.integers_mod)
                meta = {"construction": {"kind": "integers-mod",
                                         "modulus": args.integers_mod}}
            elif args.group_ring:
                group = _parse_group(args.group_ring)
                cat = builders.group_ring_category(group)
                meta = {"construction": {"kind": "group-ring",
                                         "group": args.group_ring,
                                         "order": len(group.elements)}}
            else:
                print("ring build needs --integers, --integers-mod or --group-ring",
                      file=sys.stderr)
                return 2
        elif args.kind == "graded":
            if args.nilpotent_ring is None or args.cyclic is None:
                print("graded build needs --cyclic N and --nilpotent-ring BASE EXP",
                      file=sys.stderr)
                return 2
            base, exp = args.nilpotent_ring
            if int(exp) != args.cyclic:
                print("truncation exponent must equal the cyclic order",
                      file=sys.stderr)
                return 2
            data = builders.cyclic_shift_data(args.cyclic, base=base)
            cat = builders.graded_category(data)
            meta = {"construction": {
                "kind": "cyclic-shift", "base": base, "n": args.cyclic,
                "note": "the truncation exponent is read cyclically: the "
                        "degree-1 shift is invertible, which is what makes the "
                        "associated ring a full matrix ring over the base"}}
        elif args.kind == "orbit":
            group = _parse_group(args.group)
            fam = _parse_family(args.subgroups, group)
            data = builders.PermGroupData(degree=group.degree,
                                          generators=[list(g) for g in group.generators],
                                          family=fam)
            errors, warnings = data.validate()
            if errors:
                for e in errors:
                    print("closure violation: %s" % e, file=sys.stderr)
                return 1
            cat = builders.orbit_category(data)
            meta = {"construction": {
                "kind": "orbit", "group": args.group, "subgroups": args.subgroups,
                "linearization": "hom-groups are free abelian on the equivariant "
                                 "maps between orbits",
                "closure_warnings": warnings}}
        elif args.kind == "sumfields":
            cat = builders.sum_of_fields(args.primes)
            meta = {"construction": {"kind": "sum-of-fields",
                                     "primes": [int(p) for p in args.primes]}}
        else:
            print("unknown build kind %r" % args.kind, file=sys.stderr)
            return 2
    except (SpecError, ValueError, builders.CategoryError) as e:
        print("build failed: %s" % e, file=sys.stderr)
        return 1 if isinstance(e, builders.CategoryError) else 2

    doc = specfile.category_to_doc(cat, metadata=meta)
    text = specfile.dump_json(doc)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    print("wrote %s (%d objects)" % (args.out, len(cat.objects)), file=sys.stderr)
    return 0


def cmd_pseudo_kernel(args) -> int:
    try:
        cat, _, rep = _load_cat(args.spec)
        if not rep.ok:
            print("invalid category: %s" % rep.summary(), file=sys.stderr)
            return 1
        morphisms = specfile.morphisms_from_doc(cat, specfile.load_doc(args.morphism))
    except SpecError as e:
        print("parse error: %s" % e, file=sys.stderr)
        return 2
    certs = []
    for name, f in morphisms:
        chain = resolutions.pseudo_n_kernel(f, args.n)
        witness = None
        for k in range(1, args.n + 1):
            witness = resolutions.find_splitting(chain, k)
            if witness:
                break
        cert = resolutions.chain_certificate(chain, witness)
        cert["name"] = name
        if not resolutions.verify_chain_certificate(cat, cert):
            print("internal error: certificate for %s failed replay" % name,
                  file=sys.stderr)
            return 1
        certs.append(cert)
    doc = reportmod.make_report("pseudo-kernel",
                                {args.spec: None, args.morphism: None},
                                {"depth": args.n, "certificates": certs}, 0)
    lines = ["%s: chain of length %d, %s" % (
        c["name"], len(c["stages"]),
        "witness at depth %d" % c["witness"]["depth"] if c["witness"]
        else "no witness up to depth %d" % args.n) for c in certs]
    reportmod.emit_report(doc, lines, out_path=args.out)
    return 0


def cmd_quasi_inverse(args) -> int:
    try:
        cat, _, rep = _load_cat(args.spec)
        if not rep.ok:
            print("invalid category: %s" % rep.summary(), file=sys.stderr)
            return 1
        morphisms = specfile.morphisms_from_doc(cat, specfile.load_doc(args.morphism))
    except SpecError as e:
        print("parse error: %s" % e, file=sys.stderr)
        return 2
    results = []
    all_found = True
    for name, f in morphisms:
        h = find_quasi_inverse(f)
        if h is None:
            results.append({"name": name, "found": False})
            all_found = False
        else:
            results.append({"name": name, "found": True,
                            "quasi_inverse": specfile.matmorphism_to_doc(h)})
    code = 0 if all_found else 1
    doc = reportmod.make_report("quasi-inverse",
                                {args.spec: None, args.morphism: None},
                                {"results": results}, code)
    lines = ["%s: %s" % (r["name"], "found" if r["found"] else "absent")
             for r in results]
    reportmod.emit_report(doc, lines, out_path=args.out)
    return code


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zlincat",
        description="Exact computations in finite Z-linear categories: "
                    "validation, associated rings, regularity certificates, "
                    "module equivalence checks, and K0 classes.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the category axioms of a spec file")
    p.add_argument("spec")
    p.add_argument("--out", help="also write the JSON report here")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("ring", help="build the associated ring (and optionally "
                                    "identify the truncated additive completion)")
    p.add_argument("spec")
    p.add_argument("--truncate", type=int, default=0, metavar="N",
                   help="verify the rank identification of the completion "
                        "truncated at tuple length N")
    p.add_argument("--out")
    p.add_argument("--report-dir", help="write report.json, table.csv and figure.png")
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("check-regular", help="search splitting witnesses up to a "
                                             "depth bound")
    p.add_argument("spec")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--morphisms", help="JSON file with the morphisms to test")
    g.add_argument("--basis", action="store_true",
                   help="test every hom-group generator")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--out")
    p.add_argument("--report-dir")
    p.set_defaults(func=cmd_check_regular)

    p = sub.add_parser("equiv", help="randomized functor/ring-module equivalence "
                                     "suite")
    p.add_argument("spec")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--report-dir")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("k0", help="verify a block-matrix witness and compute "
                                  "classes of sample projectives")
    p.add_argument("spec")
    p.add_argument("--witness", help="witness JSON (default: canonical witness "
                                     "from builder metadata)")
    p.add_argument("--sample", help="projective sample JSON (default: built-in "
                                    "10-element sample)")
    p.add_argument("--out")
    p.add_argument("--report-dir")
    p.set_defaults(func=cmd_k0)

    p = sub.add_parser("build", help="emit a category spec file for an example "
                                     "family")
    p.add_argument("kind", choices=["ring", "graded", "orbit", "sumfields"])
    p.add_argument("--integers", action="store_true",
                   help="(ring) the one-object category of Z")
    p.add_argument("--integers-mod", type=int, metavar="M",
                   help="(ring) the one-object category of Z/M")
    p.add_argument("--group-ring", metavar="GROUP",
                   help="(ring) integral group ring; GROUP like perm:2:(12)")
    p.add_argument("--cyclic", type=int, metavar="N",
                   help="(graded) cyclic grading group of order N")
    p.add_argument("--nilpotent-ring", nargs=2, metavar=("BASE", "EXP"),
                   help="(graded) base ring (Z or a prime) and truncation "
                        "exponent; the exponent is read cyclically so the "
                        "shift is invertible")
    p.add_argument("--group", metavar="GROUP",
                   help="(orbit) permutation group, like perm:3:(12),(123)")
    p.add_argument("--subgroups", metavar="FAMILY",
                   help="(orbit) semicolon-separated subgroup generator lists; "
                        "'e' and 'full' are shorthands")
    p.add_argument("primes", nargs="*", help="(sumfields) the primes")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("pseudo-kernel", help="dump a certified pseudo-kernel "
                                             "chain for replay")
    p.add_argument("spec")
    p.add_argument("--morphism", required=True,
                   help="JSON morphism file (single object or 'morphisms' list)")
    p.add_argument("--n", type=int, default=2, help="chain length")
    p.add_argument("--out")
    p.set_defaults(func=cmd_pseudo_kernel)

    p = sub.add_parser("quasi-inverse", help="solve f g f = f exactly")
    p.add_argument("spec")
    p.add_argument("--morphism", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_quasi_inverse)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

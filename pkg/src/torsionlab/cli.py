"""Command-line interface.

Exit codes: 0 = computation completed with positive verdicts, 1 =
computation completed with a negative verdict (violation or witness
emitted), 2 = invalid input.  Output is deterministic: identical argv
produces identical bytes.
"""

import argparse
import json
import random
import sys

from . import __version__
from .classify import classify, commutative_collapse
from .delta import delta_equiv_quasiidentity, delta_from_doc, random_reducible_delta, reduce_delta
from .errors import InvariantError, ReductionError, RingSpecError, TableError
from .kernels import backend
from .modules import (module_corpus, module_from_table, power_module,
                      quotient_module, regular_module, submodule_closure)
from .rings import (all_left_ideals, format_quasiidentity, is_two_sided,
                    left_ideal_closure)
from .ringspec import builtin_rings, parse_ring_spec
from .torsion import (TorsionNotion, check_torsion_axioms,
                      enumerate_torsion_notions, principal_generator,
                      rcm_verify, relative_closure, weak_extension_witness)

_INPUT_ERRORS = (RingSpecError, TableError, ValueError, OSError, json.JSONDecodeError)


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantError as exc:
        # a falsified internal consequence: neither a negative verdict nor
        # bad input, so it gets its own exit code
        print(f"internal hard fault: {exc}", file=sys.stderr)
        return 70


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="torsionlab",
        description="Torsion filters and RCM classification over finite rings")
    parser.add_argument("--version", action="version", version=f"torsionlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, func, help_text, ring_arg=True):
        p = sub.add_parser(name, help=help_text)
        if ring_arg:
            p.add_argument("ring", help="ring spec, e.g. Z(4), UT2(2), prod(Z(2),Z(2))")
        p.add_argument("--json", action="store_true", help="emit a JSON report")
        p.set_defaults(func=func)
        return p

    cmd("ring-info", _cmd_ring_info, "order, units, and element names of a ring")
    cmd("ideals", _cmd_ideals, "list every left ideal")

    p = cmd("torsion-check", _cmd_torsion_check, "check the five torsion axioms")
    p.add_argument("--filter", required=True,
                   help="semicolon-separated generator lists, e.g. 'e11,e12;1'")

    cmd("torsion-enum", _cmd_torsion_enum, "enumerate all torsion notions")

    p = cmd("closure", _cmd_closure, "relative closure of a submodule")
    p.add_argument("--filter", required=True)
    p.add_argument("--module", default="regular",
                   help="regular | power:k | quot:g1,g2,... | file:PATH")
    p.add_argument("--sub", default="", help="generators of the submodule")

    p = cmd("wep", _cmd_wep, "weak extension principle over one module")
    p.add_argument("--filter", required=True)
    p.add_argument("--module", default="regular")

    p = cmd("rcm", _cmd_rcm, "modularity + weak extension over the corpus")
    p.add_argument("--filter", required=True)
    p.add_argument("--bound", type=int, default=2, help="corpus bound (default 2)")

    p = sub.add_parser("delta-reduce", help="reduce a delta-axiom file")
    p.add_argument("path", help="JSON delta-axiom file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_delta_reduce)

    p = cmd("classify", _cmd_classify, "classify a quasiidentity-defined class")
    p.add_argument("--quasi", action="append", default=[],
                   help="generator list of one quasiidentity (repeatable)")
    p.add_argument("--ident", action="append", default=[],
                   help="coefficient list of one linear identity (repeatable)")
    p.add_argument("--bound", type=int, default=2)

    p = sub.add_parser("census", help="aggregate report over a ring corpus")
    p.add_argument("specs", nargs="*", help="ring specs; 'builtin' or empty = builtin corpus")
    p.add_argument("--max-order", type=int, default=16)
    p.add_argument("--bound", type=int, default=2)
    p.add_argument("--seed", type=int, default=None,
                   help="also run a seeded random delta-axiom sweep per ring")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_census)

    return parser


# -- shared helpers -------------------------------------------------------

def _ideal_doc(ideal):
    return {"generators": list(ideal.generators), "elements": ideal.elements()}


def _ideal_str(ideal):
    ring = ideal.ring
    gens = ",".join(ring.element_name(g) for g in ideal.generators)
    elems = ",".join(ring.element_name(i) for i in ideal)
    return f"({gens}) = {{{elems}}}"


def _parse_filter(ring, literal):
    literal = literal.strip()
    if not literal:
        return []
    out = []
    for part in literal.split(";"):
        gens = [ring.resolve(tok) for tok in part.split(",") if tok.strip()]
        out.append(left_ideal_closure(ring, gens))
    return out


def _parse_module(ring, spec):
    spec = spec.strip()
    if spec in ("", "regular"):
        return regular_module(ring)
    if spec.startswith("power:"):
        k = int(spec[6:])
        if k < 1:
            raise RingSpecError("power:k requires k >= 1")
        return power_module(ring, k)
    if spec.startswith("quot:"):
        gens = [ring.resolve(tok) for tok in spec[5:].split(",") if tok.strip()]
        reg = regular_module(ring)
        sub = submodule_closure(reg, gens)
        return quotient_module(reg, sub, name=f"R/({spec[5:]})")
    if spec.startswith("file:"):
        path = spec[5:]
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        return module_from_table(doc, ring, name=f"file:{path}")
    raise RingSpecError(f"unknown module spec {spec!r}")


def _parse_sub(module, ring, literal, module_spec):
    tokens = [tok for tok in literal.split(",") if tok.strip()]
    if module_spec.strip() in ("", "regular"):
        gens = [ring.resolve(tok) for tok in tokens]
    else:
        gens = [int(tok) for tok in tokens]
        for g in gens:
            if not 0 <= g < module.order:
                raise RingSpecError(f"module element index {g} out of range")
    return submodule_closure(module, gens)


def _emit(doc, args, text_lines):
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        for line in text_lines:
            print(line)


# -- commands --------------------------------------------------------------

def _cmd_ring_info(args):
    ring = parse_ring_spec(args.ring)
    named = {name: idx for name, idx in ring._names.items()}
    doc = {"ring": ring.name, "order": ring.order, "zero": ring.zero,
           "one": ring.one, "commutative": ring.is_commutative(),
           "element_names": named}
    lines = [f"ring {ring.name}: order {ring.order}",
             f"  zero = {ring.zero}, one = {ring.one}",
             f"  commutative: {'yes' if ring.is_commutative() else 'no'}"]
    if named:
        names = ", ".join(f"{k}={v}" for k, v in sorted(named.items()))
        lines.append(f"  named elements: {names}")
    _emit(doc, args, lines)
    return 0


def _cmd_ideals(args):
    ring = parse_ring_spec(args.ring)
    ideals = all_left_ideals(ring)
    doc = {"ring": ring.name,
           "ideals": [dict(_ideal_doc(a), two_sided=is_two_sided(a)) for a in ideals]}
    lines = [f"ring {ring.name}: {len(ideals)} left ideals"]
    for a in ideals:
        tag = " (two-sided)" if is_two_sided(a) else ""
        lines.append(f"  {_ideal_str(a)}{tag}")
    _emit(doc, args, lines)
    return 0


def _cmd_torsion_check(args):
    ring = parse_ring_spec(args.ring)
    family = _parse_filter(ring, args.filter)
    result = check_torsion_axioms(ring, family)
    if isinstance(result, TorsionNotion):
        doc = {"ring": ring.name, "valid": True,
               "ideals": [_ideal_doc(a) for a in result.ideals]}
        _emit(doc, args, [f"VALID torsion notion with {len(result)} ideals",
                          *(f"  {_ideal_str(a)}" for a in result.ideals)])
        return 0
    doc = {"ring": ring.name, "valid": False, "violation": result.to_json()}
    _emit(doc, args, [f"AXIOM {result.axiom} VIOLATED: {result.message}"])
    return 1


def _cmd_torsion_enum(args):
    ring = parse_ring_spec(args.ring)
    notions = enumerate_torsion_notions(ring)
    doc = {"ring": ring.name, "count": len(notions),
           "notions": [[_ideal_doc(a) for a in f.ideals] for f in notions]}
    lines = [f"ring {ring.name}: {len(notions)} torsion notions"]
    for f in notions:
        lines.append("  {" + "; ".join(_ideal_str(a) for a in f.ideals) + "}")
    _emit(doc, args, lines)
    return 0


def _require_notion(ring, literal):
    result = check_torsion_axioms(ring, _parse_filter(ring, literal))
    if isinstance(result, TorsionNotion):
        return result, None
    return None, result


def _cmd_closure(args):
    ring = parse_ring_spec(args.ring)
    notion, violation = _require_notion(ring, args.filter)
    if violation is not None:
        print(f"AXIOM {violation.axiom} VIOLATED: {violation.message}")
        return 1
    module = _parse_module(ring, args.module)
    sub = _parse_sub(module, ring, args.sub, args.module)
    closed = relative_closure(notion, module, sub)
    doc = {"ring": ring.name, "module": module.name, "order": module.order,
           "sub": sorted(sub.elements()), "closure": sorted(closed.elements())}
    _emit(doc, args, [f"module {module.name} (order {module.order})",
                      f"  submodule: {sorted(sub.elements())}",
                      f"  closure:   {sorted(closed.elements())} "
                      f"({len(closed)} elements)"])
    return 0


def _cmd_wep(args):
    ring = parse_ring_spec(args.ring)
    notion, violation = _require_notion(ring, args.filter)
    if violation is not None:
        print(f"AXIOM {violation.axiom} VIOLATED: {violation.message}")
        return 1
    module = _parse_module(ring, args.module)
    witness = weak_extension_witness(notion, module)
    if witness is None:
        _emit({"ring": ring.name, "module": module.name, "wep": True},
              args, [f"module {module.name}: weak extension principle holds"])
        return 0
    s, t = witness
    doc = {"ring": ring.name, "module": module.name, "wep": False,
           "witness": {"s": sorted(s.elements()), "t": sorted(t.elements())}}
    _emit(doc, args, [f"module {module.name}: WEP FAILS",
                      f"  S = {sorted(s.elements())}",
                      f"  T = {sorted(t.elements())}"])
    return 1


def _cmd_rcm(args):
    ring = parse_ring_spec(args.ring)
    notion, violation = _require_notion(ring, args.filter)
    if violation is not None:
        print(f"AXIOM {violation.axiom} VIOLATED: {violation.message}")
        return 1
    report = rcm_verify(notion, args.bound)
    doc = dict(report.to_json(), ring=ring.name)
    lines = [f"ring {ring.name}, filter {notion.describe()}",
             f"  modules checked: {report.modules_checked}",
             f"  all lattices modular: {report.all_modular}",
             f"  all WEP pass: {report.all_wep}"]
    for e in report.failures():
        lines.append(f"  FAIL {e['module']}: modular={e['modular']} wep={e['wep']}")
    _emit(doc, args, lines)
    return 0 if report.passed else 1


def _cmd_delta_reduce(args):
    with open(args.path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict) or "ring" not in doc:
        raise RingSpecError("delta axiom file must carry a 'ring' spec", "$.ring")
    ring = parse_ring_spec(doc["ring"])
    axiom = delta_from_doc(doc, ring)
    try:
        red = reduce_delta(axiom)
    except ReductionError as exc:
        out = {"ring": ring.name, "reduced": False, "row": exc.row,
               "coefficient": exc.coefficient, "message": str(exc)}
        _emit(out, args, [f"NOT REDUCIBLE: {exc}"])
        return 1
    rows_doc = [{"a": a, "c": list(c)} for a, c in red.rows]
    out = {"ring": ring.name, "reduced": True, "rows": rows_doc,
           "ideal": _ideal_doc(red.ideal),
           "quasiidentity": format_quasiidentity(red.ideal)}
    lines = [f"ring {ring.name}: reduced {len(red.rows)} rows"]
    for a, c in red.rows:
        terms = [f"{ring.element_name(a)}*X"]
        terms += [f"{ring.element_name(ci)}*U{i}" for i, ci in enumerate(c)]
        lines.append("  E(X,U) = " + " + ".join(terms))
    lines.append(f"  encoding ideal: {_ideal_str(red.ideal)}")
    lines.append(f"  quasiidentity: {format_quasiidentity(red.ideal)}")
    _emit(out, args, lines)
    return 0


def _cmd_classify(args):
    ring = parse_ring_spec(args.ring)
    quasis = [[ring.resolve(tok) for tok in lit.split(",") if tok.strip()]
              for lit in args.quasi]
    idents = [[ring.resolve(tok) for tok in lit.split(",") if tok.strip()]
              for lit in args.ident]
    verdict = classify(ring, quasis, idents, bound=args.bound)
    doc = verdict.to_json()
    lines = [f"ring {ring.name}: {'RCM' if verdict.rcm else 'NOT RCM'}",
             f"  I = {_ideal_str(verdict.annihilator_ideal)}",
             f"  quotient order: {verdict.quotient.order}",
             "  filter (preimages):"]
    lines += [f"    {_ideal_str(a)}" for a in verdict.filter_preimages]
    lines.append(f"  is_variety: {verdict.is_variety}, is_trivial: {verdict.is_trivial}")
    lines.append(f"  corpus checked: {verdict.corpus_modules} modules "
                 f"(bound {verdict.bound})")
    if verdict.violation is not None:
        lines.append(f"  violation: axiom {verdict.violation.axiom}: "
                     f"{verdict.violation.message}")
    _emit(doc, args, lines)
    return 0 if verdict.rcm else 1


def _delta_sweep(ring, seed, corpus, axioms=10, budget=200000):
    rng = random.Random(f"{seed}/{ring.name}")
    instances = 0
    for _ in range(axioms):
        axiom = random_reducible_delta(ring, rng)
        cost_exp = 2 + axiom.u_arity + axiom.z_arity
        for module in corpus:
            if module.order ** cost_exp > budget:
                continue
            delta_equiv_quasiidentity(module, axiom)
            instances += 1
    return instances


def _cmd_census(args):
    specs = args.specs
    if not specs or specs == ["builtin"]:
        pairs = builtin_rings(args.max_order)
    else:
        pairs = []
        for spec in specs:
            try:
                pairs.append((spec, parse_ring_spec(spec)))
            except _INPUT_ERRORS as exc:
                pairs.append((spec, exc))
    entries = []
    bad = 0
    negative = 0
    for spec, ring in pairs:
        if not hasattr(ring, "order"):
            entries.append({"spec": spec, "error": str(ring)})
            bad += 1
            continue
        notions = enumerate_torsion_notions(ring)
        per_notion = []
        for notion in notions:
            report = rcm_verify(notion, args.bound)
            if not report.passed:
                negative += 1
            minimal, quasi = principal_generator(notion)
            entry = {"ideals": [list(a.generators) for a in notion.ideals],
                     "principal": list(minimal.generators),
                     "quasiidentity": quasi,
                     "rcm_pass": report.passed,
                     "modules_checked": report.modules_checked}
            if ring.is_commutative():
                trace = commutative_collapse(ring, notion)
                entry["collapse"] = trace.to_json()
            per_notion.append(entry)
        entry = {"spec": spec, "order": ring.order,
                 "commutative": ring.is_commutative(),
                 "notions": len(notions), "per_notion": per_notion}
        if args.seed is not None:
            corpus = module_corpus(ring, args.bound)
            entry["delta_instances"] = _delta_sweep(ring, args.seed, corpus)
        entries.append(entry)
    # the backend tag stays out of the JSON document so reports are
    # byte-identical across environments, not just across runs
    doc = {"bound": args.bound, "entries": entries}
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        print(f"census over {len(entries)} entries (backend: {backend()})")
        for e in entries:
            if "error" in e:
                print(f"  {e['spec']}: ERROR {e['error']}")
                continue
            tags = []
            if e["commutative"]:
                tags.append("commutative")
            line = f"  {e['spec']} (order {e['order']}"
            if tags:
                line += ", " + ", ".join(tags)
            line += f"): {e['notions']} notions"
            print(line)
            for pn in e["per_notion"]:
                gens = "; ".join(",".join(map(str, g)) for g in pn["ideals"])
                print(f"    {{{gens}}} rcm_pass={pn['rcm_pass']} "
                      f"({pn['modules_checked']} modules)")
            if "delta_instances" in e:
                print(f"    delta sweep: {e['delta_instances']} instances agreed")
    if bad:
        return 2
    return 1 if negative else 0


if __name__ == "__main__":
    sys.exit(main())

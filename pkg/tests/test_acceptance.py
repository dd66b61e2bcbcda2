"""Acceptance suite: the eight release criteria.

Each test prints one ``[acceptance] criterion N: PASS/FAIL`` line with
the elapsed time; run with ``pytest -s`` to see the lines as they pass
(on failure pytest shows them in the captured output).  Stated runtime
limits are asserted when the compiled kernel backend is active; the
pure-Python fallback runs the same checks without the time assertions.
"""

import itertools
import random
import time

import torsionlab as tl

from conftest import A_BITS, E11, E12

COMPILED = tl.backend() == "compiled"


def report(number, ok, elapsed, limit, detail):
    verdict = "PASS" if ok else "FAIL"
    bound = f", limit {limit:.0f}s" if limit else ""
    print(f"[acceptance] criterion {number}: {verdict} "
          f"({elapsed:.1f}s{bound}) {detail}")
    assert ok
    if limit and COMPILED:
        assert elapsed < limit


def test_criterion_1_closing_example_is_rcm_and_not_a_variety():
    t0 = time.perf_counter()
    ring = tl.parse_ring_spec("UT2(2)")
    verdict = tl.classify(ring, [[E11, E12]])
    ok = (verdict.rcm
          and verdict.annihilator_ideal.is_zero()
          and [a.bits for a in verdict.filter_quot] == [A_BITS, 255]
          and verdict.is_variety is False)
    rep = tl.rcm_verify(verdict.notion, 2)
    ok = ok and rep.passed and rep.modules_checked > 0
    report(1, ok, time.perf_counter() - t0, 5,
           f"RCM, I=0, filter={{A,R}}, not a variety; "
           f"{rep.modules_checked} modules all modular + WEP")


def test_criterion_2_commutative_rings_have_only_the_trivial_notion(capsys):
    import json

    from torsionlab.cli import main

    t0 = time.perf_counter()
    checked = 0
    ok = True
    for spec, ring in tl.builtin_rings(16):
        if not ring.is_commutative():
            continue
        assert main(["torsion-enum", spec, "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        ok = ok and doc["count"] == 1
        ok = ok and doc["notions"][0][0]["elements"] == list(range(ring.order))
        notions = tl.enumerate_torsion_notions(ring)
        full_bits = (1 << ring.order) - 1
        ok = ok and len(notions) == 1 and notions[0].key() == (full_bits,)
        trace = tl.commutative_collapse(ring, notions[0])
        ok = ok and trace.square_is_self and trace.idempotent == ring.one \
            and trace.filter_is_trivial
        checked += 1
    report(2, ok and checked >= 15, time.perf_counter() - t0, 30,
           f"{checked} commutative rings, each exactly [{{R}}] "
           "with replayed collapse")


def test_criterion_3_closure_formula_equals_brute_force_least():
    t0 = time.perf_counter()
    instances = 0
    ok = True
    for spec, ring in tl.builtin_rings(16):
        for notion in tl.enumerate_torsion_notions(ring):
            for module in tl.module_corpus(ring, 2):
                if not tl.is_torsion_free(notion, module):
                    continue
                subs = tl.all_submodules(module)
                # independent route: build each quotient and look for
                # torsion elements directly
                tf = {}
                for t in subs:
                    quot = tl.quotient_module(module, t)
                    tf[t.bits] = tl.torsion_elements(notion, quot).is_zero()
                for s in subs:
                    acc = -1
                    for t in subs:
                        if tf[t.bits] and s.bits & ~t.bits == 0:
                            acc &= t.bits
                    formula = tl.relative_closure(notion, module, s)
                    ok = ok and formula.bits == acc
                    instances += 1
    report(3, ok, time.perf_counter() - t0, None,
           f"{instances} (notion, module, submodule) instances, exact set equality")


def test_criterion_4_delta_axioms_agree_with_encoded_quasiidentities():
    t0 = time.perf_counter()
    rng = random.Random(1729)
    rings = tl.builtin_rings(16)
    axioms = 0
    instances = 0
    budget = 2 ** 18
    while axioms < 1000:
        for _, ring in rings:
            axiom = tl.random_reducible_delta(ring, rng)
            axioms += 1
            exponent = 2 + axiom.u_arity + axiom.z_arity
            for module in tl.module_corpus(ring, 2):
                if module.order ** exponent > budget:
                    continue
                tl.delta_equiv_quasiidentity(module, axiom)  # raises on mismatch
                instances += 1
    report(4, axioms >= 1000 and instances >= 1000,
           time.perf_counter() - t0, 60,
           f"{axioms} axioms, {instances} (axiom, module) instances, all agree")


def test_criterion_5_proof_constructions_hold_as_properties():
    t0 = time.perf_counter()
    directed = composed = translated = 0
    for spec, ring in tl.builtin_rings(16):
        n = ring.order
        square = tl.power_module(ring, 2)
        one_one = ring.one * n + ring.one
        for notion in tl.enumerate_torsion_notions(ring):
            corpus = tl.module_corpus(ring, 2)
            for a, b in itertools.product(notion.ideals, repeat=2):
                # (a) the (1,1) element witnesses down-directedness in R+R
                bits = 0
                for x in a:
                    for y in b:
                        bits |= 1 << (x * n + y)
                sub = tl.Submodule(square, bits)
                closed = tl.relative_closure(notion, square, sub)
                assert one_one in closed
                carrier = tl.closure_witness(notion, square, sub, one_one)
                assert carrier is not None and carrier.bits & ~(a.bits & b.bits) == 0
                directed += 1
                # (b) composed quasiidentity propagates over the corpus
                composed_q = tl.compose_quasiidentities(ring, a.generators, b.generators)
                for module in corpus:
                    if tl.satisfies_quasiidentity(module, a) and \
                            tl.satisfies_quasiidentity(module, b):
                        assert composed_q.satisfied_by(module)
                        composed += 1
            # (c) right translation: a member B with B*r inside A, for every pair
            for a in notion.ideals:
                for r in range(n):
                    assert tl.right_translation_witness(notion, a, r) is not None
                    translated += 1
    report(5, directed > 0 and composed > 0 and translated > 0,
           time.perf_counter() - t0, None,
           f"directedness x{directed}, composition x{composed}, "
           f"translation x{translated}, all hold")


def test_criterion_6_every_notion_is_a_principal_filter():
    t0 = time.perf_counter()
    checked = 0
    for spec, ring in tl.builtin_rings(16):
        corpus = tl.module_corpus(ring, 2)
        for notion in tl.enumerate_torsion_notions(ring):
            minimal, text = tl.principal_generator(notion)
            assert all(minimal.bits & ~b.bits == 0 for b in notion.ideals)
            assert tl.is_two_sided(minimal)
            square = tl.product_ideal(minimal.generators, minimal.generators, ring)
            assert square.bits == minimal.bits
            assert text.endswith("→(x=0)")
            for module in corpus:
                assert tl.satisfies_quasiidentity(module, minimal) == \
                    tl.is_torsion_free(notion, module)
            checked += 1
    report(6, checked > 0, time.perf_counter() - t0, None,
           f"{checked} notions: unique idempotent two-sided minimum, "
           "single quasiidentity matches the class")


_sweep_cache = {}


def classification_sweep():
    """All one- and two-ideal systems over every builtin ring of order <= 8."""
    if "verdicts" not in _sweep_cache:
        verdicts = []
        for spec, ring in tl.builtin_rings(8):
            ideals = tl.all_left_ideals(ring)
            systems = [(a,) for a in ideals] + list(itertools.combinations(ideals, 2))
            for system in systems:
                verdict = tl.classify(ring, [list(a.generators) for a in system])
                verdicts.append((spec, ring, system, verdict))
        _sweep_cache["verdicts"] = verdicts
    return _sweep_cache["verdicts"]


def test_criterion_7_classifier_agrees_with_direct_verification():
    t0 = time.perf_counter()
    verdicts = classification_sweep()
    rcm = not_rcm = 0
    for spec, ring, system, verdict in verdicts:
        if verdict.rcm:
            rep = tl.rcm_verify(verdict.notion, 2)
            assert rep.passed, (spec, [a.bits for a in system])
            rcm += 1
        else:
            assert verdict.violation.replay(), (spec, [a.bits for a in system])
            not_rcm += 1
    report(7, rcm + not_rcm == len(verdicts) and len(verdicts) >= 100,
           time.perf_counter() - t0, 600,
           f"{len(verdicts)} systems over order<=8 rings: {rcm} RCM verdicts all "
           f"verified, {not_rcm} NotRCM verdicts all replayed")


def test_criterion_8_annihilator_three_way_agreement():
    t0 = time.perf_counter()
    verdicts = classification_sweep()
    for spec, ring, system, verdict in verdicts:
        ideal_i = verdict.annihilator_ideal
        # route two: brute-force least submodule of the regular module
        # whose quotient satisfies the system
        reg = tl.regular_module(ring)
        passing = []
        for sub in tl.all_submodules(reg):
            quot = tl.quotient_module(reg, sub)
            if all(tl.satisfies_quasiidentity(quot, a) for a in system):
                passing.append(sub.bits)
        least = [b for b in passing if all(b & ~c == 0 for c in passing)]
        assert len(least) == 1 and least[0] == ideal_i.bits, spec
        # route three: the annihilator of the one-generated relatively
        # free module R/I
        free_mod = tl.quotient_module(reg, tl.Submodule(reg, ideal_i.bits))
        assert tl.annihilator(free_mod).bits == ideal_i.bits, spec
    report(8, True, time.perf_counter() - t0, None,
           f"{len(verdicts)} swept systems: descriptor I = least passing "
           "submodule = annihilator of the relatively free module")

"""Kernel unit tests: each kernel against a naive independent oracle,
plus cross-checks between the compiled and pure backends."""

import itertools
import random

import pytest

import torsionlab as tl
from torsionlab import _core_py
from torsionlab import kernels

try:
    from torsionlab import _core
except ImportError:
    _core = None

BACKENDS = [_core_py] if _core is None else [_core_py, _core]


def naive_closure(m, n, add, act, zero, gens):
    """Fixpoint closure by repeated scanning (independent of the orbit-sum
    shortcut used by the kernels)."""
    out = {zero}
    out.update(gens)
    changed = True
    while changed:
        changed = False
        snapshot = list(out)
        for x in snapshot:
            for y in snapshot:
                if add[x * m + y] not in out:
                    out.add(add[x * m + y])
                    changed = True
            for r in range(n):
                if act[r * m + x] not in out:
                    out.add(act[r * m + x])
                    changed = True
    bits = 0
    for x in out:
        bits |= 1 << x
    return bits


def ring_tables(spec):
    ring = tl.parse_ring_spec(spec)
    return ring.order, ring.order, list(ring.add_flat), list(ring.mul_flat), ring.zero


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda i: i.BACKEND_NAME)
@pytest.mark.parametrize("spec", ["Z(6)", "Z(8)", "UT2(2)", "prod(Z(2),Z(2))"])
def test_span_closure_matches_naive_fixpoint(impl, spec):
    m, n, add, act, zero = ring_tables(spec)
    rng = random.Random(spec)
    for _ in range(20):
        gens = [rng.randrange(m) for _ in range(rng.randint(0, 3))]
        assert impl.span_closure(m, n, add, act, zero, gens) == \
            naive_closure(m, n, add, act, zero, gens)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda i: i.BACKEND_NAME)
@pytest.mark.parametrize("spec", ["Z(4)", "GF(2)", "Z(6)", "UT2(2)"])
def test_enumerate_submodules_matches_subset_scan(impl, spec):
    m, n, add, act, zero = ring_tables(spec)
    expected = []
    for bits in range(1, 1 << m):
        if not bits >> zero & 1:
            continue
        elems = [i for i in range(m) if bits >> i & 1]
        if all(bits >> add[x * m + y] & 1 for x in elems for y in elems) and \
                all(bits >> act[r * m + x] & 1 for r in range(n) for x in elems):
            expected.append(bits)
    got = impl.enumerate_submodules(m, n, add, act, zero)
    assert got == sorted(expected)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda i: i.BACKEND_NAME)
def test_closure_tables_match_naive_meet_join(impl, ut2):
    members = [a.bits for a in tl.all_left_ideals(ut2)]
    meet, join = impl.closure_tables(members)
    k = len(members)
    for i, j in itertools.product(range(k), repeat=2):
        assert members[meet[i * k + j]] == members[i] & members[j]
        union = members[i] | members[j]
        sups = [w for w in members if w & union == union]
        acc = sups[0]
        for w in sups[1:]:
            acc &= w
        assert members[join[i * k + j]] == acc


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda i: i.BACKEND_NAME)
def test_closure_tables_reject_non_closed_family(impl):
    # {1}, {2} as one-element sets: intersection is empty, not a member
    with pytest.raises(ValueError):
        impl.closure_tables([0b0010, 0b0100, 0b0110])


# N5: the five-set family 0 < {1} < {1,2} and {3,4}, realized as bitsets.
N5_FAMILY = [0b00000, 0b00010, 0b00110, 0b11000, 0b11110]


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda i: i.BACKEND_NAME)
def test_modularity_pentagon_has_witness(impl):
    meet, join = impl.closure_tables(N5_FAMILY)
    w = impl.modularity_witness(5, meet, join)
    assert w is not None
    x, y, z = w
    k = 5
    assert meet[x * k + z] == x
    assert join[x * k + meet[y * k + z]] != meet[join[x * k + y] * k + z]


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda i: i.BACKEND_NAME)
def test_modularity_chain_and_diamond_pass(impl):
    chain = [0b0001, 0b0011, 0b0111, 0b1111]
    meet, join = impl.closure_tables(chain)
    assert impl.modularity_witness(4, meet, join) is None
    # M3: three atoms meeting pairwise in the bottom, joining to the top
    diamond = [0b0000001, 0b0000111, 0b0011001, 0b1100001, 0b1111111]
    meet, join = impl.closure_tables(diamond)
    assert impl.modularity_witness(5, meet, join) is None


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda i: i.BACKEND_NAME)
def test_assoc_witness(impl):
    table = [[(i + j) % 4 for j in range(4)] for i in range(4)]
    flat = [v for row in table for v in row]
    assert impl.assoc_witness(4, flat) is None
    flat[1 * 4 + 2] = 0  # 1+2 = 0 breaks associativity
    w = impl.assoc_witness(4, flat)
    assert w is not None
    i, j, k = w
    assert flat[flat[i * 4 + j] * 4 + k] != flat[i * 4 + flat[j * 4 + k]]


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda i: i.BACKEND_NAME)
def test_module_axiom_witness_detects_broken_action(impl, z4):
    n = z4.order
    radd, rmul = list(z4.add_flat), list(z4.mul_flat)
    act = list(z4.mul_flat)
    assert impl.module_axiom_witness(n, n, radd, rmul, radd, act, z4.one) is None
    act[1 * n + 2] = 1  # 1*2 = 1 breaks the unit axiom
    w = impl.module_axiom_witness(n, n, radd, rmul, radd, act, z4.one)
    assert w is not None


def naive_delta_eval(module, axiom):
    """Literal quantifier evaluation via itertools (independent route)."""
    m = module.order
    add, act = module.add, module.act

    def row_value(row, x, y, us, vs, zs):
        val = add[act[row.a][x]][act[row.b][y]]
        for c, u in zip(row.c, us):
            val = add[val][act[c][u]]
        for d, v in zip(row.d, vs):
            val = add[val][act[d][v]]
        for e, z in zip(row.e, zs):
            val = add[val][act[e][z]]
        return val

    cond1 = all(
        row_value(row, x, x, us, us, zs) == module.zero
        for row in axiom.rows
        for x in range(m)
        for us in itertools.product(range(m), repeat=axiom.u_arity)
        for zs in itertools.product(range(m), repeat=axiom.z_arity))
    cond2 = True
    for x, y in itertools.product(range(m), repeat=2):
        if x == y:
            continue
        for us in itertools.product(range(m), repeat=axiom.u_arity):
            for zs in itertools.product(range(m), repeat=axiom.z_arity):
                if all(row_value(row, x, y, us, us, zs) == module.zero
                       for row in axiom.rows):
                    cond2 = False
    return cond1 and cond2


@pytest.mark.parametrize("spec", ["Z(4)", "Z(6)", "UT2(2)"])
def test_delta_kernels_match_naive_quantification(spec):
    ring = tl.parse_ring_spec(spec)
    module = tl.regular_module(ring)
    rng = random.Random(spec)
    for _ in range(12):
        axiom = tl.random_reducible_delta(ring, rng, max_rows=2, max_u=1, max_z=1)
        assert tl.delta_satisfied(module, axiom) == naive_delta_eval(module, axiom)
    # a non-reducible axiom must also evaluate correctly
    bad = tl.DeltaAxiom(ring, [tl.DeltaRow(ring.one, ring.one if ring.order == 2
                                           else 2, (), (), ())])
    assert tl.delta_satisfied(module, bad) == naive_delta_eval(module, bad)


@pytest.mark.skipif(_core is None, reason="compiled backend not built")
def test_backends_agree_on_submodule_enumeration():
    for spec in ["Z(8)", "UT2(2)", "prod(Z(2),Z(2))"]:
        ring = tl.parse_ring_spec(spec)
        square = tl.power_module(ring, 2)
        args = (square.order, ring.order, list(square.add_flat),
                list(square.act_flat), square.zero)
        members = _core.enumerate_submodules(*args)
        assert members == _core_py.enumerate_submodules(*args)
        assert _core.closure_tables(members) == _core_py.closure_tables(members)


def test_selected_backend_is_exported():
    assert kernels.backend() in ("compiled", "pure-python")
    assert tl.backend() == kernels.backend()

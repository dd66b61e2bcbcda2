"""Finite left modules, submodule lattices, and lattice modularity.

Modules follow the same table-plus-bitset design as rings: a module of
order m over a ring of order n carries an m x m addition table and an
n x m scalar-action table, both validated exhaustively at construction.
Submodules are bitsets over the module's index space.
"""

from . import kernels
from .errors import InvariantError, RingSpecError, TableError
from .rings import TwoSidedIdeal, check_abelian_group, greedy_generators


class FiniteModule:
    """A finite left module with explicit tables, validated on creation."""

    __slots__ = ("ring", "order", "add", "act", "zero", "name", "neg",
                 "add_flat", "act_flat", "_cache")

    def __init__(self, ring, order, add, act, zero, name="M"):
        if order < 1:
            raise TableError("order", (order,), "module order must be positive")
        self.ring = ring
        self.order = order
        self.name = name
        if len(add) != order or any(len(row) != order for row in add):
            raise TableError("module-add-shape", (order,), "add table must be m x m")
        if len(act) != ring.order or any(len(row) != order for row in act):
            raise TableError("act-shape", (ring.order, order), "act table must be n x m")
        self.add = tuple(tuple(row) for row in add)
        self.act = tuple(tuple(row) for row in act)
        for i, row in enumerate(self.add):
            for j, v in enumerate(row):
                if not 0 <= v < order:
                    raise TableError("module-add-range", (i, j), f"add[{i}][{j}] out of range")
        for r, row in enumerate(self.act):
            for x, v in enumerate(row):
                if not 0 <= v < order:
                    raise TableError("act-range", (r, x), f"act[{r}][{x}] out of range")
        if not 0 <= zero < order:
            raise TableError("module-zero-range", (zero,), "zero index out of range")
        self.zero = zero
        self.add_flat = tuple(v for row in self.add for v in row)
        self.act_flat = tuple(v for row in self.act for v in row)
        check_abelian_group(order, self.add, zero, what="module-add")
        w = kernels.module_axiom_witness(ring.order, order, ring.add_flat,
                                         ring.mul_flat, self.add_flat,
                                         self.act_flat, ring.one)
        if w is not None:
            raise TableError(w[0], w[1:], f"scalar action axiom {w[0]} fails at {w[1:]}")
        self.neg = tuple(self.add[i].index(zero) for i in range(order))
        self._cache = {}

    def elements(self):
        return range(self.order)

    def __repr__(self):
        return f"FiniteModule({self.name}, order={self.order} over {self.ring.name})"


class Submodule:
    """A submodule as a bitset; closure is re-checked at construction."""

    __slots__ = ("module", "bits", "_generators")

    def __init__(self, module, bits, _trusted=False):
        self.module = module
        self.bits = bits
        self._generators = None
        if not _trusted:
            w = _closure_witness(module, bits)
            if w is not None:
                raise ValueError(f"subset is not a submodule: witness {w}")

    @property
    def generators(self):
        if self._generators is None:
            self._generators = _greedy_module_generators(self.module, self.bits)
        return self._generators

    def elements(self):
        return list(kernels.bits_of(self.bits))

    def __contains__(self, idx):
        return bool(self.bits >> idx & 1)

    def __iter__(self):
        return kernels.bits_of(self.bits)

    def __len__(self):
        return self.bits.bit_count()

    def __eq__(self, other):
        return (isinstance(other, Submodule) and other.module is self.module
                and other.bits == self.bits)

    def __hash__(self):
        return hash((id(self.module), self.bits))

    def __le__(self, other):
        return self.bits & ~other.bits == 0

    def is_zero(self):
        return self.bits == 1 << self.module.zero

    def is_full(self):
        return self.bits == (1 << self.module.order) - 1

    def __repr__(self):
        return f"<submodule of {self.module.name}, {len(self)} elements>"


def _closure_witness(module, bits):
    if not bits >> module.zero & 1:
        return ("zero",)
    elems = list(kernels.bits_of(bits))
    for x in elems:
        row = module.add[x]
        for y in elems:
            if not bits >> row[y] & 1:
                return ("add", x, y)
    for r in range(module.ring.order):
        row = module.act[r]
        for x in elems:
            if not bits >> row[x] & 1:
                return ("act", r, x)
    return None


def _greedy_module_generators(module, bits):
    zero_bits = 1 << module.zero
    if bits == zero_bits:
        return (module.zero,)
    gens = []
    cur = zero_bits
    while cur != bits:
        missing = bits & ~cur
        x = (missing & -missing).bit_length() - 1
        gens.append(x)
        cur = kernels.sum_with_orbit(cur, x, module.order, module.ring.order,
                                     module.add_flat, module.act_flat)
    return tuple(gens)


def submodule_closure(module, gens):
    """Least submodule containing the listed elements."""
    bits = kernels.span_closure(module.order, module.ring.order, module.add_flat,
                                module.act_flat, module.zero, tuple(gens))
    return Submodule(module, bits, _trusted=True)


def submodule_sum(a, b):
    """Elementwise sum of two submodules of the same module."""
    if a.module is not b.module:
        raise ValueError("submodule_sum: different modules")
    module = a.module
    out = a.bits
    for t in b:
        for s in a:
            out |= 1 << module.add[s][t]
    return Submodule(module, out, _trusted=True)


def all_submodules(module):
    """Every submodule exactly once, sorted by bitset value."""
    got = module._cache.get("subs")
    if got is None:
        masks = kernels.enumerate_submodules(module.order, module.ring.order,
                                             module.add_flat, module.act_flat,
                                             module.zero)
        got = tuple(Submodule(module, bits, _trusted=True) for bits in masks)
        module._cache["subs"] = got
    return got


# -- constructions -------------------------------------------------------

def regular_module(ring):
    """The ring acting on itself by left multiplication."""
    got = ring._cache.get("regular")
    if got is None:
        got = FiniteModule(ring, ring.order, ring.add, ring.mul, ring.zero, name="R")
        ring._cache["regular"] = got
    return got


def direct_sum(m1, m2):
    """Componentwise direct sum; index = i1 * |M2| + i2."""
    if m1.ring is not m2.ring:
        raise ValueError("direct_sum: modules over different rings")
    n2 = m2.order
    order = m1.order * n2
    add = [[m1.add[i // n2][j // n2] * n2 + m2.add[i % n2][j % n2]
            for j in range(order)] for i in range(order)]
    act = [[m1.act[r][i // n2] * n2 + m2.act[r][i % n2]
            for i in range(order)] for r in range(m1.ring.order)]
    return FiniteModule(m1.ring, order, add, act, m1.zero * n2 + m2.zero,
                        name=f"dsum({m1.name},{m2.name})")


def power_module(ring, k):
    """The free module R^k (k >= 0 gives the zero module for k = 0)."""
    if k == 0:
        return FiniteModule(ring, 1, [[0]], [[0]] * ring.order, 0, name="0")
    if k == 1:
        return regular_module(ring)
    got = ring._cache.get(("power", k))
    if got is None:
        got = regular_module(ring)
        for _ in range(k - 1):
            got = direct_sum(got, regular_module(ring))
        got.name = f"R^{k}"
        ring._cache[("power", k)] = got
    return got


def quotient_module(module, sub, name=None):
    """Quotient by a submodule; cosets keep their least element index."""
    if sub.module is not module:
        raise ValueError("quotient_module: submodule of a different module")
    cached = module._cache.get(("quot", sub.bits))
    if cached is not None:
        return cached
    members = sub.elements()
    rep = [min(module.add[x][s] for s in members) for x in range(module.order)]
    reps = sorted(set(rep))
    new_index = {r: k for k, r in enumerate(reps)}
    m = len(reps)
    add = [[new_index[rep[module.add[reps[i]][reps[j]]]] for j in range(m)]
           for i in range(m)]
    act = [[new_index[rep[module.act[r][reps[i]]]] for i in range(m)]
           for r in range(module.ring.order)]
    out = FiniteModule(module.ring, m, add, act, new_index[rep[module.zero]],
                       name=name or f"{module.name}/sub")
    out._cache["projection"] = tuple(new_index[rep[x]] for x in range(module.order))
    module._cache[("quot", sub.bits)] = out
    return out


def module_from_table(doc, ring, name="table"):
    """Build a module from a parsed module-table document."""
    if not isinstance(doc, dict):
        raise RingSpecError("module table document must be a JSON object", "$")
    for key in ("order", "add", "act", "zero"):
        if key not in doc:
            raise RingSpecError(f"missing key {key!r}", "$")
    order = doc["order"]
    if not isinstance(order, int) or order < 1:
        raise RingSpecError("order must be a positive integer", "$.order")
    add, act = doc["add"], doc["act"]
    if not isinstance(add, list) or len(add) != order:
        raise RingSpecError(f"add must be a {order}x{order} array", "$.add")
    if not isinstance(act, list) or len(act) != ring.order:
        raise RingSpecError(f"act must have {ring.order} rows", "$.act")
    for key, table, rows in (("add", add, order), ("act", act, ring.order)):
        for i, row in enumerate(table):
            if not isinstance(row, list) or len(row) != order:
                raise RingSpecError(f"row must have {order} entries", f"$.{key}[{i}]")
            for j, v in enumerate(row):
                if not isinstance(v, int) or not 0 <= v < order:
                    raise RingSpecError("entry must be an element index",
                                        f"$.{key}[{i}][{j}]")
    if not isinstance(doc["zero"], int) or not 0 <= doc["zero"] < order:
        raise RingSpecError("zero must be an element index", "$.zero")
    return FiniteModule(ring, order, add, act, doc["zero"], name=name)


def module_over_quotient(module, quot_ring, projection):
    """Reinterpret a module killed by ker(projection) as a quotient-ring module."""
    ring = module.ring
    section = {}
    for r in range(ring.order):
        section.setdefault(projection[r], r)
    for r in range(ring.order):
        if module.act[r] != module.act[section[projection[r]]]:
            raise ValueError("module is not annihilated by the projection kernel")
    act = [module.act[section[j]] for j in range(quot_ring.order)]
    return FiniteModule(quot_ring, module.order, module.add, act, module.zero,
                        name=module.name)


def module_corpus(ring, bound=2, sums=False):
    """The bounded test corpus: quotients of R^k for k <= bound, deduplicated.

    With ``sums=True`` the direct sums of pairs of cyclic modules are
    appended (these are quotients of R^2 presented differently, so they
    exercise the direct-sum construction as well).
    """
    key = ("corpus", bound, sums)
    got = ring._cache.get(key)
    if got is not None:
        return got
    out = []
    seen = set()

    def push(mod):
        sig = (mod.order, mod.add_flat, mod.act_flat, mod.zero)
        if sig not in seen:
            seen.add(sig)
            out.append(mod)

    cyclics = []
    for k in range(1, bound + 1):
        parent = power_module(ring, k)
        for i, sub in enumerate(all_submodules(parent)):
            quot = quotient_module(parent, sub, name=f"{parent.name}/s{i}")
            push(quot)
            if k == 1:
                cyclics.append(quot)
    if sums:
        for i, m1 in enumerate(cyclics):
            for m2 in cyclics[i:]:
                push(direct_sum(m1, m2))
    got = tuple(out)
    ring._cache[key] = got
    return got


# -- quasiidentity semantics ----------------------------------------------

def satisfies_quasiidentity(module, ideal):
    """Whether "ideal * x = 0 implies x = 0" holds in the module.

    Testing the generators suffices: the annihilator of any x is closed
    under addition and left multiplication, so it contains the ideal as
    soon as it contains the generators.
    """
    if ideal.ring is not module.ring:
        raise ValueError("quasiidentity over a different ring")
    zero = module.zero
    rows = [module.act[g] for g in ideal.generators]
    for x in range(module.order):
        if x == zero:
            continue
        if all(row[x] == zero for row in rows):
            return False
    return True


def annihilator(module):
    """Scalars acting as zero on the whole module; always two-sided."""
    ring = module.ring
    zero = module.zero
    bits = 0
    for r in range(ring.order):
        if all(v == zero for v in module.act[r]):
            bits |= 1 << r
    try:
        return TwoSidedIdeal(ring, greedy_generators(ring, bits), bits)
    except ValueError as exc:
        raise InvariantError(f"annihilator of {module.name} is not two-sided: {exc}") from exc


# -- lattices -------------------------------------------------------------

class FiniteLattice:
    """A lattice presented as a family of bitsets plus meet/join tables.

    Meets are intersections and joins are least members above the union;
    the lattice axioms are validated exhaustively.
    """

    __slots__ = ("members", "size", "meet", "join")

    def __init__(self, members, meet, join):
        self.members = tuple(members)
        self.size = len(self.members)
        self.meet = tuple(meet)
        self.join = tuple(join)
        self._validate()

    def _validate(self):
        k = self.size
        for name, table in (("meet", self.meet), ("join", self.join)):
            for i in range(k):
                if table[i * k + i] != i:
                    raise TableError(f"{name}-idempotent", (i,), f"{name}(x,x) != x")
                for j in range(k):
                    if table[i * k + j] != table[j * k + i]:
                        raise TableError(f"{name}-commutative", (i, j),
                                         f"{name} not commutative at ({i},{j})")
            w = kernels.assoc_witness(k, list(table))
            if w is not None:
                raise TableError(f"{name}-associative", w, f"{name} not associative at {w}")
        for i in range(k):
            for j in range(k):
                if self.meet[i * k + self.join[i * k + j]] != i:
                    raise TableError("absorption", (i, j), f"x ^ (x v y) != x at ({i},{j})")
                if self.join[i * k + self.meet[i * k + j]] != i:
                    raise TableError("absorption", (i, j), f"x v (x ^ y) != x at ({i},{j})")

    def leq(self, i, j):
        return self.meet[i * self.size + j] == i

    def index_of(self, bits):
        return self.members.index(bits)

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"FiniteLattice({self.size} members)"


def lattice_from_family(members):
    """Build the lattice of an intersection-closed family of bitsets."""
    members = sorted(members)
    try:
        meet, join = kernels.closure_tables(members)
    except ValueError as exc:
        raise InvariantError(f"family is not a closure system: {exc}") from exc
    return FiniteLattice(members, meet, join)


def modularity_witness(lattice):
    """First (x, y, z) with x <= z and x v (y ^ z) != (x v y) ^ z, or None."""
    return kernels.modularity_witness(lattice.size, list(lattice.meet),
                                      list(lattice.join))


def is_modular(lattice):
    """Whether the lattice satisfies the modular law."""
    return modularity_witness(lattice) is None

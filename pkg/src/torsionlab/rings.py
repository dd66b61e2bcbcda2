"""Finite unital rings, their left ideals, and ideal arithmetic.

Rings are given by explicit addition / multiplication tables over the
element indices ``0..n-1`` and are fully validated at construction by
bounded-exhaustive checks.  Ideals are immutable bitsets over the same
index space, ordered as little-endian integers (bit ``i`` = element
``i``), which fixes a canonical order on every ideal family the package
emits.
"""

from . import kernels
from .errors import InvariantError, RingSpecError, TableError


def _as_table(raw, size, what):
    """Normalize a square table to a tuple of tuples, checking shape/range."""
    if len(raw) != size:
        raise TableError(f"{what}-shape", (len(raw),), f"{what} table must have {size} rows")
    rows = []
    for i, row in enumerate(raw):
        if len(row) != size:
            raise TableError(f"{what}-shape", (i,), f"{what} row {i} must have {size} entries")
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < size:
                raise TableError(f"{what}-range", (i, j), f"{what}[{i}][{j}] = {v!r} out of range")
        rows.append(tuple(row))
    return tuple(rows)


def check_abelian_group(order, add, zero, what="add"):
    """Bounded-exhaustive abelian-group check; raises TableError on failure."""
    for i in range(order):
        if add[zero][i] != i:
            raise TableError(f"{what}-identity", (i,), f"zero + {i} != {i}")
    for i in range(order):
        row = add[i]
        for j in range(i + 1, order):
            if row[j] != add[j][i]:
                raise TableError(f"{what}-commutative", (i, j), f"{i} + {j} != {j} + {i}")
        if zero not in row:
            raise TableError(f"{what}-inverse", (i,), f"element {i} has no additive inverse")
    flat = [v for row in add for v in row]
    w = kernels.assoc_witness(order, flat)
    if w is not None:
        raise TableError(f"{what}-associative", w, f"({w[0]}+{w[1]})+{w[2]} != {w[0]}+({w[1]}+{w[2]})")


class FiniteRing:
    """A finite unital ring presented by operation tables.

    All invariants (abelian additive group, associative multiplication,
    two-sided distributivity, identity element) are checked exhaustively
    in the constructor.  Instances are immutable; internal caches only
    memoize derived data.
    """

    __slots__ = ("order", "add", "mul", "zero", "one", "name", "neg",
                 "add_flat", "mul_flat", "_names", "_resolve", "_cache")

    def __init__(self, order, add, mul, zero, one, name="R", element_names=None):
        if order < 1:
            raise TableError("order", (order,), "ring order must be positive")
        self.order = order
        self.add = _as_table(add, order, "add")
        self.mul = _as_table(mul, order, "mul")
        if not 0 <= zero < order:
            raise TableError("zero-range", (zero,), "zero index out of range")
        if not 0 <= one < order:
            raise TableError("one-range", (one,), "one index out of range")
        self.zero = zero
        self.one = one
        self.name = name
        self._names = dict(element_names or {})
        # "0" and "1" always denote the ring's zero and one; bare integer
        # tokens otherwise address elements by index.
        self._names.setdefault("0", zero)
        self._names.setdefault("1", one)
        self._resolve = {v: k for k, v in self._names.items() if not k.isdigit()}
        self._cache = {}
        self._validate()
        self.neg = tuple(self.add[i].index(zero) for i in range(order))
        self.add_flat = tuple(v for row in self.add for v in row)
        self.mul_flat = tuple(v for row in self.mul for v in row)

    def _validate(self):
        n, add, mul, zero, one = self.order, self.add, self.mul, self.zero, self.one
        if zero == one and n > 1:
            raise TableError("zero-one", (zero,), "zero equals one in a ring of order > 1")
        check_abelian_group(n, add, zero)
        flat = [v for row in mul for v in row]
        w = kernels.assoc_witness(n, flat)
        if w is not None:
            raise TableError("mul-associative", w,
                             f"({w[0]}*{w[1]})*{w[2]} != {w[0]}*({w[1]}*{w[2]})")
        for i in range(n):
            if mul[one][i] != i or mul[i][one] != i:
                raise TableError("one-identity", (i,), f"one is not an identity at {i}")
        for r in range(n):
            for x in range(n):
                for y in range(n):
                    if mul[r][add[x][y]] != add[mul[r][x]][mul[r][y]]:
                        raise TableError("left-distributive", (r, x, y),
                                         f"{r}*({x}+{y}) != {r}*{x} + {r}*{y}")
                    if mul[add[x][y]][r] != add[mul[x][r]][mul[y][r]]:
                        raise TableError("right-distributive", (x, y, r),
                                         f"({x}+{y})*{r} != {x}*{r} + {y}*{r}")

    # -- element helpers -------------------------------------------------

    def elements(self):
        return range(self.order)

    def is_commutative(self):
        got = self._cache.get("commutative")
        if got is None:
            got = all(self.mul[i][j] == self.mul[j][i]
                      for i in range(self.order) for j in range(i + 1, self.order))
            self._cache["commutative"] = got
        return got

    def element_name(self, i):
        return self._resolve.get(i, str(i))

    def resolve(self, token):
        """Map an element name or decimal index to an element index."""
        token = token.strip()
        if token in self._names:
            return self._names[token]
        try:
            idx = int(token)
        except ValueError:
            raise RingSpecError(f"unknown element {token!r} of {self.name}") from None
        if not 0 <= idx < self.order:
            raise RingSpecError(f"element index {idx} out of range for {self.name}")
        return idx

    def __repr__(self):
        return f"FiniteRing({self.name}, order={self.order})"


class LeftIdeal:
    """A left ideal as a bitset plus the generator list that produced it.

    The element set must equal the closure of the generators; this is
    re-checked at construction so every instance is trustworthy.
    """

    __slots__ = ("ring", "bits", "generators")

    def __init__(self, ring, generators, bits=None):
        self.ring = ring
        self.generators = tuple(generators)
        for g in self.generators:
            if not 0 <= g < ring.order:
                raise ValueError(f"generator {g} out of range for {ring.name}")
        span = kernels.span_closure(ring.order, ring.order, ring.add_flat,
                                    ring.mul_flat, ring.zero, self.generators)
        if bits is None:
            bits = span
        elif bits != span:
            raise ValueError("element set does not match the closure of the generators")
        self.bits = bits

    def elements(self):
        return list(kernels.bits_of(self.bits))

    def __contains__(self, idx):
        return bool(self.bits >> idx & 1)

    def __iter__(self):
        return kernels.bits_of(self.bits)

    def __len__(self):
        return self.bits.bit_count()

    def __eq__(self, other):
        return (isinstance(other, LeftIdeal) and other.ring is self.ring
                and other.bits == self.bits)

    def __hash__(self):
        return hash((id(self.ring), self.bits))

    def __le__(self, other):
        return self.bits & ~other.bits == 0

    def is_zero(self):
        return self.bits == 1 << self.ring.zero

    def is_full(self):
        return self.bits == (1 << self.ring.order) - 1

    def describe(self):
        names = ",".join(self.ring.element_name(g) for g in self.generators)
        return f"({names})"

    def __repr__(self):
        elems = ",".join(self.ring.element_name(i) for i in self)
        return f"<ideal {self.describe()} = {{{elems}}}>"


class TwoSidedIdeal(LeftIdeal):
    """A left ideal additionally closed under right multiplication."""

    __slots__ = ()

    def __init__(self, ring, generators, bits=None):
        super().__init__(ring, generators, bits)
        w = _right_closure_witness(self)
        if w is not None:
            a, r = w
            raise ValueError(
                f"not right-closed: {ring.element_name(a)} * {ring.element_name(r)} escapes")


def _right_closure_witness(ideal):
    ring = ideal.ring
    for a in ideal:
        row = ring.mul[a]
        for r in range(ring.order):
            if not ideal.bits >> row[r] & 1:
                return (a, r)
    return None


def is_two_sided(ideal):
    """True iff the left ideal is closed under right multiplication."""
    return _right_closure_witness(ideal) is None


def as_two_sided(ideal):
    """Promote to TwoSidedIdeal, or None if not right-closed."""
    if isinstance(ideal, TwoSidedIdeal):
        return ideal
    if _right_closure_witness(ideal) is not None:
        return None
    return TwoSidedIdeal(ideal.ring, ideal.generators, ideal.bits)


def left_ideal_closure(ring, generators):
    """Least left ideal containing the listed elements (kept verbatim)."""
    return LeftIdeal(ring, generators)


def two_sided_closure(ring, generators):
    """Least two-sided ideal containing the listed elements."""
    bits = kernels.span_closure(ring.order, ring.order, ring.add_flat,
                                ring.mul_flat, ring.zero, tuple(generators))
    while True:
        extra = [ring.mul[a][r]
                 for a in kernels.bits_of(bits)
                 for r in range(ring.order)
                 if not bits >> ring.mul[a][r] & 1]
        if not extra:
            break
        bits = kernels.span_closure(ring.order, ring.order, ring.add_flat,
                                    ring.mul_flat, ring.zero,
                                    list(kernels.bits_of(bits)) + extra)
    return TwoSidedIdeal(ring, greedy_generators(ring, bits), bits)


def greedy_generators(ring, bits):
    """Canonical generator list: repeatedly adjoin the least missing element."""
    zero_bits = 1 << ring.zero
    if bits == zero_bits:
        return (ring.zero,)
    gens = []
    cur = zero_bits
    while cur != bits:
        missing = bits & ~cur
        x = (missing & -missing).bit_length() - 1
        gens.append(x)
        cur = kernels.sum_with_orbit(cur, x, ring.order, ring.order,
                                     ring.add_flat, ring.mul_flat)
    return tuple(gens)


def all_left_ideals(ring):
    """Every left ideal exactly once, sorted by bitset value."""
    got = ring._cache.get("ideals")
    if got is None:
        masks = kernels.enumerate_submodules(ring.order, ring.order, ring.add_flat,
                                             ring.mul_flat, ring.zero)
        got = tuple(LeftIdeal(ring, greedy_generators(ring, bits), bits) for bits in masks)
        ring._cache["ideals"] = got
    return got


def ideal_sum(a, b):
    """Least left ideal containing both; generators are concatenated."""
    if a.ring is not b.ring:
        raise ValueError("ideal_sum: ideals over different rings")
    return LeftIdeal(a.ring, a.generators + b.generators)


def ideal_intersect(a, b):
    """Set intersection (always a left ideal)."""
    if a.ring is not b.ring:
        raise ValueError("ideal_intersect: ideals over different rings")
    bits = a.bits & b.bits
    return LeftIdeal(a.ring, greedy_generators(a.ring, bits), bits)


def product_ideal(xs, ys, ring):
    """Left ideal generated by the pairwise products x*y, in input order."""
    xs, ys = tuple(xs), tuple(ys)
    if not xs or not ys:
        raise ValueError("product_ideal: generator lists must be nonempty")
    prods = tuple(ring.mul[x][y] for x in xs for y in ys)
    return LeftIdeal(ring, prods)


def _product_bits(ring, xs, ys):
    """Bitset of the product ideal; empty lists mean the zero ideal."""
    prods = [ring.mul[x][y] for x in xs for y in ys]
    return kernels.span_closure(ring.order, ring.order, ring.add_flat,
                                ring.mul_flat, ring.zero, prods)


def quotient_ring(ring, ideal):
    """Quotient by a two-sided ideal.

    Returns ``(quotient, projection)`` where ``projection[x]`` is the
    index of the coset of ``x``.  Cosets are represented by their least
    element index.  The projection is re-verified to be a surjective
    ring homomorphism with the given kernel.
    """
    if not isinstance(ideal, TwoSidedIdeal):
        promoted = as_two_sided(ideal) if isinstance(ideal, LeftIdeal) else None
        if promoted is None:
            raise ValueError("quotient_ring requires a two-sided ideal")
        ideal = promoted
    if ideal.ring is not ring:
        raise ValueError("quotient_ring: ideal over a different ring")
    cached = ring._cache.get(("quot", ideal.bits))
    if cached is not None:
        return cached

    n = ring.order
    members = ideal.elements()
    rep = [min(ring.add[x][i] for i in members) for x in range(n)]
    reps = sorted(set(rep))
    new_index = {r: k for k, r in enumerate(reps)}
    proj = tuple(new_index[rep[x]] for x in range(n))
    m = len(reps)
    add = [[new_index[rep[ring.add[reps[i]][reps[j]]]] for j in range(m)] for i in range(m)]
    mul = [[new_index[rep[ring.mul[reps[i]][reps[j]]]] for j in range(m)] for i in range(m)]
    names = {}
    for k, r in enumerate(reps):
        names.setdefault(f"[{ring.element_name(r)}]", k)
    quot = FiniteRing(m, add, mul, proj[ring.zero], proj[ring.one],
                      name=f"{ring.name}/{ideal.describe()}", element_names=names)

    for x in range(n):
        for y in range(n):
            if proj[ring.add[x][y]] != quot.add[proj[x]][proj[y]]:
                raise InvariantError(f"projection not additive at ({x},{y})")
            if proj[ring.mul[x][y]] != quot.mul[proj[x]][proj[y]]:
                raise InvariantError(f"projection not multiplicative at ({x},{y})")
    if proj[ring.one] != quot.one:
        raise InvariantError("projection does not send one to one")
    kernel_bits = 0
    for x in range(n):
        if proj[x] == quot.zero:
            kernel_bits |= 1 << x
    if kernel_bits != ideal.bits:
        raise InvariantError("projection kernel differs from the ideal")

    ring._cache[("quot", ideal.bits)] = (quot, proj)
    return quot, proj


def idempotent_generator(ring, ideal):
    """The idempotent e with (e) = ideal, for an idempotent ideal of a
    commutative ring.  Found by exhaustive search; by the classical fact
    about finitely generated idempotent ideals it must exist, so a failed
    search is reported as an internal fault."""
    if not ring.is_commutative():
        raise ValueError("idempotent_generator requires a commutative ring")
    square = _product_bits(ring, ideal.generators, ideal.generators)
    if square != ideal.bits:
        raise ValueError("idempotent_generator requires an idempotent ideal (A*A = A)")
    for e in ideal:
        if ring.mul[e][e] != e:
            continue
        span = kernels.span_closure(ring.order, ring.order, ring.add_flat,
                                    ring.mul_flat, ring.zero, (e,))
        if span == ideal.bits:
            return e
    raise InvariantError(
        f"no idempotent generator found for {ideal.describe()} over {ring.name}")


def format_quasiidentity(ideal):
    """Render (a1 x = 0) & ... & (am x = 0) -> (x = 0) over the generators."""
    parts = []
    for g in ideal.generators:
        name = ideal.ring.element_name(g)
        sep = "" if name.isdigit() else "·"
        parts.append(f"({name}{sep}x=0)")
    return "∧".join(parts) + "→(x=0)"


# -- builtin constructors ------------------------------------------------

def cyclic_ring(n):
    """Integers mod n."""
    if n < 1:
        raise RingSpecError("Z(n) requires n >= 1")
    add = [[(i + j) % n for j in range(n)] for i in range(n)]
    mul = [[(i * j) % n for j in range(n)] for i in range(n)]
    return FiniteRing(n, add, mul, 0, 1 % n, name=f"Z({n})")


def _require_prime(p, what):
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise RingSpecError(f"{what} requires a prime, got {p}")


def prime_field(p):
    """The field with p elements (p prime)."""
    _require_prime(p, "GF(p)")
    ring = cyclic_ring(p)
    return FiniteRing(p, ring.add, ring.mul, 0, 1, name=f"GF({p})")


def upper_triangular_ring(p):
    """Upper triangular 2x2 matrices over GF(p).

    Element index is ``(a*p + b)*p + c`` for the matrix [[a, b], [0, c]],
    so over GF(2): e11 = 4, e12 = 2, e22 = 1 and the identity is 5.
    """
    _require_prime(p, "UT2(p)")
    n = p ** 3

    def unpack(i):
        return (i // (p * p), (i // p) % p, i % p)

    def pack(a, b, c):
        return (a * p + b) * p + c

    add = [[pack(*((x + y) % p for x, y in zip(unpack(i), unpack(j))))
            for j in range(n)] for i in range(n)]
    mul = []
    for i in range(n):
        a1, b1, c1 = unpack(i)
        row = []
        for j in range(n):
            a2, b2, c2 = unpack(j)
            row.append(pack((a1 * a2) % p, (a1 * b2 + b1 * c2) % p, (c1 * c2) % p))
        mul.append(row)
    names = {"e11": p * p, "e12": p, "e22": 1}
    ring = FiniteRing(n, add, mul, 0, pack(1, 0, 1), name=f"UT2({p})", element_names=names)
    ring._resolve = {i: _matrix_name(unpack(i), ("e11", "e12", "e22")) for i in range(n)}
    return ring


def full_matrix_ring(p):
    """Full 2x2 matrix ring over GF(p); index = ((a*p+b)*p+c)*p + d."""
    _require_prime(p, "M2(p)")
    n = p ** 4

    def unpack(i):
        return (i // p ** 3, (i // p ** 2) % p, (i // p) % p, i % p)

    def pack(a, b, c, d):
        return ((a * p + b) * p + c) * p + d

    add = [[pack(*((x + y) % p for x, y in zip(unpack(i), unpack(j))))
            for j in range(n)] for i in range(n)]
    mul = []
    for i in range(n):
        a1, b1, c1, d1 = unpack(i)
        row = []
        for j in range(n):
            a2, b2, c2, d2 = unpack(j)
            row.append(pack((a1 * a2 + b1 * c2) % p, (a1 * b2 + b1 * d2) % p,
                            (c1 * a2 + d1 * c2) % p, (c1 * b2 + d1 * d2) % p))
        mul.append(row)
    names = {"e11": p ** 3, "e12": p ** 2, "e21": p, "e22": 1}
    ring = FiniteRing(n, add, mul, 0, pack(1, 0, 0, 1), name=f"M2({p})", element_names=names)
    ring._resolve = {i: _matrix_name(unpack(i), ("e11", "e12", "e21", "e22"))
                     for i in range(n)}
    return ring


def _matrix_name(coeffs, units):
    terms = []
    for c, unit in zip(coeffs, units):
        if c == 1:
            terms.append(unit)
        elif c > 1:
            terms.append(f"{c}{unit}")
    return "+".join(terms) if terms else "0"


def product_ring(r1, r2):
    """Componentwise product; index = i1 * |R2| + i2."""
    n1, n2 = r1.order, r2.order
    n = n1 * n2
    add = [[(r1.add[i // n2][j // n2]) * n2 + r2.add[i % n2][j % n2]
            for j in range(n)] for i in range(n)]
    mul = [[(r1.mul[i // n2][j // n2]) * n2 + r2.mul[i % n2][j % n2]
            for j in range(n)] for i in range(n)]
    ring = FiniteRing(n, add, mul, r1.zero * n2 + r2.zero, r1.one * n2 + r2.one,
                      name=f"prod({r1.name},{r2.name})")
    ring._resolve = {i: f"({r1.element_name(i // n2)},{r2.element_name(i % n2)})"
                     for i in range(n)}
    return ring


def ring_from_table(doc, name="table"):
    """Build a ring from a parsed explicit-table document.

    Expects ``{"order": n, "add": [[...]], "mul": [[...]], "zero": z,
    "one": o}``; malformed documents raise positioned RingSpecError,
    invalid tables raise TableError naming the failed axiom.
    """
    if not isinstance(doc, dict):
        raise RingSpecError("ring table document must be a JSON object", "$")
    for key in ("order", "add", "mul", "zero", "one"):
        if key not in doc:
            raise RingSpecError(f"missing key {key!r}", "$")
    order = doc["order"]
    if not isinstance(order, int) or order < 1:
        raise RingSpecError("order must be a positive integer", "$.order")
    for key in ("add", "mul"):
        table = doc[key]
        if not isinstance(table, list) or len(table) != order:
            raise RingSpecError(f"{key} must be a {order}x{order} array", f"$.{key}")
        for i, row in enumerate(table):
            if not isinstance(row, list) or len(row) != order:
                raise RingSpecError(f"row must have {order} entries", f"$.{key}[{i}]")
            for j, v in enumerate(row):
                if not isinstance(v, int) or not 0 <= v < order:
                    raise RingSpecError("entry must be an element index",
                                        f"$.{key}[{i}][{j}]")
    for key in ("zero", "one"):
        v = doc[key]
        if not isinstance(v, int) or not 0 <= v < order:
            raise RingSpecError("must be an element index", f"$.{key}")
    return FiniteRing(order, doc["add"], doc["mul"], doc["zero"], doc["one"], name=name)

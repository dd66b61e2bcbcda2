"""Torsion filters of left ideals and the relative-submodule machinery.

A family F of left ideals is a *torsion notion* when it satisfies five
axioms, checked here by bounded-exhaustive search:

  (1) F is a nonempty order filter in the poset of left ideals,
  (2) F is downward directed,
  (3) if (X) and (Y) are in F then so is the ideal generated by the
      pairwise products XY,
  (4) for every A in F and scalar r there is B in F with B*r inside A,
  (5) no member is annihilated on the right by a nonzero element.

A validated notion induces a torsion radical on every finite module,
which in turn yields relative closures, the lattice of relative
submodules, and the weak extension principle checks.
"""

import itertools

from . import kernels
from .errors import InvariantError
from .modules import (Submodule, all_submodules, lattice_from_family,
                      module_corpus, modularity_witness)
from .rings import _product_bits, all_left_ideals, format_quasiidentity


class TorsionNotion:
    """A family of left ideals; ``validated`` is set only by the checker."""

    __slots__ = ("ring", "ideals", "validated")

    def __init__(self, ring, ideals, validated=False):
        self.ring = ring
        self.ideals = tuple(sorted(ideals, key=lambda a: a.bits))
        self.validated = validated

    def key(self):
        return tuple(a.bits for a in self.ideals)

    def __contains__(self, ideal):
        return any(a.bits == ideal.bits for a in self.ideals)

    def __len__(self):
        return len(self.ideals)

    def __eq__(self, other):
        return (isinstance(other, TorsionNotion) and other.ring is self.ring
                and other.key() == self.key())

    def __hash__(self):
        return hash((id(self.ring), self.key()))

    def describe(self):
        return "{" + ", ".join(a.describe() for a in self.ideals) + "}"

    def __repr__(self):
        tag = "validated" if self.validated else "unchecked"
        return f"<TorsionNotion {self.describe()} over {self.ring.name} ({tag})>"


class AxiomViolation:
    """A falsified torsion axiom together with replayable witness data."""

    __slots__ = ("axiom", "ring", "family", "witness", "message")

    def __init__(self, axiom, ring, family, witness, message):
        self.axiom = axiom
        self.ring = ring
        self.family = tuple(family)
        self.witness = dict(witness)
        self.message = message

    def replay(self):
        """Re-evaluate the witness against the axiom it claims to falsify."""
        ring, fam = self.ring, self.family
        fam_bits = {a.bits for a in fam}
        w = self.witness
        if self.axiom == 1:
            if not fam:
                return True
            a, b = w["member"], w["superset"]
            return a.bits in fam_bits and a.bits & ~b.bits == 0 and b.bits not in fam_bits
        if self.axiom == 2:
            target = w["left"].bits & w["right"].bits
            return not any(c.bits & ~target == 0 for c in fam)
        if self.axiom == 3:
            prod = _product_bits(ring, w["left"].generators, w["right"].generators)
            if prod != w["product_bits"] or prod in fam_bits:
                return False
            if w["reading"] == "both":
                full = _product_bits(ring, w["left"].elements(), w["right"].elements())
                return full not in fam_bits
            return True
        if self.axiom == 4:
            a, r = w["member"], w["scalar"]
            return not any(
                all(ring.mul[g][r] in a for g in b.generators) for b in fam)
        if self.axiom == 5:
            a, r = w["member"], w["scalar"]
            return r != ring.zero and all(ring.mul[g][r] == ring.zero
                                          for g in a.generators)
        return False

    def to_json(self):
        def ideal_doc(ideal):
            return {"generators": list(ideal.generators), "elements": ideal.elements()}

        doc = {"axiom": self.axiom, "message": self.message, "witness": {}}
        for k, v in self.witness.items():
            if hasattr(v, "generators"):
                doc["witness"][k] = ideal_doc(v)
            else:
                doc["witness"][k] = v
        return doc

    def __repr__(self):
        return f"<AxiomViolation({self.axiom}): {self.message}>"


def regularity_witness(ideal):
    """First nonzero r with ideal * r = 0, or None if the ideal is regular."""
    ring = ideal.ring
    for r in range(ring.order):
        if r == ring.zero:
            continue
        if all(ring.mul[g][r] == ring.zero for g in ideal.generators):
            return r
    return None


def check_torsion_axioms(ring, family):
    """Validate the five torsion axioms for a family of left ideals.

    Returns a validated TorsionNotion, or the first AxiomViolation in
    axiom order (1)..(5) with least witnesses.  Axiom (3) is first read
    with the stored generator lists; on failure it is re-read with full
    element sets, and the verdict records which reading failed.
    """
    seen = {}
    for a in family:
        if a.ring is not ring:
            raise ValueError("family contains an ideal over a different ring")
        seen.setdefault(a.bits, a)
    fam = tuple(seen[b] for b in sorted(seen))
    if not fam:
        return AxiomViolation(1, ring, fam, {}, "family is empty")
    fam_bits = set(seen)
    ideals = all_left_ideals(ring)

    for a in fam:
        for b in ideals:
            if a.bits & ~b.bits == 0 and b.bits not in fam_bits:
                return AxiomViolation(
                    1, ring, fam, {"member": a, "superset": b},
                    f"{a.describe()} is a member but its superset {b.describe()} is not")

    for i, a in enumerate(fam):
        for b in fam[i:]:
            target = a.bits & b.bits
            if not any(c.bits & ~target == 0 for c in fam):
                return AxiomViolation(
                    2, ring, fam, {"left": a, "right": b},
                    f"no member lies inside {a.describe()} and {b.describe()}")

    for a in fam:
        for b in fam:
            prod = _product_bits(ring, a.generators, b.generators)
            if prod not in fam_bits:
                full = _product_bits(ring, a.elements(), b.elements())
                reading = "generators" if full in fam_bits else "both"
                return AxiomViolation(
                    3, ring, fam,
                    {"left": a, "right": b, "product_bits": prod,
                     "full_product_bits": full, "reading": reading},
                    f"product of {a.describe()} and {b.describe()} generates an ideal "
                    f"outside the family (reading: {reading})")

    for a in fam:
        for r in range(ring.order):
            if not any(all(ring.mul[g][r] in a for g in b.generators) for b in fam):
                return AxiomViolation(
                    4, ring, fam, {"member": a, "scalar": r},
                    f"no member B with B*{ring.element_name(r)} inside {a.describe()}")

    for a in fam:
        r = regularity_witness(a)
        if r is not None:
            return AxiomViolation(
                5, ring, fam, {"member": a, "scalar": r},
                f"{a.describe()} * {ring.element_name(r)} = 0 "
                f"but {ring.element_name(r)} != 0")

    return TorsionNotion(ring, fam, validated=True)


def _require_validated(notion, module=None):
    if not isinstance(notion, TorsionNotion) or not notion.validated:
        raise ValueError("operation requires a validated torsion notion")
    if module is not None and module.ring is not notion.ring:
        raise ValueError("module ring does not match the torsion notion")


def _carried_into(gen_rows, x, target_bits):
    return all(target_bits >> row[x] & 1 for row in gen_rows)


def _family_gen_rows(ideals, module):
    return [[module.act[g] for g in a.generators] for a in ideals]


def _family_torsion_free(ideals, module):
    """Torsion-freeness for a raw ideal family (no validation required)."""
    zero_bit = 1 << module.zero
    rows = _family_gen_rows(ideals, module)
    for x in range(module.order):
        if x == module.zero:
            continue
        if any(_carried_into(rws, x, zero_bit) for rws in rows):
            return False
    return True


def torsion_elements(notion, module):
    """The set of elements annihilated by some member ideal (a submodule)."""
    _require_validated(notion, module)
    zero_bit = 1 << module.zero
    rows = _family_gen_rows(notion.ideals, module)
    bits = 0
    for x in range(module.order):
        if any(_carried_into(rws, x, zero_bit) for rws in rows):
            bits |= 1 << x
    try:
        return Submodule(module, bits)
    except ValueError as exc:
        raise InvariantError(f"torsion set of {module.name} is not a submodule") from exc


def is_torsion_free(notion, module):
    """No nonzero torsion element; the ambient hypothesis for closures."""
    _require_validated(notion, module)
    key = ("tf", notion.key())
    got = module._cache.get(key)
    if got is None:
        got = _family_torsion_free(notion.ideals, module)
        module._cache[key] = got
    return got


def _closure_bits(notion, module, sub_bits):
    rows = _family_gen_rows(notion.ideals, module)
    bits = 0
    for x in range(module.order):
        if any(_carried_into(rws, x, sub_bits) for rws in rows):
            bits |= 1 << x
    return bits


def relative_closure(notion, module, sub):
    """Least relative submodule containing ``sub``.

    Computed as the set of elements carried into ``sub`` by some member
    ideal.  Only defined on torsion-free modules.
    """
    _require_validated(notion, module)
    if sub.module is not module:
        raise ValueError("submodule of a different module")
    if not is_torsion_free(notion, module):
        raise ValueError(f"{module.name} is not torsion-free for {notion.describe()}")
    bits = _closure_bits(notion, module, sub.bits)
    try:
        return Submodule(module, bits)
    except ValueError as exc:
        raise InvariantError("relative closure is not a submodule") from exc


def closure_witness(notion, module, sub, x):
    """First member ideal carrying ``x`` into ``sub``, or None."""
    _require_validated(notion, module)
    for a in notion.ideals:
        if all(sub.bits >> module.act[g][x] & 1 for g in a.generators):
            return a
    return None


def relative_lattice(notion, module):
    """Lattice of submodules with torsion-free quotient.

    These are exactly the fixed points of the relative closure; meet is
    intersection, join is the closure of the sum (equivalently the least
    fixed point above the union).
    """
    _require_validated(notion, module)
    if not is_torsion_free(notion, module):
        raise ValueError(f"{module.name} is not torsion-free for {notion.describe()}")
    key = ("rlat", notion.key())
    got = module._cache.get(key)
    if got is None:
        fixed = [s.bits for s in all_submodules(module)
                 if _closure_bits(notion, module, s.bits) == s.bits]
        got = lattice_from_family(fixed)
        module._cache[key] = got
    return got


def weak_extension_witness(notion, module):
    """A pair of disjoint submodules with intersecting closures, or None."""
    _require_validated(notion, module)
    if not is_torsion_free(notion, module):
        raise ValueError(f"{module.name} is not torsion-free for {notion.describe()}")
    subs = all_submodules(module)
    zero_bit = 1 << module.zero
    closures = [_closure_bits(notion, module, s.bits) for s in subs]
    for i, s in enumerate(subs):
        for j in range(i, len(subs)):
            t = subs[j]
            if s.bits & t.bits == zero_bit and closures[i] & closures[j] != zero_bit:
                return (s, t)
    return None


class RcmReport:
    """Outcome of verifying modularity and weak extension over a corpus."""

    __slots__ = ("notion", "bound", "entries")

    def __init__(self, notion, bound, entries):
        self.notion = notion
        self.bound = bound
        self.entries = tuple(entries)

    @property
    def modules_checked(self):
        return len(self.entries)

    @property
    def all_modular(self):
        return all(e["modular"] for e in self.entries)

    @property
    def all_wep(self):
        return all(e["wep"] for e in self.entries)

    @property
    def passed(self):
        return self.all_modular and self.all_wep

    def failures(self):
        return [e for e in self.entries if not (e["modular"] and e["wep"])]

    def to_json(self):
        entries = []
        for e in self.entries:
            doc = {"module": e["module"], "order": e["order"],
                   "lattice_size": e["lattice_size"],
                   "modular": e["modular"], "wep": e["wep"]}
            if e["modular_witness"] is not None:
                doc["modular_witness"] = list(e["modular_witness"])
            if e["wep_witness"] is not None:
                doc["wep_witness"] = [sorted(kernels.bits_of(b)) for b in e["wep_witness"]]
            entries.append(doc)
        return {"filter": [list(a.generators) for a in self.notion.ideals],
                "bound": self.bound,
                "modules_checked": self.modules_checked,
                "all_modular": self.all_modular,
                "all_wep": self.all_wep,
                "entries": entries}


def rcm_verify(notion, bound=2):
    """Check every torsion-free corpus module for a modular relative
    lattice and the weak extension principle."""
    _require_validated(notion)
    ring = notion.ring
    cache_key = ("rcm", notion.key(), bound)
    got = ring._cache.get(cache_key)
    if got is not None:
        return got
    entries = []
    for mod in module_corpus(ring, bound):
        if not is_torsion_free(notion, mod):
            continue
        lat = relative_lattice(notion, mod)
        mw = modularity_witness(lat)
        ww = weak_extension_witness(notion, mod)
        entries.append({
            "module": mod.name, "order": mod.order, "lattice_size": lat.size,
            "modular": mw is None, "modular_witness": mw,
            "wep": ww is None,
            "wep_witness": None if ww is None else (ww[0].bits, ww[1].bits),
        })
    got = RcmReport(notion, bound, entries)
    ring._cache[cache_key] = got
    return got


def enumerate_torsion_notions(ring):
    """All torsion notions of the ring, canonically sorted.

    Candidate members are pre-filtered by per-ideal regularity (axiom 5
    is per-member, so this pruning is sound), and subsets are explored
    by increasing cardinality.  The full ideal is in every notion.
    """
    got = ring._cache.get("notions")
    if got is not None:
        return got
    ideals = all_left_ideals(ring)
    full = ideals[-1]
    candidates = [a for a in ideals
                  if a.bits != full.bits and regularity_witness(a) is None]
    out = []
    for size in range(len(candidates) + 1):
        for combo in itertools.combinations(candidates, size):
            res = check_torsion_axioms(ring, combo + (full,))
            if isinstance(res, TorsionNotion):
                out.append(res)
    out.sort(key=lambda f: (len(f), f.key()))
    got = tuple(out)
    ring._cache["notions"] = got
    return got


def principal_generator(notion):
    """The unique minimal member and its rendered quasiidentity."""
    _require_validated(notion)
    mins = [a for a in notion.ideals
            if all(a.bits & ~b.bits == 0 for b in notion.ideals)]
    if len(mins) != 1:
        raise InvariantError(
            f"validated notion over {notion.ring.name} lacks a unique minimum")
    return mins[0], format_quasiidentity(mins[0])


def right_translation_witness(notion, ideal, r):
    """First member B with B*r inside the given ideal, or None."""
    _require_validated(notion)
    ring = notion.ring
    for b in notion.ideals:
        if all(ring.mul[g][r] in ideal for g in b.generators):
            return b
    return None

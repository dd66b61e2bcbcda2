"""Parser for the ring-spec mini-language and the builtin ring registry.

Grammar::

    spec  := Z(n) | GF(p) | UT2(p) | M2(p)
           | prod(spec, spec)
           | quot(spec, g1, g2, ...)    two-sided closure of the generators
           | table:PATH                 explicit-table JSON file

Generator tokens inside ``quot`` are element names of the inner ring
(e11, e12, ...) or decimal element indices.
"""

import json

from .errors import RingSpecError
from .rings import (cyclic_ring, full_matrix_ring, prime_field, product_ring,
                    quotient_ring, ring_from_table, two_sided_closure,
                    upper_triangular_ring)


def parse_ring_spec(text):
    """Parse a ring-spec expression into a validated FiniteRing."""
    ring, pos = _parse(text, _skip_ws(text, 0))
    pos = _skip_ws(text, pos)
    if pos != len(text):
        raise RingSpecError(f"trailing input {text[pos:]!r}", pos)
    return ring


def _skip_ws(text, pos):
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos


def _parse(text, pos):
    if text.startswith("table:", pos):
        end = pos + 6
        while end < len(text) and text[end] not in ",)":
            end += 1
        path = text[pos + 6:end].strip()
        if not path:
            raise RingSpecError("table: requires a file path", pos)
        return _load_table(path), end
    head = pos
    while head < len(text) and (text[head].isalnum() or text[head] == "_"):
        head += 1
    ctor = text[pos:head]
    if not ctor:
        raise RingSpecError(f"expected a ring constructor, found {text[pos:pos+10]!r}", pos)
    if head >= len(text) or text[head] != "(":
        raise RingSpecError(f"expected '(' after {ctor!r}", head)
    pos = _skip_ws(text, head + 1)

    if ctor in ("Z", "GF", "UT2", "M2"):
        num, pos = _parse_int(text, pos)
        pos = _expect(text, pos, ")")
        builders = {"Z": cyclic_ring, "GF": prime_field,
                    "UT2": upper_triangular_ring, "M2": full_matrix_ring}
        return builders[ctor](num), pos
    if ctor == "prod":
        left, pos = _parse(text, pos)
        pos = _expect(text, pos, ",")
        right, pos = _parse(text, _skip_ws(text, pos))
        pos = _expect(text, pos, ")")
        return product_ring(left, right), pos
    if ctor == "quot":
        base, pos = _parse(text, pos)
        gens = []
        pos = _skip_ws(text, pos)
        while pos < len(text) and text[pos] == ",":
            pos = _skip_ws(text, pos + 1)
            end = pos
            while end < len(text) and text[end] not in ",)":
                end += 1
            token = text[pos:end].strip()
            if not token:
                raise RingSpecError("empty generator token", pos)
            gens.append(base.resolve(token))
            pos = end
        pos = _expect(text, pos, ")")
        ideal = two_sided_closure(base, gens)
        quot, _ = quotient_ring(base, ideal)
        return quot, pos
    raise RingSpecError(f"unknown ring constructor {ctor!r}", head)


def _parse_int(text, pos):
    end = pos
    while end < len(text) and text[end].isdigit():
        end += 1
    if end == pos:
        raise RingSpecError("expected an integer", pos)
    return int(text[pos:end]), _skip_ws(text, end)


def _expect(text, pos, ch):
    pos = _skip_ws(text, pos)
    if pos >= len(text) or text[pos] != ch:
        raise RingSpecError(f"expected {ch!r}", pos)
    return pos + 1


def _load_table(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise RingSpecError(f"cannot read ring table {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise RingSpecError(f"invalid JSON in {path!r}: {exc}") from exc
    return ring_from_table(doc, name=f"table:{path}")


#: Spec strings of the builtin corpus, in census order.
BUILTIN_SPECS = tuple(
    [f"Z({n})" for n in range(1, 17)]
    + ["UT2(2)", "M2(2)",
       "prod(Z(2),Z(2))", "prod(Z(2),Z(4))", "prod(Z(4),Z(4))",
       "prod(Z(2),prod(Z(2),Z(2)))", "prod(Z(2),UT2(2))"]
)

_builtin_cache = {}


def builtin_rings(max_order=16):
    """The builtin corpus: (spec string, ring) pairs with order <= max_order."""
    out = []
    for spec in BUILTIN_SPECS:
        ring = _builtin_cache.get(spec)
        if ring is None:
            ring = parse_ring_spec(spec)
            _builtin_cache[spec] = ring
        if ring.order <= max_order:
            out.append((spec, ring))
    return out

"""Finite bounded posets stored as explicit order tables, and monotone maps between them.

Posets are interned by structure: building the same element tuple with the same
order twice yields the same object, so identity comparison is structural
comparison.  Element identifiers are hashable values of four shapes:

* plain strings (``"bot"``, ``"top"``, ``"h"``, ``"WB"``, ...)
* :class:`Op` wrappers for elements of a dual poset
* tuples for elements of a product poset
* small frozen objects carrying a ``label`` attribute (terminal partitions,
  hom-poset maps, quotient blocks)

Each element has a text label used by serialization and by the game parser.
Products with the one-element poset are absorbed eagerly, so ``product(A, ONE)``
is ``A`` itself and its elements are those of ``A``.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping

from .errors import InputError

Element = Hashable


@dataclass(frozen=True)
class Op:
    """The copy of ``base`` living in a dual poset."""

    base: Hashable


def dual_element(e: Element) -> Element:
    if isinstance(e, Op):
        return e.base
    if isinstance(e, tuple):
        return tuple(dual_element(x) for x in e)
    return Op(e)


def element_label(e: Element) -> str:
    if isinstance(e, str):
        return e
    if isinstance(e, Op):
        return element_label(e.base) + "^op"
    if isinstance(e, tuple):
        return "(" + ",".join(element_label(x) for x in e) + ")"
    return e.label


class Poset:
    """A finite poset with a least and a greatest element.

    Use :func:`make_poset` (or the module-level constants) rather than calling the
    class directly.  ``up[i]`` is a bitmask of the indices ``j`` with
    ``elements[i] <= elements[j]``.
    """

    __slots__ = ("name", "elements", "labels", "index", "up", "down", "top", "bottom", "_by_label", "__weakref__")

    _registry: dict[tuple, "Poset"] = {}
    _lock = threading.Lock()

    def __init__(self) -> None:  # pragma: no cover - guarded constructor
        raise TypeError("use make_poset()")

    @classmethod
    def _intern(cls, elements: tuple, up: tuple[int, ...], name: str) -> "Poset":
        key = (elements, up)
        found = cls._registry.get(key)
        if found is not None:
            return found
        with cls._lock:
            found = cls._registry.get(key)
            if found is not None:
                return found
            p = object.__new__(cls)
            n = len(elements)
            p.name = name
            p.elements = elements
            p.labels = tuple(element_label(e) for e in elements)
            if len(set(p.labels)) != n:
                raise InputError(f"poset {name}: element labels are not unique")
            p.index = {e: i for i, e in enumerate(elements)}
            p.up = up
            p.down = tuple(sum(1 << i for i in range(n) if up[i] >> j & 1) for j in range(n))
            full = (1 << n) - 1
            tops = [i for i in range(n) if p.down[i] == full]
            bottoms = [i for i in range(n) if up[i] == full]
            if not tops or not bottoms:
                raise InputError(f"poset {name}: needs a greatest and a least element")
            p.top = elements[tops[0]]
            p.bottom = elements[bottoms[0]]
            p._by_label = dict(zip(p.labels, elements))
            cls._registry[key] = p
            return p

    def __reduce__(self):
        return (_rebuild_poset, (self.elements, self.up, self.name))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e: Element) -> bool:
        return e in self.index

    def __repr__(self) -> str:
        return f"Poset({self.name}, {len(self.elements)} elements)"

    def idx(self, e: Element) -> int:
        try:
            return self.index[e]
        except (KeyError, TypeError):
            raise InputError(f"{e!r} is not an element of poset {self.name}") from None

    def leq(self, a: Element, b: Element) -> bool:
        return bool(self.up[self.idx(a)] >> self.idx(b) & 1)

    def label(self, e: Element) -> str:
        return self.labels[self.idx(e)]

    def element(self, label: str) -> Element:
        try:
            return self._by_label[label]
        except KeyError:
            raise InputError(f"unknown element {label!r} of poset {self.name}") from None

    def covers(self) -> list[tuple[Element, Element]]:
        """Pairs (a, b) with a < b and nothing strictly between."""
        n = len(self.elements)
        out = []
        for i in range(n):
            above = self.up[i] & ~(1 << i)
            for j in range(n):
                if above >> j & 1:
                    between = above & self.down[j] & ~(1 << j)
                    if not between:
                        out.append((self.elements[i], self.elements[j]))
        return out

    def is_chain(self) -> bool:
        return all(self.up[i] >> j & 1 or self.up[j] >> i & 1 for i in range(len(self)) for j in range(len(self)))

    def check(self) -> bool:
        """Exhaustively verify the poset axioms on the stored table."""
        n = len(self.elements)
        rel = [[bool(self.up[i] >> j & 1) for j in range(n)] for i in range(n)]
        for i in range(n):
            if not rel[i][i]:
                return False
            for j in range(n):
                if i != j and rel[i][j] and rel[j][i]:
                    return False
                for k in range(n):
                    if rel[i][j] and rel[j][k] and not rel[i][k]:
                        return False
        return True


def _rebuild_poset(elements, up, name):
    return Poset._intern(elements, up, name)


def make_poset(
    elements: Iterable[Element],
    leq: Iterable[tuple[Element, Element]] | Callable[[Element, Element], bool] = (),
    name: str = "",
) -> Poset:
    """Build a poset from generating pairs (closed reflexively and transitively) or a predicate.

    Rejects relations that are not antisymmetric.
    """
    elems = tuple(elements)
    n = len(elems)
    pos = {e: i for i, e in enumerate(elems)}
    if len(pos) != n:
        raise InputError("duplicate elements")
    up = [1 << i for i in range(n)]
    if callable(leq):
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                if leq(a, b):
                    up[i] |= 1 << j
    else:
        for a, b in leq:
            if a not in pos or b not in pos:
                raise InputError(f"relation mentions unknown element {a!r} or {b!r}")
            up[pos[a]] |= 1 << pos[b]
        changed = True
        while changed:
            changed = False
            for i in range(n):
                m = up[i]
                acc = m
                for j in range(n):
                    if m >> j & 1:
                        acc |= up[j]
                if acc != m:
                    up[i] = acc
                    changed = True
    for i in range(n):
        for j in range(i + 1, n):
            if up[i] >> j & 1 and up[j] >> i & 1:
                raise InputError(f"relation is not antisymmetric on {elems[i]!r}, {elems[j]!r}")
    if callable(leq):
        for i in range(n):
            for j in range(n):
                if up[i] >> j & 1 and up[j] & ~up[i]:
                    raise InputError("relation given by predicate is not transitive")
    return Poset._intern(elems, tuple(up), name or "P")


def chain(labels: Iterable[str], name: str = "") -> Poset:
    ls = tuple(labels)
    return make_poset(ls, lambda a, b: ls.index(a) <= ls.index(b), name or f"chain{len(ls)}")


ONE = make_poset(("0",), name="one")
BOOL = chain(("bot", "top"), name="bool")
CHAIN3 = chain(("bot", "h", "top"), name="chain3")
DIAMOND = make_poset(
    ("BB", "BW", "WB", "WW"),
    [("BB", "BW"), ("BB", "WB"), ("BW", "WW"), ("WB", "WW")],
    name="diamond",
)
TOP = "top"
BOT = "bot"

BUILTIN = {"one": ONE, "bool": BOOL, "chain3": CHAIN3, "diamond": DIAMOND}


def product(p: Poset, q: Poset) -> Poset:
    if p is ONE:
        return q
    if q is ONE:
        return p
    elems = tuple((a, b) for a in p.elements for b in q.elements)
    nq = len(q.elements)
    up = []
    for i in range(len(p.elements)):
        for j in range(nq):
            m = 0
            for i2 in range(len(p.elements)):
                if p.up[i] >> i2 & 1:
                    m |= q.up[j] << (i2 * nq)
            up.append(m)
    return Poset._intern(elems, tuple(up), f"{p.name}x{q.name}")


def product_element(p: Poset, q: Poset, a: Element, b: Element) -> Element:
    """The element of ``product(p, q)`` pairing ``a`` and ``b``, honouring absorption of ONE."""
    if p is ONE:
        return b
    if q is ONE:
        return a
    return (a, b)


def split_element(p: Poset, q: Poset, e: Element) -> tuple[Element, Element]:
    if p is ONE:
        return "0", e
    if q is ONE:
        return e, "0"
    return e


def dual(p: Poset) -> Poset:
    if p is ONE:
        return ONE
    name = p.name[:-3] if p.name.endswith("^op") else p.name + "^op"
    return Poset._intern(tuple(dual_element(e) for e in p.elements), p.down, name)


def dual_of(p: Poset, e: Element) -> Element:
    return e if p is ONE else dual_element(e)


@dataclass(frozen=True)
class MonotoneMap:
    domain: Poset
    codomain: Poset
    table: Mapping[Element, Element]
    name: str = ""
    trusted: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.trusted:
            return
        for a in self.domain.elements:
            if a not in self.table:
                raise InputError(f"map {self.name}: no value at {a!r}")
            if self.table[a] not in self.codomain:
                raise InputError(f"map {self.name}: value at {a!r} outside codomain")
        if not self.is_monotone():
            raise InputError(f"map {self.name} is not order-preserving")

    def __call__(self, a: Element) -> Element:
        return self.table[a]

    def is_monotone(self) -> bool:
        d, c = self.domain, self.codomain
        for a in d.elements:
            fa = self.table[a]
            for b in d.elements:
                if d.leq(a, b) and not c.leq(fa, self.table[b]):
                    return False
        return True

    def __hash__(self) -> int:
        return hash((id(self.domain), id(self.codomain), tuple(self.table[a] for a in self.domain.elements)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return (
            self.domain is other.domain
            and self.codomain is other.codomain
            and all(self.table[a] == other.table[a] for a in self.domain.elements)
        )


def identity_map(p: Poset) -> MonotoneMap:
    return MonotoneMap(p, p, {a: a for a in p.elements}, "id", trusted=True)


def constant_map(p: Poset, q: Poset, value: Element) -> MonotoneMap:
    return MonotoneMap(p, q, {a: value for a in p.elements}, f"const_{element_label(value)}")


def compose(phi: MonotoneMap, psi: MonotoneMap) -> MonotoneMap:
    """``phi`` after ``psi``."""
    if psi.codomain is not phi.domain:
        raise InputError("maps do not compose")
    return MonotoneMap(psi.domain, phi.codomain, {a: phi.table[psi.table[a]] for a in psi.domain.elements}, trusted=True)


@dataclass(frozen=True)
class HomElement:
    """A monotone map viewed as an element of a hom-poset; ``values`` follow the domain's element order."""

    index: int
    values: tuple
    domain: Poset = field(compare=True)

    @property
    def label(self) -> str:
        return f"f{self.index}"

    def __call__(self, a: Element) -> Element:
        return self.values[self.domain.idx(a)]


def enumerate_monotone_maps(domain: Poset, codomain: Poset) -> Poset:
    """All monotone maps ``domain -> codomain`` as a poset under the pointwise order.

    Elements are :class:`HomElement` values labelled ``f0, f1, ...`` in enumeration
    order (backtracking over a linear extension of the domain).
    """
    n = len(domain.elements)
    order = sorted(range(n), key=lambda i: (bin(domain.down[i]).count("1"), i))
    m = len(codomain.elements)
    found: list[tuple[int, ...]] = []
    assign = [-1] * n

    def extend(k: int) -> None:
        if k == n:
            found.append(tuple(assign))
            return
        i = order[k]
        for v in range(m):
            ok = True
            for j in range(n):
                if assign[j] < 0:
                    continue
                if domain.up[j] >> i & 1 and not codomain.up[assign[j]] >> v & 1:
                    ok = False
                    break
                if domain.up[i] >> j & 1 and not codomain.up[v] >> assign[j] & 1:
                    ok = False
                    break
            if ok:
                assign[i] = v
                extend(k + 1)
                assign[i] = -1

    extend(0)
    elems = tuple(HomElement(k, tuple(codomain.elements[v] for v in vals), domain) for k, vals in enumerate(found))

    def pointwise(f: HomElement, g: HomElement) -> bool:
        return all(codomain.leq(x, y) for x, y in zip(f.values, g.values))

    return make_poset(elems, pointwise, name=f"hom({domain.name},{codomain.name})")


def hom_to_map(codomain: Poset, f: HomElement) -> MonotoneMap:
    return MonotoneMap(f.domain, codomain, dict(zip(f.domain.elements, f.values)), f.label, trusted=True)


def lambda_map(p: Poset) -> MonotoneMap:
    """``(a^op, b) -> top`` iff ``a <= b``."""
    dp = dual(p)
    table = {}
    for a in p.elements:
        for b in p.elements:
            table[product_element(dp, p, dual_of(p, a), b)] = TOP if p.leq(a, b) else BOT
    return MonotoneMap(product(dp, p), BOOL, table, "lambda")


def rho_map(p: Poset) -> MonotoneMap:
    """``(a, b^op) -> top`` iff ``a`` is not below ``b``."""
    dp = dual(p)
    table = {}
    for a in p.elements:
        for b in p.elements:
            table[product_element(p, dp, a, dual_of(p, b))] = BOT if p.leq(a, b) else TOP
    return MonotoneMap(product(p, dp), BOOL, table, "rho")


def bool_and() -> MonotoneMap:
    bb = product(BOOL, BOOL)
    return MonotoneMap(bb, BOOL, {(a, b): TOP if a == b == TOP else BOT for a, b in bb.elements}, "and")


def bool_or() -> MonotoneMap:
    bb = product(BOOL, BOOL)
    return MonotoneMap(bb, BOOL, {(a, b): BOT if a == b == BOT else TOP for a, b in bb.elements}, "or")


def eval_map(p: Poset) -> MonotoneMap:
    """The application map ``p x hom(p, bool) -> bool``."""
    fp = enumerate_monotone_maps(p, BOOL)
    table = {}
    for a in p.elements:
        for f in fp.elements:
            table[product_element(p, fp, a, f)] = f(a)
    return MonotoneMap(product(p, fp), BOOL, table, "eval")


def apply_map(eps: MonotoneMap, a: Element, f: Element) -> Element:
    """Evaluate an application-style map at ``(a, f)``; ``f`` must be a hom-poset element over ``a``'s poset."""
    if not isinstance(f, HomElement) or a not in f.domain:
        raise InputError(f"{element_label(f) if isinstance(f, HomElement) else f!r} is not a map defined at {a!r}")
    key = (a, f)
    if key not in eps.table:
        raise InputError("application map does not cover this poset")
    return eps.table[key]


@dataclass(frozen=True)
class Block:
    """A class of mutually comparable elements in a quotient."""

    members: tuple

    @property
    def label(self) -> str:
        return "[" + ",".join(element_label(m) for m in self.members) + "]"


def quotient_preorder(
    elements: Iterable[Element],
    preleq: Iterable[tuple[Element, Element]] | Callable[[Element, Element], bool],
    name: str = "",
) -> tuple[Poset, dict[Element, Element]]:
    """Quotient a preorder by mutual comparability.

    Singleton classes keep their element as identifier; larger classes become a
    :class:`Block`.  Returns the poset and the projection.
    """
    elems = list(elements)
    if callable(preleq):
        rel = {(a, b) for a in elems for b in elems if preleq(a, b)}
    else:
        rel = set(preleq)
    for a in elems:
        if (a, a) not in rel:
            raise InputError(f"preorder is not reflexive at {a!r}")
    for a, b in rel:
        for c in elems:
            if (b, c) in rel and (a, c) not in rel:
                raise InputError(f"preorder is not transitive at {a!r} <= {b!r} <= {c!r}")
    classes: list[list[Element]] = []
    proj: dict[Element, Element] = {}
    for a in elems:
        for cls in classes:
            r = cls[0]
            if (a, r) in rel and (r, a) in rel:
                cls.append(a)
                break
        else:
            classes.append([a])
    reps = []
    for cls in classes:
        ident = cls[0] if len(cls) == 1 else Block(tuple(sorted(cls, key=element_label)))
        reps.append((ident, cls[0]))
        for a in cls:
            proj[a] = ident
    rep_of = dict(reps)
    poset = make_poset([r for r, _ in reps], lambda x, y: (rep_of[x], rep_of[y]) in rel, name or "quotient")
    return poset, proj


def serialize_poset(p: Poset) -> str:
    lines = [f"poset {p.name.replace(' ', '_') or 'P'}", "elems " + " ".join(p.labels)]
    for a, b in p.covers():
        lines.append(f"le {p.label(a)} {p.label(b)}")
    return "\n".join(lines) + "\n"


def parse_poset(text: str) -> Poset:
    name = "P"
    elems: list[str] = []
    pairs: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head == "poset" and len(parts) == 2:
            name = parts[1]
        elif head == "elems":
            elems.extend(parts[1:])
        elif head == "le" and len(parts) == 3:
            pairs.append((parts[1], parts[2]))
        else:
            raise InputError(f"line {lineno}: cannot parse {raw!r}")
    if not elems:
        raise InputError("poset has no elements")
    return make_poset(elems, pairs, name)


def resolve_poset(name_or_path: str) -> Poset:
    """A builtin poset name or a path to a poset file."""
    if name_or_path in BUILTIN:
        return BUILTIN[name_or_path]
    try:
        with open(name_or_path) as fh:
            return parse_poset(fh.read())
    except OSError as exc:
        raise InputError(f"unknown poset {name_or_path!r}: {exc}") from None

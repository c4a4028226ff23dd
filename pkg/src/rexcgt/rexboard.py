"""Reverse Hex boards, Shannon-style regions, free cell sets, and set coloring games.

A region is a set of cells with adjacency, a labelled set of black terminals
attached to some cells, and placed stones.  Its completions (every empty cell
coloured) are classified by the partition of the terminals induced by black
connectivity; free regions are classified by their black cells.  From that
classification come the outcome poset and the game form of the region.

Rectangular boards use hex adjacency: cell (r, c) touches (r, c+-1), (r+-1, c),
(r-1, c+1) and (r+1, c-1).  Virtual terminals ``N`` and ``S`` attach to the
first and last rows.  Left (black) wins a full board iff no black path joins them.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .canonical import canon
from .errors import InputError, charge
from .gameform import Game, add_all, atom, make, map_game
from .order import OutcomeClass, Player, outcome
from .poset import BOOL, MonotoneMap, Poset, make_poset, product

BLACK = "B"
WHITE = "W"


class UnionFind:
    def __init__(self) -> None:
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass(frozen=True)
class Partition:
    """A partition of terminal labels; blocks and members follow the region's terminal order."""

    blocks: tuple[tuple[str, ...], ...]

    @property
    def label(self) -> str:
        big = [b for b in self.blocks if len(b) > 1]
        if not big:
            return "top"
        return "".join("(" + ",".join(b) + ")" for b in big)

    def block_of(self, t: str) -> tuple[str, ...]:
        for b in self.blocks:
            if t in b:
                return b
        raise InputError(f"terminal {t!r} not in partition {self.label}")

    def refines(self, other: "Partition") -> bool:
        """Every block of ``self`` lies inside a block of ``other``."""
        return all(any(set(b) <= set(c) for c in other.blocks) for b in self.blocks)


@dataclass(frozen=True)
class RegionPosition:
    kind: str
    cells: tuple[str, ...]
    edges: frozenset
    terminals: tuple[str, ...] = ()
    tedges: frozenset = frozenset()
    stones: Mapping[str, str] = field(default_factory=dict)
    coords: Mapping[str, tuple[int, int]] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.kind not in ("shannon", "free"):
            raise InputError(f"unknown region kind {self.kind!r}")
        cs = set(self.cells)
        for e in self.edges:
            for c in e:
                if c not in cs:
                    raise InputError(f"edge mentions unknown cell {c!r}")
        for t, c in self.tedges:
            if t not in self.terminals:
                raise InputError(f"terminal edge mentions unknown terminal {t!r}")
            if c not in cs:
                raise InputError(f"terminal edge mentions unknown cell {c!r}")
        for c, v in self.stones.items():
            if c not in cs or v not in (BLACK, WHITE):
                raise InputError(f"bad stone {v!r} at {c!r}")
        if self.kind == "free" and self.terminals:
            raise InputError("free regions have no terminals")

    @property
    def empty(self) -> tuple[str, ...]:
        return tuple(c for c in self.cells if c not in self.stones)

    def neighbours(self, c: str) -> list[str]:
        return [d for e in self.edges if c in e for d in e if d != c]

    def place(self, cell: str, color: str) -> "RegionPosition":
        if cell not in self.cells or cell in self.stones:
            raise InputError(f"cell {cell!r} is not empty")
        stones = dict(self.stones)
        stones[cell] = color
        return RegionPosition(self.kind, self.cells, self.edges, self.terminals, self.tedges, stones, self.coords)

    def cell_at(self, row: int, col: int) -> str:
        return f"r{row}c{col}"


class _Connectivity:
    """Precomputed structure for evaluating many completions of one region quickly."""

    def __init__(self, r: RegionPosition):
        self.r = r
        self.empty = r.empty
        self.fixed_black = [c for c in r.cells if r.stones.get(c) == BLACK]
        self.adj = {c: [] for c in r.cells}
        for e in r.edges:
            a, b = tuple(e)
            self.adj[a].append(b)
            self.adj[b].append(a)
        self.attached = {c: [] for c in r.cells}
        for t, c in r.tedges:
            self.attached[c].append(t)
        self._memo: dict[int, object] = {}

    def partition(self, black_mask: int) -> Partition:
        black = set(self.fixed_black)
        black.update(c for i, c in enumerate(self.empty) if black_mask >> i & 1)
        uf = UnionFind()
        for c in black:
            for d in self.adj[c]:
                if d in black:
                    uf.union(("c", c), ("c", d))
            for t in self.attached[c]:
                uf.union(("t", t), ("c", c))
        groups: dict = {}
        for t in self.r.terminals:
            groups.setdefault(uf.find(("t", t)), []).append(t)
        order = {t: i for i, t in enumerate(self.r.terminals)}
        blocks = sorted((tuple(sorted(b, key=order.__getitem__)) for b in groups.values()), key=lambda b: order[b[0]])
        return Partition(tuple(blocks))

    def coloring(self, black_mask: int) -> str:
        out = []
        k = 0
        for c in self.r.cells:
            if c in self.r.stones:
                out.append(self.r.stones[c])
            else:
                out.append(BLACK if black_mask >> k & 1 else WHITE)
                k += 1
        return "".join(out)

    def classify(self, black_mask: int):
        r = self._memo.get(black_mask)
        if r is None:
            r = self.partition(black_mask) if self.r.kind == "shannon" else self.coloring(black_mask)
            self._memo[black_mask] = r
        return r


def _completion_mask(r: RegionPosition, completion: Mapping[str, str] | Iterable[str]) -> int:
    empty = r.empty
    if isinstance(completion, Mapping):
        missing = [c for c in empty if c not in completion]
        if missing:
            raise InputError(f"completion leaves {missing} uncoloured")
        for c, v in completion.items():
            if c not in empty or v not in (BLACK, WHITE):
                raise InputError(f"bad completion entry {c!r}={v!r}")
        blacks = {c for c, v in completion.items() if v == BLACK}
    else:
        blacks = set(completion)
        if not blacks <= set(empty):
            raise InputError("completion colours a non-empty cell")
    return sum(1 << i for i, c in enumerate(empty) if c in blacks)


def outcome_of_completion(r: RegionPosition, completion: Mapping[str, str] | Iterable[str]):
    """The terminal partition (Shannon) or colouring string (free) of a completion.

    ``completion`` is either a full cell->colour map over the empty cells or the
    set of empty cells coloured black.
    """
    return _Connectivity(r).classify(_completion_mask(r, completion))


def _coloring_leq(a: str, b: str) -> bool:
    return all(not (x == WHITE and y == BLACK) for x, y in zip(a, b))


def outcome_poset(r: RegionPosition) -> tuple[Poset, dict[int, object]]:
    """Achievable outcomes ordered by Left's preference, and the completion classifier.

    The returned dict maps a black-cell bitmask over ``r.empty`` to its element.
    """
    conn = _Connectivity(r)
    n = len(conn.empty)
    classify = {m: conn.classify(m) for m in range(1 << n)}
    elems = set(classify.values())
    if r.kind == "shannon":
        ordered = sorted(elems, key=lambda p: (len(p.blocks), p.label))
        poset = make_poset(ordered, lambda a, b: b.refines(a), name="partitions(" + ",".join(r.terminals) + ")")
    else:
        ordered = sorted(elems, key=lambda s: (-s.count(BLACK), s))
        poset = make_poset(ordered, _coloring_leq, name="colorings" + str(len(r.cells)))
    return poset, classify


def game_form(r: RegionPosition) -> Game:
    """Game form of a region: Left colours an empty cell black, Right white."""
    poset, classify = outcome_poset(r)
    n = len(r.empty)
    full = (1 << n) - 1
    memo: dict[tuple[int, int], Game] = {}

    def go(b: int, w: int) -> Game:
        key = (b, w)
        g = memo.get(key)
        if g is None:
            charge()
            free = full & ~(b | w)
            if not free:
                g = atom(poset, classify[b])
            else:
                bits = [1 << i for i in range(n) if free >> i & 1]
                g = make(poset, [go(b | m, w) for m in bits], [go(b, w | m) for m in bits])
            memo[key] = g
        return g

    return go(0, 0)


# ---------------------------------------------------------------- parsing


def _lines(text: str) -> Iterable[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_board(text: str) -> RegionPosition:
    """Read ``board <rows> <cols>`` followed by rows of ``. B W`` glyphs."""
    it = iter(_lines(text))
    try:
        lineno, head = next(it)
    except StopIteration:
        raise InputError("empty board file") from None
    if len(head) != 3 or head[0] != "board":
        raise InputError(f"line {lineno}: expected 'board <rows> <cols>'")
    try:
        rows, cols = int(head[1]), int(head[2])
    except ValueError:
        raise InputError(f"line {lineno}: board size must be integers") from None
    if rows < 1 or cols < 1:
        raise InputError(f"line {lineno}: board must be at least 1x1")
    grid = []
    for lineno, toks in it:
        glyphs = list(toks[0]) if len(toks) == 1 and cols > 1 else toks
        if len(glyphs) != cols:
            raise InputError(f"line {lineno}: expected {cols} cells, got {len(glyphs)}")
        for gl in glyphs:
            if gl not in (".", BLACK, WHITE):
                raise InputError(f"line {lineno}: invalid glyph {gl!r}")
        grid.append(glyphs)
    if len(grid) != rows:
        raise InputError(f"expected {rows} rows, got {len(grid)}")
    return board_region(grid)


def board_region(grid: Sequence[Sequence[str]]) -> RegionPosition:
    rows, cols = len(grid), len(grid[0])
    name = {(r, c): f"r{r}c{c}" for r in range(1, rows + 1) for c in range(1, cols + 1)}
    cells = tuple(name[r, c] for r in range(1, rows + 1) for c in range(1, cols + 1))
    edges = set()
    for (r, c), a in name.items():
        for dr, dc in ((0, 1), (1, 0), (1, -1)):
            b = name.get((r + dr, c + dc))
            if b is not None:
                edges.add(frozenset((a, b)))
    tedges = {("N", name[1, c]) for c in range(1, cols + 1)} | {("S", name[rows, c]) for c in range(1, cols + 1)}
    stones = {name[r + 1, c + 1]: v for r, row in enumerate(grid) for c, v in enumerate(row) if v != "."}
    coords = {v: k for k, v in name.items()}
    return RegionPosition("shannon", cells, frozenset(edges), ("N", "S"), frozenset(tedges), stones, coords)


def parse_region(text: str) -> RegionPosition:
    kind = None
    cells: list[str] = []
    edges: set = set()
    terminals: list[str] = []
    tedges: set = set()
    stones: dict[str, str] = {}

    def pair(lineno: int, tok: str) -> tuple[str, str]:
        a, sep, b = tok.partition("-")
        if not sep or not a or not b:
            raise InputError(f"line {lineno}: expected a-b, got {tok!r}")
        return a, b

    for lineno, toks in _lines(text):
        head, args = toks[0], toks[1:]
        if head == "region":
            if len(args) != 1 or args[0] not in ("shannon", "free"):
                raise InputError(f"line {lineno}: region kind must be shannon or free")
            kind = args[0]
        elif head == "cells":
            cells.extend(args)
        elif head == "edges":
            for tok in args:
                a, b = pair(lineno, tok)
                if a == b:
                    raise InputError(f"line {lineno}: self-loop {tok!r}")
                edges.add(frozenset((a, b)))
        elif head == "terminals":
            terminals.extend(args)
        elif head == "tedges":
            tedges.update(pair(lineno, tok) for tok in args)
        elif head in ("black", "white"):
            for c in args:
                if c in stones:
                    raise InputError(f"line {lineno}: cell {c!r} already has a stone")
                stones[c] = BLACK if head == "black" else WHITE
        else:
            raise InputError(f"line {lineno}: unknown directive {head!r}")
    if kind is None:
        raise InputError("missing 'region shannon|free' line")
    if len(set(cells)) != len(cells):
        raise InputError("duplicate cell names")
    return RegionPosition(kind, tuple(cells), frozenset(edges), tuple(terminals), frozenset(tedges), stones)


def load_position(path: str) -> RegionPosition:
    with open(path) as fh:
        text = fh.read()
    for _, toks in _lines(text):
        if toks[0] == "board":
            return parse_board(text)
        return parse_region(text)
    raise InputError(f"{path}: empty file")


# ---------------------------------------------------------------- set coloring games and the oracle


@dataclass(frozen=True)
class SetColoringGame:
    """Players alternately colour cells; Left wins iff ``payoff(black cells)``."""

    cells: tuple[str, ...]
    payoff: Callable[[frozenset], bool]

    def is_antimonotone(self) -> bool:
        subsets = [frozenset(s) for k in range(len(self.cells) + 1) for s in itertools.combinations(self.cells, k)]
        val = {s: self.payoff(s) for s in subsets}
        return all(not val[s | {c}] or val[s] for s in subsets for c in self.cells if c not in s)


def region_as_coloring_game(r: RegionPosition) -> SetColoringGame:
    """View a two-terminal Shannon position as a set coloring game on its empty cells."""
    if r.kind != "shannon" or len(r.terminals) != 2:
        raise InputError("expected a Shannon position with exactly two terminals")
    conn = _Connectivity(r)
    index = {c: i for i, c in enumerate(conn.empty)}
    t1, t2 = r.terminals

    def payoff(black: frozenset) -> bool:
        return _separated(conn, sum(1 << index[c] for c in black), t1, t2)

    return SetColoringGame(conn.empty, payoff)


def _separated(conn: _Connectivity, mask: int, t1: str, t2: str) -> bool:
    """Direct search for a black path between two terminals."""
    black = set(conn.fixed_black)
    black.update(c for i, c in enumerate(conn.empty) if mask >> i & 1)
    start = [c for c in black if t1 in conn.attached[c]]
    seen = set(start)
    stack = list(start)
    while stack:
        c = stack.pop()
        if t2 in conn.attached[c]:
            return False
        for d in conn.adj[c]:
            if d in black and d not in seen:
                seen.add(d)
                stack.append(d)
    return True


def coloring_game_form(g: SetColoringGame) -> Game:
    n = len(g.cells)
    full = (1 << n) - 1
    memo: dict[tuple[int, int], Game] = {}
    top, bot = atom(BOOL, "top"), atom(BOOL, "bot")

    def go(b: int, w: int) -> Game:
        r = memo.get((b, w))
        if r is None:
            charge()
            free = full & ~(b | w)
            if not free:
                r = top if g.payoff(frozenset(c for i, c in enumerate(g.cells) if b >> i & 1)) else bot
            else:
                bits = [1 << i for i in range(n) if free >> i & 1]
                r = make(BOOL, [go(b | m, w) for m in bits], [go(b, w | m) for m in bits])
            memo[(b, w)] = r
        return r

    return go(0, 0)


def minimax_oracle(game: SetColoringGame | RegionPosition, mover: Player) -> bool:
    """Exhaustive alternating play; True iff Left wins when ``mover`` starts."""
    if isinstance(game, RegionPosition):
        game = region_as_coloring_game(game)
    cells = game.cells
    n = len(cells)
    full = (1 << n) - 1
    pay: dict[int, bool] = {}
    memo: dict[tuple[int, int, bool], bool] = {}

    def value(b: int) -> bool:
        v = pay.get(b)
        if v is None:
            v = bool(game.payoff(frozenset(c for i, c in enumerate(cells) if b >> i & 1)))
            pay[b] = v
        return v

    def solve(b: int, w: int, left: bool) -> bool:
        key = (b, w, left)
        r = memo.get(key)
        if r is None:
            charge()
            free = full & ~(b | w)
            if not free:
                r = value(b)
            elif left:
                r = any(solve(b | 1 << i, w, False) for i in range(n) if free >> i & 1)
            else:
                r = all(solve(b, w | 1 << i, True) for i in range(n) if free >> i & 1)
            memo[key] = r
        return r

    return solve(0, 0, mover is Player.LEFT)


def oracle_outcome(game: SetColoringGame | RegionPosition) -> OutcomeClass:
    return OutcomeClass(minimax_oracle(game, Player.LEFT), minimax_oracle(game, Player.RIGHT))


# ---------------------------------------------------------------- position-level checks


def dead_cells(r: RegionPosition) -> list[str]:
    """Empty cells whose colour never changes the winner, whatever fills the rest."""
    scg = region_as_coloring_game(r)
    cells = scg.cells
    out = []
    for c in cells:
        rest = [d for d in cells if d != c]
        dead = True
        for k in range(len(rest) + 1):
            for s in itertools.combinations(rest, k):
                s = frozenset(s)
                if scg.payoff(s) != scg.payoff(s | {c}):
                    dead = False
                    break
            if not dead:
                break
        if dead:
            out.append(c)
    return out


@dataclass
class ConcreteReport:
    outcome: OutcomeClass
    dead: list[str]
    fills: list[tuple[str, str, OutcomeClass, bool]]
    pair_monotone: list[tuple[str, str, bool]]
    dead_sandwich: list[tuple[str, str, bool]]
    lookahead_ok: bool
    lookahead_positions: int

    def to_text(self) -> str:
        lines = [f"outcome: {self.outcome}", "dead: " + (" ".join(self.dead) or "none")]
        for c, col, o, rel in self.fills:
            lines.append(f"fill {c}={col}: outcome {o}, empty <=_o filled: {str(rel).lower()}")
        for a, b, ok in self.pair_monotone:
            lines.append(f"pair {a} {b}: BB <=_o empty <=_o WW: {str(ok).lower()}")
        for d, x, ok in self.dead_sandwich:
            lines.append(f"dead {d} around {x}: B+dead <=_o empty <=_o W+dead: {str(ok).lower()}")
        lines.append(f"lookahead: {str(self.lookahead_ok).lower()} over {self.lookahead_positions} even positions")
        return "\n".join(lines) + "\n"


def concrete_order_checks(r: RegionPosition) -> ConcreteReport:
    """Oracle-backed order facts about a small full-board position."""
    o = oracle_outcome(r)
    empty = r.empty
    fills = []
    for c in empty:
        for col in (BLACK, WHITE):
            oc = oracle_outcome(r.place(c, col))
            fills.append((c, col, oc, o <= oc))
    pairs = []
    for a, b in itertools.combinations(empty, 2):
        bb = oracle_outcome(r.place(a, BLACK).place(b, BLACK))
        ww = oracle_outcome(r.place(a, WHITE).place(b, WHITE))
        pairs.append((a, b, bb <= o <= ww))
    dead = dead_cells(r)
    sandwich = []
    for d in dead:
        for x in empty:
            if x == d:
                continue
            lo = oracle_outcome(r.place(x, BLACK))
            mid = oracle_outcome(r.place(d, BLACK))
            hi = oracle_outcome(r.place(x, WHITE))
            sandwich.append((d, x, lo <= mid <= hi))
    ok, count = _lookahead_everywhere(r)
    return ConcreteReport(o, dead, fills, pairs, sandwich, ok, count)


def _lookahead_everywhere(r: RegionPosition) -> tuple[bool, int]:
    empty = r.empty
    ok = True
    count = 0
    for colors in itertools.product((None, BLACK, WHITE), repeat=len(empty)):
        free = colors.count(None)
        if free % 2:
            continue
        pos = r
        for c, v in zip(empty, colors):
            if v is not None:
                pos = pos.place(c, v)
        count += 1
        oc = oracle_outcome(pos)
        if oc.oR and not oc.oL:
            ok = False
    return ok, count


# ---------------------------------------------------------------- decomposition


def build_glue_map(
    parts: Sequence[tuple[str, Poset, Sequence[str]]],
    identifications: Iterable[tuple[tuple[str, str], tuple[str, str]]],
    goal: tuple[tuple[str, str], tuple[str, str]],
) -> MonotoneMap:
    """Combine region outcomes: top iff the goal terminals stay apart after gluing.

    ``parts`` lists ``(name, partition poset, terminal labels)``; the domain is the
    left-nested product of the posets in order.  Terminals are named ``(part, label)``.
    """
    known = {(name, t) for name, _, ts in parts for t in ts}
    idents = list(identifications)
    for a, b in idents + [goal]:
        for t in (a, b):
            if t not in known:
                raise InputError(f"unknown terminal {t[0]}.{t[1]}")
    domain = parts[0][1]
    for _, p, _ in parts[1:]:
        domain = product(domain, p)

    def flatten(e) -> list:
        out = []
        for _ in range(len(parts) - 1):
            e, last = e
            out.append(last)
        out.append(e)
        return out[::-1]

    table = {}
    for e in domain.elements:
        uf = UnionFind()
        for (name, _, _), part in zip(parts, flatten(e) if len(parts) > 1 else [e]):
            for block in part.blocks:
                for t in block[1:]:
                    uf.union((name, block[0]), (name, t))
        for a, b in idents:
            uf.union(a, b)
        table[e] = "bot" if uf.find(goal[0]) == uf.find(goal[1]) else "top"
    try:
        return MonotoneMap(domain, BOOL, table, "glue")
    except InputError as exc:
        raise AssertionError(f"glue map failed its monotonicity check: {exc}") from None


@dataclass
class GlueManifest:
    parts: list[tuple[str, RegionPosition]]
    identifications: list[tuple[tuple[str, str], tuple[str, str]]]
    goal: tuple[tuple[str, str], tuple[str, str]]


def parse_manifest(text: str, base_dir: str = ".") -> GlueManifest:
    parts: list[tuple[str, RegionPosition]] = []
    idents = []
    goal = None

    def term(lineno: int, tok: str) -> tuple[str, str]:
        name, sep, t = tok.partition(".")
        if not sep:
            raise InputError(f"line {lineno}: expected <part>.<terminal>, got {tok!r}")
        return name, t

    for lineno, toks in _lines(text):
        head = toks[0]
        if head == "part" and len(toks) == 3:
            path = toks[2] if os.path.isabs(toks[2]) else os.path.join(base_dir, toks[2])
            try:
                parts.append((toks[1], load_position(path)))
            except OSError as exc:
                raise InputError(f"line {lineno}: {exc}") from None
        elif head == "identify" and len(toks) == 4 and toks[2] == "=":
            idents.append((term(lineno, toks[1]), term(lineno, toks[3])))
        elif head == "goal" and len(toks) == 3:
            goal = (term(lineno, toks[1]), term(lineno, toks[2]))
        else:
            raise InputError(f"line {lineno}: cannot parse {' '.join(toks)!r}")
    if not parts or goal is None:
        raise InputError("manifest needs at least one part and a goal")
    return GlueManifest(parts, idents, goal)


@dataclass
class GlueResult:
    part_forms: list[Game]
    part_canonical: list[Game]
    glue: MonotoneMap
    composed: Game
    canonical: Game
    outcome: OutcomeClass


def run_glue(m: GlueManifest) -> GlueResult:
    """Canonicalize each part, sum, apply the glue map, and canonicalize the result."""
    forms = [game_form(r) for _, r in m.parts]
    canons = [canon(g) for g in forms]
    glue = build_glue_map([(name, g.poset, r.terminals) for (name, r), g in zip(m.parts, forms)], m.identifications, m.goal)
    composed = map_game(glue, add_all(canons))
    c = canon(composed)
    return GlueResult(forms, canons, glue, composed, c, outcome(c))


def glue_raw(m: GlueManifest, glue: MonotoneMap | None = None) -> Game:
    """The glued game built from the unsimplified part game forms."""
    forms = [game_form(r) for _, r in m.parts]
    if glue is None:
        glue = build_glue_map([(name, g.poset, r.terminals) for (name, r), g in zip(m.parts, forms)], m.identifications, m.goal)
    return map_game(glue, add_all(forms))

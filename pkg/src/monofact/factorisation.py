"""Searches over factorisations of an infinite word into coloured pieces.

A factorisation prefix with pieces of length at most ``L`` only depends on
the position it has reached, so the searches work on the graph of
positions: a piece of acceptable colour starting at position ``p`` is an
edge ``p -> p + len(piece)``.  An infinite factorisation with capped pieces
exists iff infinitely many positions are reachable from 0 (the graph is
finitely branching), so a finite, forward-closed reachable set is a
certificate of refutation.  For eventually periodic words positions are
reduced to states (position modulo the period after the preperiod) and a
reachable cycle is a certificate of a monochromatic factorisation.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .colouring import ColouringScheme, PeriodicitySuspected, SeparatingPhi, phi
from .words import InfiniteWord, Unresolved

UNBOUNDED = math.inf

Accept = Callable[[str], bool]


class InvalidFactorisation(ValueError):
    pass


@dataclass(frozen=True)
class FactorisationPrefix:
    """Pieces ``u_1 ... u_k`` whose concatenation is a prefix of the word.

    Build through :meth:`of` to have the alignment checked.
    """

    pieces: tuple[str, ...]

    @classmethod
    def of(cls, x: InfiniteWord, pieces) -> FactorisationPrefix:
        pieces = tuple(pieces)
        if any(not u for u in pieces):
            raise InvalidFactorisation("pieces must be nonempty")
        joined = "".join(pieces)
        if x.prefix(len(joined)) != joined:
            raise InvalidFactorisation(f"{'.'.join(pieces)} is not a prefix of the word")
        return cls(pieces)

    @property
    def position(self) -> int:
        return sum(map(len, self.pieces))

    def __len__(self):
        return len(self.pieces)

    def extend(self, piece: str) -> FactorisationPrefix:
        return FactorisationPrefix(self.pieces + (piece,))


@dataclass
class SearchReport:
    """Outcome of a bounded search, serialisable with a stable key order.

    ``outcome`` is one of ``no-monochromatic``, ``no-prefixal``,
    ``cycle-certified``, ``prefix-covered``, ``not-coverable`` or
    ``inconclusive``.  Fields that do not apply stay ``None`` and are left
    out of the serialised record.
    """

    outcome: str
    colour_class: int | str | None = None
    piece_len_cap: int | None = None
    nodes: int | None = None
    max_depth: int | None = None
    witness_pieces: list[str] | None = None
    cycle_entry_index: int | None = None
    failure_position: int | None = None
    horizon: int | None = None
    reason: str | None = None
    budgets: dict | None = None
    classes: list[dict] | None = None
    details: dict | None = None
    # replay data; not serialised
    certificate: dict = field(default_factory=dict, repr=False)

    def to_dict(self) -> dict:
        out = {}
        for k, v in self.__dict__.items():
            if k != "certificate" and v is not None:
                out[k] = v
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def s_k(x: InfiniteWord, f: FactorisationPrefix, budget: int) -> int | float:
    """``|u_1| + ... + |u_k| + |x ^ y_k|``; UNBOUNDED for k = 0 or an unresolved lcp."""
    if not f.pieces:
        return UNBOUNDED
    pos = f.position
    m = x.lcp_with_shift(pos, budget)
    if isinstance(m, Unresolved):
        return UNBOUNDED
    return pos + m


def extend_candidates(x: InfiniteWord, pos: int, scheme: ColouringScheme,
                      target: int, L: int) -> list[str]:
    if L < 1:
        raise ValueError("piece length cap must be >= 1")
    out = []
    for n in range(1, L + 1):
        v = x.factor(pos, n)
        if scheme.colour(v) == target:
            out.append(v)
    return out


def _accepted_lengths(x: InfiniteWord, pos: int, accept: Accept, L: int) -> list[int]:
    return [n for n in range(1, L + 1) if accept(x.factor(pos, n))]


def explore_positions(x: InfiniteWord, accept: Accept, L: int,
                      node_budget: int) -> tuple[dict[int, list[int]], bool]:
    """Forward closure of position 0 under accepted pieces.

    Returns ``(edges, complete)``; ``edges`` maps every expanded position to
    the accepted piece lengths there.  ``complete`` is False when more than
    ``node_budget`` positions would be needed.
    """
    edges: dict[int, list[int]] = {}
    stack, seen = [0], {0}
    while stack:
        if len(edges) >= node_budget:
            return edges, False
        pos = stack.pop()
        lens = _accepted_lengths(x, pos, accept, L)
        edges[pos] = lens
        for n in reversed(lens):
            q = pos + n
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return edges, True


def heights(edges: dict[int, list[int]]) -> dict[int, int]:
    """Longest piece sequence starting at each position of a complete closure."""
    h: dict[int, int] = {}
    for pos in sorted(edges, reverse=True):
        h[pos] = max((1 + h[pos + n] for n in edges[pos]), default=0)
    return h


def _phi_class_checks(x: InfiniteWord, scheme: SeparatingPhi, c: int,
                      edges: dict[int, list[int]], h: dict[int, int],
                      budget: int) -> dict:
    # Class 0 under the scheme's order is the class whose depth is bounded by
    # S_1 of the root piece; class 1 is class 0 under the opposite order.
    other = scheme if c == 0 else scheme.reversed()
    mismatches = 0
    for pos, lens in edges.items():
        for n in lens:
            if other.colour(x.factor(pos, n)) != 0:
                mismatches += 1
    violations, max_s1 = [], 0
    for n in edges.get(0, []):
        s1 = s_k(x, FactorisationPrefix((x.prefix(n),)), budget)
        depth = 1 + h[n]
        if s1 != UNBOUNDED:
            max_s1 = max(max_s1, int(s1))
        if depth > s1:
            violations.append({"root": x.prefix(n), "depth": depth, "s1": s1})
    return {"order_checked": other.order, "order_mismatches": mismatches,
            "depth_bound_violations": violations, "max_s1": max_s1,
            "depth_bound_ok": not violations}


def verify_separating(x: InfiniteWord, scheme: ColouringScheme, L: int = 12,
                      node_budget: int = 10**6, budget: int = 4096) -> SearchReport:
    """Try to certify that no factorisation into pieces of length <= L is
    monochromatic for ``scheme``.

    For explicitly eventually periodic words a cycle search runs first and a
    found witness is returned.  Otherwise every colour class is explored to
    exhaustion; for the separating colouring the depth of each root branch is
    checked against S_1 of its root piece.
    """
    budgets = {"compare_budget": budget, "node_budget": node_budget}
    if x.periodic_part is not None:
        try:
            rep = find_monochromatic(x, scheme, L)
        except PeriodicitySuspected as e:
            return SearchReport("inconclusive", piece_len_cap=L, reason="periodicity-suspected",
                                budgets=budgets, details=e.to_dict())
        if rep.outcome == "cycle-certified":
            rep.budgets = budgets
            return rep
    classes, certificate = [], {}
    total, deepest = 0, 0
    for c in range(scheme.colours):
        def accept(v, c=c):
            return scheme.colour(v) == c
        try:
            edges, complete = explore_positions(x, accept, L, node_budget)
        except PeriodicitySuspected as e:
            return SearchReport("inconclusive", colour_class=c, piece_len_cap=L,
                                nodes=total, reason="periodicity-suspected",
                                budgets=budgets, classes=classes, details=e.to_dict())
        total += len(edges)
        if not complete:
            classes.append({"colour": c, "outcome": "budget-exhausted", "nodes": len(edges)})
            return SearchReport("inconclusive", colour_class=c, piece_len_cap=L, nodes=total,
                                reason="budget-exhausted", budgets=budgets, classes=classes)
        h = heights(edges)
        entry = {"colour": c, "outcome": "refuted", "nodes": len(edges),
                 "max_depth": h[0], "refuted_at_root": not edges[0]}
        if isinstance(scheme, SeparatingPhi) and c in (0, 1):
            entry.update(_phi_class_checks(x, scheme, c, edges, h, budget))
        classes.append(entry)
        certificate[c] = edges
        deepest = max(deepest, h[0])
    return SearchReport("no-monochromatic", piece_len_cap=L, nodes=total, max_depth=deepest,
                        budgets=budgets, classes=classes, certificate=certificate)


def replay_refutation(x: InfiniteWord, scheme: ColouringScheme, report: SearchReport) -> bool:
    """Re-check a ``no-monochromatic`` certificate from scratch.

    Every recorded position must list exactly the piece lengths of its colour
    class, every successor must itself be recorded, and position 0 must be
    present: then the reachable set is finite and no infinite factorisation
    fits in it.
    """
    if report.outcome != "no-monochromatic":
        return False
    L = report.piece_len_cap
    for c in range(scheme.colours):
        edges = report.certificate.get(c)
        if edges is None or 0 not in edges:
            return False
        for pos, lens in edges.items():
            actual = [n for n in range(1, L + 1) if scheme.colour(x.factor(pos, n)) == c]
            if actual != lens:
                return False
            if any(pos + n not in edges for n in lens):
                return False
    return True


def _state_fn(x: InfiniteWord) -> Callable[[int], int]:
    part = x.periodic_part
    if part is None:
        raise ValueError("cycle search needs a periodic or eventually periodic word")
    pre, p = part
    return lambda q: q if q < pre else pre + (q - pre) % p


def find_cycle(x: InfiniteWord, accept: Accept, L: int) -> tuple[list[str], int, int] | None:
    """Reachable cycle in the state graph of an eventually periodic word.

    Returns ``(pieces, cycle_entry_index, states_expanded)`` or None when the
    reachable part of the graph is acyclic.  ``pieces[cycle_entry_index:]``
    leads from a state back to itself and can be repeated forever.
    """
    state = _state_fn(x)
    pre, p = x.periodic_part
    if pre == 0 and p <= L and accept(x.prefix(p)):
        return [x.prefix(p)], 0, 1
    done: set[int] = set()
    on_path = {0: 0}
    path: list[str] = []
    stack = [(0, iter(_accepted_lengths(x, 0, accept, L)))]
    expanded = 1
    while stack:
        s, it = stack[-1]
        n = next(it, None)
        if n is None:
            stack.pop()
            del on_path[s]
            done.add(s)
            if path:
                path.pop()
            continue
        piece = x.factor(s, n)
        t = state(s + n)
        if t in on_path:
            return path + [piece], on_path[t], expanded
        if t in done:
            continue
        path.append(piece)
        on_path[t] = len(path)
        stack.append((t, iter(_accepted_lengths(x, t, accept, L))))
        expanded += 1
    return None


def replay_cycle(x: InfiniteWord, pieces: list[str], entry: int, accept: Accept) -> bool:
    """Check alignment, the piece predicate and the state repetition of a cycle witness."""
    if not pieces or not 0 <= entry < len(pieces):
        return False
    joined = "".join(pieces)
    if x.prefix(len(joined)) != joined or not all(map(accept, pieces)):
        return False
    state = _state_fn(x)
    start = sum(map(len, pieces[:entry]))
    return len(joined) > start and state(start) == state(len(joined))


def find_monochromatic(x: InfiniteWord, scheme: ColouringScheme, L: int) -> SearchReport:
    """Monochromatic factorisation of an eventually periodic word, if one exists
    with pieces of length <= L; otherwise a (finite-graph) refutation."""
    expanded = 0
    pre, p = x.periodic_part
    order = list(range(scheme.colours))
    if pre == 0 and p <= L:
        # the block itself, repeated, is monochromatic whatever its colour
        first = scheme.colour(x.prefix(p))
        order.remove(first)
        order.insert(0, first)
    for c in order:
        def accept(v, c=c):
            return scheme.colour(v) == c
        found = find_cycle(x, accept, L)
        if found is not None:
            pieces, entry, n = found
            if not replay_cycle(x, pieces, entry, accept):
                raise AssertionError("cycle witness failed replay")
            return SearchReport("cycle-certified", colour_class=c, piece_len_cap=L,
                                nodes=expanded + n, witness_pieces=pieces,
                                cycle_entry_index=entry)
    return SearchReport("no-monochromatic", piece_len_cap=L, nodes=expanded,
                        details={"method": "state-graph"})


def iter_factorisations(x: InfiniteWord, accept: Accept, L: int,
                        max_depth: int) -> Iterator[FactorisationPrefix]:
    """Every nonempty factorisation prefix of depth <= max_depth with accepted pieces,
    shortest pieces first."""
    def walk(f: FactorisationPrefix):
        if len(f) >= max_depth:
            return
        pos = f.position
        for n in _accepted_lengths(x, pos, accept, L):
            g = f.extend(x.factor(pos, n))
            yield g
            yield from walk(g)
    yield from walk(FactorisationPrefix(()))


def check_L1(x: InfiniteWord, f: FactorisationPrefix, budget: int = 4096) -> bool:
    """Whether every product ``u_1...u_k`` of an all-0 factorisation prefix has colour 0.

    That the pieces themselves have colour 0 is left to the caller.
    """
    FactorisationPrefix.of(x, f.pieces)
    acc = ""
    for u in f.pieces:
        acc += u
        if phi(x, acc, "identity", budget) != 0:
            return False
    return True


def check_L2(x: InfiniteWord, f: FactorisationPrefix, budget: int = 4096) -> bool:
    """Whether S_k is non-increasing along an all-0 factorisation prefix."""
    FactorisationPrefix.of(x, f.pieces)
    prev = UNBOUNDED
    for k in range(1, len(f) + 1):
        cur = s_k(x, FactorisationPrefix(f.pieces[:k]), budget)
        if cur > prev:
            return False
        prev = cur
    return True

"""Bounded checks around prefixal factorisations, arithmetic progressions,
factorisations over finite piece sets and finite-products chains of prefixes.

Every check works on a finite window of the word and reports that window;
none of them claims anything about the infinite word beyond it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Literal

from .factorisation import (SearchReport, explore_positions, find_cycle, heights,
                            replay_cycle)
from .words import (Coded, EventuallyPeriodic, InfiniteWord, Order, Periodic, Unresolved,
                    smallest_period)


def is_lyndon(x: InfiniteWord, budget: int = 256,
              order: Literal["identity", "reversed"] = "identity") -> bool | None:
    """True if ``x`` is below each of its suffixes at shifts 1..budget, False on
    the first suffix below ``x``, None if some comparison stays unresolved."""
    if budget < 2:
        raise ValueError("budget must be >= 2")
    unresolved = False
    for k in range(1, budget + 1):
        c = x.compare_with_shift(k, budget)
        if isinstance(c, Unresolved):
            unresolved = True
            continue
        if order == "reversed":
            c = c.flipped()
        if c is Order.GREATER:
            return False
    return None if unresolved else True


def occurrences_count(u: str, a: int) -> int:
    return u.count(str(a))


@dataclass(frozen=True)
class RichnessWindow:
    horizon: int


@lru_cache(maxsize=256)
def _max_count(window: str, n: int, a: str) -> int:
    best = cur = window[:n].count(a)
    for i in range(n, len(window)):
        cur += (window[i] == a) - (window[i - n] == a)
        if cur > best:
            best = cur
    return best


def is_rich(x: InfiniteWord, u: str, a: int, window: RichnessWindow | int) -> bool:
    """Whether ``u`` has at least as many ``a`` as every factor of the same
    length in the prefix of length ``horizon``."""
    horizon = window.horizon if isinstance(window, RichnessWindow) else window
    if not u or len(u) > horizon:
        raise ValueError("need 1 <= |u| <= horizon")
    w = x.prefix(horizon)
    if u not in w:
        raise ValueError(f"{u} does not occur in the first {horizon} symbols")
    return u.count(str(a)) >= _max_count(w, len(u), str(a))


def prefixal_search(x: InfiniteWord, L: int, constraint: tuple | None = None,
                    node_budget: int = 10**5) -> SearchReport:
    """Look for a factorisation whose pieces are all prefixes of ``x`` (and
    rich in a letter when ``constraint == ("rich_in", a, horizon)``)."""
    if L < 1:
        raise ValueError("piece length cap must be >= 1")
    if constraint is None or constraint == "none":
        tag = "prefix"

        def accept(v):
            return x.prefix(len(v)) == v
    else:
        kind, a, horizon = constraint
        if kind != "rich_in":
            raise ValueError(f"unknown constraint {kind!r}")
        tag = f"prefix+rich_in:{a}"

        def accept(v):
            return x.prefix(len(v)) == v and len(v) <= horizon and is_rich(x, v, a, horizon)
    if x.periodic_part is not None:
        found = find_cycle(x, accept, L)
        if found is not None:
            pieces, entry, n = found
            assert replay_cycle(x, pieces, entry, accept)
            return SearchReport("cycle-certified", colour_class=tag, piece_len_cap=L,
                                nodes=n, witness_pieces=pieces, cycle_entry_index=entry)
    edges, complete = explore_positions(x, accept, L, node_budget)
    budgets = {"node_budget": node_budget}
    if not complete:
        return SearchReport("inconclusive", colour_class=tag, piece_len_cap=L,
                            nodes=len(edges), reason="budget-exhausted", budgets=budgets)
    h = heights(edges)
    return SearchReport("no-prefixal", colour_class=tag, piece_len_cap=L, nodes=len(edges),
                        max_depth=h[0], budgets=budgets, certificate={tag: edges})


def collapse(x: InfiniteWord, a: int) -> InfiniteWord:
    """Image of ``x`` under the letter map sending ``a`` to 1 and everything else to 0."""
    if not 0 <= a < x.sigma:
        raise ValueError(f"symbol {a} is outside the alphabet of size {x.sigma}")
    letters = tuple((str(b), "1" if b == a else "0") for b in range(x.sigma))
    table = str.maketrans(dict(letters))
    spec = x.spec
    if isinstance(spec, Periodic):
        return InfiniteWord(Periodic(spec.block.translate(table)), sigma=2)
    if isinstance(spec, EventuallyPeriodic):
        return InfiniteWord(EventuallyPeriodic(spec.preperiod.translate(table),
                                               spec.block.translate(table)), sigma=2)
    return InfiniteWord(Coded(spec, letters), sigma=2)


@dataclass(frozen=True)
class APDescription:
    """``{n : x_n = a}`` on a window: the positions in ``head`` (all below
    ``preperiod``) plus every n >= preperiod with ``n % period`` in ``residues``."""

    preperiod: int
    period: int
    residues: tuple[int, ...]
    head: tuple[int, ...] = ()
    window: int = 0

    def contains(self, n: int) -> bool:
        if n < self.preperiod:
            return n in self.head
        return n % self.period in self.residues

    def to_dict(self) -> dict:
        return {"preperiod": self.preperiod, "period": self.period,
                "residues": list(self.residues), "head": list(self.head),
                "window": self.window}


def ap_extract(x: InfiniteWord, a: int, budget: int = 300) -> APDescription | None:
    """Smallest preperiod, then smallest period (both <= budget/4), under which
    the occurrences of ``a`` in the first ``budget`` symbols are periodic."""
    if budget < 4:
        raise ValueError("budget must be >= 4")
    w = collapse(x, a).prefix(budget)
    cap = budget // 4
    for pre in range(cap + 1):
        p = smallest_period(w[pre:])
        if p <= cap:
            residues = sorted({n % p for n in range(pre, pre + p) if w[n] == "1"})
            head = tuple(n for n in range(pre) if w[n] == "1")
            return APDescription(pre, p, tuple(residues), head, budget)
    return None


def _dp_reach(x: InfiniteWord, pieces: list[str], horizon: int):
    maxlen = max(map(len, pieces))
    w = x.prefix(horizon + maxlen)
    back: dict[int, tuple[int, str]] = {0: (-1, "")}
    top = 0
    for p in range(horizon):
        if p not in back:
            continue
        for u in pieces:
            q = p + len(u)
            if q not in back and w.startswith(u, p):
                back[q] = (p, u)
                top = max(top, q)
    return back, top


def _walk_back(back: dict[int, tuple[int, str]], q: int) -> list[str]:
    out = []
    while q > 0:
        q, u = back[q]
        out.append(u)
    return out[::-1]


def membership(x: InfiniteWord, A: Iterable[str], horizon: int) -> SearchReport:
    """Can ``x`` be cut into pieces from ``A``?

    Eventually periodic words get an exact answer through the state graph
    when a cycle exists; otherwise a forward reachability pass over positions
    reports whether the first ``horizon`` symbols can be covered.
    """
    pieces = sorted(set(A), key=lambda u: (len(u), u))
    if not pieces or any(not u for u in pieces):
        raise ValueError("piece set must be nonempty and contain nonempty words")
    if horizon < max(map(len, pieces)):
        raise ValueError("horizon must be at least the longest piece")
    L = max(map(len, pieces))
    pset = set(pieces)
    if x.periodic_part is not None:
        found = find_cycle(x, pset.__contains__, L)
        if found is not None:
            ws, entry, n = found
            assert replay_cycle(x, ws, entry, pset.__contains__)
            return SearchReport("cycle-certified", piece_len_cap=L, nodes=n, witness_pieces=ws,
                                cycle_entry_index=entry, horizon=horizon)
    back, top = _dp_reach(x, pieces, horizon)
    if top >= horizon:
        return SearchReport("prefix-covered", horizon=horizon, nodes=len(back),
                            witness_pieces=_walk_back(back, top))
    return SearchReport("not-coverable", horizon=horizon, nodes=len(back), failure_position=top)


def replay_cover(x: InfiniteWord, A: Iterable[str], report: SearchReport) -> bool:
    pset = set(A)
    ws = report.witness_pieces or []
    joined = "".join(ws)
    return (all(u in pset for u in ws) and len(joined) >= report.horizon
            and x.prefix(len(joined)) == joined)


def _covered(rep: SearchReport) -> bool:
    return rep.outcome in ("prefix-covered", "cycle-certified")


@dataclass
class CoverageReport:
    """Per-piece-set membership results plus a periodicity prediction."""

    rows: list[tuple[tuple[str, ...], SearchReport]]
    horizon: int
    period_evidence: int | None
    extra: dict = field(default_factory=dict)

    @property
    def all_covered(self) -> bool:
        return all(_covered(r) for _, r in self.rows)

    @property
    def failing(self) -> list[tuple[str, ...]]:
        return [s for s, r in self.rows if not _covered(r)]

    def to_dict(self) -> dict:
        return {
            "outcome": "all-covered" if self.all_covered else "some-not-coverable",
            "horizon": self.horizon,
            "rows": [{"pieces": list(s), **r.to_dict()} for s, r in self.rows],
            "failing": [list(s) for s in self.failing],
            "prediction": "periodic" if self.all_covered else None,
            "period_evidence": self.period_evidence,
            **self.extra,
        }


def subset_factor_check(x: InfiniteWord, B: Iterable[str], k: int, horizon: int) -> CoverageReport:
    """Membership over every k-element subset of B (|B| >= 2k - 1).

    If all of them cover the window, periodicity is predicted and the smallest
    period on the window is attached as evidence.
    """
    B = sorted(set(B), key=lambda u: (len(u), u))
    if k < 1 or len(B) < 2 * k - 1:
        raise ValueError("need k >= 1 and |B| >= 2k - 1")
    rows = [(sub, membership(x, sub, horizon)) for sub in combinations(B, k)]
    return CoverageReport(rows, horizon, x.detect_period(horizon), {"k": k})


def cyclic_chain_check(x: InfiniteWord, us: list[str], horizon: int) -> CoverageReport:
    """Membership over the cyclic pairs {u_i, u_(i+1)} of an odd-length list."""
    if len(us) < 3 or len(us) % 2 == 0:
        raise ValueError("need an odd number (>= 3) of words")
    pairs = [(us[i], us[(i + 1) % len(us)]) for i in range(len(us))]
    rows = [(pair, membership(x, pair, horizon)) for pair in pairs]
    return CoverageReport(rows, horizon, x.detect_period(horizon))


@dataclass(frozen=True)
class IPChain:
    words: tuple[str, ...]
    reached_max: bool

    @property
    def m(self) -> int:
        return len(self.words)

    def to_dict(self) -> dict:
        return {"chain": list(self.words), "length": self.m, "reached_max": self.reached_max}


def finite_products(words) -> Iterable[str]:
    """All products over nonempty index sets, concatenated in increasing index order."""
    m = len(words)
    for mask in range(1, 1 << m):
        yield "".join(words[i] for i in range(m) if mask >> i & 1)


def validate_ip_chain(x: InfiniteWord, words) -> bool:
    return all(x.prefix(len(p)) == p for p in finite_products(words))


def ip_chain(x: InfiniteWord, m_max: int, len_cap: int) -> IPChain:
    """Depth-first search for prefixes s_1, ..., s_m (|s_i| <= len_cap) whose
    finite products are all prefixes of ``x``; returns the first chain of
    length ``m_max`` or the longest one seen."""
    if m_max < 1 or len_cap < 1:
        raise ValueError("need m_max >= 1 and len_cap >= 1")
    cands = [x.prefix(n) for n in range(1, len_cap + 1)]
    best: list[str] = []

    def is_prefix(w):
        return x.prefix(len(w)) == w

    def grow(chain: list[str], products: list[str]) -> bool:
        nonlocal best
        if len(chain) > len(best):
            best = list(chain)
        if len(chain) == m_max:
            return True
        for s in cands:
            new = []
            for p in products:
                if not is_prefix(p + s):
                    break
                new.append(p + s)
            else:
                if grow(chain + [s], products + new):
                    return True
        return False

    # products includes the empty product so that s itself is tested too
    grow([], [""])
    return IPChain(tuple(best), len(best) == m_max)


def self_return(x: InfiniteWord, budget: int) -> str | None:
    """Shortest prefix ``s`` with ``x[i] == x[i + |s|]`` across the window."""
    p = x.detect_period(budget)
    return None if p is None else x.prefix(p)

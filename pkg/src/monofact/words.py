"""Infinite words described by finite generators.

Finite words are plain strings of decimal digits; symbol ``k`` is the
character ``str(k)`` and the alphabet order is ascending numeric order,
which coincides with ordinary string comparison on equal-length words.
An :class:`InfiniteWord` wraps a :data:`WordSpec` and memoizes a growing
prefix buffer, so every query below is answered from that buffer.
"""
from __future__ import annotations

import enum
import re
import threading
from dataclasses import dataclass
from typing import Mapping, Union

import numpy as np

MAX_SIGMA = 10


class WordSpecError(ValueError):
    """Raised for malformed or ill-defined word specifications."""


class LengthMismatch(ValueError):
    pass


class Order(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    def flipped(self) -> Order:
        return Order(-self.value)


@dataclass(frozen=True)
class Unresolved:
    """A bounded comparison that saw ``examined`` equal positions and gave up."""

    examined: int


def _check_word(w: str, what: str) -> None:
    if not all(c.isdigit() for c in w):
        raise WordSpecError(f"{what} must consist of decimal digits, got {w!r}")


@dataclass(frozen=True)
class Periodic:
    block: str

    def __post_init__(self):
        _check_word(self.block, "block")
        if not self.block:
            raise WordSpecError("periodic block must be nonempty")

    @property
    def preperiod(self) -> str:
        return ""


@dataclass(frozen=True)
class EventuallyPeriodic:
    preperiod: str
    block: str

    def __post_init__(self):
        _check_word(self.preperiod, "preperiod")
        _check_word(self.block, "block")
        if not self.block:
            raise WordSpecError("periodic block must be nonempty")


@dataclass(frozen=True)
class Morphic:
    """Fixed point of a prolongable morphism starting at ``seed``.

    ``rules`` maps a one-digit symbol to its (nonempty) image.
    """

    rules: tuple[tuple[str, str], ...]
    seed: str

    def __post_init__(self):
        rules = dict(self.rules)
        if len(rules) != len(self.rules):
            raise WordSpecError("duplicate rule for a symbol")
        for s, img in rules.items():
            if len(s) != 1 or not s.isdigit():
                raise WordSpecError(f"rule source must be one digit, got {s!r}")
            _check_word(img, "rule image")
            if not img:
                raise WordSpecError(f"image of {s} is empty")
        if self.seed not in rules:
            raise WordSpecError(f"no rule for seed {self.seed!r}")
        first = rules[self.seed]
        if not first.startswith(self.seed) or len(first) < 2:
            raise WordSpecError(
                f"seed {self.seed} is not prolongable: image {first!r} must start "
                "with the seed and have length >= 2")
        todo, reached = [self.seed], {self.seed}
        while todo:
            for c in rules[todo.pop()]:
                if c not in rules:
                    raise WordSpecError(f"symbol {c} is reachable but has no rule")
                if c not in reached:
                    reached.add(c)
                    todo.append(c)

    @classmethod
    def from_mapping(cls, rules: Mapping[str, str], seed: str) -> Morphic:
        return cls(tuple(sorted(rules.items())), seed)

    @property
    def mapping(self) -> dict[str, str]:
        return dict(self.rules)


@dataclass(frozen=True)
class Coded:
    """Letter-to-letter image of another word (e.g. collapsing onto {0,1})."""

    base: "WordSpec"
    letters: tuple[tuple[str, str], ...]


WordSpec = Union[Periodic, EventuallyPeriodic, Morphic, Coded]

THUE_MORSE = Morphic.from_mapping({"0": "01", "1": "10"}, "0")
FIBONACCI = Morphic.from_mapping({"0": "01", "1": "0"}, "0")

_ALIASES = {"thue-morse": THUE_MORSE, "tm": THUE_MORSE, "fibonacci": FIBONACCI, "fib": FIBONACCI}
_RULE = re.compile(r"^(\d)->(\d+)$")


def parse_word_spec(text: str) -> WordSpec:
    """Parse ``periodic:<block>``, ``eventual:<pre>|<block>`` or
    ``morphic:<s>-><img>,...;seed=<s>`` (plus the aliases ``tm`` and ``fib``)."""
    text = text.strip()
    if text in _ALIASES:
        return _ALIASES[text]
    kind, sep, body = text.partition(":")
    if not sep:
        raise WordSpecError(f"missing '<kind>:' in word spec {text!r}")
    if kind == "periodic":
        return Periodic(body)
    if kind == "eventual":
        pre, bar, block = body.partition("|")
        if not bar:
            raise WordSpecError("eventual spec needs '<pre>|<block>'")
        return EventuallyPeriodic(pre, block)
    if kind == "morphic":
        rules_part, semi, seed_part = body.partition(";")
        if not semi or not seed_part.startswith("seed="):
            raise WordSpecError("morphic spec needs ';seed=<s>'")
        rules = {}
        for item in rules_part.split(","):
            m = _RULE.match(item.strip())
            if not m:
                raise WordSpecError(f"bad rule {item!r}")
            if m.group(1) in rules:
                raise WordSpecError(f"duplicate rule for {m.group(1)}")
            rules[m.group(1)] = m.group(2)
        return Morphic.from_mapping(rules, seed_part[len("seed="):])
    raise WordSpecError(f"unknown word kind {kind!r}")


def format_word_spec(spec: WordSpec) -> str:
    if isinstance(spec, Periodic):
        return f"periodic:{spec.block}"
    if isinstance(spec, EventuallyPeriodic):
        return f"eventual:{spec.preperiod}|{spec.block}"
    if isinstance(spec, Morphic):
        rules = ",".join(f"{s}->{img}" for s, img in spec.rules)
        return f"morphic:{rules};seed={spec.seed}"
    letters = ",".join(f"{a}->{b}" for a, b in spec.letters)
    return f"coded[{letters}]({format_word_spec(spec.base)})"


def _spec_symbols(spec: WordSpec) -> set[str]:
    if isinstance(spec, (Periodic, EventuallyPeriodic)):
        return set(spec.preperiod + spec.block)
    if isinstance(spec, Morphic):
        out = set()
        for s, img in spec.rules:
            out.add(s)
            out.update(img)
        return out
    table = dict(spec.letters)
    return {table.get(c, c) for c in _spec_symbols(spec.base)}


class InfiniteWord:
    """A right-infinite word with a memoized, monotonically growing prefix."""

    def __init__(self, spec: WordSpec | str, sigma: int | None = None):
        if isinstance(spec, str):
            spec = parse_word_spec(spec)
        self.spec = spec
        self.sigma = max(int(c) for c in _spec_symbols(spec)) + 1
        if sigma is not None:
            if sigma < self.sigma or sigma > MAX_SIGMA:
                raise WordSpecError(f"alphabet size {sigma} does not fit the word's symbols")
            self.sigma = sigma
        self._buf = ""
        self._lock = threading.Lock()
        self._lcp_cache: dict[int, int | Unresolved] = {}
        if isinstance(spec, Morphic):
            self._rules = spec.mapping
            self._buf = self._rules[spec.seed]
            self._expanded = 1
        elif isinstance(spec, Coded):
            self._base = InfiniteWord(spec.base)
            self._table = str.maketrans(dict(spec.letters))

    def __repr__(self):
        return f"InfiniteWord({format_word_spec(self.spec)!r})"

    @property
    def periodic_part(self) -> tuple[int, int] | None:
        """``(preperiod length, period)`` when the spec is explicitly eventually periodic."""
        if isinstance(self.spec, (Periodic, EventuallyPeriodic)):
            return len(self.spec.preperiod), len(self.spec.block)
        return None

    def _generate(self, n: int) -> str:
        spec = self.spec
        if isinstance(spec, (Periodic, EventuallyPeriodic)):
            pre, block = spec.preperiod, spec.block
            if n <= len(pre):
                return pre[:n]
            reps = (n - len(pre)) // len(block) + 1
            return (pre + block * reps)[:n]
        if isinstance(spec, Morphic):
            # invariant: buf == image of buf[:expanded], which is a prefix of the fixed point
            chunks = [self._buf]
            size, j = len(self._buf), self._expanded
            buf = self._buf
            while size < n:
                if j >= len(buf):
                    buf = "".join(chunks)
                    chunks = [buf]
                img = self._rules[buf[j]]
                chunks.append(img)
                size += len(img)
                j += 1
            self._expanded = j
            return "".join(chunks)
        return self._base.prefix(n).translate(self._table)

    def _ensure(self, n: int) -> str:
        buf = self._buf
        if len(buf) >= n:
            return buf
        with self._lock:
            if len(self._buf) < n:
                self._buf = self._generate(max(n, 2 * len(self._buf), 64))
            return self._buf

    def symbol_at(self, i: int) -> int:
        if i < 0:
            raise IndexError("position must be non-negative")
        return int(self._ensure(i + 1)[i])

    def prefix(self, n: int) -> str:
        if n < 0:
            raise ValueError("prefix length must be non-negative")
        return self._ensure(n)[:n]

    def factor(self, start: int, length: int) -> str:
        return self._ensure(start + length)[start:start + length]

    def lcp_with_shift(self, k: int, budget: int) -> int | Unresolved:
        """Length of the common prefix of the word and its suffix starting at ``k``.

        Scans at most ``budget`` positions; a resolved value is cached per shift.
        """
        if k < 1 or budget < 1:
            raise ValueError("need shift >= 1 and budget >= 1")
        cached = self._lcp_cache.get(k)
        if isinstance(cached, int):
            return cached if cached < budget else Unresolved(budget)
        if isinstance(cached, Unresolved) and cached.examined >= budget:
            return Unresolved(budget)
        start, step = 0, 32
        while start < budget:
            end = min(budget, start + step)
            buf = self._ensure(k + end)
            a, b = buf[start:end], buf[k + start:k + end]
            if a != b:
                i = start + next(t for t, (p, q) in enumerate(zip(a, b)) if p != q)
                self._lcp_cache[k] = i
                return i
            start, step = end, step * 2
        self._lcp_cache[k] = Unresolved(budget)
        return Unresolved(budget)

    def compare_with_shift(self, k: int, budget: int) -> Order | Unresolved:
        """Order of the word against its suffix starting at ``k`` (LESS: word < suffix)."""
        m = self.lcp_with_shift(k, budget)
        if isinstance(m, Unresolved):
            return m
        buf = self._ensure(k + m + 1)
        return Order.LESS if buf[m] < buf[k + m] else Order.GREATER

    def detect_period(self, budget: int) -> int | None:
        return detect_period(self, budget)


def compare_finite(u: str, v: str) -> Order:
    if len(u) != len(v):
        raise LengthMismatch(f"cannot compare words of lengths {len(u)} and {len(v)}")
    if u == v:
        return Order.EQUAL
    return Order.LESS if u < v else Order.GREATER


def smallest_period(w: str) -> int:
    """Smallest period of a finite nonempty word (KMP failure function)."""
    n = len(w)
    fail = [0] * (n + 1)
    fail[0] = -1
    k = -1
    for i in range(n):
        while k >= 0 and w[k] != w[i]:
            k = fail[k]
        k += 1
        fail[i + 1] = k
    return n - fail[n]


def detect_period(x: InfiniteWord, budget: int) -> int | None:
    """Least p <= budget/2 that is a period of the first ``budget`` symbols.

    A hit is evidence of periodicity inside the window, nothing more.
    """
    if budget < 2:
        raise ValueError("budget must be >= 2")
    p = smallest_period(x.prefix(budget))
    return p if p <= budget // 2 else None


def find_overlap(w: str) -> tuple[int, int] | None:
    """Locate a factor ``uuu'`` (u' a nonempty prefix of u) in ``w``.

    Returns ``(start, |u|)`` of the leftmost shortest-period occurrence, or None.
    Such a factor is exactly a window of length 2p+1 with period p, i.e. p+1
    consecutive positions i with w[i] == w[i+p].
    """
    a = np.frombuffer(w.encode(), dtype=np.uint8)
    n = len(a)
    for p in range(1, (n - 1) // 2 + 1):
        eq = np.concatenate(([0], (a[:-p] == a[p:]).astype(np.int32), [0]))
        edges = np.flatnonzero(np.diff(eq))
        starts, stops = edges[::2], edges[1::2]
        long = np.flatnonzero(stops - starts >= p + 1)
        if long.size:
            return int(starts[long[0]]), p
    return None

"""Total colourings of nonempty finite words.

Three schemes are provided: the separating 2-colouring built from the
lexicographic position of a piece relative to the prefix of ``x`` (and,
for a piece equal to that prefix, the order of ``x`` against the suffix
following it), the prefix/last-letter 3-colouring for Thue-Morse, and
finite lookup tables with a default colour.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal, Mapping, Union

from .words import InfiniteWord, Order, Unresolved, compare_finite

DEFAULT_COMPARE_BUDGET = 4096

OrderName = Literal["identity", "reversed"]


class PeriodicitySuspected(Exception):
    """The equal-prefix comparison did not resolve within the budget."""

    def __init__(self, shift: int, examined: int):
        super().__init__(f"suffix at shift {shift} agrees with x on {examined} symbols")
        self.shift = shift
        self.examined = examined

    def to_dict(self) -> dict:
        return {"outcome": "periodicity-suspected", "shift": self.shift,
                "examined": self.examined}


def phi(x: InfiniteWord, u: str, order: OrderName = "identity",
        budget: int = DEFAULT_COMPARE_BUDGET) -> int:
    """Colour 0 if ``u`` sorts before the prefix of ``x`` of the same length,
    1 if after; on a tie the order of ``x`` against ``x`` shifted by ``|u|``
    decides.
    """
    if not u:
        raise ValueError("phi is defined on nonempty words only")
    if order not in ("identity", "reversed"):
        raise ValueError(f"unknown order {order!r}")
    c = compare_finite(u, x.prefix(len(u)))
    if c is Order.EQUAL:
        c = x.compare_with_shift(len(u), budget)
        if isinstance(c, Unresolved):
            raise PeriodicitySuspected(len(u), c.examined)
    if order == "reversed":
        c = c.flipped()
    return 0 if c is Order.LESS else 1


def tm3(x: InfiniteWord, u: str) -> int:
    if not u:
        raise ValueError("tm3 is defined on nonempty words only")
    if x.prefix(len(u)) == u:
        return int(u[-1])
    return 2


@dataclass(frozen=True)
class SeparatingPhi:
    x: InfiniteWord
    order: OrderName = "identity"
    budget: int = DEFAULT_COMPARE_BUDGET
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    colours = 2

    @property
    def name(self) -> str:
        return "phi" if self.order == "identity" else "phi-rev"

    def colour(self, u: str) -> int:
        try:
            return self._cache[u]
        except KeyError:
            c = self._cache[u] = phi(self.x, u, self.order, self.budget)
            return c

    def reversed(self) -> SeparatingPhi:
        other = "reversed" if self.order == "identity" else "identity"
        return SeparatingPhi(self.x, other, self.budget)


@dataclass(frozen=True)
class ThueMorsePrefix3:
    x: InfiniteWord

    colours = 3
    name = "tm3"

    def __post_init__(self):
        if self.x.sigma > 2:
            raise ValueError("the prefix/last-letter colouring needs a binary word")

    def colour(self, u: str) -> int:
        return tm3(self.x, u)


@dataclass(frozen=True)
class Table:
    entries: Mapping[str, int]
    default: int = 0

    name = "table"

    def __post_init__(self):
        if self.default < 0 or any(c < 0 for c in self.entries.values()):
            raise ValueError("colour ids must be non-negative")
        if any(not w for w in self.entries):
            raise ValueError("table keys must be nonempty words")

    @property
    def colours(self) -> int:
        return max([self.default, *self.entries.values()]) + 1

    def colour(self, u: str) -> int:
        if not u:
            raise ValueError("colourings are defined on nonempty words only")
        return self.entries.get(u, self.default)

    def dumps(self) -> str:
        lines = [f"default {self.default}"]
        lines += [f"{w} {c}" for w, c in sorted(self.entries.items(), key=lambda t: (len(t[0]), t[0]))]
        return "\n".join(lines) + "\n"


ColouringScheme = Union[SeparatingPhi, ThueMorsePrefix3, Table]


def colour(scheme: ColouringScheme, u: str) -> int:
    return scheme.colour(u)


def parse_table(text: str) -> Table:
    """Read the ``<word> <colour-id>`` format with a ``default <id>`` header."""
    default = None
    entries: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not parts[1].isdigit():
            raise ValueError(f"line {lineno}: expected '<word> <colour-id>', got {raw!r}")
        key, cid = parts[0], int(parts[1])
        if key == "default":
            if default is not None:
                raise ValueError(f"line {lineno}: duplicate default")
            default = cid
        elif not key.isdigit():
            raise ValueError(f"line {lineno}: word {key!r} is not a digit string")
        elif key in entries:
            raise ValueError(f"line {lineno}: duplicate entry for {key}")
        else:
            entries[key] = cid
    if default is None:
        raise ValueError("table colouring needs a 'default <colour-id>' line")
    return Table(entries, default)


def load_table(path: str | Path) -> Table:
    return parse_table(Path(path).read_text())


def make_scheme(selector: str, x: InfiniteWord,
                budget: int = DEFAULT_COMPARE_BUDGET) -> ColouringScheme:
    """Build a scheme from ``phi``, ``phi-rev``, ``tm3`` or ``table:<path>``."""
    if selector == "phi":
        return SeparatingPhi(x, "identity", budget)
    if selector == "phi-rev":
        return SeparatingPhi(x, "reversed", budget)
    if selector == "tm3":
        return ThueMorsePrefix3(x)
    if selector.startswith("table:"):
        return load_table(selector[len("table:"):])
    raise ValueError(f"unknown colouring scheme {selector!r}")

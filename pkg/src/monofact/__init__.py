"""Separating colourings and monochromatic factorisations of infinite words."""
from .words import (FIBONACCI, THUE_MORSE, Coded, EventuallyPeriodic, InfiniteWord, Morphic,
                    Order, Periodic, Unresolved, compare_finite, detect_period, parse_word_spec)
from .colouring import (PeriodicitySuspected, SeparatingPhi, Table, ThueMorsePrefix3, colour,
                        phi, tm3)
from .factorisation import (UNBOUNDED, FactorisationPrefix, SearchReport, check_L1, check_L2,
                            find_monochromatic, s_k, verify_separating)

__all__ = [
    "FIBONACCI", "THUE_MORSE", "Coded", "EventuallyPeriodic", "InfiniteWord", "Morphic",
    "Order", "Periodic", "Unresolved", "compare_finite", "detect_period", "parse_word_spec",
    "PeriodicitySuspected", "SeparatingPhi", "Table", "ThueMorsePrefix3", "colour", "phi", "tm3",
    "UNBOUNDED", "FactorisationPrefix", "SearchReport", "check_L1", "check_L2",
    "find_monochromatic", "s_k", "verify_separating",
]

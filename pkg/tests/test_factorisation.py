import random

import pytest

import oracles
from monofact.colouring import PeriodicitySuspected, SeparatingPhi, Table, ThueMorsePrefix3, phi
from monofact.factorisation import (UNBOUNDED, FactorisationPrefix, InvalidFactorisation,
                                    check_L1, check_L2, explore_positions, extend_candidates,
                                    find_cycle, find_monochromatic, iter_factorisations,
                                    replay_cycle, replay_refutation, s_k, verify_separating)
from monofact.words import EventuallyPeriodic, InfiniteWord, Periodic


def test_factorisation_prefix_validation(tm):
    f = FactorisationPrefix.of(tm, ["011", "0"])
    assert f.position == 4 and len(f) == 2
    with pytest.raises(InvalidFactorisation):
        FactorisationPrefix.of(tm, ["00"])
    with pytest.raises(InvalidFactorisation):
        FactorisationPrefix.of(tm, ["0", ""])


def test_s_k(tm):
    assert s_k(tm, FactorisationPrefix.of(tm, ["0"]), 64) == 1
    assert s_k(tm, FactorisationPrefix.of(tm, ["011"]), 64) == 5
    per = InfiniteWord(Periodic("01"))
    assert s_k(per, FactorisationPrefix.of(per, ["01"]), 64) is UNBOUNDED
    assert s_k(tm, FactorisationPrefix(()), 64) is UNBOUNDED


def test_extend_candidates(tm):
    assert extend_candidates(tm, 1, SeparatingPhi(tm), 0, 4) == []
    assert extend_candidates(tm, 0, ThueMorsePrefix3(tm), 2, 4) == []
    per = InfiniteWord(Periodic("01"))
    assert extend_candidates(per, 0, Table({"01": 1}), 1, 2) == ["01"]
    assert extend_candidates(tm, 0, ThueMorsePrefix3(tm), 0, 4) == ["0", "0110"]


def test_verify_phi_thue_morse(tm):
    rep = verify_separating(tm, SeparatingPhi(tm, budget=4096), 12, 10**6, 4096)
    assert rep.outcome == "no-monochromatic"
    assert all(c["depth_bound_ok"] and c["order_mismatches"] == 0 for c in rep.classes)
    assert replay_refutation(tm, SeparatingPhi(tm), rep)


def test_verify_tm3(tm):
    scheme = ThueMorsePrefix3(tm)
    rep = verify_separating(tm, scheme, 16, 10**6, 4096)
    assert rep.outcome == "no-monochromatic"
    assert [c["refuted_at_root"] for c in rep.classes] == [False, False, True]
    assert replay_refutation(tm, scheme, rep)


def test_replay_detects_tampering(tm):
    scheme = ThueMorsePrefix3(tm)
    rep = verify_separating(tm, scheme, 16)
    rep.certificate[0] = {0: rep.certificate[0][0]}
    assert not replay_refutation(tm, scheme, rep)


def test_verify_periodic_table_is_witness():
    x = InfiniteWord(Periodic("01"))
    rep = verify_separating(x, Table({"01": 1}), 2, 10**6, 64)
    assert rep.outcome != "no-monochromatic"
    assert rep.outcome == "cycle-certified"


def test_verify_periodic_phi_inconclusive():
    x = InfiniteWord(Periodic("01"))
    rep = verify_separating(x, SeparatingPhi(x, budget=64), 4, 1000, 64)
    assert rep.outcome == "inconclusive" and rep.reason == "periodicity-suspected"


def test_verify_budget_exhaustion():
    # the Coded wrapper hides periodicity, so only the node budget can stop the search
    from monofact.words import Coded
    x = InfiniteWord(Coded(Periodic("01"), (("0", "0"), ("1", "1"))))
    rep = verify_separating(x, Table({}, 0), 2, 50, 64)
    assert rep.outcome == "inconclusive" and rep.reason == "budget-exhausted"


def test_duality(tm, fib):
    for x in (tm, fib):
        ident, rev = SeparatingPhi(x), SeparatingPhi(x, "reversed")
        for L in (4, 8, 12):
            e1, _ = explore_positions(x, lambda v: ident.colour(v) == 1, L, 10**5)
            e0, _ = explore_positions(x, lambda v: rev.colour(v) == 0, L, 10**5)
            assert e1 == e0


def test_find_monochromatic_examples():
    x = InfiniteWord(Periodic("01"))
    for scheme in (Table({"0": 1}), Table({"01": 1, "1": 2}), Table({}, 3)):
        rep = find_monochromatic(x, scheme, 2)
        assert rep.outcome == "cycle-certified" and rep.witness_pieces == ["01"]

    y = InfiniteWord(Periodic("011"))
    table = Table({"0": 0, "1": 0, "01": 1}, 0)
    rep = find_monochromatic(y, table, 3)
    assert rep.outcome == "cycle-certified" and rep.colour_class == 0
    assert replay_cycle(y, rep.witness_pieces, rep.cycle_entry_index,
                        lambda v: table.colour(v) == 0)

    z = InfiniteWord(EventuallyPeriodic("0", "1"))
    rep = find_monochromatic(z, Table({}, 0), 1)
    assert rep.witness_pieces == ["0", "1"] and rep.cycle_entry_index == 1


def test_find_cycle_enumerated_state_graph():
    # colour-0 pieces of (011)^w when 0, 01 and 011 are forced to colour 1
    y = InfiniteWord(Periodic("011"))
    table = Table({"0": 1, "01": 1, "011": 1}, 0)
    rep = find_monochromatic(y, table, 3)
    # colour 0 has no piece at state 0, colour 1 cycles on [011]
    assert rep.colour_class == 1 and rep.witness_pieces == ["011"]
    assert find_cycle(y, lambda v: table.colour(v) == 0, 3) is None


def test_find_monochromatic_refutes_on_acyclic_graph():
    x = InfiniteWord(EventuallyPeriodic("0", "1"))
    # only '0' is coloured 1, every other word 0; L=1: colour 0 needs '0' at state 0 -> dead,
    # colour 1 needs '1' to be colour 1 -> dead after first piece
    rep = find_monochromatic(x, Table({"0": 1}, 0), 1)
    assert rep.outcome == "no-monochromatic"


def test_replay_cycle_rejects_bad_witness():
    x = InfiniteWord(Periodic("011"))
    ok = lambda v: True  # noqa: E731
    assert replay_cycle(x, ["011"], 0, ok)
    assert not replay_cycle(x, ["01"], 0, ok)
    assert not replay_cycle(x, ["010"], 0, ok)
    assert not replay_cycle(x, [], 0, ok)


def test_check_lemmas_examples(tm):
    assert check_L1(tm, FactorisationPrefix.of(tm, ["0"]), 4096)
    assert check_L2(tm, FactorisationPrefix.of(tm, ["0"]), 4096)
    assert check_L2(tm, FactorisationPrefix.of(tm, ["011"]), 4096)
    with pytest.raises(InvalidFactorisation):
        check_L1(tm, FactorisationPrefix(("00",)), 4096)
    # 011 has colour 1, so L1 fails on the first product; S_1 <= S_0 holds regardless
    assert not check_L1(tm, FactorisationPrefix.of(tm, ["011"]), 4096)


@pytest.mark.parametrize("name", ["tm", "fib", "eventual:0|1",
                                  "morphic:0->012,1->02,2->1;seed=0"])
def test_lemma_properties(name):
    x = InfiniteWord(name)
    scheme = SeparatingPhi(x)
    nodes = list(iter_factorisations(x, lambda v: scheme.colour(v) == 0, 8, 5))
    assert nodes
    for f in nodes:
        assert check_L1(x, f) and check_L2(x, f)
        assert len(f) <= s_k(x, FactorisationPrefix(f.pieces[:1]), 4096)


def test_lemma_properties_brute_force_tree(fib):
    # enumerate all-0 prefixes directly from the definition of the colouring
    w = oracles.long_prefix({"0": "01", "1": "0"}, "0", 20000)
    count = 0

    def rec(pieces, pos):
        nonlocal count
        if len(pieces) == 3:
            return
        for n in range(1, 9):
            u = w[pos:pos + n]
            if oracles.phi(w, u) == 0:
                f = FactorisationPrefix.of(fib, pieces + [u])
                count += 1
                assert check_L1(fib, f) and check_L2(fib, f)
                rec(pieces + [u], pos + n)

    rec([], 0)
    assert count == len(list(iter_factorisations(fib, lambda v: phi(fib, v) == 0, 8, 3)))


def test_random_tables_on_periodic_word():
    rng = random.Random(7)
    x = InfiniteWord(Periodic("0110"))
    words = list(oracles.binary_words(5))
    for _ in range(30):
        table = Table({w: rng.randrange(3) for w in words}, rng.randrange(3))
        rep = find_monochromatic(x, table, 5)
        assert rep.outcome == "cycle-certified"
        c = rep.colour_class
        assert {table.colour(u) for u in rep.witness_pieces} == {c}


def test_report_json_stable(tm):
    a = verify_separating(tm, ThueMorsePrefix3(tm), 8).to_json()
    b = verify_separating(InfiniteWord("tm"), ThueMorsePrefix3(InfiniteWord("tm")), 8).to_json()
    assert a == b
    assert '"certificate"' not in a


def test_phi_periodic_suspected_in_find(tm):
    with pytest.raises(PeriodicitySuspected):
        find_monochromatic(InfiniteWord(Periodic("01")), SeparatingPhi(InfiniteWord("periodic:01"),
                                                                      budget=16), 2)

#!/usr/bin/env python3
"""
diskernel - Game Engine Tests

Run with:
    pytest tests/test_games.py -v
"""

import random

import pytest

from diskernel.baire_core import EMPTY, cantor_pair, compatible, interleave_words, word_code, word_stream
from diskernel.games import (
    GameVerdict,
    Player,
    Run,
    StrategySideError,
    WadgeStrategy,
    adjudicate_prefixes,
    adjudicate_run,
    disc_to_strategy_I,
    gs_payoff_from_problem,
    history_digits,
    lipschitz_to_wadge,
    realizer_to_strategy_II,
    run_gale_stewart,
    run_lipschitz,
    run_records,
    run_wadge,
    strategy_I_to_disc,
    strategy_II_to_realizer,
    wadge_to_lipschitz,
)
from diskernel.phi_machine import ConstWord, Identity, Prepend, check_monotone_on, universal_word
from diskernel.problems import (
    DIS_ORACLE,
    LPO_ORACLE,
    ProblemBundle,
    ProblemOracle,
    Verdict,
    catalog,
    dis_discontinuity,
    find_counterexample,
    id_problem,
    word_lift,
)
from diskernel.strategies import (
    constant,
    echo,
    lipschitz_constant,
    lipschitz_echo,
    lipschitz_random,
    random_strategy,
    sample_history,
    stall,
)

DEPTH = 16


def first_digit_dom(u):
    """Domain: points starting with 1."""
    if not u:
        return Verdict.UNKNOWN
    return Verdict.ACCEPT if u[0] == 1 else Verdict.REJECT


class TestWadgeEngine:
    """Test suite for run_wadge"""

    def test_constant_against_echo(self):
        """I plays (1) every round, II echoes"""
        run = run_wadge(constant((1,), Player.I), echo(Player.II), 3)
        assert run.x == (1, 1, 1)
        assert run.y == (1, 1, 1)
        assert len(run.x_moves) == len(run.y_moves) == 3

    def test_stalling_player(self):
        run = run_wadge(constant((2,), Player.I), stall(Player.II), 4)
        assert run.y == EMPTY
        assert run.y_moves == [EMPTY] * 4

    def test_visibility(self):
        """II sees I's current move, I only II's earlier moves"""
        seen = {"I": [], "II": []}

        def spy(side):
            def move(history):
                seen[side.value].append(len(history))
                return (0,)
            return WadgeStrategy(side, move, "spy")

        run_wadge(spy(Player.I), spy(Player.II), 3)
        assert seen["I"] == [0, 1, 2]
        assert seen["II"] == [1, 2, 3]

    def test_wrong_sides(self):
        with pytest.raises(StrategySideError):
            run_wadge(echo(Player.II), echo(Player.II), 1)
        with pytest.raises(StrategySideError):
            run_lipschitz(lipschitz_echo(Player.I), lipschitz_echo(Player.I), 1)

    def test_truncated(self):
        run = run_wadge(constant((1, 2), Player.I), echo(Player.II), 3)
        assert run.truncated(1).x == (1, 2)


class TestAdjudication:
    """Test suite for adjudicate_run"""

    def test_identity_deviation(self):
        run = run_wadge(constant((1,), Player.I), constant((2,), Player.II), 3)
        assert adjudicate_run(run, id_problem().oracle, DEPTH) is GameVerdict.I

    def test_identity_echo_unknown(self):
        run = run_wadge(constant((1,), Player.I), echo(Player.II), 3)
        assert adjudicate_run(run, id_problem().oracle, DEPTH) is GameVerdict.UNKNOWN_AT_DEPTH

    def test_stalled_i_never_wins(self):
        """x = (1) then ε against y = (2) on id: x is finite, so no win for I"""
        run = Run([(1,), EMPTY], [(2,), EMPTY])
        assert run.i_stalled
        assert adjudicate_run(run, id_problem().oracle, DEPTH) is GameVerdict.UNKNOWN_AT_DEPTH
        assert adjudicate_prefixes(run.x, run.y, id_problem().oracle) is GameVerdict.I

    def test_stalled_i_loses_on_dom_reject(self):
        restricted = ProblemOracle("id-on-first:1", first_digit_dom, id_problem().oracle.graph_adj)
        run = Run([(0,), EMPTY], [EMPTY, EMPTY])
        assert restricted.dom(run.x) is Verdict.REJECT
        assert adjudicate_run(Run([(1,), EMPTY], [(2,), EMPTY]), restricted, DEPTH) is GameVerdict.UNKNOWN_AT_DEPTH
        assert adjudicate_run(run, restricted, DEPTH) is GameVerdict.II

    def test_stall_strategy_for_i(self):
        run = run_wadge(stall(Player.I), constant((2,), Player.II), 3)
        assert run.x == EMPTY
        assert adjudicate_run(run, LPO_ORACLE, DEPTH) is GameVerdict.UNKNOWN_AT_DEPTH

    def test_resumed_i_is_not_stalled(self):
        run = Run([EMPTY, (1,)], [(2,), EMPTY])
        assert not run.i_stalled
        assert adjudicate_run(run, id_problem().oracle, DEPTH) is GameVerdict.I

    def test_lpo(self):
        lpo = LPO_ORACLE
        ones = constant((1,), Player.I)
        zeros = constant((0,), Player.I)
        assert adjudicate_run(run_wadge(ones, constant((1,), Player.II), 2), lpo, DEPTH) is GameVerdict.II
        assert adjudicate_run(run_wadge(ones, constant((0,), Player.II), 2), lpo, DEPTH) is GameVerdict.I
        assert adjudicate_run(run_wadge(zeros, constant((0,), Player.II), 2), lpo, DEPTH) is GameVerdict.UNKNOWN_AT_DEPTH

    def test_dis_accept_wins_for_ii(self, identity_name):
        """II differs from the certified U(x) digit"""
        x = interleave_words(identity_name.prefix(4), (1, 2, 3, 4))
        assert adjudicate_prefixes(x, (2,), catalog("dis").oracle) is GameVerdict.II

    def test_monotone_in_depth(self):
        """A certified verdict is kept at every greater depth"""
        for seed in range(20):
            run = run_wadge(random_strategy(Player.I, seed), random_strategy(Player.II, seed + 100), 6)
            first = None
            for depth in range(1, DEPTH + 1):
                verdict = adjudicate_prefixes(run.x[:depth], run.y[:depth], id_problem().oracle)
                if first is None and verdict is not GameVerdict.UNKNOWN_AT_DEPTH:
                    first = verdict
                if first is not None:
                    assert verdict is first

    def test_counted(self, metric_delta):
        labels = {"engine": "wadge", "verdict": "I"}
        metric_delta.snapshot("diskernel_game_verdicts_total", labels)
        run = run_wadge(constant((1,), Player.I), constant((2,), Player.II), 1)
        adjudicate_run(run, id_problem().oracle, DEPTH)
        assert metric_delta("diskernel_game_verdicts_total", labels) == 1

    def test_run_records(self):
        run = run_wadge(constant((1,), Player.I), echo(Player.II), 2)
        records = list(run_records(run, id_problem().oracle, DEPTH))
        assert [(r["round"], r["player"]) for r in records] == [(0, "I"), (0, "II"), (1, "I"), (1, "II")]
        assert records[0]["y"] == []
        assert records[2]["x"] == [1, 1]
        assert records[2]["y"] == [1]
        assert all(r["verdict"] == "unknown_at_depth" for r in records)


class TestRealizerCompilers:
    """Test suite for realizer ⟷ II-strategy"""

    def test_identity_echoes_concatenation(self):
        sigma = realizer_to_strategy_II(Identity())
        assert sigma([(1, 2)]) == (1, 2)
        assert sigma([(1, 2), (3,)]) == (3,)
        assert sigma.expr == {"compiler": "realizer", "machine": {"op": "identity"}}

    def test_constant_played_once(self):
        sigma = realizer_to_strategy_II(ConstWord((4, 4)))
        run = run_wadge(constant((1,), Player.I), sigma, 3)
        assert run.y_moves == [(4, 4), EMPTY, EMPTY]

    def test_realizer_never_loses(self):
        """II answering with a realizer of id is never refuted"""
        sigma = realizer_to_strategy_II(Identity())
        for seed in range(100):
            run = run_wadge(random_strategy(Player.I, seed), sigma, 6)
            assert adjudicate_run(run, id_problem().oracle, DEPTH) is not GameVerdict.I

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["id", "chi:even", "chi:prefix:0.1"])
    def test_compiled_realizers_against_sampled_opponents(self, name):
        """1000 random I-opponents never beat the II-strategy of a realizer"""
        bundle = catalog(name)
        sigma = realizer_to_strategy_II(bundle.realizer)
        for seed in range(1000):
            run = run_wadge(random_strategy(Player.I, seed), sigma, 8)
            assert adjudicate_run(run, bundle.oracle, DEPTH) is not GameVerdict.I

    def test_round_trip(self):
        h = strategy_II_to_realizer(realizer_to_strategy_II(Prepend((1,))))
        assert h((3, 4)) == (1, 3, 4)
        back = strategy_II_to_realizer(realizer_to_strategy_II(Identity()))
        u = tuple(random.Random(1729).randrange(4) for _ in range(DEPTH))
        assert back(u) == u

    def test_recovered_realizer_monotone(self):
        h = strategy_II_to_realizer(echo(Player.II))
        rng = random.Random(1729)
        pairs = []
        for _ in range(200):
            v = tuple(rng.randrange(4) for _ in range(rng.randint(0, 8)))
            pairs.append((v[: rng.randint(0, len(v))], v))
        assert check_monotone_on(h, pairs)
        assert h((5, 6)) == (5, 6)

    def test_side_checked(self):
        with pytest.raises(StrategySideError):
            strategy_II_to_realizer(echo(Player.I))


class TestDiscontinuityCompilers:
    """Test suite for discontinuity function ⟷ I-strategy"""

    def test_history_digits(self):
        assert history_digits([(0,)], [(1,)]) == (cantor_pair(word_code((0,)), word_code((1,))),)
        assert history_digits([(0,), ()], [(), (2,)]) == (
            cantor_pair(1, 0),
            cantor_pair(1, word_code((2,))),
        )

    def test_first_move_is_h_of_empty(self):
        sigma = disc_to_strategy_I(ConstWord((5,)))
        assert sigma([]) == (5,)
        assert sigma([(1,)]) == EMPTY

    def test_identity_word_map(self):
        """h = identity: I plays the history digits one by one"""
        run = run_wadge(disc_to_strategy_I(Identity()), stall(Player.II), 3)
        assert run.x_moves == [EMPTY, (0,), (1,)]

    def test_constant_strategy_gives_constant_stream(self):
        D = strategy_I_to_disc(constant((5,), Player.I))
        assert D.approximate((0, 0, 0), 3) == (5, 5, 5, 5)
        assert D(word_stream()).prefix(3) == (5, 5, 5)

    def test_round_trip_replays_strategy(self):
        D = strategy_I_to_disc(constant((5,), Player.I))
        sigma = disc_to_strategy_I(D.word_map)
        assert run_wadge(sigma, stall(Player.II), 3).x == (5, 5, 5)

    def test_side_checked(self):
        with pytest.raises(StrategySideError):
            strategy_I_to_disc(echo(Player.II))

    @pytest.mark.slow
    @pytest.mark.parametrize("opponent", ["stall", "const", "echo"])
    def test_dis_strategy_never_loses(self, opponent):
        """I playing the DIS discontinuity is never beaten at small depth"""
        bundle = catalog("dis")
        sigma = disc_to_strategy_I(bundle.discontinuity.word_map)
        II = {"stall": stall(Player.II), "const": constant((0,), Player.II), "echo": echo(Player.II)}[opponent]
        run = run_wadge(sigma, II, 3)
        assert adjudicate_run(run, bundle.oracle, DEPTH) is not GameVerdict.II

    @pytest.mark.slow
    def test_dis_strategy_against_sampled_opponents(self):
        """1000 random II-opponents: no win for II, and y tracks the certified U(x)"""
        bundle = catalog("dis")
        sigma = disc_to_strategy_I(bundle.discontinuity.word_map)
        for seed in range(1000):
            run = run_wadge(sigma, random_strategy(Player.II, seed), 3)
            assert adjudicate_run(run, bundle.oracle, DEPTH) is not GameVerdict.II
            assert compatible(universal_word(run.x), run.y)

    @pytest.mark.slow
    def test_dis_round_trip_keeps_diagonal(self, sample_machines):
        """dis_discontinuity → I-strategy → transformer still defeats every candidate"""
        D = strategy_I_to_disc(disc_to_strategy_I(dis_discontinuity().word_map))
        bundle = ProblemBundle(DIS_ORACLE, discontinuity=D)
        for candidate in [Identity()] + sample_machines(4):
            found = find_counterexample(bundle, candidate, depth=8)
            assert len(found.input_prefix) == 8
            assert found.verdict is not Verdict.ACCEPT


class TestLipschitzAndGaleStewart:
    """Test suite for the digit engines and translations"""

    def test_translations(self):
        lam = wadge_to_lipschitz(constant((1, 2), Player.II))
        assert lam([0, 0]) == word_code((1, 2)) == 18
        sigma = lipschitz_to_wadge(lipschitz_constant(18, Player.II))
        assert sigma([(), ()]) == (1, 2)

    def test_echo_translates_to_code_echo(self):
        lam = wadge_to_lipschitz(echo(Player.II))
        for history in ([3], [3, 18], [0, 26, 235]):
            assert lam(history) == history[-1]

    def test_round_trip_on_histories(self):
        sigma = random_strategy(Player.II, 1729)
        back = lipschitz_to_wadge(wadge_to_lipschitz(sigma))
        rng = random.Random(1729)
        for _ in range(1000):
            history = sample_history(rng, rng.randint(1, 4))
            assert back(history) == sigma(history)

    def test_run_lipschitz(self):
        run = run_lipschitz(lipschitz_constant(1, Player.I), lipschitz_echo(Player.II), 3)
        assert run.x == (1, 1, 1)
        assert run.y == (1, 1, 1)
        assert run.interleaved == (1, 1, 1, 1, 1, 1)

    def test_wadge_and_lipschitz_verdicts_agree(self):
        """Translated strategies on f^w reach the verdict of the word game on f"""
        f = id_problem().oracle
        for seed in range(100):
            sI, sII = random_strategy(Player.I, seed), random_strategy(Player.II, seed + 1)
            wrun = run_wadge(sI, sII, 4)
            lrun = run_lipschitz(wadge_to_lipschitz(sI), wadge_to_lipschitz(sII), 4)
            assert lrun.x == tuple(word_code(w) for w in wrun.x_moves)
            assert adjudicate_prefixes(wrun.x, wrun.y, f) is adjudicate_prefixes(lrun.x, lrun.y, word_lift(f))

    def test_payoff_for_identity(self):
        payoff = gs_payoff_from_problem(id_problem().oracle)
        assert payoff.adj((1, 2)).value == "reject"
        assert payoff.adj((1, 1, 2, 2)).value == "unknown"

    def test_gale_stewart_lpo(self):
        payoff = gs_payoff_from_problem(LPO_ORACLE)
        _, verdict = run_gale_stewart(lipschitz_constant(1, Player.I), lipschitz_constant(1, Player.II), payoff, 3)
        assert verdict is GameVerdict.II
        _, verdict = run_gale_stewart(lipschitz_constant(1, Player.I), lipschitz_constant(0, Player.II), payoff, 3)
        assert verdict is GameVerdict.I
        _, verdict = run_gale_stewart(lipschitz_constant(0, Player.I), lipschitz_constant(0, Player.II), payoff, 3)
        assert verdict is GameVerdict.UNKNOWN_AT_DEPTH

    def test_lipschitz_and_gale_stewart_agree(self):
        f = id_problem().oracle
        payoff = gs_payoff_from_problem(f)
        for seed in range(100):
            lI = lipschitz_random(Player.I, seed, alphabet=3)
            lII = lipschitz_random(Player.II, seed + 1, alphabet=3)
            run, verdict = run_gale_stewart(lI, lII, payoff, DEPTH)
            assert verdict is adjudicate_prefixes(run.x, run.y, f)

    def test_run_container(self):
        run = Run([(1,), (2, 3)], [(), (4,)])
        assert run.x == (1, 2, 3)
        assert run.y == (4,)

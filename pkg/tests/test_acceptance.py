"""ランダムコーパス全体での近似保証・健全性・決定性"""
import numpy as np
import pytest

import app
from burn_engine import BurningSchedule, BurnProcess, ceil_range, simulate, validate
from cactus_burn import CactusIndex, approx_cactus, burn_guess_cactus
from conftest import cycle_graph, union_of_balls
from ditree_burn import (approx_arborescence, approx_polytree, b_cutting, centers_multirooted,
                         guess_arborescence)
from errors import ScheduleError
from gen import GenSpec, generate_instance
from graph_core import AncestorIndex, articulation_points, ball
from oracles import baseline_3approx, baseline_guess, cycle_formula, exact_burning_number

CORPUS_SIZE = 200


def _cactus(seed):
    return generate_instance(GenSpec('cactus', 4 + seed % 11, seed, cycle_fraction=0.35))


def _tree(graph_class, seed):
    return generate_instance(GenSpec(graph_class, 3 + seed % 12, seed))


@pytest.fixture(scope='module')
def cactus_corpus():
    out = []
    for seed in range(CORPUS_SIZE):
        g = _cactus(seed)
        out.append((g, exact_burning_number(g).b))
    return out


@pytest.fixture(scope='module')
def polytree_corpus():
    out = []
    for seed in range(CORPUS_SIZE):
        t = _tree('polytree', seed)
        out.append((t, exact_burning_number(t, directed=True).b))
    return out


@pytest.fixture(scope='module')
def arborescence_corpus():
    out = []
    for seed in range(CORPUS_SIZE):
        t = _tree('arborescence', seed)
        out.append((t, exact_burning_number(t, directed=True).b))
    return out


# ============================================
# 近似保証
# ============================================

def test_cactus_guarantee(cactus_corpus):
    for g, b in cactus_corpus:
        result = approx_cactus(g, check_inclusion=True)
        assert validate(g, result.schedule)
        assert result.length <= ceil_range(b, 2.75)


def test_baseline_guarantee(cactus_corpus):
    for g, b in cactus_corpus:
        result = baseline_3approx(g)
        assert validate(g, result.schedule)
        assert result.length <= 3 * b


def test_polytree_guarantee(polytree_corpus):
    for t, b in polytree_corpus:
        result = approx_polytree(t)
        assert validate(t, result.schedule, directed=True)
        assert result.length <= 3 * b


def test_arborescence_two_approx(arborescence_corpus):
    for t, b in arborescence_corpus:
        result = approx_polytree(t)
        assert validate(t, result.schedule, directed=True)
        assert result.length <= 2 * b


def test_arborescence_1905_approx(arborescence_corpus):
    for t, b in arborescence_corpus:
        result = approx_arborescence(t)
        assert validate(t, result.schedule, directed=True)
        assert result.length <= ceil_range(b, 1.905) + 1


# ============================================
# BAD-GUESS の健全性: b >= b_exact では失敗しない
# ============================================

def test_cactus_guess_soundness(cactus_corpus):
    for g, b in cactus_corpus:
        if not articulation_points(g):
            continue
        index = CactusIndex(g)
        for guess in (b, b + 1):
            assert burn_guess_cactus(g, guess, index).ok


def test_baseline_guess_soundness(cactus_corpus):
    for g, b in cactus_corpus:
        assert baseline_guess(g, b).ok


def test_multirooted_soundness(polytree_corpus, arborescence_corpus):
    for t, b in polytree_corpus + arborescence_corpus:
        for guess in (b, b + 1):
            assert centers_multirooted(t, guess).ok


def test_merge_pipeline_soundness(arborescence_corpus):
    for t, b in arborescence_corpus:
        index = AncestorIndex(t)
        for guess in (b, b + 1):
            assert guess_arborescence(t, guess, index).ok


def test_merged_sources_cover_both_subtrees(arborescence_corpus):
    for t, b in arborescence_corpus:
        outcome = guess_arborescence(t, b)
        plan = outcome.detail
        radius = ceil_range(b, 1.81)
        index = AncestorIndex(t)
        for u, v in plan.pairs:
            w = index.lca(u, v)
            covered = ball(t, w, radius, directed=True)
            assert ball(t, u, b, directed=True) <= covered
            assert ball(t, v, b, directed=True) <= covered


# ============================================
# b-cutting・シミュレーション・閉形式
# ============================================

def test_b_cutting_composition():
    for seed in range(100):
        t = generate_instance(GenSpec('polytree' if seed % 2 else 'arborescence', 5 + seed % 20, seed))
        for a in range(6):
            once = b_cutting(t, a)
            for c in range(6):
                assert b_cutting(once, c) == b_cutting(t, a + c)


def _random_schedule(g, rng, directed):
    proc = BurnProcess(g, directed)
    sources = []
    for _ in range(int(rng.integers(1, g.n + 1))):
        proc.spread()
        choices = [v for v in range(g.n) if proc.can_ignite(v)]
        if not choices:
            break
        v = choices[int(rng.integers(len(choices)))]
        proc.ignite(v)
        sources.append(v)
    return BurningSchedule(tuple(sources))


def test_simulation_matches_union_of_balls():
    rng = np.random.default_rng(2024)
    for i in range(500):
        graph_class = ('cactus', 'polytree', 'arborescence')[i % 3]
        g = generate_instance(GenSpec(graph_class, 2 + i % 20, i, cycle_fraction=0.3))
        directed = g.directed
        schedule = _random_schedule(g, rng, directed)
        assert simulate(g, schedule, directed).burned == union_of_balls(g, schedule.sources, directed)


def test_larger_ball_replacement_never_delays_cover():
    rng = np.random.default_rng(7)
    checked = 0
    for i in range(150):
        graph_class = ('cactus', 'polytree', 'arborescence')[i % 3]
        g = generate_instance(GenSpec(graph_class, 3 + i % 12, i, cycle_fraction=0.3))
        directed = g.directed
        schedule = _random_schedule(g, rng, directed)
        before = simulate(g, schedule, directed).rounds_to_cover
        for pos, v in enumerate(schedule.sources):
            r = schedule.radius_at(pos)
            reach = ball(g, v, r, directed)
            for w in range(g.n):
                if w in schedule.sources or not ball(g, w, r, directed) >= reach:
                    continue
                sources = schedule.sources[:pos] + (w,) + schedule.sources[pos + 1:]
                try:
                    after = simulate(g, BurningSchedule(sources), directed).rounds_to_cover
                except ScheduleError:
                    continue
                checked += 1
                assert before is None or (after is not None and after <= before)
    assert checked > 0


def test_cycle_formula_matches_exact():
    for n in range(3, 15):
        assert cycle_formula(n) == exact_burning_number(cycle_graph(n)).b


# ============================================
# ベンチの決定性・規模
# ============================================

def test_bench_csv_byte_stable(tmp_path):
    args = ['bench', '--classes', 'cactus,arborescence', '--sizes', '9,13', '--seeds', '1,2',
            '--algs', 'cactus275,baseline3,arb2,arb1905']
    first, second = tmp_path / 'a.csv', tmp_path / 'b.csv'
    assert app.main(args + ['--out', str(first)]) == 0
    assert app.main(args + ['--out', str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


@pytest.mark.slow
def test_scale_ladder():
    rows = app.bench_rows(['cactus'], [300, 3000, 30000], [1], ['cactus275', 'baseline3'])
    rows += app.bench_rows(['arborescence'], [1000, 10000], [1], ['arb2', 'arb1905'])
    assert len(rows) == 10
    for row in rows:
        assert row['error'] is None
        assert row['estimate'] >= 1

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rcga.algorithm import (
    RunConfig,
    RunStatus,
    TraceLevel,
    default_max_iterations,
    run,
    step,
)
from rcga.core import FrequencyMatrix, InvalidConfigError, ModelParams, init_uniform
from rcga.fitness import FitnessFunction, FitnessKind


class ScriptedRng:
    """Feeds fixed uniforms so a test can force the sampled individuals."""

    def __init__(self, values):
        self.values = list(values)

    def random(self, shape):
        k = int(np.prod(shape))
        out, self.values = self.values[:k], self.values[k:]
        return np.array(out, dtype=float).reshape(shape)


def forcing_uniforms(model, *individuals):
    """Uniforms that make ``sample`` return the given individuals."""
    cum = np.concatenate([np.zeros((model.n, 1), int), np.cumsum(model.counts, axis=1)], axis=1)
    out = []
    for ind in individuals:
        for i, v in enumerate(ind):
            assert model.counts[i, v] > 0
            out.append((cum[i, v] + 0.5) / model.K)
    return out


class TestStep:
    def test_forced_update(self):
        m = init_uniform(ModelParams(2, 2, 2))
        rng = ScriptedRng(forcing_uniforms(m, [1, 1], [0, 0]))
        new, rec = step(m, FitnessFunction.r_onemax(2, 2), rng)
        assert new.counts.tolist() == [[0, 2], [0, 2]]
        assert not rec.swapped and (rec.fx, rec.fy) == (2, 0)

    def test_swap_when_y_fitter(self):
        m = init_uniform(ModelParams(2, 2, 2))
        rng = ScriptedRng(forcing_uniforms(m, [0, 0], [1, 1]))
        new, rec = step(m, FitnessFunction.r_onemax(2, 2), rng)
        assert rec.swapped
        assert new.counts.tolist() == [[0, 2], [0, 2]]
        assert rec.x.tolist() == [0, 0]  # recorded as sampled, pre-swap

    def test_tie_keeps_x_as_winner(self):
        m = init_uniform(ModelParams(2, 3, 6))
        # r-OneMax ties at 1: x=(2,0), y=(0,2)
        rng = ScriptedRng(forcing_uniforms(m, [2, 0], [0, 2]))
        new, rec = step(m, FitnessFunction.r_onemax(2, 3), rng)
        assert not rec.swapped and rec.fx == rec.fy == 1
        assert new.counts.tolist() == [[1, 2, 3], [3, 2, 1]]

    def test_identical_samples_leave_model(self):
        m = init_uniform(ModelParams(3, 3, 6))
        rng = ScriptedRng(forcing_uniforms(m, [0, 1, 2], [0, 1, 2]))
        new, rec = step(m, FitnessFunction.g_onemax(3, 3), rng)
        assert new == m and rec.delta == ()


class TestRun:
    def test_n1_r2_k2_terminates(self):
        its = []
        for seed in range(2000):
            out = run(RunConfig(ModelParams(1, 2, 2), FitnessFunction.r_onemax(1, 2), seed=seed))
            assert out.status is RunStatus.OPTIMUM_SAMPLED and out.iterations >= 1
            its.append(out.iterations)
        # exact chain: the count never leaves 1 before the optimum is sampled,
        # so T ~ Geometric(1 - (1/2)^2) with mean 4/3
        expected = 1 / (1 - 0.5**2)
        se = np.std(its, ddof=1) / math.sqrt(len(its))
        assert abs(np.mean(its) - expected) <= 4 * se
        assert np.mean(its) <= 10

    def test_preseeded_optimum(self):
        K = 4
        cfg = RunConfig(ModelParams(1, 2, K), FitnessFunction.r_onemax(1, 2),
                        initial_model=FrequencyMatrix([[0, K]], K))
        out = run(cfg)
        assert (out.status, out.iterations, out.evaluations) == (RunStatus.OPTIMUM_SAMPLED, 1, 2)

    @pytest.mark.parametrize("level", list(TraceLevel))
    def test_preseeded_absorbed(self, level):
        K = 4
        cfg = RunConfig(ModelParams(1, 2, K), FitnessFunction.r_onemax(1, 2),
                        initial_model=FrequencyMatrix([[K, 0]], K), trace_level=level)
        out = run(cfg)
        assert (out.status, out.iterations) == (RunStatus.STAGNATED, 1)
        assert out.final_model.counts.tolist() == [[K, 0]]

    def test_cap(self):
        cfg = RunConfig(ModelParams(30, 3, 300), FitnessFunction.r_onemax(30, 3), max_iterations=5)
        out = run(cfg)
        assert (out.status, out.iterations) == (RunStatus.CAP_REACHED, 5)

    def test_default_cap(self):
        n, r, K = 500, 4, 120
        expected = math.ceil(50 * K * math.sqrt(n) * 3 * (1 + math.log2(n)))
        assert default_max_iterations(n, r, K) == expected
        assert RunConfig(ModelParams(n, r, K), FitnessFunction.r_onemax(n, r)).max_iterations == expected

    def test_rejects_bad_config(self):
        with pytest.raises(InvalidConfigError):
            RunConfig(ModelParams(3, 3, 8), FitnessFunction.r_onemax(3, 3))
        with pytest.raises(InvalidConfigError):
            RunConfig(ModelParams(3, 3, 9), FitnessFunction.r_onemax(3, 3), max_iterations=0)
        with pytest.raises(InvalidConfigError):
            RunConfig(ModelParams(3, 3, 9), FitnessFunction.r_onemax(4, 3))

    def test_determinism(self):
        cfg = dict(params=ModelParams(40, 4, 160), fitness=FitnessFunction.g_onemax(40, 4), seed=77)
        a, b = run(RunConfig(**cfg)), run(RunConfig(**cfg))
        assert (a.status, a.iterations) == (b.status, b.iterations)
        assert a.final_model == b.final_model

    def test_optimum_really_sampled(self):
        f = FitnessFunction.r_onemax(8, 3)
        out = run(RunConfig(ModelParams(8, 3, 30), f, seed=5, trace_level=TraceLevel.FULL))
        assert out.status is RunStatus.OPTIMUM_SAMPLED
        last = out.trace[-1]
        assert f.max_value in (f(last.x), f(last.y))
        assert len(out.trace) == out.iterations


def _fitness_for(kind, n, r, seed):
    if kind in (FitnessKind.R_ONEMAX_AT, FitnessKind.G_ONEMAX_AT):
        return FitnessFunction.with_random_optimum(kind, n, r, seed)
    return FitnessFunction(kind, n, r)


@settings(max_examples=40, deadline=None)
@given(
    kind=st.sampled_from(list(FitnessKind)), n=st.integers(1, 8), r=st.integers(2, 5),
    units=st.integers(1, 6), seed=st.integers(0, 2**63 - 1), neutral=st.booleans(),
    stagnation=st.booleans(),
)
def test_compiled_and_traced_paths_agree(kind, n, r, units, seed, neutral, stagnation):
    f = _fitness_for(kind, n, r, seed)
    if neutral:
        f = f.with_neutral(seed % n)
    base = dict(params=ModelParams(n, r, r * units), fitness=f, seed=seed, max_iterations=3000,
                stagnation_check=stagnation)
    fast = run(RunConfig(**base))
    slow = run(RunConfig(**base, trace_level=TraceLevel.FULL))
    assert (fast.status, fast.iterations) == (slow.status, slow.iterations)
    assert fast.final_model == slow.final_model
    for rec in slow.trace:
        winner, loser = rec.winner, rec.loser
        assert f(winner) >= f(loser)


def _binary_cga(n, K, seed, cap):
    """Plain binary cGA on OneMax over bit frequencies, written independently."""
    g = np.random.default_rng(seed)
    p = np.full(n, K // 2)
    for t in range(1, cap + 1):
        x = (g.random(n) < p / K).astype(int)
        y = (g.random(n) < p / K).astype(int)
        if x.sum() == n or y.sum() == n:
            return t
        if x.sum() < y.sum():
            x, y = y, x
        p += x - y
        if np.any(p == 0):
            return None
    return None


@pytest.mark.slow
@pytest.mark.parametrize("n,K", [(3, 8), (5, 12)])
def test_r2_matches_binary_cga(n, K):
    trials = 2000
    ours, ref = [], []
    for s in range(trials):
        out = run(RunConfig(ModelParams(n, 2, K), FitnessFunction.r_onemax(n, 2), seed=s))
        if out.status is RunStatus.OPTIMUM_SAMPLED:
            ours.append(out.iterations)
        t = _binary_cga(n, K, 10**6 + s, 10**6)
        if t is not None:
            ref.append(t)
    a, b = np.array(ours), np.array(ref)
    se = math.sqrt(a.var(ddof=1) / len(a) + b.var(ddof=1) / len(b))
    assert abs(a.mean() - b.mean()) <= 3 * se
    assert abs(len(a) - len(b)) / trials <= 3 * math.sqrt(2 * 0.25 / trials)

"""Empirical operator-norm probes and the quantitative counterexamples.

Empirical constants are regression anchors: the probes report maxima of norm
ratios over a deterministic corpus, weak-type quasinorms both directly and
through the set-pairing dualization, and the two classical vector-maximal
lower-bound constructions evaluated with the exact maximal function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .corpus import Corpus
from .grid import GridFunction, NormSpec, lp_norm, norm
from .maximal import maximal
from .rearrange import rearrangement, two_star, zygmund_norm


@dataclass
class NormReport:
    operator: str
    in_specs: tuple
    out_spec: NormSpec
    ratios: list[float]
    max_ratio: float
    dual_estimate: float | None = None
    seed: int | None = None
    notes: dict = field(default_factory=dict)


def probe_norm(
    operator,
    name: str,
    in_specs,
    out_spec: NormSpec,
    corpus,
    seed: int | None = None,
    dualize_weak: bool = True,
) -> NormReport:
    """Max over the corpus of norm(T(f..)) / prod(norm(inputs)).

    ``corpus`` yields single functions (unary operators) or input tuples.
    For weak output specs a second estimate runs the set-pairing dualization
    and both figures are reported.
    """
    in_specs = tuple(in_specs)
    ratios = []
    dual = None
    for item in corpus:
        inputs = item if isinstance(item, tuple) else (item,)
        if len(inputs) != len(in_specs):
            raise ValueError("operator arity does not match the input specs")
        out = operator(*inputs)
        denom = 1.0
        for h, spec in zip(inputs, in_specs):
            denom *= norm(h, spec)
        if denom == 0.0:
            continue
        ratios.append(norm(out, out_spec) / denom)
        if out_spec.kind == "WeakLp" and dualize_weak:
            est = dual_weak_estimate(out, out_spec.p) / denom
            dual = est if dual is None else max(dual, est)
    return NormReport(
        operator=name,
        in_specs=in_specs,
        out_spec=out_spec,
        ratios=ratios,
        max_ratio=max(ratios) if ratios else 0.0,
        dual_estimate=dual,
        seed=seed,
    )


def dual_weak_estimate(f: GridFunction, p: float, n_sets: int = 24, seed: int = 7) -> float:
    """Weak-Lp size of f through the set-pairing route.

    For each trial set E, excise the large-|f| points exactly as the
    dualization prescribes (E' = E minus {|f| > 3^{1/p} A |E|^{-1/p}} for the
    direct quasinorm A) and measure |<f, chi_E'>| / |E|^{1 - 1/p}; the max
    over sets is the dual estimate, comparable to A within 2^{3/2 + 2/p}.
    """
    a_direct = norm(f, NormSpec.weak(p))
    if a_direct == 0.0:
        return 0.0
    absvals = np.abs(f.values).ravel()
    n = absvals.size
    rng = np.random.default_rng(seed)
    candidates = []
    for _ in range(n_sets):
        kind = rng.integers(0, 3)
        if kind == 0:
            width = int(rng.integers(max(1, n // 64), n // 2))
            start = int(rng.integers(0, n))
            mask = np.zeros(n, dtype=bool)
            idx = (start + np.arange(width)) % n
            mask[idx] = True
        elif kind == 1:
            mask = rng.uniform(size=n) < rng.uniform(0.05, 0.9)
        else:
            lam = float(rng.choice(np.unique(absvals)))
            mask = absvals >= lam
        if not mask.any():
            continue
        candidates.append(mask)
    best = 0.0
    flat = f.values.ravel()
    for mask in candidates:
        measure = mask.mean()
        cutoff = 3.0 ** (1.0 / p) * a_direct * measure ** (-1.0 / p)
        keep = mask & (absvals <= cutoff)
        pairing = abs(flat[keep].sum()) / n
        best = max(best, pairing / measure ** (1.0 - 1.0 / p))
    return best


@dataclass
class KhinchineReport:
    l2_moment: float
    l2_expected: float
    l2_stderr: float
    tail_frequencies: dict[float, float]
    tail_bounds: dict[float, float]
    tail_wilson_upper: dict[float, float]
    p_norm_ratios: dict[float, float]
    samples: int
    seed: int

    def l2_within(self, k_sigma: float = 3.0) -> bool:
        return abs(self.l2_moment - self.l2_expected) <= k_sigma * self.l2_stderr

    def tails_below_bound(self) -> bool:
        return all(
            self.tail_wilson_upper[t] <= self.tail_bounds[t] or
            self.tail_frequencies[t] <= self.tail_bounds[t]
            for t in self.tail_bounds
        )


def khinchine_experiment(
    coefficients,
    p_list=(1.0, 4.0),
    samples: int = 100_000,
    seed: int = 0,
    tail_points=(1.0, 2.0, 3.0),
) -> KhinchineReport:
    """Monte Carlo moments and tails of S = sum a_j r_j over Rademacher draws."""
    a = np.asarray(coefficients, dtype=complex)
    l2 = float(np.sum(np.abs(a) ** 2))
    if not l2 > 0:
        raise ValueError("coefficient vector must be nonzero")
    rng = np.random.default_rng(seed)
    signs = rng.choice([-1.0, 1.0], size=(samples, a.size))
    sums = signs @ a
    sq = np.abs(sums) ** 2
    l2_moment = float(sq.mean())
    l2_stderr = float(sq.std(ddof=1) / math.sqrt(samples))
    unit = sums / math.sqrt(l2)
    tail_freq, tail_bound, tail_upper = {}, {}, {}
    for t in tail_points:
        hits = int((np.abs(unit) > t).sum())
        tail_freq[t] = hits / samples
        tail_bound[t] = 4.0 * math.exp(-(t**2) / 4.0)
        tail_upper[t] = _wilson_upper(hits, samples)
    p_ratios = {
        p: float((np.abs(sums) ** p).mean() ** (1.0 / p) / math.sqrt(l2))
        for p in p_list
    }
    return KhinchineReport(
        l2_moment, l2, l2_stderr, tail_freq, tail_bound, tail_upper, p_ratios,
        samples, seed,
    )


def _wilson_upper(hits: int, n: int, z: float = 3.0) -> float:
    phat = hits / n
    denom = 1.0 + z**2 / n
    center = phat + z**2 / (2 * n)
    margin = z * math.sqrt(phat * (1 - phat) / n + z**2 / (4 * n**2))
    return (center + margin) / denom


@dataclass
class CounterexampleReport:
    label: str
    value: float
    bound: float
    passed: bool
    details: dict = field(default_factory=dict)


def fs_sum_counterexample(n_pieces: int, log_size: int | None = None) -> CounterexampleReport:
    """min_x sum_k M chi_{[(k-1)/n, k/n)}(x) >= log n - 1.

    Evaluated with the exact interval maximal function on a grid where the
    pieces are sample-aligned, so the classical lower bound is certified.
    """
    if n_pieces & (n_pieces - 1):
        raise ValueError("piece count must be a power of two")
    log_size = log_size or max(8, n_pieces.bit_length() - 1)
    if 2**log_size % n_pieces:
        raise ValueError("grid must resolve the pieces")
    n = 2**log_size
    width = n // n_pieces
    total = np.zeros(n)
    base = np.zeros(n)
    base[:width] = 1.0
    m_base = maximal(GridFunction((log_size,), base), "hl").values.real
    for k in range(n_pieces):
        total += np.roll(m_base, k * width)
    value = float(total.min())
    bound = math.log(n_pieces) - 1.0
    return CounterexampleReport(
        f"sum of {n_pieces} maximal bumps",
        value,
        bound,
        value >= bound,
        {"n_pieces": n_pieces, "log_size": log_size},
    )


def fs_growth_counterexample(
    depth: int, r: float, log_size: int | None = None
) -> CounterexampleReport:
    """(sum_{k<=K} (M chi_{[2^-k-1, 2^-k)})^r)^{1/r} >= K^{1/r}/2 near 0."""
    log_size = log_size or (depth + 3)
    if depth + 1 > log_size:
        raise ValueError("grid must resolve the finest piece")
    n = 2**log_size
    x = np.arange(n) / n
    stack = []
    for k in range(1, depth + 1):
        vals = ((x >= 2.0 ** (-k - 1)) & (x < 2.0**-k)).astype(float)
        stack.append(maximal(GridFunction((log_size,), vals), "hl").values.real)
    agg = (np.stack(stack) ** r).sum(axis=0) ** (1.0 / r)
    window = x < 2.0**-depth
    value = float(agg[window].min())
    bound = depth ** (1.0 / r) / 2.0
    return CounterexampleReport(
        f"ell^{r} growth over {depth} dyadic bumps",
        value,
        bound,
        value >= bound,
        {"depth": depth, "r": r, "log_size": log_size},
    )


def weighted_maximal_probe(f: GridFunction, weight: GridFunction, r: float):
    """(int (Mf)^r |w|, int |f|^r Mw): the weighted comparison pair.

    The first integral is controlled by a constant multiple of the second,
    uniformly in the weight.
    """
    mf = np.abs(maximal(f, "hl").values)
    mw = np.abs(maximal(weight, "hl").values)
    lhs = float(np.mean(mf**r * np.abs(weight.values)))
    rhs = float(np.mean(np.abs(f.values) ** r * mw))
    return lhs, rhs


def weak_sum_probe(pieces, weights, p: float) -> dict:
    """Weak-quasinorm of sum_n alpha(n)^-r f_n against its piece budgets.

    ``pieces`` are functions with weak-Lp size at most ``weights[n]``; the
    assembled series with the r = k + 3 damping keeps a bounded weak size.
    Returns the measured sizes for reporting.
    """
    pieces = list(pieces)
    weights = np.asarray(weights, dtype=float)
    r = 1.0 / min(p, 1.0) + 3.0
    total = sum(w**-r * f.values for f, w in zip(pieces, weights))
    assembled = GridFunction(pieces[0].log_sizes, total)
    piece_sizes = [norm(f, NormSpec.weak(p)) for f in pieces]
    return {
        "piece_weak_sizes": piece_sizes,
        "budgets": weights.tolist(),
        "within_budget": all(s <= w * (1 + 1e-9) for s, w in zip(piece_sizes, weights)),
        "assembled_weak_size": norm(assembled, NormSpec.weak(p)),
    }


def strong_maximal_endpoint_probe(corpus: Corpus) -> dict:
    """||M_S f||_1 against the order-2 Zygmund norm on a 2D corpus."""
    ratios = {}
    for name, f in corpus.members:
        if f.dims != 2:
            continue
        ms = maximal(f, "strong")
        ratios[name] = lp_norm(ms, 1.0) / zygmund_norm(f, 2, "closed_form")
    return ratios


def fs_counterexample(n_pieces: int, r: float, depth: int = 6):
    """Both vector-maximal lower-bound constructions in one report pair."""
    return fs_sum_counterexample(n_pieces), fs_growth_counterexample(depth, r)


@dataclass
class MaximalZygmundReport:
    norm_ratios: dict[str, float]
    curve_ratio_range: tuple[float, float]
    details: dict = field(default_factory=dict)


def llogl_maximal_experiment(
    corpus: Corpus, t_lo: float = 1.0 / 64, t_hi: float = 0.5
) -> MaximalZygmundReport:
    """Compare ||Mf||_1 with the L log L norm and (Mf)* with f** pointwise."""
    ratios = {}
    lo, hi = math.inf, 0.0
    for name, f in corpus.members:
        mf = maximal(f, "hl")
        mf_l1 = lp_norm(mf, 1.0)
        zyg = zygmund_norm(f, 1, "closed_form")
        ratios[name] = mf_l1 / zyg
        mf_profile = rearrangement(mf)
        fstar2 = two_star(rearrangement(f))
        # (Mf)* is a step function and f** is continuous decreasing, so on
        # each step piece the ratio is monotone: its extremes over the window
        # sit at the clipped piece endpoints
        left_edges = np.concatenate([[0.0], mf_profile.breakpoints[:-1]])
        for a_m, t0, t1 in zip(mf_profile.values, left_edges, mf_profile.breakpoints):
            if t1 <= t_lo or t0 >= t_hi:
                continue
            lo_t = max(t0, t_lo)
            hi_t = min(t1, t_hi)
            lo = min(lo, a_m / float(fstar2(np.array([lo_t if lo_t > 0 else t_lo]))[0]))
            hi = max(hi, a_m / float(fstar2(np.array([hi_t]))[0]))
    return MaximalZygmundReport(ratios, (lo, hi), {"t_window": (t_lo, t_hi)})

"""The quantitative lower-bound constructions and endpoint experiments.

Vector-valued maximal inequalities fail at ell^1 and L^infty; the classical
constructions realize the failure with explicit rates, which the exact grid
maximal function certifies.  At the L^1 endpoint the maximal function
characterizes the Zygmund space: ||Mf||_1 is comparable to ||f||_LlogL.
"""

import numpy as np

from torusharmonics import (
    fs_growth_counterexample,
    fs_sum_counterexample,
    generate_corpus,
    khinchine_experiment,
    llogl_maximal_experiment,
)

# ell^1 failure: the sum of N maximal bumps is everywhere >= log N - 1
for n in (16, 64, 256):
    rep = fs_sum_counterexample(n)
    print(f"N={n}: min_x sum M chi_k = {rep.value:.3f} >= log N - 1 = {rep.bound:.3f}")

# L^infty failure: the ell^r aggregate grows like K^(1/r) near the origin
for r in (2.0, 4.0):
    rep = fs_growth_counterexample(6, r)
    print(f"r={r}: value near 0 = {rep.value:.4f} >= K^(1/r)/2 = {rep.bound:.4f}")

# Khinchine: random signs turn ell^2 data into uniformly comparable Lp norms
rep = khinchine_experiment(np.ones(32) / np.sqrt(32), samples=100_000, seed=0)
print("E|S|^2 =", round(rep.l2_moment, 4), "(exact 1);",
      "tail freq vs 4e^(-t^2/4):",
      {t: (round(f, 5), round(rep.tail_bounds[t], 5))
       for t, f in rep.tail_frequencies.items()})
print("Lp/ell2 ratios:", {p: round(v, 4) for p, v in rep.p_norm_ratios.items()})

# the endpoint equivalence: ||Mf||_1 ~ ||f||_LlogL with pointwise curves
corpus = generate_corpus(11, 10)
rep = llogl_maximal_experiment(corpus)
vals = sorted(rep.norm_ratios.values())
print("||Mf||_1 / ||f||_LlogL over the corpus: min",
      round(vals[0], 4), "max", round(vals[-1], 4))
print("(Mf)*(t) / f**(t) over t in [1/64, 1/2]:",
      tuple(round(float(v), 4) for v in rep.curve_ratio_range))

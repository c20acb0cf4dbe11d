"""Exact rearrangements, Zygmund norms two ways, and the L1/Linf split.

Grid functions have step rearrangements, so every t-integral here is exact:
the two Zygmund-norm routes (iterated prefix averaging vs the log-moment of
f*) share no integration code yet agree to rounding.
"""

import numpy as np

from torusharmonics import (
    GridFunction,
    kolmogorov_functional,
    lorentz_norm,
    lp_norm,
    n_star,
    optimal_l1_linf_split,
    rearrangement,
    two_star,
    weak_lp_norm,
    zygmund_norm,
)

L = 10
N = 2**L
rng = np.random.default_rng(2)
f = GridFunction((L,), rng.normal(size=N) ** 3)

profile = rearrangement(f)
print("steps in f*:", len(profile.values), "| ||f||_2 = ||f*||_2 gap:",
      abs(profile.lp_norm(2) - lp_norm(f, 2)))

# the running average f** dominates f* and is exactly piecewise c + d/t
fstar2 = two_star(profile)
t = np.array([0.05, 0.25, 1.0])
print("f*(t):", np.round(profile(t), 4), " f**(t):", np.round(fstar2(t), 4))

# higher star iterates pick up log powers, still in closed form
curve3 = n_star(profile, 3)
print("f^(*,3) at the same t:", np.round(curve3(t), 4))

# the Zygmund norm of the unit function is exactly 1 at every order
one = GridFunction.constant(1.0, (L,))
for n in range(5):
    a = zygmund_norm(one, n, "closed_form")
    b = zygmund_norm(one, n, "iterated")
    print(f"||1||_L(logL)^{n}: closed {a:.12f}  iterated {b:.12f}")

# for an indicator the L log L norm has the classic closed form
quarter = GridFunction.from_callable(lambda x: (x < 0.25).astype(complex), (L,))
print("||chi||_LlogL:", zygmund_norm(quarter, 1),
      "expected:", 0.25 * (1 + np.log(4)))

# Lorentz norms interpolate the Lp scale; the diagonal is Lp exactly
print("||f||_{2,1} >= ||f||_2 >= ||f||_{2,inf}:",
      round(lorentz_norm(f, 2, 1), 4), round(lp_norm(f, 2), 4),
      round(weak_lp_norm(f, 2), 4))

# the Kolmogorov functional sandwiches the weak norm
print("weak-L2 vs Kolmogorov M_{2,1}:", round(weak_lp_norm(f, 2), 4),
      round(kolmogorov_functional(f, 2, 1), 4))

# the optimal L1 + t Linf split attains exactly t f**(t)
for t0 in (0.1, 0.5):
    g, h, value = optimal_l1_linf_split(f, t0)
    print(f"split at t={t0}: value {value:.6f} = t f**(t) "
          f"{t0 * float(fstar2(np.array([t0]))[0]):.6f}")

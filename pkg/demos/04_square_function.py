"""Square functions, their linearization, and the 2D/3D hybrid operators."""

import numpy as np

from torusharmonics import (
    EpsilonSequence,
    GridFunction,
    GridFunction3,
    hybrid,
    hybrid3,
    linearize,
    lp_norm,
    make_adapted_family,
    square_function,
)

L, K = 10, 7
N = 2**L
fam = make_adapted_family("from_pou_1", K, L)
fam_b = make_adapted_family("from_pou_2", K, L)

rng = np.random.default_rng(1)
f = GridFunction((L,), rng.normal(size=N))

s = square_function(f, fam)
print("||Sf||_2 / ||f||_2 =", round(lp_norm(s, 2) / lp_norm(f, 2), 4))
print("S annihilates constants:",
      np.abs(square_function(GridFunction.constant(3.0, (L,)), fam).values).max())

# the linearization T_eps with random signs: L2 bound independent of the draw
ratios = []
for seed in range(8):
    eps = EpsilonSequence.rademacher(seed, range(1, K + 1))
    t = linearize(f, fam, fam_b, eps)
    ratios.append(lp_norm(t, 2) / lp_norm(f, 2))
print("T_eps L2 ratios over 8 sign draws:", [round(r, 4) for r in ratios])

# shifted variants grow at most linearly in the shift
for n in (0, 1, 2, 4):
    sn = square_function(f, fam, mode="shifted", n=n)
    print(f"||S^{n} f||_2 =", round(lp_norm(sn, 2), 4))

# bi-parameter hybrids on T^2: the SS of a tensor product factorizes
L2 = 8
fam2 = make_adapted_family("from_pou_1", L2 - 3, L2)
a, b = rng.normal(size=2**L2), rng.normal(size=2**L2)
f2 = GridFunction((L2, L2), np.outer(a, b))
ss = hybrid(f2, (fam2, fam2), "SS")
s1 = square_function(GridFunction((L2,), a), fam2)
s2 = square_function(GridFunction((L2,), b), fam2)
print("SS tensor factorization residual:",
      np.abs(ss.values - np.outer(s1.values, s2.values)).max())
for kind in ("MM", "MS", "SM"):
    out = hybrid(f2, (fam2, fam2), kind)
    print(f"||{kind} f||_2 =", round(float(np.sqrt(np.mean(np.abs(out.values) ** 2))), 4))

# and a tri-parameter sample cube
fam3 = make_adapted_family("from_pou_1", 3, 6)
cube = GridFunction3(rng.normal(size=(64, 64, 64)))
sss = hybrid3(cube, (fam3, fam3, fam3), "SSS")
print("||SSS f||_2 on a 64^3 cube:",
      round(float(np.sqrt(np.mean(np.abs(sss.values) ** 2))), 4))

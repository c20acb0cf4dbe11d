"""Grid functions on the torus: sampling, spectra, norms, convolution.

Everything downstream stands on this layer: functions are complex samples
on a 2^L-point grid, integrals are grid means, and the discrete transform
is normalized so a pure mode e^{2 pi i n x} has coefficient exactly 1.
"""

import numpy as np

from torusharmonics import (
    GridFunction,
    NormSpec,
    convolve,
    fourier_coefficients,
    inner_product,
    norm,
)

L = 10
N = 2**L

# a pure mode and a plateau of measure 1/2
mode = GridFunction.from_callable(lambda x: np.exp(2j * np.pi * x), (L,))
half = GridFunction.from_callable(lambda x: (x < 0.5).astype(complex), (L,))

spec = fourier_coefficients(mode)
print("coefficient of e^{2 pi i x} at n=1:", spec.coefficient(1))
print("largest coefficient elsewhere:", np.abs(np.delete(spec.coefficients, 1)).max())

# Plancherel: the grid pairing equals the spectral pairing
lhs = inner_product(half, mode)
sf, sg = fourier_coefficients(half), fourier_coefficients(mode)
rhs = np.sum(sf.coefficients * np.conj(sg.coefficients))
print("Plancherel gap:", abs(lhs - rhs))

# convolving the half indicator with itself gives the triangular bump,
# and spectral convolution matches the direct circular sum
direct = np.array([
    np.sum(half.values * np.roll(half.values[::-1], i + 1)) / N for i in range(N)
])
spectral = convolve(half, half)
print("convolution vs direct sum:", np.abs(spectral.values - direct).max())

# norms on the probability space: Lp, Linf, and the weak-Lp quasinorm
for spec_ in (NormSpec.lp(1), NormSpec.lp(2), NormSpec.linf(), NormSpec.weak(2)):
    print(f"{spec_.kind}({spec_.p if spec_.p else ''}) of the half indicator:",
          round(norm(half, spec_), 6))
print("weak-L2 of a quarter indicator (expect (1/4)^(1/2) = 0.5):",
      norm(GridFunction.from_callable(lambda x: (x < 0.25).astype(complex), (L,)),
           NormSpec.weak(2)))

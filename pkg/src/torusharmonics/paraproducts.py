"""Single- and bi-parameter bilinear paraproducts with shift variants.

The model operator pairs two inputs against adapted-family members over all
dyadic intervals (rectangles in two parameters) and re-expands against a
third family,

    T(f, g) = sum_I eps_I |I|^{-1/2} <phi^1_I, f> <phi^2_I, g> phi^3_I,

with L2-normalized members.  One slot per parameter axis may carry mean; the
others must be zero-mean.  Coefficients come from per-scale FFT correlations
and the output is assembled scale by scale with one convolution each.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridFunction
from .squares import (
    _alpha_offsets,
    convolve_train,
    correlation_lags,
    correlation_lags_2d,
)


@dataclass
class ParaproductSpec:
    """Families, mean-slot labels, scalars, and optional shifts.

    ``mean_slots`` holds the slot (1, 2, or 3) allowed to carry mean per
    parameter axis; families at the other slots must be zero-mean.
    """

    params: int
    families: tuple  # (fam1, fam2, fam3) or per-axis triples for params=2
    mean_slots: tuple[int, ...]
    epsilon: object
    shifts: tuple = ()
    average_alpha: bool = False
    max_offsets: int = 16

    def __post_init__(self):
        if self.params not in (1, 2):
            raise ValueError("parameter count must be 1 or 2")
        if len(self.mean_slots) != self.params:
            raise ValueError("one mean slot per parameter axis")
        if any(a not in (1, 2, 3) for a in self.mean_slots):
            raise ValueError("mean slots are labelled 1, 2, 3")
        if self.params == 1:
            fams = (self.families,)
        else:
            fams = self.families
        for axis, axis_fams in enumerate(fams):
            if len(axis_fams) != 3:
                raise ValueError("three families per parameter axis")
            for slot, fam in enumerate(axis_fams, start=1):
                if slot != self.mean_slots[axis] and not fam.zero_mean:
                    raise ValueError(
                        f"slot {slot} on axis {axis + 1} must be zero-mean "
                        f"(mean slot is {self.mean_slots[axis]})"
                    )
        if self.shifts and len(self.shifts) != 2:
            raise ValueError("shifts apply to the two input slots")


def paraproduct_1p(spec: ParaproductSpec, f: GridFunction, g: GridFunction) -> GridFunction:
    """Single-parameter bilinear paraproduct (optionally shifted/averaged)."""
    if spec.params != 1:
        raise ValueError("spec is not single-parameter")
    fam1, fam2, fam3 = spec.families
    for fam, h in ((fam1, f), (fam2, g)):
        if h.dims != 1 or h.log_sizes[0] != fam.log_size:
            raise ValueError("input grid does not match the family grid")
    log_size = fam1.log_size
    size = 2**log_size
    n1, n2 = spec.shifts if spec.shifts else (0, 0)
    scales = sorted(set(fam1.scales) & set(fam2.scales) & set(fam3.scales))
    out = np.zeros(size, dtype=np.complex128)
    for k in scales:
        lags_f = correlation_lags(f.values, fam1.prototype_values(k))
        lags_g = correlation_lags(g.values, fam2.prototype_values(k))
        step = 2 ** (log_size - k)
        base = np.arange(2**k) * step
        offsets = (
            _alpha_offsets(step, spec.max_offsets)
            if spec.average_alpha
            else np.array([0])
        )
        acc = np.zeros(size, dtype=np.complex128)
        eps_k = spec.epsilon.at(k)
        for o in offsets:
            cf = lags_f[(base + n1 * step + o) % size]
            cg = lags_g[(base + n2 * step + o) % size]
            # |I|^{-1/2} and three L2 normalizations against the raw lag and
            # member scalings leave a net 2^-k on the lag products
            weights = eps_k * cf * cg * 2.0**-k
            acc += np.roll(convolve_train(weights, step, fam3.prototype_values(k)), int(o))
        out += acc / len(offsets)
    return GridFunction(f.log_sizes, out)


def paraproduct_2p(spec: ParaproductSpec, f: GridFunction, g: GridFunction) -> GridFunction:
    """Bi-parameter bilinear paraproduct over dyadic rectangles."""
    if spec.params != 2:
        raise ValueError("spec is not bi-parameter")
    (ax1_fams, ax2_fams) = spec.families
    if f.dims != 2 or g.dims != 2:
        raise ValueError("bi-parameter paraproducts take 2D inputs")
    log1, log2 = ax1_fams[0].log_size, ax2_fams[0].log_size
    if f.log_sizes != (log1, log2) or g.log_sizes != (log1, log2):
        raise ValueError("input grids do not match the family grids")
    sz1, sz2 = 2**log1, 2**log2
    out = np.zeros((sz1, sz2), dtype=np.complex128)
    scales1 = sorted(set.intersection(*(set(fam.scales) for fam in ax1_fams)))
    scales2 = sorted(set.intersection(*(set(fam.scales) for fam in ax2_fams)))
    for k1 in scales1:
        step1 = 2 ** (log1 - k1)
        base1 = np.arange(2**k1) * step1
        for k2 in scales2:
            step2 = 2 ** (log2 - k2)
            base2 = np.arange(2**k2) * step2
            lags_f = correlation_lags_2d(
                f.values, ax1_fams[0].prototype_values(k1), ax2_fams[0].prototype_values(k2)
            )
            lags_g = correlation_lags_2d(
                g.values, ax1_fams[1].prototype_values(k1), ax2_fams[1].prototype_values(k2)
            )
            cf = lags_f[np.ix_(base1, base2)]
            cg = lags_g[np.ix_(base1, base2)]
            weights = spec.epsilon.at(k1, k2) * cf * cg * 2.0 ** (-(k1 + k2))
            train = np.zeros((sz1, sz2), dtype=np.complex128)
            train[::step1, ::step2] = weights
            kernel = np.outer(
                ax1_fams[2].prototype_values(k1), ax2_fams[2].prototype_values(k2)
            )
            out += np.fft.ifft2(np.fft.fft2(train) * np.fft.fft2(kernel))
    return GridFunction(f.log_sizes, out)


def paraproduct_pairing(
    spec: ParaproductSpec, f: GridFunction, g: GridFunction, h: GridFunction
) -> complex:
    """<T(f, g), h> computed directly from the three coefficient fields."""
    if spec.params != 1:
        raise ValueError("pairing helper covers the single-parameter case")
    fam1, fam2, fam3 = spec.families
    log_size = fam1.log_size
    size = 2**log_size
    total = 0.0 + 0.0j
    scales = sorted(set(fam1.scales) & set(fam2.scales) & set(fam3.scales))
    for k in scales:
        step = 2 ** (log_size - k)
        base = np.arange(2**k) * step
        cf = correlation_lags(f.values, fam1.prototype_values(k))[base]
        cg = correlation_lags(g.values, fam2.prototype_values(k))[base]
        ch = correlation_lags(h.values, fam3.prototype_values(k))[base]
        # three normalized coefficients against |I|^{-1/2}: net factor 2^-k
        total += complex(np.sum(spec.epsilon.at(k) * cf * cg * ch) * 2.0**-k)
    return total

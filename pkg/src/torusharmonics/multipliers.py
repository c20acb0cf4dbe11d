"""Multiplier symbols, Fourier-side application, and symbol decompositions.

Linear symbols act by coefficient-wise multiplication; bilinear (and
bi-parameter bilinear) operators are direct lattice sums over the retained
frequency band, with an aliasing guard keeping every output frequency
representable.  Symbol smoothness is probed by iterated unit-step finite
differences on the integer lattice, and the per-scale coefficient tables of
the cutoff symbols are computed by FFT quadrature on the side-2^k box.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bumps import PlateauProfile
from .grid import GridFunction, Spectrum, fourier_coefficients, inverse_transform

_CLASSES = ("marcinkiewicz", "coifman_meyer", "biparameter")


@dataclass
class MultiplierSymbol:
    """A multiplier symbol with its declared smoothness class.

    ``evaluate`` is a vectorized callback on integer arrays: one array for
    (arity 1, params 1), two for (2, 1), four for (2, 2).
    """

    name: str
    arity: int
    params: int
    evaluate: object
    declared_class: str
    order_budget: int = 4

    def __post_init__(self):
        if (self.arity, self.params) not in ((1, 1), (2, 1), (2, 2)):
            raise ValueError("supported shapes: 1 slot/1 param, 2/1, 2/2")
        if self.declared_class not in _CLASSES:
            raise ValueError(f"unknown symbol class {self.declared_class!r}")

    @property
    def lattice_dim(self) -> int:
        return self.arity * self.params

    def __call__(self, *args):
        return self.evaluate(*[np.asarray(a, dtype=float) for a in args])


def _sgn(t):
    return np.sign(t)


def symbol_registry() -> dict[str, MultiplierSymbol]:
    """Built-in symbols used by the demos, the CLI, and the harness."""

    def hilbert(t):
        return -1j * _sgn(t)

    def oscillatory(t, gamma=1.0):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t, dtype=complex)
        nz = t != 0
        out[nz] = np.exp(1j * gamma * np.log(np.abs(t[nz])))
        return out

    def mean_remover(t):
        return (np.asarray(t) != 0).astype(complex)

    def ratio_x2(s, t):
        s, t = np.broadcast_arrays(np.asarray(s, float), np.asarray(t, float))
        denom = s**2 + t**2
        out = np.zeros(denom.shape, dtype=complex)
        nz = denom != 0
        out[nz] = s[nz] ** 2 / denom[nz]
        return out

    def ratio_xy(s, t):
        s, t = np.broadcast_arrays(np.asarray(s, float), np.asarray(t, float))
        denom = s**2 + t**2
        out = np.zeros(denom.shape, dtype=complex)
        nz = denom != 0
        out[nz] = (s * t)[nz] / denom[nz]
        return out

    def biparam_product(s1, s2, t1, t2):
        return ratio_x2(s1, t1) * ratio_xy(s2, t2)

    reg = {
        "constant": MultiplierSymbol(
            "constant", 1, 1, lambda t: np.ones_like(np.asarray(t, float), dtype=complex),
            "marcinkiewicz",
        ),
        "hilbert": MultiplierSymbol("hilbert", 1, 1, hilbert, "marcinkiewicz"),
        "oscillatory": MultiplierSymbol("oscillatory", 1, 1, oscillatory, "marcinkiewicz"),
        "mean_remover": MultiplierSymbol("mean_remover", 1, 1, mean_remover, "marcinkiewicz"),
        "bilinear_constant": MultiplierSymbol(
            "bilinear_constant", 2, 1,
            lambda s, t: np.ones(np.broadcast(s, t).shape, dtype=complex),
            "coifman_meyer",
        ),
        "ratio_x2": MultiplierSymbol("ratio_x2", 2, 1, ratio_x2, "coifman_meyer"),
        "ratio_xy": MultiplierSymbol("ratio_xy", 2, 1, ratio_xy, "coifman_meyer"),
        "biparameter_product": MultiplierSymbol(
            "biparameter_product", 2, 2, biparam_product, "biparameter", 8
        ),
        "biparameter_constant": MultiplierSymbol(
            "biparameter_constant", 2, 2,
            lambda s1, s2, t1, t2: np.ones(np.broadcast(s1, s2, t1, t2).shape, dtype=complex),
            "biparameter", 8,
        ),
    }
    return reg


def apply_1d(m: MultiplierSymbol, f: GridFunction) -> GridFunction:
    """Lambda_m f: multiply the Fourier coefficients by m(n), m(0) included."""
    if (m.arity, m.params) != (1, 1) or f.dims != 1:
        raise ValueError("apply_1d needs a 1-slot 1-parameter symbol and 1D input")
    spec = fourier_coefficients(f)
    freqs = spec.frequencies()
    return inverse_transform(Spectrum(f.log_sizes, m(freqs) * spec.coefficients))


def band_limit(f: GridFunction, band: int) -> GridFunction:
    """Zero all coefficients with any |n_axis| > band."""
    spec = fourier_coefficients(f)
    coeffs = np.array(spec.coefficients)
    if f.dims == 1:
        coeffs[np.abs(spec.frequencies()) > band] = 0.0
    else:
        f1 = np.abs(spec.frequencies(0))[:, None]
        f2 = np.abs(spec.frequencies(1))[None, :]
        coeffs[(f1 > band) | (f2 > band)] = 0.0
    return inverse_transform(Spectrum(f.log_sizes, coeffs))


def _check_band(f: GridFunction, band: int, who: str):
    spec = fourier_coefficients(f)
    if f.dims == 1:
        mask = np.abs(spec.frequencies()) > band
        leak = np.abs(spec.coefficients[mask]).max() if mask.any() else 0.0
    else:
        f1 = np.abs(spec.frequencies(0))[:, None]
        f2 = np.abs(spec.frequencies(1))[None, :]
        mask = (f1 > band) | (f2 > band)
        leak = np.abs(spec.coefficients[mask]).max() if mask.any() else 0.0
    if leak > 1e-12:
        raise ValueError(
            f"{who} is not band-limited to |n| <= {band} (leak {leak:.2e}); "
            "band_limit() the inputs first"
        )
    return spec


def apply_bilinear(m: MultiplierSymbol, f: GridFunction, g: GridFunction) -> GridFunction:
    """Lambda_m(f, g)(x) = sum_{s,t} m(s,t) f_hat(s) g_hat(t) e^{2 pi i x(s+t)}.

    Inputs must be band-limited to |n| <= N/4 so that the output frequencies
    s + t stay below the Nyquist band; the sum is a direct lattice sum.
    """
    if (m.arity, m.params) != (2, 1):
        raise ValueError("apply_bilinear needs a 2-slot 1-parameter symbol")
    if f.dims != 1 or f.log_sizes != g.log_sizes:
        raise ValueError("inputs must be matching 1D grid functions")
    n = f.sizes[0]
    band = n // 4
    fspec = _check_band(f, band, "first input")
    gspec = _check_band(g, band, "second input")
    s = np.arange(-band, band + 1)
    fs = np.array([fspec.coefficient(int(v)) for v in s])
    gs = np.array([gspec.coefficient(int(v)) for v in s])
    mesh_s, mesh_t = np.meshgrid(s, s, indexing="ij")
    weights = m(mesh_s, mesh_t) * np.outer(fs, gs)
    out_freq = (mesh_s + mesh_t).ravel() % n
    coeffs = np.bincount(out_freq, weights=weights.ravel().real, minlength=n).astype(
        complex
    )
    coeffs += 1j * np.bincount(out_freq, weights=weights.ravel().imag, minlength=n)
    return inverse_transform(Spectrum(f.log_sizes, coeffs))


def apply_biparameter(
    m: MultiplierSymbol, f: GridFunction, g: GridFunction, band: int | None = None
) -> GridFunction:
    """Bi-parameter bilinear operator on T^2 by direct lattice summation.

    The retained band per axis is min(N_axis // 4, 32) unless overridden;
    inputs must be band-limited accordingly.
    """
    if (m.arity, m.params) != (2, 2):
        raise ValueError("apply_biparameter needs a 2-slot 2-parameter symbol")
    if f.dims != 2 or f.log_sizes != g.log_sizes:
        raise ValueError("inputs must be matching 2D grid functions")
    n1, n2 = f.sizes
    if band is None:
        band = min(n1 // 4, n2 // 4, 32)
    if band > min(n1, n2) // 4:
        raise ValueError(f"band {band} exceeds the aliasing guard {min(n1, n2) // 4}")
    fspec = _check_band(f, band, "first input")
    gspec = _check_band(g, band, "second input")
    rng = np.arange(-band, band + 1)
    fgrid = np.array(
        [[fspec.coefficient((int(a), int(b))) for b in rng] for a in rng]
    )
    ggrid = np.array(
        [[gspec.coefficient((int(a), int(b))) for b in rng] for a in rng]
    )
    t1g, t2g = np.meshgrid(rng, rng, indexing="ij")
    out = np.zeros((n1, n2), dtype=complex)
    for i, s1 in enumerate(rng):
        for j, s2 in enumerate(rng):
            fc = fgrid[i, j]
            if fc == 0.0:
                continue
            weights = m(s1, s2, t1g, t2g) * fc * ggrid
            rows = (s1 + t1g).ravel() % n1
            cols = (s2 + t2g).ravel() % n2
            flat = rows * n2 + cols
            out_flat = np.bincount(flat, weights=weights.ravel().real, minlength=n1 * n2)
            out_flat = out_flat + 1j * np.bincount(
                flat, weights=weights.ravel().imag, minlength=n1 * n2
            )
            out += out_flat.reshape(n1, n2)
    return inverse_transform(Spectrum(f.log_sizes, out))


def split_mean_term(m: MultiplierSymbol, f: GridFunction):
    """(m(0) f_hat(0) constant term, remainder operator output).

    Mirrors the reduction that assumes m vanishes at the origin.
    """
    spec = fourier_coefficients(f)
    m0 = complex(np.asarray(m(np.array([0]))).ravel()[0])
    mean_term = m0 * spec.coefficient(0)
    out = apply_1d(m, f)
    return mean_term, GridFunction(f.log_sizes, out.values - mean_term)


# --- finite-difference validation -------------------------------------------


def _iter_multi_indices(dim: int, max_order: int):
    if dim == 1:
        for o in range(max_order + 1):
            yield (o,)
        return
    for o in range(max_order + 1):
        for head in range(o + 1):
            for rest in _iter_multi_indices(dim - 1, o - head):
                if sum(rest) == o - head:
                    yield (head,) + rest


def _forward_difference(values: np.ndarray, axis: int, times: int) -> np.ndarray:
    for _ in range(times):
        values = np.diff(values, axis=axis)
    return values


@dataclass
class SymbolValidation:
    symbol: str
    declared_class: str
    probe_radius: int
    constants: dict[tuple, float]
    ceiling: float
    passed: bool

    def worst(self) -> float:
        return max(self.constants.values(), default=0.0)


def validate_symbol(
    m: MultiplierSymbol,
    probe_radius: int = 32,
    max_order: int | None = None,
    ceiling: float = 1e4,
) -> SymbolValidation:
    """Probe the declared derivative bounds by lattice finite differences.

    For each multi-index alpha up to the order budget, the report holds
    sup |Delta^alpha m| * w(t)^{|alpha|-weights} over the probe region, with
    w per the declared class (|t|, ||t||, or the per-parameter-group norms).
    Stencils touching the symbol's singular set are excluded.
    """
    if probe_radius < 16:
        raise ValueError("probe_radius must be >= 16")
    if max_order is None:
        max_order = min(m.order_budget, 4)
    dim = m.lattice_dim
    axes = [np.arange(-probe_radius, probe_radius + 1)] * dim
    mesh = np.meshgrid(*axes, indexing="ij")
    values = m(*mesh)
    constants: dict[tuple, float] = {}
    for alpha in _iter_multi_indices(dim, max_order):
        diff = values
        for axis, times in enumerate(alpha):
            diff = _forward_difference(diff, axis, times)
        # stencil base points: t .. t + alpha per axis
        base = np.meshgrid(
            *[
                np.arange(-probe_radius, probe_radius + 1 - a)
                for a in alpha
            ],
            indexing="ij",
        )
        weight, singular = _class_weight(m.declared_class, base, alpha, dim)
        mask = ~singular
        if not mask.any():
            constants[alpha] = 0.0
            continue
        constants[alpha] = float(np.max(np.abs(diff[mask]) * weight[mask]))
    passed = all(v <= ceiling for v in constants.values())
    return SymbolValidation(m.name, m.declared_class, probe_radius, constants, ceiling, passed)


def _class_weight(declared_class, base, alpha, dim):
    """(weight, singular-stencil mask) for the class's derivative bounds."""

    def span_crosses_zero(coord, order):
        return (coord <= 0) & (coord + order >= 0)

    if declared_class == "marcinkiewicz":
        t = base[0]
        singular = span_crosses_zero(t, alpha[0])
        weight = np.abs(t, dtype=float) ** alpha[0]
        return weight, singular
    if declared_class == "coifman_meyer":
        norm = np.sqrt(sum(b.astype(float) ** 2 for b in base))
        # the stencil box contains the origin iff every axis's span crosses 0
        singular = np.logical_and.reduce(
            [span_crosses_zero(b, a) for b, a in zip(base, alpha)]
        )
        weight = norm ** sum(alpha)
        return weight, singular
    # biparameter: weights per parameter group rho_1 = (axes 0, 2), rho_2 = (1, 3)
    group1 = (0, 2) if dim == 4 else (0,)
    group2 = (1, 3) if dim == 4 else (1,)
    norm1 = np.sqrt(sum(base[i].astype(float) ** 2 for i in group1))
    norm2 = np.sqrt(sum(base[i].astype(float) ** 2 for i in group2))
    sing1 = np.logical_and.reduce([span_crosses_zero(base[i], alpha[i]) for i in group1])
    sing2 = np.logical_and.reduce([span_crosses_zero(base[i], alpha[i]) for i in group2])
    weight = norm1 ** sum(alpha[i] for i in group1) * norm2 ** sum(
        alpha[i] for i in group2
    )
    return weight, sing1 | sing2


# --- per-scale coefficient tables -------------------------------------------


@dataclass
class SymbolCoefficients:
    """Fourier coefficients of the cutoff symbol m_k on its side-2^k box."""

    scale: tuple[int, ...]
    block: tuple[int, ...]
    frequencies: np.ndarray
    table: np.ndarray
    decay_target: float

    def decay_products(self) -> np.ndarray:
        """(|n|+1)^p |c_n| per entry (per-axis product in 2D)."""
        if self.table.ndim == 1:
            return (np.abs(self.frequencies) + 1.0) ** self.decay_target * np.abs(
                self.table
            )
        w1 = (np.abs(self.frequencies) + 1.0) ** self.decay_target
        return np.abs(self.table) * np.outer(w1, w1)


#: cutoff for the linear symbol decomposition: 1 on [1/16, 1/4], 0 outside
#: [1/32, 1/2] (mirrored evenly), matching the pou annulus after scaling
_LINEAR_CUTOFF = PlateauProfile(1.0 / 32, 1.0 / 16, 1.0 / 4, 1.0 / 2)


def _linear_cutoff(t):
    return _LINEAR_CUTOFF(np.abs(np.asarray(t, dtype=float)))


def symbol_coefficients(
    m: MultiplierSymbol,
    scale: int,
    block: int | tuple[int, int] | None = None,
    points_per_unit: int = 8,
    n_max: int | None = None,
) -> SymbolCoefficients:
    """Coefficient table of the cutoff symbol at one scale (and block).

    Linear case: m_k(t) = m(t) cutoff(2^-k t), expanded in e^{-2 pi i n 2^-k t}
    on the side-2^k interval; the table decays like (|n|+1)^-4.  Bilinear
    case (block a in {1,2,3}): the 2D cutoff of the trilinear splits, decay
    (|n1|+1)^-5 (|n2|+1)^-5.
    """
    k = scale
    if m.lattice_dim == 1:
        # >= points_per_unit samples per unit frequency, with a floor so the
        # cutoff's transition regions (width 2^k/32) keep >= 32 samples
        q = max(max(8, points_per_unit) * 2**k, 1024)
        x = (np.arange(q) - q // 2) * (2.0**k / q)
        vals = m(x) * _linear_cutoff(x * 2.0**-k)
        # c_{k,n} = 2^-k int m_k(x) e^{2 pi i n 2^-k x} dx: the Riemann sum on
        # the centered samples is e^{-i pi n} ifft(vals)[n]
        freqs = np.arange(-(q // 2), q - q // 2)
        table = np.fft.fftshift(np.fft.ifft(vals)) * (-1.0) ** freqs
        if n_max is not None:
            keep = np.abs(freqs) <= n_max
            freqs, table = freqs[keep], table[keep]
        return SymbolCoefficients((k,), (), freqs, table, 4.0)
    if m.lattice_dim == 2:
        a = int(block or 1)
        # floor keeps >= 8 samples across the narrowest cutoff transition
        q = max(max(4, points_per_unit) * 2**k, 2048)
        x = (np.arange(q) - q // 2) * (2.0**k / q)
        cut = _bilinear_cutoff(a, x[:, None] * 2.0**-k, x[None, :] * 2.0**-k)
        vals = m(x[:, None], x[None, :]) * cut
        freqs = np.arange(-(q // 2), q - q // 2)
        sign = (-1.0) ** freqs
        table = np.fft.fftshift(np.fft.ifft2(vals)) * np.outer(sign, sign)
        if n_max is not None:
            keep = np.abs(freqs) <= n_max
            table = table[np.ix_(keep, keep)]
            freqs = freqs[keep]
        return SymbolCoefficients((k,), (a,), freqs, table, 5.0)
    raise ValueError("coefficient tables cover 1D and 2D symbol lattices")


# the trilinear split's per-block supports (after 2^-k scaling): the strictly
# frequency-localized slot lives in the annulus [2^-7, 2^-5], the ball slots
# in [-2^-8, 2^-8] (blocks 1, 2) or [-2^-3, 2^-3] (block 3).  The cutoffs are
# 1 there and vanish near the symbol's singular origin; their transition
# widths are sized to stay resolvable by the box quadrature; narrower
# inner edges would only inflate constants without adding support.
_BILINEAR_ANNULUS = PlateauProfile(2.0**-8, 2.0**-7, 2.0**-5, 2.0**-4)
_BILINEAR_BALL_SMALL = PlateauProfile(-(2.0**-6), -(2.0**-8), 2.0**-8, 2.0**-6)
_BILINEAR_BALL_BIG = PlateauProfile(-(2.0**-2), -(2.0**-3), 2.0**-3, 2.0**-2)


def _bilinear_cutoff(a: int, s, t):
    """2D cutoff equal to 1 on the (a)-block's frequency support."""
    if a == 1:
        return _BILINEAR_BALL_SMALL(s) * _BILINEAR_ANNULUS(np.abs(t))
    if a == 2:
        return _BILINEAR_ANNULUS(np.abs(s)) * _BILINEAR_BALL_SMALL(t)
    if a == 3:
        return _BILINEAR_ANNULUS(np.abs(s)) * _BILINEAR_BALL_BIG(t)
    raise ValueError("block must be 1, 2, or 3")


def reassembly_residual(
    m: MultiplierSymbol, coeffs: SymbolCoefficients, annulus: np.ndarray
) -> float:
    """max |sum_n c_n e^{-2 pi i n 2^-k t} - m(t)| over the matched annulus."""
    k = coeffs.scale[0]
    t = np.asarray(annulus, dtype=float)
    phases = np.exp(-2j * np.pi * np.outer(t * 2.0**-k, coeffs.frequencies))
    recon = phases @ coeffs.table
    return float(np.abs(recon - m(t)).max())


def trilinear_pairing_check(f: GridFunction, g: GridFunction, h: GridFunction):
    """(lattice sum, grid integral, gap) for sum f_hat(s) g_hat(t) h_hat(-s-t)."""
    n = f.sizes[0]
    band = n // 4
    fspec = _check_band(f, band, "f")
    gspec = _check_band(g, band, "g")
    hspec = fourier_coefficients(h)
    _check_band(h, n // 2 - 1, "h")
    s = np.arange(-band, band + 1)
    fs = np.array([fspec.coefficient(int(v)) for v in s])
    gs = np.array([gspec.coefficient(int(v)) for v in s])
    mesh_s, mesh_t = np.meshgrid(s, s, indexing="ij")
    hvals = hspec.coefficients[(-(mesh_s + mesh_t)) % n]
    lattice = complex(np.sum(np.outer(fs, gs) * hvals))
    integral = (f * g * h).mean()
    return lattice, integral, abs(lattice - integral)

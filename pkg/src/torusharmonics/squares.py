"""Littlewood-Paley square functions, linearizations, and hybrid operators.

Every operator here is assembled from coefficient fields <phi_I, f> computed
with one FFT correlation per scale (per scale pair in 2D): the correlation
array holds the pairing against the prototype translated to *every* grid
lag, and dyadic (or shifted / fractionally shifted) intervals read off their
lags by striding.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bumps import AdaptedFamily
from .grid import GridFunction


def correlation_lags(fvals: np.ndarray, proto: np.ndarray) -> np.ndarray:
    """c[s] = (1/N) sum_x proto(x - s) conj(f(x)), all lags via FFT."""
    n = proto.shape[0]
    fh = np.fft.fft(np.conj(fvals), axis=-1)
    ph = np.fft.fft(proto)
    return np.fft.ifft(fh * ph, axis=-1) / n


def correlation_lags_2d(fvals: np.ndarray, proto1: np.ndarray, proto2: np.ndarray):
    """c[s1, s2] = (1/N1 N2) sum proto1(x-s1) proto2(y-s2) conj(f(x, y))."""
    fh = np.fft.fft2(np.conj(fvals))
    ph = np.outer(np.fft.fft(proto1), np.fft.fft(proto2))
    return np.fft.ifft2(fh * ph) / fvals.size


def place_on_grid(weights: np.ndarray, step: int, n: int) -> np.ndarray:
    out = np.zeros(n, dtype=np.complex128)
    out[::step] = weights
    return out


def convolve_train(weights: np.ndarray, step: int, proto: np.ndarray) -> np.ndarray:
    """sum_j weights[j] proto(x - j*step), via one circular convolution."""
    n = proto.shape[0]
    train = place_on_grid(weights, step, n)
    return np.fft.ifft(np.fft.fft(train) * np.fft.fft(proto))


@dataclass
class EpsilonSequence:
    """Per-interval scalars, normalized to |eps| <= 1 on construction."""

    scales: dict[int, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        sup = max((np.abs(v).max() for v in self.scales.values() if v.size), default=0.0)
        if sup > 1.0:
            self.scales = {k: v / sup for k, v in self.scales.items()}

    def at(self, k: int) -> np.ndarray:
        return self.scales[k]

    @staticmethod
    def constant(value, k_range) -> "EpsilonSequence":
        return EpsilonSequence({k: np.full(2**k, value, dtype=complex) for k in k_range})

    @staticmethod
    def rademacher(seed: int, k_range) -> "EpsilonSequence":
        rng = np.random.default_rng(seed)
        return EpsilonSequence(
            {k: rng.choice([-1.0, 1.0], size=2**k).astype(complex) for k in k_range}
        )


@dataclass
class EpsilonField2D:
    """Per-rectangle scalars indexed by scale pairs."""

    scales: dict[tuple[int, int], np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        sup = max((np.abs(v).max() for v in self.scales.values() if v.size), default=0.0)
        if sup > 1.0:
            self.scales = {k: v / sup for k, v in self.scales.items()}

    def at(self, k1: int, k2: int) -> np.ndarray:
        return self.scales[(k1, k2)]

    @staticmethod
    def rademacher(seed: int, ks1, ks2) -> "EpsilonField2D":
        rng = np.random.default_rng(seed)
        return EpsilonField2D(
            {
                (k1, k2): rng.choice([-1.0, 1.0], size=(2**k1, 2**k2)).astype(complex)
                for k1 in ks1
                for k2 in ks2
            }
        )

    @staticmethod
    def separable(eps1: EpsilonSequence, eps2: EpsilonSequence) -> "EpsilonField2D":
        return EpsilonField2D(
            {
                (k1, k2): np.outer(eps1.at(k1), eps2.at(k2))
                for k1 in eps1.scales
                for k2 in eps2.scales
            }
        )


def _alpha_offsets(step: int, max_offsets: int = 64) -> np.ndarray:
    """Grid-representable fractional shifts at one scale, stride-subsampled."""
    stride = max(1, step // max_offsets)
    return np.arange(0, step, stride)


@dataclass
class CoefficientField:
    """Per-scale arrays of pairings <phi_{I^n_alpha}, f> over dyadic I."""

    family: AdaptedFamily
    shift: tuple[int, float]
    scales: dict[int, np.ndarray]

    def at(self, k: int) -> np.ndarray:
        return self.scales[k]


def coefficient_field(
    f: GridFunction, fam: AdaptedFamily, n: int = 0, alpha: float = 0.0
) -> CoefficientField:
    """All pairings <phi_{I^n_alpha}, f>, one FFT correlation per scale.

    ``alpha`` is snapped to the nearest grid-representable shift per scale.
    """
    if f.dims != 1 or f.log_sizes[0] != fam.log_size:
        raise ValueError("input grid does not match the family grid")
    log_size = fam.log_size
    scales = {}
    for k in fam.scales:
        lags = correlation_lags(f.values, fam.prototype_values(k))
        step = 2 ** (log_size - k)
        offset = int(round(alpha * step)) % (2**log_size)
        idx = (np.arange(2**k) + n) % 2**k
        scales[k] = 2.0**-k * lags[(idx * step + offset) % 2**log_size]
    return CoefficientField(fam, (n, alpha), scales)


def square_function(
    f: GridFunction,
    fam: AdaptedFamily,
    mode: str = "plain",
    n: int = 0,
    max_offsets: int = 64,
) -> GridFunction:
    """Sf(x) = (sum_I |<phi_I., f>|^2 / |I| chi_I(x))^{1/2} over dyadic I.

    mode 'shifted' pairs against phi_{I^n}; 'shifted_sup' additionally takes
    the sup over grid-representable fractional shifts per scale.
    """
    if not fam.zero_mean:
        raise ValueError("square function requires a zero-mean family")
    if f.dims != 1 or f.log_sizes[0] != fam.log_size:
        raise ValueError("input grid does not match the family grid")
    if mode not in ("plain", "shifted", "shifted_sup"):
        raise ValueError(f"unknown square function mode {mode!r}")
    if mode == "plain":
        n = 0
    log_size = fam.log_size
    size = 2**log_size
    total = np.zeros(size)
    for k in fam.scales:
        lags = correlation_lags(f.values, fam.prototype_values(k))
        step = 2 ** (log_size - k)
        starts = ((np.arange(2**k) + n) * step) % size
        if mode == "shifted_sup":
            offsets = _alpha_offsets(step, max_offsets)
            gathered = np.abs(lags[(starts[:, None] + offsets[None, :]) % size])
            level = gathered.max(axis=1)
        else:
            level = np.abs(lags[starts])
        # normalized coefficient / sqrt|I| contributes |c|^2 * 4^k with the
        # raw 2^-k lag scaling folded in: (2^-k |lag| * 2^{k/2})^2 * 2^k
        total += np.repeat(level**2, step)
    return GridFunction(f.log_sizes, np.sqrt(total))


def linearize(
    f: GridFunction,
    fam1: AdaptedFamily,
    fam2: AdaptedFamily,
    eps: EpsilonSequence,
    n: int = 0,
    average_alpha: bool = False,
    max_offsets: int = 64,
) -> GridFunction:
    """T_eps f = sum_I eps_I <phi^1_I, f> phi^2_I with normalized members.

    With ``average_alpha`` the inner family is shifted by ``n`` and the sum
    is averaged over the grid-representable fractional shifts of both
    families (the discretization of the integral over alpha).
    """
    for fam in (fam1, fam2):
        if not fam.zero_mean:
            raise ValueError("linearization requires zero-mean families")
        if f.dims != 1 or f.log_sizes[0] != fam.log_size:
            raise ValueError("input grid does not match the family grid")
    log_size = fam1.log_size
    size = 2**log_size
    scales = sorted(set(fam1.scales) & set(fam2.scales))
    out = np.zeros(size, dtype=np.complex128)
    for k in scales:
        lags = correlation_lags(f.values, fam1.prototype_values(k))
        step = 2 ** (log_size - k)
        starts = ((np.arange(2**k) + n) * step) % size
        offsets = _alpha_offsets(step, max_offsets) if average_alpha else np.array([0])
        acc = np.zeros(size, dtype=np.complex128)
        for o in offsets:
            # eps <phi^1_norm, f> phi^2_norm = eps 2^-k lag psi^2(x - j step)
            weights = 2.0**-k * eps.at(k) * lags[(starts + o) % size]
            acc += np.roll(
                convolve_train(weights, step, fam2.prototype_values(k)), int(o)
            )
        out += acc / len(offsets)
    return GridFunction(f.log_sizes, out)


_HYBRID_KINDS = ("MM", "MS", "SM", "SS")


def hybrid(
    f: GridFunction,
    fam_pair: tuple[AdaptedFamily, AdaptedFamily],
    kind: str = "SS",
    shifts: tuple[int, int] = (0, 0),
    sup_alpha: bool = False,
    max_offsets: int = 16,
) -> GridFunction:
    """Bi-parameter hybrid operators on T^2 built from tensor coefficients.

    With A_R = |<phi_R, f>| / (|I| |J|) on R = I x J:
      MM = sup_R A_R chi_R,     SS = (sum_R A_R^2 chi_R)^{1/2},
      MS = sup over the first axis of the second-axis square aggregate,
      SM = second-axis sup inside the first-axis square aggregate.
    The S-slots require the corresponding family to be zero-mean.
    """
    if kind not in _HYBRID_KINDS:
        raise ValueError(f"unknown hybrid kind {kind!r}")
    fam1, fam2 = fam_pair
    if f.dims != 2:
        raise ValueError("hybrid operators act on 2D grid functions")
    if f.log_sizes != (fam1.log_size, fam2.log_size):
        raise ValueError("input grid does not match the family grids")
    if kind[0] == "S" and not fam1.zero_mean:
        raise ValueError("first-axis S slot requires a zero-mean family")
    if kind[1] == "S" and not fam2.zero_mean:
        raise ValueError("second-axis S slot requires a zero-mean family")
    n1, n2 = f.sizes
    # per (k1, k2): A over the grid (repeated to sample resolution)
    per_k1: dict[int, np.ndarray] = {}
    for k1 in fam1.scales:
        step1 = 2 ** (fam1.log_size - k1)
        acc1 = None
        for k2 in fam2.scales:
            step2 = 2 ** (fam2.log_size - k2)
            amp = _rect_coeff_amplitude(
                f, fam1, fam2, k1, k2, shifts, sup_alpha, max_offsets
            )
            grid_amp = np.repeat(np.repeat(amp, step1, axis=0), step2, axis=1)
            if kind[1] == "S":
                contrib = grid_amp**2
                acc1 = contrib if acc1 is None else acc1 + contrib
            else:
                acc1 = grid_amp if acc1 is None else np.maximum(acc1, grid_amp)
        per_k1[k1] = acc1
    stack = np.stack([per_k1[k1] for k1 in fam1.scales])
    if kind[0] == "S":
        if kind[1] == "S":
            out = np.sqrt(stack.sum(axis=0))
        else:
            out = np.sqrt((stack**2).sum(axis=0))
    else:
        if kind[1] == "S":
            out = np.sqrt(stack).max(axis=0)
        else:
            out = stack.max(axis=0)
    return GridFunction(f.log_sizes, out)


def _rect_coeff_amplitude(f, fam1, fam2, k1, k2, shifts, sup_alpha, max_offsets):
    """|<phi_R, f>| / |R| over dyadic rectangles at one scale pair."""
    log1, log2 = fam1.log_size, fam2.log_size
    n1s, n2s = 2**log1, 2**log2
    step1 = 2 ** (log1 - k1)
    step2 = 2 ** (log2 - k2)
    lags = correlation_lags_2d(
        f.values, fam1.prototype_values(k1), fam2.prototype_values(k2)
    )
    starts1 = ((np.arange(2**k1) + shifts[0]) * step1) % n1s
    starts2 = ((np.arange(2**k2) + shifts[1]) * step2) % n2s
    if not sup_alpha:
        # raw pairing is 2^(-k1-k2) * lag and |R| = 2^(-k1-k2): they cancel
        return np.abs(lags[np.ix_(starts1, starts2)])
    off1 = _alpha_offsets(step1, max_offsets)
    off2 = _alpha_offsets(step2, max_offsets)
    best = np.zeros((2**k1, 2**k2))
    for o1 in off1:
        rows = (starts1 + o1) % n1s
        sub = np.abs(lags[np.ix_(rows, (starts2[:, None] + off2[None, :]).ravel() % n2s)])
        sub = sub.reshape(2**k1, 2**k2, len(off2)).max(axis=2)
        best = np.maximum(best, sub)
    return best


def hybrid3(
    f: GridFunction3,
    fams: tuple[AdaptedFamily, AdaptedFamily, AdaptedFamily],
    kind: str = "SSS",
) -> "GridFunction3":
    """Tri-parameter hybrid operators on a 3D sample cube.

    ``kind`` is a word in {S, M}^3; permuted kinds are handled by axis
    transposition onto the canonical S-before-M ordering of aggregates.
    """
    if len(kind) != 3 or any(c not in "SM" for c in kind):
        raise ValueError("kind must be a three-letter word over {S, M}")
    for axis, (fam, c) in enumerate(zip(fams, kind)):
        if c == "S" and not fam.zero_mean:
            raise ValueError(f"axis {axis} S slot requires a zero-mean family")
    if f.values.ndim != 3:
        raise ValueError("hybrid3 needs a 3D cube")
    sizes = f.values.shape
    logs = tuple(int(np.log2(s)) for s in sizes)

    # amplitude cube per scale triple, aggregated innermost axis first
    def aggregate(arrays, op):
        if op == "S":
            return np.sqrt(sum(a**2 for a in arrays))
        return np.max(np.stack(arrays), axis=0)

    ax1_aggs = []
    for k1 in fams[0].scales:
        step1 = 2 ** (logs[0] - k1)
        ax2_aggs = []
        for k2 in fams[1].scales:
            step2 = 2 ** (logs[1] - k2)
            inner = []
            for k3 in fams[2].scales:
                step3 = 2 ** (logs[2] - k3)
                amp = _cube_coeff_amplitude(f.values, fams, (k1, k2, k3), logs)
                grid_amp = amp
                for axis, step in enumerate((step1, step2, step3)):
                    grid_amp = np.repeat(grid_amp, step, axis=axis)
                inner.append(grid_amp)
            ax2_aggs.append(aggregate(inner, kind[2]))
        ax1_aggs.append(aggregate(ax2_aggs, kind[1]))
    out = aggregate(ax1_aggs, kind[0])
    return GridFunction3(out)


def _cube_coeff_amplitude(vals, fams, ks, logs):
    k1, k2, k3 = ks
    fh = np.fft.fftn(np.conj(vals))
    ph = (
        np.fft.fft(fams[0].prototype_values(k1))[:, None, None]
        * np.fft.fft(fams[1].prototype_values(k2))[None, :, None]
        * np.fft.fft(fams[2].prototype_values(k3))[None, None, :]
    )
    lags = np.fft.ifftn(fh * ph) / vals.size
    idx = [
        (np.arange(2**k) * 2 ** (log - k)) % (2**log)
        for k, log in zip(ks, logs)
    ]
    coeff = lags[np.ix_(*idx)]
    # |<phi_Q, f>| / |Q| with the member 2^-k scalings folded in
    return np.abs(coeff)


@dataclass(frozen=True)
class GridFunction3:
    """Minimal 3D sample cube used only by the tri-parameter operators."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.ndim != 3:
            raise ValueError("expected a 3D array")
        for s in vals.shape:
            if s & (s - 1) or s < 8:
                raise ValueError("cube sides must be powers of two >= 8")
        object.__setattr__(self, "values", vals)

    @staticmethod
    def from_callable(func, log_sizes) -> "GridFunction3":
        axes = [np.arange(2**L) / 2**L for L in log_sizes]
        x, y, z = np.meshgrid(*axes, indexing="ij")
        return GridFunction3(func(x, y, z))

"""Maximal operators and Calderon-Zygmund stopping-time decompositions.

The Hardy-Littlewood maximal function is computed exactly over *all*
grid-aligned torus intervals (every run of whole cells, wrapping allowed)
with prefix sums and O(N) sliding-window maxima per width, so downstream
constants carry no approximation ambiguity.  The strong maximal function
restricts to rectangles with power-of-two side lengths at arbitrary offsets
(any rectangle is contained in one of that class with at most 4x the area).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bumps import AdaptedFamily
from .dyadic import DyadicInterval, star
from .grid import GridFunction


def _sliding_max(arr: np.ndarray, w: int) -> np.ndarray:
    """Cyclic sliding max along the last axis: out[s] = max arr[s : s+w]."""
    n = arr.shape[-1]
    if w <= 1:
        return arr.copy()
    ext = np.concatenate([arr, arr[..., : w - 1]], axis=-1)
    m = ext.shape[-1]
    nblocks = -(-m // w)
    pad = nblocks * w - m
    if pad:
        pad_block = np.full(ext.shape[:-1] + (pad,), -np.inf)
        ext = np.concatenate([ext, pad_block], axis=-1)
    blocks = ext.reshape(ext.shape[:-1] + (nblocks, w))
    prefix = np.maximum.accumulate(blocks, axis=-1).reshape(ext.shape[:-1] + (-1,))
    suffix = np.maximum.accumulate(blocks[..., ::-1], axis=-1)[..., ::-1]
    suffix = suffix.reshape(ext.shape[:-1] + (-1,))
    return np.maximum(suffix[..., : m - w + 1], prefix[..., w - 1 : m])


def _window_means(absvals: np.ndarray, w: int) -> np.ndarray:
    """Cyclic window means along the last axis: out[s] = mean arr[s : s+w]."""
    n = absvals.shape[-1]
    ext = np.concatenate([absvals, absvals[..., : w - 1]], axis=-1)
    csum = np.cumsum(ext, axis=-1)
    lead = csum[..., w - 1 :]
    head = np.concatenate(
        [np.zeros(absvals.shape[:-1] + (1,)), csum[..., : n - 1]], axis=-1
    )
    return (lead - head) / w


def _hl_axis(absvals: np.ndarray, shift: int = 0, sup_shift: bool = False) -> np.ndarray:
    """Exact interval-maximal function along the last axis.

    ``shift`` computes the n-shifted operator (averages over I^n while the
    indicator sits on I); ``sup_shift`` additionally takes the sup over all
    grid-representable fractional shifts alpha in [0, 1].
    """
    n = absvals.shape[-1]
    best = np.full(absvals.shape, -np.inf)
    for w in range(1, n + 1):
        means = _window_means(absvals, w)
        if shift or sup_shift:
            means = np.roll(means, -shift * w, axis=-1)
            if sup_shift:
                # fractional shifts alpha in [0, 1] are the w+1 grid offsets
                means = _sliding_max(means, min(w + 1, n))
        covering = _sliding_max(means, w)
        best = np.maximum(best, np.roll(covering, w - 1, axis=-1))
    return best


def _dyadic_axis(absvals: np.ndarray) -> np.ndarray:
    """Dyadic maximal function along the last axis (levels 1..L)."""
    n = absvals.shape[-1]
    log_size = n.bit_length() - 1
    best = absvals.copy()  # level L: single cells
    level = absvals
    for k in range(log_size - 1, 0, -1):
        level = 0.5 * (level[..., 0::2] + level[..., 1::2])
        best = np.maximum(best, np.repeat(level, n // 2**k, axis=-1))
    return best


def _pow2_widths(n: int):
    w = 1
    while w <= n:
        yield w
        w *= 2


def _strong_2d(absvals: np.ndarray) -> np.ndarray:
    """Sup of rectangle averages, power-of-two side lengths, any offset."""
    best = np.full(absvals.shape, -np.inf)
    for w1 in _pow2_widths(absvals.shape[0]):
        rows = _window_means(absvals.T, w1).T  # means over w1 cells along axis 0
        for w2 in _pow2_widths(absvals.shape[1]):
            means = _window_means(rows, w2)
            cover = _sliding_max(means, w2)
            cover = _sliding_max(cover.T, w1).T
            cover = np.roll(cover, (w1 - 1, w2 - 1), axis=(0, 1))
            best = np.maximum(best, cover)
    return best


def maximal(f: GridFunction, kind: str = "hl", n: int = 0, axis: int = 0) -> GridFunction:
    """Maximal function of |f|.

    kind: 'hl' (all grid intervals), 'dyadic', 'shifted' (uses ``n``),
    'shifted_sup' (sup over fractional shifts too), 'strong' (2D),
    'directional' (1D operator along ``axis`` of a 2D input).
    """
    absvals = np.abs(f.values)
    if kind in ("hl", "dyadic", "shifted", "shifted_sup"):
        if f.dims != 1:
            raise ValueError(f"kind {kind!r} requires a 1D grid function")
        if kind == "hl":
            out = _hl_axis(absvals)
        elif kind == "dyadic":
            out = _dyadic_axis(absvals)
        elif kind == "shifted":
            out = _hl_axis(absvals, shift=n)
        else:
            out = _hl_axis(absvals, shift=n, sup_shift=True)
        return GridFunction(f.log_sizes, out)
    if f.dims != 2:
        raise ValueError(f"kind {kind!r} requires a 2D grid function")
    if kind == "strong":
        return GridFunction(f.log_sizes, _strong_2d(absvals))
    if kind == "directional":
        if axis == 0:
            return GridFunction(f.log_sizes, _hl_axis(absvals.T).T)
        return GridFunction(f.log_sizes, _hl_axis(absvals))
    raise ValueError(f"unknown maximal kind {kind!r}")


def adapted_maximal(f: GridFunction, fam: AdaptedFamily) -> GridFunction:
    """M'f = sup_I |<phi_I, f>| / |I| on I, from per-scale convolutions."""
    if f.dims != 1:
        raise ValueError("adapted maximal requires a 1D grid function")
    if f.log_sizes[0] != fam.log_size:
        raise ValueError("family grid does not match the input grid")
    n = 2**fam.log_size
    out = np.zeros(n)
    for k in fam.scales:
        coeffs = scale_coefficient_lags(f.values, fam.prototype_values(k))
        step = 2 ** (fam.log_size - k)
        # <phi_I, f> = 2^-k * lag value, so dividing by |I| = 2^-k cancels
        level = np.abs(coeffs[::step])
        out = np.maximum(out, np.repeat(level, step))
    return GridFunction(f.log_sizes, out)


def scale_coefficient_lags(fvals: np.ndarray, proto: np.ndarray) -> np.ndarray:
    """c[s] = (1/N) sum_x proto(x - s) conj(f(x)) for every lag s, via FFT."""
    n = fvals.shape[-1]
    fh = np.fft.fft(np.conj(fvals), axis=-1)
    ph = np.fft.fft(proto)
    return np.fft.ifft(fh * ph, axis=-1) / n


@dataclass
class StoppingCover:
    """Disjoint dyadic intervals with large averages covering {Mf > alpha}."""

    threshold: float
    intervals: list[DyadicInterval]
    covers: bool  # {Mf > alpha} subset of the union of stars, grid-checked

    @property
    def total_length(self) -> float:
        return sum(iv.length for iv in self.intervals)


@dataclass
class CZDecomposition:
    """f = g + sum_k b_k at threshold alpha.

    g equals f off the union of the stopping intervals and the interval
    average on each of them; each bad piece b_k is supported on its interval
    and has zero grid mean.
    """

    threshold: float
    intervals: list[DyadicInterval]
    good: GridFunction
    bad_pieces: list[tuple[DyadicInterval, GridFunction]]

    @property
    def total_length(self) -> float:
        return sum(iv.length for iv in self.intervals)

    def bad_sum(self) -> GridFunction:
        if not self.bad_pieces:
            return GridFunction(self.good.log_sizes, np.zeros(self.good.sizes[0]))
        total = sum(p.values for _, p in self.bad_pieces)
        return GridFunction(self.good.log_sizes, total)


def _level_averages(vals: np.ndarray, log_size: int) -> dict[int, np.ndarray]:
    """Per-level dyadic block averages, levels 1..L."""
    out = {}
    level = vals
    for k in range(log_size, 0, -1):
        if k != log_size:
            level = 0.5 * (level[0::2] + level[1::2])
        out[k] = level
    return out


def maximal_dyadic_intervals(absvals: np.ndarray, threshold: float) -> list[DyadicInterval]:
    """Maximal dyadic intervals whose |f|-average exceeds ``threshold``."""
    n = absvals.shape[0]
    log_size = n.bit_length() - 1
    averages = _level_averages(absvals, log_size)
    chosen: list[DyadicInterval] = []
    blocked = np.zeros(2, dtype=bool)
    for k in range(1, log_size + 1):
        hit = averages[k] > threshold
        pick = hit & ~blocked
        for j in np.nonzero(pick)[0]:
            chosen.append(DyadicInterval(k, int(j)))
        blocked = blocked | hit
        if k < log_size:
            blocked = np.repeat(blocked, 2)
    return chosen


def cz_cover(f: GridFunction, alpha: float) -> StoppingCover:
    """Stopping cover: maximal dyadic intervals of {M_D f > alpha/4}.

    The averages are at least alpha/4 on each interval and the stars of the
    intervals cover {Mf > alpha} (verified pointwise on the grid).
    """
    if f.dims != 1:
        raise ValueError("cz_cover requires a 1D grid function")
    absvals = np.abs(f.values)
    mf = _hl_axis(absvals)
    above = mf > alpha
    if not above.any():
        return StoppingCover(alpha, [], True)
    intervals = maximal_dyadic_intervals(absvals, alpha / 4.0)
    n = absvals.shape[0]
    covered = np.zeros(n, dtype=bool)
    for iv in intervals:
        covered |= star(iv).indicator(f.log_sizes[0])
    return StoppingCover(alpha, intervals, bool((covered | ~above).all()))


def cz_decompose(f: GridFunction, alpha: float) -> CZDecomposition:
    """Calderon-Zygmund decomposition at threshold alpha > ||f||_1."""
    if f.dims != 1:
        raise ValueError("cz_decompose requires a 1D grid function")
    absvals = np.abs(f.values)
    norm1 = absvals.mean()
    if not alpha > norm1:
        raise ValueError(f"threshold {alpha} must exceed ||f||_1 = {norm1}")
    intervals = maximal_dyadic_intervals(absvals, alpha)
    log_size = f.log_sizes[0]
    good = np.array(f.values)
    bad_pieces = []
    for iv in intervals:
        sl = iv.grid_slice(log_size)
        avg = f.values[sl].mean()
        piece = np.zeros_like(good)
        piece[sl] = f.values[sl] - avg
        good[sl] = avg
        bad_pieces.append((iv, GridFunction(f.log_sizes, piece)))
    return CZDecomposition(alpha, intervals, GridFunction(f.log_sizes, good), bad_pieces)


def vector_maximal(fs, r: float, kind: str = "hl", n: int = 0) -> GridFunction:
    """(sum_k (M f_k)^r)^{1/r} pointwise; r = inf means sup_k."""
    fs = list(fs)
    if not fs:
        raise ValueError("vector maximal requires at least one function")
    if not (r > 1 or np.isinf(r)):
        raise ValueError("exponent r must satisfy 1 < r <= inf")
    stack = np.stack([maximal(f, kind=kind, n=n).values for f in fs])
    if np.isinf(r):
        out = stack.max(axis=0)
    else:
        out = (stack**r).sum(axis=0) ** (1.0 / r)
    return GridFunction(fs[0].log_sizes, out)

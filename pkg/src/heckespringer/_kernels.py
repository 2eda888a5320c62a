"""
Integer kernels for aggregating Steinberg cell data over all component pairs.

Everything exact-rational in this package is out of numba's reach, but the
cell bookkeeping is pure machine-integer work: a piece is a bit set of roots
(n <= 8 means at most 56 roots, so one uint64 per piece), a fiber dimension is
a popcount, and the graded totals are histograms over |I|^2 * |W(s)|^2 tuples.
For regular torus points |I| = n! and the pair loop is the only hot spot in
the package (~25M popcounts at n = 7).

Two interchangeable backends compute the histogram:

* ``numba``: @njit bitmask loop with a SWAR popcount (default when numba
  imports; compiled artifacts are disk-cached);
* ``numpy``: per-w boolean matmul (exact in float64 since counts <= 56)
  plus bincount convolution.

Selection: env var ``HECKESPRINGER_BACKEND`` set to ``numba`` or ``numpy``;
unset/``auto`` prefers numba and falls back to numpy. ``benchmarks/
bench_kernels.py`` times both on the same inputs.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["active_backend", "ext_degree_totals", "BACKEND_ENV"]

BACKEND_ENV = "HECKESPRINGER_BACKEND"

_backend: str | None = None
_numba_kernel = None


def _resolve_backend() -> str:
    choice = os.environ.get(BACKEND_ENV, "auto").strip().lower() or "auto"
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        _load_numba()  # raise now if unavailable
        return "numba"
    if choice == "auto":
        try:
            _load_numba()
            return "numba"
        except ImportError:
            return "numpy"
    raise ValueError(
        f"{BACKEND_ENV} must be 'numba', 'numpy' or 'auto', got {choice!r}"
    )


def active_backend() -> str:
    global _backend
    if _backend is None:
        _backend = _resolve_backend()
    return _backend


def _load_numba():
    global _numba_kernel
    if _numba_kernel is not None:
        return _numba_kernel
    from numba import njit

    @njit(cache=True)
    def kernel(masks, wmasks, dims, lw, ly_hist, kmin, out):  # pragma: no cover
        n_pieces = masks.shape[0]
        n_w = lw.shape[0]
        n_len = ly_hist.shape[0]
        for i in range(n_pieces):
            mi = masks[i]
            di = dims[i]
            for j in range(n_pieces):
                base = di + dims[j]
                for wi in range(n_w):
                    x = mi & wmasks[j, wi]
                    # SWAR popcount on uint64
                    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
                    x = (x & np.uint64(0x3333333333333333)) + (
                        (x >> np.uint64(2)) & np.uint64(0x3333333333333333)
                    )
                    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
                    fib = np.int64((x * np.uint64(0x0101010101010101)) >> np.uint64(56))
                    k0 = base - 2 * (fib + lw[wi])
                    for ell in range(n_len):
                        c = ly_hist[ell]
                        if c:
                            out[k0 - 2 * ell - kmin] += c

    _numba_kernel = kernel
    return kernel


def _pack_masks(rows: np.ndarray) -> np.ndarray:
    """Pack 0/1 rows (.., R) into uint64 bit sets; requires R <= 64."""
    n_bits = rows.shape[-1]
    if n_bits > 64:
        raise ValueError("more than 64 roots cannot be packed into uint64 masks")
    weights = (np.uint64(1) << np.arange(n_bits, dtype=np.uint64))
    return (rows.astype(np.uint64) * weights).sum(axis=-1, dtype=np.uint64)


def ext_degree_totals(
    piece_matrix: np.ndarray,
    wcols: np.ndarray,
    dims: np.ndarray,
    lw: np.ndarray,
    ly_hist: np.ndarray,
) -> dict[int, int]:
    """Histogram of k = d_i + d_j - 2(|V^i cap wV^j| + l(w) + l(y)) over all cells.

    piece_matrix : (I, R) 0/1, root membership per piece
    wcols        : (Ws, R) int64, wcols[wi][r] = index of w_wi^{-1} * root_r,
                   so piece_matrix[:, wcols[wi]] is the membership of w_wi V^j
    dims         : (I,) int64, component dimensions d_i
    lw, ly_hist  : (Ws,) lengths of the w's; histogram of the y lengths
    """
    piece_matrix = np.ascontiguousarray(piece_matrix, dtype=np.uint8)
    wcols = np.ascontiguousarray(wcols, dtype=np.int64)
    dims = np.ascontiguousarray(dims, dtype=np.int64)
    lw = np.ascontiguousarray(lw, dtype=np.int64)
    ly_hist = np.ascontiguousarray(ly_hist, dtype=np.int64)

    n_pieces, n_roots = piece_matrix.shape
    max_len_y = ly_hist.shape[0] - 1
    k_max = int(2 * dims.max()) if n_pieces else 0
    k_min = int(2 * dims.min() - 2 * (n_roots + (int(lw.max()) if lw.size else 0) + max(max_len_y, 0))) if n_pieces else 0
    span = k_max - k_min + 1
    out = np.zeros(span, dtype=np.int64)
    if n_pieces == 0:
        return {}

    if active_backend() == "numba":
        masks = _pack_masks(piece_matrix)
        wmasks = np.empty((n_pieces, wcols.shape[0]), dtype=np.uint64)
        for wi in range(wcols.shape[0]):
            wmasks[:, wi] = _pack_masks(piece_matrix[:, wcols[wi]])
        _load_numba()(masks, wmasks, dims, lw, ly_hist, k_min, out)
    else:
        # matmul over row chunks keeps peak memory ~ chunk * |I| even at n = 7
        m = piece_matrix.astype(np.float64)
        chunk = max(1, min(n_pieces, (1 << 22) // max(n_pieces, 1)))
        base_hist = np.zeros(span, dtype=np.int64)
        for wi in range(wcols.shape[0]):
            mw_t = m[:, wcols[wi]].T
            for lo in range(0, n_pieces, chunk):
                hi = min(lo + chunk, n_pieces)
                fib = np.rint(m[lo:hi] @ mw_t).astype(np.int64)
                base = (dims[lo:hi, None] + dims[None, :]) - 2 * (fib + lw[wi])
                base_hist += np.bincount((base - k_min).ravel(), minlength=span)
        # fold in the y lengths: k = base - 2*l(y)
        for ell in range(max_len_y + 1):
            c = int(ly_hist[ell])
            if c:
                if ell:
                    out[: span - 2 * ell] += c * base_hist[2 * ell:]
                else:
                    out += c * base_hist
    return {k_min + idx: int(v) for idx, v in enumerate(out) if v}

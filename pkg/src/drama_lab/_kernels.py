"""Hot numeric kernels, with numba and pure-numpy implementations.

The backend is selected by the DRAMA_LAB_BACKEND environment variable:
"numba" (force jit kernels), "numpy" (force the vectorized fallback) or
"auto" (default: numba when importable). Both backends are exact integer
transforms, so results are bit-identical either way; see
benchmarks/bench_kernels.py for a speed comparison.

Addresses and masks fit in 40 bits and are carried as int64 arrays.
"""

from __future__ import annotations

import os

import numpy as np

_ONE = np.int64(1)


# ---------------------------------------------------------------- numpy ----

def _parity_np(x: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(x) & 1).astype(np.uint8)


def eval_masks_np(masks: np.ndarray, addrs: np.ndarray) -> np.ndarray:
    """Parity matrix of shape (len(masks), len(addrs))."""
    out = np.empty((len(masks), len(addrs)), dtype=np.uint8)
    chunk = max(1, (1 << 22) // max(1, len(addrs)))
    for lo in range(0, len(masks), chunk):
        block = masks[lo:lo + chunk]
        out[lo:lo + chunk] = _parity_np(block[:, None] & addrs[None, :])
    return out


def masks_constant_on_sets_np(
    masks: np.ndarray, addrs: np.ndarray, offsets: np.ndarray
) -> np.ndarray:
    """alive[i] is True iff masks[i] is constant within every address set.

    addrs holds the sets back to back; offsets[s]:offsets[s+1] delimits set s.
    Sets are visited in order and the surviving mask population shrinks fast,
    so later sets cost almost nothing.
    """
    alive = np.ones(len(masks), dtype=bool)
    live_idx = np.arange(len(masks))
    for s in range(len(offsets) - 1):
        seg = addrs[offsets[s]:offsets[s + 1]]
        if len(seg) < 2 or len(live_idx) == 0:
            continue
        vals = eval_masks_np(masks[live_idx], seg)
        same = (vals == vals[:, :1]).all(axis=1)
        alive[live_idx[~same]] = False
        live_idx = live_idx[same]
    return alive


def pair_conflicts_np(
    a: np.ndarray, b: np.ndarray, bank_masks: np.ndarray, row_mask: int
) -> np.ndarray:
    """True where alternating access to (a[i], b[i]) row-conflicts.

    Same bank iff every addressing function agrees on both addresses, which
    by linearity is parity(diff AND mask) == 0; conflict additionally needs
    differing row bits.
    """
    diff = a ^ b
    same_bank = np.ones(len(a), dtype=bool)
    for m in bank_masks:
        same_bank &= _parity_np(diff & m) == 0
    return same_bank & ((diff & np.int64(row_mask)) != 0)


def same_bank_np(a: np.ndarray, b: np.ndarray, bank_masks: np.ndarray) -> np.ndarray:
    diff = a ^ b
    same = np.ones(len(a), dtype=bool)
    for m in bank_masks:
        same &= _parity_np(diff & m) == 0
    return same


def extract_index_np(addrs: np.ndarray, bits: np.ndarray) -> np.ndarray:
    """Gather the listed address bits into a packed index, bits[0] is the LSB."""
    out = np.zeros(len(addrs), dtype=np.int64)
    for i, bit in enumerate(bits):
        out |= ((addrs >> np.int64(bit)) & _ONE) << np.int64(i)
    return out


# ---------------------------------------------------------------- numba ----

try:  # pragma: no cover - exercised indirectly via the dispatch below
    import numba

    _HAVE_NUMBA = True

    @numba.njit(cache=True, inline="always")
    def _parity64(v):
        v ^= v >> 32
        v ^= v >> 16
        v ^= v >> 8
        v ^= v >> 4
        v ^= v >> 2
        v ^= v >> 1
        return v & 1

    @numba.njit(cache=True)
    def eval_masks_nb(masks, addrs):
        out = np.empty((len(masks), len(addrs)), dtype=np.uint8)
        for i in range(len(masks)):
            m = masks[i]
            for j in range(len(addrs)):
                out[i, j] = _parity64(m & addrs[j])
        return out

    @numba.njit(cache=True)
    def masks_constant_on_sets_nb(masks, addrs, offsets):
        alive = np.ones(len(masks), dtype=np.bool_)
        for i in range(len(masks)):
            m = masks[i]
            ok = True
            for s in range(len(offsets) - 1):
                lo = offsets[s]
                hi = offsets[s + 1]
                if hi - lo < 2:
                    continue
                ref = _parity64(m & addrs[lo])
                for j in range(lo + 1, hi):
                    if _parity64(m & addrs[j]) != ref:
                        ok = False
                        break
                if not ok:
                    break
            alive[i] = ok
        return alive

    @numba.njit(cache=True)
    def pair_conflicts_nb(a, b, bank_masks, row_mask):
        out = np.empty(len(a), dtype=np.bool_)
        for i in range(len(a)):
            diff = a[i] ^ b[i]
            same = True
            for k in range(len(bank_masks)):
                if _parity64(diff & bank_masks[k]) != 0:
                    same = False
                    break
            out[i] = same and (diff & row_mask) != 0
        return out

    @numba.njit(cache=True)
    def same_bank_nb(a, b, bank_masks):
        out = np.empty(len(a), dtype=np.bool_)
        for i in range(len(a)):
            diff = a[i] ^ b[i]
            same = True
            for k in range(len(bank_masks)):
                if _parity64(diff & bank_masks[k]) != 0:
                    same = False
                    break
            out[i] = same
        return out

    @numba.njit(cache=True)
    def extract_index_nb(addrs, bits):
        out = np.zeros(len(addrs), dtype=np.int64)
        for j in range(len(addrs)):
            v = np.int64(0)
            for i in range(len(bits)):
                v |= ((addrs[j] >> bits[i]) & 1) << i
            out[j] = v
        return out

except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


def _pick_backend() -> str:
    requested = os.environ.get("DRAMA_LAB_BACKEND", "auto").lower()
    if requested not in ("auto", "numba", "numpy"):
        raise ValueError(f"DRAMA_LAB_BACKEND must be auto|numba|numpy, got {requested!r}")
    if requested == "numba" and not _HAVE_NUMBA:
        raise ImportError("DRAMA_LAB_BACKEND=numba but numba is not importable")
    if requested == "auto":
        return "numba" if _HAVE_NUMBA else "numpy"
    return requested


BACKEND = _pick_backend()

if BACKEND == "numba":
    eval_masks = eval_masks_nb
    masks_constant_on_sets = masks_constant_on_sets_nb
    pair_conflicts = pair_conflicts_nb
    same_bank_batch = same_bank_nb
    extract_index = extract_index_nb
else:
    eval_masks = eval_masks_np
    masks_constant_on_sets = masks_constant_on_sets_np
    pair_conflicts = pair_conflicts_np
    same_bank_batch = same_bank_np
    extract_index = extract_index_np

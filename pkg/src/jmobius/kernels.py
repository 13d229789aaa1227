"""Kernel dispatch: compiled extension when importable, pure Python otherwise.

Set ``JMOBIUS_BACKEND=python`` to force the fallback.  The compiled kernels
work on int64 and signal overflow; on overflow (or for non-integer ring
values) the pure-Python kernels run instead, so every result is exact.
"""
from __future__ import annotations

import os
from contextlib import contextmanager

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_forced = os.environ.get("JMOBIUS_BACKEND", "auto").lower()
_active = _ckernels if (_ckernels is not None and _forced != "python") else None


def backend() -> str:
    return "compiled" if _active is not None else "python"


def compiled_available() -> bool:
    return _ckernels is not None


@contextmanager
def use_backend(name: str):
    """Temporarily select ``"python"`` or ``"compiled"`` kernels."""
    global _active
    saved = _active
    if name == "python":
        _active = None
    elif name == "compiled":
        if _ckernels is None:
            raise RuntimeError("compiled kernels are not built")
        _active = _ckernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    try:
        yield
    finally:
        _active = saved


def _leq_u8(p):
    return np.ascontiguousarray(p.leq, dtype=np.uint8)


def _all_ints(values) -> bool:
    return all(type(v) is int for v in values)


def mobius_matrix(p) -> list[list[int]]:
    order = np.array(p.linear_extension, dtype=np.intp)
    if _active is not None:
        try:
            return _active.mobius_matrix(_leq_u8(p), order).tolist()
        except OverflowError:
            pass
    return _pykernels.mobius_matrix(p.leq.tolist(), list(p.linear_extension))


def tri_mul(p, f: dict, g: dict) -> dict:
    """``f |> g`` for value dicts keyed by 3-flags; returns a dict on the same flags."""
    from .poset import flags

    fl = flags(p, 3)
    n = p.size
    if _active is not None and _all_ints(f.values()) and _all_ints(g.values()):
        try:
            fa = np.zeros((n, n, n), dtype=np.int64)
            ga = np.zeros((n, n, n), dtype=np.int64)
            for t in fl:
                fa[t] = f[t]
                ga[t] = g[t]
            out = _active.tri_mul(_leq_u8(p), fa, ga)
            return {t: int(out[t]) for t in fl}
        except OverflowError:
            pass
    fd = [[[0] * n for _ in range(n)] for _ in range(n)]
    gd = [[[0] * n for _ in range(n)] for _ in range(n)]
    for (x, y, z) in fl:
        fd[x][y][z] = f[(x, y, z)]
        gd[x][y][z] = g[(x, y, z)]
    out = _pykernels.tri_mul(p.leq.tolist(), fd, gd)
    return {(x, y, z): out[x][y][z] for (x, y, z) in fl}


def jmobius_coeffs(p, mu: list[list[int]]) -> list[int]:
    total = p.rank
    ranks = list(p.ranks)
    if _active is not None:
        try:
            arr = np.array(mu, dtype=np.int64)
            out = _active.jmobius_coeffs(_leq_u8(p), arr, np.array(ranks, dtype=np.int64), total)
            return [int(c) for c in out]
        except OverflowError:
            pass
    return _pykernels.jmobius_coeffs(p.leq.tolist(), mu, ranks, total)

"""Smooth transition function for metric splicing.

cutoff is identically 1 on (-inf, 1], identically 0 on [2, inf), smooth and
monotone in between, built from the classical exp(-1/x) bump ratio, so
every derivative vanishes at both ends of the transition band and splicing
two smooth metrics through it stays smooth.
"""
from __future__ import annotations

import numpy as np


def _bump(s):
    out = np.zeros_like(s)
    pos = s > 0
    out[pos] = np.exp(-1.0 / s[pos])
    return out


def cutoff(x):
    """1 on x <= 1, 0 on x >= 2, smooth monotone transition between.

    Accepts scalars or arrays; returns a float for scalar input.
    """
    arr = np.atleast_1d(np.asarray(x, dtype=float))
    up = _bump(2.0 - arr)
    down = _bump(arr - 1.0)
    out = np.zeros_like(arr)
    out[arr <= 1.0] = 1.0
    band = (arr > 1.0) & (arr < 2.0)
    out[band] = up[band] / (up[band] + down[band])
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(out[0])
    return out

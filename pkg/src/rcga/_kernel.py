"""Compiled run loop.

Mirrors ``algorithm.step`` exactly (same generator consumption, tie rule and
termination order), so a seed gives the same run on either path.
"""

import numpy as np
from numba import njit

OPTIMUM_SAMPLED, CAP_REACHED, STAGNATED = 0, 1, 2


@njit(cache=True, nogil=True)
def _sample_into(counts, K, rng, out):
    n, r = counts.shape
    for i in range(n):
        m = int(rng.random() * K)
        c = 0
        j = 0
        for v in range(r - 1):
            c += counts[i, v]
            j += m >= c
        out[i] = j


@njit(cache=True, nogil=True)
def _fitness(x, code, target, weights, r):
    f = 0
    for i in range(x.shape[0]):
        if weights[i] == 0:
            continue
        if code == 0:
            f += x[i] == target[i]
        elif code == 1:
            f += x[i]
        else:
            d = abs(x[i] - target[i])
            f += (r - 1) - min(d, r - d)
    return f


@njit(cache=True, nogil=True)
def run_kernel(counts, K, code, target, weights, max_value, max_iter,
               stop_on_optimum, check_stagnation, rng, watch, wmin, wmax):
    """Run in place on ``counts``; returns ``(status, iterations)``.

    If ``watch >= 0`` the running min/max of every count in that row is
    folded into ``wmin``/``wmax``.
    """
    n, r = counts.shape
    x = np.empty(n, np.int64)
    y = np.empty(n, np.int64)
    unreachable = 0
    for i in range(n):
        if weights[i] != 0 and counts[i, target[i]] == 0:
            unreachable += 1
    t = 0
    while t < max_iter:
        _sample_into(counts, K, rng, x)
        _sample_into(counts, K, rng, y)
        t += 1
        fx = _fitness(x, code, target, weights, r)
        fy = _fitness(y, code, target, weights, r)
        if stop_on_optimum and (fx == max_value or fy == max_value):
            return OPTIMUM_SAMPLED, t
        swap = fx < fy
        for i in range(n):
            if x[i] == y[i]:
                continue
            if swap:
                w = y[i]
                l = x[i]
            else:
                w = x[i]
                l = y[i]
            counts[i, w] += 1
            counts[i, l] -= 1
            if weights[i] != 0:
                if l == target[i] and counts[i, l] == 0:
                    unreachable += 1
                elif w == target[i] and counts[i, w] == 1:
                    unreachable -= 1
        if watch >= 0:
            for j in range(r):
                c = counts[watch, j]
                if c < wmin[j]:
                    wmin[j] = c
                if c > wmax[j]:
                    wmax[j] = c
        if check_stagnation and unreachable > 0:
            return STAGNATED, t
    return CAP_REACHED, t

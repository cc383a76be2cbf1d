"""Jitted inner loops shared by the property computations and the EA hot path.

Everything here operates on raw truth tables: 1-D uint8 arrays of 0/1 values of
length 2**n, entry i being f(x) for the input whose integer encoding is i
(bit j of i = variable x_{j+1}).
"""

import numpy as np
from numba import njit


@njit(cache=True)
def fwht_inplace(a):
    """In-place Walsh-Hadamard butterfly on an int32 vector (length a power of 2)."""
    size = a.shape[0]
    h = 1
    while h < size:
        for i in range(0, size, h * 2):
            for j in range(i, i + h):
                x = a[j]
                y = a[j + h]
                a[j] = x + y
                a[j + h] = x - y
        h *= 2


@njit(cache=True)
def spectrum_of(bits):
    """Walsh-Hadamard spectrum W(a) = sum_x (-1)^(f(x) xor a.x) of a truth table."""
    size = bits.shape[0]
    a = np.empty(size, np.int32)
    for i in range(size):
        a[i] = 1 - 2 * bits[i]
    fwht_inplace(a)
    return a


@njit(cache=True)
def spectrum_extrema(coeffs):
    """(max |W(a)|, number of positions attaining it)."""
    mx = 0
    cnt = 1
    for i in range(coeffs.shape[0]):
        v = coeffs[i]
        if v < 0:
            v = -v
        if v > mx:
            mx = v
            cnt = 1
        elif v == mx:
            cnt += 1
    return mx, cnt


@njit(cache=True)
def monotone_counts(bits, n):
    """(violations, max_possible, weight) of the upward one-bit-flip scan.

    violations counts pairs (u, v) with f(u)=1, v = u with one 0-bit set, f(v)=0;
    max_possible is the number of such candidate pairs, i.e. sum over the support
    of the number of clear input bits.
    """
    size = 1 << n
    viol = 0
    maxp = 0
    weight = 0
    for u in range(size):
        if bits[u]:
            weight += 1
            for j in range(n):
                if not (u >> j) & 1:
                    maxp += 1
                    if not bits[u | (1 << j)]:
                        viol += 1
    return viol, maxp, weight


@njit(cache=True)
def evaluate_bits(bits, n, balanced, variant):
    """One fitness evaluation: (fitness, viol, maxp, weight, nl, max_vals).

    nl and max_vals are -1 when the function is infeasible (spectral terms not
    part of the fitness then). variant: 1 = raw count, 2 = count/max_possible,
    3 = count/max_possible**2; balanced scenario always uses the raw count and
    additionally penalizes the distance from balancedness.
    """
    size = 1 << n
    viol, maxp, weight = monotone_counts(bits, n)
    bal = weight - (size >> 1)
    if bal < 0:
        bal = -bal
    if balanced:
        if viol > 0 or bal > 0:
            return -float(viol) - float(bal), viol, maxp, weight, -1, -1
    else:
        if viol > 0:
            if variant == 1:
                pen = float(viol)
            elif variant == 2:
                pen = viol / maxp
            else:
                pen = viol / (float(maxp) * maxp)
            return -pen, viol, maxp, weight, -1, -1
    coeffs = spectrum_of(bits)
    mx, cnt = spectrum_extrema(coeffs)
    nl = (size >> 1) - (mx >> 1)
    return nl + (size - cnt) / size, viol, maxp, weight, nl, cnt


@njit(cache=True)
def best_feasible_random(n, budget, seed):
    """Random-search baseline: draw `budget` uniform truth tables, return the
    best nonlinearity among the monotone ones (-1 if none was monotone)."""
    np.random.seed(seed)
    size = 1 << n
    best = -1
    bits = np.empty(size, np.uint8)
    for _ in range(budget):
        for i in range(size):
            bits[i] = np.random.randint(0, 2)
        viol, _, _ = monotone_counts(bits, n)
        if viol == 0:
            coeffs = spectrum_of(bits)
            mx, _ = spectrum_extrema(coeffs)
            nl = (size >> 1) - (mx >> 1)
            if nl > best:
                best = nl
    return best

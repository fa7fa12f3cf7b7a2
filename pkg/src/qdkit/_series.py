"""Truncated complex power-series helpers.

All series are numpy arrays of complex coefficients in ascending order,
truncated to a fixed length ``order`` (terms x^0 .. x^{order-1}).  These are
small (order <= ~16) so the O(order^2)/O(order^3) algorithms below are fine.
"""

import numpy as np


def trim(a, order):
    """Pad or truncate coefficient array ``a`` to exactly ``order`` terms."""
    a = np.asarray(a, dtype=complex)
    if a.size >= order:
        return a[:order].copy()
    out = np.zeros(order, dtype=complex)
    out[: a.size] = a
    return out


def mul(a, b, order):
    """Product of two series, truncated to ``order`` terms."""
    a = trim(a, order)
    b = trim(b, order)
    return np.convolve(a, b)[:order]


def inv(a, order):
    """Reciprocal series of ``a`` with a[0] != 0."""
    a = trim(a, order)
    if a[0] == 0:
        raise ZeroDivisionError("series has vanishing constant term")
    out = np.zeros(order, dtype=complex)
    out[0] = 1.0 / a[0]
    for n in range(1, order):
        out[n] = -np.dot(a[1 : n + 1], out[n - 1 :: -1]) / a[0]
    return out


def powi(a, k, order):
    """Integer power a^k of a series, k >= 0."""
    out = np.zeros(order, dtype=complex)
    out[0] = 1.0
    base = trim(a, order)
    for _ in range(k):
        out = mul(out, base, order)
    return out


def compose(a, b, order):
    """Composition a(b(x)) with b[0] == 0, truncated to ``order`` terms."""
    b = trim(b, order)
    if b[0] != 0:
        raise ValueError("inner series must have zero constant term")
    a = trim(a, order)
    out = np.zeros(order, dtype=complex)
    out[0] = a[-1]
    for c in a[-2::-1]:
        out = mul(out, b, order)
        out[0] += c
    return out


def reversion(a, order):
    """Compositional inverse g of a with a[0] == 0, a[1] != 0: a(g(x)) = x."""
    a = trim(a, order)
    if a[0] != 0 or a[1] == 0:
        raise ValueError("series must vanish at 0 with nonzero linear term")
    g = np.zeros(order, dtype=complex)
    g[1] = 1.0 / a[1]
    # Fixed-point refinement is exact in coefficients up to x^n after n steps.
    for _ in range(order):
        tail = compose(np.concatenate(([0.0, 0.0], a[2:])), g, order)
        g = -tail / a[1]
        g[1] += 1.0 / a[1]
    return g


def taylor_shift(p, c):
    """Coefficients of the polynomial p(x + c), ascending order."""
    d = np.array(p, dtype=complex)
    n = d.size
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            d[j] += c * d[j + 1]
    return d

"""Polynomial and rational-function algebra over complex coefficients.

Coefficients are always stored in ascending degree order.  Root finding uses
companion-matrix eigenvalues (numpy.roots) with Newton polishing; repeated
roots are recovered by clustering.  Resultants are computed by
evaluation-interpolation on roots-of-unity grids, which keeps the Sylvester
determinants numerically tame at desk scale.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _series
from .errors import AlgebraError, CapacityError

#: roots closer than this are coalesced into one multiple root
ROOT_CLUSTER_TOL = 1e-8
#: certified common-root cancellation tolerance for rational reduction
REDUCTION_TOL = 1e-10
#: hard desk-scale caps
MAX_RATIONAL_DEGREE = 8
MAX_RESULTANT_TOTAL_DEGREE = 24


def _strip(coeffs):
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    nz = np.nonzero(np.abs(c) > 0)[0]
    if nz.size == 0:
        return np.zeros(1, dtype=complex)
    return c[: nz[-1] + 1]


class Polynomial:
    """Dense univariate polynomial with complex coefficients (ascending)."""

    def __init__(self, coeffs):
        self.coeffs = _strip(coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return self.degree == 0 and self.coeffs[0] == 0

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        out = np.zeros_like(w)
        for c in self.coeffs[::-1]:
            out = out * w + c
        return out if out.ndim else complex(out)

    def derivative(self):
        if self.degree == 0:
            return Polynomial([0.0])
        k = np.arange(1, self.degree + 1)
        return Polynomial(self.coeffs[1:] * k)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            return Polynomial(np.convolve(self.coeffs, other.coeffs))
        return Polynomial(self.coeffs * other)

    __rmul__ = __mul__

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n, dtype=complex)
        a[: len(self.coeffs)] = self.coeffs
        a[: len(other.coeffs)] += other.coeffs
        return Polynomial(a)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial([other])
        return self + (other * (-1.0))

    def __repr__(self):
        return f"Polynomial({self.coeffs.tolist()})"


def roots(p: Polynomial):
    """All roots of ``p``, repeated according to multiplicity.

    Companion-matrix eigenvalues, then clusters within ROOT_CLUSTER_TOL are
    merged and polished by Newton on the derivative order matching the
    multiplicity.  The product of (w - root) reconstructs ``p`` to ~1e-9
    relative coefficient error for desk-scale degrees.
    """
    if p.is_zero:
        raise ValueError("zero polynomial has no well-defined roots")
    if p.degree == 0:
        return np.zeros(0, dtype=complex)
    raw = np.roots(p.coeffs[::-1])
    clusters = _cluster(raw, ROOT_CLUSTER_TOL)
    out = []
    for center, mult in clusters:
        out.extend([_polish(p, center, mult)] * mult)
    return np.array(out, dtype=complex)


def roots_with_multiplicity(p: Polynomial):
    """Roots of ``p`` as (root, multiplicity) pairs."""
    flat = roots(p)
    pairs = []
    for r in flat:
        for i, (r0, m) in enumerate(pairs):
            if abs(r - r0) <= ROOT_CLUSTER_TOL * max(1.0, abs(r0)):
                pairs[i] = (r0, m + 1)
                break
        else:
            pairs.append((r, 1))
    return pairs


def _cluster(points, tol):
    points = sorted(points, key=lambda z: (z.real, z.imag))
    clusters = []
    for z in points:
        for i, (c, members) in enumerate(clusters):
            if abs(z - c) <= tol * max(1.0, abs(c)):
                members.append(z)
                clusters[i] = (np.mean(members), members)
                break
        else:
            clusters.append((z, [z]))
    return [(c, len(members)) for c, members in clusters]


def _polish(p: Polynomial, z, mult, iters=8):
    # Newton on p^(mult-1): the multiple root becomes simple there.
    q = p
    for _ in range(mult - 1):
        q = q.derivative()
    dq = q.derivative()
    for _ in range(iters):
        f, df = q(z), dq(z)
        if df == 0:
            break
        step = f / df
        z = z - step
        if abs(step) < 1e-15 * max(1.0, abs(z)):
            break
    return z


def from_roots(rts, leading=1.0):
    """Monic-times-``leading`` polynomial with the given roots."""
    c = np.array([1.0], dtype=complex)
    for r in np.atleast_1d(rts):
        c = np.convolve(c, np.array([-r, 1.0], dtype=complex))
    return Polynomial(c * leading)


@dataclass
class PrincipalPart:
    """Sum of c_j / (z - pole)^j terms, j = 1..len(coeffs)."""

    pole: complex
    coeffs: np.ndarray  # coeffs[j-1] multiplies (z-pole)^{-j}

    def __post_init__(self):
        self.coeffs = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if self.coeffs.size < 1 or self.coeffs[-1] == 0:
            raise ValueError("top-order principal coefficient must be nonzero")

    @property
    def order(self):
        return self.coeffs.size

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        u = 1.0 / (z - self.pole)
        out = np.zeros_like(z)
        for c in self.coeffs[::-1]:
            out = (out + c) * u
        return out if out.ndim else complex(out)


class RationalFunction:
    """Quotient of two polynomials, denominator monic, representation reduced.

    Common roots of numerator and denominator within REDUCTION_TOL are
    cancelled at construction; every cancellation is recorded in
    ``provenance`` because silent reduction is a classic numerical trap.
    """

    def __init__(self, numerator, denominator=(1.0,), provenance=None):
        num = numerator if isinstance(numerator, Polynomial) else Polynomial(numerator)
        den = denominator if isinstance(denominator, Polynomial) else Polynomial(denominator)
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        self.provenance = list(provenance) if provenance else []
        num, den = self._reduce(num, den)
        lead = den.coeffs[-1]
        self.numerator = Polynomial(num.coeffs / lead)
        self.denominator = Polynomial(den.coeffs / lead)

    @property
    def degree(self):
        return max(self.numerator.degree, self.denominator.degree)

    def check_map_degree(self):
        """Enforce the desk-scale cap on user-supplied boundary maps."""
        if self.degree > MAX_RATIONAL_DEGREE:
            raise CapacityError(
                f"rational map degree {self.degree} exceeds cap {MAX_RATIONAL_DEGREE}"
            )
        return self

    def _reduce(self, num, den):
        # strip common powers of w first (exact zeros)
        k = 0
        while (
            k < min(num.degree, den.degree)
            and num.coeffs[k] == 0
            and den.coeffs[k] == 0
        ):
            k += 1
        if k:
            num = Polynomial(num.coeffs[k:])
            den = Polynomial(den.coeffs[k:])
            self.provenance.append(f"cancelled common factor w^{k}")
        if num.is_zero or den.degree == 0:
            return num, den
        den_roots = roots(den)
        scale = max(1.0, np.max(np.abs(num.coeffs)))
        cancelled = []
        for r in den_roots:
            if num.degree == 0:
                break
            if abs(num(r)) < REDUCTION_TOL * scale:
                num = _deflate(num, r)
                den = _deflate(den, r)
                cancelled.append(r)
        if cancelled:
            self.provenance.append(
                "cancelled common roots at "
                + ", ".join(f"{r:.6g}" for r in cancelled)
            )
        return num, den

    def __call__(self, w):
        return self.numerator(w) / self.denominator(w)

    def derivative(self):
        n, d = self.numerator, self.denominator
        return RationalFunction(
            n.derivative() * d - n * d.derivative(), d * d, self.provenance
        )

    def poles(self):
        """Poles in the finite plane as (location, order) pairs."""
        if self.denominator.degree == 0:
            return []
        return roots_with_multiplicity(self.denominator)

    def __repr__(self):
        return (
            f"RationalFunction({self.numerator.coeffs.tolist()}, "
            f"{self.denominator.coeffs.tolist()})"
        )


def _deflate(p: Polynomial, r):
    # synthetic division by (w - r); remainder discarded (certified small)
    c = p.coeffs
    out = np.zeros(len(c) - 1, dtype=complex)
    out[-1] = c[-1]
    for i in range(len(c) - 3, -1, -1):
        out[i] = c[i + 1] + r * out[i + 1]
    return Polynomial(out)


def polynomial_division(num: Polynomial, den: Polynomial):
    """Quotient and remainder with num = q*den + r, deg r < deg den."""
    q, r = np.polydiv(num.coeffs[::-1], den.coeffs[::-1])
    return Polynomial(np.atleast_1d(q)[::-1]), Polynomial(np.atleast_1d(r)[::-1])


def partial_fractions(f: RationalFunction):
    """Decompose f into (polynomial part, principal parts at each pole).

    The recombined pieces reproduce f; each principal part is extracted from
    local Taylor data of numerator / reduced denominator, which is stable for
    well-separated poles.
    """
    if f.denominator.degree == 0:
        return Polynomial(f.numerator.coeffs), []
    poly_part, _ = polynomial_division(f.numerator, f.denominator)
    parts = []
    pole_list = f.poles()
    for pole, order in pole_list:
        num_local = _series.taylor_shift(f.numerator.coeffs, pole)
        den_local = _series.taylor_shift(f.denominator.coeffs, pole)
        # denominator = u^order * d(u) with d(0) != 0
        d = den_local[order : order + order + 8]
        ser = _series.mul(
            _series.trim(num_local, order + 8), _series.inv(d, order + 8), order + 8
        )
        coeffs = ser[:order][::-1].copy()  # c_j = a_{order-j}, j = 1..order
        parts.append(PrincipalPart(pole, coeffs))
    return poly_part, parts


def reflect(r: RationalFunction):
    """Reflection r*(w) = conj(r(1 / conj(w))) as a rational function.

    On |w| = 1 this is conj(r(w)); reflect is an involution.
    """
    p, q = r.numerator.coeffs, r.denominator.coeffs
    d = max(len(p), len(q)) - 1
    pstar = np.zeros(d + 1, dtype=complex)
    qstar = np.zeros(d + 1, dtype=complex)
    pstar[d - (len(p) - 1) :] = np.conj(p[::-1])
    qstar[d - (len(q) - 1) :] = np.conj(q[::-1])
    return RationalFunction(pstar, qstar, provenance=["circle reflection r*"])


class TwoVarPolynomial:
    """Polynomial in two variables (z, s): sum a[i, j] z^i s^j.

    Normalized instances (the default) are nonzero with max |a_ij| = 1.
    Unnormalized instances may be zero; they only occur as intermediate
    w-coefficients fed to the resultant.
    """

    def __init__(self, coeffs, normalize=True):
        c = np.atleast_2d(np.asarray(coeffs, dtype=complex))
        scale = np.max(np.abs(c))
        if normalize:
            if scale == 0:
                raise AlgebraError("zero two-variable polynomial")
            c = _strip2d(c / scale)
        elif scale == 0:
            c = np.zeros((1, 1), dtype=complex)
        self.coeffs = c

    @property
    def degree_z(self):
        return self.coeffs.shape[0] - 1

    @property
    def degree_s(self):
        return self.coeffs.shape[1] - 1

    def __call__(self, z, s):
        z = np.asarray(z, dtype=complex)
        s = np.asarray(s, dtype=complex)
        # Horner in z of Horner-in-s rows
        out = np.zeros(np.broadcast(z, s).shape, dtype=complex)
        for row in self.coeffs[::-1]:
            inner = np.zeros_like(out)
            for c in row[::-1]:
                inner = inner * s + c
            out = out * z + inner
        return out if out.ndim else complex(out)

    def __repr__(self):
        return f"TwoVarPolynomial(degree_z={self.degree_z}, degree_s={self.degree_s})"


def _strip2d(c, tol=1e-13):
    mask = np.abs(c) > tol * np.max(np.abs(c))
    if not mask.any():
        raise AlgebraError("two-variable polynomial vanished after stripping")
    rows = np.nonzero(mask.any(axis=1))[0]
    cols = np.nonzero(mask.any(axis=0))[0]
    out = c[: rows[-1] + 1, : cols[-1] + 1].copy()
    out[np.abs(out) <= tol * np.max(np.abs(c))] = 0.0
    return out


def _sylvester(a, b):
    """Sylvester matrix of two coefficient vectors (ascending order)."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    mat = np.zeros((size, size), dtype=complex)
    ad, bd = a[::-1], b[::-1]
    for i in range(n):
        mat[i, i : i + m + 1] = ad
    for i in range(m):
        mat[n + i, i : i + n + 1] = bd
    return mat


def resultant_eliminate(p_coeffs, q_coeffs):
    """Resultant in w of two polynomials whose w-coefficients are
    TwoVarPolynomials in (z, s).

    Evaluation-interpolation: coefficients are evaluated on roots-of-unity
    grids in z and s, numeric Sylvester determinants are taken, and the
    coefficient matrix is recovered by 2-D FFT.  Result normalized to
    max |a_ij| = 1.
    """
    p_coeffs = list(p_coeffs)
    q_coeffs = list(q_coeffs)
    if len(p_coeffs) < 2 or len(q_coeffs) < 2:
        raise ValueError("both inputs must be nonconstant in w")
    degw_p, degw_q = len(p_coeffs) - 1, len(q_coeffs) - 1

    def zdeg(cs):
        return max(c.degree_z for c in cs)

    def sdeg(cs):
        return max(c.degree_s for c in cs)

    dz = degw_q * zdeg(p_coeffs) + degw_p * zdeg(q_coeffs)
    ds = degw_q * sdeg(p_coeffs) + degw_p * sdeg(q_coeffs)
    if dz + ds > MAX_RESULTANT_TOTAL_DEGREE:
        raise CapacityError(
            f"resultant degree bound {dz}+{ds} exceeds total-degree cap "
            f"{MAX_RESULTANT_TOTAL_DEGREE}"
        )
    nz, ns = dz + 1, ds + 1
    zg = np.exp(2j * np.pi * np.arange(nz) / nz)
    sg = np.exp(2j * np.pi * np.arange(ns) / ns)
    Z, S = np.meshgrid(zg, sg, indexing="ij")

    size = degw_p + degw_q
    mats = np.zeros((nz, ns, size, size), dtype=complex)
    pa = np.array([c(Z, S) for c in p_coeffs])  # (degw_p+1, nz, ns)
    qa = np.array([c(Z, S) for c in q_coeffs])
    pd, qd = pa[::-1], qa[::-1]
    for i in range(degw_q):
        for k in range(degw_p + 1):
            mats[:, :, i, i + k] = pd[k]
    for i in range(degw_p):
        for k in range(degw_q + 1):
            mats[:, :, degw_q + i, i + k] = qd[k]
    vals = np.linalg.det(mats)
    coeff = np.fft.fft2(vals) / (nz * ns)
    if np.max(np.abs(coeff)) < 1e-12:
        raise AlgebraError("resultant degenerated to the zero polynomial")
    return TwoVarPolynomial(coeff)


def constant_2var(value):
    return TwoVarPolynomial([[value]], normalize=False)


def linear_in_z(const, zcoef):
    """TwoVarPolynomial const + zcoef * z (no normalization)."""
    return TwoVarPolynomial([[const], [zcoef]], normalize=False)


def linear_in_s(const, scoef):
    """TwoVarPolynomial const + scoef * s (no normalization)."""
    return TwoVarPolynomial([[const, scoef]], normalize=False)

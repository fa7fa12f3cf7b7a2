"""Quadrature domains as rational images of the unit disc.

A rational map r, injective on the closed disc with no poles there, carries
the circle identity conj(w) = 1/w into the Schwarz function of the image
domain: S(r(w)) = r*(w) with r* the circle reflection of r.  Everything in
this module flows from that construction: poles and principal parts of S by
Laurent inversion, the quadrature identity by the residue functional, the
Cauchy-transform function Q, the decomposition S = p + Q, and the algebraic
boundary curve by resultant elimination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _series
from .errors import ConsistencyError, GeometryError, NumericalError
from .geometry import (
    BoundaryGrid,
    cauchy_eval,
    contour_integral,
    curve_from_rational_image,
    interior_probes,
)
from .rational import (
    PrincipalPart,
    RationalFunction,
    linear_in_s,
    linear_in_z,
    partial_fractions,
    reflect,
    resultant_eliminate,
)

_SERIES_PAD = 12


# ---------------------------------------------------------------------------
# Schwarz function


@dataclass
class SchwarzPole:
    """One pole of the Schwarz function: image location, preimage in the
    disc, order, and the principal part at the location."""

    location: complex
    disc_point: complex
    order: int
    principal: PrincipalPart


class SchwarzFunction:
    """Meromorphic continuation of conj(z) from the boundary of r(D)."""

    def __init__(self, rmap: RationalFunction):
        rmap.check_map_degree()
        _certify_injective(rmap)
        self.rmap = rmap
        self.rstar = reflect(rmap)
        self.rprime = rmap.derivative()
        self.rstar_prime = self.rstar.derivative()
        self.poles = _schwarz_poles(rmap, self.rstar)
        # Newton warm starts: images of a small polar grid of the disc
        th = np.exp(1j * np.linspace(0, 2 * np.pi, 64, endpoint=False))
        ws = np.concatenate([rho * th for rho in (0.999, 0.85, 0.6, 0.35)] + [[0.0]])
        self._starts = ws
        self._start_images = rmap(ws)

    # -- inversion ----------------------------------------------------------

    def invert(self, z):
        """w = r^{-1}(z) for z in the closed image domain (Newton)."""
        z = np.asarray(z, dtype=complex)
        flat = np.atleast_1d(z).ravel()
        nearest = np.argmin(
            np.abs(self._start_images[None, :] - flat[:, None]), axis=1
        )
        w = self._starts[nearest].copy()
        for _ in range(30):
            fw = self.rmap(w) - flat
            if np.max(np.abs(fw)) < 1e-13 * max(1.0, float(np.max(np.abs(flat)))):
                break
            w = w - fw / self.rprime(w)
        resid = np.max(np.abs(self.rmap(w) - flat))
        if resid > 1e-9 or np.max(np.abs(w)) > 1 + 1e-7:
            raise NumericalError(
                f"Newton inversion of the boundary map failed (residual {resid:.3g})"
            )
        out = w.reshape(np.atleast_1d(z).shape)
        return out if z.ndim else complex(out[0])

    def at(self, z):
        """S(z) by inversion and reflection."""
        w = self.invert(z)
        return self.rstar(w)

    def derivative_at(self, z):
        """S'(z) = r*'(w)/r'(w) at w = r^{-1}(z)."""
        w = self.invert(z)
        return self.rstar_prime(w) / self.rprime(w)

    def principal_sum(self, z):
        """p(z): sum of the principal parts of S."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros(np.atleast_1d(z).shape, dtype=complex)
        for pole in self.poles:
            out += pole.principal(np.atleast_1d(z))
        return out if z.ndim else complex(out[0])

    def boundary_residual(self, grid: BoundaryGrid):
        """sup_k |S(z_k) - conj(z_k)|: the defining boundary identity."""
        return float(np.max(np.abs(self.at(grid.z) - np.conj(grid.z))))

    def __repr__(self):
        locs = ", ".join(f"{p.location:.4g}(x{p.order})" for p in self.poles)
        return f"SchwarzFunction(poles: {locs})"


def _certify_injective(rmap: RationalFunction):
    """Boundary image simple + winding(r(circle), r(0)) == 1 + poles outside."""
    for pole, _ in rmap.poles():
        if abs(pole) <= 1 + 1e-9:
            raise GeometryError(
                f"map has a pole at {pole:.6g} on or inside the closed unit disc"
            )
    # raises GeometryError naming parameters if the image curve is not simple
    curve_from_rational_image(rmap, label="image boundary")
    t = np.linspace(0, 2 * np.pi, 1024, endpoint=False)
    w = np.exp(1j * t)
    z = rmap(w)
    dz = rmap.derivative()(w) * 1j * w
    z0 = rmap(0.0)
    wind = np.sum(dz / (z - z0)) * (2 * np.pi / 1024) / (2j * np.pi)
    if int(np.rint(wind.real)) != 1 or abs(wind - np.rint(wind.real)) > 1e-8:
        raise GeometryError(
            f"map is not injective: winding of the boundary image about r(0) "
            f"is {wind:.4g}, expected 1"
        )


def _taylor_series(rf: RationalFunction, center, order):
    """Taylor coefficients of a rational function about a regular point."""
    num = _series.taylor_shift(rf.numerator.coeffs, center)
    den = _series.taylor_shift(rf.denominator.coeffs, center)
    return _series.mul(_series.trim(num, order), _series.inv(den, order), order)


def _schwarz_poles(rmap, rstar):
    _, parts = partial_fractions(rstar)
    poles = []
    for part in parts:
        q = part.pole
        if abs(q) >= 1:
            continue  # reflections of disc-side structure live outside
        order = part.order
        z0 = complex(rmap(q))
        L = 2 * order + _SERIES_PAD
        # local inverse of r about q: w - q = v(z - z0), v(0) = 0
        f = _taylor_series(rmap, q, L)
        f[0] = 0.0  # exact by construction, kill rounding residue
        v = _series.reversion(f, L)
        vhat = v[1:]  # v = x * vhat with vhat[0] = 1/r'(q) != 0
        coeffs = np.zeros(order, dtype=complex)
        for i in range(1, order + 1):
            inv_pow = _series.powi(_series.inv(vhat, L - 1), i, L - 1)
            for j in range(1, i + 1):
                coeffs[j - 1] += part.coeffs[i - 1] * inv_pow[i - j]
        poles.append(
            SchwarzPole(
                location=z0,
                disc_point=complex(q),
                order=order,
                principal=PrincipalPart(z0, coeffs),
            )
        )
    poles.sort(key=lambda p: (abs(p.location), p.location.real, p.location.imag))
    return poles


def schwarz_from_rational(rmap) -> SchwarzFunction:
    """Schwarz function of the image of the unit disc under ``rmap``."""
    if not isinstance(rmap, RationalFunction):
        rmap = RationalFunction(rmap)
    return SchwarzFunction(rmap)


def probe_principal_part(S: SchwarzFunction, pole: SchwarzPole, radius=None):
    """Contour-probe the principal coefficients at one pole of S.

    Independent of the Laurent-inversion route: small-circle residue
    integrals of S(z) (z - z0)^{j-1} evaluated through Newton inversion.
    """
    others = [p.location for p in S.poles if p is not pole]
    dmin = min(
        [abs(pole.location - o) for o in others]
        + [float(np.min(np.abs(S._start_images[:64] - pole.location)))]
    )
    rho = radius if radius is not None else 0.45 * dmin
    t = np.linspace(0, 2 * np.pi, 256, endpoint=False)
    ring = pole.location + rho * np.exp(1j * t)
    vals = S.at(ring)
    out = np.zeros(pole.order, dtype=complex)
    for j in range(1, pole.order + 1):
        integrand = vals * (ring - pole.location) ** (j - 1)
        out[j - 1] = np.sum(integrand * 1j * rho * np.exp(1j * t)) * (
            2 * np.pi / 256
        ) / (2j * np.pi)
    return out


# ---------------------------------------------------------------------------
# Quadrature identity


@dataclass
class QuadratureData:
    """Nodes w_j, orders n_j and coefficients c_{jk} of the identity
    iint f dA = sum_j sum_{k<=n_j} c_{jk} f^{(k)}(w_j)."""

    nodes: np.ndarray
    orders: np.ndarray
    coeffs: list  # coeffs[j][k] multiplies f^{(k)}(w_j)
    fit_residual: float = 0.0

    def apply_to_poly(self, poly_coeffs):
        """Apply the quadrature functional to a polynomial (ascending)."""
        c = np.asarray(poly_coeffs, dtype=complex)
        total = 0.0 + 0.0j
        for node, cj in zip(self.nodes, self.coeffs):
            d = c.copy()
            for k, cjk in enumerate(cj):
                val = 0.0 + 0.0j
                for p in range(len(d) - 1, -1, -1):
                    val = val * node + d[p]
                total += cjk * val
                d = d[1:] * np.arange(1, len(d))  # derivative
        return total


def residue_quadrature_coefficients(S: SchwarzFunction):
    """Exact coefficients c_{jk} = pi b_{j,k+1} / k! from the principal parts
    of S (the residue functional applied to iint f dA = (1/2i) oint S f dz)."""
    coeffs = []
    for pole in S.poles:
        b = pole.principal.coeffs
        coeffs.append(
            np.array(
                [np.pi * b[k] / math.factorial(k) for k in range(pole.order)],
                dtype=complex,
            )
        )
    return coeffs


def quadrature_from_schwarz(S: SchwarzFunction, test_degree=8) -> QuadratureData:
    """Solve for quadrature coefficients by moment matching.

    The residue functional of S gives the monomial moments; the linear
    system for c_{jk} over monomials up to sum(n_j + 1) + test_degree is
    solved by least squares and must close to ~1e-9.
    """
    nodes = np.array([p.location for p in S.poles], dtype=complex)
    orders = np.array([p.order - 1 for p in S.poles], dtype=int)
    exact = residue_quadrature_coefficients(S)
    ncoef = int(np.sum(orders + 1))
    nmom = ncoef + int(test_degree)
    # moments mu_m = pi * sum_j Res(S z^m, w_j) from the principal parts
    mu = np.zeros(nmom, dtype=complex)
    for pole in S.poles:
        b = pole.principal.coeffs
        for m in range(nmom):
            # Res( (z-w)^{-i} z^m ) = binom(m, i-1) w^{m-i+1}
            acc = 0.0 + 0.0j
            for i in range(1, pole.order + 1):
                if i - 1 <= m:
                    acc += b[i - 1] * math.comb(m, i - 1) * pole.location ** (
                        m - i + 1
                    )
            mu[m] += np.pi * acc
    design = np.zeros((nmom, ncoef), dtype=complex)
    col = 0
    for j, node in enumerate(nodes):
        for k in range(orders[j] + 1):
            for m in range(nmom):
                if k <= m:
                    design[m, col] = (
                        math.factorial(m) / math.factorial(m - k) * node ** (m - k)
                    )
            col += 1
    sol, res, rank, _ = np.linalg.lstsq(design, mu, rcond=1e-13)
    if rank < ncoef:
        raise NumericalError(
            f"quadrature moment system is rank deficient ({rank} < {ncoef}); "
            "pole identification is suspect"
        )
    resid = float(np.max(np.abs(design @ sol - mu)))
    if resid > 1e-9 * max(1.0, float(np.max(np.abs(mu)))):
        raise NumericalError(f"quadrature moment fit residual {resid:.3g} too large")
    coeffs = []
    col = 0
    for j in range(len(nodes)):
        nj = orders[j] + 1
        coeffs.append(sol[col : col + nj].copy())
        col += nj
    qd = QuadratureData(nodes=nodes, orders=orders, coeffs=coeffs, fit_residual=resid)
    # cross-check against the closed-form residue route
    for cj, ej in zip(qd.coeffs, exact):
        if np.max(np.abs(cj - ej)) > 1e-8 * max(1.0, float(np.max(np.abs(ej)))):
            raise ConsistencyError(
                "moment-fit quadrature coefficients disagree with the residue route"
            )
    return qd


# ---------------------------------------------------------------------------
# Area functionals


def area_integral(grid: BoundaryGrid, f):
    """iint_Omega f dA for holomorphic f via the Stokes reduction
    (1/2i) oint conj(z) f dz.  ``f`` is boundary node data or an integer
    monomial degree."""
    if isinstance(f, (int, np.integer)):
        values = grid.z ** int(f)
    else:
        values = f
    return contour_integral(grid, np.conj(grid.z) * np.asarray(values)) / 2j


def pullback_area_integral(rmap, f, nrad=2048, ntheta=512):
    """2-D oracle: iint_{r(D)} f dA by midpoint(rho) x trapezoid(theta)
    pullback with Jacobian |r'|^2.  Independent of all boundary reductions."""
    rho = (np.arange(nrad) + 0.5) / nrad
    th = 2 * np.pi * np.arange(ntheta) / ntheta
    w = rho[:, None] * np.exp(1j * th[None, :])
    if isinstance(rmap, RationalFunction):
        rp = rmap.derivative()
        jac = np.abs(rp(w)) ** 2
        vals = f(rmap(w))
    else:
        raise ValueError("pullback oracle needs a RationalFunction map")
    integrand = vals * jac * rho[:, None]
    return complex(np.sum(integrand) * (1.0 / nrad) * (2 * np.pi / ntheta))


def q_function(grid: BoundaryGrid, z):
    """Qhat(z) = (1/2 pi i) oint conj(w)/(w - z) dw at interior point(s).

    Normalization carries the 1/(2 pi i) factor so that S = p + Qhat holds
    exactly; proximity and membership rules follow cauchy_eval.
    """
    return cauchy_eval(grid, np.conj(grid.z), z)


# ---------------------------------------------------------------------------
# Decomposition S = p + Qhat


@dataclass
class SchwarzDecomposition:
    """Principal parts p of S plus the Cauchy remainder Qhat, with the
    certified residual sup |S - p - Qhat| over an interior probe set."""

    schwarz: SchwarzFunction
    grid: BoundaryGrid
    principal_parts: list
    probes: np.ndarray
    residual: float
    probe_consistency: float

    def q_at(self, z):
        return q_function(self.grid, z)

    def principal_at(self, z):
        return self.schwarz.principal_sum(z)


def schwarz_decompose(S: SchwarzFunction, grid: BoundaryGrid, nprobes=50) -> SchwarzDecomposition:
    """Certify S = p + Qhat on an interior probe set.

    Also cross-checks the symbolically extracted principal parts against
    contour-probe residues; disagreement raises ConsistencyError.
    """
    worst = 0.0
    for pole in S.poles:
        probed = probe_principal_part(S, pole)
        scale = max(1.0, float(np.max(np.abs(pole.principal.coeffs))))
        err = float(np.max(np.abs(probed - pole.principal.coeffs))) / scale
        worst = max(worst, err)
        if err > 1e-6:
            raise ConsistencyError(
                f"principal part at {pole.location:.6g}: Laurent route and "
                f"contour probe disagree by {err:.3g}"
            )
    avoid = [p.location for p in S.poles]
    probes = interior_probes(grid, nprobes, avoid=avoid, avoid_radius=0.15)
    svals = S.at(probes)
    pvals = S.principal_sum(probes)
    qvals = q_function(grid, probes)
    residual = float(np.max(np.abs(svals - pvals - qvals)))
    return SchwarzDecomposition(
        schwarz=S,
        grid=grid,
        principal_parts=[p.principal for p in S.poles],
        probes=probes,
        residual=residual,
        probe_consistency=worst,
    )


# ---------------------------------------------------------------------------
# Algebraic boundary curve


def boundary_algebraic_curve(S: SchwarzFunction, nsamples=256, tol=1e-8):
    """Real algebraic polynomial P(z, s) with P(z, conj z) = 0 on the boundary.

    Eliminates w from {z - r(w), s - r*(w)} (denominators cleared) by the
    Sylvester resultant; certifies vanishing at boundary samples.
    """
    p = S.rmap.numerator.coeffs
    q = S.rmap.denominator.coeffs
    ps = S.rstar.numerator.coeffs
    qs = S.rstar.denominator.coeffs
    degw = max(len(p), len(q)) - 1
    degws = max(len(ps), len(qs)) - 1
    a_coeffs = [
        linear_in_z(-(p[k] if k < len(p) else 0.0), q[k] if k < len(q) else 0.0)
        for k in range(degw + 1)
    ]
    b_coeffs = [
        linear_in_s(-(ps[k] if k < len(ps) else 0.0), qs[k] if k < len(qs) else 0.0)
        for k in range(degws + 1)
    ]
    P = resultant_eliminate(a_coeffs, b_coeffs)
    t = np.linspace(0, 2 * np.pi, nsamples, endpoint=False)
    zb = S.rmap(np.exp(1j * t))
    resid = float(np.max(np.abs(P(zb, np.conj(zb)))))
    if resid > tol:
        raise NumericalError(
            f"boundary algebraic curve fails to vanish on samples "
            f"(residual {resid:.3g})"
        )
    return P


# ---------------------------------------------------------------------------
# Unit-modulus derivative identity


@dataclass
class SchwarzDerivativeReport:
    modulus_residual: float  # sup | |S'| - 1 |
    tangent_residual: float  # sup | T - conj(S' T) |


def schwarz_unit_derivative_check(S: SchwarzFunction, grid: BoundaryGrid):
    """Residuals of |S'| = 1 and T = conj(S' T) at the boundary nodes."""
    sp = S.derivative_at(grid.z)
    mod = float(np.max(np.abs(np.abs(sp) - 1.0)))
    tan = float(np.max(np.abs(grid.tangent - np.conj(sp * grid.tangent))))
    return SchwarzDerivativeReport(modulus_residual=mod, tangent_residual=tan)

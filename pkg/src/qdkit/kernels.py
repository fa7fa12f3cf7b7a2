"""Szego, Garabedian and Bergman kernel machinery on boundary grids.

The Szego kernel is computed from the Kerzman-Stein second-kind integral
equation (I + A) S(.,a) = e_a with the smooth skew-hermitian kernel

    A(z, w) = (1/2 pi i) [ T(w)/(w-z) - conj(T(z)) / (conj w - conj z) ],

discretized by the Nystrom/trapezoid rule and symmetrized with arclength
weights, so the discrete system is a normal perturbation of the identity.
The matrix does not depend on the base point: one LU factorization per grid
serves every right-hand side.

Everything else is built on top: the Garabedian kernel through its boundary
identity with the Szego kernel, the Ahlfors map as their quotient, harmonic
measures by least-squares collocation in an exactly-harmonic basis, and the
Bergman kernel as 4 pi S^2 plus a hermitian correction on the span of the
harmonic-measure derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import GeometryError, NumericalError, ProximityError
from .geometry import (
    BoundaryFunction,
    BoundaryGrid,
    cauchy_derivative,
    cauchy_eval,
    contour_integral,
    interior_anchor,
    interior_probes,
    winding_number,
)

_TWO_PI_I = 2j * np.pi


# ---------------------------------------------------------------------------
# Kerzman-Stein solver


def _ks_factorization(grid: BoundaryGrid):
    """LU factorization of the symmetrized Kerzman-Stein system plus the
    boundary-limit Cauchy projection apparatus (cached on the grid)."""
    cache = getattr(grid, "_ks_cache", None)
    if cache is not None:
        return cache
    z, T, ds = grid.z, grid.tangent, grid.ds
    D = z[None, :] - z[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        A = (T[None, :] / D - np.conj(T)[:, None] / np.conj(D)) / _TWO_PI_I
    np.fill_diagonal(A, 0.0)  # arclength diagonal limit vanishes
    root = np.sqrt(ds)
    B = A * root[:, None] * root[None, :]
    M = np.eye(grid.size, dtype=complex) + B
    lu = scipy.linalg.lu_factor(M)

    # Cauchy-projection matrix: plain trapezoid weights off the diagonal,
    # same-curve singularity handled by subtraction (see _cauchy_project).
    with np.errstate(divide="ignore", invalid="ignore"):
        cmat = grid.dzw[None, :] / D / _TWO_PI_I
    np.fill_diagonal(cmat, 0.0)
    rowsum_same = np.zeros(grid.size, dtype=complex)
    chi = np.zeros(grid.size)
    for ci, sl in enumerate(grid.slices):
        rowsum_same[sl] = np.sum(cmat[sl, sl], axis=1)
        chi[sl] = 1.0 if ci == 0 else 0.0
    cache = (lu, root, cmat, rowsum_same, chi)
    grid._ks_cache = cache
    return cache


def _cauchy_project(grid: BoundaryGrid, y):
    """Boundary values (from inside) of the Cauchy integral of node data y.

    Plemelj limit with the singularity subtracted on the self curve:
    the inside limit over the curve carrying z_j is
    chi * y_j + (1/2 pi i) oint (y - y_j)/(w - z_j) dw, where the removable
    diagonal value of the integrand is y'(t_j)/z'(t_j) and chi is 1 on the
    outer curve, 0 on hole curves.
    """
    _, _, cmat, rowsum_same, chi = _ks_factorization(grid)
    dy = grid.differentiate(y)
    out = cmat @ y - rowsum_same * y + chi * y
    out += dy * grid.dt / _TWO_PI_I
    return out


def _check_interior(grid, a, factor=2.0, what="base point"):
    a = complex(a)
    d = grid.boundary_distance(a)
    h = grid.local_spacing(a)
    if d < factor * h:
        raise ProximityError(
            f"{what} {a:.6g} is within {factor:g} node spacings of the boundary"
        )
    if winding_number(grid, a) != 1:
        raise GeometryError(f"{what} {a:.6g} is not inside the domain")
    return a


def szego_boundary_values(grid: BoundaryGrid, a):
    """Boundary values of S(., a): Szego projection of the Cauchy kernel.

    Solves (I + A) y = e_a, then applies the boundary-limit Cauchy
    projection (the Szego projection equals C (I + A)^{-1}); on simply
    connected domains the projection is the identity on y.
    """
    a = _check_interior(grid, a)
    lu, root = _ks_factorization(grid)[:2]
    e_a = np.conj(grid.tangent / (grid.z - a) / _TWO_PI_I)
    y = scipy.linalg.lu_solve(lu, e_a * root) / root
    return _cauchy_project(grid, y)


class SzegoData:
    """Boundary data of the Szego and Garabedian kernels for one base point.

    Attributes
    ----------
    grid : BoundaryGrid
    a : complex, base point in the domain
    szego : S(z_k, a) at the nodes
    garabedian : L(z_k, a) at the nodes, from (1/i) L T = S(a, .) on the
        boundary and hermitian symmetry
    s_aa : S(a, a) > 0
    zeros : the n-1 zeros of S(., a) in the domain (computed on demand)
    """

    def __init__(self, grid, a, szego):
        self.grid = grid
        self.a = a
        self.szego = szego
        self.garabedian = 1j * np.conj(szego) / grid.tangent
        s_aa = cauchy_eval(grid, szego, a)
        if abs(s_aa.imag) > 1e-6 * max(abs(s_aa.real), 1e-12) or s_aa.real <= 0:
            raise NumericalError(
                f"S(a,a) = {s_aa:.3e} is not real positive; grid under-resolved"
            )
        self.s_aa = float(s_aa.real)
        self._zeros = None

    def szego_at(self, z):
        """S(z, a) at interior point(s) z."""
        return cauchy_eval(self.grid, self.szego, z)

    def garabedian_at(self, z):
        """L(z, a) at interior points; Cauchy integral plus the pole at a."""
        z = np.asarray(z, dtype=complex)
        base = cauchy_eval(self.grid, self.garabedian, z)
        return base + 1.0 / (2 * np.pi * (z - self.a))

    @property
    def zeros(self):
        if self._zeros is None:
            self._zeros = szego_zeros(self)
        return self._zeros

    def __repr__(self):
        return f"SzegoData(a={self.a:.6g}, S(a,a)={self.s_aa:.6g})"


def szego_solve(grid: BoundaryGrid, a) -> SzegoData:
    """Solve for the Szego kernel with base point ``a``."""
    a = complex(a)
    return SzegoData(grid, a, szego_boundary_values(grid, a))


def garabedian_boundary(sz: SzegoData) -> BoundaryFunction:
    """Boundary values of the Garabedian kernel L(., a)."""
    return BoundaryFunction(sz.grid, sz.garabedian)


class AhlforsMap:
    """Ahlfors map f_a = S(., a)/L(., a): proper n-to-one map onto the disc."""

    def __init__(self, sz: SzegoData):
        self.sz = sz
        self.grid = sz.grid
        self.a = sz.a
        self.boundary = sz.szego / sz.garabedian

    def at(self, z):
        return cauchy_eval(self.grid, self.boundary, z)

    def derivative_at(self, z, m=1):
        return cauchy_derivative(self.grid, self.boundary, z, m)

    @property
    def modulus_residual(self):
        """sup | |f_a| - 1 | over the boundary nodes."""
        return float(np.max(np.abs(np.abs(self.boundary) - 1.0)))

    def __repr__(self):
        return f"AhlforsMap(a={self.a:.6g})"


def ahlfors_map(sz: SzegoData) -> AhlforsMap:
    return AhlforsMap(sz)


def szego_zeros(sz: SzegoData):
    """Zeros of S(., a) in the domain: argument-principle moments + Newton.

    The zero count must equal connectivity - 1; a mismatch signals an
    under-resolved grid.
    """
    grid = sz.grid
    expected = grid.connectivity - 1
    logder = grid.differentiate(sz.szego) / sz.szego  # (d/dt S)/S
    count_val = np.sum(logder * grid.dt) / _TWO_PI_I
    count = int(np.rint(count_val.real))
    if count != expected or abs(count_val - count) > 1e-6:
        raise NumericalError(
            f"argument principle counted {count_val:.4g} zeros of S(.,a), "
            f"expected {expected}; increase N"
        )
    if expected == 0:
        return np.zeros(0, dtype=complex)
    mu = [
        complex(np.sum(grid.z**p * logder * grid.dt) / _TWO_PI_I)
        for p in range(1, expected + 1)
    ]
    # Newton's identities: elementary symmetric functions from power sums
    e = [1.0 + 0j]
    for k in range(1, expected + 1):
        acc = 0.0 + 0j
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * mu[i - 1]
        e.append(acc / k)
    coeffs = [(-1) ** k * e[k] for k in range(expected + 1)]  # descending
    zero_est = np.roots(coeffs) if expected > 1 else np.array([e[1]])
    zeros = []
    for z in zero_est:
        z = complex(z)
        for _ in range(30):
            val = cauchy_eval(grid, sz.szego, z)
            der = cauchy_derivative(grid, sz.szego, z, 1)
            step = val / der
            z -= step
            if abs(step) < 1e-12:
                break
        if abs(cauchy_eval(grid, sz.szego, z)) > 1e-6 * max(1.0, sz.s_aa):
            raise NumericalError(f"zero refinement failed near {z:.6g}")
        zeros.append(z)
    return np.array(zeros, dtype=complex)


# ---------------------------------------------------------------------------
# Harmonic measures and the F' basis

_TERM_LADDER = (16, 24, 32, 48, 64)


class HarmonicBasis:
    """Harmonic measures of the hole curves and their derivative functions.

    omega_j solves the Dirichlet problem with boundary value 1 on hole j and
    0 elsewhere; the associated holomorphic derivative is F_j' = 2 d omega_j
    / dz.  Represented in an exactly-harmonic basis (constant, scaled powers
    about the outer center, log terms and scaled inverse powers about each
    hole center), so F_j' is available in closed form everywhere.

    gram[i, k] = Bergman inner product <F_i', F_k'>, computed from the flux
    periods Im oint_{hole i} F_k' dz.
    """

    def __init__(self, grid, z0, r0, centers, radii, coeffs, nterms, residual):
        self.grid = grid
        self.z0 = z0
        self.r0 = r0
        self.centers = centers
        self.radii = radii
        self.coeffs = coeffs  # (ncols, nh) real
        self.nterms = nterms
        self.residual = residual
        nh = self.count
        self.fprime_boundary = (
            self.fprime_at(grid.z) if nh else np.zeros((grid.size, 0))
        )
        self.omega_boundary = (
            self.omega_at(grid.z) if nh else np.zeros((grid.size, 0))
        )
        gram = np.zeros((nh, nh))
        for i in range(nh):
            sl = grid.slices[i + 1]
            for k in range(nh):
                per = np.sum(self.fprime_boundary[sl, k] * grid.dzw[sl])
                gram[i, k] = per.imag
        self.gram = 0.5 * (gram + gram.T)
        if nh and np.min(np.linalg.eigvalsh(self.gram)) <= 0:
            raise NumericalError("harmonic-measure Gram matrix not positive definite")

    @property
    def count(self):
        return self.coeffs.shape[1] if self.coeffs.size else 0

    def fprime_at(self, z):
        """F_j'(z) for all j, shape z.shape + (count,)."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape + (self.count,), dtype=complex)
        for j in range(self.count):
            c = self.coeffs[:, j]
            pos = 1  # skip constant column
            acc = np.zeros(z.shape, dtype=complex)
            m = self.nterms
            alpha = c[pos : pos + m] - 1j * c[pos + m : pos + 2 * m]
            zeta = (z[..., None] - self.z0) / self.r0
            marr = np.arange(1, m + 1)
            acc += ((marr * zeta ** (marr - 1) / self.r0) @ alpha)
            pos += 2 * m
            for q, rho in zip(self.centers, self.radii):
                clog = c[pos]
                pos += 1
                beta = c[pos : pos + m] - 1j * c[pos + m : pos + 2 * m]
                pos += 2 * m
                u = rho / (z[..., None] - q)
                acc += clog / (z - q)
                acc += ((-marr * u**marr / (z[..., None] - q)) @ beta)
            out[..., j] = acc
        return out

    def omega_at(self, z):
        """omega_j(z) for all j, shape z.shape + (count,), real."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape + (self.count,), dtype=float)
        for j in range(self.count):
            c = self.coeffs[:, j]
            acc = np.full(z.shape, c[0], dtype=float)
            pos = 1
            m = self.nterms
            marr = np.arange(1, m + 1)
            zeta = (z[..., None] - self.z0) / self.r0
            pw = zeta**marr
            acc += pw.real @ c[pos : pos + m] + pw.imag @ c[pos + m : pos + 2 * m]
            pos += 2 * m
            for q, rho in zip(self.centers, self.radii):
                acc += c[pos] * np.log(np.abs(z - q))
                pos += 1
                u = (rho / (z[..., None] - q)) ** marr
                acc += u.real @ c[pos : pos + m] + u.imag @ c[pos + m : pos + 2 * m]
                pos += 2 * m
            out[..., j] = acc
        return out

    def __repr__(self):
        return f"HarmonicBasis(count={self.count}, residual={self.residual:.3g})"


def harmonic_measures(grid: BoundaryGrid, tol=1e-8) -> HarmonicBasis:
    """Solve the hole-curve Dirichlet problems by harmonic least squares."""
    nh = grid.connectivity - 1
    outer = grid.z[grid.slices[0]]
    z0 = complex(np.mean(outer))
    r0 = float(np.max(np.abs(outer - z0)))
    centers, radii = [], []
    for i in range(nh):
        w = grid.z[grid.slices[i + 1]]
        q = complex(np.mean(w))
        centers.append(q)
        radii.append(float(np.max(np.abs(w - q))))
    if nh == 0:
        return HarmonicBasis(grid, z0, r0, [], [], np.zeros((0, 0)), 0, 0.0)

    targets = np.zeros((grid.size, nh))
    for j in range(nh):
        targets[grid.slices[j + 1], j] = 1.0

    last_residual = np.inf
    for nterms in _TERM_LADDER:
        if nterms > max(grid.ns) // 2 and nterms != _TERM_LADDER[0]:
            break
        cols = [np.ones((grid.size, 1))]
        marr = np.arange(1, nterms + 1)
        zeta = (grid.z[:, None] - z0) / r0
        pw = zeta**marr
        cols.extend([pw.real, pw.imag])
        for q, rho in zip(centers, radii):
            cols.append(np.log(np.abs(grid.z - q))[:, None])
            u = (rho / (grid.z[:, None] - q)) ** marr
            cols.extend([u.real, u.imag])
        A = np.hstack(cols)
        sol, *_ = np.linalg.lstsq(A, targets, rcond=1e-13)
        resid = float(np.max(np.abs(A @ sol - targets)))
        if resid < tol:
            return HarmonicBasis(
                grid, z0, r0, centers, radii, sol, nterms, resid
            )
        last_residual = min(last_residual, resid)
    raise NumericalError(
        f"Dirichlet solve failure: residual {last_residual:.3e} above {tol:.1e}"
    )


# ---------------------------------------------------------------------------
# Bergman kernel assembly


class BergmanData:
    """Bergman kernel K(z, w) = 4 pi S(z,w)^2 + sum lam_ij F_i'(z) conj(F_j'(w)).

    Two-point Szego data comes from re-solving the Kerzman-Stein system per
    second point (one LU back-substitution each, cached by point).  The
    hermitian coefficient matrix ``lam`` is pinned by enforcing the
    reproducing property against each F_k', with every area integral reduced
    exactly to boundary integrals.
    """

    def __init__(self, grid: BoundaryGrid, sz: SzegoData, hb: HarmonicBasis):
        self.grid = grid
        self.base = sz
        self.hb = hb
        self._sz_cache: dict[complex, np.ndarray] = {sz.a: sz.szego}
        nh = hb.count
        self.probes = np.zeros(0, dtype=complex)
        self.lam = np.zeros((nh, nh), dtype=complex)
        self.lam_asymmetry = 0.0
        if nh:
            self._determine_lambda()

    # -- szego cache --------------------------------------------------------

    def szego_boundary(self, w):
        w = complex(w)
        hit = self._sz_cache.get(w)
        if hit is None:
            hit = szego_boundary_values(self.grid, w)
            self._sz_cache[w] = hit
        return hit

    # -- lambda system ------------------------------------------------------

    def _determine_lambda(self):
        grid, hb = self.grid, self.hb
        nh = hb.count
        cands = interior_probes(grid, 8 * nh, seed_angle=0.37)
        chosen = []
        for p in cands:
            trial = chosen + [p]
            W = np.conj(hb.fprime_at(np.array(trial)).T)
            if np.linalg.matrix_rank(W, tol=1e-10) == len(trial):
                chosen.append(p)
            if len(chosen) == nh:
                break
        if len(chosen) < nh:
            raise NumericalError("could not find independent probe points for lambda")
        probes = np.array(chosen)
        self.probes = probes
        W = np.conj(hb.fprime_at(probes).T)  # W[j, p] = conj(F_j'(w_p))
        R = np.zeros((nh, nh), dtype=complex)
        for pi, p in enumerate(probes):
            sb = self.szego_boundary(p)
            for k in range(nh):
                sl = grid.slices[k + 1]
                flux = np.sum(sb[sl] ** 2 * grid.dzw[sl])
                R[k, pi] = np.conj(hb.fprime_at(p))[k] - 4 * np.pi * flux / 1j
        lam = np.linalg.solve(hb.gram, R) @ np.linalg.inv(W)
        herm = 0.5 * (lam + lam.conj().T)
        self.lam_asymmetry = float(
            np.max(np.abs(lam - herm)) / max(1.0, np.max(np.abs(herm)))
        )
        if self.lam_asymmetry > 1e-4:
            raise NumericalError(
                f"lambda system produced non-hermitian coefficients "
                f"(asymmetry {self.lam_asymmetry:.3e})"
            )
        self.lam = herm

    # -- evaluators ---------------------------------------------------------

    def kernel_boundary(self, w):
        """Boundary trace z_k -> K(z_k, w) for interior w."""
        sb = self.szego_boundary(w)
        out = 4 * np.pi * sb**2
        if self.hb.count:
            fw = self.hb.fprime_at(complex(w))
            out = out + self.hb.fprime_boundary @ (self.lam @ np.conj(fw))
        return out

    def kernel(self, z, w):
        """K(z, w) at interior points (z may be an array)."""
        return cauchy_eval(self.grid, self.kernel_boundary(w), z)

    def _circle(self, w, ncirc):
        w = complex(w)
        d = self.grid.boundary_distance(w)
        h = self.grid.local_spacing(w)
        if d < 4.0 * h:
            raise ProximityError(
                f"derivative point {w:.6g} is within 4 node spacings of the boundary"
            )
        rho = min(d / 2.0, 0.1)
        theta = 2 * np.pi * np.arange(ncirc) / ncirc
        return w + rho * np.exp(1j * theta), rho

    def kernel_derivative_boundary(self, w, m, ncirc=32):
        """Boundary trace of K^{(m)}(., w) = (d^m/d wbar^m) K(., w)."""
        if m == 0:
            return self.kernel_boundary(w)
        u, rho = self._circle(w, ncirc)
        G = np.empty((self.grid.size, ncirc), dtype=complex)
        for i, ui in enumerate(u):
            G[:, i] = np.conj(self.kernel_boundary(ui))
        a_m = np.fft.fft(G, axis=1)[:, m] / (ncirc * rho**m)
        return np.conj(math.factorial(m) * a_m)

    def kernel_derivative(self, z, w, m, ncirc=32):
        """K^{(m)}(z, w) at interior z by Cauchy-circle differentiation in w."""
        if m == 0:
            return self.kernel(z, w)
        if not (np.isscalar(z) or np.asarray(z).ndim == 0):
            raise ValueError(
                "kernel_derivative expects a scalar z; use the boundary trace for batches"
            )
        u, rho = self._circle(w, ncirc)
        # g(u) = K(u, z) is holomorphic in u; K^{(m)}(z, w) = conj(g^{(m)}(w))
        g = cauchy_eval(self.grid, self.kernel_boundary(complex(z)), u)
        a_m = np.fft.fft(g)[m] / (ncirc * rho**m)
        return complex(np.conj(math.factorial(m) * a_m))

    def reproduce_residual(self, w, mmax=8):
        """max_m | (boundary-reduced) iint K(z,w) zbar^m dA - conj(w)^m |."""
        kb = self.kernel_boundary(w)
        errs = []
        for m in range(mmax + 1):
            val = np.sum(kb * np.conj(self.grid.z) ** (m + 1) * self.grid.dzw)
            val /= 2j * (m + 1)
            errs.append(abs(val - np.conj(complex(w)) ** m))
        return float(np.max(errs))

    def __repr__(self):
        return f"BergmanData(connectivity={self.grid.connectivity})"


def bergman_assemble(grid: BoundaryGrid, sz: SzegoData, hb: HarmonicBasis | None = None) -> BergmanData:
    if hb is None:
        hb = harmonic_measures(grid)
    return BergmanData(grid, sz, hb)


def bergman_derivative(bd: BergmanData, z, w, m, ncirc=32):
    """K^{(m)}(z, w); m = 0 returns K(z, w) exactly."""
    if m > 8:
        raise ValueError("derivative order capped at 8")
    return bd.kernel_derivative(z, w, m, ncirc)


# ---------------------------------------------------------------------------
# Analyticity certification and the Lambda kernel boundary identity


def analytic_content_residual(grid: BoundaryGrid, values, nmoments=None):
    """Certify that node data is the trace of a function holomorphic in the
    domain: sup over a dual basis g (scaled powers + scaled inverse powers in
    the holes) of |contour values*g dz|, normalized by (1 + sup|values|).

    Vanishes to quadrature accuracy exactly when the data has no
    anti-analytic content.
    """
    values = np.asarray(values, dtype=complex)
    outer = grid.z[grid.slices[0]]
    z0 = complex(np.mean(outer))
    r0 = float(np.max(np.abs(outer - z0)))
    if nmoments is None:
        nmoments = min(24, min(grid.ns) // 4)
    scale = 1.0 + float(np.max(np.abs(values)))
    zeta = (grid.z - z0) / r0
    worst = 0.0
    base = values * grid.dzw
    for m in range(nmoments):
        worst = max(worst, abs(np.sum(base * zeta**m)))
    for i in range(1, grid.n_curves):
        w = grid.z[grid.slices[i]]
        q = complex(np.mean(w))
        rho = float(np.max(np.abs(w - q)))
        u = rho / (grid.z - q)
        for m in range(1, nmoments + 1):
            worst = max(worst, abs(np.sum(base * u**m)))
    return worst / scale


@dataclass
class LambdaReport:
    """Residual report for the boundary identity defining Lambda(w, .)."""

    w: complex
    order: int
    sup_residual: float
    boundary_values: np.ndarray = field(repr=False)


def lambda_boundary_values(bd: BergmanData, w, m=0):
    """Lambda^{(m)}(z_k, w) from the boundary identity with K^{(m)}."""
    grid = bd.grid
    kb = bd.kernel_derivative_boundary(w, m)
    return -np.conj(kb) * np.conj(grid.tangent) / grid.tangent


def lambda_boundary_check(bd: BergmanData, w=None, m=0) -> LambdaReport:
    """Define Lambda(w, .) on the boundary via the K identity, subtract the
    known double-pole model, and certify the remainder is analytic."""
    grid = bd.grid
    if w is None:
        w = complex(interior_probes(grid, 1, seed_angle=1.23)[0])
    w = _check_interior(grid, w, factor=4.0, what="Lambda point")
    lam_vals = lambda_boundary_values(bd, w, m)
    model = math.factorial(m + 1) / (np.pi * (grid.z - w) ** (m + 2))
    resid = analytic_content_residual(grid, lam_vals - model)
    return LambdaReport(w=w, order=m, sup_residual=resid, boundary_values=lam_vals)


# ---------------------------------------------------------------------------
# Identity residuals used by the verification suite


def szego_reproduce_residual(sz: SzegoData, mmax=8):
    """max_m | oint z^m conj(S(z,a)) ds - a^m |, m = 0..mmax."""
    grid = sz.grid
    errs = [
        abs(np.sum(grid.z**m * np.conj(sz.szego) * grid.ds) - sz.a**m)
        for m in range(mmax + 1)
    ]
    return float(np.max(errs))


def garabedian_identity_residual(sz: SzegoData):
    """sup_k |(1/i) L(z_k,a) T(z_k) - conj(S(z_k,a))| (the defining identity)."""
    grid = sz.grid
    return float(
        np.max(np.abs(sz.garabedian * grid.tangent / 1j - np.conj(sz.szego)))
    )


def garabedian_residue_residual(sz: SzegoData):
    """|oint L(z,a) dz - i|: the simple pole at a has residue 1/(2 pi)."""
    return abs(contour_integral(sz.grid, sz.garabedian) - 1j)


def tangent_squared_residual(sz: SzegoData):
    """sup_k |T^2 + S(a,z)^2 / L(z,a)^2| on the boundary nodes."""
    grid = sz.grid
    s_az = np.conj(sz.szego)
    return float(
        np.max(np.abs(grid.tangent**2 + s_az**2 / sz.garabedian**2))
    )


def fprime_tangent_residual(hb: HarmonicBasis):
    """sup |Re(F_j'(z_k) T(z_k))| over nodes and j."""
    if not hb.count:
        return 0.0
    vals = hb.fprime_boundary * hb.grid.tangent[:, None]
    return float(np.max(np.abs(vals.real)))

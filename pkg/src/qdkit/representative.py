"""Kernel-combination fits and Bergman representative mappings.

Linear combinations A(z) = sum c_{jm} K^{(m)}(z, b_j) are fitted to smooth
holomorphic targets in a Sobolev-style boundary norm (tangential derivatives
by spectral differentiation), the quotient of the fits to z and 1 yields the
representative map, and the residual of the best fit of the constant 1 is
the quadrature defect that characterizes quadrature domains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GeometryError, NumericalError
from .geometry import (
    BoundaryCurve,
    BoundaryGrid,
    PlanarDomain,
    cauchy_eval,
    interior_anchor,
    interior_probes,
)
from .kernels import BergmanData
from .quadrature import SchwarzFunction, _certify_injective
from .rational import RationalFunction

_SVD_CUTOFF = 1e-12


@dataclass
class KernelCombination:
    """A(z) = sum over terms (node b, order m, coeff c) of c K^{(m)}(z, b)."""

    bd: BergmanData
    terms: list  # (node, order, coeff)
    boundary: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not any(c != 0 for _, _, c in self.terms):
            raise ValueError("kernel combination must have a nonzero coefficient")

    def at(self, z):
        """Interior values via the Cauchy integral of the boundary trace."""
        return cauchy_eval(self.bd.grid, self.boundary, z)

    def scaled(self, factor):
        factor = complex(factor)
        return KernelCombination(
            bd=self.bd,
            terms=[(b, m, c * factor) for b, m, c in self.terms],
            boundary=self.boundary * factor,
        )


def _normalize_orders(nodes, orders):
    nodes = np.asarray(nodes, dtype=complex)
    if np.isscalar(orders) or isinstance(orders, (int, np.integer)):
        orders = [int(orders)] * len(nodes)
    orders = [int(m) for m in orders]
    if len(orders) != len(nodes):
        raise ValueError("orders must match nodes")
    return nodes, orders


def _design_columns(bd: BergmanData, nodes, orders):
    cols, labels = [], []
    for node, mmax in zip(nodes, orders):
        for m in range(mmax + 1):
            cols.append(bd.kernel_derivative_boundary(node, m))
            labels.append((complex(node), m))
    return np.column_stack(cols), labels


def _sobolev_stack(grid: BoundaryGrid, mat, q):
    """Stack d^d/dt^d blocks for d = 0..q (unit weights)."""
    blocks = [mat]
    cur = mat
    for _ in range(q):
        cur = np.column_stack([grid.differentiate(cur[:, j]) for j in range(cur.shape[1])]) if cur.ndim == 2 else grid.differentiate(cur)
        blocks.append(cur)
    return np.vstack(blocks) if mat.ndim == 2 else np.concatenate(blocks)


@dataclass
class FitResult:
    combination: KernelCombination
    residuals: list  # sup residual per derivative order 0..q
    effective_rank: int

    @property
    def residual(self):
        return self.residuals[0]


def fit_combination(bd: BergmanData, target, nodes, orders=0, sobolev_order=2) -> FitResult:
    """Least-squares fit of a kernel combination to boundary target data.

    Minimizes the stacked tangential-derivative residuals up to order
    ``sobolev_order`` with unit weights; the near-dependent columns produced
    by clustered nodes are handled by truncated SVD at ratio 1e-12.
    """
    grid = bd.grid
    nodes, orders = _normalize_orders(nodes, orders)
    target = np.asarray(target, dtype=complex)
    if target.shape != (grid.size,):
        raise ValueError("target must be boundary node data")
    M, labels = _design_columns(bd, nodes, orders)
    Ms = _sobolev_stack(grid, M, sobolev_order)
    ts = _sobolev_stack(grid, target, sobolev_order)
    U, s, Vh = np.linalg.svd(Ms, full_matrices=False)
    keep = s > _SVD_CUTOFF * s[0]
    rank = int(np.sum(keep))
    coef = Vh[keep].conj().T @ ((U[:, keep].conj().T @ ts) / s[keep])
    resid_stack = Ms @ coef - ts
    residuals = [
        float(np.max(np.abs(resid_stack[d * grid.size : (d + 1) * grid.size])))
        for d in range(sobolev_order + 1)
    ]
    combo = KernelCombination(
        bd=bd,
        terms=[(b, m, complex(c)) for (b, m), c in zip(labels, coef)],
        boundary=M @ coef,
    )
    return FitResult(combination=combo, residuals=residuals, effective_rank=rank)


# ---------------------------------------------------------------------------
# Quadrature defect


@dataclass
class DefectReport:
    """Best-fit residual of 1 = sum c_{jm} K^{(m)}(z, w_j) over a probe set."""

    nodes: np.ndarray
    orders: list
    coeffs: np.ndarray
    defect: float
    probes: np.ndarray = field(repr=False)


def quadrature_defect(bd: BergmanData, nodes, orders=0, probes=None, nprobes=100) -> DefectReport:
    """Fit constants c_{jm} minimizing the l2 misfit of 1 over interior
    probes; the sup misfit is the defect (0 exactly on quadrature domains
    with those nodes)."""
    grid = bd.grid
    nodes, orders = _normalize_orders(nodes, orders)
    if probes is None:
        probes = interior_probes(grid, nprobes, seed_angle=0.61)
    traces, _ = _design_columns(bd, nodes, orders)
    A = np.column_stack(
        [cauchy_eval(grid, traces[:, j], probes) for j in range(traces.shape[1])]
    )
    b = np.ones(len(probes), dtype=complex)
    coef, *_ = np.linalg.lstsq(A, b, rcond=_SVD_CUTOFF)
    defect = float(np.max(np.abs(b - A @ coef)))
    return DefectReport(
        nodes=nodes, orders=orders, coeffs=coef, defect=defect, probes=probes
    )


# ---------------------------------------------------------------------------
# Representative map


@dataclass
class InjectivityCertificate:
    boundary_simple: bool
    winding_ok: bool
    min_denominator: float

    @property
    def passed(self):
        return self.boundary_simple and self.winding_ok and self.min_denominator > 0


@dataclass
class RepresentativeMap:
    """Quotient g = K1/K2 of kernel-combination fits to z and 1."""

    numerator: KernelCombination
    denominator: KernelCombination
    nodes: np.ndarray
    boundary_map: np.ndarray = field(repr=False)
    identity_deviation: float
    fit_residual_one: float
    fit_residual_z: float
    certificate: InjectivityCertificate
    image_domain: PlanarDomain

    def at(self, z):
        return self.numerator.at(z) / self.denominator.at(z)


def default_nodes(grid: BoundaryGrid, budget, radius_factor=0.5, anchor=None):
    """Budget nodes equally spaced on a circle of half the anchor clearance.

    Phase zero, so doubling the budget produces a superset of the nodes."""
    if anchor is None:
        anchor = interior_anchor(grid)
    inradius = grid.boundary_distance(anchor)
    return anchor + radius_factor * inradius * np.exp(
        2j * np.pi * np.arange(budget) / budget
    )


def _fit_image_curve(grid, gvals, curve_index, orientation):
    sl = grid.slices[curve_index]
    vals = gvals[sl]
    n = len(vals)
    c = np.fft.fft(vals) / n
    freqs = np.fft.fftfreq(n, 1.0 / n).astype(int)
    keep = np.abs(c) > 1e-11 * np.max(np.abs(c))
    return BoundaryCurve(
        freqs[keep], c[keep], orientation=orientation, label=f"image-{curve_index}"
    )


def representative_map(
    bd: BergmanData, budget, tol=0.05, sobolev_order=2, orders=2, nodes=None, nprobes=60
) -> RepresentativeMap:
    """Build and certify a Bergman representative map close to the identity.

    Fits K2 ~ 1 and K1 ~ z over the node budget (kernel derivatives up to
    ``orders`` at each node), forms g = K1/K2, and certifies injectivity
    (simple boundary image + argument-principle winding about interior probe
    images).  Certification failure raises; it is mandatory, never assumed.
    """
    grid = bd.grid
    if nodes is None:
        if budget < 1:
            raise ValueError("node budget must be >= 1")
        nodes = default_nodes(grid, budget)
    fit_one = fit_combination(bd, np.ones(grid.size), nodes, orders, sobolev_order)
    fit_z = fit_combination(bd, grid.z.copy(), nodes, orders, sobolev_order)
    k1, k2 = fit_z.combination, fit_one.combination
    g = k1.boundary / k2.boundary
    dev = float(np.max(np.abs(g - grid.z)))

    probes = interior_probes(grid, nprobes, seed_angle=2.17)
    k1p = k1.at(probes)
    k2p = k2.at(probes)
    min_den = float(min(np.min(np.abs(k2.boundary)), np.min(np.abs(k2p))))
    gp = k1p / k2p

    simple = True
    try:
        image_curves = [
            _fit_image_curve(grid, g, i, grid.domain.curves[i].orientation)
            for i in range(grid.n_curves)
        ]
    except GeometryError:
        simple = False
        image_curves = None

    # argument-principle winding of g(boundary) about each probe image
    dg = grid.differentiate(g)
    winding_ok = True
    for val in gp:
        wind = np.sum(dg / (g - val) * grid.dt) / (2j * np.pi)
        if abs(wind - 1) > 1e-6:
            winding_ok = False
            break

    cert = InjectivityCertificate(
        boundary_simple=simple, winding_ok=winding_ok, min_denominator=min_den
    )
    if not cert.passed:
        raise NumericalError(
            "representative map failed injectivity certification "
            f"({cert}); increase the node budget or tighten the fit"
        )
    if dev > tol:
        raise NumericalError(
            f"representative map deviates from the identity by {dev:.3g} > {tol:g}; "
            "increase the node budget"
        )
    image_domain = PlanarDomain(image_curves[0], image_curves[1:])
    return RepresentativeMap(
        numerator=k1,
        denominator=k2,
        nodes=np.asarray(nodes, dtype=complex),
        boundary_map=g,
        identity_deviation=dev,
        fit_residual_one=fit_one.residual,
        fit_residual_z=fit_z.residual,
        certificate=cert,
        image_domain=image_domain,
    )


# ---------------------------------------------------------------------------
# Identity map on quadrature domains


@dataclass
class IdentityMapReport:
    residual_one: float
    residual_z: float
    quotient_residual: float
    nodes: np.ndarray
    orders_one: list
    orders_z: list


def verify_identity_map(S: SchwarzFunction, bd: BergmanData, nprobes=100) -> IdentityMapReport:
    """On a rational-image quadrature domain, the constants and z are exact
    kernel combinations anchored at the poles of the Schwarz function, and
    their quotient is the identity map.

    Nodes sit at the poles of S; 1 uses derivative orders up to (pole order
    - 1), z up to (2 pole order - 1), matching the residue functionals of S
    and S^2.
    """
    grid = bd.grid
    nodes = np.array([p.location for p in S.poles], dtype=complex)
    orders_one = [p.order - 1 for p in S.poles]
    orders_z = [2 * p.order - 1 for p in S.poles]
    fit_one = fit_combination(bd, np.ones(grid.size), nodes, orders_one, sobolev_order=1)
    fit_z = fit_combination(bd, grid.z.copy(), nodes, orders_z, sobolev_order=1)
    probes = interior_probes(grid, nprobes, avoid=nodes, avoid_radius=0.1, seed_angle=0.91)
    quot = fit_z.combination.at(probes) / fit_one.combination.at(probes)
    qres = float(np.max(np.abs(quot - probes)))
    return IdentityMapReport(
        residual_one=fit_one.residual,
        residual_z=fit_z.residual,
        quotient_residual=qres,
        nodes=nodes,
        orders_one=orders_one,
        orders_z=orders_z,
    )


# ---------------------------------------------------------------------------
# Gustafsson maps on the disc


@dataclass
class GustafssonReport:
    """Exact reconstruction of r' and r r' from disc kernel derivatives."""

    coeffs_derivative: np.ndarray  # combination coefficients for r'
    coeffs_product: np.ndarray  # combination coefficients for r r'
    reconstruction_residual: float
    quotient_residual: float


def gustafsson_check(rmap: RationalFunction, nsamples=256) -> GustafssonReport:
    """Verify that a polynomial Gustafsson map on the unit disc is a
    Bergman representative map via K^{(m)}(z, 0) = (m+1)! z^m / pi.

    The coefficients are read off the power series of r' and r r'; the
    reconstruction and the quotient identity are checked on a circle of
    samples inside the disc.
    """
    if not isinstance(rmap, RationalFunction):
        rmap = RationalFunction(rmap)
    if rmap.denominator.degree != 0:
        raise ValueError("Gustafsson check expects a polynomial map")
    if rmap.numerator.degree > 6:
        raise ValueError("polynomial degree capped at 6")
    _certify_injective(rmap)

    rp = rmap.derivative().numerator.coeffs
    rrp = np.convolve(rmap.numerator.coeffs, rp)

    def combo_coeffs(poly):
        return np.array(
            [np.pi * c / math.factorial(m + 1) for m, c in enumerate(poly)],
            dtype=complex,
        )

    c2 = combo_coeffs(rp)
    c1 = combo_coeffs(rrp)
    z = 0.9 * np.exp(2j * np.pi * np.arange(nsamples) / nsamples)

    def kernel_sum(coeffs):
        out = np.zeros_like(z)
        for m, c in enumerate(coeffs):
            out += c * math.factorial(m + 1) * z**m / np.pi
        return out

    rec1 = np.polynomial.polynomial.polyval(z, rrp)
    rec2 = np.polynomial.polynomial.polyval(z, rp)
    err = max(
        float(np.max(np.abs(kernel_sum(c1) - rec1))),
        float(np.max(np.abs(kernel_sum(c2) - rec2))),
    )
    quot = kernel_sum(c1) / kernel_sum(c2)
    qerr = float(np.max(np.abs(quot - rmap(z))))
    return GustafssonReport(
        coeffs_derivative=c2,
        coeffs_product=c1,
        reconstruction_residual=err,
        quotient_residual=qerr,
    )


# ---------------------------------------------------------------------------
# Rational-in-(z, S) kernel fit


@dataclass
class RationalKernelFit:
    residual: float
    degree: tuple
    coeffs_numerator: np.ndarray
    coeffs_denominator: np.ndarray


def rational_kernel_fit(bd: BergmanData, w0, degree=(2, 2)) -> RationalKernelFit:
    """Homogeneous fit K(z, w0) D(z, s) = N(z, s) on the boundary, s = conj z.

    On the boundary the Schwarz function trace is conj(z), so a small
    residual certifies that K(., w0) is rational in (z, S(z)) at the given
    bidegree.  Residual = smallest singular value of the column-normalized
    system per root-sample.
    """
    grid = bd.grid
    dz_deg, ds_deg = degree
    kb = bd.kernel_boundary(complex(w0))
    z = grid.z
    s = np.conj(grid.z)
    cols = []
    for i in range(dz_deg + 1):
        for j in range(ds_deg + 1):
            cols.append(kb * z**i * s**j)
    for i in range(dz_deg + 1):
        for j in range(ds_deg + 1):
            cols.append(-(z**i) * s**j)
    M = np.column_stack(cols)
    norms = np.linalg.norm(M, axis=0)
    norms[norms == 0] = 1.0
    Mn = M / norms
    svals = np.linalg.svd(Mn, compute_uv=False)
    resid = float(svals[-1] / np.sqrt(M.shape[0]))
    _, _, Vh = np.linalg.svd(Mn, full_matrices=False)
    coef = Vh[-1].conj() / norms
    half = (dz_deg + 1) * (ds_deg + 1)
    return RationalKernelFit(
        residual=resid,
        degree=(dz_deg, ds_deg),
        coeffs_denominator=coef[:half].reshape(dz_deg + 1, ds_deg + 1),
        coeffs_numerator=coef[half:].reshape(dz_deg + 1, ds_deg + 1),
    )

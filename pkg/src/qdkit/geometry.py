"""Multiply connected planar domains with analytic boundaries.

Boundary curves are finite trigonometric polynomials z(t) = sum c_k e^{ikt};
rational images of the unit circle are resampled into this form once at
construction so every downstream consumer sees a single representation.
All quadrature is the periodic trapezoid rule, which is spectrally accurate
for analytic data on analytic curves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, ProximityError

#: resolution used for construction-time validity checks
_VALIDATION_SAMPLES = 512


class BoundaryCurve:
    """Closed analytic curve given by complex Fourier coefficients.

    Parameters
    ----------
    freqs : int array, frequencies k of the stored coefficients
    coeffs : complex array, coefficient of e^{ikt} for each k in freqs
    orientation : "ccw" or "cw"; validated against the signed area
    source_map : optional rational map the curve was resampled from
    """

    def __init__(self, freqs, coeffs, orientation="ccw", source_map=None, label="curve"):
        freqs = np.asarray(freqs, dtype=int)
        coeffs = np.asarray(coeffs, dtype=complex)
        if freqs.shape != coeffs.shape or freqs.ndim != 1:
            raise ValueError("freqs and coeffs must be aligned 1-d arrays")
        keep = np.abs(coeffs) > 0
        if not keep.any():
            raise GeometryError(f"{label}: curve has no nonzero coefficients")
        order = np.argsort(freqs[keep])
        self.freqs = freqs[keep][order]
        self.coeffs = coeffs[keep][order]
        if orientation not in ("ccw", "cw"):
            raise ValueError("orientation must be 'ccw' or 'cw'")
        self.orientation = orientation
        self.source_map = source_map
        self.label = label
        self._validate()

    # -- evaluation ---------------------------------------------------------

    def point(self, t):
        t = np.asarray(t, dtype=float)
        basis = np.exp(1j * np.outer(t, self.freqs))
        out = basis @ self.coeffs
        return out if out.ndim else complex(out)

    def velocity(self, t):
        t = np.asarray(t, dtype=float)
        basis = np.exp(1j * np.outer(t, self.freqs))
        out = basis @ (1j * self.freqs * self.coeffs)
        return out if out.ndim else complex(out)

    @property
    def max_frequency(self):
        return int(np.max(np.abs(self.freqs)))

    def signed_area(self, samples=_VALIDATION_SAMPLES):
        t = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
        z = self.point(t)
        dz = self.velocity(t)
        return float(np.real(np.sum(np.conj(z) * dz) * (2 * np.pi / samples) / 2j))

    # -- validation ---------------------------------------------------------

    def _validate(self):
        m = max(_VALIDATION_SAMPLES, 16 * max(1, self.max_frequency))
        t = np.linspace(0.0, 2 * np.pi, m, endpoint=False)
        z = self.point(t)
        dz = self.velocity(t)
        speed = np.abs(dz)
        scale = np.max(speed)
        if scale == 0 or np.min(speed) < 1e-9 * scale:
            k = int(np.argmin(speed))
            raise GeometryError(
                f"{self.label}: boundary is not immersed, z'(t) ~ 0 near t={t[k]:.6f}"
            )
        self._check_simple(z)
        area = self.signed_area()
        if self.orientation == "ccw" and area <= 0:
            raise GeometryError(f"{self.label}: declared ccw but traversed cw")
        if self.orientation == "cw" and area >= 0:
            raise GeometryError(f"{self.label}: declared cw but traversed ccw")

    def _check_simple(self, z):
        m = len(z)
        h = np.abs(np.roll(z, -1) - z)
        # pairwise node separation with a local-spacing threshold
        idx = np.arange(m)
        gap = np.abs(idx[:, None] - idx[None, :])
        gap = np.minimum(gap, m - gap)
        dist = np.abs(z[:, None] - z[None, :])
        thresh = 0.75 * np.maximum(h[:, None], h[None, :])
        bad = (gap >= 4) & (dist < thresh)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise GeometryError(
                f"{self.label}: self-intersection at sample resolution near "
                f"t={2 * np.pi * i / m:.6f} and t={2 * np.pi * j / m:.6f}"
            )
        if _polyline_self_crosses(z):
            raise GeometryError(f"{self.label}: boundary polyline crosses itself")

    def __repr__(self):
        return (
            f"BoundaryCurve({self.label!r}, {len(self.freqs)} modes, "
            f"{self.orientation})"
        )


def _polyline_self_crosses(z):
    """Exact segment-crossing test on the closed sample polyline."""
    m = len(z)
    a = z
    b = np.roll(z, -1)

    def ccw(p, q, r):
        return np.sign(
            (q.real - p.real) * (r.imag - p.imag)
            - (q.imag - p.imag) * (r.real - p.real)
        )

    chunk = 128
    for start in range(0, m, chunk):
        sl = slice(start, min(start + chunk, m))
        ai, bi = a[sl][:, None], b[sl][:, None]
        aj, bj = a[None, :], b[None, :]
        d1 = ccw(ai, bi, aj)
        d2 = ccw(ai, bi, bj)
        d3 = ccw(aj, bj, ai)
        d4 = ccw(aj, bj, bi)
        cross = (d1 * d2 < 0) & (d3 * d4 < 0)
        i_idx = np.arange(start, min(start + chunk, m))[:, None]
        j_idx = np.arange(m)[None, :]
        gap = np.abs(i_idx - j_idx)
        gap = np.minimum(gap, m - gap)
        cross &= gap >= 2
        if cross.any():
            return True
    return False


def curve_from_rational_image(rmap, orientation="ccw", samples=2048, label="curve"):
    """Resample w -> rmap(w) on |w|=1 into trig-coefficient form (FFT)."""
    t = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)
    z = rmap(np.exp(1j * t))
    c = np.fft.fft(z) / samples
    freqs = np.fft.fftfreq(samples, 1.0 / samples).astype(int)
    keep = np.abs(c) > 1e-14 * np.max(np.abs(c))
    return BoundaryCurve(
        freqs[keep], c[keep], orientation=orientation, source_map=rmap, label=label
    )


def circle(center=0.0, radius=1.0, orientation="ccw", label="circle"):
    """Circular boundary curve."""
    k = 1 if orientation == "ccw" else -1
    return BoundaryCurve(
        [0, k], [complex(center), complex(radius)], orientation=orientation, label=label
    )


class PlanarDomain:
    """Bounded n-connected domain: one ccw outer curve, cw hole curves."""

    def __init__(self, outer: BoundaryCurve, holes=()):
        if outer.orientation != "ccw":
            raise GeometryError("outer curve must be oriented ccw")
        for h in holes:
            if h.orientation != "cw":
                raise GeometryError(f"hole curve {h.label} must be oriented cw")
        self.outer = outer
        self.holes = tuple(holes)
        self._validate()

    @property
    def curves(self):
        return (self.outer,) + self.holes

    @property
    def connectivity(self):
        return 1 + len(self.holes)

    def _validate(self):
        t = np.linspace(0.0, 2 * np.pi, 256, endpoint=False)
        samples = [c.point(t) for c in self.curves]
        for i, h in enumerate(self.holes):
            w = _winding_samples(samples[0], self.outer.velocity(t), samples[i + 1])
            if not np.all(w == 1):
                raise GeometryError(f"hole {h.label} is not inside the outer curve")
        for i in range(len(self.holes)):
            for j in range(i + 1, len(self.holes)):
                zi, zj = samples[i + 1], samples[j + 1]
                wij = _winding_samples(zi, self.holes[i].velocity(t), zj)
                if not np.all(wij == 0):
                    raise GeometryError(
                        f"holes {self.holes[i].label} and {self.holes[j].label} overlap"
                    )
                if np.min(np.abs(zi[:, None] - zj[None, :])) == 0:
                    raise GeometryError("hole boundaries touch")

    def __repr__(self):
        return f"PlanarDomain(connectivity={self.connectivity})"


def _winding_samples(zc, dzc, pts):
    dt = 2 * np.pi / len(zc)
    vals = np.sum(dzc[None, :] * dt / (zc[None, :] - pts[:, None]), axis=1) / (2j * np.pi)
    return np.rint(vals.real).astype(int)


@dataclass
class BoundaryFunction:
    """Complex values attached to the nodes of a BoundaryGrid."""

    grid: "BoundaryGrid"
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.size,):
            raise ValueError(
                f"value count {self.values.shape} does not match grid size "
                f"{self.grid.size}"
            )


class BoundaryGrid:
    """Nystrom discretization of all boundary curves of a domain.

    Per node: parameter ``t``, position ``z``, velocity ``dz`` (= z'(t)),
    unit tangent ``tangent``, arclength weight ``ds`` = |z'| 2pi/N and
    complex line weight ``dzw`` = z' 2pi/N.  The stored traversal keeps the
    domain on the left, so plain weighted sums realize oriented contour
    integrals over the full boundary.
    """

    def __init__(self, domain: PlanarDomain, n_per_curve):
        self.domain = domain
        self.ns = tuple(int(n) for n in n_per_curve)
        ts, zs, dzs = [], [], []
        self.slices = []
        start = 0
        for curve, n in zip(domain.curves, self.ns):
            t = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
            ts.append(t)
            zs.append(curve.point(t))
            dzs.append(curve.velocity(t))
            self.slices.append(slice(start, start + n))
            start += n
        self.t = np.concatenate(ts)
        self.z = np.concatenate(zs)
        self.dz = np.concatenate(dzs)
        self.speed = np.abs(self.dz)
        self.tangent = self.dz / self.speed
        dt = np.concatenate(
            [np.full(n, 2 * np.pi / n) for n in self.ns]
        )
        self.dt = dt
        self.ds = self.speed * dt
        self.dzw = self.dz * dt
        self.size = start

    @property
    def n_curves(self):
        return len(self.ns)

    @property
    def connectivity(self):
        return self.domain.connectivity

    def curve_values(self, values, i):
        return np.asarray(values)[self.slices[i]]

    def perimeter(self, i=None):
        if i is None:
            return float(np.sum(self.ds))
        return float(np.sum(self.ds[self.slices[i]]))

    def local_spacing(self, z):
        """Arclength node spacing of the curve nearest to point(s) z."""
        z = np.asarray(z, dtype=complex)
        k = np.argmin(np.abs(self.z[None, :] - np.atleast_1d(z)[:, None]), axis=1)
        h = self.ds[k]
        return h if z.ndim else float(h[0])

    def boundary_distance(self, z):
        z = np.asarray(z, dtype=complex)
        d = np.min(np.abs(self.z[None, :] - np.atleast_1d(z)[:, None]), axis=1)
        return d if z.ndim else float(d[0])

    def differentiate(self, values):
        """Spectral d/dt of per-curve periodic node values."""
        values = _values_array(self, values)
        out = np.empty_like(values)
        for sl, n in zip(self.slices, self.ns):
            k = np.fft.fftfreq(n, 1.0 / n)
            out[sl] = np.fft.ifft(np.fft.fft(values[sl]) * (1j * k))
        return out

    def __repr__(self):
        return f"BoundaryGrid(ns={self.ns}, size={self.size})"


def _values_array(grid, f):
    if isinstance(f, BoundaryFunction):
        if f.grid is not grid:
            raise ValueError("boundary function belongs to a different grid")
        return f.values
    values = np.asarray(f, dtype=complex)
    if values.shape != (grid.size,):
        raise ValueError(
            f"boundary data of length {values.shape} does not match grid of size "
            f"{grid.size}"
        )
    return values


def discretize(domain: PlanarDomain, n: int) -> BoundaryGrid:
    """Equispaced-parameter trapezoid grid with ``n`` nodes per curve."""
    if n < 16 or n % 2:
        raise ValueError("n must be an even integer >= 16")
    return BoundaryGrid(domain, [n] * domain.connectivity)


def contour_integral(grid: BoundaryGrid, f):
    """Oriented contour integral of node data f over the whole boundary."""
    values = _values_array(grid, f)
    return complex(np.sum(values * grid.dzw))


def arclength_integral(grid: BoundaryGrid, f):
    """Integral of node data against arclength measure ds."""
    values = _values_array(grid, f)
    return complex(np.sum(values * grid.ds))


def winding_number(grid: BoundaryGrid, z0):
    """Winding of the full oriented boundary about z0 (1 inside, 0 outside)."""
    z0 = complex(z0)
    d = grid.boundary_distance(z0)
    if d < grid.local_spacing(z0):
        raise ProximityError(
            f"point {z0:.6g} is within one node spacing of the boundary"
        )
    val = np.sum(grid.dzw / (grid.z - z0)) / (2j * np.pi)
    return int(np.rint(val.real))


def area(grid: BoundaryGrid):
    """Lebesgue area of the domain via (1/2i) contour z-bar dz."""
    return float(np.real(contour_integral(grid, np.conj(grid.z)) / 2j))


def cauchy_eval(grid: BoundaryGrid, f, z):
    """Cauchy integral (1/2pi i) of boundary data f at interior point(s) z.

    Accuracy is spectral in N but decays like exp(-2 pi d/h) as the target
    approaches the boundary (d = distance, h = local node spacing); points
    with d < 2h are refused outright.
    """
    values = _values_array(grid, f)
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    d = grid.boundary_distance(zs)
    h = grid.local_spacing(zs)
    close = d < 2.0 * h
    if close.any():
        zb = zs[close][0]
        raise ProximityError(
            f"point {zb:.6g} is within 2 node spacings of the boundary "
            f"(dist {d[close][0]:.3g}, spacing {h[close][0]:.3g})"
        )
    for p in zs:
        if winding_number(grid, p) != 1:
            raise GeometryError(f"point {p:.6g} is not inside the domain")
    out = (values * grid.dzw) @ (1.0 / (grid.z[:, None] - zs[None, :])) / (2j * np.pi)
    return out if np.asarray(z).ndim else complex(out[0])


def cauchy_derivative(grid: BoundaryGrid, f, z, m=1):
    """m-th derivative of the Cauchy integral of f at interior point(s) z."""
    values = _values_array(grid, f)
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    fact = float(math.factorial(m))
    out = (values * grid.dzw) @ (
        1.0 / (grid.z[:, None] - zs[None, :]) ** (m + 1)
    ) * fact / (2j * np.pi)
    return out if np.asarray(z).ndim else complex(out[0])


def interior_anchor(grid: BoundaryGrid):
    """Deterministic interior point with large clearance from the boundary."""
    zmin_x, zmax_x = np.min(grid.z.real), np.max(grid.z.real)
    zmin_y, zmax_y = np.min(grid.z.imag), np.max(grid.z.imag)
    xs = np.linspace(zmin_x, zmax_x, 41)[1:-1]
    ys = np.linspace(zmin_y, zmax_y, 41)[1:-1]
    cand = (xs[:, None] + 1j * ys[None, :]).ravel()
    d = np.min(np.abs(cand[:, None] - grid.z[None, :]), axis=1)
    order = np.argsort(-d)
    for idx in order:
        p = cand[idx]
        if d[idx] < 2 * grid.local_spacing(p):
            break
        try:
            if winding_number(grid, p) == 1:
                return complex(p)
        except ProximityError:
            continue
    raise GeometryError("could not locate an interior anchor point")


def interior_probes(grid: BoundaryGrid, count, margin=None, avoid=(), avoid_radius=0.1, seed_angle=0.0):
    """Deterministic interior probe points with boundary clearance.

    Golden-angle spiral about the interior anchor, filtered by winding test,
    boundary margin (default 6 node spacings) and avoidance discs.
    """
    anchor = interior_anchor(grid)
    rmax = float(np.max(np.abs(grid.z - anchor)))
    golden = np.pi * (3 - np.sqrt(5.0))
    probes = []
    k = 0
    limit = 40 * count + 400
    while len(probes) < count and k < limit:
        k += 1
        rho = rmax * np.sqrt(k / (limit * 0.75))
        p = anchor + rho * np.exp(1j * (seed_angle + golden * k))
        h = grid.local_spacing(p)
        marg = 6.0 * h if margin is None else margin
        if grid.boundary_distance(p) < marg:
            continue
        if any(abs(p - a) < avoid_radius for a in avoid):
            continue
        try:
            if winding_number(grid, p) != 1:
                continue
        except ProximityError:
            continue
        probes.append(complex(p))
    if len(probes) < count:
        raise GeometryError(
            f"only found {len(probes)} of {count} interior probe points"
        )
    return np.array(probes, dtype=complex)

"""Domain-specification files and structured result output.

Domain files are JSON with fixed field names:

  {"type": "trig",
   "curves": [{"coeffs": [[re, im], ...], "orientation": "ccw"}, ...]}

  {"type": "rational_image",
   "numerator": [[re, im], ...], "denominator": [[re, im], ...]}

Trig coefficient lists are centered and of odd length 2K+1, covering
frequencies -K..K in ascending order; rational coefficients are ascending in
degree.  The first trig curve is the ccw outer boundary, the rest are cw
holes.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import SpecFormatError
from .geometry import BoundaryCurve, PlanarDomain, curve_from_rational_image
from .rational import RationalFunction


def _complex_pair(item, what):
    try:
        re, im = item
        return complex(float(re), float(im))
    except (TypeError, ValueError) as exc:
        raise SpecFormatError(f"{what}: expected [re, im] pair, got {item!r}") from exc


def _pairs(items, what):
    if not isinstance(items, list) or not items:
        raise SpecFormatError(f"{what}: expected a nonempty list of [re, im] pairs")
    return np.array([_complex_pair(p, what) for p in items], dtype=complex)


def parse_domain(data):
    """Build (PlanarDomain, rational map or None) from a spec dictionary."""
    if not isinstance(data, dict):
        raise SpecFormatError("domain spec must be a JSON object")
    kind = data.get("type")
    if kind == "trig":
        curves = data.get("curves")
        if not isinstance(curves, list) or not curves:
            raise SpecFormatError("trig spec needs a nonempty 'curves' list")
        built = []
        for i, cd in enumerate(curves):
            if not isinstance(cd, dict):
                raise SpecFormatError(f"curve {i}: expected an object")
            coeffs = _pairs(cd.get("coeffs"), f"curve {i} coeffs")
            if len(coeffs) % 2 == 0:
                raise SpecFormatError(
                    f"curve {i}: centered coefficient list must have odd length"
                )
            k = (len(coeffs) - 1) // 2
            orientation = cd.get("orientation")
            if orientation not in ("ccw", "cw"):
                raise SpecFormatError(f"curve {i}: orientation must be 'ccw' or 'cw'")
            built.append(
                BoundaryCurve(
                    np.arange(-k, k + 1),
                    coeffs,
                    orientation=orientation,
                    label=f"curve {i}",
                )
            )
        return PlanarDomain(built[0], built[1:]), None
    if kind == "rational_image":
        num = _pairs(data.get("numerator"), "numerator")
        den = _pairs(data.get("denominator", [[1.0, 0.0]]), "denominator")
        rmap = RationalFunction(num, den).check_map_degree()
        curve = curve_from_rational_image(rmap, label="rational image")
        return PlanarDomain(curve), rmap
    raise SpecFormatError(f"unknown domain type {kind!r}")


def load_domain(path):
    """Parse a domain-spec file; raises SpecFormatError on any defect."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecFormatError(f"cannot read domain spec {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"{path} is not valid JSON: {exc}") from exc
    return parse_domain(data)


def _pair_list(values):
    return [[float(v.real), float(v.imag)] for v in np.asarray(values, dtype=complex)]


def curve_to_dict(curve: BoundaryCurve):
    k = curve.max_frequency
    coeffs = np.zeros(2 * k + 1, dtype=complex)
    coeffs[curve.freqs + k] = curve.coeffs
    return {"coeffs": _pair_list(coeffs), "orientation": curve.orientation}


def domain_to_dict(domain: PlanarDomain):
    return {"type": "trig", "curves": [curve_to_dict(c) for c in domain.curves]}


def rational_to_dict(rmap: RationalFunction):
    return {
        "type": "rational_image",
        "numerator": _pair_list(rmap.numerator.coeffs),
        "denominator": _pair_list(rmap.denominator.coeffs),
    }


def quadrature_to_dict(qdata):
    return {
        "nodes": [
            {"node": [float(n.real), float(n.imag)], "coeffs": _pair_list(c)}
            for n, c in zip(qdata.nodes, qdata.coeffs)
        ]
    }


def twovar_to_dict(poly):
    return {
        "degree_z": poly.degree_z,
        "degree_s": poly.degree_s,
        "coeffs": [_pair_list(row) for row in poly.coeffs],
    }


def _terms_to_list(combo):
    return [
        {
            "node": [float(b.real), float(b.imag)],
            "order": int(m),
            "coeff": [float(c.real), float(c.imag)],
        }
        for b, m, c in combo.terms
    ]


def representative_to_dict(rmap_result):
    return {
        "numerator": _terms_to_list(rmap_result.numerator),
        "denominator": _terms_to_list(rmap_result.denominator),
        "identity_deviation": rmap_result.identity_deviation,
        "image_domain": domain_to_dict(rmap_result.image_domain),
    }


def dump_json(data, path=None):
    text = json.dumps(data, indent=2, sort_keys=True)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


CSV_HEADER = "t,re_z,im_z,re_f,im_f"


def field_csv(t, z, f):
    """Fixed-header CSV of sampled field values, %.17g formatting."""
    lines = [CSV_HEADER]
    for ti, zi, fi in zip(np.asarray(t), np.asarray(z), np.asarray(f)):
        lines.append(
            ",".join(
                "%.17g" % v
                for v in (float(ti), zi.real, zi.imag, fi.real, fi.imag)
            )
        )
    return "\n".join(lines) + "\n"

"""Second-order finite-difference operators on uniform grid fields.

All node-centred stencils are valid one ring inside the boundary; the
boundary ring of every output is marked unset (NaN).  The divergence
form uses centred fluxes on half-grid faces with face-averaged
tangential gradients, so one canonical scheme backs every identity
check.
"""

from __future__ import annotations

import numpy as np

from .errors import FieldError
from .grid import GridField

AUTO_REG = "auto"


def _nan_like(values: np.ndarray) -> np.ndarray:
    return np.full_like(values, np.nan)


def _interior(ndim: int, k: int = 1) -> tuple[slice, ...]:
    return tuple(slice(k, -k) for _ in range(ndim))


def _shift(ndim: int, axis: int, lo: int, hi: int) -> tuple[slice, ...]:
    sl = [slice(1, -1)] * ndim
    sl[axis] = slice(1 + lo, (-1 + hi) or None)
    return tuple(sl)


def gradient_components(values: np.ndarray, h: float) -> list[np.ndarray]:
    """Centred first derivatives along each axis.

    Each component is valid wherever its own axis is interior (NaN on
    that axis' end layers), so node-centred combinations are valid on
    the full interior ring while face averages keep their tangential
    reach.
    """
    d = values.ndim
    out = []
    for axis in range(d):
        g = _nan_like(values)
        mid = [slice(None)] * d
        hi = [slice(None)] * d
        lo = [slice(None)] * d
        mid[axis] = slice(1, -1)
        hi[axis] = slice(2, None)
        lo[axis] = slice(0, -2)
        g[tuple(mid)] = (values[tuple(hi)] - values[tuple(lo)]) / (2.0 * h)
        out.append(g)
    return out


def laplacian(values: np.ndarray, h: float) -> np.ndarray:
    """Standard 5-point (d=2) / 7-point (d=3) Laplacian; NaN ring."""
    d = values.ndim
    out = _nan_like(values)
    inner = _interior(d)
    acc = np.zeros_like(values[inner])
    for axis in range(d):
        acc += (
            values[_shift(d, axis, 1, 1)]
            - 2.0 * values[inner]
            + values[_shift(d, axis, -1, -1)]
        )
    out[inner] = acc / (h * h)
    return out


def grad_squared(values: np.ndarray, h: float) -> np.ndarray:
    comps = gradient_components(values, h)
    out = comps[0] * comps[0]
    for g in comps[1:]:
        out = out + g * g
    return out


def dot_arrays(a: list[np.ndarray], b: list[np.ndarray]) -> np.ndarray:
    out = a[0] * b[0]
    for x, y in zip(a[1:], b[1:]):
        out = out + x * y
    return out


def _face_average(arr: np.ndarray, axis: int) -> np.ndarray:
    lo = [slice(None)] * arr.ndim
    hi = [slice(None)] * arr.ndim
    lo[axis] = slice(0, -1)
    hi[axis] = slice(1, None)
    return 0.5 * (arr[tuple(lo)] + arr[tuple(hi)])


def flux_divergence(
    values: np.ndarray, h: float, powers: tuple[float, ...], reg_eps: float
) -> np.ndarray:
    """div( sum_s |grad u|^(s-2) grad u ) with centred face fluxes; NaN ring.

    The face gradient combines the exact normal difference with the
    average of the two adjacent centred tangential gradients; the norm
    is regularised as (|grad u|^2 + reg_eps^2)^((s-2)/2).
    """
    d = values.ndim
    centred = gradient_components(values, h)
    out = _nan_like(values)
    inner = _interior(d)
    acc = np.zeros_like(values[inner])
    eps2 = reg_eps * reg_eps
    for axis in range(d):
        dn = np.diff(values, axis=axis) / h
        z_face = dn * dn
        for other in range(d):
            if other == axis:
                continue
            tang = _face_average(centred[other], axis)
            z_face = z_face + tang * tang
        weight = np.zeros_like(z_face)
        for s in powers:
            weight = weight + np.power(z_face + eps2, (s - 2.0) / 2.0)
        flux = weight * dn
        div = np.diff(flux, axis=axis) / h
        sl = [slice(1, -1)] * d
        sl[axis] = slice(None)
        acc += div[tuple(sl)]
    out[inner] = acc
    return out


def _auto_eps(values: np.ndarray, h: float) -> float:
    span = float(np.nanmax(values) - np.nanmin(values))
    return 1e-10 * max(1.0, span / h)


def pq_laplacian(field: GridField, p: float, q: float, reg_eps=AUTO_REG) -> GridField:
    """Discrete Delta_p u + Delta_q u on interior nodes; boundary ring unset.

    reg_eps='auto' picks 1e-10 times the field's gradient scale; pass an
    explicit float (0 is allowed for p, q >= 2 away from critical
    points) to pin the regularization.
    """
    eps = _auto_eps(field.values, field.spacing) if reg_eps == AUTO_REG else float(reg_eps)
    out = flux_divergence(field.values, field.spacing, (p, q), eps)
    if not np.isfinite(out[_interior(field.ndim)]).all():
        raise FieldError("field not smooth enough at spacing h")
    return GridField(values=out, spacing=field.spacing, origin=field.origin)


def p_laplacian(field: GridField, p: float, reg_eps=AUTO_REG) -> GridField:
    """Discrete Delta_p u alone (same scheme as pq_laplacian)."""
    eps = _auto_eps(field.values, field.spacing) if reg_eps == AUTO_REG else float(reg_eps)
    out = flux_divergence(field.values, field.spacing, (p,), eps)
    if not np.isfinite(out[_interior(field.ndim)]).all():
        raise FieldError("field not smooth enough at spacing h")
    return GridField(values=out, spacing=field.spacing, origin=field.origin)

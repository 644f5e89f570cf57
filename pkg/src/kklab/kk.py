"""Kramers-Kronig transforms over sampled spectra.

Two families are provided. The folded 0..infinity pair

    Re n(w) = 1 + (2/pi) P int_0^inf  nu Im n(nu) / (nu^2 - w^2) dnu
    Im n(w) =   - (2/pi) P int_0^inf  w [Re n(nu) - 1] / (nu^2 - w^2) dnu

presupposes an odd imaginary part (even real part) under nu -> -nu; both
refuse to run unless ``assume_im_odd`` is set, because that symmetry is a
physical-model input, not a theorem about arbitrary data. The once-subtracted
relation at a finite point w0,

    Re G(w) = Re G(w0) + ((w - w0)/pi)
              P int_-inf^inf Im[(G(nu) - G(w0)) / (nu - w0)] dnu / (nu - w),

needs no decay of G itself (boundedness suffices); the negative-frequency
half is synthesized from the conjugate crossing relation G(-nu) = conj(G(nu)).
The w0 -> infinity limit of the subtracted relation,

    Re n(w) = Re n(inf) + (2/pi) P int_0^inf
              [nu Im n(nu) - w Im n(inf)] dnu / (nu^2 - w^2),

is evaluated with the difference kept inside one integrand, exactly as
written, so the finite-cutoff truncation of the two pieces cancels; the
Im n(inf) term would vanish identically under an exact principal value
(P int_0^inf dnu/(nu^2 - w^2) = 0).

Numerically each kernel is factored to expose a single simple pole at +w,

    nu g / (nu^2 - w^2) = [nu g / (nu + w)] * 1/(nu - w),

and handed to the pv engine; the -w partner pole never lies on the 0..inf
path. Data grids are extended at both ends before integrating: down to
nu = 0 with the local odd (linear) or even (parabolic) model, and up to
4x the top node with the fitted power-law tail, so every grid node is a
strictly interior pole. Beyond the extension the tail is summed in closed
form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .pvquad import (
    PoleIntegrand,
    TailModel,
    fit_tail,
    local_cubic_slope,
    pv_integrate,
    tail_integral,
)
from .spectra import ComplexIndexSpectrum

__all__ = [
    "SubtractionSpec",
    "KkOptions",
    "TransformResult",
    "PoleCollisionError",
    "kk_re_from_im",
    "kk_im_from_re",
    "kk_subtracted",
    "kk_subtracted_at_infinity",
    "roundtrip_residual",
]

_EPS = np.finfo(float).eps
_TOP_EXTENSION_FACTOR = 4.0
_TOP_EXTENSION_NODES = 48


class PoleCollisionError(ValueError):
    """Evaluation frequency within two grid spacings of the subtraction
    point: the double subtraction is ill-conditioned there."""


@dataclass(frozen=True)
class SubtractionSpec:
    """Subtraction point and constant G(w0).

    ``omega0 = None`` selects the infinite-frequency subtraction, in which
    case ``constant_re``/``constant_im`` hold Re n(inf) and Im n(inf).
    """

    omega0: float | None
    constant_re: float
    constant_im: float

    def __post_init__(self):
        if self.omega0 is not None:
            if not math.isfinite(self.omega0) or self.omega0 < 0:
                raise ValueError("omega0 must be finite and >= 0")
        if not (math.isfinite(self.constant_re) and math.isfinite(self.constant_im)):
            raise ValueError("subtraction constants must be finite")

    @classmethod
    def at_infinity(cls, re_inf: float = 1.0, im_inf: float = 0.0) -> "SubtractionSpec":
        return cls(None, re_inf, im_inf)

    @classmethod
    def at_point(cls, omega0: float, g_re: float, g_im: float) -> "SubtractionSpec":
        return cls(float(omega0), g_re, g_im)

    @property
    def is_infinite(self) -> bool:
        return self.omega0 is None


@dataclass(frozen=True)
class KkOptions:
    """Transform options.

    ``assume_im_odd`` admits the odd extension the folded forms need.
    ``tail`` overrides the fitted power-law tail. ``boundedness_constant``
    is the |n|^2 bound K0 consumed by the causality audit.
    """

    assume_im_odd: bool = True
    tail: TailModel | None = None
    boundedness_constant: float | None = None

    def __post_init__(self):
        if self.boundedness_constant is not None and self.boundedness_constant <= 0:
            raise ValueError("boundedness constant K0 must be > 0")


@dataclass(frozen=True, eq=False)
class TransformResult:
    """Transformed spectrum plus per-node quadrature error estimates, the
    tail model actually used, and the symmetry assumptions invoked."""

    spectrum: ComplexIndexSpectrum
    error_estimate: np.ndarray
    tail: TailModel
    assumptions: tuple[str, ...]


# ---------------------------------------------------------------------------
# Grid extension
# ---------------------------------------------------------------------------

def _resolve_tail(nu: np.ndarray, f: np.ndarray, opts: KkOptions) -> TailModel:
    if opts.tail is not None:
        return opts.tail
    sel = nu >= nu[-1] / 10.0
    return fit_tail(nu[sel], f[sel])


def _extend_axis(nu: np.ndarray, f: np.ndarray, kind: str,
                 tail: TailModel) -> tuple[np.ndarray, np.ndarray, float]:
    """Extend sampled data to [0, 4*nu_max].

    Below the grid the integrand is modeled by its leading symmetry class:
    ``odd`` -> linear through the origin, ``even`` -> parabola with zero
    slope at the origin. Above the grid the fitted power-law tail supplies
    sample values out to the extension cutoff, beyond which the series
    completion takes over. The extension guarantees >= 2 nodes on each side
    of every original grid node, so all of them are admissible pv poles.
    """
    if nu[0] > 0.0:
        lo_nodes = np.array([0.0, nu[0] / 4.0, nu[0] / 2.0])
        if kind == "odd":
            lo_vals = (f[0] / nu[0]) * lo_nodes
        else:
            d = nu[1] ** 2 - nu[0] ** 2
            h0 = (f[0] * nu[1] ** 2 - f[1] * nu[0] ** 2) / d
            curv = (f[1] - f[0]) / d
            lo_vals = h0 + curv * lo_nodes ** 2
        head_nu, head_f = lo_nodes, lo_vals
        body_nu, body_f = nu, f
    else:
        mid = np.array([nu[1] / 4.0, nu[1] / 2.0])
        if kind == "odd":
            mid_vals = f[0] + (f[1] - f[0]) * (mid / nu[1])
        else:
            mid_vals = f[0] + (f[1] - f[0]) * (mid / nu[1]) ** 2
        head_nu = np.concatenate([[0.0], mid])
        head_f = np.concatenate([[f[0]], mid_vals])
        body_nu, body_f = nu[1:], f[1:]

    cutoff = _TOP_EXTENSION_FACTOR * nu[-1]
    hi_nodes = np.geomspace(nu[-1], cutoff, _TOP_EXTENSION_NODES + 1)[1:]
    if tail.amplitude != 0.0:
        hi_vals = tail.amplitude * hi_nodes ** (-tail.exponent)
    else:
        hi_vals = np.zeros_like(hi_nodes)

    nu_e = np.concatenate([head_nu, body_nu, hi_nodes])
    f_e = np.concatenate([head_f, body_f, hi_vals])
    return nu_e, f_e, cutoff


def _coarse(n: int) -> np.ndarray:
    idx = np.arange(0, n, 2)
    if idx[-1] != n - 1:
        idx = np.append(idx, n - 1)
    return idx


# ---------------------------------------------------------------------------
# Folded 0..infinity forms
# ---------------------------------------------------------------------------

def _re_dispersion_node(nu_e: np.ndarray, g_e: np.ndarray, cutoff: float,
                        tail: TailModel, omega: float, g_inf: float) -> tuple[float, float]:
    """One node of P int_0^inf [nu g - w g_inf]/(nu^2 - w^2) dnu (no 2/pi)."""
    if omega == 0.0:
        # kernel degenerates to g(nu)/nu, regular when g is odd
        with np.errstate(divide="ignore", invalid="ignore"):
            q = g_e / nu_e
        q[0] = local_cubic_slope(nu_e, g_e, 0.0)
        i_full = float(simpson(q, x=nu_e))
        ci = _coarse(nu_e.size)
        i_half = float(simpson(q[ci], x=nu_e[ci]))
        err = abs(i_full - i_half) + 4.0 * _EPS * float(np.trapezoid(np.abs(q), nu_e))
        return i_full + tail_integral(tail, 0.0), err

    fac = (nu_e * g_e - omega * g_inf) / (nu_e + omega)
    res = pv_integrate(PoleIntegrand(nu_e, fac, omega))
    s_even = 0.5 * (tail_integral(tail, omega) + tail_integral(tail, -omega))
    value = res.value + s_even
    if g_inf != 0.0:
        value += 0.5 * g_inf * math.log((cutoff - omega) / (cutoff + omega))
    return value, res.error_estimate


def kk_subtracted_at_infinity(im: ComplexIndexSpectrum, sub: SubtractionSpec,
                              opts: KkOptions = KkOptions()) -> TransformResult:
    """Real part from the imaginary part with the subtraction at infinity.

    ``sub`` supplies Re n(inf) and Im n(inf). With Re n(inf) = 1 and
    Im n(inf) = 0 this reduces exactly to the unsubtracted transform; see
    :func:`kk_re_from_im`, which is literally that special case.
    """
    if not sub.is_infinite:
        raise ValueError("subtraction point must be infinity for this transform")
    if not opts.assume_im_odd:
        raise ValueError(
            "the folded 0..inf transform presupposes an odd Im n; "
            "set assume_im_odd=True to accept that extension")

    nu = im.grid.values
    g = im.im
    tail = _resolve_tail(nu, g, opts)
    nu_e, g_e, cutoff = _extend_axis(nu, g, "odd", tail)
    # the sampled extension already covers [nu_max, cutoff]; the series
    # completion starts at the extension cutoff
    series_tail = TailModel(tail.exponent, tail.amplitude, cutoff)

    n = nu.size
    out = np.empty(n)
    errs = np.empty(n)
    for j in range(n):
        val, err = _re_dispersion_node(nu_e, g_e, cutoff, series_tail,
                                       float(nu[j]), sub.constant_im)
        out[j] = sub.constant_re + (2.0 / math.pi) * val
        errs[j] = (2.0 / math.pi) * err

    spec = ComplexIndexSpectrum(im.grid, out, im.im)
    return TransformResult(spec, errs, tail, ("im_odd_assumed",))


def kk_re_from_im(im: ComplexIndexSpectrum, opts: KkOptions = KkOptions()) -> TransformResult:
    """Unsubtracted transform: Re n = 1 + (2/pi) P int nu Im n/(nu^2 - w^2).

    Implemented as the infinite-subtraction relation with Re n(inf) = 1 and
    Im n(inf) = 0, which it equals identically.
    """
    return kk_subtracted_at_infinity(im, SubtractionSpec.at_infinity(1.0, 0.0), opts)


def kk_im_from_re(re: ComplexIndexSpectrum, opts: KkOptions = KkOptions()) -> TransformResult:
    """Imaginary part from the real part:

        Im n(w) = -(2/pi) P int_0^inf w [Re n(nu) - 1] / (nu^2 - w^2) dnu.

    Returns exactly 0 at w = 0 (the kernel carries a factor w). Re n - 1
    must decay at the grid top; the tail fit enforces that and raises when
    the fitted exponent is not integrable.
    """
    if not opts.assume_im_odd:
        raise ValueError(
            "the folded 0..inf transform presupposes crossing symmetry; "
            "set assume_im_odd=True to accept that extension")

    nu = re.grid.values
    h = re.re - 1.0
    tail = _resolve_tail(nu, h, opts)
    nu_e, h_e, cutoff = _extend_axis(nu, h, "even", tail)
    series_tail = TailModel(tail.exponent, tail.amplitude, cutoff)

    n = nu.size
    out = np.empty(n)
    errs = np.empty(n)
    for j in range(n):
        w = float(nu[j])
        if w == 0.0:
            out[j] = 0.0
            errs[j] = 0.0
            continue
        fac = w * h_e / (nu_e + w)
        res = pv_integrate(PoleIntegrand(nu_e, fac, w))
        s_odd = 0.5 * (tail_integral(series_tail, w) - tail_integral(series_tail, -w))
        out[j] = -(2.0 / math.pi) * (res.value + s_odd)
        errs[j] = (2.0 / math.pi) * res.error_estimate

    spec = ComplexIndexSpectrum(re.grid, re.re, out)
    return TransformResult(spec, errs, tail, ("im_odd_assumed", "re_even_assumed"))


def roundtrip_residual(s: ComplexIndexSpectrum, opts: KkOptions = KkOptions()) -> float:
    """max_j |Re n_j - (KK of Im n)_j| over interior nodes.

    Interior excludes the top and bottom half-decade, where finite-grid
    truncation dominates any genuine causality violation.
    """
    tr = kk_re_from_im(s, opts)
    nu = s.grid.values
    if nu[0] == 0.0:
        raise ValueError("interior-node residual needs a positive-frequency grid")
    lo = nu[0] * math.sqrt(10.0)
    hi = nu[-1] / math.sqrt(10.0)
    mask = (nu >= lo) & (nu <= hi)
    if not np.any(mask):
        raise ValueError("grid too narrow: no interior nodes outside the edge half-decades")
    return float(np.max(np.abs(s.re[mask] - tr.spectrum.re[mask])))


# ---------------------------------------------------------------------------
# Once-subtracted relation at a finite point
# ---------------------------------------------------------------------------

def _local_spacing(nu: np.ndarray, w: float) -> float:
    j = int(np.clip(np.searchsorted(nu, w), 1, nu.size - 1))
    return float(nu[j] - nu[j - 1])


def kk_subtracted(g: ComplexIndexSpectrum, sub: SubtractionSpec,
                  opts: KkOptions = KkOptions(), *,
                  on_collision: str = "raise") -> TransformResult:
    """Once-subtracted dispersion relation for G at finite w0.

    The input spectrum is interpreted as samples of G(w) for w >= 0 (only
    the imaginary part enters the integrand); G(w0) comes from ``sub`` and
    is never inferred from the samples. The negative-frequency half is
    synthesized from G(-nu) = conj(G(nu)).

    Per node: w == w0 returns Re G(w0) by continuity; 0 < |w - w0| below
    two local grid spacings is the ill-conditioned collision zone, which
    raises :class:`PoleCollisionError` by default or, with
    ``on_collision="continuity"``, is filled with Re G(w0).
    """
    if sub.is_infinite:
        raise ValueError("use kk_subtracted_at_infinity for the infinite point")
    if on_collision not in ("raise", "continuity"):
        raise ValueError("on_collision must be 'raise' or 'continuity'")
    nu = g.grid.values
    w0 = float(sub.omega0)
    if w0 > nu[-1]:
        raise ValueError(f"omega0 = {w0!r} above the grid range")
    g0_re, g0_im = float(sub.constant_re), float(sub.constant_im)

    tail = _resolve_tail(nu, g.im, opts)
    nu_e, gi_e, cutoff = _extend_axis(nu, g.im, "odd", tail)
    series_tail = TailModel(tail.exponent, tail.amplitude, cutoff)

    # full real axis by crossing: Im G(-nu) = -Im G(nu)
    nu_full = np.concatenate([-nu_e[:0:-1], nu_e])
    gi_full = np.concatenate([-gi_e[:0:-1], gi_e])

    # regularized difference quotient K(nu) = [Im G(nu) - Im G(w0)]/(nu - w0)
    dist0 = nu_full - w0
    hit0 = np.flatnonzero(np.abs(dist0) <= 1e-13 * cutoff)
    with np.errstate(divide="ignore", invalid="ignore"):
        kern = (gi_full - g0_im) / dist0
    for idx in hit0:
        kern[idx] = local_cubic_slope(nu_full, gi_full, w0)

    s_w0_pos = tail_integral(series_tail, w0)
    s_w0_neg = tail_integral(series_tail, -w0)

    n = nu.size
    out = np.empty(n)
    errs = np.zeros(n)
    for j in range(n):
        w = float(nu[j])
        dr = w - w0
        if dr == 0.0:
            out[j] = g0_re
            continue
        if abs(dr) < 2.0 * _local_spacing(nu, w):
            if on_collision == "raise":
                raise PoleCollisionError(
                    f"evaluation point {w!r} within two grid spacings of omega0 = {w0!r}")
            out[j] = g0_re
            continue
        res = pv_integrate(PoleIntegrand(nu_full, kern, w))
        # tails of K/(nu - w) on both half-axes, with Im G ~ A nu^-p there:
        # the power-law part reduces to simple-pole series at +-w and +-w0,
        # the constant -Im G(w0) part to logarithms.
        right = (tail_integral(series_tail, w) - s_w0_pos) / dr
        left = (tail_integral(series_tail, -w) - s_w0_neg) / dr
        if g0_im != 0.0:
            right += g0_im * math.log((cutoff - w) / (cutoff - w0)) / dr
            left -= g0_im * math.log((cutoff + w) / (cutoff + w0)) / dr
        out[j] = g0_re + (dr / math.pi) * (res.value + right + left)
        errs[j] = (abs(dr) / math.pi) * res.error_estimate

    spec = ComplexIndexSpectrum(g.grid, out, g.im)
    return TransformResult(spec, errs, tail, ("crossing_conjugate_symmetry",))

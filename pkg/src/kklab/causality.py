"""Causality and consistency audits for sampled index spectra.

The audit tests the real-axis consequences of upper-half-plane analyticity
rather than analyticity itself: the high-frequency asymptote of Re n, the
sign of Im n (passivity), boundedness of |n|^2, and self-consistency under
the transform pair. The dichotomy classification follows the two escape
routes a bounded non-unity vacuum index would have to take: either the
front-velocity asymptote Re n(inf) drops below 1 (superluminal branch) or
Im n goes negative somewhere (amplification branch).

"Infinity" is operationalized as a 1/w^2 fit over the top decade of data;
the result is an extrapolation and is therefore reported with an
uncertainty, and branch calls use a 3-sigma threshold so quadrature noise
is not flagged as superluminal physics.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .kk import KkOptions, roundtrip_residual
from .spectra import ComplexIndexSpectrum

__all__ = [
    "Dichotomy",
    "AsymptoteFitError",
    "CausalityReport",
    "estimate_asymptote",
    "detect_amplification",
    "check_bounded",
    "audit",
]

_DEFAULT_K0 = 1e6  # generous |n|^2 bound applied when the caller supplies none


class Dichotomy(str, Enum):
    CONSISTENT_WITH_UNITY = "consistent_with_unity"
    SUPERLUMINAL_BRANCH = "superluminal_branch"
    AMPLIFICATION_BRANCH = "amplification_branch"
    BOTH = "both"
    INCONCLUSIVE = "inconclusive"


class AsymptoteFitError(ValueError):
    """Top-decade 1/w^2 model misfit: the asymptote estimate is unreliable."""


@dataclass(frozen=True, eq=False)
class CausalityReport:
    """Machine-readable audit verdict (JSON schema version 1)."""

    asymptote_re: float | None
    asymptote_re_uncertainty: float | None
    asymptote_im: float | None
    asymptote_im_uncertainty: float | None
    amplification_bands: tuple[tuple[float, float], ...]
    amplification_band_nodes: tuple[tuple[int, int], ...]
    kk_residual: float
    bounded_ok: bool
    max_abs_index_sq: float
    boundedness_constant: float
    dichotomy: Dichotomy
    assumptions: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "asymptote_re": self.asymptote_re,
            "asymptote_re_uncertainty": self.asymptote_re_uncertainty,
            "asymptote_im": self.asymptote_im,
            "asymptote_im_uncertainty": self.asymptote_im_uncertainty,
            "amplification_bands": [list(b) for b in self.amplification_bands],
            "amplification_band_nodes": [list(b) for b in self.amplification_band_nodes],
            "kk_residual": self.kk_residual,
            "bounded": {
                "ok": self.bounded_ok,
                "max_sq": self.max_abs_index_sq,
                "k0": self.boundedness_constant,
            },
            "dichotomy": self.dichotomy.value,
            "assumptions": list(self.assumptions),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _top_decade_fit(nu: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    """Fit y ~ a + b/nu^2 over nu >= nu_max/10.

    Returns (a, uncertainty, max_abs_residual). The uncertainty is the
    larger of the parameter standard error and the regression standard
    error, so deterministic model structure is not mistaken for precision.
    """
    sel = nu >= nu[-1] / 10.0
    x = 1.0 / nu[sel] ** 2
    yy = y[sel]
    design = np.column_stack([np.ones_like(x), x])
    coef, *_ = np.linalg.lstsq(design, yy, rcond=None)
    resid = yy - design @ coef
    dof = max(x.size - 2, 1)
    s_reg = math.sqrt(float(resid @ resid) / dof)
    cov = np.linalg.inv(design.T @ design)
    se_a = s_reg * math.sqrt(float(cov[0, 0]))
    return float(coef[0]), max(se_a, s_reg), float(np.max(np.abs(resid))) if resid.size else 0.0


def estimate_asymptote(s: ComplexIndexSpectrum) -> tuple[float, float]:
    """Estimate Re n(inf) from the top decade of the grid.

    Requires a grid spanning >= 3 decades so that a "top decade" is
    meaningfully asymptotic. Raises :class:`AsymptoteFitError` when the
    residuals exceed 10x the reported uncertainty (the 1/w^2 model does not
    describe the data, so no asymptote claim should be made).
    """
    if s.grid.span_decades() < 3.0:
        raise ValueError("asymptote estimate needs a grid spanning >= 3 decades")
    value, unc, max_resid = _top_decade_fit(s.grid.values, s.re)
    if max_resid > 10.0 * unc:
        raise AsymptoteFitError(
            f"top-decade 1/w^2 fit misfit: max residual {max_resid:.3g} "
            f"exceeds 10 x uncertainty {unc:.3g}")
    return value, unc


def detect_amplification(s: ComplexIndexSpectrum, floor: float = 0.0) -> list[tuple[int, int]]:
    """Maximal node intervals where Im n < -floor.

    ``floor`` (>= 0) is a noise allowance: tiny negative excursions from
    quadrature or measurement noise are not amplification. Returns inclusive
    (start, stop) node index pairs, disjoint and maximal.
    """
    if floor < 0:
        raise ValueError("floor must be >= 0")
    neg = s.im < -floor
    bands: list[tuple[int, int]] = []
    start = None
    for i, flag in enumerate(neg):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            bands.append((start, i - 1))
            start = None
    if start is not None:
        bands.append((start, int(neg.size - 1)))
    return bands


def check_bounded(s: ComplexIndexSpectrum, k0: float) -> tuple[bool, float]:
    """Test the boundedness condition |n(w)|^2 <= K0 on the grid."""
    if k0 <= 0:
        raise ValueError("K0 must be > 0")
    max_sq = float(np.max(s.re ** 2 + s.im ** 2))
    return max_sq <= k0, max_sq


def audit(s: ComplexIndexSpectrum, opts: KkOptions = KkOptions()) -> CausalityReport:
    """Run the four sub-checks and classify the spectrum.

    Branch logic: superluminal_branch when the asymptote sits below 1 by
    more than 3 uncertainties and no amplification band exists;
    amplification_branch when bands exist and the asymptote does not;
    both when both indicators fire; consistent_with_unity when neither;
    inconclusive when the asymptote fit itself fails.

    The Im n asymptote is estimated and reported the same way but renders
    no verdict. When ``opts.boundedness_constant`` is unset a generous
    default bound of 1e6 is applied and recorded in the assumptions.
    """
    assumptions: list[str] = []
    if opts.assume_im_odd:
        assumptions.append("im_odd_assumed")

    fit_failed = False
    asym_re: float | None = None
    asym_re_unc: float | None = None
    try:
        asym_re, asym_re_unc = estimate_asymptote(s)
    except AsymptoteFitError:
        fit_failed = True

    asym_im: float | None = None
    asym_im_unc: float | None = None
    try:
        asym_im, asym_im_unc, im_max_resid = _top_decade_fit(s.grid.values, s.im)
        if im_max_resid > 10.0 * asym_im_unc:
            asym_im = asym_im_unc = None
    except np.linalg.LinAlgError:
        pass

    band_nodes = detect_amplification(s, floor=0.0)
    nu = s.grid.values
    bands = tuple((float(nu[i]), float(nu[j])) for i, j in band_nodes)

    kk_res = roundtrip_residual(s, opts)

    if opts.boundedness_constant is not None:
        k0 = opts.boundedness_constant
    else:
        k0 = _DEFAULT_K0
        assumptions.append("k0_defaulted")
    bounded_ok, max_sq = check_bounded(s, k0)

    has_bands = len(band_nodes) > 0
    if fit_failed:
        verdict = Dichotomy.INCONCLUSIVE
    else:
        superluminal = asym_re < 1.0 - 3.0 * asym_re_unc
        if superluminal and has_bands:
            verdict = Dichotomy.BOTH
        elif superluminal:
            verdict = Dichotomy.SUPERLUMINAL_BRANCH
        elif has_bands:
            verdict = Dichotomy.AMPLIFICATION_BRANCH
        else:
            verdict = Dichotomy.CONSISTENT_WITH_UNITY

    return CausalityReport(
        asymptote_re=asym_re,
        asymptote_re_uncertainty=asym_re_unc,
        asymptote_im=asym_im,
        asymptote_im_uncertainty=asym_im_unc,
        amplification_bands=bands,
        amplification_band_nodes=tuple(band_nodes),
        kk_residual=kk_res,
        bounded_ok=bounded_ok,
        max_abs_index_sq=max_sq,
        boundedness_constant=float(k0),
        dichotomy=verdict,
        assumptions=tuple(assumptions),
    )

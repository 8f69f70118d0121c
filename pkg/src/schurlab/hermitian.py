"""Definiteness of exact Hermitian matrices: float eigenvalues for the verdict and
margin, exact arithmetic for every reported witness."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact import (
    ExactComplex,
    inertia,
    negative_direction,
    nullspace,
    quadratic_value,
    rational_vectors,
    to_complex_array,
)

CUTOFF = 1e-9


def zero_band(mat: np.ndarray, cutoff: float = CUTOFF) -> float:
    """Eigenvalues with |lambda| below this count as zero: cutoff * max(1, ||M||_2)."""
    norm = float(np.linalg.norm(mat, 2)) if mat.size else 0.0
    return cutoff * max(1.0, norm)


@dataclass(frozen=True)
class Definiteness:
    """kind is 'pd', 'psd' or 'indefinite'.

    Eigenvalues outside the zero band decide directly; inside it the exact
    LDL* inertia decides, so verdicts do not depend on the scale of M.

    For 'indefinite' the witness w satisfies w^* M w = value < 0 exactly. For
    'psd' it is an exact kernel vector (value 0).
    """

    kind: str
    margin: float
    band: float
    witness: list[ExactComplex] | None = None
    value: Fraction | None = None
    exact_kind: str | None = None

    @property
    def positive(self) -> bool:
        return self.kind == "pd"

    @property
    def nonnegative(self) -> bool:
        return self.kind != "indefinite"


def _round_witness(vec: np.ndarray, mat, want_negative: bool):
    best = None
    for w in rational_vectors(vec):
        val = quadratic_value(mat, w)
        if want_negative and val < 0:
            return w, val
        if best is None or abs(val) < abs(best[1]):
            best = (w, val)
    return (None, None) if want_negative else best


def check_hermitian(mat: Sequence[Sequence], cutoff: float = CUTOFF) -> Definiteness:
    """Classify an exact Hermitian matrix (list of lists of Gaussian rationals)."""
    size = len(mat)
    if size == 0:
        return Definiteness("pd", float("inf"), 0.0)
    arr = to_complex_array(mat)
    evals, evecs = np.linalg.eigh(arr)
    margin = float(evals[0])
    band = zero_band(arr, cutoff)
    if margin > band:
        return Definiteness("pd", margin, band)
    if margin < -band:
        w, val = _round_witness(evecs[:, 0], mat, True)
        if w is None:
            w = negative_direction(mat)
            if w is None:
                # float noise: exact arithmetic says PSD, so report it as degenerate
                return Definiteness("psd", margin, band, exact_kind=inertia(mat))
            val = quadratic_value(mat, w)
        return Definiteness("indefinite", margin, band, w, val, "indefinite")
    # inside the zero band the exact inertia decides
    exact_kind = inertia(mat)
    if exact_kind == "pd":
        return Definiteness("pd", margin, band, exact_kind=exact_kind)
    if exact_kind == "indefinite":
        w = negative_direction(mat)
        return Definiteness("indefinite", margin, band, w, quadratic_value(mat, w), exact_kind)
    kernel = nullspace(mat)
    w = kernel[0] if kernel else _round_witness(evecs[:, 0], mat, False)[0]
    return Definiteness("psd", margin, band, w, quadratic_value(mat, w), exact_kind)

"""Exact Gaussian-rational scalars and the small amount of exact linear algebra
built on them (rank, Hermitian LDL, PSD factorization, rational rounding)."""

from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np
from sympy.solvers.diophantine.diophantine import sum_of_four_squares

__all__ = [
    "ExactComplex",
    "NotPSDError",
    "as_exact",
    "format_rational",
    "parse_rational",
    "exact_rank",
    "hermitian_ldl",
    "inertia",
    "psd_factor",
    "negative_direction",
    "nullspace",
    "quadratic_value",
    "sum_of_two_gaussian_norms",
    "rationalize",
    "rational_vectors",
    "to_complex_array",
]


class ExactComplex:
    """A complex number with exact rational real and imaginary parts.

    Arithmetic with ints and Fractions stays exact; mixing in a Python float or
    complex degrades the result to a plain ``complex``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactComplex is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "ExactComplex":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # -- conversions -------------------------------------------------------
    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __repr__(self) -> str:
        if not self.im:
            return f"ExactComplex({self.re})"
        return f"ExactComplex({self.re}, {self.im})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __eq__(self, other) -> bool:
        if isinstance(other, ExactComplex):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return not self.im and self.re == other
        if isinstance(other, numbers.Complex):
            return complex(self) == other
        return NotImplemented

    # -- arithmetic --------------------------------------------------------
    def conjugate(self) -> "ExactComplex":
        return ExactComplex._raw(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return not self.im

    def __neg__(self) -> "ExactComplex":
        return ExactComplex._raw(-self.re, -self.im)

    def __pos__(self) -> "ExactComplex":
        return self

    def __add__(self, other):
        if isinstance(other, ExactComplex):
            return ExactComplex._raw(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return ExactComplex._raw(self.re + other, self.im)
        if isinstance(other, numbers.Complex):
            return complex(self) + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, ExactComplex):
            return ExactComplex._raw(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return ExactComplex._raw(self.re - other, self.im)
        if isinstance(other, numbers.Complex):
            return complex(self) - other
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, ExactComplex):
            a, b, c, d = self.re, self.im, other.re, other.im
            if not b and not d:
                return ExactComplex._raw(a * c, Fraction(0))
            return ExactComplex._raw(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            return ExactComplex._raw(self.re * other, self.im * other)
        if isinstance(other, numbers.Complex):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ExactComplex):
            den = other.abs2()
            if not den:
                raise ZeroDivisionError("division by exact zero")
            num = self * other.conjugate()
            return ExactComplex._raw(num.re / den, num.im / den)
        if isinstance(other, (int, Fraction)):
            return ExactComplex._raw(self.re / other, self.im / other)
        if isinstance(other, numbers.Complex):
            return complex(self) / other
        return NotImplemented

    def __rtruediv__(self, other):
        return as_exact(other) / self

    def __pow__(self, k: int) -> "ExactComplex":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ExactComplex(1) / (self ** (-k))
        out = ExactComplex(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out


I = ExactComplex(0, 1)
ONE = ExactComplex(1)
ZERO = ExactComplex(0)


def as_exact(x) -> ExactComplex:
    """Coerce ints, Fractions and ExactComplex to ExactComplex. Floats are refused."""
    if isinstance(x, ExactComplex):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactComplex(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def i_power(k: int) -> ExactComplex:
    """Return sqrt(-1)**k exactly."""
    return (ONE, I, -ONE, -I)[k % 4]


# -- serialization -------------------------------------------------------------
def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str) or "." in s or "e" in s.lower():
        raise ValueError(f"expected a 'p/q' rational string, got {s!r}")
    return Fraction(s)


def scalar_to_json(c: ExactComplex) -> dict:
    return {"re": format_rational(c.re), "im": format_rational(c.im)}


def scalar_from_json(d: dict) -> ExactComplex:
    return ExactComplex(parse_rational(d.get("re", "0/1")), parse_rational(d.get("im", "0/1")))


# -- exact linear algebra ------------------------------------------------------
def _clear_row(row: Sequence[ExactComplex]) -> list[ExactComplex]:
    den = 1
    for c in row:
        den = math.lcm(den, c.re.denominator, c.im.denominator)
    return [c * den for c in row]


def exact_rank(rows: Iterable[Sequence]) -> int:
    """Rank over the Gaussian rationals by fraction-free (Bareiss) elimination.

    Rows are first scaled to Gaussian integers; every Bareiss division is then exact.
    """
    mat = [_clear_row([as_exact(c) for c in row]) for row in rows]
    mat = [row for row in mat if any(row)]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    prev = ONE
    col = 0
    while rank < len(mat) and col < ncols:
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            col += 1
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        p = mat[rank][col]
        for i in range(rank + 1, len(mat)):
            a = mat[i][col]
            mat[i] = [(p * mat[i][j] - a * mat[rank][j]) / prev for j in range(ncols)]
        prev = p
        rank += 1
        col += 1
    return rank


class NotPSDError(ValueError):
    """Raised when an exact Hermitian matrix turns out not to be positive semidefinite."""


def hermitian_ldl(mat: Sequence[Sequence]) -> tuple[list[tuple[Fraction, list[ExactComplex]]], bool]:
    """Exact LDL* with diagonal pivoting for a Hermitian Gaussian-rational matrix.

    Returns ``(pivots, psd)`` where ``pivots`` is a list of ``(d, l)`` with
    ``M = sum d * l l^*`` over the processed part. ``psd`` is False as soon as a
    negative pivot or a non-zero block with vanishing diagonal is met; elimination
    stops there, so the pivots then describe only a leading part of ``M``.
    """
    n = len(mat)
    a = [[as_exact(c) for c in row] for row in mat]
    pivots: list[tuple[Fraction, list[ExactComplex]]] = []
    active = list(range(n))
    while active:
        diag = [(a[i][i].re, i) for i in active]
        if any(a[i][i].im for i in active):
            raise ValueError("matrix is not Hermitian")
        neg = [i for d, i in diag if d < 0]
        if neg:
            return pivots, False
        pos = [(d, i) for d, i in diag if d > 0]
        if not pos:
            if any(a[i][j] for i in active for j in active):
                return pivots, False
            break
        d, k = max(pos)
        l = [ZERO] * n
        for i in active:
            l[i] = a[i][k] / d
        pivots.append((d, l))
        active.remove(k)
        for i in active:
            if not l[i]:
                continue
            for j in active:
                if l[j]:
                    a[i][j] = a[i][j] - l[i] * l[j].conjugate() * d
        for j in range(n):
            a[k][j] = ZERO
            a[j][k] = ZERO
    return pivots, True


def quadratic_value(mat: Sequence[Sequence], w: Sequence) -> Fraction:
    """w^* M w for a Hermitian Gaussian-rational M, exactly (a rational)."""
    total = ZERO
    for i, wi in enumerate(w):
        if not wi:
            continue
        row = mat[i]
        acc = ZERO
        for j, wj in enumerate(w):
            if wj and row[j]:
                acc = acc + as_exact(row[j]) * wj
        total = total + wi.conjugate() * acc
    if total.im:
        raise ValueError("matrix is not Hermitian")
    return total.re


def negative_direction(mat: Sequence[Sequence]) -> list[ExactComplex] | None:
    """An exact w with w^* M w < 0, or None when M is positive semidefinite.

    Runs the LDL* elimination until it meets a negative diagonal entry (or a
    non-zero off-diagonal entry over a zero diagonal) of the Schur complement,
    then back-substitutes so that w is orthogonal to every processed pivot column.
    """
    n = len(mat)
    a = [[as_exact(c) for c in row] for row in mat]
    pivots: list[tuple[int, list[ExactComplex]]] = []
    active = list(range(n))
    y = None
    while active:
        diag = {i: a[i][i].re for i in active}
        neg = [i for i in active if diag[i] < 0]
        if neg:
            y = {neg[0]: ONE}
            break
        pos = [(diag[i], i) for i in active if diag[i] > 0]
        if not pos:
            hit = next(((i, j) for i in active for j in active if a[i][j]), None)
            if hit is not None:
                i, j = hit
                y = {i: ONE, j: -a[i][j].conjugate()}
            break
        d, k = max(pos)
        l = [ZERO] * n
        for i in active:
            l[i] = a[i][k] / d
        pivots.append((k, l))
        active.remove(k)
        for i in active:
            if l[i]:
                for j in active:
                    if l[j]:
                        a[i][j] = a[i][j] - l[i] * l[j].conjugate() * d
    if y is None:
        return None
    w = [ZERO] * n
    for i, c in y.items():
        w[i] = c
    for k, l in reversed(pivots):
        acc = ZERO
        for i in range(n):
            if i != k and l[i] and w[i]:
                acc = acc + l[i].conjugate() * w[i]
        w[k] = -acc
    assert quadratic_value(mat, w) < 0
    return w


def nullspace(mat: Sequence[Sequence]) -> list[list[ExactComplex]]:
    """Exact basis of {x : M x = 0} by reduced row echelon form."""
    rows = [[as_exact(c) for c in row] for row in mat]
    ncols = len(rows[0]) if rows else 0
    pivot_cols = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        rows[r] = [c / p for c in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(col)
        r += 1
        if r == len(rows):
            break
    basis = []
    for free in (c for c in range(ncols) if c not in pivot_cols):
        x = [ZERO] * ncols
        x[free] = ONE
        for i, pc in enumerate(pivot_cols):
            x[pc] = -rows[i][free]
        basis.append(x)
    return basis


def inertia(mat: Sequence[Sequence]) -> str:
    """Exact definiteness class of a Hermitian matrix: 'pd', 'psd' or 'indefinite'."""
    pivots, psd = hermitian_ldl(mat)
    if not psd:
        return "indefinite"
    return "pd" if len(pivots) == len(mat) else "psd"


def sum_of_two_gaussian_norms(d: Fraction) -> list[ExactComplex]:
    """Gaussian rationals c_s with sum |c_s|^2 == d, for a rational d >= 0.

    Writes d = (a*b)/b^2 and splits a*b into four integer squares.
    """
    d = Fraction(d)
    if d < 0:
        raise ValueError("negative weight")
    if d == 0:
        return []
    a, b = d.numerator, d.denominator
    root = math.isqrt(a * b)
    if root * root == a * b:
        return [ExactComplex(Fraction(root, b))]
    x = sorted(sum_of_four_squares(a * b), reverse=True)
    out = [ExactComplex(Fraction(x[0], b), Fraction(x[1], b))]
    if x[2] or x[3]:
        out.append(ExactComplex(Fraction(x[2], b), Fraction(x[3], b)))
    return out


def psd_factor(mat: Sequence[Sequence]) -> list[list[ExactComplex]]:
    """Exact factorization M = sum_p w_p w_p^* of a Gaussian-rational PSD matrix.

    Each LDL* pivot contributes at most two columns (four-square splitting of the
    pivot), so the number of vectors is at most ``2 * rank(M)``.
    """
    pivots, psd = hermitian_ldl(mat)
    if not psd:
        raise NotPSDError("matrix is not positive semidefinite")
    vecs = []
    for d, l in pivots:
        for c in sum_of_two_gaussian_norms(d):
            vecs.append([c * x for x in l])
    return vecs


# -- float <-> exact -----------------------------------------------------------
def to_complex_array(mat) -> np.ndarray:
    return np.array([[complex(c) for c in row] for row in mat], dtype=complex)


def rationalize(z: complex, max_den: int | None) -> ExactComplex:
    """Round a float complex to a Gaussian rational (exact binary value if max_den is None)."""
    re, im = Fraction(float(z.real)), Fraction(float(z.imag))
    if max_den is not None:
        re, im = re.limit_denominator(max_den), im.limit_denominator(max_den)
    return ExactComplex(re, im)


def rational_vectors(vec: np.ndarray) -> Iterator[list[ExactComplex]]:
    """Successively finer Gaussian-rational roundings of a vector normalized to unit sup-norm."""
    vec = np.asarray(vec, dtype=complex)
    scale = np.max(np.abs(vec))
    if scale == 0:
        yield [ZERO] * len(vec)
        return
    # fix the phase of the largest entry so it rounds to exactly 1
    k = int(np.argmax(np.abs(vec)))
    vec = vec * (abs(vec[k]) / vec[k]) / scale
    for max_den in (10**3, 10**6, 10**9, 10**12, None):
        yield [rationalize(z, max_den) for z in vec]

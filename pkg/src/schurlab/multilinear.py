"""Sparse (p,q)-forms on C^n at a point.

A form is stored as a dict keyed by pairs of bitmasks ``(I, J)`` (bit ``a-1`` set
means the generator ``e^a`` resp. ``conj(e^a)`` occurs); the basis element is
``e^I ^ conj(e)^J`` with all holomorphic generators first, each group in
ascending order. Axes are 1-based everywhere in the public API.

Coefficients are ``ExactComplex`` for all symbolic work. Plain Python complex
coefficients are accepted as well (used where representation matrices are
floats); exact-only operations refuse them.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .exact import (
    ExactComplex,
    ZERO,
    i_power,
    scalar_from_json,
    scalar_to_json,
)

__all__ = [
    "Form",
    "wedge",
    "conjugate",
    "volume_coefficient",
    "hermitian_gram",
    "subsets",
    "mask_of",
    "axes_of",
]


def mask_of(axes: Iterable[int]) -> int:
    m = 0
    for a in axes:
        m |= 1 << (a - 1)
    return m


@lru_cache(maxsize=None)
def axes_of(mask: int) -> tuple[int, ...]:
    out = []
    a = 1
    while mask:
        if mask & 1:
            out.append(a)
        mask >>= 1
        a += 1
    return tuple(out)


@lru_cache(maxsize=None)
def _merge_sign(left: int, right: int) -> int:
    """Sign of sorting e^left ^ e^right (disjoint masks) into ascending order."""
    swaps = 0
    for b in axes_of(right):
        swaps += bin(left >> b).count("1")
    return -1 if swaps & 1 else 1


def _sort_sign(axes: Sequence[int]) -> int:
    swaps = sum(1 for x, y in itertools.combinations(axes, 2) if x > y)
    return -1 if swaps & 1 else 1


def subsets(n: int, k: int) -> list[tuple[int, ...]]:
    """k-multi-indices of [1, n] in lexicographic order."""
    return list(itertools.combinations(range(1, n + 1), k))


def _is_exact(c) -> bool:
    return isinstance(c, (ExactComplex, int, Fraction))


class Form:
    """An element of Lambda^{p,q} (C^n)^*. Immutable."""

    __slots__ = ("n", "p", "q", "_c")

    def __init__(self, n: int, p: int, q: int, coeffs: Mapping | Iterable = ()):
        if n < 0 or p < 0 or q < 0:
            raise ValueError("negative dimension or degree")
        self.n, self.p, self.q = n, p, q
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        data: dict[tuple[int, int], object] = {}
        if p <= n and q <= n:
            for (I, J), c in items:
                I, J = tuple(I), tuple(J)
                if len(I) != p or len(J) != q:
                    raise ValueError(f"index ({I}, {J}) does not have bidegree ({p}, {q})")
                if any(not 1 <= a <= n for a in I + J):
                    raise ValueError(f"axis out of range in ({I}, {J}) for n={n}")
                if len(set(I)) < p or len(set(J)) < q:
                    continue
                c = _coerce(c) * (_sort_sign(I) * _sort_sign(J))
                key = (mask_of(I), mask_of(J))
                data[key] = data.get(key, 0) + c
        self._c = {k: v for k, v in data.items() if v}

    @classmethod
    def _from_masks(cls, n: int, p: int, q: int, data: dict) -> "Form":
        obj = object.__new__(cls)
        obj.n, obj.p, obj.q = n, p, q
        obj._c = {k: v for k, v in data.items() if v}
        return obj

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, n: int, p: int = 0, q: int = 0) -> "Form":
        return cls._from_masks(n, p, q, {})

    @classmethod
    def scalar(cls, n: int, c=1) -> "Form":
        return cls._from_masks(n, 0, 0, {(0, 0): _coerce(c)})

    @classmethod
    def dz(cls, n: int, a: int, c=1) -> "Form":
        """c * e^a, a (1,0)-form."""
        return cls(n, 1, 0, {((a,), ()): c})

    @classmethod
    def dzbar(cls, n: int, a: int, c=1) -> "Form":
        """c * conj(e^a), a (0,1)-form."""
        return cls(n, 0, 1, {((), (a,)): c})

    @classmethod
    def covector(cls, n: int, coeffs: Sequence, antiholomorphic: bool = False) -> "Form":
        """sum_a coeffs[a-1] e^a (or conj(e^a) when antiholomorphic)."""
        if len(coeffs) != n:
            raise ValueError("covector length must equal n")
        if antiholomorphic:
            return cls(n, 0, 1, {((), (a + 1,)): c for a, c in enumerate(coeffs) if c})
        return cls(n, 1, 0, {((a + 1,), ()): c for a, c in enumerate(coeffs) if c})

    @classmethod
    def kahler(cls, n: int, weights: Sequence | None = None) -> "Form":
        """sum_a w_a * sqrt(-1) e^a ^ conj(e^a)."""
        weights = [1] * n if weights is None else weights
        return cls(n, 1, 1, {((a + 1,), (a + 1,)): ExactComplex(0, 1) * w for a, w in enumerate(weights)})

    # -- inspection --------------------------------------------------------
    @property
    def bidegree(self) -> tuple[int, int]:
        return (self.p, self.q)

    @property
    def degree(self) -> int:
        return self.p + self.q

    def terms(self) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], object]]:
        for (I, J), c in sorted(self._c.items()):
            yield axes_of(I), axes_of(J), c

    def coeff(self, I: Sequence[int], J: Sequence[int]):
        I, J = tuple(I), tuple(J)
        if len(set(I)) < len(I) or len(set(J)) < len(J):
            return ZERO
        c = self._c.get((mask_of(I), mask_of(J)))
        if c is None:
            return ZERO
        return c * (_sort_sign(I) * _sort_sign(J))

    def is_exact(self) -> bool:
        return all(isinstance(c, ExactComplex) for c in self._c.values())

    def is_real(self) -> bool:
        """Exact check of conj(self) == self (only meaningful for p == q)."""
        return self.p == self.q and self == self.conjugate()

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Form):
            if not self._c and not other._c:
                return self.n == other.n
            return (self.n, self.p, self.q) == (other.n, other.p, other.q) and self._c == other._c
        if isinstance(other, (int, Fraction, ExactComplex)) and not other:
            return not self._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.n, self.p, self.q, frozenset(self._c.items())))

    def __repr__(self) -> str:
        if not self._c:
            return f"Form(n={self.n}, ({self.p},{self.q}), 0)"
        parts = []
        for I, J, c in self.terms():
            gens = [f"e{a}" for a in I] + [f"ē{a}" for a in J]
            parts.append(f"{c}*{'^'.join(gens) or '1'}")
        return f"Form(n={self.n}, ({self.p},{self.q}), {' + '.join(parts)})"

    def max_abs_diff(self, other: "Form") -> float:
        """Largest coefficient difference in absolute value (float comparison)."""
        keys = set(self._c) | set(other._c)
        return max((abs(complex(self._c.get(k, 0)) - complex(other._c.get(k, 0))) for k in keys), default=0.0)

    def to_complex(self) -> "Form":
        return Form._from_masks(self.n, self.p, self.q, {k: complex(v) for k, v in self._c.items()})

    # -- algebra -----------------------------------------------------------
    def _check_same(self, other: "Form") -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: n={self.n} vs n={other.n}")

    def __add__(self, other):
        if not isinstance(other, Form):
            if isinstance(other, (int, Fraction, ExactComplex)) and not other:
                return self
            return NotImplemented
        self._check_same(other)
        if not other._c:
            return self
        if not self._c:
            return other
        if self.bidegree != other.bidegree:
            raise ValueError(f"cannot add forms of bidegree {self.bidegree} and {other.bidegree}")
        data = dict(self._c)
        for k, v in other._c.items():
            data[k] = data[k] + v if k in data else v
        return Form._from_masks(self.n, self.p, self.q, data)

    __radd__ = __add__

    def __neg__(self) -> "Form":
        return Form._from_masks(self.n, self.p, self.q, {k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, Form):
            return self.__add__(other)
        return self + (-other)

    def scale(self, c) -> "Form":
        c = _coerce(c)
        if not c:
            return Form.zero(self.n, self.p, self.q)
        return Form._from_masks(self.n, self.p, self.q, {k: v * c for k, v in self._c.items()})

    def __mul__(self, other):
        if isinstance(other, Form):
            return wedge(self, other)
        if isinstance(other, (int, Fraction, ExactComplex, complex, float)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, ExactComplex, complex, float)):
            return self.scale(other)
        return NotImplemented

    def __xor__(self, other: "Form") -> "Form":
        return wedge(self, other)

    def conjugate(self) -> "Form":
        return conjugate(self)

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        if not self.is_exact():
            raise TypeError("only exact forms serialize to JSON")
        return {
            "n": self.n,
            "p": self.p,
            "q": self.q,
            "coeffs": [{"I": list(I), "J": list(J), "c": scalar_to_json(c)} for I, J, c in self.terms()],
        }

    @classmethod
    def from_json(cls, d: Mapping) -> "Form":
        return cls(
            int(d["n"]),
            int(d["p"]),
            int(d["q"]),
            [((t["I"], t["J"]), scalar_from_json(t["c"])) for t in d.get("coeffs", [])],
        )


def _coerce(c):
    if isinstance(c, ExactComplex):
        return c
    if isinstance(c, (int, Fraction)):
        return ExactComplex(c)
    if isinstance(c, (complex, float, np.number)):
        return complex(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def wedge(f: Form, g: Form) -> Form:
    """Exterior product f ^ g.

    Basis elements are kept as e^I ^ conj(e)^J; bringing e^K of g past conj(e)^J of f
    costs (-1)^{|J||K|}.
    """
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: n={f.n} vs n={g.n}")
    n, p, q = f.n, f.p + g.p, f.q + g.q
    if p > n or q > n or not f._c or not g._c:
        return Form.zero(n, p, q)
    cross = -1 if (f.q * g.p) & 1 else 1
    out: dict[tuple[int, int], object] = {}
    for (I, J), a in f._c.items():
        for (K, L), b in g._c.items():
            if I & K or J & L:
                continue
            s = cross * _merge_sign(I, K) * _merge_sign(J, L)
            key = (I | K, J | L)
            v = a * b if s > 0 else -(a * b)
            if key in out:
                out[key] = out[key] + v
            else:
                out[key] = v
    return Form._from_masks(n, p, q, out)


def wedge_all(forms: Sequence[Form], n: int | None = None) -> Form:
    if not forms:
        if n is None:
            raise ValueError("empty wedge needs n")
        return Form.scalar(n, 1)
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def conjugate(f: Form) -> Form:
    """Complex conjugate: conj(e^I ^ conj(e)^J) = (-1)^{pq} e^J ^ conj(e)^I."""
    sign = -1 if (f.p * f.q) & 1 else 1
    data = {}
    for (I, J), c in f._c.items():
        c = c.conjugate()
        data[(J, I)] = c if sign > 0 else -c
    return Form._from_masks(f.n, f.q, f.p, data)


def _top_coefficient(f: Form) -> ExactComplex:
    """Complex tau with f = tau * reference volume; f must be exact of bidegree (n,n)."""
    n = f.n
    if f.bidegree != (n, n):
        raise ValueError(f"volume coefficient needs bidegree ({n},{n}), got {f.bidegree}")
    full = (1 << n) - 1
    c = f._c.get((full, full), ZERO)
    if not isinstance(c, ExactComplex):
        raise TypeError("volume_coefficient needs an exact form")
    return c / i_power(n * n)


def volume_coefficient(f: Form) -> Fraction:
    """tau with f = tau * (i e^1 ^ conj(e^1)) ^ ... ^ (i e^n ^ conj(e^n)).

    The reference volume equals i^{n^2} e^1^...^e^n ^ conj(e^1)^...^conj(e^n).
    """
    tau = _top_coefficient(f)
    if tau.im:
        raise ValueError("form is not real: volume coefficient has a non-zero imaginary part")
    return tau.re


def hermitian_gram(u: Form, mode: str = "complement", exact: bool = False):
    """Hermitian matrix attached to a real (k,k)-form.

    ``mode="coefficient"``: G indexed by k-subsets with u = i^{k^2} sum G_IJ e^I ^ conj(e)^J.
    ``mode="complement"``: H indexed by q-subsets (q = n-k) with
    H_KL = volume_coefficient(u ^ i^{q^2} e^K ^ conj(e)^L), so that for
    beta = sum b_K e^K the pairing u ^ i^{q^2} beta ^ conj(beta) has
    coefficient sum_KL b_K H_KL conj(b_L).

    Returns a complex ndarray, or a list of lists of ExactComplex when ``exact``.
    """
    n, k = u.n, u.p
    if u.p != u.q:
        raise ValueError(f"Gram matrix needs a (k,k)-form, got {u.bidegree}")
    if k > n:
        raise ValueError(f"k={k} exceeds n={n}")
    if not u.is_exact():
        raise TypeError("hermitian_gram needs an exact form")
    if not u.is_real():
        raise ValueError("form is not real")
    if mode == "coefficient":
        idx = subsets(n, k)
        scale = i_power(k * k)
        mat = [[u.coeff(I, J) / scale for J in idx] for I in idx]
    elif mode == "complement":
        q = n - k
        idx = subsets(n, q)
        ik = i_power(q * q)
        mat = []
        for K in idx:
            row = []
            for L in idx:
                beta = Form(n, q, q, {(K, L): ik})
                row.append(_top_coefficient(wedge(u, beta)))
            mat.append(row)
    else:
        raise ValueError(f"unknown Gram mode {mode!r}")
    if exact:
        return mat
    return np.array([[complex(c) for c in row] for row in mat], dtype=complex).reshape(len(mat), len(mat))


def pairing(u: Form, beta: Form) -> Fraction:
    """volume_coefficient(u ^ i^{q^2} beta ^ conj(beta)) for a (q,0)-form beta, q = n - k."""
    q = beta.p
    if beta.q != 0 or u.p + q != u.n:
        raise ValueError("beta must be a (n-k, 0)-form")
    return volume_coefficient(wedge(u, wedge(beta, conjugate(beta)).scale(i_power(q * q))))


def form_from_vector(n: int, k: int, vec: Sequence, antiholomorphic: bool = False) -> Form:
    """sum_I vec[I] e^I over k-subsets in lexicographic order."""
    idx = subsets(n, k)
    if antiholomorphic:
        return Form(n, 0, k, {((), I): c for I, c in zip(idx, vec) if c})
    return Form(n, k, 0, {(I, ()): c for I, c in zip(idx, vec) if c})

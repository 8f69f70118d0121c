"""Partitions, Schur polynomials, Littlewood-Richardson coefficients and the
unitary irreducible representations of S_k used in the Fulton-Lazarsfeld expansion.

Partition conventions: ``partitions(k, r)`` returns tuples padded with zeros to
length k; conjugates are padded to the requested length r. Irreducible
representations of S_k are labelled in the usual way: (k) is the trivial
representation and (1, ..., 1) the sign representation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

__all__ = [
    "partitions",
    "strip",
    "pad",
    "conjugate_partition",
    "jacobi_trudi",
    "ssyt",
    "schur_tableau_sum",
    "schur_bialternant",
    "hook_content_eval",
    "LRTable",
    "lr_coefficients",
    "standard_tableaux",
    "IrrepMatrixSet",
    "young_orthogonal_irrep",
    "character",
    "fl_coefficient_matrix",
    "fl_q_vectors",
    "fl_expand",
    "elementary_symmetric",
    "char_poly_coefficients",
    "permutation_sign",
]

LR_BOUND = 8
IRREP_BOUND = 5


def strip(lam: Sequence[int]) -> tuple[int, ...]:
    return tuple(x for x in lam if x)


def pad(lam: Sequence[int], length: int) -> tuple[int, ...]:
    lam = strip(lam)
    if len(lam) > length:
        raise ValueError(f"partition {lam} has more than {length} non-zero parts")
    return lam + (0,) * (length - len(lam))


def _check_partition(lam: Sequence[int]) -> None:
    if any(x < 0 for x in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"{tuple(lam)} is not a weakly decreasing sequence of non-negative integers")


def partitions(k: int, r: int) -> list[tuple[int, ...]]:
    """Lambda(k, r): partitions of k with parts at most r, padded to length k.

    Returned in reverse lexicographic order, e.g. partitions(2, 2) == [(2, 0), (1, 1)].
    """
    if k < 0 or r < 0:
        raise ValueError("k and r must be non-negative")
    out = []

    def rec(remaining, cap, acc):
        if remaining == 0:
            out.append(pad(acc, k))
            return
        for part in range(min(cap, remaining), 0, -1):
            rec(remaining - part, part, acc + (part,))

    rec(k, r, ())
    return out


def conjugate_partition(lam: Sequence[int], r: int) -> tuple[int, ...]:
    """Transpose of the Young diagram, padded to exactly r parts."""
    _check_partition(lam)
    lam = strip(lam)
    if lam and lam[0] > r:
        raise ValueError(f"largest part {lam[0]} exceeds r={r}")
    return tuple(sum(1 for x in lam if x >= i) for i in range(1, r + 1))


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def jacobi_trudi(lam: Sequence[int], c: Sequence, zero=0):
    """det(c_{lam_i - i + j})_{1<=i,j<=k} by the Leibniz formula.

    ``c`` lists c_0, ..., c_r; indices outside [0, r] count as zero. The entries
    only need to commute and support ``+``, ``-`` and ``*`` (scalars, or
    even-degree forms under the wedge product). ``zero`` is returned when every
    term vanishes.
    """
    _check_partition(lam)
    k = len(lam)
    r = len(c) - 1
    if k == 0:
        return c[0]

    def entry(i, j):
        idx = lam[i] - i + j
        return c[idx] if 0 <= idx <= r else None

    table = [[entry(i, j) for j in range(k)] for i in range(k)]
    total = None
    for perm in itertools.permutations(range(k)):
        factors = [table[i][perm[i]] for i in range(k)]
        if any(f is None for f in factors):
            continue
        term = factors[0]
        for f in factors[1:]:
            term = term * f
        if permutation_sign(perm) < 0:
            term = -term
        total = term if total is None else total + term
    return zero if total is None else total


def elementary_symmetric(x: Sequence, r: int | None = None) -> list:
    """e_0, ..., e_r of the values x (r defaults to len(x))."""
    r = len(x) if r is None else r
    e = [1] + [0] * r
    for v in x:
        for i in range(r, 0, -1):
            e[i] = e[i] + e[i - 1] * v
    return e


def char_poly_coefficients(mat: np.ndarray) -> list:
    """c_0..c_r with det(I + tB) = sum t^i c_i(B), as sums of principal minors."""
    mat = np.asarray(mat)
    r = mat.shape[0]
    out = [1.0 + 0j]
    for k in range(1, r + 1):
        out.append(sum(np.linalg.det(mat[np.ix_(S, S)]) for S in itertools.combinations(range(r), k)))
    return out


# -- Schur polynomials in variables --------------------------------------------
def ssyt(shape: Sequence[int], max_entry: int) -> list[list[list[int]]]:
    """All semistandard Young tableaux of the given shape with entries in [1, max_entry]."""
    shape = strip(shape)
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    out = []
    tab = [[0] * row for row in shape]

    def rec(pos):
        if pos == len(cells):
            out.append([row[:] for row in tab])
            return
        i, j = cells[pos]
        lo = 1
        if j > 0:
            lo = max(lo, tab[i][j - 1])
        if i > 0:
            lo = max(lo, tab[i - 1][j] + 1)
        for v in range(lo, max_entry + 1):
            tab[i][j] = v
            rec(pos + 1)
        tab[i][j] = 0

    rec(0)
    return out


def schur_tableau_sum(shape: Sequence[int], x: Sequence) -> Fraction:
    """s_shape(x) as the monomial sum over semistandard tableaux."""
    total = 0
    for t in ssyt(shape, len(x)):
        term = 1
        for row in t:
            for v in row:
                term = term * x[v - 1]
        total = total + term
    return total


def _det(mat: list[list]) -> Fraction:
    """Exact determinant by fraction-based Gaussian elimination."""
    a = [[Fraction(v) for v in row] for row in mat]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, n):
            f = a[i][col] / a[col][col]
            if f:
                a[i] = [a[i][j] - f * a[col][j] for j in range(n)]
    return det


def schur_bialternant(lam_conj: Sequence[int], x: Sequence, fallback: bool = True) -> Fraction:
    """s_{lam'}(x_1..x_r) = det(x_j^{lam'_i + r - i}) / prod_{i<j} (x_i - x_j), exactly.

    With repeated x the Vandermonde vanishes; the tableau sum is used instead
    unless ``fallback`` is False.
    """
    x = [Fraction(v) for v in x]
    r = len(x)
    lam = pad(lam_conj, r)
    vdm = Fraction(1)
    for i in range(r):
        for j in range(i + 1, r):
            vdm *= x[i] - x[j]
    if vdm == 0:
        if not fallback:
            raise ZeroDivisionError("repeated variables make the Vandermonde vanish")
        return Fraction(schur_tableau_sum(lam, x))
    num = _det([[x[j] ** (lam[i] + r - 1 - i) for j in range(r)] for i in range(r)])
    return num / vdm


def hook_content_eval(lam_conj: Sequence[int]) -> int:
    """s_{lam'}(1, ..., 1) = prod_{i<j} (lam'_i - lam'_j + j - i) / (j - i) over the r padded parts."""
    lam = tuple(lam_conj)
    r = len(lam)
    val = Fraction(1)
    for i in range(r):
        for j in range(i + 1, r):
            val *= Fraction(lam[i] - lam[j] + j - i, j - i)
    assert val.denominator == 1
    return int(val)


# -- Littlewood-Richardson ------------------------------------------------------
@dataclass(frozen=True)
class LRTable:
    lam: tuple[int, ...]
    entries: dict = field(default_factory=dict)

    def get(self, mu: Sequence[int], nu: Sequence[int]) -> int:
        return self.entries.get((strip(mu), strip(nu)), 0)

    def items(self):
        return sorted(self.entries.items())


def _subpartitions(lam: tuple[int, ...]):
    def rec(i, cap, acc):
        if i == len(lam):
            yield strip(acc)
            return
        for v in range(min(cap, lam[i]), -1, -1):
            yield from rec(i + 1, v, acc + (v,))

    yield from rec(0, lam[0] if lam else 0, ())


def _lr_contents(lam: tuple[int, ...], mu: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Count LR tableaux of shape lam/mu, grouped by content.

    Cells are filled in reading order (rows top to bottom, each right to left):
    rows weakly increase, columns strictly increase, and the reading word is a
    lattice word.
    """
    mu = pad(mu, len(lam))
    cells = [(i, j) for i in range(len(lam)) for j in range(lam[i] - 1, mu[i] - 1, -1)]
    tab: dict[tuple[int, int], int] = {}
    counts = [0] * (len(lam) + 1)
    out: dict[tuple[int, ...], int] = {}

    def rec(pos):
        if pos == len(cells):
            content = strip(tuple(counts[1:]))
            out[content] = out.get(content, 0) + 1
            return
        i, j = cells[pos]
        hi = tab.get((i, j + 1), len(lam))
        lo = tab.get((i - 1, j), 0) + 1
        for v in range(lo, hi + 1):
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            tab[(i, j)] = v
            counts[v] += 1
            rec(pos + 1)
            counts[v] -= 1
            del tab[(i, j)]

    rec(0)
    return out


def lr_coefficients(lam: Sequence[int], bound: int = LR_BOUND) -> LRTable:
    """All non-zero c^lam_{mu,nu}, keyed by zero-stripped (mu, nu)."""
    _check_partition(lam)
    lam = strip(lam)
    if sum(lam) > bound:
        raise ValueError(f"|lambda| = {sum(lam)} exceeds the LR bound {bound}")
    entries = {}
    for mu in _subpartitions(lam):
        for nu, count in _lr_contents(lam, mu).items():
            entries[(mu, nu)] = count
    return LRTable(lam, entries)


# -- representations of S_k -----------------------------------------------------
def standard_tableaux(lam: Sequence[int]) -> list[tuple[tuple[int, ...], ...]]:
    """Standard Young tableaux of shape lam (rows as tuples), in a fixed order."""
    lam = strip(lam)
    k = sum(lam)
    out = []
    rows: list[list[int]] = [[] for _ in lam]

    def rec(v):
        if v > k:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i in range(len(lam)):
            if len(rows[i]) < lam[i] and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(v)
                rec(v + 1)
                rows[i].pop()

    rec(1)
    return out


def _positions(tab) -> dict[int, tuple[int, int]]:
    return {v: (i, j) for i, row in enumerate(tab) for j, v in enumerate(row)}


@dataclass(frozen=True)
class IrrepMatrixSet:
    lam: tuple[int, ...]
    dim: int
    tableaux: tuple
    matrices: dict  # permutation (tuple, 0-based one-line notation) -> ndarray

    def __call__(self, perm: Sequence[int]) -> np.ndarray:
        return self.matrices[tuple(perm)]

    def character(self, perm: Sequence[int]) -> float:
        return float(np.trace(self.matrices[tuple(perm)]))


def compose(s: Sequence[int], t: Sequence[int]) -> tuple[int, ...]:
    """(s t)(x) = s(t(x)) in one-line notation."""
    return tuple(s[t[x]] for x in range(len(t)))


def inverse(s: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(s)
    for i, v in enumerate(s):
        out[v] = i
    return tuple(out)


def _adjacent_word(perm: Sequence[int]) -> list[int]:
    """Indices a with perm = s_{a_1} s_{a_2} ..., s_a swapping a and a+1 (0-based)."""
    word = []
    cur = list(perm)
    # bubble sort cur to the identity; each swap of positions (a, a+1) is right
    # multiplication by s_a, so perm = (product of swaps) reversed
    changed = True
    while changed:
        changed = False
        for a in range(len(cur) - 1):
            if cur[a] > cur[a + 1]:
                cur[a], cur[a + 1] = cur[a + 1], cur[a]
                word.append(a)
                changed = True
    return word[::-1]


@lru_cache(maxsize=None)
def young_orthogonal_irrep(lam: tuple[int, ...], bound: int = IRREP_BOUND) -> IrrepMatrixSet:
    """Young's orthogonal form of the irreducible representation of S_k for lam.

    The basis is indexed by standard tableaux. The simple transposition
    s = (a a+1) acts by  s.T = T/d + sqrt(1 - 1/d^2) T'  where d is the axial
    distance from a to a+1 in T and T' swaps them (T' = 0 when not standard,
    in which case d = +-1).
    """
    lam = strip(lam)
    _check_partition(lam)
    k = sum(lam)
    if k > bound:
        raise ValueError(f"k = {k} exceeds the irrep bound {bound}")
    tabs = standard_tableaux(lam)
    index = {t: i for i, t in enumerate(tabs)}
    m = len(tabs)

    simple = []
    for a in range(1, k):
        mat = np.zeros((m, m))
        for t in tabs:
            pos = _positions(t)
            (r1, c1), (r2, c2) = pos[a], pos[a + 1]
            d = (c2 - r2) - (c1 - r1)
            col = index[t]
            mat[col, col] = 1.0 / d
            swapped = tuple(tuple(a + 1 if v == a else a if v == a + 1 else v for v in row) for row in t)
            if swapped in index:
                mat[index[swapped], col] = math.sqrt(1.0 - 1.0 / d**2)
        simple.append(mat)

    matrices = {}
    for perm in itertools.permutations(range(k)):
        mat = np.eye(m)
        for a in _adjacent_word(perm):
            mat = mat @ simple[a]
        matrices[perm] = mat
    return IrrepMatrixSet(lam, m, tuple(tabs), matrices)


def cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    lengths = []
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


@lru_cache(maxsize=None)
def _character_table(lam: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    irrep = young_orthogonal_irrep(lam)
    table = {}
    for perm, mat in irrep.matrices.items():
        ct = cycle_type(perm)
        if ct not in table:
            table[ct] = int(round(float(np.trace(mat))))
    return table


def character(lam: Sequence[int], perm: Sequence[int]) -> int:
    """chi_lam(perm), an integer, read off Young's orthogonal form and rounded."""
    return _character_table(strip(lam))[cycle_type(perm)]


def fl_q_vectors(lam: Sequence[int]) -> dict:
    """sigma -> flat array of q_{sigma t} = conj(a_t(sigma)), t over the m*m matrix positions
    of the unitary irrep labelled by the conjugate partition."""
    lam = strip(lam)
    k = sum(lam)
    lam_c = strip(conjugate_partition(lam, lam[0] if lam else 0))
    irrep = young_orthogonal_irrep(lam_c)
    return {s: np.conj(irrep(s)).ravel() for s in itertools.permutations(range(k))}


def fl_coefficient_matrix(lam: Sequence[int], use_characters: bool = False) -> dict:
    """Map (sigma, tau) -> sum_t q_{sigma t} conj(q_{tau t}) for the Schur polynomial P_lam.

    P_lam = det(c_{lam_i - i + j}) equals s_{lam'} of the Chern roots, so the
    representation entering the expansion is the one labelled by the conjugate
    partition lam'. With q_{sigma t} = conj(a_t(sigma)) and t running over matrix
    positions, the sum is tr(a(sigma)^* a(tau)) = chi(sigma^{-1} tau).
    """
    lam = strip(lam)
    k = sum(lam)
    lam_c = strip(conjugate_partition(lam, lam[0] if lam else 0))
    perms = list(itertools.permutations(range(k)))
    out = {}
    if use_characters:
        for s in perms:
            for t in perms:
                out[(s, t)] = character(lam_c, compose(inverse(s), t))
        return out
    q = fl_q_vectors(lam)
    for s in perms:
        for t in perms:
            out[(s, t)] = complex(np.sum(q[s] * np.conj(q[t])))
    return out


def fl_expand(lam: Sequence[int], B, use_characters: bool = False, zero=0):
    """Right-hand side of the Fulton-Lazarsfeld expansion of P_lam(B).

    (1/k!)^2 sum_{sigma,tau} sum_{rho in [1,r]^k} (sum_t q_{sigma t} conj(q_{tau t}))
        * B[rho_{sigma(1)}, rho_{tau(1)}] * ... * B[rho_{sigma(k)}, rho_{tau(k)}]

    ``B`` is an r x r array (or nested list) over a commutative algebra. With
    ``use_characters`` the coefficient is the integer chi(sigma^{-1} tau) and the
    sum stays exact for exact entries.
    """
    lam = strip(lam)
    k = sum(lam)
    if k > IRREP_BOUND:
        raise ValueError(f"k = {k} exceeds the irrep bound {IRREP_BOUND}")
    r = len(B)
    if k == 0:
        return 1
    coeffs = fl_coefficient_matrix(lam, use_characters)
    total = None
    for rho in itertools.product(range(r), repeat=k):
        for (s, t), w in coeffs.items():
            if not w:
                continue
            term = B[rho[s[0]]][rho[t[0]]]
            for j in range(1, k):
                term = term * B[rho[s[j]]][rho[t[j]]]
            term = term * w
            total = term if total is None else total + term
    if total is None:
        return zero
    norm = math.factorial(k) ** 2
    if use_characters:
        return total * Fraction(1, norm)
    return total * (1.0 / norm)

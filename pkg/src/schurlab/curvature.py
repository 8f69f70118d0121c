"""Chern curvature at a point, in a unitary frame.

A tensor R_{i jbar alpha betabar} (fiber indices i, j in 1..r, base indices
alpha, beta in 1..n) is stored densely with 0-based internal indices; the public
accessors are 1-based. The fiber-matrix entry R_{i jbar} is the (1,1)-form
sum_{alpha,beta} R_{i jbar alpha betabar} dz^alpha ^ dzbar^beta.

Factorizations use the coefficient arrays A[i][p][alpha] of the (1,0)-forms
A_{ip} and B[i][p][beta] of the (0,1)-forms B_{ip}, and

    R_{i jbar alpha betabar} = sum_p A_{jp alpha} conj(A_{ip beta})
                             + sum_p B_{jp betabar} conj(B_{ip alphabar}).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact import (
    ONE,
    ZERO,
    ExactComplex,
    NotPSDError,
    exact_rank,
    psd_factor,
    quadratic_value,
    rational_vectors,
    scalar_from_json,
    scalar_to_json,
)
from .hermitian import check_hermitian
from .multilinear import Form, wedge
from .symfunc import jacobi_trudi, permutation_sign

__all__ = [
    "CurvatureTensor",
    "ABFactorization",
    "SplitSpec",
    "Verdict",
    "ClassVerdict",
    "curvature_from_ab",
    "unitary_conjugate_curvature",
    "exact_unitary",
    "chern_forms",
    "schur_form",
    "generate",
    "classify",
    "extract_ab_factorization",
    "flattened_ranks",
    "span_condition_type1",
    "fiber_spans_orthogonal",
    "nakano_matrix",
    "dual_nakano_matrix",
    "griffiths_minimum",
    "CLASSES",
    "MAX_RESAMPLES",
]

MAX_RESAMPLES = 32
ENTRY_RANGE = 3
CLASSES = ("nakano", "dual-nakano", "type1", "type2", "decomposable")


def _zero4(r, n):
    return [[[[ZERO] * n for _ in range(n)] for _ in range(r)] for _ in range(r)]


class CurvatureTensor:
    """Coefficients R_{i jbar alpha betabar} with exact Hermitian symmetry."""

    __slots__ = ("n", "r", "_d")

    def __init__(self, n: int, r: int, data=None, check: bool = True):
        self.n, self.r = int(n), int(r)
        if data is None:
            data = _zero4(r, n)
        self._d = tuple(
            tuple(tuple(tuple(_scalar(c) for c in row) for row in block) for block in fib) for fib in data
        )
        if len(self._d) != r or any(len(x) != r or any(len(b) != n or any(len(rw) != n for rw in b) for b in x) for x in self._d):
            raise ValueError("curvature data must have shape (r, r, n, n)")
        if check:
            bad = self.hermitian_defect()
            if bad:
                raise ValueError(f"curvature is not Hermitian-symmetric (defect {bad})")

    @classmethod
    def zero(cls, n: int, r: int) -> "CurvatureTensor":
        return cls(n, r)

    @classmethod
    def from_entries(cls, n: int, r: int, entries: dict, hermitian_completion: bool = True) -> "CurvatureTensor":
        """Build from {(i, j, alpha, beta): c} (1-based), filling the conjugate partners."""
        d = _zero4(r, n)
        for (i, j, a, b), c in entries.items():
            c = _scalar(c)
            d[i - 1][j - 1][a - 1][b - 1] = c
            if hermitian_completion:
                d[j - 1][i - 1][b - 1][a - 1] = c.conjugate()
        return cls(n, r, d)

    @classmethod
    def from_array(cls, arr) -> "CurvatureTensor":
        arr = np.asarray(arr, dtype=object)
        r, _, n, _ = arr.shape
        return cls(n, r, arr.tolist())

    def get(self, i: int, j: int, alpha: int, beta: int):
        return self._d[i - 1][j - 1][alpha - 1][beta - 1]

    def __getitem__(self, idx):
        i, j, a, b = idx
        return self._d[i][j][a][b]

    @property
    def data(self):
        return self._d

    def is_exact(self) -> bool:
        return all(isinstance(c, ExactComplex) for c in self._iter())

    def _iter(self):
        for fib in self._d:
            for blk in fib:
                for row in blk:
                    yield from row

    def hermitian_defect(self) -> float:
        worst = 0.0
        for i, j, a, b in itertools.product(range(self.r), range(self.r), range(self.n), range(self.n)):
            x, y = self._d[i][j][a][b], self._d[j][i][b][a]
            if isinstance(x, ExactComplex) and isinstance(y, ExactComplex):
                if x != y.conjugate():
                    return float("inf")
            else:
                worst = max(worst, abs(complex(x) - complex(y).conjugate()))
        return worst if worst > 1e-12 else 0.0

    def to_array(self) -> np.ndarray:
        return np.array(
            [[[[complex(c) for c in row] for row in blk] for blk in fib] for fib in self._d], dtype=complex
        ).reshape(self.r, self.r, self.n, self.n)

    def entries(self) -> dict:
        """Non-zero entries keyed by 1-based (i, j, alpha, beta)."""
        out = {}
        for i, j, a, b in itertools.product(range(self.r), range(self.r), range(self.n), range(self.n)):
            c = self._d[i][j][a][b]
            if c:
                out[(i + 1, j + 1, a + 1, b + 1)] = c
        return out

    def form(self, i: int, j: int) -> Form:
        """R_{i jbar} as a (1,1)-form (1-based fiber indices)."""
        blk = self._d[i - 1][j - 1]
        return Form(self.n, 1, 1, {((a + 1,), (b + 1,)): blk[a][b] for a in range(self.n) for b in range(self.n) if blk[a][b]})

    def restrict(self, fiber: Sequence[int]) -> "CurvatureTensor":
        """Restriction to the span of the listed frame vectors (1-based)."""
        idx = [i - 1 for i in fiber]
        return CurvatureTensor(self.n, len(idx), [[self._d[i][j] for j in idx] for i in idx], check=False)

    @staticmethod
    def direct_sum(first: "CurvatureTensor", second: "CurvatureTensor") -> "CurvatureTensor":
        if first.n != second.n:
            raise ValueError("direct sum needs a common base dimension")
        n, r = first.n, first.r + second.r
        d = _zero4(r, n)
        for src, off in ((first, 0), (second, first.r)):
            for i in range(src.r):
                for j in range(src.r):
                    d[off + i][off + j] = [list(row) for row in src._d[i][j]]
        return CurvatureTensor(n, r, d, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CurvatureTensor):
            return NotImplemented
        return (self.n, self.r) == (other.n, other.r) and self._d == other._d

    def __hash__(self):
        return hash((self.n, self.r, self._d))

    def __repr__(self) -> str:
        return f"CurvatureTensor(n={self.n}, r={self.r}, nonzero={len(self.entries())})"

    def to_json(self) -> dict:
        """Only the upper Hermitian half: entries with (i, alpha) <= (j, beta)."""
        if not self.is_exact():
            raise TypeError("only exact curvature tensors serialize")
        rows = []
        for (i, j, a, b), c in sorted(self.entries().items()):
            if (i, a) <= (j, b):
                rows.append({"i": i, "j": j, "alpha": a, "beta": b, "c": scalar_to_json(c)})
        return {"n": self.n, "r": self.r, "entries": rows}

    @classmethod
    def from_json(cls, d: dict) -> "CurvatureTensor":
        n, r = int(d["n"]), int(d["r"])
        entries = {}
        for e in d.get("entries", []):
            key = (int(e["i"]), int(e["j"]), int(e["alpha"]), int(e["beta"]))
            if (key[0], key[2]) > (key[1], key[3]):
                raise ValueError(f"entry {key} lies outside the stored upper half")
            entries[key] = scalar_from_json(e["c"])
        return cls.from_entries(n, r, entries)


def _scalar(c):
    if isinstance(c, ExactComplex):
        return c
    if isinstance(c, (int, Fraction)):
        return ExactComplex(c)
    return complex(c)


@dataclass(frozen=True)
class ABFactorization:
    """Coefficient arrays A[i][p][alpha] and B[i][p][beta] (0-based), each r x N x n."""

    n: int
    r: int
    N: int
    A: tuple
    B: tuple

    @classmethod
    def build(cls, n: int, r: int, N: int, A=None, B=None) -> "ABFactorization":
        def norm(arr):
            if arr is None:
                return tuple(tuple(tuple(ZERO for _ in range(n)) for _ in range(N)) for _ in range(r))
            out = tuple(tuple(tuple(_scalar(c) for c in row) for row in mat) for mat in arr)
            if len(out) != r or any(len(m) != N or any(len(row) != n for row in m) for m in out):
                raise ValueError("factor arrays must have shape (r, N, n)")
            return out

        return cls(n, r, N, norm(A), norm(B))

    @classmethod
    def zero(cls, n: int, r: int) -> "ABFactorization":
        return cls.build(n, r, 0)

    def flat_A(self) -> list[list]:
        """Rows p, columns (i, alpha): A_{ip alpha}."""
        return [[self.A[i][p][a] for i in range(self.r) for a in range(self.n)] for p in range(self.N)]

    def flat_B(self) -> list[list]:
        """Rows p, columns (i, alpha): B_{ip alphabar}."""
        return [[self.B[i][p][a] for i in range(self.r) for a in range(self.n)] for p in range(self.N)]

    def is_exact(self) -> bool:
        return all(isinstance(c, ExactComplex) for arr in (self.A, self.B) for m in arr for row in m for c in row)

    def to_json(self) -> dict:
        def dump(arr, last):
            return [
                {"i": i + 1, "p": p + 1, last: a + 1, "c": scalar_to_json(arr[i][p][a])}
                for i in range(self.r)
                for p in range(self.N)
                for a in range(self.n)
                if arr[i][p][a]
            ]

        return {"n": self.n, "r": self.r, "N": self.N, "A": dump(self.A, "alpha"), "B": dump(self.B, "beta")}

    @classmethod
    def from_json(cls, d: dict) -> "ABFactorization":
        n, r, N = int(d["n"]), int(d["r"]), int(d["N"])
        arrs = {}
        for name, last in (("A", "alpha"), ("B", "beta")):
            arr = [[[ZERO] * n for _ in range(N)] for _ in range(r)]
            for e in d.get(name, []):
                arr[int(e["i"]) - 1][int(e["p"]) - 1][int(e[last]) - 1] = scalar_from_json(e["c"])
            arrs[name] = arr
        return cls.build(n, r, N, arrs["A"], arrs["B"])


@dataclass(frozen=True)
class SplitSpec:
    """kind 'type1': indices are the base axes spanning U (the rest span V).
    kind 'type2': indices are the fiber vectors spanning E1 (the rest span E2)."""

    kind: str
    indices: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("type1", "type2"):
            raise ValueError(f"unknown split kind {self.kind!r}")
        object.__setattr__(self, "indices", tuple(sorted(set(int(i) for i in self.indices))))

    def complement(self, size: int) -> tuple[int, ...]:
        return tuple(i for i in range(1, size + 1) if i not in self.indices)

    def validate(self, n: int, r: int) -> None:
        size = n if self.kind == "type1" else r
        if any(not 1 <= i <= size for i in self.indices):
            raise ValueError(f"split indices {self.indices} outside [1, {size}]")

    def to_json(self) -> dict:
        return {"kind": self.kind, "indices": list(self.indices)}

    @classmethod
    def from_json(cls, d: dict) -> "SplitSpec":
        return cls(d["kind"], tuple(d.get("indices", ())))


# -- construction -----------------------------------------------------------------
def curvature_from_ab(f: ABFactorization) -> CurvatureTensor:
    n, r = f.n, f.r
    d = _zero4(r, n)
    for i in range(r):
        for j in range(r):
            blk = d[i][j]
            for p in range(f.N):
                Aj, Ai, Bj, Bi = f.A[j][p], f.A[i][p], f.B[j][p], f.B[i][p]
                for a in range(n):
                    for b in range(n):
                        t = ZERO
                        if Aj[a] and Ai[b]:
                            t = Aj[a] * Ai[b].conjugate()
                        if Bj[b] and Bi[a]:
                            t = t + Bj[b] * Bi[a].conjugate()
                        if t:
                            blk[a][b] = blk[a][b] + t
    return CurvatureTensor(n, r, d, check=False)


def unitary_conjugate_curvature(R: CurvatureTensor, a) -> CurvatureTensor:
    """Curvature in the frame e~_i = sum_l e_l a_{li}:

    R~_{i jbar} = sum_{k,l} a_{li} conj(a_{kj}) R_{l kbar}.
    """
    a = [[_scalar(c) for c in row] for row in a]
    r = R.r
    if len(a) != r or any(len(row) != r for row in a):
        raise ValueError(f"frame change must be {r} x {r}")
    exact = all(isinstance(c, ExactComplex) for row in a for c in row)
    for i in range(r):
        for j in range(r):
            s = sum((a[k][i].conjugate() * a[k][j] for k in range(r)), ZERO)
            target = ONE if i == j else ZERO
            if exact:
                if s != target:
                    raise ValueError("frame change is not unitary")
            elif abs(complex(s) - complex(target)) > 1e-12:
                raise ValueError("frame change is not unitary")
    n = R.n
    d = _zero4(r, n)
    for i in range(r):
        for j in range(r):
            for l in range(r):
                if not a[l][i]:
                    continue
                for k in range(r):
                    w = a[l][i] * a[k][j].conjugate()
                    if not w:
                        continue
                    src = R.data[l][k]
                    for x in range(n):
                        for y in range(n):
                            if src[x][y]:
                                d[i][j][x][y] = d[i][j][x][y] + w * src[x][y]
    return CurvatureTensor(n, r, d, check=not exact)


_PYTHAGOREAN = ((3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29))


def exact_unitary(r: int, rng: np.random.Generator, rotations: int | None = None) -> list[list[ExactComplex]]:
    """A random unitary with Gaussian-rational entries: a product of Pythagorean
    Givens rotations and unit-modulus phases such as (3+4i)/5."""
    u = [[ONE if i == j else ZERO for j in range(r)] for i in range(r)]
    if r == 0:
        return u
    rotations = 2 * r if rotations is None else rotations
    for _ in range(rotations):
        a, b, c = _PYTHAGOREAN[int(rng.integers(len(_PYTHAGOREAN)))]
        cos, sin = Fraction(a, c), Fraction(b, c)
        ph = ExactComplex(Fraction(a, c), Fraction(b, c) * (1 if rng.integers(2) else -1))
        g = [[ONE if i == j else ZERO for j in range(r)] for i in range(r)]
        k = int(rng.integers(r))
        g[k][k] = ph
        if r > 1:
            i, j = (int(x) for x in rng.choice(r, size=2, replace=False))
            g[i][i], g[i][j] = ExactComplex(cos) * (ph if i == k else ONE), ExactComplex(-sin)
            g[j][i], g[j][j] = ExactComplex(sin) * (ph if i == k else ONE), ExactComplex(cos)
        u = [[sum((u[x][m] * g[m][y] for m in range(r)), ZERO) for y in range(r)] for x in range(r)]
    return u


# -- characteristic forms ------------------------------------------------------------
def chern_forms(R: CurvatureTensor) -> list[Form]:
    """c^_0..c^_r: degree-k parts of det(Id + X), X = i R, under the wedge product.

    Each c^_k is the sum over k-subsets S of the Leibniz determinant of X_{S,S}.
    The (2 pi)^{-k} normalization is dropped.
    """
    n, r = R.n, R.r
    ic = ExactComplex(0, 1) if R.is_exact() else 1j
    X = [[R.form(i + 1, j + 1).scale(ic) for j in range(r)] for i in range(r)]
    out = [Form.scalar(n, 1)]
    for k in range(1, r + 1):
        total = Form.zero(n, k, k)
        for S in itertools.combinations(range(r), k):
            for perm in itertools.permutations(range(k)):
                term = X[S[0]][S[perm[0]]]
                for t in range(1, k):
                    if not term:
                        break
                    term = wedge(term, X[S[t]][S[perm[t]]])
                if term:
                    total = total + term if permutation_sign(perm) > 0 else total - term
        out.append(total)
    return out


def schur_form(lam: Sequence[int], R: CurvatureTensor, chern: Sequence[Form] | None = None) -> Form:
    """P_lambda(c^) = det(c^_{lam_i - i + j}) under the wedge product; a real (k,k)-form.

    Partitions whose first part exceeds r give the zero form (as the determinant does).
    """
    lam = tuple(x for x in lam if x)
    k = sum(lam)
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"{lam} is not a partition")
    c = list(chern) if chern is not None else chern_forms(R)
    if k == 0:
        return c[0]
    return jacobi_trudi(lam + (0,) * (k - len(lam)), c, zero=Form.zero(R.n, k, k))


# -- flattened matrices and span conditions ------------------------------------------------
def flattened_ranks(f: ABFactorization) -> tuple[int, int]:
    """(rank A, rank B) of the flattened N x (r n) matrices, exactly."""
    if not f.is_exact():
        raise TypeError("exact ranks need an exact factorization")
    return exact_rank(f.flat_A()), exact_rank(f.flat_B())


def _covectors(f: ABFactorization):
    """A_{ip} and conj(B_{ip}) as coefficient vectors of (1,0)-forms."""
    a_vecs = [list(f.A[i][p]) for i in range(f.r) for p in range(f.N) if any(f.A[i][p])]
    b_vecs = [[c.conjugate() for c in f.B[i][p]] for i in range(f.r) for p in range(f.N) if any(f.B[i][p])]
    return a_vecs, b_vecs


def span_condition_type1(f: ABFactorization) -> bool:
    """span{conj(B_ip)} and span{A_ip} meet only in zero (as (1,0)-forms)."""
    a_vecs, b_vecs = _covectors(f)
    return exact_rank(a_vecs) + exact_rank(b_vecs) == exact_rank(a_vecs + b_vecs)


def fiber_spans_orthogonal(f: ABFactorization) -> bool:
    """span{sum_i A_{ip alpha} e_i} is orthogonal to span{sum_i B_{ip alphabar} e_i} in E."""
    a_vecs = [[f.A[i][p][a] for i in range(f.r)] for p in range(f.N) for a in range(f.n)]
    b_vecs = [[f.B[i][p][a] for i in range(f.r)] for p in range(f.N) for a in range(f.n)]
    a_vecs = [v for v in a_vecs if any(v)]
    b_vecs = [v for v in b_vecs if any(v)]
    for x in a_vecs:
        for y in b_vecs:
            if sum((xi * yi.conjugate() for xi, yi in zip(x, y)), ZERO):
                return False
    return True


# -- Hermitian forms attached to R ------------------------------------------------------
def nakano_matrix(R: CurvatureTensor, fiber=None, base=None) -> list[list]:
    """N with u^* N u = sum R_{i jbar alpha betabar} u^{i alpha} conj(u^{j beta}).

    Rows (j, beta), columns (i, alpha), ordered fiber-major over the selected
    0-based fiber and base indices. This is the transpose of the matrix
    M_{(i alpha),(j beta)} = R_{i jbar alpha betabar}; both have the same spectrum.
    """
    fiber = range(R.r) if fiber is None else fiber
    base = range(R.n) if base is None else base
    idx = [(i, a) for i in fiber for a in base]
    return [[R[i, j, a, b] for (i, a) in idx] for (j, b) in idx]


def dual_nakano_matrix(R: CurvatureTensor, fiber=None, base=None) -> list[list]:
    """D with v^* D v = sum R_{i jbar alpha betabar} v^{jbar alpha} conj(v^{ibar beta}).

    Rows (i, beta), columns (j, alpha).
    """
    fiber = range(R.r) if fiber is None else fiber
    base = range(R.n) if base is None else base
    idx = [(i, a) for i in fiber for a in base]
    return [[R[i, j, a, b] for (j, a) in idx] for (i, b) in idx]


def _min_eigvec(mat: np.ndarray):
    w, v = np.linalg.eigh(mat)
    return float(w[0]), v[:, 0]


def griffiths_minimum(
    R: CurvatureTensor, restarts: int = 32, sweeps: int = 200, seed: int = 0, tol: float = 1e-12
) -> tuple[float, np.ndarray, np.ndarray]:
    """Alternating Rayleigh minimization of sum R v^i conj(v^j) xi^alpha conj(xi^beta)
    over unit v in C^r and xi in C^n. Returns (value, v, xi)."""
    n = R.n
    arr = R.to_array()
    rng = np.random.default_rng(seed)
    best = (np.inf, None, None)
    for _ in range(max(1, restarts)):
        xi = rng.normal(size=n) + 1j * rng.normal(size=n)
        xi /= np.linalg.norm(xi)
        prev = np.inf
        for _ in range(sweeps):
            # Q[j, i] = sum R_{ij ab} xi_a conj(xi_b); value = v^* Q v
            Q = np.einsum("ijab,a,b->ji", arr, xi, xi.conj())
            _, v = _min_eigvec((Q + Q.conj().T) / 2)
            P = np.einsum("ijab,i,j->ba", arr, v, v.conj())
            val, xi = _min_eigvec((P + P.conj().T) / 2)
            if prev - val < tol:
                break
            prev = val
        if val < best[0]:
            best = (val, v, xi)
    return best


def _griffiths_value(R: CurvatureTensor, v, xi) -> Fraction:
    w = [vi * xa for vi in v for xa in xi]
    return quadratic_value(nakano_matrix(R), w)


# -- classification -------------------------------------------------------------------
@dataclass(frozen=True)
class Verdict:
    status: str  # Holds | Fails | Unknown
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"status": self.status, "evidence": _jsonable(self.evidence)}


def _jsonable(x):
    if isinstance(x, ExactComplex):
        return scalar_to_json(x)
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (SplitSpec, ABFactorization, CurvatureTensor)):
        return x.to_json()
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, np.integer):
        return int(x)
    return x


@dataclass(frozen=True)
class ClassVerdict:
    griffiths: Verdict
    nakano: Verdict
    dual_nakano: Verdict
    decomposable: Verdict
    type1: Verdict
    type2: Verdict

    def __post_init__(self):
        for name in ("nakano", "dual_nakano", "type1", "type2"):
            if getattr(self, name).status == "Holds" and self.griffiths.status == "Fails":
                raise AssertionError(f"{name} holds while Griffiths positivity fails")

    def items(self):
        return [
            ("Griffiths", self.griffiths),
            ("Nakano", self.nakano),
            ("DualNakano", self.dual_nakano),
            ("Decomposable", self.decomposable),
            ("StronglyTypeI", self.type1),
            ("StronglyTypeII", self.type2),
        ]

    def to_json(self) -> dict:
        return {name: v.to_json() for name, v in self.items()}


def _matrix_verdict(mat, kind_name: str) -> tuple[Verdict, object]:
    check = check_hermitian(mat)
    ev = {"margin": check.margin, "cutoff": check.band, "nonnegative": check.nonnegative}
    if check.positive:
        return Verdict("Holds", ev), check
    if check.witness is not None:
        ev["witness"] = check.witness
        ev["value"] = check.value
    if check.kind == "indefinite" or (check.value is not None and check.value <= 0):
        return Verdict("Fails", ev), check
    # degenerate under the cutoff but without an exact non-positive witness
    ev["exact_inertia"] = check.exact_kind
    return Verdict("Unknown", ev), check


def _cross_terms_type1(R: CurvatureTensor, U, V) -> bool:
    return all(not R[i, j, a, b] for i in range(R.r) for j in range(R.r) for a in U for b in V) and all(
        not R[i, j, a, b] for i in range(R.r) for j in range(R.r) for a in V for b in U
    )


def _cross_blocks_type2(R: CurvatureTensor, E1, E2) -> bool:
    return all(
        not R[i, j, a, b] and not R[j, i, a, b] for i in E1 for j in E2 for a in range(R.n) for b in range(R.n)
    )


def check_type1(R: CurvatureTensor, split: SplitSpec) -> tuple[bool, dict]:
    """Exact check of the three defining conditions for a base split U + V."""
    U = [a - 1 for a in split.indices]
    V = [a - 1 for a in split.complement(R.n)]
    ev = {"split": split, "cross_terms_vanish": _cross_terms_type1(R, U, V)}
    if not ev["cross_terms_vanish"]:
        return False, ev
    nak = check_hermitian(nakano_matrix(R, base=U))
    dual = check_hermitian(dual_nakano_matrix(R, base=V))
    ev.update(nakano_margin=nak.margin, dual_nakano_margin=dual.margin)
    ev["nonnegative"] = nak.nonnegative and dual.nonnegative
    return nak.positive and dual.positive, ev


def check_type2(R: CurvatureTensor, split: SplitSpec) -> tuple[bool, dict]:
    """Exact check of block-diagonality plus Nakano on E1 and dual Nakano on E2."""
    E1 = [i - 1 for i in split.indices]
    E2 = [i - 1 for i in split.complement(R.r)]
    ev = {"split": split, "cross_blocks_vanish": _cross_blocks_type2(R, E1, E2)}
    if not ev["cross_blocks_vanish"]:
        return False, ev
    nak = check_hermitian(nakano_matrix(R, fiber=E1))
    dual = check_hermitian(dual_nakano_matrix(R, fiber=E2))
    ev.update(nakano_margin=nak.margin, dual_nakano_margin=dual.margin)
    ev["nonnegative"] = nak.nonnegative and dual.nonnegative
    return nak.positive and dual.positive, ev


AXIS_SEARCH_LIMIT = 12


def _split_verdict(R, kind, hint, checker, size) -> Verdict:
    if hint is not None and hint.kind == kind:
        ok, ev = checker(R, hint)
        return Verdict("Holds" if ok else "Unknown", ev)
    if size > AXIS_SEARCH_LIMIT:
        return Verdict("Unknown", {"reason": "axis search skipped", "size": size})
    nonneg_split = None
    for m in range(size + 1):
        for S in itertools.combinations(range(1, size + 1), m):
            split = SplitSpec(kind, S)
            ok, ev = checker(R, split)
            if ok:
                return Verdict("Holds", ev)
            if nonneg_split is None and ev.get("nonnegative"):
                nonneg_split = split
    ev = {"reason": "no coordinate-axis split works", "searched": 2**size}
    if nonneg_split is not None:
        ev["nonnegative_split"] = nonneg_split
    return Verdict("Unknown", ev)


def _rank_one_witness(R: CurvatureTensor, nak: Verdict, dual: Verdict) -> dict | None:
    """With r = 1 or n = 1 every tensor has rank one, so a Nakano or dual Nakano
    witness is already a Griffiths witness (up to conjugation)."""
    if R.r != 1 and R.n != 1:
        return None
    for v in (nak, dual):
        w = v.evidence.get("witness") if v.status == "Fails" else None
        if w is None:
            continue
        for cand in (w, [c.conjugate() for c in w]):
            vv, xx = ([ONE], cand) if R.r == 1 else (cand, [ONE])
            val = _griffiths_value(R, vv, xx)
            if val <= 0:
                return {"witness_v": vv, "witness_xi": xx, "value": val}
    return None


def _certify_rank_one(R: CurvatureTensor, v: np.ndarray, xi: np.ndarray) -> dict | None:
    for rv in rational_vectors(v):
        for rx in rational_vectors(xi):
            val = _griffiths_value(R, rv, rx)
            if val <= 0:
                return {"witness_v": rv, "witness_xi": rx, "value": val}
    return None


def classify(
    R: CurvatureTensor,
    hints: SplitSpec | None = None,
    restarts: int = 32,
    sweeps: int = 200,
    seed: int = 0,
    factorization: ABFactorization | None = None,
) -> ClassVerdict:
    """Positivity classes of an exact curvature tensor.

    Nakano and dual Nakano are decided from their Hermitian matrices. Griffiths
    positivity is implied by the other classes; otherwise a rank-one restricted
    minimization may certify failure with an exact witness, and Unknown is
    reported when nothing is certified. Type I/II use the hint split or an
    exhaustive search over coordinate-axis splits.
    """
    if not R.is_exact():
        raise TypeError("classify needs an exact curvature tensor")
    if hints is not None:
        hints.validate(R.n, R.r)
    nak, nak_check = _matrix_verdict(nakano_matrix(R), "nakano")
    dual, dual_check = _matrix_verdict(dual_nakano_matrix(R), "dual_nakano")

    t1 = _split_verdict(R, "type1", hints, check_type1, R.n)
    t2 = _split_verdict(R, "type2", hints, check_type2, R.r)
    strong = [(name, v) for name, v in (("Nakano", nak), ("DualNakano", dual), ("StronglyTypeI", t1), ("StronglyTypeII", t2))]

    griffiths_fail = None
    g_stats = {}
    if not any(v.status == "Holds" for _, v in strong):
        griffiths_fail = _rank_one_witness(R, nak, dual)
        if griffiths_fail is None:
            val, v, xi = griffiths_minimum(R, restarts=restarts, sweeps=sweeps, seed=seed)
            g_stats = {"minimum": val, "restarts": restarts, "sweeps": sweeps, "seed": seed}
            scale = max(1.0, float(np.abs(R.to_array()).max(initial=0.0)))
            if val <= 1e-9 * scale:
                griffiths_fail = _certify_rank_one(R, v, xi)
        if griffiths_fail is not None:
            fail_ev = {"reason": "not Griffiths positive", **griffiths_fail}
            t1 = Verdict("Fails", {**fail_ev, **{k: v for k, v in t1.evidence.items() if k == "nonnegative_split"}})
            t2 = Verdict("Fails", {**fail_ev, **{k: v for k, v in t2.evidence.items() if k == "nonnegative_split"}})

    if griffiths_fail is not None:
        griffiths = Verdict("Fails", griffiths_fail)
    elif any(v.status == "Holds" for v in (nak, dual, t1, t2)):
        via = [name for name, v in strong if v.status == "Holds"]
        griffiths = Verdict("Holds", {"implied_by": via})
    else:
        griffiths = Verdict("Unknown", g_stats)

    # decomposable non-negativity: any of the stronger non-negative structures, or a matching factorization
    dec_ev = {}
    nonneg = (
        nak.evidence.get("nonnegative")
        or dual.evidence.get("nonnegative")
        or t1.evidence.get("nonnegative")
        or t2.evidence.get("nonnegative")
        or "nonnegative_split" in t1.evidence
        or "nonnegative_split" in t2.evidence
    )
    if factorization is not None:
        matches = curvature_from_ab(factorization) == R
        dec_ev["factorization_matches"] = matches
        nonneg = nonneg or matches
    dec_ev["nonnegative"] = bool(nonneg) if nonneg else None
    if griffiths.status == "Fails":
        decomposable = Verdict("Fails", {**dec_ev, "reason": "not Griffiths positive"})
    elif griffiths.status == "Holds" and nonneg:
        decomposable = Verdict("Holds", dec_ev)
    else:
        decomposable = Verdict("Unknown", dec_ev)
    return ClassVerdict(griffiths, nak, dual, decomposable, t1, t2)


# -- factor extraction -----------------------------------------------------------------
def _factor_block(mat) -> list[list[ExactComplex]]:
    try:
        return psd_factor(mat)
    except NotPSDError as exc:
        raise NotPSDError(f"block is not positive semidefinite: {exc}") from None


def extract_ab_factorization(R: CurvatureTensor, split: SplitSpec) -> ABFactorization:
    """Exact A/B factors reproducing R, from PSD factorizations of the two blocks.

    type1: the Nakano matrix on E (x) U gives B (supported on U), the dual Nakano
    matrix on Ebar (x) V gives A (supported on V); cross terms must vanish.
    type2: the Nakano matrix of the E1 block gives B (rows in E1) and the dual
    Nakano matrix of the E2 block gives A (rows in E2); cross blocks must vanish.
    """
    if not R.is_exact():
        raise TypeError("extraction needs an exact curvature tensor")
    split.validate(R.n, R.r)
    n, r = R.n, R.r
    if split.kind == "type1":
        U = [a - 1 for a in split.indices]
        V = [a - 1 for a in split.complement(n)]
        if not _cross_terms_type1(R, U, V):
            raise ValueError("cross terms between U and V do not vanish")
        b_fib, b_base, a_fib, a_base = list(range(r)), U, list(range(r)), V
    else:
        E1 = [i - 1 for i in split.indices]
        E2 = [i - 1 for i in split.complement(r)]
        if not _cross_blocks_type2(R, E1, E2):
            raise ValueError("off-diagonal blocks between E1 and E2 do not vanish")
        b_fib, b_base, a_fib, a_base = E1, list(range(n)), E2, list(range(n))

    xs = _factor_block(nakano_matrix(R, fiber=b_fib, base=b_base)) if b_fib and b_base else []
    ws = _factor_block(dual_nakano_matrix(R, fiber=a_fib, base=a_base)) if a_fib and a_base else []
    N = max(len(xs), len(ws))
    A = [[[ZERO] * n for _ in range(N)] for _ in range(r)]
    B = [[[ZERO] * n for _ in range(N)] for _ in range(r)]
    b_idx = [(j, b) for j in b_fib for b in b_base]
    for p, x in enumerate(xs):
        for (j, b), c in zip(b_idx, x):
            B[j][p][b] = c
    a_idx = [(j, a) for j in a_fib for a in a_base]
    for p, w in enumerate(ws):
        for (j, a), c in zip(a_idx, w):
            A[j][p][a] = c.conjugate()
    f = ABFactorization.build(n, r, N, A, B)
    if curvature_from_ab(f) != R:
        raise AssertionError("extracted factors do not reproduce the curvature")
    return f


# -- generators ---------------------------------------------------------------------------
def _random_gaussian_int(rng: np.random.Generator, shape) -> list:
    re = rng.integers(-ENTRY_RANGE, ENTRY_RANGE + 1, size=shape)
    im = rng.integers(-ENTRY_RANGE, ENTRY_RANGE + 1, size=shape)
    return np.vectorize(lambda a, b: ExactComplex(int(a), int(b)), otypes=[object])(re, im)


def _random_block(rng, r, N, n, rows, cols):
    """r x N x n array with random Gaussian integers on rows x cols, zero elsewhere."""
    out = [[[ZERO] * n for _ in range(N)] for _ in range(r)]
    if not rows or not cols or not N:
        return out
    vals = _random_gaussian_int(rng, (len(rows), N, len(cols)))
    for a, i in enumerate(rows):
        for p in range(N):
            for b, al in enumerate(cols):
                out[i][p][al] = vals[a, p, b]
    return out


def _default_split(cls: str, n: int, r: int) -> SplitSpec | None:
    if cls == "nakano":
        return SplitSpec("type1", range(1, n + 1))
    if cls == "dual-nakano":
        return SplitSpec("type1", ())
    if cls == "type1":
        return SplitSpec("type1", range(1, (n + 1) // 2 + 1))
    if cls == "type2":
        return SplitSpec("type2", range(1, (r + 1) // 2 + 1))
    return None


def generate(
    cls: str, n: int, r: int, seed: int, split: SplitSpec | None = None, N: int | None = None
) -> tuple[CurvatureTensor, ABFactorization, SplitSpec | None]:
    """Random exact curvature of the requested positivity class, with its factors.

    Factor entries are Gaussian integers with parts in [-3, 3]; draws are
    repeated (up to 32 times) until the flattened ranks are full.
    """
    cls = cls.lower().replace("_", "-")
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}; expected one of {CLASSES}")
    if n < 1 or r < 1:
        raise ValueError("n and r must be positive")
    if split is None:
        split = _default_split(cls, n, r)
    elif cls in ("nakano", "dual-nakano", "decomposable"):
        raise ValueError(f"class {cls} takes no split")
    if split is not None:
        split.validate(n, r)
        expected = "type2" if cls == "type2" else "type1"
        if split.kind != expected:
            raise ValueError(f"class {cls} needs a {expected} split")

    all_fib, all_base = list(range(r)), list(range(n))
    if cls in ("nakano", "dual-nakano", "type1"):
        U = [a - 1 for a in split.indices]
        V = [a - 1 for a in split.complement(n)]
        b_rows, b_cols, a_rows, a_cols = all_fib, U, all_fib, V
    elif cls == "type2":
        E1 = [i - 1 for i in split.indices]
        E2 = [i - 1 for i in split.complement(r)]
        b_rows, b_cols, a_rows, a_cols = E1, all_base, E2, all_base
    else:
        b_rows, b_cols, a_rows, a_cols = all_fib, all_base, all_fib, all_base
    need_b = len(b_rows) * len(b_cols)
    need_a = len(a_rows) * len(a_cols)
    if N is None:
        N = max(need_a, need_b, 1)
    if N < max(need_a, need_b):
        raise ValueError(f"N={N} is too small for flattened ranks {need_b} and {need_a}")

    rng = np.random.default_rng(seed)
    for _ in range(MAX_RESAMPLES):
        B = _random_block(rng, r, N, n, b_rows, b_cols)
        A = _random_block(rng, r, N, n, a_rows, a_cols)
        f = ABFactorization.build(n, r, N, A, B)
        if flattened_ranks(f) == (need_a, need_b):
            return curvature_from_ab(f), f, split
    raise RuntimeError(f"could not reach full flattened rank in {MAX_RESAMPLES} draws")

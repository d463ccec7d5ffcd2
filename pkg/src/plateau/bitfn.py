"""Truth tables, ANF and GF(2) linear algebra.

Conventions used everywhere in the package:

* A vector x = (x_1, ..., x_n) of F_2^n is stored as a Python ``int`` whose
  most significant bit (bit n-1) is x_1.  The integer is exactly the index
  of x in lexicographic order, so ``table[i] == f(vector_from_index(i, n))``.
* A monomial x_{i1}...x_{ik} is stored as its exponent vector, i.e. the
  same kind of ``int``.
* Row-vector convention for matrices: ``x @ A`` is the vector whose j-th
  coordinate is sum_i x_i A[i][j].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

MAX_VARS = 24


def check_n(n: int) -> int:
    if not 1 <= n <= MAX_VARS:
        raise ValueError(f"number of variables must be in [1, {MAX_VARS}], got {n}")
    return n


# ---------------------------------------------------------------------------
# vectors


def vector_from_index(i: int, n: int) -> tuple[int, ...]:
    """Binary expansion of ``i`` on ``n`` coordinates, x_1 first."""
    if not 0 <= i < (1 << n):
        raise ValueError(f"index {i} out of range for n={n}")
    return tuple((i >> (n - 1 - j)) & 1 for j in range(n))


def lex_index(bits: Sequence[int]) -> int:
    """Inverse of :func:`vector_from_index`."""
    out = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"not a bit: {b!r}")
        out = (out << 1) | b
    return out


def dot(a: int, b: int) -> int:
    return (a & b).bit_count() & 1


def bits_to_str(x: int, n: int) -> str:
    return format(x, f"0{n}b") if n else ""


def parity(arr: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(arr) & 1).astype(np.uint8)


# ---------------------------------------------------------------------------
# GF(2) matrices


def _reduce(rows: Iterable[int]) -> list[int]:
    """Echelon basis (distinct leading bits) of the span of ``rows``."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return basis


def gf2_rank(rows: Iterable[int]) -> int:
    return len(_reduce(rows))


def span_basis(vectors: Iterable[int]) -> list[int]:
    """Independent subset of ``vectors`` (greedy, in the given order) spanning them."""
    echelon: list[int] = []
    picked: list[int] = []
    for v in vectors:
        r = v
        for b in echelon:
            r = min(r, r ^ b)
        if r:
            echelon.append(r)
            echelon.sort(reverse=True)
            picked.append(v)
    return picked


def in_span(v: int, basis: Sequence[int]) -> bool:
    for b in _reduce(basis):
        v = min(v, v ^ b)
    return v == 0


def span(basis: Sequence[int]) -> list[int]:
    """All 2^k elements of the span of an independent ``basis``, in lex order of coefficients."""
    out = [0]
    for b in reversed(basis):
        out = out + [x ^ b for x in out]
    # out[i] = sum of basis[j] over the bits of i with basis[0] as MSB
    return out


class SingularMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class BinaryMatrix:
    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        for r in self.rows:
            if r >> self.ncols:
                raise ValueError("row wider than ncols")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "BinaryMatrix":
        return cls(tuple(1 << (n - 1 - i) for i in range(n)), n)

    @classmethod
    def from_bits(cls, rows: Sequence[Sequence[int]]) -> "BinaryMatrix":
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(tuple(lex_index(r) for r in rows), ncols)

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BinaryMatrix":
        return cls.from_bits([[int(c) for c in r] for r in rows])

    def to_bits(self) -> list[list[int]]:
        return [list(vector_from_index(r, self.ncols)) for r in self.rows]

    def to_strings(self) -> list[str]:
        return [bits_to_str(r, self.ncols) for r in self.rows]

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> (self.ncols - 1 - j)) & 1

    def vecmul(self, x: int) -> int:
        """Row vector times matrix."""
        out = 0
        k = self.nrows
        for i, r in enumerate(self.rows):
            if (x >> (k - 1 - i)) & 1:
                out ^= r
        return out

    def __matmul__(self, other: "BinaryMatrix") -> "BinaryMatrix":
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch")
        return BinaryMatrix(tuple(other.vecmul(r) for r in self.rows), other.ncols)

    def transpose(self) -> "BinaryMatrix":
        return BinaryMatrix.from_bits([list(c) for c in zip(*self.to_bits())]) if self.rows else self

    @property
    def T(self) -> "BinaryMatrix":
        return self.transpose()

    def rank(self) -> int:
        return gf2_rank(self.rows)

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def inverse(self) -> "BinaryMatrix":
        n = self.nrows
        if n != self.ncols:
            raise SingularMatrixError("non-square matrix has no inverse")
        # Gauss-Jordan on [M | I]
        aug = [(r << n) | (1 << (n - 1 - i)) for i, r in enumerate(self.rows)]
        for col in range(n):
            bit = 1 << (2 * n - 1 - col)
            piv = next((k for k in range(col, n) if aug[k] & bit), None)
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            aug[col], aug[piv] = aug[piv], aug[col]
            for k in range(n):
                if k != col and aug[k] & bit:
                    aug[k] ^= aug[col]
        mask = (1 << n) - 1
        return BinaryMatrix(tuple(r & mask for r in aug), n)

    def image_table(self) -> np.ndarray:
        """``x @ self`` for every x in lexicographic order."""
        k = self.nrows
        idx = np.arange(1 << k, dtype=np.int64)
        out = np.zeros(1 << k, dtype=np.int64)
        for i, r in enumerate(self.rows):
            out ^= ((idx >> (k - 1 - i)) & 1) * r
        return out


def matrix_rank(M: BinaryMatrix) -> int:
    return M.rank()


def matrix_inverse(M: BinaryMatrix) -> BinaryMatrix:
    return M.inverse()


def random_invertible(n: int, seed) -> BinaryMatrix:
    """Uniform element of GL(n, F_2); rejection sampling, deterministic per seed."""
    rng = np.random.default_rng(seed)
    while True:
        rows = tuple(int(r) for r in rng.integers(0, 1 << n, size=n))
        if gf2_rank(rows) == n:
            return BinaryMatrix(rows, n)


def basis_to_matrix(basis: Sequence[int], ncols: int) -> BinaryMatrix:
    return BinaryMatrix(tuple(basis), ncols)


def complete_basis(basis: Sequence[int], n: int) -> list[int]:
    """Extend an independent list to a basis of F_2^n using unit vectors."""
    out = list(basis)
    for j in range(n):
        e = 1 << (n - 1 - j)
        if len(out) == n:
            break
        if not in_span(e, out):
            out.append(e)
    return out


# ---------------------------------------------------------------------------
# Boolean functions


def _mobius(table: np.ndarray) -> np.ndarray:
    a = np.array(table, dtype=np.uint8, copy=True)
    h = 1
    while h < a.size:
        v = a.reshape(-1, 2, h)
        v[:, 1, :] ^= v[:, 0, :]
        h <<= 1
    return a


class BooleanFunction:
    """f: F_2^n -> F_2 given by its truth table (entry i is f at the i-th vector)."""

    __slots__ = ("n", "table", "_hash")

    def __init__(self, n: int, table):
        check_n(n)
        t = np.asarray(table, dtype=np.uint8)
        if t.shape != (1 << n,):
            raise ValueError(f"truth table must have length 2^{n}, got shape {t.shape}")
        if t.size and t.max() > 1:
            raise ValueError("truth table entries must be 0/1")
        t = t.copy()
        t.flags.writeable = False
        self.n = n
        self.table = t
        self._hash = None

    # constructors

    @classmethod
    def zero(cls, n: int) -> "BooleanFunction":
        return cls(n, np.zeros(1 << n, dtype=np.uint8))

    @classmethod
    def constant(cls, n: int, c: int) -> "BooleanFunction":
        return cls(n, np.full(1 << n, c & 1, dtype=np.uint8))

    @classmethod
    def variable(cls, i: int, n: int) -> "BooleanFunction":
        """The coordinate function x_i (1-based)."""
        if not 1 <= i <= n:
            raise ValueError(f"variable x{i} out of range for n={n}")
        idx = np.arange(1 << n)
        return cls(n, (idx >> (n - i)) & 1)

    @classmethod
    def linear(cls, a: int, n: int) -> "BooleanFunction":
        return cls(n, parity(np.arange(1 << n) & a))

    @classmethod
    def from_callable(cls, n: int, fn: Callable[[tuple[int, ...]], int]) -> "BooleanFunction":
        return cls(n, [fn(vector_from_index(i, n)) & 1 for i in range(1 << n)])

    @classmethod
    def from_anf(cls, n: int, monomials: Iterable[int]) -> "BooleanFunction":
        coeffs = np.zeros(1 << n, dtype=np.uint8)
        for u in monomials:
            coeffs[u] ^= 1
        return cls(n, _mobius(coeffs))

    # basic data

    def __call__(self, x) -> int:
        if not isinstance(x, (int, np.integer)):
            x = lex_index(x)
        return int(self.table[x])

    def __len__(self) -> int:
        return 1 << self.n

    @property
    def weight(self) -> int:
        return int(self.table.sum(dtype=np.int64))

    @property
    def signs(self) -> np.ndarray:
        """(-1)^f as an int64 array."""
        return 1 - 2 * self.table.astype(np.int64)

    def anf(self) -> "AnfPolynomial":
        return tt_to_anf(self)

    @property
    def degree(self) -> int:
        coeffs = _mobius(self.table)
        nz = np.flatnonzero(coeffs)
        if nz.size == 0:
            return 0
        return int(np.bitwise_count(nz).max())

    def is_affine(self) -> bool:
        return self.degree <= 1

    def depends_on(self, i: int) -> bool:
        """Whether x_i (1-based) is an essential variable."""
        bit = 1 << (self.n - i)
        idx = np.arange(1 << self.n)
        return bool(np.any(self.table != self.table[idx ^ bit]))

    def restrict(self, assignment: dict[int, int]) -> "BooleanFunction":
        """Fix some variables; the result still has n variables but ignores the fixed ones."""
        idx = np.arange(1 << self.n)
        for i, val in assignment.items():
            bit = 1 << (self.n - i)
            idx = (idx & ~bit) | (bit if val else 0)
        return BooleanFunction(self.n, self.table[idx])

    def extend(self, n: int, positions: Sequence[int] | None = None) -> "BooleanFunction":
        """View as a function of ``n`` variables.

        ``positions[j]`` is the (1-based) variable of the new function that
        plays the role of x_{j+1}; default: the first ``self.n`` variables.
        """
        if positions is None:
            positions = range(1, self.n + 1)
        positions = list(positions)
        if len(positions) != self.n:
            raise ValueError("need one position per variable")
        idx = np.arange(1 << n)
        sub = np.zeros(1 << n, dtype=np.int64)
        for j, p in enumerate(positions):
            sub |= ((idx >> (n - p)) & 1) << (self.n - 1 - j)
        return BooleanFunction(n, self.table[sub])

    # algebra: + is XOR, * is AND; ints are constants

    def _coerce(self, other) -> np.ndarray:
        if isinstance(other, BooleanFunction):
            if other.n != self.n:
                raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")
            return other.table
        if isinstance(other, (int, np.integer)):
            return np.uint8(other & 1)
        return NotImplemented

    def __add__(self, other):
        t = self._coerce(other)
        if t is NotImplemented:
            return t
        return BooleanFunction(self.n, self.table ^ t)

    __radd__ = __add__
    __xor__ = __add__

    def __mul__(self, other):
        t = self._coerce(other)
        if t is NotImplemented:
            return t
        return BooleanFunction(self.n, self.table & t)

    __rmul__ = __mul__
    __and__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.n == other.n and bool(np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.table.tobytes()))
        return self._hash

    def __repr__(self) -> str:
        return f"BooleanFunction(n={self.n}, anf={self.anf()})"


def var(i: int, n: int) -> BooleanFunction:
    return BooleanFunction.variable(i, n)


def hamming_distance(f: BooleanFunction, g: BooleanFunction) -> int:
    return (f + g).weight


# ---------------------------------------------------------------------------
# ANF


@dataclass(frozen=True)
class AnfPolynomial:
    n: int
    monomials: frozenset[int]

    @property
    def degree(self) -> int:
        return max((u.bit_count() for u in self.monomials), default=0)

    def evaluate(self, x: int) -> int:
        return sum(1 for u in self.monomials if x & u == u) & 1

    def sorted_monomials(self) -> list[int]:
        # by degree, then variable order (x1 before x2 ...)
        return sorted(self.monomials, key=lambda u: (u.bit_count(), -u))

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        terms = []
        for u in self.sorted_monomials():
            if u == 0:
                terms.append("1")
            else:
                terms.append("*".join(f"x{i}" for i in range(1, self.n + 1) if (u >> (self.n - i)) & 1))
        return "+".join(terms)


def tt_to_anf(f: BooleanFunction) -> AnfPolynomial:
    coeffs = _mobius(f.table)
    return AnfPolynomial(f.n, frozenset(int(u) for u in np.flatnonzero(coeffs)))


def anf_to_tt(p: AnfPolynomial) -> BooleanFunction:
    return BooleanFunction.from_anf(p.n, p.monomials)


def monomial(n: int, *variables: int) -> int:
    u = 0
    for i in variables:
        u |= 1 << (n - i)
    return u


# ---------------------------------------------------------------------------
# affine transforms


def apply_affine(
    f: BooleanFunction, A: BinaryMatrix, b: int = 0, c: int = 0, eps: int = 0
) -> BooleanFunction:
    """h(x) = f(xA + b) + c.x + eps."""
    n = f.n
    if A.nrows != n or A.ncols != n:
        raise ValueError(f"A must be {n}x{n}")
    if not A.is_invertible():
        raise SingularMatrixError("A must be invertible")
    idx = np.arange(1 << n, dtype=np.int64)
    img = A.image_table() ^ b
    return BooleanFunction(n, f.table[img] ^ parity(idx & c) ^ (eps & 1))


def affine_inverse_params(A: BinaryMatrix, b: int, c: int, eps: int):
    """Parameters undoing :func:`apply_affine` with (A, b, c, eps)."""
    Ai = A.inverse()
    b2 = Ai.vecmul(b)
    c2 = Ai.T.vecmul(c)
    eps2 = (eps ^ dot(c, b2)) & 1
    return Ai, b2, c2, eps2

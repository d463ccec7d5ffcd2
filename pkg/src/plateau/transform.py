"""Nonlinear input permutations of plateaued functions.

A function of the shape f = x_i f1 + x_j f2 + x_i x_j alpha + g, with f1, f2, g
and an affine alpha free of x_i and x_j, is moved by the permutation sigma
that mixes (x_i, x_j) through f1, f2 and alpha.  The image F = f o sigma^-1
keeps the plateau order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bitfn import BooleanFunction, check_n, parity
from .spectral import butterfly, is_bent, plateau_order, plateaued_profile, wht


class AlphaNotAffine(ValueError):
    def __init__(self, degree: int):
        self.degree = degree
        super().__init__(f"alpha has degree {degree}; it must be affine")


class NotBijective(ValueError):
    def __init__(self, collision: tuple[int, int] | None = None):
        self.collision = collision
        msg = "map is not a bijection"
        if collision is not None:
            msg += f" (inputs {collision[0]} and {collision[1]} collide)"
        super().__init__(msg)


class NotPlateauedSource(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class VectorialMap:
    """P: F_2^n -> F_2^n stored as a table of output indices."""

    n: int
    table: np.ndarray

    def __post_init__(self):
        check_n(self.n)
        t = np.asarray(self.table, dtype=np.int64)
        if t.shape != (1 << self.n,):
            raise ValueError(f"table must have 2^{self.n} entries")
        if np.any((t < 0) | (t >> self.n != 0)):
            raise ValueError("table entry outside F_2^n")
        t = t.copy()
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @classmethod
    def identity(cls, n: int) -> "VectorialMap":
        return cls(n, np.arange(1 << n))

    @classmethod
    def from_coordinates(cls, coords: Sequence[BooleanFunction]) -> "VectorialMap":
        n = len(coords)
        if any(c.n != n for c in coords):
            raise ValueError("need n coordinate functions on n variables")
        t = np.zeros(1 << n, dtype=np.int64)
        for k, c in enumerate(coords):
            t |= c.table.astype(np.int64) << (n - 1 - k)
        return cls(n, t)

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def coordinate(self, k: int) -> BooleanFunction:
        """sigma_k, 1-based."""
        return BooleanFunction(self.n, ((self.table >> (self.n - k)) & 1).astype(np.uint8))

    @property
    def coordinates(self) -> tuple[BooleanFunction, ...]:
        return tuple(self.coordinate(k) for k in range(1, self.n + 1))

    def component(self, u: int) -> BooleanFunction:
        """u . P(x)."""
        return BooleanFunction(self.n, parity(self.table & u))

    def is_bijective(self) -> bool:
        return np.unique(self.table).size == self.table.size

    def inverse(self) -> "VectorialMap":
        if not self.is_bijective():
            order = np.argsort(self.table, kind="stable")
            dup = np.flatnonzero(np.diff(self.table[order]) == 0)[0]
            raise NotBijective((int(order[dup]), int(order[dup + 1])))
        inv = np.empty_like(self.table)
        inv[self.table] = np.arange(self.table.size)
        return VectorialMap(self.n, inv)

    def then(self, other: "VectorialMap") -> "VectorialMap":
        """x -> other(self(x))."""
        return VectorialMap(self.n, other.table[self.table])

    def __eq__(self, other) -> bool:
        return isinstance(other, VectorialMap) and self.n == other.n and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.n, self.table.tobytes()))


def compose(f: BooleanFunction, P: VectorialMap) -> BooleanFunction:
    """x -> f(P(x)); P need not be bijective."""
    if f.n != P.n:
        raise ValueError(f"dimension mismatch: f on {f.n} variables, map on {P.n}")
    return BooleanFunction(f.n, f.table[P.table])


# ---------------------------------------------------------------------------
# decomposition


def _bit(n: int, i: int) -> int:
    return 1 << (n - i)


@dataclass(frozen=True)
class Form27Decomposition:
    """Parts of f = x_i f1 + x_j f2 + x_i x_j alpha + g, each stored on all n variables."""

    n: int
    i: int
    j: int
    f1: BooleanFunction
    f2: BooleanFunction
    alpha: BooleanFunction
    g: BooleanFunction

    def __post_init__(self):
        if self.i == self.j or not (1 <= self.i <= self.n and 1 <= self.j <= self.n):
            raise ValueError("pivots must be distinct variables")
        for name in ("f1", "f2", "alpha", "g"):
            part = getattr(self, name)
            if part.n != self.n:
                raise ValueError(f"{name} must have {self.n} variables")
            if part.depends_on(self.i) or part.depends_on(self.j):
                raise ValueError(f"{name} depends on a pivot variable")
        if self.alpha.degree > 1:
            raise AlphaNotAffine(self.alpha.degree)

    def reassemble(self) -> BooleanFunction:
        xi, xj = BooleanFunction.variable(self.i, self.n), BooleanFunction.variable(self.j, self.n)
        return xi * self.f1 + xj * self.f2 + xi * xj * self.alpha + self.g


def decompose_form27(f: BooleanFunction, i: int = 1, j: int = 2) -> Form27Decomposition:
    n = f.n
    if i == j:
        raise ValueError("pivots must differ")
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError("pivot out of range")
    bi, bj = _bit(n, i), _bit(n, j)
    base = np.arange(1 << n, dtype=np.int64) & ~(bi | bj)
    t = f.table
    g = t[base]
    f1 = t[base | bi] ^ g
    f2 = t[base | bj] ^ g
    alpha = t[base | bi | bj] ^ f1 ^ f2 ^ g
    a = BooleanFunction(n, alpha)
    if a.degree > 1:
        raise AlphaNotAffine(a.degree)
    return Form27Decomposition(n, i, j, BooleanFunction(n, f1), BooleanFunction(n, f2), a, BooleanFunction(n, g))


# ---------------------------------------------------------------------------
# sigma and tau


def _pivot_map(d: Form27Decomposition) -> VectorialMap:
    # (y_i, y_j) = ((x_i, x_j) + (f1, f2)) N with N = [[1, a+1], [a, 1]]; N is an involution
    n = d.n
    bi, bj = _bit(n, d.i), _bit(n, d.j)
    idx = np.arange(1 << n, dtype=np.int64)
    a = d.alpha.table.astype(np.int64)
    p = ((idx & bi) != 0).astype(np.int64) ^ d.f1.table
    q = ((idx & bj) != 0).astype(np.int64) ^ d.f2.table
    y1 = p ^ (q & a)
    y2 = (p & (a ^ 1)) ^ q
    out = (idx & ~(bi | bj)) | np.where(y1 == 1, bi, 0) | np.where(y2 == 1, bj, 0)
    return VectorialMap(n, out)


def sigma_permutation(d: Form27Decomposition) -> VectorialMap:
    """sigma_i = f1 + x_i + x_j alpha, sigma_j = f2 + x_i (alpha + 1) + x_j, others fixed."""
    n = d.n
    bi, bj = _bit(n, d.i), _bit(n, d.j)
    idx = np.arange(1 << n, dtype=np.int64)
    xi = ((idx & bi) != 0).astype(np.int64)
    xj = ((idx & bj) != 0).astype(np.int64)
    a = d.alpha.table.astype(np.int64)
    s1 = d.f1.table ^ xi ^ (xj & a)
    s2 = d.f2.table ^ (xi & (a ^ 1)) ^ xj
    out = (idx & ~(bi | bj)) | np.where(s1 == 1, bi, 0) | np.where(s2 == 1, bj, 0)
    sigma = VectorialMap(n, out)
    if not sigma.is_bijective():
        raise NotBijective()
    return sigma


def tau_permutation(d: Form27Decomposition) -> VectorialMap:
    """tau(y) = ((y_i, y_j) + (f1, f2)) N on the pivots, others fixed; sigma o tau = id."""
    tau = _pivot_map(d)
    sigma = sigma_permutation(d)
    if not np.array_equal(sigma.table[tau.table], np.arange(1 << d.n)):
        raise AssertionError("sigma o tau is not the identity")
    return tau


def hou_langevin_transform(d: Form27Decomposition) -> BooleanFunction:
    """F = (a+1) f1 f2 + (x_i+1) f1 + (x_i+x_j+a+1) f2 + a (x_i+1) x_j + g."""
    f = d.reassemble()
    if plateau_order(f) is None:
        raise NotPlateauedSource("source function is neither plateaued nor bent")
    xi, xj = BooleanFunction.variable(d.i, d.n), BooleanFunction.variable(d.j, d.n)
    a, f1, f2 = d.alpha, d.f1, d.f2
    return (a + 1) * f1 * f2 + (xi + 1) * f1 + (xi + xj + a + 1) * f2 + a * (xi + 1) * xj + d.g


# ---------------------------------------------------------------------------
# plateau-preserving sets


def _amplitude(f: BooleanFunction) -> int:
    prof = plateaued_profile(f)
    if prof is not None:
        return prof.amplitude
    if is_bent(f):
        return 1 << (f.n // 2)
    raise NotPlateauedSource("f is not plateaued")


def lp_membership(f: BooleanFunction, g: BooleanFunction) -> bool:
    """W_{f+g}(u) in {0, +-amp_f} for every u."""
    amp = _amplitude(f)
    w = np.abs(wht(f + g).values)
    return bool(np.all((w == 0) | (w == amp)))


def span_subset_lp(f: BooleanFunction, sigma: VectorialMap, *, strict: bool = False) -> bool:
    """Test every u . sigma against f.

    Default: W_{f + u.sigma}(0) in {0, +-amp} for all u, which is exactly the
    spectrum of f o sigma^-1.  ``strict`` demands full lp membership of each
    combination (every u and every evaluation point).
    """
    amp = _amplitude(f)
    if f.n != sigma.n:
        raise ValueError("dimension mismatch")
    if strict:
        return all(lp_membership(f, sigma.component(u)) for u in range(1 << f.n))
    # sum_y (-1)^{f(y) + u.sigma(y)}: scatter signs of f onto sigma(y), then transform
    acc = np.zeros(1 << f.n, dtype=np.int64)
    np.add.at(acc, sigma.table, f.signs)
    w = np.abs(butterfly(acc))
    return bool(np.all((w == 0) | (w == amp)))

"""Walsh-Hadamard spectra, plateaued profiles, supports, duals and sequence profiles."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .bitfn import BinaryMatrix, BooleanFunction, SingularMatrixError, bits_to_str, parity


class NotBooleanSpectrum(ValueError):
    """The inverse transform of a spectrum is not a +-1 sequence."""

    def __init__(self, point: int, value: int, n: int):
        self.point = point
        self.value = value  # sum_w W(w)(-1)^{w.x} at the witness point, before scaling by 2^-n
        self.n = n
        super().__init__(
            f"spectrum is not the transform of a Boolean function: "
            f"2^n (-1)^f({bits_to_str(point, n)}) would equal {value}"
        )


class NotBentError(ValueError):
    def __init__(self, point: int | None = None, value: int | None = None):
        self.point = point
        self.value = value
        msg = "function is not bent"
        if point is not None:
            msg += f" (W({point}) = {value})"
        super().__init__(msg)


def butterfly(values) -> np.ndarray:
    """Unnormalised Hadamard transform of an integer vector of length 2^n."""
    a = np.array(values, dtype=np.int64, copy=True)
    if a.size & (a.size - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < a.size:
        v = a.reshape(-1, 2, h)
        lo = v[:, 0, :].copy()
        v[:, 0, :] += v[:, 1, :]
        v[:, 1, :] = lo - v[:, 1, :]
        h <<= 1
    return a


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    n: int
    values: np.ndarray

    def __getitem__(self, u: int) -> int:
        return int(self.values[u])

    def support(self) -> frozenset[int]:
        return frozenset(int(u) for u in np.flatnonzero(self.values))

    def value_counts(self) -> Counter:
        vals, counts = np.unique(self.values, return_counts=True)
        return Counter({int(v): int(c) for v, c in zip(vals, counts)})

    def __eq__(self, other):
        return isinstance(other, WalshSpectrum) and self.n == other.n and np.array_equal(self.values, other.values)


def wht(f: BooleanFunction) -> WalshSpectrum:
    return WalshSpectrum(f.n, butterfly(f.signs))


def inverse_wht(spec: WalshSpectrum | Sequence[int], n: int | None = None) -> BooleanFunction:
    """Recover f from W_f; exact integer arithmetic only."""
    if isinstance(spec, WalshSpectrum):
        n, values = spec.n, spec.values
    else:
        values = np.asarray(spec, dtype=np.int64)
        n = values.size.bit_length() - 1 if n is None else n
    r = butterfly(values)
    scale = 1 << n
    bad = np.flatnonzero(np.abs(r) != scale)
    if bad.size:
        u = int(bad[0])
        raise NotBooleanSpectrum(u, int(r[u]), n)
    return BooleanFunction(n, (r < 0).astype(np.uint8))


@dataclass(frozen=True, eq=False)
class AutocorrelationSpectrum:
    n: int
    values: np.ndarray

    def __getitem__(self, a: int) -> int:
        return int(self.values[a])

    def nonzero_count(self) -> int:
        return int(np.count_nonzero(self.values))


def autocorrelation(f: BooleanFunction) -> AutocorrelationSpectrum:
    """Delta_f(a) = sum_x (-1)^{f(x)+f(x+a)}, via the squared spectrum."""
    w = wht(f).values
    r = butterfly(w * w)
    assert not np.any(r & ((1 << f.n) - 1))
    return AutocorrelationSpectrum(f.n, r >> f.n)


# ---------------------------------------------------------------------------
# plateaued profile


@dataclass(frozen=True)
class PlateauedProfile:
    s: int
    amplitude: int
    count_plus: int
    count_minus: int
    count_zero: int


def _profile_from_spectrum(w: np.ndarray, n: int) -> PlateauedProfile | None:
    absw = np.abs(w)
    nz = absw[absw != 0]
    if nz.size == absw.size:  # bent-like, no zero value
        return None
    amp = int(nz.max())
    if np.any(nz != amp) or amp & (amp - 1):
        return None
    e = amp.bit_length() - 1  # amp = 2^e = 2^{(n+s)/2}
    s = 2 * e - n
    if not 1 <= s < n:
        return None
    return PlateauedProfile(
        s=s,
        amplitude=amp,
        count_plus=int(np.count_nonzero(w == amp)),
        count_minus=int(np.count_nonzero(w == -amp)),
        count_zero=int(np.count_nonzero(w == 0)),
    )


def plateaued_profile(f: BooleanFunction) -> PlateauedProfile | None:
    """s-plateaued profile, or None (bent, affine and non-plateaued functions)."""
    return _profile_from_spectrum(wht(f).values, f.n)


def plateau_order(f: BooleanFunction) -> int | None:
    """s for s-plateaued f, 0 for bent f, None otherwise."""
    if is_bent(f):
        return 0
    p = plateaued_profile(f)
    return None if p is None else p.s


def table1_counts(n: int, s: int, f0: int) -> tuple[int, int, int]:
    """Expected (zero, plus, minus) counts of an s-plateaued spectrum."""
    m = n - s
    sign = -1 if f0 else 1
    half = 1 << (m // 2 - 1) if m >= 2 else 0
    plus = (1 << (m - 1)) + sign * half
    minus = (1 << (m - 1)) - sign * half
    return (1 << n) - (1 << m), plus, minus


def is_bent(f: BooleanFunction) -> bool:
    if f.n % 2:
        return False
    return bool(np.all(np.abs(wht(f).values) == 1 << (f.n // 2)))


def bent_dual(f: BooleanFunction) -> BooleanFunction:
    if f.n % 2:
        raise NotBentError()
    w = wht(f).values
    amp = 1 << (f.n // 2)
    bad = np.flatnonzero(np.abs(w) != amp)
    if bad.size:
        raise NotBentError(int(bad[0]), int(w[bad[0]]))
    return BooleanFunction(f.n, (w < 0).astype(np.uint8))


# ---------------------------------------------------------------------------
# supports


def walsh_support(f: BooleanFunction) -> frozenset[int]:
    return wht(f).support()


@dataclass(frozen=True)
class WalshSupport:
    """An ordered Walsh support omega_0, ..., omega_{2^m - 1} in F_2^n.

    When the order has the form omega_i = v + e_i M with e_0 = 0 and the e_i
    strictly increasing, ``v``, ``E`` and ``M`` record that decomposition.
    Orders produced from arbitrary columns may have none (all three None).
    """

    n: int
    points: tuple[int, ...]
    v: int | None = None
    M: BinaryMatrix | None = None
    E: tuple[int, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        size = len(self.points)
        if size == 0 or size & (size - 1):
            raise ValueError("support size must be a power of two")
        if size > (1 << self.n):
            raise ValueError("support larger than the space")
        if len(set(self.points)) != size:
            raise ValueError("support must not be a multiset")
        if any(p < 0 or p >> self.n for p in self.points):
            raise ValueError("support point outside F_2^n")
        if (self.v is None) != (self.M is None):
            raise ValueError("give both v and M, or neither")
        if self.v is not None:
            E = _decompose(self.points, self.v, self.M)
            if E is None:
                raise ValueError("ordering is not of the form v + e_i M with sorted e_i")
            object.__setattr__(self, "E", E)

    @property
    def dim(self) -> int:
        """log2 of the support size (n - s)."""
        return len(self.points).bit_length() - 1

    @property
    def s(self) -> int:
        return self.n - self.dim

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.points)

    def shifted(self, q: int) -> "WalshSupport":
        if self.v is None:
            return WalshSupport(self.n, tuple(p ^ q for p in self.points))
        return WalshSupport(self.n, tuple(p ^ q for p in self.points), self.v ^ q, self.M)

    def with_canonical_metadata(self) -> "WalshSupport":
        """Attach (v = omega_0, M = I) when that decomposition is valid."""
        if self.v is not None:
            return self
        I = BinaryMatrix.identity(self.n)
        if _decompose(self.points, self.points[0], I) is None:
            return self
        return WalshSupport(self.n, self.points, self.points[0], I)

    def matrix_rows(self) -> list[str]:
        return [bits_to_str(p, self.n) for p in self.points]


def _decompose(points: Sequence[int], v: int, M: BinaryMatrix) -> tuple[int, ...] | None:
    Mi = M.inverse()
    E = tuple(Mi.vecmul(p ^ v) for p in points)
    if E[0] != 0 or any(a >= b for a, b in zip(E, E[1:])):
        return None
    return E


def order_support(S: Iterable[int], v: int, M: BinaryMatrix, n: int | None = None) -> WalshSupport:
    """Order S as omega_i = v + e_i M with E = (S + v) M^{-1} sorted."""
    S = frozenset(S)
    n = M.nrows if n is None else n
    if v not in S:
        raise ValueError(f"v = {bits_to_str(v, n)} is not in the support")
    if not M.is_invertible():
        raise SingularMatrixError("M must be invertible")
    Mi = M.inverse()
    E = sorted(Mi.vecmul(w ^ v) for w in S)
    points = tuple(v ^ M.vecmul(e) for e in E)
    return WalshSupport(n, points, v, M)


def canonical_order(S: Iterable[int], n: int) -> WalshSupport:
    S = frozenset(S)
    return order_support(S, min(S), BinaryMatrix.identity(n), n)


# ---------------------------------------------------------------------------
# duals and sequence profiles


@dataclass(frozen=True)
class DualFunction:
    base: BooleanFunction
    support: WalshSupport


def extract_dual(f: BooleanFunction, support: WalshSupport | None = None) -> DualFunction:
    """Signs of the nonzero spectrum read along the support ordering."""
    w = wht(f).values
    prof = _profile_from_spectrum(w, f.n)
    if prof is None:
        raise ValueError("function is not s-plateaued")
    S = frozenset(int(u) for u in np.flatnonzero(w))
    if support is None:
        support = canonical_order(S, f.n)
    elif support.n != f.n or support.as_set() != S:
        raise ValueError("support does not match the Walsh support of f")
    pts = np.asarray(support.points, dtype=np.int64)
    base = BooleanFunction(support.dim, (w[pts] < 0).astype(np.uint8))
    return DualFunction(base, support)


def sequence_profile_column(support: WalshSupport, u: int) -> BooleanFunction:
    """phi_u: x_i -> u . omega_i on F_2^{n-s}."""
    pts = np.asarray(support.points, dtype=np.int64)
    return BooleanFunction(support.dim, parity(pts & u))


def bent_distance_ok(g: BooleanFunction, phi: BooleanFunction) -> bool:
    m = g.n
    if m % 2:
        raise ValueError("bent distance needs an even number of variables")
    if phi.n != m:
        raise ValueError("variable count mismatch")
    corr = int(np.dot(g.signs, phi.signs))
    return abs(corr) == 1 << (m // 2)

"""Spectral construction of plateaued functions and the generative recipes built on it:
MM plateaued families and bent functions, nontrivial supports from column functions,
C/D-class and vectorial-bent variants, Q-shifted disjoint families and bent concatenation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bitfn import (
    BinaryMatrix,
    BooleanFunction,
    SingularMatrixError,
    bits_to_str,
    gf2_rank,
    parity,
    span,
)
from .classify import is_affine_subspace
from .spectral import (
    NotBentError,
    NotBooleanSpectrum,
    WalshSupport,
    canonical_order,
    inverse_wht,
    is_bent,
    plateaued_profile,
    sequence_profile_column,
    wht,
)


class ConditionError(ValueError):
    """A construction precondition or condition does not hold."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class NotPlateauedError(ConditionError):
    """The prescribed spectrum is not the spectrum of a Boolean function.

    ``point`` is the smallest u at which the dual is not at bent distance
    to phi_u; ``distance`` is d_H(dual, phi_u).
    """

    def __init__(self, point: int, distance: int, n: int, member: int | None = None):
        self.point = point
        self.distance = distance
        self.member = member
        where = "" if member is None else f"member {member}: "
        super().__init__(
            f"{where}dual is not at bent distance to phi_u for u = {bits_to_str(point, n)} "
            f"(distance {distance})",
            witness=point,
        )


class DuplicateRowError(ConditionError):
    def __init__(self, i: int, j: int):
        self.rows = (i, j)
        super().__init__(f"support rows {i} and {j} coincide; a support must not be a multiset", (i, j))


# ---------------------------------------------------------------------------
# the spectral construction


def dual_weights(m: int) -> tuple[int, int]:
    half = 1 << (m // 2 - 1)
    return (1 << (m - 1)) - half, (1 << (m - 1)) + half


@dataclass(frozen=True)
class SpectralSpec:
    support: WalshSupport
    dual: BooleanFunction

    def __post_init__(self):
        m = self.support.dim
        if self.dual.n != m:
            raise ConditionError(f"dual must have {m} variables, got {self.dual.n}")
        if m % 2:
            raise ConditionError("n - s must be even")
        if self.dual.weight not in dual_weights(m):
            # phi_0 = 0, so a wrong weight is a bent-distance failure at u = 0
            raise NotPlateauedError(0, self.dual.weight, self.support.n)

    @property
    def n(self) -> int:
        return self.support.n

    @property
    def s(self) -> int:
        return self.support.s

    @property
    def amplitude(self) -> int:
        return 1 << ((self.n + self.s) // 2)

    def spectrum(self) -> np.ndarray:
        w = np.zeros(1 << self.n, dtype=np.int64)
        w[np.asarray(self.support.points, dtype=np.int64)] = self.amplitude * self.dual.signs
        return w


def build_from_spectrum(spec: SpectralSpec) -> BooleanFunction:
    """Inverse-transform amplitude * (-1)^dual placed along the ordered support."""
    try:
        return inverse_wht(spec.spectrum(), spec.n)
    except NotBooleanSpectrum as exc:
        # value = amplitude * (chi_dual . chi_phi_u)
        corr = exc.value // spec.amplitude
        m = spec.support.dim
        raise NotPlateauedError(exc.point, (1 << (m - 1)) - corr // 2, spec.n) from None


def construct_spectral(support: WalshSupport, dual: BooleanFunction) -> BooleanFunction:
    return build_from_spectrum(SpectralSpec(support, dual))


def bent_distance_to_profile(support: WalshSupport, g: BooleanFunction) -> tuple[int, int] | None:
    """None when g is at bent distance to every phi_u; else (u, d_H(g, phi_u)) for the least bad u.

    Works column by column through the sequence profile, independently of
    any Walsh transform.
    """
    m = support.dim
    if g.n != m:
        raise ValueError(f"g must have {m} variables")
    if m % 2:
        raise ValueError("n - s must be even")
    n = support.n
    target = 1 << (m // 2)
    gs = g.table
    # phi_u for u in a block of low bits, combined with the high-bit part per block
    k = min(n, 10)
    cols = [sequence_profile_column(support, 1 << j).table for j in range(n)]
    low = np.zeros((1 << k, 1 << m), dtype=np.uint8)
    for j in range(k):
        low[1 << j: 2 << j] = low[: 1 << j] ^ cols[j]
    for hi in range(1 << (n - k)):
        base = np.zeros(1 << m, dtype=np.uint8)
        for j in range(k, n):
            if (hi >> (j - k)) & 1:
                base ^= cols[j]
        diff = (low ^ base) ^ gs
        dist = diff.sum(axis=1, dtype=np.int64)
        corr = (1 << m) - 2 * dist
        bad = np.flatnonzero(np.abs(corr) != target)
        if bad.size:
            u = (hi << k) | int(bad[0])
            return u, int(dist[bad[0]])
    return None


def support_from_columns(cols: Sequence[BooleanFunction], v: int | None = None, M: BinaryMatrix | None = None) -> WalshSupport:
    """Rows (col_1(x_i), ..., col_n(x_i)) for x_i in lexicographic order."""
    if not cols:
        raise ValueError("need at least one column")
    m = cols[0].n
    if any(c.n != m for c in cols):
        raise ValueError("all columns must have the same number of variables")
    n = len(cols)
    rows = np.zeros(1 << m, dtype=np.int64)
    for j, c in enumerate(cols):
        rows |= c.table.astype(np.int64) << (n - 1 - j)
    seen: dict[int, int] = {}
    for i, r in enumerate(rows.tolist()):
        if r in seen:
            raise DuplicateRowError(seen[r], i)
        seen[r] = i
    sup = WalshSupport(n, tuple(rows.tolist()), v, M)
    return sup if v is not None else sup.with_canonical_metadata()


def concat_supports(first: Sequence[int], first_bits: int, cols: Sequence[BooleanFunction]) -> list[int]:
    """Rows (first[i], col_1(x_i), ...) as integers."""
    out = np.asarray(first, dtype=np.int64) << len(cols)
    for j, c in enumerate(cols):
        out |= c.table.astype(np.int64) << (len(cols) - 1 - j)
    return out.tolist()


# ---------------------------------------------------------------------------
# Maiorana-McFarland


def _check_perm(psi: Sequence[int], k: int) -> np.ndarray:
    p = np.asarray(psi, dtype=np.int64)
    if p.shape != (1 << k,) or sorted(p.tolist()) != list(range(1 << k)):
        raise ConditionError("psi is not a permutation of F_2^k")
    return p


def mm_bent(psi: Sequence[int], t: BooleanFunction | None, k: int | None = None) -> BooleanFunction:
    """g(x, y) = x . psi(y) + t(y) on 2k variables, x the first k."""
    if k is None:
        k = len(psi).bit_length() - 1
    p = _check_perm(psi, k)
    idx = np.arange(1 << (2 * k), dtype=np.int64)
    x, y = idx >> k, idx & ((1 << k) - 1)
    table = parity(x & p[y])
    if t is not None:
        if t.n != k:
            raise ValueError(f"t must have {k} variables")
        table ^= t.table[y]
    return BooleanFunction(2 * k, table)


def mm_plateaued_family(
    phis: Sequence[Sequence[int]], gs: Sequence[BooleanFunction | None], k: int, s: int
) -> list[BooleanFunction]:
    """f_i(y, x) = phi_i(y) . x + g_i(y) with y in F_2^k (first), x in F_2^s.

    Each phi_i is the table of an injection F_2^k -> F_2^s; the images must be
    pairwise disjoint.  Members are (s - k)-plateaued with amplitude 2^s and
    pairwise disjoint Walsh supports F_2^k x image(phi_i).
    """
    if s <= k:
        raise ConditionError("need s > k")
    if len(gs) != len(phis):
        raise ValueError("one g per phi")
    seen: set[int] = set()
    n = k + s
    idx = np.arange(1 << n, dtype=np.int64)
    y, x = idx >> s, idx & ((1 << s) - 1)
    out = []
    for i, (phi, g) in enumerate(zip(phis, gs)):
        p = np.asarray(phi, dtype=np.int64)
        if p.shape != (1 << k,):
            raise ValueError(f"phi_{i} must have 2^k entries")
        img = set(p.tolist())
        if len(img) != 1 << k:
            raise ConditionError(f"phi_{i} is not injective", i)
        if any(z < 0 or z >> s for z in img):
            raise ValueError(f"phi_{i} leaves F_2^s")
        if img & seen:
            raise ConditionError(f"image of phi_{i} overlaps an earlier image", i)
        seen |= img
        table = parity(p[y] & x)
        if g is not None:
            if g.n != k:
                raise ValueError("g_i must have k variables")
            table ^= g.table[y]
        out.append(BooleanFunction(n, table))
    return out


def _block_diag(M: BinaryMatrix, s: int) -> BinaryMatrix:
    m = M.nrows
    rows = [r << s for r in M.rows] + [1 << (s - 1 - j) for j in range(s)]
    return BinaryMatrix(tuple(rows), m + s)


def affine_block_support(c: int, M: BinaryMatrix, cols: Sequence[BooleanFunction]) -> WalshSupport:
    """(c + E M) wr T_{col_1} wr ... with E = F_2^m in lexicographic order."""
    m = M.nrows
    if not M.is_invertible():
        raise SingularMatrixError("M must be invertible")
    if any(col.n != m for col in cols):
        raise ValueError(f"columns must be functions on F_2^{m}")
    first = (M.image_table() ^ c).tolist()
    s = len(cols)
    rows = concat_supports(first, m, cols)
    if s == 0:
        return WalshSupport(m, tuple(rows), rows[0], M)
    return WalshSupport(m + s, tuple(rows), rows[0], _block_diag(M, s))


def _lift_y(t: BooleanFunction, k: int, name: str) -> BooleanFunction:
    """A function of y in F_2^k viewed on (x, y) in F_2^{2k}; rejects dependence on x."""
    if t.n == k:
        return t.extend(2 * k, range(k + 1, 2 * k + 1))
    if t.n == 2 * k:
        for i in range(1, k + 1):
            if t.depends_on(i):
                raise ConditionError(f"{name} depends on x{i}; it must be a function of y only")
        return t
    raise ValueError(f"{name} must have {k} or {2 * k} variables")


def construct_thm41(
    psi: Sequence[int],
    t: BooleanFunction | None,
    ts: Sequence[BooleanFunction],
    c: int = 0,
    M: BinaryMatrix | None = None,
) -> BooleanFunction:
    """s-plateaued f with support (c + E M) wr T_{t_1} ... wr T_{t_s} and MM dual x.psi(y) + t(y)."""
    k = len(psi).bit_length() - 1
    m = 2 * k
    M = BinaryMatrix.identity(m) if M is None else M
    if M.nrows != m:
        raise ValueError(f"M must be {m}x{m}")
    if not ts:
        raise ConditionError("need at least one extra column (s >= 1)")
    g = mm_bent(psi, t, k)
    cols = [_lift_y(ti, k, f"t_{i + 1}") for i, ti in enumerate(ts)]
    support = affine_block_support(c, M, cols)
    f = construct_spectral(support, g)
    prof = plateaued_profile(f)
    assert prof is not None and prof.s == len(ts)
    return f


# ---------------------------------------------------------------------------
# C and D classes


def subspace_indicator(basis: Sequence[int], m: int) -> BooleanFunction:
    if gf2_rank(basis) != len(basis):
        raise ConditionError("basis vectors are linearly dependent")
    table = np.zeros(1 << m, dtype=np.uint8)
    table[span(list(basis))] = 1
    return BooleanFunction(m, table)


def orthogonal_complement(basis: Sequence[int], m: int) -> list[int]:
    return [a for a in range(1 << m) if all((a & b).bit_count() % 2 == 0 for b in basis)]


def construct_thm42(
    variant: str,
    psi: Sequence[int],
    *,
    E1: Sequence[int] = (),
    E2: Sequence[int] = (),
    L: Sequence[int] = (),
    c: int = 0,
    M: BinaryMatrix | None = None,
) -> BooleanFunction:
    """Semi-bent f with support (c + E M) wr T_mu and dual x.psi(y) on F_2^{2k}.

    variant "D": mu(x, y) = 1_{E1}(x) 1_{E2}(y), requires psi(E2) = E1^perp.
    variant "C": mu(x, y) = 1_L(x), requires psi^{-1}(a + L^perp) affine for all a.
    Subspaces are given by bases of F_2^k.
    """
    k = len(psi).bit_length() - 1
    p = _check_perm(psi, k)
    m = 2 * k
    variant = variant.upper()
    if variant == "D":
        span2 = set(span(list(E2))) if gf2_rank(E2) == len(E2) else None
        if span2 is None or gf2_rank(E1) != len(E1):
            raise ConditionError("E1 and E2 must be given by independent bases")
        image = {int(p[y]) for y in span2}
        perp = set(orthogonal_complement(E1, k))
        if image != perp:
            raise ConditionError("psi(E2) differs from E1^perp", sorted(image ^ perp))
        ind1, ind2 = subspace_indicator(E1, k), subspace_indicator(E2, k)
        mu = ind1.extend(m, range(1, k + 1)) * ind2.extend(m, range(k + 1, m + 1))
    elif variant == "C":
        if gf2_rank(L) != len(L):
            raise ConditionError("L must be given by an independent basis")
        perp = orthogonal_complement(L, k)
        inv = np.empty_like(p)
        inv[p] = np.arange(1 << k)
        for a in range(1 << k):
            pre = {int(inv[a ^ w]) for w in perp}
            if not is_affine_subspace(pre):
                raise ConditionError(f"psi^-1(a + L^perp) is not affine for a = {bits_to_str(a, k)}", a)
        mu = subspace_indicator(L, k).extend(m, range(1, k + 1))
    else:
        raise ValueError("variant must be 'C' or 'D'")
    M = BinaryMatrix.identity(m) if M is None else M
    g = mm_bent(p.tolist(), None, k)
    f = construct_spectral(affine_block_support(c, M, [mu]), g)
    prof = plateaued_profile(f)
    assert prof is not None and prof.s == 1
    return f


# ---------------------------------------------------------------------------
# vectorial bent


_IRREDUCIBLE = {1: 0b11, 2: 0b111, 3: 0b1011, 4: 0b10011, 5: 0b100101, 6: 0b1000011,
                7: 0b10000011, 8: 0b100011011, 9: 0b1000010001, 10: 0b10000001001,
                11: 0b100000000101, 12: 0b1000001010011}


def gf_mul(a: int, b: int, k: int) -> int:
    poly = _IRREDUCIBLE[k]
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> k:
            a ^= poly
    return out


@dataclass(frozen=True)
class VectorialBent:
    m: int
    components: tuple[BooleanFunction, ...]

    def __post_init__(self):
        lam = len(self.components)
        if self.m % 2 or lam == 0 or lam > self.m // 2:
            raise ConditionError("need m even and 1 <= lambda <= m/2")
        if any(h.n != self.m for h in self.components):
            raise ValueError("components must have m variables")
        for a in range(1, 1 << lam):
            comb = BooleanFunction.zero(self.m)
            for j in range(lam):
                if (a >> (lam - 1 - j)) & 1:
                    comb = comb + self.components[j]
            if not is_bent(comb):
                raise ConditionError(f"component combination {bits_to_str(a, lam)} is not bent", a)

    @classmethod
    def mm_field(cls, k: int, lam: int) -> "VectorialBent":
        """h_j(x, y) = x . (alpha^{j-1} y) in GF(2^k); every nonzero combination is MM bent."""
        comps = []
        for j in range(lam):
            psi = [gf_mul(1 << j, y, k) for y in range(1 << k)]
            comps.append(mm_bent(psi, None, k))
        return cls(2 * k, tuple(comps))


def construct_thm43(
    H: VectorialBent,
    i: int,
    affine_cols: Sequence[BooleanFunction],
    columns: Sequence[int],
    c: int = 0,
    M: BinaryMatrix | None = None,
) -> BooleanFunction:
    """s-plateaued f with support (c + E M) wr T_{t_1..t_m} wr T_{h_j : j in columns} and dual h_i.

    Component indices are 1-based; ``columns`` must be distinct and exclude i.
    """
    lam = len(H.components)
    if not 1 <= i <= lam:
        raise ConditionError(f"dual index {i} out of range 1..{lam}")
    if len(set(columns)) != len(columns):
        raise ConditionError("column components must be distinct")
    if i in columns:
        raise ConditionError("a column component equals the dual component", i)
    if any(not 1 <= j <= lam for j in columns):
        raise ConditionError("column component index out of range")
    for j, t in enumerate(affine_cols):
        if t.n != H.m or not t.is_affine():
            raise ConditionError(f"t_{j + 1} must be affine on F_2^{H.m}", j)
    if not affine_cols and not columns:
        raise ConditionError("need s >= 1 extra columns")
    M = BinaryMatrix.identity(H.m) if M is None else M
    cols = list(affine_cols) + [H.components[j - 1] for j in columns]
    f = construct_spectral(affine_block_support(c, M, cols), H.components[i - 1])
    prof = plateaued_profile(f)
    assert prof is not None and prof.s == len(cols)
    return f


# ---------------------------------------------------------------------------
# disjoint families and concatenation


def q_partition(n: int, s: int) -> list[int]:
    """Vectors supported on the last s coordinates, in lexicographic order."""
    if not 1 <= s < n:
        raise ValueError("need 1 <= s < n")
    return list(range(1 << s))


@dataclass(frozen=True)
class PlateauedFamily:
    n: int
    s: int
    members: tuple[BooleanFunction, ...]
    shifts: tuple[int, ...]
    base_support: WalshSupport

    def supports(self) -> list[frozenset[int]]:
        return [self.base_support.shifted(q).as_set() for q in self.shifts]


def check_partition(supports: Sequence[frozenset[int]], n: int) -> None:
    total = sum(len(S) for S in supports)
    union = frozenset().union(*supports)
    if total != len(union) or len(union) != 1 << n:
        raise ConditionError("shifted supports do not partition F_2^n")


def disjoint_family(base: WalshSupport, duals: Sequence[BooleanFunction]) -> PlateauedFamily:
    """Members with supports base + q, q in Q, and the given duals."""
    n, s = base.n, base.s
    if len(duals) != 1 << s:
        raise ConditionError(f"need 2^s = {1 << s} duals, got {len(duals)}")
    head = {p >> s for p in base.points}
    if len(head) != len(base):
        raise ConditionError("first n - s coordinates of the base support must be distinct")
    Q = q_partition(n, s)
    supports = [base.shifted(q) for q in Q]
    check_partition([S.as_set() for S in supports], n)
    members = []
    for idx, (S, g) in enumerate(zip(supports, duals)):
        try:
            members.append(construct_spectral(S, g))
        except NotPlateauedError as exc:
            raise NotPlateauedError(exc.point, exc.distance, n, member=idx) from None
    return PlateauedFamily(n, s, tuple(members), tuple(Q), base)


def concat_bent(family: PlateauedFamily | Sequence[BooleanFunction]) -> BooleanFunction:
    """Concatenate member truth tables, member i on the coset with high bits i; result must be bent."""
    members = family.members if isinstance(family, PlateauedFamily) else tuple(family)
    if not members:
        raise ValueError("empty family")
    n = members[0].n
    s = len(members).bit_length() - 1
    if len(members) != 1 << s or any(f.n != n for f in members):
        raise ConditionError("family must have 2^s members on the same space")
    f = BooleanFunction(n + s, np.concatenate([g.table for g in members]))
    w = wht(f).values
    if f.n % 2:
        raise NotBentError()
    bad = np.flatnonzero(np.abs(w) != 1 << (f.n // 2))
    if bad.size:
        raise NotBentError(int(bad[0]), int(w[bad[0]]))
    return f


# ---------------------------------------------------------------------------
# dual search


EXHAUSTIVE_DUAL_VARS = 4


@dataclass(frozen=True)
class DualSearchResult:
    count: int
    candidates: int
    exhaustive: bool
    duals: tuple[BooleanFunction, ...]


def _profile_signs(support: WalshSupport) -> np.ndarray:
    """(2^m, 2^n) matrix of (-1)^{u . omega_i}."""
    pts = np.asarray(support.points, dtype=np.int64)
    u = np.arange(1 << support.n, dtype=np.int64)
    return 1 - 2 * parity(pts[:, None] & u[None, :]).astype(np.int8)


def _valid_duals(tables: np.ndarray, profile: np.ndarray, m: int) -> np.ndarray:
    signs = 1 - 2 * tables.astype(np.int32)
    corr = signs @ profile.astype(np.int32)
    return np.all(np.abs(corr) == 1 << (m // 2), axis=1)


def search_duals(
    support: WalshSupport,
    *,
    samples: int | None = None,
    seed: int = 0,
    keep: bool = True,
    chunk: int = 1 << 12,
) -> DualSearchResult:
    """Count duals g on F_2^{n-s} at bent distance to every phi_u of the support.

    Exhaustive over all functions of the two admissible weights when n - s <= 4;
    otherwise ``samples`` random candidates of admissible weight are tested.
    """
    m = support.dim
    if m % 2:
        raise ConditionError("n - s must be even")
    size = 1 << m
    profile = _profile_signs(support)
    weights = dual_weights(m)
    found: list[np.ndarray] = []
    count = 0
    if m <= EXHAUSTIVE_DUAL_VARS:
        bit = np.arange(size - 1, -1, -1, dtype=np.int64)
        total = 0
        for start in range(0, 1 << size, chunk):
            idx = np.arange(start, min(start + chunk, 1 << size), dtype=np.int64)
            tables = ((idx[:, None] >> bit[None, :]) & 1).astype(np.uint8)
            w = tables.sum(axis=1)
            tables = tables[(w == weights[0]) | (w == weights[1])]
            total += len(tables)
            ok = _valid_duals(tables, profile, m)
            count += int(ok.sum())
            if keep:
                found.extend(tables[ok])
        exhaustive = True
    else:
        if samples is None:
            raise ConditionError(
                f"exhaustive search over 2^{size} functions is infeasible; give a sample budget"
            )
        rng = np.random.default_rng(seed)
        total = 0
        for start in range(0, samples, chunk):
            k = min(chunk, samples - start)
            tables = np.zeros((k, size), dtype=np.uint8)
            wt = rng.choice(weights, size=k)
            for r in range(k):
                tables[r, rng.choice(size, size=wt[r], replace=False)] = 1
            total += k
            ok = _valid_duals(tables, profile, m)
            count += int(ok.sum())
            if keep:
                found.extend(tables[ok])
        exhaustive = False
    duals = tuple(BooleanFunction(m, t) for t in found)
    return DualSearchResult(count, total, exhaustive, duals)


def family_from_members(members: Sequence[BooleanFunction]) -> PlateauedFamily:
    """Recover a family from its members; supports must partition F_2^n."""
    if not members:
        raise ConditionError("empty family")
    n = members[0].n
    if any(f.n != n for f in members):
        raise ConditionError("members have different numbers of variables")
    profs = [plateaued_profile(f) for f in members]
    bad = [i for i, p in enumerate(profs) if p is None]
    if bad:
        raise ConditionError(f"member {bad[0]} is not plateaued", bad[0])
    s = profs[0].s
    if any(p.s != s for p in profs) or len(members) != 1 << s:
        raise ConditionError(f"need 2^s members of one plateau order s, got {len(members)}")
    supports = [wht(f).support() for f in members]
    check_partition(supports, n)
    base = canonical_order(supports[0], n)
    shifts = []
    for S in supports:
        q = next((q for q in sorted(base.v ^ z for z in S) if frozenset(w ^ q for w in supports[0]) == S), None)
        if q is None:
            shifts = []  # supports are not translates of one another
            break
        shifts.append(q)
    return PlateauedFamily(n, s, tuple(members), tuple(shifts), base)

"""Trivial/nontrivial classification, linear structures, EA invariants and small-n
EA-equivalence search through Walsh supports and duals."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .bitfn import (
    BinaryMatrix,
    BooleanFunction,
    apply_affine,
    bits_to_str,
    complete_basis,
    dot,
    gf2_rank,
    span,
    span_basis,
)
from .spectral import autocorrelation, butterfly, canonical_order, plateaued_profile, wht


class BudgetExceeded(RuntimeError):
    """A search ran out of budget before reaching a definitive answer."""

    def __init__(self, budget: int):
        self.budget = budget
        super().__init__(f"search budget of {budget} extension attempts exceeded")


# ---------------------------------------------------------------------------
# supports as sets


def affine_decomposition(S: Iterable[int]) -> tuple[int, list[int]] | None:
    """(offset, basis) if S is an affine subspace, else None."""
    S = frozenset(S)
    if not S:
        raise ValueError("empty set")
    v = min(S)
    basis = span_basis(sorted(w ^ v for w in S))
    if len(S) != 1 << len(basis):
        return None
    return v, basis


def is_affine_subspace(S: Iterable[int]) -> bool:
    return affine_decomposition(S) is not None


def support_rank(S: Iterable[int]) -> int:
    """Maximum number of linearly independent elements of S + v, v in S."""
    S = frozenset(S)
    if not S:
        raise ValueError("empty set")
    v = min(S)
    return gf2_rank(w ^ v for w in S)


@dataclass(frozen=True)
class PlateauedClass:
    kind: str  # "not-plateaued" | "trivial" | "nontrivial"
    s: int | None = None

    def __str__(self):
        return self.kind if self.s is None else f"{self.kind}({self.s})"


def classify_plateaued(f: BooleanFunction) -> PlateauedClass:
    prof = plateaued_profile(f)
    if prof is None:
        return PlateauedClass("not-plateaued")
    S = wht(f).support()
    return PlateauedClass("trivial" if is_affine_subspace(S) else "nontrivial", prof.s)


def autocorr_support_size(f: BooleanFunction) -> int:
    return autocorrelation(f).nonzero_count()


def is_partially_bent(f: BooleanFunction) -> bool:
    return len(wht(f).support()) * autocorr_support_size(f) == 1 << f.n


@dataclass(frozen=True)
class LinearStructureSpace:
    n: int
    basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def elements(self) -> list[int]:
        return sorted(span(list(self.basis)))


def linear_structures(f: BooleanFunction) -> LinearStructureSpace:
    """{a : f(x) + f(x + a) constant}, read off |Delta_f(a)| = 2^n."""
    d = autocorrelation(f).values
    lam = [int(a) for a in np.flatnonzero(np.abs(d) == 1 << f.n)]
    basis = span_basis(lam)
    assert len(lam) == 1 << len(basis), "linear structures must form a subspace"
    return LinearStructureSpace(f.n, tuple(basis))


# ---------------------------------------------------------------------------
# fingerprints


def _multiset(values: np.ndarray) -> tuple[tuple[int, int], ...]:
    vals, counts = np.unique(values, return_counts=True)
    return tuple((int(v), int(c)) for v, c in zip(vals, counts))


@dataclass(frozen=True)
class EaFingerprint:
    n: int
    algebraic_degree: int  # degrees 0 and 1 are merged into 1
    walsh_abs_multiset: tuple[tuple[int, int], ...]
    abs_autocorr_multiset: tuple[tuple[int, int], ...]
    support_rank: int
    lambda_dim: int
    is_trivial: bool
    is_partially_bent: bool

    def differences(self, other: "EaFingerprint") -> list[str]:
        a, b = asdict(self), asdict(other)
        return [k for k in a if a[k] != b[k]]

    def to_json(self) -> dict:
        d = asdict(self)
        d["walsh_abs_multiset"] = {str(v): c for v, c in self.walsh_abs_multiset}
        d["abs_autocorr_multiset"] = {str(v): c for v, c in self.abs_autocorr_multiset}
        return d


def ea_fingerprint(f: BooleanFunction) -> EaFingerprint:
    w = wht(f).values
    S = frozenset(int(u) for u in np.flatnonzero(w))
    d = autocorrelation(f).values
    return EaFingerprint(
        n=f.n,
        algebraic_degree=max(f.degree, 1),
        walsh_abs_multiset=_multiset(np.abs(w)),
        abs_autocorr_multiset=_multiset(np.abs(d)),
        support_rank=support_rank(S),
        lambda_dim=linear_structures(f).dim,
        is_trivial=is_affine_subspace(S),
        is_partially_bent=len(S) * int(np.count_nonzero(d)) == 1 << f.n,
    )


# ---------------------------------------------------------------------------
# support relations S_h = c + S_f A^T


@dataclass(frozen=True)
class SupportRelation:
    A: BinaryMatrix
    c: int

    def apply(self, S: Iterable[int]) -> frozenset[int]:
        At = self.A.T
        return frozenset(self.c ^ At.vecmul(w) for w in S)


@dataclass(frozen=True)
class AffineWitness:
    """h(x) = f(xA + b) + c.x + eps."""

    A: BinaryMatrix
    b: int
    c: int
    eps: int

    def to_json(self) -> dict:
        n = self.A.nrows
        return {
            "A": self.A.to_strings(),
            "b": bits_to_str(self.b, n),
            "c": bits_to_str(self.c, n),
            "eps": self.eps,
        }


class _AffineSystem:
    """Incremental GF(2) system  w.b + eps = d  in the unknown (b, eps)."""

    __slots__ = ("rows",)

    def __init__(self, rows=None):
        self.rows: dict[int, tuple[int, int]] = {} if rows is None else rows

    def copy(self) -> "_AffineSystem":
        return _AffineSystem(dict(self.rows))

    def add(self, w: int, d: int) -> bool:
        row, rhs = (w << 1) | 1, d
        while row:
            lead = row.bit_length() - 1
            piv = self.rows.get(lead)
            if piv is None:
                self.rows[lead] = (row, rhs)
                return True
            row ^= piv[0]
            rhs ^= piv[1]
        return rhs == 0

    def solution(self) -> tuple[int, int]:
        x = 0
        for lead in sorted(self.rows):
            row, rhs = self.rows[lead]
            bit = rhs ^ dot(row & ~(1 << lead), x)
            x |= bit << lead
        return x >> 1, x & 1


def _relation_search(
    wf: np.ndarray,
    wh: np.ndarray,
    n: int,
    *,
    use_duals: bool,
    budget: int | None,
) -> Iterator[tuple[BinaryMatrix, int, int, int]]:
    """Enumerate (N, c, b, eps) with S_h = c + S_f N matching |W| pointwise.

    With ``use_duals`` the sign pattern must also satisfy
    sign_h(c + wN) = sign_f(w) + w.b + eps on S_f, which is checked
    incrementally and prunes the search.  Frame images are tried in
    increasing order, so the enumeration order is deterministic.
    """
    Sf = [int(u) for u in np.flatnonzero(wf)]
    Sh = [int(u) for u in np.flatnonzero(wh)]
    if len(Sf) != len(Sh):
        return
    Sh_set = set(Sh)
    absf, absh = np.abs(wf), np.abs(wh)
    negf, negh = wf < 0, wh < 0

    v = Sf[0]
    Ef = sorted(w ^ v for w in Sf)
    frame = span_basis(Ef)
    m = len(frame)
    if gf2_rank(z ^ Sh[0] for z in Sh) != m:
        return
    coef = {x: i for i, x in enumerate(span(frame))}
    levels: list[list[tuple[int, list[int]]]] = [[] for _ in range(m)]
    for e in Ef:
        if e == 0:
            continue
        c = coef[e]
        used = [j for j in range(m) if (c >> (m - 1 - j)) & 1]
        levels[used[-1]].append((e, used))

    nodes = 0
    dom_basis = complete_basis(frame, n)

    def finish(vp: int, ys: list[int], system: _AffineSystem):
        img_basis = complete_basis(ys, n)
        N = BinaryMatrix(tuple(dom_basis), n).inverse() @ BinaryMatrix(tuple(img_basis), n)
        c = vp ^ N.vecmul(v)
        b, eps = system.solution() if use_duals else (0, 0)
        return N, c, b, eps

    def extend(vp: int, ys: list[int], echelon: list[int], system: _AffineSystem):
        nonlocal nodes
        j = len(ys)
        if j == m:
            yield finish(vp, ys, system)
            return
        for z in Sh:
            y = z ^ vp
            if y == 0:
                continue
            r = y
            for bvec in echelon:
                r = min(r, r ^ bvec)
            if r == 0:
                continue
            nodes += 1
            if budget is not None and nodes > budget:
                raise BudgetExceeded(budget)
            ys2 = ys + [y]
            sys2 = system.copy() if use_duals else system
            ok = True
            for e, used in levels[j]:
                img = 0
                for k in used:
                    img ^= ys2[k]
                zz = vp ^ img
                w = v ^ e
                if zz not in Sh_set or absh[zz] != absf[w]:
                    ok = False
                    break
                if use_duals and not sys2.add(w, int(negf[w] ^ negh[zz])):
                    ok = False
                    break
            if ok:
                yield from extend(vp, ys2, sorted(echelon + [r], reverse=True), sys2)

    for vp in Sh:
        if absh[vp] != absf[v]:
            continue
        system = _AffineSystem()
        if use_duals:
            system.add(v, int(negf[v] ^ negh[vp]))
        yield from extend(vp, [], [], system)


def find_support_relation(
    S_f: Iterable[int], S_h: Iterable[int], n: int, budget: int | None = 1_000_000
) -> SupportRelation | None:
    """A witness (A, c) of S_h = c + S_f A^T, or None if none exists.

    Raises :class:`BudgetExceeded` when the search stops before exhausting
    the candidates; a None result is always definitive.
    """
    S_f, S_h = frozenset(S_f), frozenset(S_h)
    if len(S_f) != len(S_h):
        return None
    if support_rank(S_f) != support_rank(S_h):
        return None
    wf = np.zeros(1 << n, dtype=np.int64)
    wh = np.zeros(1 << n, dtype=np.int64)
    wf[list(S_f)] = 1
    wh[list(S_h)] = 1
    for N, c, _, _ in _relation_search(wf, wh, n, use_duals=False, budget=budget):
        return SupportRelation(N.T, c)
    return None


def check_dual_relation(
    f: BooleanFunction, h: BooleanFunction, rel: SupportRelation
) -> tuple[int, int] | None:
    """(b, eps) with h*(z_i) = f*(w_i) + w_i.b + eps along z_i = c + w_i A^T, if any."""
    n = f.n
    wf, wh = wht(f).values, wht(h).values
    S_f = frozenset(int(u) for u in np.flatnonzero(wf))
    S_h = frozenset(int(u) for u in np.flatnonzero(wh))
    if rel.apply(S_f) != S_h:
        raise ValueError("invalid support relation")
    order = canonical_order(S_f, n)
    At = rel.A.T
    d = np.zeros(1 << n, dtype=np.int64)
    for w in order.points:
        z = rel.c ^ At.vecmul(w)
        if abs(wf[w]) != abs(wh[z]):
            return None
        d[w] = 1 if (wf[w] < 0) == (wh[z] < 0) else -1
    # sum_i (-1)^{d_i + w_i.b} for every b at once
    corr = butterfly(d)
    hits = np.flatnonzero(np.abs(corr) == len(order))
    if hits.size == 0:
        return None
    b = int(hits[0])
    return b, int(corr[b] < 0)


# ---------------------------------------------------------------------------
# equivalence verdicts


@dataclass(frozen=True)
class EquivalenceVerdict:
    status: str  # "equivalent" | "inequivalent" | "inconclusive"
    witness: AffineWitness | None = None
    reason: str | None = None
    fingerprints: tuple[EaFingerprint, EaFingerprint] | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        out: dict = {"status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.reason is not None:
            out["reason"] = self.reason
        if self.fingerprints is not None:
            out["fingerprints"] = [fp.to_json() for fp in self.fingerprints]
        return out


def ea_equivalent_small(
    f: BooleanFunction, h: BooleanFunction, budget: int | None = 2_000_000
) -> EquivalenceVerdict:
    """Fingerprint filter, then support-relation search with dual-relation pruning.

    Equivalent verdicts always carry a witness that was re-applied and
    compared table-for-table.  Inequivalent verdicts come either from an
    invariant mismatch or from an exhausted search.
    """
    if f.n != h.n:
        return EquivalenceVerdict("inequivalent", reason="different numbers of variables")
    fp_f, fp_h = ea_fingerprint(f), ea_fingerprint(h)
    fps = (fp_f, fp_h)
    diff = fp_f.differences(fp_h)
    if diff:
        return EquivalenceVerdict("inequivalent", reason="invariants differ: " + ", ".join(diff), fingerprints=fps)
    wf, wh = wht(f).values, wht(h).values
    try:
        for N, c, b, eps in _relation_search(wf, wh, f.n, use_duals=True, budget=budget):
            wit = AffineWitness(N.T, b, c, eps)
            if apply_affine(f, wit.A, wit.b, wit.c, wit.eps) == h:
                return EquivalenceVerdict("equivalent", witness=wit, fingerprints=fps)
    except BudgetExceeded as exc:
        return EquivalenceVerdict("inconclusive", reason=str(exc), fingerprints=fps)
    return EquivalenceVerdict(
        "inequivalent",
        reason="exhaustive search: no support relation admits an affine dual relation",
        fingerprints=fps,
    )

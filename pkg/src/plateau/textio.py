"""Text formats: functions (``anf:`` / ``tt:``), support files, permutation files."""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .bitfn import MAX_VARS, BinaryMatrix, BooleanFunction, bits_to_str
from .spectral import WalshSupport


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.position = position
        self.text = text
        where = "" if position is None else f" at position {position}"
        super().__init__(f"{message}{where}")


# ---------------------------------------------------------------------------
# functions

_VAR = re.compile(r"x(\d+)")


def _parse_anf_body(body: str, offset: int, n: int | None) -> BooleanFunction:
    monos: list[tuple[int, ...]] = []
    pos = offset
    maxvar = 0
    for term in body.split("+"):
        t = term.strip()
        if not t:
            raise ParseError("empty term", pos)
        if t in ("0", "1"):
            if t == "1":
                monos.append(())
        else:
            vs = []
            fpos = pos
            for factor in term.split("*"):
                fs = factor.strip()
                m = _VAR.fullmatch(fs)
                if m is None:
                    raise ParseError(f"bad factor {fs!r}", fpos + len(factor) - len(factor.lstrip()))
                i = int(m.group(1))
                if i < 1:
                    raise ParseError("variables are numbered from 1", fpos)
                vs.append(i)
                fpos += len(factor) + 1
            maxvar = max(maxvar, *vs)
            monos.append(tuple(sorted(set(vs))))
        pos += len(term) + 1
    if n is None:
        n = max(maxvar, 1)
    elif maxvar > n:
        raise ParseError(f"variable x{maxvar} exceeds n = {n}", offset)
    if n > MAX_VARS:
        raise ParseError(f"n = {n} exceeds the limit of {MAX_VARS}", offset)
    exps = []
    for vs in monos:
        e = 0
        for i in vs:
            e |= 1 << (n - i)
        exps.append(e)
    # repeated monomials cancel
    seen: dict[int, int] = {}
    for e in exps:
        seen[e] = seen.get(e, 0) ^ 1
    return BooleanFunction.from_anf(n, [e for e, odd in seen.items() if odd])


def _parse_tt(body: str, offset: int) -> BooleanFunction:
    head, sep, digits = body.partition(":")
    if not sep or not head.strip().isdigit():
        raise ParseError("expected tt:<n>:<hex>", offset)
    n = int(head)
    if not 1 <= n <= MAX_VARS:
        raise ParseError(f"n = {n} outside 1..{MAX_VARS}", offset)
    start = offset + len(head) + 1
    digits = digits.strip()
    need = max(1, (1 << n) // 4)
    if len(digits) != need:
        raise ParseError(f"expected {need} hex digits for n = {n}, got {len(digits)}", start)
    bad = re.search(r"[^0-9a-fA-F]", digits)
    if bad:
        raise ParseError(f"bad hex digit {bad.group()!r}", start + bad.start())
    raw = np.frombuffer(bytes.fromhex(digits if len(digits) % 2 == 0 else digits + "0"), dtype=np.uint8)
    bits = np.unpackbits(raw)[: 1 << n]
    if (1 << n) < 4 and int(digits, 16) & ((1 << (4 - (1 << n))) - 1):
        raise ParseError("padding bits must be zero", start)
    return BooleanFunction(n, bits)


def parse_function(text: str, n: int | None = None) -> BooleanFunction:
    """Parse ``anf:[n:]x1*x2+x3+1`` or ``tt:n:HEX``."""
    s = text.strip()
    if s.startswith("anf:"):
        body, off = s[4:], 4
        m = re.match(r"(\d+):", body)
        if m:
            if n is not None and int(m.group(1)) != n:
                raise ParseError(f"expected {n} variables, got {m.group(1)}", 4)
            n = int(m.group(1))
            body, off = body[m.end():], off + m.end()
        return _parse_anf_body(body, off, n)
    if s.startswith("tt:"):
        f = _parse_tt(s[3:], 3)
        if n is not None and f.n != n:
            raise ParseError(f"expected {n} variables, got {f.n}", 3)
        return f
    raise ParseError("function must start with 'anf:' or 'tt:'", 0)


def format_anf(f: BooleanFunction) -> str:
    return f"anf:{f.n}:{f.anf()}"


def format_tt(f: BooleanFunction) -> str:
    bits = f.table
    if bits.size < 4:
        bits = np.concatenate([bits, np.zeros(4 - bits.size, dtype=np.uint8)])
    packed = np.packbits(bits).tobytes().hex().upper()
    return f"tt:{f.n}:{packed[: bits.size // 4]}"


def format_function(f: BooleanFunction) -> dict[str, str]:
    return {"anf": format_anf(f), "tt": format_tt(f)}


# ---------------------------------------------------------------------------
# supports


def _binary(s: str, n: int, line: int) -> int:
    s = s.strip()
    if len(s) != n or set(s) - {"0", "1"}:
        raise ParseError(f"line {line}: expected {n} binary digits, got {s!r}")
    return int(s, 2)


def parse_support(text: str) -> WalshSupport:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty support file")
    head = lines[0].split()
    if len(head) != 2 or not all(h.isdigit() for h in head):
        raise ParseError("first line must be 'n s'")
    n, s = map(int, head)
    if not 1 <= n <= MAX_VARS or not 0 <= s < n:
        raise ParseError(f"bad dimensions n = {n}, s = {s}")
    rest = lines[1:]
    v = M = None
    if rest and rest[0].startswith("v="):
        m = re.fullmatch(r"v=([01]+)\s+M=([01]+)", rest[0])
        if m is None:
            raise ParseError("decomposition line must read 'v=<bits> M=<n*n bits>'")
        v = _binary(m.group(1), n, 2)
        mb = m.group(2)
        if len(mb) != n * n:
            raise ParseError(f"M needs {n * n} bits")
        M = BinaryMatrix.from_strings([mb[k * n:(k + 1) * n] for k in range(n)])
        rest = rest[1:]
    if len(rest) != 1 << (n - s):
        raise ParseError(f"expected 2^(n-s) = {1 << (n - s)} support rows, got {len(rest)}")
    pts = tuple(_binary(r, n, k + 2) for k, r in enumerate(rest))
    try:
        sup = WalshSupport(n, pts, v, M)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return sup if v is not None else sup.with_canonical_metadata()


def format_support(sup: WalshSupport, with_decomposition: bool = False) -> str:
    lines = [f"{sup.n} {sup.s}"]
    if with_decomposition and sup.v is not None:
        lines.append(f"v={bits_to_str(sup.v, sup.n)} M={''.join(sup.M.to_strings())}")
    lines += sup.matrix_rows()
    return "\n".join(lines) + "\n"


def read_support(path: str | Path) -> WalshSupport:
    return parse_support(Path(path).read_text())


# ---------------------------------------------------------------------------
# permutations and bases


def parse_permutation(text: str) -> list[int]:
    vals = []
    for k, ln in enumerate(text.split(), start=1):
        if not ln.isdigit():
            raise ParseError(f"line {k}: expected an integer, got {ln!r}")
        vals.append(int(ln))
    size = len(vals)
    if size == 0 or size & (size - 1):
        raise ParseError("permutation length must be a power of two")
    if sorted(vals) != list(range(size)):
        raise ParseError("entries do not form a permutation")
    return vals


def parse_basis(text: str, n: int) -> list[int]:
    """Comma-separated binary vectors; empty text is the zero subspace."""
    text = text.strip()
    if not text:
        return []
    return [_binary(t, n, 1) for t in text.split(",")]


def parse_vector(text: str, n: int) -> int:
    return _binary(text, n, 1)


def parse_matrix(text: str, n: int) -> BinaryMatrix:
    """Row-major n*n bits, rows optionally separated by commas."""
    bits = text.replace(",", "").strip()
    if len(bits) != n * n or set(bits) - {"0", "1"}:
        raise ParseError(f"matrix needs {n * n} binary digits")
    return BinaryMatrix.from_strings([bits[k * n:(k + 1) * n] for k in range(n)])

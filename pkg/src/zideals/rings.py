"""Finite rings as dense Cayley tables over element indices.

Constructors cover the catalog shapes: Z_m, direct products, full and
upper-triangular matrix rings, and 2x2 generalized triangular rings with
a cyclic bimodule.  All tables are uint16 and immutable; derived data
(ideal lattices, annihilator caches) memoizes on the ring instance.
"""

from __future__ import annotations

import math
import os
import re
import time
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import BimoduleError, SizeCapError, SpecParseError
from .reports import FAIL, PASS, VerificationReport, element_witness

DEFAULT_SIZE_CAP = 4096
SIZE_CAP_ENV = "ZIDEALS_SIZE_CAP"
_HARD_CAP = 65535  # index tables are uint16


def size_cap(override: int | None = None) -> int:
    if override is not None:
        cap = int(override)
    else:
        env = os.environ.get(SIZE_CAP_ENV)
        cap = int(env) if env else DEFAULT_SIZE_CAP
    return min(cap, _HARD_CAP)


@dataclass(frozen=True)
class Zmod:
    m: int


@dataclass(frozen=True)
class Product:
    left: "FiniteRing"
    right: "FiniteRing"


@dataclass(frozen=True)
class MatrixOver:
    base: "FiniteRing"
    n: int


@dataclass(frozen=True)
class TriangularOver:
    base: "FiniteRing"
    n: int


@dataclass(frozen=True)
class GeneralizedTriangular:
    s_mod: int
    r_mod: int
    m_mod: int


@dataclass(eq=False)
class FiniteRing:
    size: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    zero: int
    one: int
    structure: object | None = None
    spec: str | None = None
    _derived: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.add = np.ascontiguousarray(self.add, dtype=np.uint16)
        self.mul = np.ascontiguousarray(self.mul, dtype=np.uint16)
        self.neg = np.ascontiguousarray(self.neg, dtype=np.uint16)
        for t in (self.add, self.mul, self.neg):
            t.setflags(write=False)

    def elements(self) -> range:
        return range(self.size)

    @property
    def mul_t(self) -> np.ndarray:
        if "mul_t" not in self._derived:
            t = np.ascontiguousarray(self.mul.T)
            t.setflags(write=False)
            self._derived["mul_t"] = t
        return self._derived["mul_t"]

    def cache(self, key: str, build):
        if key not in self._derived:
            self._derived[key] = build()
        return self._derived[key]

    def spec_or_size(self) -> str:
        return self.spec if self.spec else f"ring<{self.size}>"

    def element_name(self, i: int) -> str:
        s = self.structure
        if isinstance(s, Zmod):
            return str(i)
        if isinstance(s, Product):
            q, r = divmod(i, s.right.size)
            return f"({s.left.element_name(q)},{s.right.element_name(r)})"
        if isinstance(s, MatrixOver):
            digits = decode_digits(self, i)
            rows = []
            for p in range(s.n):
                rows.append("[" + ",".join(
                    s.base.element_name(int(digits[p * s.n + q])) for q in range(s.n)) + "]")
            return "[" + ",".join(rows) + "]"
        if isinstance(s, TriangularOver):
            digits = decode_digits(self, i)
            pos = upper_positions(s.n)
            entry = {pq: int(d) for pq, d in zip(pos, digits)}
            rows = []
            for p in range(s.n):
                cells = []
                for q in range(s.n):
                    if q < p:
                        cells.append("0")
                    else:
                        cells.append(s.base.element_name(entry[(p, q)]))
                rows.append("[" + ",".join(cells) + "]")
            return "[" + ",".join(rows) + "]"
        if isinstance(s, GeneralizedTriangular):
            sv, mv, rv = decode_gt(self, i)
            return f"[[{sv},{mv}],[0,{rv}]]"
        return str(i)

    def idempotents(self) -> np.ndarray:
        idx = np.arange(self.size)
        return np.flatnonzero(self.mul[idx, idx] == idx)

    def __repr__(self) -> str:
        return f"FiniteRing({self.spec_or_size()}, size={self.size})"


# ---------------------------------------------------------------------------
# positional encodings for structured rings

def upper_positions(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


def full_positions(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(n)]


def decode_digit_table(ring: FiniteRing) -> np.ndarray:
    """[positions x size] table of base-ring digits, row-major big-endian."""
    def build():
        s = ring.structure
        if isinstance(s, MatrixOver):
            p, b = len(full_positions(s.n)), s.base.size
        elif isinstance(s, TriangularOver):
            p, b = len(upper_positions(s.n)), s.base.size
        else:
            raise TypeError("ring has no positional digit encoding")
        idx = np.arange(ring.size, dtype=np.int64)
        out = np.empty((p, ring.size), dtype=np.int64)
        for k in range(p):
            out[p - 1 - k] = idx % b
            idx //= b
        return out

    return ring.cache("digits", build)


def decode_digits(ring: FiniteRing, i: int) -> np.ndarray:
    return decode_digit_table(ring)[:, int(i)]


def decode_gt(ring: FiniteRing, i: int) -> tuple[int, int, int]:
    s = ring.structure
    sm, rm, mm = s.s_mod, s.r_mod, s.m_mod
    sv, rem = divmod(int(i), mm * rm)
    mv, rv = divmod(rem, rm)
    return sv, mv, rv


def gt_component_arrays(ring: FiniteRing) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    def build():
        s = ring.structure
        idx = np.arange(ring.size, dtype=np.int64)
        sv, rem = np.divmod(idx, s.m_mod * s.r_mod)
        mv, rv = np.divmod(rem, s.r_mod)
        return sv, mv, rv

    return ring.cache("gt_components", build)


# ---------------------------------------------------------------------------
# constructors

def _check_cap(n_elements: int, cap: int | None, what: str) -> None:
    limit = size_cap(cap)
    if n_elements > limit:
        raise SizeCapError(f"{what} would have {n_elements} elements, above the cap {limit}")


def make_zmod(m: int, cap: int | None = None) -> FiniteRing:
    if m < 2:
        raise SpecParseError("Z_m needs m >= 2")
    _check_cap(m, cap, f"Z{m}")
    idx = np.arange(m, dtype=np.int64)
    add = (idx[:, None] + idx[None, :]) % m
    mul = (idx[:, None] * idx[None, :]) % m
    neg = (-idx) % m
    return FiniteRing(m, add, mul, neg, zero=0, one=1, structure=Zmod(m), spec=f"Z{m}")


def make_product(a: FiniteRing, b: FiniteRing, cap: int | None = None) -> FiniteRing:
    n = a.size * b.size
    _check_cap(n, cap, f"{a.spec_or_size()}x{b.spec_or_size()}")
    idx = np.arange(n, dtype=np.int64)
    ia, ib = np.divmod(idx, b.size)
    add = a.add[np.ix_(ia, ia)].astype(np.int64) * b.size + b.add[np.ix_(ib, ib)]
    mul = a.mul[np.ix_(ia, ia)].astype(np.int64) * b.size + b.mul[np.ix_(ib, ib)]
    neg = a.neg[ia].astype(np.int64) * b.size + b.neg[ib]
    one = a.one * b.size + b.one
    zero = a.zero * b.size + b.zero
    spec = f"{a.spec}x{b.spec}" if (a.spec and b.spec) else None
    return FiniteRing(n, add, mul, neg, zero=zero, one=one,
                      structure=Product(a, b), spec=spec)


def _positional_tables(base: FiniteRing, positions: list[tuple[int, int]], n: int):
    """Add/mul/neg tables for a matrix-style ring over the given entry positions."""
    p = len(positions)
    size = base.size ** p
    pos_index = {pq: k for k, pq in enumerate(positions)}
    idx = np.arange(size, dtype=np.int64)
    digits = np.empty((p, size), dtype=np.int64)
    rem = idx.copy()
    for k in range(p):
        digits[p - 1 - k] = rem % base.size
        rem //= base.size
    weights = np.array([base.size ** (p - 1 - k) for k in range(p)], dtype=np.int64)

    badd, bmul = base.add.astype(np.int64), base.mul.astype(np.int64)
    add = np.zeros((size, size), dtype=np.int64)
    for k in range(p):
        add += badd[np.ix_(digits[k], digits[k])] * weights[k]

    mul = np.zeros((size, size), dtype=np.int64)
    for (i, j), k_out in pos_index.items():
        acc = None
        for k in range(n):
            ka, kb = pos_index.get((i, k)), pos_index.get((k, j))
            if ka is None or kb is None:
                continue
            term = bmul[np.ix_(digits[ka], digits[kb])]
            acc = term if acc is None else badd[acc, term]
        if acc is None:
            continue  # structurally zero entry: contributes base.zero == digit 0
        mul += acc * weights[k_out]

    bneg = base.neg.astype(np.int64)
    neg = np.zeros(size, dtype=np.int64)
    for k in range(p):
        neg += bneg[digits[k]] * weights[k]

    one = 0
    for (i, j), k_out in pos_index.items():
        if i == j:
            one += base.one * weights[k_out]
    return add, mul, neg, one


def make_matrix_ring(base: FiniteRing, n: int, cap: int | None = None) -> FiniteRing:
    if n < 1:
        raise SpecParseError("matrix ring needs n >= 1")
    count = base.size ** (n * n)
    _check_cap(count, cap, f"M{n}({base.spec_or_size()})")
    positions = full_positions(n)
    add, mul, neg, one = _positional_tables(base, positions, n)
    spec = f"M{n}({base.spec})" if base.spec else None
    return FiniteRing(count, add, mul, neg, zero=0, one=one,
                      structure=MatrixOver(base, n), spec=spec)


def make_upper_triangular(base: FiniteRing, n: int, cap: int | None = None) -> FiniteRing:
    if n < 1:
        raise SpecParseError("triangular ring needs n >= 1")
    count = base.size ** (n * (n + 1) // 2)
    _check_cap(count, cap, f"T{n}({base.spec_or_size()})")
    positions = upper_positions(n)
    add, mul, neg, one = _positional_tables(base, positions, n)
    spec = f"T{n}({base.spec})" if base.spec else None
    return FiniteRing(count, add, mul, neg, zero=0, one=one,
                      structure=TriangularOver(base, n), spec=spec)


def make_generalized_triangular(s_mod: int, r_mod: int, m_mod: int,
                                cap: int | None = None) -> FiniteRing:
    if min(s_mod, r_mod, m_mod) < 1 or s_mod < 2 or r_mod < 2:
        raise SpecParseError("GT needs component moduli >= 2 on the diagonal")
    if math.gcd(s_mod, r_mod) % m_mod != 0:
        raise BimoduleError(
            f"bimodule modulus {m_mod} must divide gcd({s_mod},{r_mod})"
            f"={math.gcd(s_mod, r_mod)}")
    count = s_mod * m_mod * r_mod
    _check_cap(count, cap, f"GT({s_mod},{r_mod},{m_mod})")
    idx = np.arange(count, dtype=np.int64)
    sv, rem = np.divmod(idx, m_mod * r_mod)
    mv, rv = np.divmod(rem, r_mod)

    def enc(s, m, r):
        return (s * m_mod + m) * r_mod + r

    add = enc((sv[:, None] + sv[None, :]) % s_mod,
              (mv[:, None] + mv[None, :]) % m_mod,
              (rv[:, None] + rv[None, :]) % r_mod)
    # (s,m,r)(s',m',r') = (ss', s.m' + m.r', rr') with both actions reduced mod m_mod
    mul = enc((sv[:, None] * sv[None, :]) % s_mod,
              (sv[:, None] * mv[None, :] + mv[:, None] * rv[None, :]) % m_mod,
              (rv[:, None] * rv[None, :]) % r_mod)
    neg = enc((-sv) % s_mod, (-mv) % m_mod, (-rv) % r_mod)
    one = enc(1 % s_mod, 0, 1 % r_mod)
    return FiniteRing(count, add, mul, neg, zero=0, one=int(one),
                      structure=GeneralizedTriangular(s_mod, r_mod, m_mod),
                      spec=f"GT({s_mod},{r_mod},{m_mod})")


# ---------------------------------------------------------------------------
# validation

def _decode_triple(linear: int, n: int) -> tuple[int, int, int]:
    a, rem = divmod(int(linear), n * n)
    b, c = divmod(rem, n)
    return a, b, c


def validate_ring(r: FiniteRing) -> VerificationReport:
    """Exhaustively check every ring axiom; first failure becomes the witness."""
    t0 = time.perf_counter()
    spec = r.spec_or_size()
    n = r.size
    idx = np.arange(n)

    def fail(axiom: str, elements: tuple[int, ...]) -> VerificationReport:
        witness = {"axiom": axiom, "elements": [element_witness(r, e) for e in elements]}
        return VerificationReport(
            ring_spec=spec, check_id="ring-axioms", verdict=FAIL,
            witnesses=[witness], timing_ms=(time.perf_counter() - t0) * 1e3)

    for name, table in (("add", r.add), ("mul", r.mul)):
        if table.shape != (n, n) or table.min() < 0 or table.max() >= n:
            return fail(f"{name}-table-range", ())
    if r.neg.shape != (n,) or (r.neg >= n).any():
        return fail("neg-table-range", ())
    if r.zero == r.one:
        return fail("zero-distinct-from-one", (r.zero,))

    bad = np.flatnonzero(r.add[r.zero] != idx)
    if bad.size:
        return fail("add-identity", (r.zero, int(bad[0])))
    bad = np.flatnonzero(r.add[idx, r.neg[idx]] != r.zero)
    if bad.size:
        return fail("add-inverse", (int(bad[0]), int(r.neg[bad[0]])))
    if not np.array_equal(r.add, r.add.T):
        a, b = np.argwhere(r.add != r.add.T)[0]
        return fail("add-commutativity", (int(a), int(b)))
    bad = np.flatnonzero(r.mul[r.one] != idx)
    if bad.size:
        return fail("mul-left-identity", (r.one, int(bad[0])))
    bad = np.flatnonzero(r.mul[:, r.one] != idx)
    if bad.size:
        return fail("mul-right-identity", (int(bad[0]), r.one))

    w = _kernels.assoc_witness(r.add)
    if w >= 0:
        return fail("add-associativity", _decode_triple(w, n))
    w = _kernels.assoc_witness(r.mul)
    if w >= 0:
        return fail("mul-associativity", _decode_triple(w, n))
    w = _kernels.left_dist_witness(r.add, r.mul)
    if w >= 0:
        return fail("left-distributivity", _decode_triple(w, n))
    w = _kernels.right_dist_witness(r.add, np.ascontiguousarray(r.mul.T))
    if w >= 0:
        c, a, b = _decode_triple(w, n)
        return fail("right-distributivity", (a, b, c))

    return VerificationReport(
        ring_spec=spec, check_id="ring-axioms", verdict=PASS,
        details={"size": n},
        timing_ms=(time.perf_counter() - t0) * 1e3)


def center_size(r: FiniteRing) -> int:
    return int(_kernels.center_mask(r.mul).sum())


# ---------------------------------------------------------------------------
# ring-spec mini-language
#
#   spec := atom ("x" atom)*
#   atom := "Z" INT | "M" INT "(" spec ")" | "T" INT "(" spec ")"
#         | "GT(" INT "," INT "," INT ")"

_INT = re.compile(r"\d+")


class _Parser:
    def __init__(self, text: str, cap: int | None):
        self.text = text.replace(" ", "")
        self.pos = 0
        self.cap = cap

    def error(self, msg: str):
        raise SpecParseError(f"{msg} at position {self.pos} in {self.text!r}")

    def peek(self) -> str:
        return self.text[self.pos:self.pos + 1]

    def eat(self, token: str):
        if not self.text.startswith(token, self.pos):
            self.error(f"expected {token!r}")
        self.pos += len(token)

    def integer(self) -> int:
        m = _INT.match(self.text, self.pos)
        if not m:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def atom(self) -> FiniteRing:
        if self.text.startswith("GT(", self.pos):
            self.eat("GT(")
            s = self.integer()
            self.eat(",")
            r = self.integer()
            self.eat(",")
            m = self.integer()
            self.eat(")")
            return make_generalized_triangular(s, r, m, cap=self.cap)
        ch = self.peek()
        if ch == "Z":
            self.pos += 1
            return make_zmod(self.integer(), cap=self.cap)
        if ch in ("M", "T"):
            self.pos += 1
            n = self.integer()
            self.eat("(")
            base = self.expr()
            self.eat(")")
            if ch == "M":
                return make_matrix_ring(base, n, cap=self.cap)
            return make_upper_triangular(base, n, cap=self.cap)
        self.error("expected Z<m>, M<n>(...), T<n>(...) or GT(s,r,m)")

    def expr(self) -> FiniteRing:
        ring = self.atom()
        while self.peek() == "x":
            self.pos += 1
            ring = make_product(ring, self.atom(), cap=self.cap)
        return ring


def parse_ring_spec(text: str, cap: int | None = None) -> FiniteRing:
    p = _Parser(text, cap)
    ring = p.expr()
    if p.pos != len(p.text):
        p.error("trailing input")
    return ring

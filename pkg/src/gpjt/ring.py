"""Exact arithmetic in Z[x_1..x_d, b_1..b_B, beta] / (beta^(N+1)).

Monomials are packed into a single Python integer, one fixed-width field per
variable, with the beta exponent in the most significant field.  Multiplying
monomials is then integer addition, and the truncation beta^(N+1) = 0 becomes a
single comparison against a cutoff key.
"""

from __future__ import annotations

import json
import re
from bisect import bisect_left
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence, Union

import numpy as np

try:
    from . import _kernels
except ImportError:  # numba unavailable: pure Python products only
    _kernels = None

__all__ = [
    "RingContext",
    "Polynomial",
    "RingError",
    "ContextMismatch",
    "NotAUnit",
    "NotDivisible",
    "make",
    "add",
    "neg",
    "mul",
    "unit_inverse",
    "exact_div",
    "determinant",
    "substitute",
    "serialize",
    "parse",
    "to_json",
    "from_json",
    "dumps",
    "loads",
    "monomial_sort_key",
]

WIDTH = 16
MASK = (1 << WIDTH) - 1


class RingError(Exception):
    pass


class ContextMismatch(RingError, ValueError):
    pass


class NotAUnit(RingError, ArithmeticError):
    pass


class NotDivisible(RingError, ArithmeticError):
    """Raised by exact_div.  ``witness`` is (exponent tuple, coefficient) of the
    leading term of the nonzero remainder."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True)
class RingContext:
    """Shape of the working ring: ``d`` x-variables, ``B`` b-variables and
    beta-truncation order ``N`` (so beta^(N+1) = 0)."""

    d: int
    B: int = 0
    N: int = 0

    def __post_init__(self):
        for name in ("d", "B", "N"):
            if not isinstance(getattr(self, name), int) or isinstance(getattr(self, name), bool):
                raise TypeError(f"{name} must be an int")
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")
        if self.B < 0 or self.N < 0:
            raise ValueError("B and N must be non-negative")
        if self.N > MASK:
            raise ValueError(f"N must be at most {MASK}")

    @property
    def nvars(self) -> int:
        return self.d + self.B + 1

    @cached_property
    def beta_shift(self) -> int:
        return WIDTH * (self.d + self.B)

    @cached_property
    def cap(self) -> int:
        # every key >= cap has beta exponent > N
        return (self.N + 1) << self.beta_shift

    @cached_property
    def names(self) -> tuple[str, ...]:
        return (
            tuple(f"x{i}" for i in range(1, self.d + 1))
            + tuple(f"b{j}" for j in range(1, self.B + 1))
            + ("beta",)
        )

    @cached_property
    def _field_of(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def field(self, name: str) -> int:
        try:
            return self._field_of[name]
        except KeyError:
            raise ValueError(f"no variable {name!r} in {self}") from None

    def encode(self, exps: Sequence[int]) -> int:
        if len(exps) != self.nvars:
            raise ValueError(f"expected {self.nvars} exponents, got {len(exps)}")
        key = 0
        for i, e in enumerate(exps):
            if e < 0 or (e > MASK and i < self.nvars - 1):
                raise ValueError(f"exponent {e} out of range")
            key |= e << (WIDTH * i)
        return key

    def decode(self, key: int) -> tuple[int, ...]:
        top = self.nvars - 1
        return tuple((key >> (WIDTH * i)) & MASK for i in range(top)) + (key >> (WIDTH * top),)

    def zero(self) -> Polynomial:
        return Polynomial._raw(self, {}, 0)

    def one(self) -> Polynomial:
        return Polynomial._raw(self, {0: 1}, 0)

    def const(self, c: int) -> Polynomial:
        return Polynomial._raw(self, {0: c} if c else {}, 0)

    def x(self, i: int) -> Polynomial:
        if not 1 <= i <= self.d:
            raise IndexError(f"x{i} out of range for d={self.d}")
        return Polynomial._raw(self, {1 << (WIDTH * (i - 1)): 1}, 1)

    def b(self, j: int) -> Polynomial:
        if not 1 <= j <= self.B:
            raise IndexError(f"b{j} out of range for B={self.B}")
        return Polynomial._raw(self, {1 << (WIDTH * (self.d + j - 1)): 1}, 1)

    def beta(self) -> Polynomial:
        if self.N == 0:
            return self.zero()
        return Polynomial._raw(self, {1 << self.beta_shift: 1}, 0)

    def var(self, name: str) -> Polynomial:
        if name == "beta":
            return self.beta()
        m = re.fullmatch(r"([xb])(\d+)", name)
        if not m:
            raise ValueError(f"bad variable name {name!r}")
        return self.x(int(m[2])) if m[1] == "x" else self.b(int(m[2]))

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> Polynomial:
        return Polynomial.from_terms(self, {tuple(exps): coeff})


def monomial_sort_key(exps: Sequence[int]):
    """Canonical order: ascending total degree, then lexicographically
    descending in (x_1..x_d, b_1..b_B, beta)."""
    return (sum(exps), tuple(-e for e in exps))


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps packed monomial keys to
    nonzero ints.  ``_deg`` is an upper bound on the non-beta total degree, used
    to guard the packed fields against overflow."""

    __slots__ = ("ctx", "terms", "_deg")

    def __init__(self, ctx: RingContext, terms: Mapping[Sequence[int], int] = ()):
        p = Polynomial.from_terms(ctx, dict(terms))
        self.ctx, self.terms, self._deg = ctx, p.terms, p._deg

    @classmethod
    def _raw(cls, ctx: RingContext, terms: dict, deg: int) -> Polynomial:
        self = object.__new__(cls)
        self.ctx = ctx
        self.terms = terms
        self._deg = deg
        return self

    @classmethod
    def from_terms(cls, ctx: RingContext, terms: Mapping[Sequence[int], int]) -> Polynomial:
        """Build from ``{exponent tuple: coeff}``; terms with beta exponent
        above N are dropped."""
        out: dict[int, int] = {}
        deg = 0
        for exps, c in terms.items():
            key = ctx.encode(exps)
            if key >= ctx.cap:
                continue
            c = int(c)
            out[key] = out.get(key, 0) + c
            deg = max(deg, sum(exps[:-1]))
        return cls._raw(ctx, {k: c for k, c in out.items() if c}, deg)

    # -- inspection ------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> int:
        return self.terms.get(0, 0)

    def items(self) -> list[tuple[tuple[int, ...], int]]:
        """(exponents, coeff) pairs in canonical order."""
        dec = self.ctx.decode
        pairs = [(dec(k), c) for k, c in self.terms.items()]
        pairs.sort(key=lambda t: monomial_sort_key(t[0]))
        return pairs

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.terms.get(self.ctx.encode(exps), 0)

    def leading_term(self):
        """Greatest term in canonical order, or None for zero."""
        if not self.terms:
            return None
        dec = self.ctx.decode
        k = max(self.terms, key=lambda k: monomial_sort_key(dec(k)))
        return dec(k), self.terms[k]

    def beta_degree(self) -> int:
        if not self.terms:
            return -1
        return max(self.terms) >> self.ctx.beta_shift

    def beta_part(self, e: int) -> Polynomial:
        """Coefficient of beta^e, still as an element of the same ring."""
        sh = self.ctx.beta_shift
        lo, hi = e << sh, (e + 1) << sh
        return Polynomial._raw(
            self.ctx, {k - lo: c for k, c in self.terms.items() if lo <= k < hi}, self._deg
        )

    def with_context(self, ctx: RingContext) -> Polynomial:
        """Re-embed into a context with the same d and at least as many b's;
        lowering N truncates."""
        if ctx == self.ctx:
            return self
        if ctx.d != self.ctx.d:
            raise ContextMismatch(f"cannot move from d={self.ctx.d} to d={ctx.d}")
        if ctx.B == self.ctx.B:
            # same packing; only the truncation changes
            cap = ctx.cap
            return Polynomial._raw(ctx, {k: c for k, c in self.terms.items() if k < cap}, self._deg)
        dec = self.ctx.decode
        out = {}
        for k, c in self.terms.items():
            e = dec(k)
            xs, bs, bt = e[: ctx.d], e[ctx.d : -1], e[-1]
            if len(bs) > ctx.B:
                if any(bs[ctx.B :]):
                    raise ContextMismatch(f"polynomial uses b{len(bs)} but target has B={ctx.B}")
                bs = bs[: ctx.B]
            else:
                bs = bs + (0,) * (ctx.B - len(bs))
            if bt > ctx.N:
                continue
            out[ctx.encode(xs + bs + (bt,))] = c
        return Polynomial._raw(ctx, out, self._deg)

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
            return other
        if isinstance(other, int):
            return self.ctx.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(self.terms) < len(other.terms):
            small, big = self.terms, other.terms
        else:
            small, big = other.terms, self.terms
        out = dict(big)
        for k, c in small.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return Polynomial._raw(self.ctx, out, max(self._deg, other._deg))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.ctx, {k: -c for k, c in self.terms.items()}, self._deg)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return self.ctx.zero()
            return Polynomial._raw(self.ctx, {k: c * other for k, c in self.terms.items()}, self._deg)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        deg = self._deg + other._deg
        if deg > MASK:
            raise OverflowError("exponent exceeds packed field width")
        return Polynomial._raw(self.ctx, _mul_terms(self.terms, other.terms, self.ctx), deg)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ctx.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.ctx, frozenset(self.terms.items())))

    def __str__(self) -> str:
        return serialize(self)

    def __repr__(self) -> str:
        text = serialize(self)
        if len(text) > 120:
            text = text[:117] + "..."
        return f"Polynomial({text!r}, d={self.ctx.d}, B={self.ctx.B}, N={self.ctx.N})"


def _mul_terms(a: dict, b: dict, ctx: RingContext) -> dict:
    cap = ctx.cap
    if len(a) > len(b):
        a, b = b, a
    if not a:
        return {}
    if len(a) == 1:
        ((k1, c1),) = a.items()
        if c1 == 1:
            return {k1 + k: c for k, c in b.items() if k1 + k < cap}
        return {k1 + k: c * c1 for k, c in b.items() if k1 + k < cap}
    if len(a) <= 8:
        out = {}
        get = out.get
        for k1, c1 in a.items():
            lim = cap - k1
            for k, c in b.items():
                if k < lim:
                    kk = k1 + k
                    out[kk] = get(kk, 0) + c1 * c
        return {k: c for k, c in out.items() if c}
    if len(a) * len(b) >= COMPILED_THRESHOLD and _kernels is not None:
        out = _mul_compiled(a, b, ctx)
        if out is not None:
            return out
    bkeys = sorted(b)
    pairs = [(k, b[k]) for k in bkeys]
    out: dict[int, int] = {}
    get = out.get
    for k1, c1 in a.items():
        stop = bisect_left(bkeys, cap - k1)
        for k2, c2 in pairs[:stop] if stop < len(pairs) else pairs:
            k = k1 + k2
            out[k] = get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


COMPILED_THRESHOLD = 20_000
_INT64_LIMIT = 1 << 62


def _exponent_array(keys, nbytes: int):
    buf = b"".join(k.to_bytes(nbytes, "little") for k in keys)
    return np.frombuffer(buf, dtype="<u2").reshape(len(keys), nbytes // 2).astype(np.int64)


def _mul_compiled(a: dict, b: dict, ctx: RingContext):
    """int64 product via a mixed-radix re-encoding; None when anything could
    overflow, so the caller takes the exact path."""
    na, nb = len(a), len(b)
    amax = max(abs(c) for c in a.values())
    bmax = max(abs(c) for c in b.values())
    if amax * bmax * min(na, nb) >= _INT64_LIMIT:
        return None
    nv = ctx.nvars
    nbytes = 2 * nv
    akeys, bkeys = list(a), list(b)
    ea = _exponent_array(akeys, nbytes)
    eb = _exponent_array(bkeys, nbytes)
    radix = ea.max(axis=0) + eb.max(axis=0) + 1
    radix[-1] = 2 * ctx.N + 1
    space = 1
    for r in radix.tolist():
        space *= r
    if space >= _INT64_LIMIT:
        return None
    weights = np.ones(nv, dtype=np.int64)
    for v in range(1, nv):
        weights[v] = weights[v - 1] * radix[v - 1]
    ka = ea @ weights
    kb = eb @ weights
    oa = np.argsort(ka, kind="stable")
    ob = np.argsort(kb, kind="stable")
    ca = np.fromiter(a.values(), dtype=np.int64, count=na)[oa]
    cb = np.fromiter(b.values(), dtype=np.int64, count=nb)[ob]
    ok, ov = _kernels.sparse_mul(ka[oa], ca, kb[ob], cb, int(weights[-1]), ctx.N + 1)
    exps = np.empty((ok.size, nv), dtype="<u2")
    rest = ok
    for v in range(nv - 1):
        exps[:, v] = rest % radix[v]
        rest = rest // radix[v]
    exps[:, nv - 1] = rest
    buf = exps.tobytes()
    frm = int.from_bytes
    return {frm(buf[i : i + nbytes], "little"): c for i, c in zip(range(0, len(buf), nbytes), ov.tolist())}


# -- public operations -------------------------------------------------------


def make(ctx: RingContext, spec: Union[str, int]) -> Polynomial:
    """``spec`` is ``"zero"``, ``"one"``, ``"beta"``, ``"x<i>"``, ``"b<j>"`` or
    an int."""
    if isinstance(spec, bool):
        raise TypeError("bool is not a ring element spec")
    if isinstance(spec, int):
        return ctx.const(spec)
    if spec == "zero":
        return ctx.zero()
    if spec == "one":
        return ctx.one()
    return ctx.var(spec)


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def neg(p: Polynomial) -> Polynomial:
    return -p


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def unit_inverse(p: Polynomial) -> Polynomial:
    """Inverse of ``1 + beta*q`` via the geometric series in ``beta*q``."""
    ctx = p.ctx
    floor = 1 << ctx.beta_shift
    if p.terms.get(0) != 1:
        raise NotAUnit(f"constant term must be 1: {p!r}")
    if any(0 < k < floor for k in p.terms):
        raise NotAUnit(f"non-constant beta-free term in {p!r}")
    t = 1 - p
    r = ctx.one()
    for _ in range(ctx.N):
        r = 1 + t * r
    return r


def _var_exp(key: int, shift: int, top: bool) -> int:
    return key >> shift if top else (key >> shift) & MASK


def _leading(ctx: RingContext, terms: dict):
    dec = ctx.decode
    k = max(terms, key=lambda k: monomial_sort_key(dec(k)))
    return dec(k), terms[k]


def _div_terms(ctx: RingContext, p: dict, q: dict) -> dict:
    if not p:
        return {}
    if len(q) == 1 and 0 in q:
        c = q[0]
        out = {}
        for k, v in p.items():
            if v % c:
                raise NotDivisible("coefficient not divisible", (ctx.decode(k), v))
            out[k] = v // c
        return out

    # main variable: first variable (x1 < ... < beta) that occurs in q
    top_field = ctx.nvars - 1
    occurring = [i for i in range(ctx.nvars) if any(_var_exp(k, WIDTH * i, i == top_field) for k in q)]
    field = occurring[0]
    shift = WIDTH * field
    top = field == top_field

    def split(terms):
        parts: dict[int, dict] = {}
        for k, c in terms.items():
            e = _var_exp(k, shift, top)
            parts.setdefault(e, {})[k - (e << shift)] = c
        return parts

    qparts = split(q)
    dq = max(qparts)
    lcq = qparts[dq]

    if dq == 1 and len(lcq) == 1 and lcq.get(0) in (1, -1) and set(qparts) <= {0, 1}:
        # q = c*(v - s) with c = +-1: synthetic division
        c = lcq[0]
        s = {k: -v * c for k, v in qparts.get(0, {}).items()}
        pparts = split(p)
        dp = max(pparts)
        if dp == 0:
            raise NotDivisible("remainder is nonzero", _leading(ctx, p))
        quot: dict[int, dict] = {}
        carry: dict = {}
        for e in range(dp, 0, -1):
            cur = dict(pparts.get(e, {}))
            for k, v in _mul_terms(s, carry, ctx).items() if carry and s else ():
                w = cur.get(k, 0) + v
                if w:
                    cur[k] = w
                else:
                    cur.pop(k, None)
            quot[e - 1] = cur
            carry = cur
        rem = dict(pparts.get(0, {}))
        for k, v in _mul_terms(s, carry, ctx).items() if carry and s else ():
            w = rem.get(k, 0) + v
            if w:
                rem[k] = w
            else:
                rem.pop(k, None)
        if rem:
            raise NotDivisible("remainder is nonzero", _leading(ctx, rem))
        out = {}
        for e, part in quot.items():
            off = e << shift
            for k, v in part.items():
                out[k + off] = v * c
        return out

    rem = dict(p)
    out: dict[int, int] = {}
    while rem:
        dp = max(_var_exp(k, shift, top) for k in rem)
        if dp < dq:
            raise NotDivisible("remainder is nonzero", _leading(ctx, rem))
        lcp = {k - (dp << shift): c for k, c in rem.items() if _var_exp(k, shift, top) == dp}
        t = _div_terms(ctx, lcp, lcq)
        off = (dp - dq) << shift
        tk = {k + off: c for k, c in t.items() if k + off < ctx.cap}
        if not tk:
            raise NotDivisible("remainder is nonzero", _leading(ctx, rem))
        for k, c in tk.items():
            out[k] = out.get(k, 0) + c
        for k, c in _mul_terms(tk, q, ctx).items():
            w = rem.get(k, 0) - c
            if w:
                rem[k] = w
            else:
                rem.pop(k, None)
    return {k: c for k, c in out.items() if c}


def exact_div(p: Polynomial, q: Polynomial) -> Polynomial:
    """Return r with r*q == p, raising NotDivisible when the division leaves a
    remainder.

    Units 1 + beta*(...) are inverted outright.  Otherwise this is long
    division in the first variable occurring in q, which is complete for
    beta-free divisors; beta is a zero divisor in R, so a divisor whose
    beta-part matters may raise NotDivisible even when a quotient exists."""
    q = p._coerce(q)
    if not q:
        raise ZeroDivisionError("exact_div by zero")
    floor = 1 << p.ctx.beta_shift
    if q.terms.get(0) == 1 and len(q.terms) > 1 and not any(0 < k < floor for k in q.terms):
        return p * unit_inverse(q)
    return Polynomial._raw(p.ctx, _div_terms(p.ctx, p.terms, q.terms), p._deg)


def determinant(m: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Division-free determinant: Laplace expansion along rows with minors
    memoized by column subset."""
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise ValueError("determinant needs a non-empty square matrix")
    ctx = m[0][0].ctx
    for row in m:
        for e in row:
            if not isinstance(e, Polynomial) or e.ctx != ctx:
                raise ContextMismatch("matrix entries must share one context")
    # minors[cols] = det of rows (n - len(cols))..n-1 restricted to cols
    minors = {(c,): m[n - 1][c] for c in range(n)}
    for r in range(n - 2, -1, -1):
        size = n - r
        nxt = {}
        for cols in combinations(range(n), size):
            acc = ctx.zero()
            for pos, c in enumerate(cols):
                entry = m[r][c]
                if not entry:
                    continue
                sub = minors[cols[:pos] + cols[pos + 1 :]]
                if not sub:
                    continue
                term = entry * sub
                acc = acc - term if pos & 1 else acc + term
            nxt[cols] = acc
        minors = nxt
    return minors[tuple(range(n))]


def substitute(p: Polynomial, assignment: Mapping[str, Union[int, str]]) -> Polynomial:
    """Simultaneous substitution.  Each variable maps to an int or to a
    variable of the same family (x to x, b to b); beta maps only to an int."""
    ctx = p.ctx
    nv = ctx.nvars
    target: list = list(range(nv))
    for name, value in assignment.items():
        i = ctx.field(name)
        if isinstance(value, bool):
            raise ValueError(f"bad value for {name}: {value!r}")
        if isinstance(value, int):
            target[i] = ("const", value)
        elif isinstance(value, str):
            j = ctx.field(value)
            if name[0] != value[0] or value == "beta" or name == "beta":
                raise ValueError(f"cannot map {name} to {value}")
            target[i] = j
        else:
            raise ValueError(f"bad value for {name}: {value!r}")
    dec = ctx.decode
    out: dict[int, int] = {}
    for k, c in p.terms.items():
        exps = dec(k)
        new = [0] * nv
        for i, e in enumerate(exps):
            if not e:
                continue
            t = target[i]
            if isinstance(t, tuple):
                c *= t[1] ** e
                if not c:
                    break
            else:
                new[t] += e
        if not c:
            continue
        key = ctx.encode(new)
        if key >= ctx.cap:
            continue
        out[key] = out.get(key, 0) + c
    return Polynomial._raw(ctx, {k: c for k, c in out.items() if c}, p._deg)


# -- text and JSON forms -------------------------------------------------------


def _term_text(names, exps, c) -> str:
    factors = [str(c)]
    for name, e in zip(names, exps):
        if e == 1:
            factors.append(name)
        elif e:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def serialize(p: Polynomial) -> str:
    """Canonical text, e.g. ``1*x1 + 1*b1 + 1*x1*b1*beta``; zero is ``0``."""
    if not p.terms:
        return "0"
    names = p.ctx.names
    return " + ".join(_term_text(names, e, c) for e, c in p.items())


_FACTOR = re.compile(r"(x\d+|b\d+|beta)(?:\^(\d+))?")


def parse(ctx: RingContext, text: str) -> Polynomial:
    text = text.strip()
    if text == "0":
        return ctx.zero()
    terms: dict[tuple, int] = {}
    for chunk in text.split(" + "):
        pieces = chunk.strip().split("*")
        try:
            coeff = int(pieces[0])
        except ValueError:
            raise ValueError(f"term {chunk!r} must start with an integer coefficient") from None
        exps = [0] * ctx.nvars
        for f in pieces[1:]:
            m = _FACTOR.fullmatch(f.strip())
            if not m:
                raise ValueError(f"bad factor {f!r}")
            exps[ctx.field(m[1])] += int(m[2]) if m[2] else 1
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + coeff
    return Polynomial.from_terms(ctx, terms)


def to_json(p: Polynomial) -> dict:
    ctx = p.ctx
    return {
        "context": {"d": ctx.d, "B": ctx.B, "N": ctx.N},
        "terms": [
            {"coeff": str(c), "x": list(e[: ctx.d]), "b": list(e[ctx.d : -1]), "beta": e[-1]}
            for e, c in p.items()
        ],
    }


def from_json(obj: dict) -> Polynomial:
    c = obj["context"]
    ctx = RingContext(int(c["d"]), int(c["B"]), int(c["N"]))
    terms = {}
    for t in obj["terms"]:
        x, b = list(t["x"]), list(t["b"])
        if len(x) != ctx.d or len(b) != ctx.B:
            raise ValueError("term exponent vectors do not match context")
        terms[tuple(x + b + [int(t["beta"])])] = int(t["coeff"])
    return Polynomial.from_terms(ctx, terms)


def dumps(p: Polynomial) -> str:
    return json.dumps(to_json(p), separators=(",", ":"))


def loads(text: str) -> Polynomial:
    return from_json(json.loads(text))


def iter_monomials(p: Polynomial) -> Iterator[tuple[int, ...]]:
    for e, _ in p.items():
        yield e


def first_difference(p: Polynomial, q: Polynomial):
    """Smallest monomial (canonical order) whose coefficients differ, as
    ``(exps, coeff_in_p, coeff_in_q)``; None when equal."""
    q = p._coerce(q)
    diff = p - q
    if not diff:
        return None
    e, _ = diff.items()[0]
    return e, p.coefficient(e), q.coefficient(e)


def polynomial_sum(ctx: RingContext, polys: Iterable[Polynomial]) -> Polynomial:
    out: dict[int, int] = {}
    deg = 0
    for p in polys:
        if p.ctx != ctx:
            raise ContextMismatch(f"{ctx} vs {p.ctx}")
        deg = max(deg, p._deg)
        for k, c in p.terms.items():
            out[k] = out.get(k, 0) + c
    return Polynomial._raw(ctx, {k: c for k, c in out.items() if c}, deg)

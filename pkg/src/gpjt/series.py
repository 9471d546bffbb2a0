"""Truncated Laurent series in ``u`` with ring coefficients.

A series stores the coefficients of ``u^lo .. u^hi``.  Coefficients below
``lo`` are zero by construction.  Above ``hi`` they are zero when ``finite`` is
set (the series is a Laurent polynomial) and unknown otherwise; asking for an
unknown coefficient raises ``WindowError`` instead of returning a wrong value.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .ring import ContextMismatch, Polynomial, RingContext, polynomial_sum, unit_inverse

__all__ = [
    "LaurentSeries",
    "WindowError",
    "laurent_mul",
    "bar",
    "gk_series",
    "g_coeff",
    "g_series",
    "g_coeff_graded",
    "e_series",
    "ebar_series",
    "shift_substitute",
    "geometric",
    "beta_inverse_tail",
    "mul_geometric",
    "gen_binomial",
]


class WindowError(LookupError):
    """Coefficient requested outside the window a series is exact on."""


@dataclass(frozen=True)
class LaurentSeries:
    ctx: RingContext
    lo: int
    hi: int
    coeffs: tuple[Polynomial, ...]
    finite: bool = False

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError(f"empty window [{self.lo}, {self.hi}]")
        if len(self.coeffs) != self.hi - self.lo + 1:
            raise ValueError("coefficient count does not match window")
        for c in self.coeffs:
            if c.ctx != self.ctx:
                raise ContextMismatch("series coefficients must share the context")

    @classmethod
    def from_coeffs(cls, ctx: RingContext, lo: int, coeffs: Sequence[Polynomial], finite: bool = False):
        coeffs = tuple(coeffs)
        return cls(ctx, lo, lo + len(coeffs) - 1, coeffs, finite)

    @classmethod
    def constant(cls, p: Polynomial) -> LaurentSeries:
        return cls(p.ctx, 0, 0, (p,), True)

    def coeff(self, m: int) -> Polynomial:
        if m < self.lo:
            return self.ctx.zero()
        if m > self.hi:
            if self.finite:
                return self.ctx.zero()
            raise WindowError(f"u^{m} is outside the exact window [{self.lo}, {self.hi}]")
        return self.coeffs[m - self.lo]

    def __getitem__(self, m: int) -> Polynomial:
        return self.coeff(m)

    def __mul__(self, other: LaurentSeries) -> LaurentSeries:
        return laurent_mul(self, other)

    def scale(self, p: Polynomial) -> LaurentSeries:
        return LaurentSeries(self.ctx, self.lo, self.hi, tuple(c * p for c in self.coeffs), self.finite)

    def window(self) -> range:
        return range(self.lo, self.hi + 1)


def laurent_mul(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    """Product on the largest window fully determined by both inputs."""
    if f.ctx != g.ctx:
        raise ContextMismatch(f"{f.ctx} vs {g.ctx}")
    lo = f.lo + g.lo
    if f.finite and g.finite:
        hi, finite = f.hi + g.hi, True
    elif f.finite:
        hi, finite = f.lo + g.hi, False
    elif g.finite:
        hi, finite = g.lo + f.hi, False
    else:
        hi, finite = min(f.lo + g.hi, g.lo + f.hi), False
    if hi < lo:
        raise WindowError("product has no exact coefficients")
    ctx = f.ctx
    out = []
    for m in range(lo, hi + 1):
        i_lo = max(f.lo, m - g.hi)
        i_hi = min(f.hi, m - g.lo)
        out.append(polynomial_sum(ctx, (f.coeffs[i - f.lo] * g.coeffs[m - i - g.lo] for i in range(i_lo, i_hi + 1))))
    return LaurentSeries(ctx, lo, hi, tuple(out), finite)


def bar(ctx: RingContext, v) -> Polynomial:
    """The formal inverse -y/(1+beta*y) of a single ring variable y."""
    if isinstance(v, str):
        if v == "beta" or v[:1] not in ("x", "b"):
            raise ValueError(f"bar is defined for x and b variables, not {v!r}")
        v = ctx.var(v)
    if len(v.terms) != 1 or next(iter(v.terms.values())) != 1 or v.beta_degree() != 0 or v.constant_term():
        raise ValueError("bar expects a single x or b variable")
    return -v * unit_inverse(1 + ctx.beta() * v)


def beta_inverse_tail(ctx: RingContext) -> LaurentSeries:
    """1/(1 + beta/u) = sum_s (-beta)^s u^-s, finite because beta^(N+1) = 0."""
    mbeta = -ctx.beta()
    coeffs = [mbeta**s for s in range(ctx.N, -1, -1)]
    return LaurentSeries.from_coeffs(ctx, -ctx.N, coeffs, finite=True)


def geometric(ctx: RingContext, y: Polynomial, hi: int) -> LaurentSeries:
    """1/(1 - y*u), exact for u-degrees 0..hi."""
    coeffs = [ctx.one()]
    for _ in range(hi):
        coeffs.append(coeffs[-1] * y)
    return LaurentSeries.from_coeffs(ctx, 0, coeffs)


def mul_geometric(f: LaurentSeries, y: Polynomial, numerator: Polynomial) -> LaurentSeries:
    """f * numerator / (1 - y u), on the window of ``f``.

    Solved through (1 - y u) R = numerator * f, i.e. R_m = y R_{m-1} +
    numerator f_m; this never forms the (large) geometric expansion."""
    ctx = f.ctx
    out = []
    prev = ctx.zero()
    for c in f.coeffs:
        prev = y * prev + numerator * c
        out.append(prev)
    return LaurentSeries(ctx, f.lo, f.hi, tuple(out), False)


def _tail_truncate(p: Polynomial, cap: int) -> Polynomial:
    if cap >= p.ctx.cap:
        return p
    return Polynomial._raw(p.ctx, {k: c for k, c in p.terms.items() if k < cap}, p._deg)


def gen_binomial(n: int, s: int) -> int:
    """Coefficient of t^s in (1+t)^n for any integer n; zero for s < 0."""
    if s < 0:
        return 0
    if n >= 0:
        return comb(n, s)
    return (-1) ** s * comb(-n + s - 1, s)


def gk_series(
    ctx: RingContext, k: int, m_max: int, graded: bool = False, twist: int = 0
) -> LaurentSeries:
    """G^(k)(u), exact on [-N, m_max]; coefficients below u^-N vanish.

    Built as the beta tail times one factor (1 + beta x_i)/(1 - x_i u) at a
    time (see ``mul_geometric``), then times each 1 + (u + beta) b_j.

    ``twist`` multiplies the result by (1 + beta/u)^twist, which only changes
    the tail to (1 + beta/u)^(twist - 1).

    With ``graded`` the coefficient of u^m is only kept modulo
    beta^(N - max(0, m - k) + 1): exactly the precision a Jacobi-Trudi entry
    consumes, where G_m^(k) always appears multiplied by beta^s with
    s >= m - k."""
    if not 0 <= k <= ctx.B:
        raise ValueError(f"k={k} needs 0 <= k <= B={ctx.B}")
    if m_max < -ctx.N:
        raise ValueError(f"m_max={m_max} below -N={-ctx.N}")
    N = ctx.N
    lo = -N
    window = range(lo, m_max + 1)
    if graded:
        caps = [ctx.cap if m <= k else max(N - (m - k) + 1, 0) << ctx.beta_shift for m in window]
    else:
        caps = [ctx.cap] * len(window)
    beta = ctx.beta()
    coeffs = [
        beta ** (-m) * gen_binomial(twist - 1, -m) if m <= 0 else ctx.zero() for m in window
    ]
    for i in range(1, ctx.d + 1):
        xi = ctx.x(i)
        num = 1 + beta * xi
        prev = ctx.zero()
        for t in range(len(coeffs)):
            prev = _tail_truncate(xi * prev + num * coeffs[t], caps[t])
            coeffs[t] = prev
    for j in range(1, k + 1):
        bj = ctx.b(j)
        bbj = beta * bj
        # times 1 + (u + beta) b_j, in place from the top so c_{m-1} is still old
        for t in range(len(coeffs) - 1, -1, -1):
            below = coeffs[t - 1] if t else ctx.zero()
            coeffs[t] = _tail_truncate(coeffs[t] + bbj * coeffs[t] + bj * below, caps[t])
    return LaurentSeries(ctx, lo, m_max, tuple(coeffs), False)


_CACHE: dict[tuple[RingContext, int], LaurentSeries] = {}
_CACHE_LOCK = threading.Lock()


def g_series(ctx: RingContext, k: int, m_max: int) -> LaurentSeries:
    """Cached G^(k)(u) exact at least up to u^m_max."""
    key = (ctx, k)
    with _CACHE_LOCK:
        s = _CACHE.get(key)
    if s is None or s.hi < m_max:
        s = gk_series(ctx, k, m_max)
        with _CACHE_LOCK:
            old = _CACHE.get(key)
            if old is None or old.hi < s.hi:
                _CACHE[key] = s
    return s


_GRADED: dict[tuple[RingContext, int], LaurentSeries] = {}


def g_coeff_graded(ctx: RingContext, k: int, m: int) -> Polynomial:
    """G_m^(k) modulo beta^(N - max(0, m - k) + 1); see ``gk_series``."""
    if not 0 <= k <= ctx.B:
        raise ValueError(f"k={k} needs 0 <= k <= B={ctx.B}")
    if m < -ctx.N or m - k > ctx.N:
        return ctx.zero()
    key = (ctx, k)
    with _CACHE_LOCK:
        s = _GRADED.get(key)
    if s is None:
        # nothing survives past m = k + N
        s = gk_series(ctx, k, k + ctx.N, graded=True)
        with _CACHE_LOCK:
            _GRADED.setdefault(key, s)
    return s.coeff(m)


def g_coeff(ctx: RingContext, k: int, m: int) -> Polynomial:
    """G_m^(k)(x|b) as an element of the ring of ``ctx``."""
    if not 0 <= k <= ctx.B:
        raise ValueError(f"k={k} needs 0 <= k <= B={ctx.B}")
    if m < -ctx.N:
        return ctx.zero()
    with _CACHE_LOCK:
        s = _CACHE.get((ctx, k))
    if s is None or s.hi < m:
        # grow geometrically so calls with rising m stay cheap
        s = g_series(ctx, k, max(m, 2 * s.hi if s is not None else 0, 4))
    return s.coeff(m)


def clear_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()
        _GRADED.clear()


def e_series(ctx: RingContext, j: int) -> LaurentSeries:
    """E^(j)(u) = prod_{i != j} (1 + x_i u)."""
    if not 1 <= j <= ctx.d:
        raise ValueError(f"j={j} out of range 1..{ctx.d}")
    out = LaurentSeries.constant(ctx.one())
    for i in range(1, ctx.d + 1):
        if i != j:
            out = laurent_mul(out, LaurentSeries.from_coeffs(ctx, 0, [ctx.one(), ctx.x(i)], finite=True))
    return out


def ebar_series(ctx: RingContext, j: int) -> LaurentSeries:
    """prod_{i != j} (1 - bar(x_i) u)."""
    if not 1 <= j <= ctx.d:
        raise ValueError(f"j={j} out of range 1..{ctx.d}")
    out = LaurentSeries.constant(ctx.one())
    for i in range(1, ctx.d + 1):
        if i != j:
            out = laurent_mul(out, LaurentSeries.from_coeffs(ctx, 0, [ctx.one(), -bar(ctx, f"x{i}")], finite=True))
    return out


def shift_substitute(f: LaurentSeries, form: str) -> LaurentSeries:
    """Substitute ``u -> -u`` (form ``"-u"``) or ``u -> -u-beta`` (form
    ``"-u-beta"``).  The second needs a polynomial in u."""
    ctx = f.ctx
    if form == "-u":
        coeffs = tuple(-c if m & 1 else c for m, c in zip(f.window(), f.coeffs))
        return LaurentSeries(ctx, f.lo, f.hi, coeffs, f.finite)
    if form != "-u-beta":
        raise ValueError(f"unknown substitution {form!r}")
    if f.lo < 0 or not f.finite:
        raise ValueError("u -> -u-beta needs a polynomial in u")
    beta = ctx.beta()
    out = [ctx.zero() for _ in range(f.hi + 1)]
    for p in f.window():
        c = f.coeff(p)
        if not c:
            continue
        sign = -1 if p & 1 else 1
        # (-u-beta)^p = (-1)^p sum_t C(p,t) u^t beta^(p-t)
        for t in range(p + 1):
            out[t] = out[t] + c * (beta ** (p - t)) * (sign * comb(p, t))
    return LaurentSeries.from_coeffs(ctx, 0, out, finite=True)

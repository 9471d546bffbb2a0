"""Factorial Grothendieck polynomials G_lambda(x|b).

Three routes to the same polynomial: the bi-alternant (an alternating
determinant divided by the Vandermonde product) and two Jacobi-Trudi style
determinants built from the one-row coefficients G_m^(k)(x|b).
"""

from __future__ import annotations

from itertools import product
from math import comb
from typing import Optional, Sequence

from .ring import Polynomial, RingContext, determinant, exact_div, polynomial_sum, substitute, unit_inverse
from .series import e_series, ebar_series, g_coeff_graded, gen_binomial, gk_series

__all__ = [
    "partition",
    "check_index_vector",
    "levels",
    "default_context",
    "oplus",
    "factorial_power",
    "gen_binomial",
    "bialternant_numerator",
    "vandermonde",
    "bialternant",
    "hm_matrix",
    "himn_matrix",
    "hm_determinant",
    "himn_determinant",
    "build_M",
    "build_Mbar",
    "schur_specialize",
    "buch_specialize",
    "ssyt_schur_oracle",
    "partitions_in_box",
]


def partition(parts: Sequence[int], d: int) -> tuple[int, ...]:
    """Validate a partition and pad it with zeros to length ``d``."""
    parts = tuple(int(p) for p in parts)
    while parts and parts[-1] == 0 and len(parts) > d:
        parts = parts[:-1]
    if len(parts) > d:
        raise ValueError(f"partition {parts} has more than d={d} parts")
    if any(p < 0 for p in parts):
        raise ValueError(f"partition {parts} has a negative part")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"partition {parts} is not weakly decreasing")
    return parts + (0,) * (d - len(parts))


def check_index_vector(a: Sequence[int], d: int) -> tuple[int, ...]:
    a = tuple(int(v) for v in a)
    if len(a) != d:
        raise ValueError(f"index vector {a} must have length d={d}")
    for i, v in enumerate(a, start=1):
        if v + d - i < 0:
            raise ValueError(f"a_{i} + d - {i} = {v + d - i} < 0 for index vector {a}")
    return a


def levels(a: Sequence[int]) -> list[int]:
    """The factorial-power exponents a_i + d - i."""
    d = len(a)
    return [v + d - i for i, v in enumerate(a, start=1)]


def default_context(d: int, a: Sequence[int], N: Optional[int] = None) -> RingContext:
    """Context with exactly the b's the formulas consume and, unless given,
    N = sum(a) + d(d-1), the top beta-degree of the bi-alternant numerator."""
    a = check_index_vector(a, d)
    B = max(levels(a))
    if N is None:
        N = sum(a) + d * (d - 1)
    return RingContext(d, B, N)


def oplus(p: Polynomial, q: Polynomial) -> Polynomial:
    """Formal group law x + y + beta*x*y."""
    return p + q + p.ctx.beta() * p * q


def factorial_power(ctx: RingContext, y: Polynomial, k: int) -> Polynomial:
    """[y|b]^k = (y + b_1)(y + b_2)...(y + b_k) with + the formal group law."""
    if k < 0 or k > ctx.B:
        raise ValueError(f"factorial power {k} needs 0 <= k <= B={ctx.B}")
    out = ctx.one()
    for j in range(1, k + 1):
        out = out * oplus(y, ctx.b(j))
    return out


def _unit_power(p: Polynomial, e: int) -> Polynomial:
    return p**e if e >= 0 else unit_inverse(p) ** (-e)


def bialternant_numerator(ctx: RingContext, a: Sequence[int]) -> Polynomial:
    d = ctx.d
    a = check_index_vector(a, d)
    ks = levels(a)
    if max(ks) > ctx.B:
        raise ValueError(f"need B >= {max(ks)}, have B={ctx.B}")
    beta = ctx.beta()
    powers = {}
    m = []
    for i in range(1, d + 1):
        row = []
        for j in range(1, d + 1):
            xj = ctx.x(j)
            key = (j, ks[i - 1])
            if key not in powers:
                powers[key] = factorial_power(ctx, xj, ks[i - 1])
            row.append(powers[key] * (1 + beta * xj) ** (i - 1))
        m.append(row)
    return determinant(m)


def vandermonde(ctx: RingContext) -> Polynomial:
    out = ctx.one()
    for i in range(1, ctx.d + 1):
        for j in range(i + 1, ctx.d + 1):
            out = out * (ctx.x(i) - ctx.x(j))
    return out


def bialternant(ctx: RingContext, a: Sequence[int]) -> Polynomial:
    """G_a(x|b) as the alternant over the Vandermonde product."""
    out = bialternant_numerator(ctx, a)
    d = ctx.d
    # divide one linear factor at a time; NotDivisible here would be a bug
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            out = exact_div(out, ctx.x(i) - ctx.x(j))
    return out


def _g_shifted(ctx: RingContext, k: int, m: int, s: int, c: int) -> Polynomial:
    """c * beta^s * G_m^(k); only G_m^(k) mod beta^(N-s+1) matters here."""
    if s > ctx.N:
        return ctx.zero()
    g = g_coeff_graded(ctx, k, m)
    return g * (ctx.beta() ** s * c)


def _jt_matrix(ctx: RingContext, a: Sequence[int], upper, method: str) -> list[list[Polynomial]]:
    d = ctx.d
    a = check_index_vector(a, d)
    ks = levels(a)
    if max(ks) > ctx.B:
        raise ValueError(f"need B >= {max(ks)}, have B={ctx.B}")
    if method not in ("series", "literal"):
        raise ValueError(f"unknown method {method!r}")
    rows = []
    for i in range(1, d + 1):
        k = ks[i - 1]
        row = []
        for j in range(1, d + 1):
            n = upper(i, j)
            base = a[i - 1] + j - i
            if method == "series":
                # sum_s C(n,s) beta^s G_{base+s} is the u^base coefficient
                # of (1 + beta/u)^n G^(k)(u)
                row.append(_twisted(ctx, k, n).coeff(base))
                continue
            parts = []
            for s in range(ctx.N + 1):
                c = gen_binomial(n, s)
                if c:
                    parts.append(_g_shifted(ctx, k, base + s, s, c))
            row.append(polynomial_sum(ctx, parts))
        rows.append(row)
    return rows


_TWISTED: dict = {}


def _twisted(ctx: RingContext, k: int, n: int):
    key = (ctx, k, n)
    s = _TWISTED.get(key)
    if s is None:
        # entries only ever read coefficients up to u^k
        s = _TWISTED[key] = gk_series(ctx, k, k, twist=n)
    return s


def clear_cache() -> None:
    _TWISTED.clear()


def hm_matrix(ctx: RingContext, a: Sequence[int], method: str = "series") -> list[list[Polynomial]]:
    """Entries sum_s C(i-d, s) beta^s G_{a_i+j-i+s}^(a_i+d-i).

    ``method="literal"`` sums the one-row coefficients term by term;
    ``"series"`` reads the same sums off twisted generating series."""
    d = ctx.d
    return _jt_matrix(ctx, a, lambda i, j: i - d, method)


def himn_matrix(ctx: RingContext, a: Sequence[int], method: str = "series") -> list[list[Polynomial]]:
    """Entries sum_s C(i-j, s) beta^s G_{a_i+j-i+s}^(a_i+d-i)."""
    return _jt_matrix(ctx, a, lambda i, j: i - j, method)


def hm_determinant(ctx: RingContext, a: Sequence[int], method: str = "series") -> Polynomial:
    return determinant(hm_matrix(ctx, a, method))


def himn_determinant(ctx: RingContext, a: Sequence[int], method: str = "series") -> Polynomial:
    return determinant(himn_matrix(ctx, a, method))


def build_M(ctx: RingContext) -> list[list[Polynomial]]:
    """M_ij = (-1)^(d-i) e_{d-i}^(j)(x)."""
    d = ctx.d
    es = [e_series(ctx, j) for j in range(1, d + 1)]
    return [[es[j].coeff(d - i) * (-1) ** (d - i) for j in range(d)] for i in range(1, d + 1)]


def build_Mbar(ctx: RingContext) -> list[list[Polynomial]]:
    """Same shape as build_M with e_p^(j) taken at -bar(x)."""
    d = ctx.d
    es = [ebar_series(ctx, j) for j in range(1, d + 1)]
    return [[es[j].coeff(d - i) * (-1) ** (d - i) for j in range(d)] for i in range(1, d + 1)]


def _specialize(p: Polynomial, beta_value: int) -> Polynomial:
    ctx = p.ctx
    assignment = {f"b{j}": 0 for j in range(1, ctx.B + 1)}
    assignment["beta"] = beta_value
    return substitute(p, assignment)


def schur_specialize(p: Polynomial) -> Polynomial:
    """beta = 0 and all b = 0: the classical Schur limit."""
    return _specialize(p, 0)


def buch_specialize(p: Polynomial) -> Polynomial:
    """beta = -1 and all b = 0: Buch's Grothendieck polynomial."""
    return _specialize(p, -1)


def _ssyt(shape: tuple[int, ...], d: int):
    """Yield the content vectors of all semistandard tableaux of ``shape``
    with entries in 1..d, filling row by row."""
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    filling: dict[tuple[int, int], int] = {}

    def rec(idx):
        if idx == len(cells):
            content = [0] * d
            for v in filling.values():
                content[v - 1] += 1
            yield tuple(content)
            return
        r, c = cells[idx]
        low = 1
        if c > 0:
            low = max(low, filling[(r, c - 1)])
        if r > 0:
            low = max(low, filling[(r - 1, c)] + 1)
        for v in range(low, d + 1):
            filling[(r, c)] = v
            yield from rec(idx + 1)
        filling.pop((r, c), None)

    yield from rec(0)


def ssyt_schur_oracle(d: int, lam: Sequence[int], ctx: Optional[RingContext] = None) -> Polynomial:
    """Schur polynomial s_lambda(x_1..x_d) by brute-force tableau enumeration."""
    lam = tuple(p for p in partition(lam, d) if p)
    if ctx is None:
        ctx = RingContext(d)
    terms: dict[tuple, int] = {}
    zeros = (0,) * (ctx.B + 1)
    for content in _ssyt(lam, d):
        key = content + zeros
        terms[key] = terms.get(key, 0) + 1
    return Polynomial.from_terms(ctx, terms)


def partitions_in_box(d: int, max_part: int) -> list[tuple[int, ...]]:
    """All partitions with at most ``d`` parts, each at most ``max_part``,
    padded to length d, in reverse lexicographic order from the empty one."""
    out = [p for p in product(range(max_part + 1), repeat=d) if all(p[i] >= p[i + 1] for i in range(d - 1))]
    out.sort(key=lambda p: (sum(p), tuple(-v for v in p)))
    return out

import pytest
from hypothesis import given, settings, strategies as st

from gpjt.grothendieck import factorial_power, oplus
from gpjt.ring import RingContext, parse, unit_inverse
from gpjt.series import (
    LaurentSeries,
    WindowError,
    bar,
    e_series,
    ebar_series,
    g_coeff,
    g_coeff_graded,
    gen_binomial,
    gk_series,
    laurent_mul,
    shift_substitute,
)


def naive_gk(ctx, k, m_max):
    """Expand the closed form of G^(k)(u) term by term with dict products."""
    beta = ctx.beta()
    N = ctx.N

    def mul(f, g, top):
        out = {}
        for a, p in f.items():
            for b, q in g.items():
                if a + b <= top:
                    out[a + b] = out.get(a + b, ctx.zero()) + p * q
        return out

    top = m_max + N
    series = {-s: (-beta) ** s for s in range(N + 1)}
    for i in range(1, ctx.d + 1):
        xi = ctx.x(i)
        geo = {n: (1 + beta * xi) * xi**n for n in range(top + N + 1)}
        series = mul(series, geo, top)
    for j in range(1, k + 1):
        bj = ctx.b(j)
        series = mul(series, {0: 1 + beta * bj, 1: bj + ctx.zero()}, top)
    return {m: series.get(m, ctx.zero()) for m in range(-N, m_max + 1)}


def poly_series(ctx, lo, texts, finite=True):
    return LaurentSeries.from_coeffs(ctx, lo, [parse(ctx, t) for t in texts], finite)


# -- LaurentSeries and products -----------------------------------------------


def test_laurent_mul_examples():
    ctx = RingContext(1, 0, 2)
    x1 = ctx.x(1)
    f = LaurentSeries.from_coeffs(ctx, 0, [ctx.one(), x1], finite=True)
    g = LaurentSeries.from_coeffs(ctx, 0, [ctx.one(), -x1], finite=True)
    h = laurent_mul(f, g)
    assert [h.coeff(m) for m in range(4)] == [1, 0, -(x1**2), 0]
    one = LaurentSeries.constant(ctx.one())
    assert laurent_mul(f, one) == f


def test_laurent_mul_window_of_infinite_factor():
    ctx = RingContext(1, 0, 1)
    f = LaurentSeries.from_coeffs(ctx, -1, [ctx.one()] * 4)  # exact on [-1, 2]
    g = LaurentSeries.from_coeffs(ctx, 0, [ctx.one(), ctx.x(1)], finite=True)
    h = laurent_mul(f, g)
    assert (h.lo, h.hi, h.finite) == (-1, 2, False)
    with pytest.raises(WindowError):
        h.coeff(3)


def test_laurent_mul_context_mismatch():
    a = LaurentSeries.constant(RingContext(1, 0, 1).one())
    b = LaurentSeries.constant(RingContext(1, 0, 2).one())
    with pytest.raises(ValueError):
        laurent_mul(a, b)


# -- bar --------------------------------------------------------------------------


def test_bar_examples():
    ctx = RingContext(1, 0, 2)
    x1, beta = ctx.x(1), ctx.beta()
    assert bar(ctx, "x1") == -x1 + beta * x1**2 - beta**2 * x1**3
    assert bar(RingContext(1, 0, 0), "x1") == -RingContext(1, 0, 0).x(1)
    assert oplus(x1, bar(ctx, "x1")).is_zero()


@pytest.mark.parametrize("v", ["beta", "y1"])
def test_bar_rejects(v):
    with pytest.raises(ValueError):
        bar(RingContext(1, 1, 2), v)


def test_bar_quotient_is_oplus():
    ctx = RingContext(2, 2, 5)
    beta = ctx.beta()
    for j in (1, 2):
        bb = bar(ctx, f"b{j}")
        assert (ctx.x(1) - bb) * unit_inverse(1 + beta * bb) == oplus(ctx.x(1), ctx.b(j))


# -- G^(k)(u) ------------------------------------------------------------------------


def test_gk_small_examples():
    ctx = RingContext(1, 2, 3)
    g0 = gk_series(ctx, 0, 2)
    assert g0.coeff(0) == 1
    assert g0.coeff(-1) == -ctx.beta()
    g2 = gk_series(ctx, 2, 3)
    x1 = ctx.x(1)
    assert g2.coeff(2) == oplus(x1, ctx.b(1)) * oplus(x1, ctx.b(2))


@pytest.mark.parametrize("d,B,N,k,m_max", [(1, 2, 3, 2, 4), (2, 2, 3, 1, 3), (3, 1, 2, 1, 2), (2, 3, 4, 3, 5)])
def test_gk_matches_naive_expansion(d, B, N, k, m_max):
    ctx = RingContext(d, B, N)
    fast = gk_series(ctx, k, m_max)
    slow = naive_gk(ctx, k, m_max)
    assert (fast.lo, fast.hi) == (-N, m_max)
    for m in range(-N, m_max + 1):
        assert fast.coeff(m) == slow[m], m
    assert fast.coeff(-N - 1).is_zero()


def test_gk_rejects_bad_arguments():
    ctx = RingContext(1, 1, 2)
    with pytest.raises(ValueError):
        gk_series(ctx, 2, 1)
    with pytest.raises(ValueError):
        gk_series(ctx, 0, -3)


def test_g_coeff_examples():
    ctx = RingContext(1, 3, 4)
    assert g_coeff(RingContext(1, 0, 3), 0, 1) == RingContext(1, 0, 3).x(1)
    assert g_coeff(ctx, 2, -5).is_zero()
    for k in range(4):
        assert g_coeff(ctx, k, k) == factorial_power(ctx, ctx.x(1), k)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2), st.integers(0, 3), st.integers(-3, 4))
def test_window_stabilization(d, k, N, m):
    # larger m_max and larger N agree on the overlap
    ctx = RingContext(d, k, N)
    if m < -N:
        assert g_coeff(ctx, k, m).is_zero()
        return
    small = gk_series(ctx, k, max(m, -N))
    assert gk_series(ctx, k, max(m, -N) + 2).coeff(m) == small.coeff(m)
    wide = RingContext(d, k, N + 1)
    assert g_coeff(wide, k, m).with_context(ctx) == small.coeff(m)


def test_graded_and_twisted_series():
    ctx = RingContext(2, 2, 4)
    beta = ctx.beta()
    for k in range(3):
        full = gk_series(ctx, k, k + ctx.N + 2)
        for m in range(-ctx.N, k + ctx.N + 1):
            keep = ctx.N - max(0, m - k)
            assert g_coeff_graded(ctx, k, m) * beta ** (ctx.N - keep) == full.coeff(m) * beta ** (ctx.N - keep)
        for n in (-2, -1, 0, 1):
            tw = gk_series(ctx, k, k, twist=n)
            for m in range(-ctx.N, k + 1):
                expect = sum((full.coeff(m + s) * beta**s * gen_binomial(n, s) for s in range(ctx.N + 1)), ctx.zero())
                assert tw.coeff(m) == expect


# -- E^(j)(u) and its bar version ----------------------------------------------


def test_e_series_examples():
    ctx = RingContext(2, 0, 1)
    e = e_series(ctx, 1)
    assert (e.coeff(0), e.coeff(1), e.coeff(2)) == (1, ctx.x(2), 0)
    assert e_series(RingContext(1, 0, 1), 1) == LaurentSeries.constant(RingContext(1, 0, 1).one())
    eb = ebar_series(ctx, 1)
    assert eb.coeff(1) == ctx.x(2) - ctx.beta() * ctx.x(2) ** 2


def test_e_series_elementary_coefficients():
    ctx = RingContext(3, 0, 2)
    x1, x2, x3 = (ctx.x(i) for i in (1, 2, 3))
    e = e_series(ctx, 2)
    assert [e.coeff(p) for p in range(3)] == [1, x1 + x3, x1 * x3]


@pytest.mark.parametrize("j", [0, 3])
def test_e_series_index_range(j):
    with pytest.raises(ValueError):
        e_series(RingContext(2, 0, 1), j)
    with pytest.raises(ValueError):
        ebar_series(RingContext(2, 0, 1), j)


# -- substitutions ---------------------------------------------------------------


def test_shift_substitute_examples():
    ctx = RingContext(2, 0, 2)
    f = poly_series(ctx, 0, ["1", "1*x2"])
    assert shift_substitute(f, "-u") == poly_series(ctx, 0, ["1", "-1*x2"])
    sq = poly_series(ctx, 0, ["0", "0", "1"])
    beta = ctx.beta()
    out = shift_substitute(sq, "-u-beta")
    assert [out.coeff(m) for m in range(3)] == [beta**2, 2 * beta, 1]


def test_shift_substitute_ebar_constant_term():
    ctx = RingContext(2, 0, 1)
    out = shift_substitute(ebar_series(ctx, 1), "-u-beta")
    assert out.coeff(0) == 1 - ctx.beta() * ctx.x(2)


def test_shift_substitute_rejects_laurent_input():
    ctx = RingContext(1, 0, 1)
    f = poly_series(ctx, -1, ["1", "1"])
    with pytest.raises(ValueError):
        shift_substitute(f, "-u-beta")
    with pytest.raises(ValueError):
        shift_substitute(f, "u+1")


# -- generalized binomials -----------------------------------------------------


def test_gen_binomial_examples():
    assert gen_binomial(3, 2) == 3
    assert gen_binomial(-1, 2) == 1
    assert gen_binomial(-2, 3) == -4
    assert gen_binomial(5, -1) == 0


@given(st.integers(-20, 20), st.integers(-3, 20))
def test_gen_binomial_pascal(n, s):
    assert gen_binomial(n, s) == gen_binomial(n - 1, s - 1) + gen_binomial(n - 1, s)

"""Identity verification over parameter sweeps, with JSON reports."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import Any, Callable, Optional, Sequence

from . import grothendieck as gr
from .ring import Polynomial, RingContext, determinant, first_difference, serialize, unit_inverse
from .series import (
    LaurentSeries,
    bar,
    beta_inverse_tail,
    e_series,
    ebar_series,
    g_coeff,
    gen_binomial,
    geometric,
    gk_series,
    laurent_mul,
    shift_substitute,
)

__all__ = [
    "Check",
    "VerificationReport",
    "compare",
    "verify_theorem",
    "verify_theorem_sweep",
    "verify_corollary",
    "verify_proof_suite",
    "worker_count",
]

METHODS = ("bialternant", "hm", "himn")


@dataclass
class Check:
    name: str
    params: dict
    passed: bool
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        out = {"name": self.name, "params": self.params, "status": "pass" if self.passed else "fail"}
        if self.witness is not None:
            out["witness"] = self.witness
        return out

    @classmethod
    def from_json(cls, obj: dict) -> Check:
        return cls(obj["name"], obj["params"], obj["status"] == "pass", obj.get("witness"))


@dataclass
class VerificationReport:
    """Ordered list of checks plus the context they ran in.  ``errors`` holds
    parameter-validation messages; ``values`` keeps computed polynomials for
    callers and is not serialized."""

    context: Optional[dict]
    checks: list[Check] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    values: dict[str, Polynomial] = field(default_factory=dict, repr=False, compare=False)

    @property
    def ok(self) -> bool:
        return not self.errors and all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: VerificationReport) -> None:
        self.checks.extend(other.checks)
        self.errors.extend(other.errors)

    def to_json(self) -> dict:
        return {
            "context": self.context,
            "passed": self.ok,
            "checks": [c.to_json() for c in self.checks],
            "errors": list(self.errors),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, obj: dict) -> VerificationReport:
        return cls(obj["context"], [Check.from_json(c) for c in obj["checks"]], list(obj["errors"]))

    @classmethod
    def loads(cls, text: str) -> VerificationReport:
        return cls.from_json(json.loads(text))

    def summary(self) -> str:
        lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name} {json.dumps(c.params)}" for c in self.checks]
        lines += [f"ERROR {e}" for e in self.errors]
        n_fail = len(self.failures)
        lines.append(f"{len(self.checks) - n_fail}/{len(self.checks)} checks passed")
        return "\n".join(lines)


def _ctx_json(ctx: RingContext) -> dict:
    return {"d": ctx.d, "B": ctx.B, "N": ctx.N}


def _witness(lhs: Polynomial, rhs: Polynomial, where: Optional[str] = None) -> Optional[dict]:
    diff = first_difference(lhs, rhs)
    if diff is None:
        return None
    exps, cl, cr = diff
    mono = serialize(lhs.ctx.monomial(exps)).split("*", 1)
    w = {"monomial": mono[1] if len(mono) > 1 else "1", "lhs": str(cl), "rhs": str(cr)}
    if where is not None:
        w["where"] = where
    return w


def compare(name: str, params: dict, lhs: Polynomial, rhs: Polynomial, where: Optional[str] = None) -> Check:
    w = _witness(lhs, rhs, where)
    return Check(name, params, w is None, w)


def _compare_series(name: str, params: dict, lhs: LaurentSeries, rhs: LaurentSeries, window: range) -> Check:
    for m in window:
        w = _witness(lhs.coeff(m), rhs.coeff(m), f"u^{m}")
        if w is not None:
            return Check(name, params, False, w)
    return Check(name, params, True)


def _compare_matrices(name: str, params: dict, lhs, rhs) -> Check:
    for i, (rl, rr) in enumerate(zip(lhs, rhs), start=1):
        for j, (a, b) in enumerate(zip(rl, rr), start=1):
            w = _witness(a, b, f"entry ({i},{j})")
            if w is not None:
                return Check(name, params, False, w)
    return Check(name, params, True)


def worker_count() -> int:
    """Parallel workers for sweeps: GPJT_THREADS if set, else 1."""
    raw = os.environ.get("GPJT_THREADS")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _ordered_map(fn: Callable, items: Sequence, workers: int) -> list:
    # results come back in input order whatever the completion order
    if workers <= 1 or len(items) <= 1:
        return [fn(*it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, *zip(*items)))


# -- theorem ---------------------------------------------------------------------


def compute(ctx: RingContext, a: Sequence[int], method: str) -> Polynomial:
    if method == "bialternant":
        return gr.bialternant(ctx, a)
    if method == "hm":
        return gr.hm_determinant(ctx, a)
    if method == "himn":
        return gr.himn_determinant(ctx, a)
    raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")


def verify_theorem(
    d: int,
    a: Sequence[int],
    N: Optional[int] = None,
    stabilize: bool = True,
    partition_only: bool = False,
) -> VerificationReport:
    """Three-way equality of bi-alternant, HM and HIMN determinants for one
    index vector, plus agreement with a rerun at N+1 truncated back to N."""
    params: dict[str, Any] = {"d": d, "a": list(a)}
    try:
        if d < 1:
            raise ValueError(f"d must be >= 1, got {d}")
        a = gr.partition(a, d) if partition_only else gr.check_index_vector(a, d)
        ctx = gr.default_context(d, a, N)
    except ValueError as exc:
        return VerificationReport(None, errors=[str(exc)])
    params = {"d": d, "a": list(a), "N": ctx.N}
    report = VerificationReport(_ctx_json(ctx))
    vals = {m: compute(ctx, a, m) for m in METHODS}
    report.values = dict(vals)
    report.add(compare("theorem.hm=bialternant", params, vals["hm"], vals["bialternant"]))
    report.add(compare("theorem.himn=bialternant", params, vals["himn"], vals["bialternant"]))
    report.add(compare("theorem.hm=himn", params, vals["hm"], vals["himn"]))
    if stabilize:
        up = RingContext(ctx.d, ctx.B, ctx.N + 1)
        for m in METHODS:
            wider = compute(up, a, m)
            report.values[f"{m}@N+1"] = wider
            report.add(compare(f"stabilization.{m}", params, wider.with_context(ctx), vals[m]))
    return report


def _theorem_job(d, a, N, stabilize):
    return verify_theorem(d, a, N, stabilize)


def verify_theorem_sweep(
    d: int, max_part: int, stabilize: bool = True, workers: Optional[int] = None
) -> VerificationReport:
    """verify_theorem over every partition with at most d parts, each at most
    ``max_part``, in a fixed order."""
    lams = gr.partitions_in_box(d, max_part)
    jobs = [(d, lam, None, stabilize) for lam in lams]
    parts = _ordered_map(_theorem_job, jobs, worker_count() if workers is None else workers)
    report = VerificationReport({"d": d, "max_part": max_part})
    for lam, r in zip(lams, parts):
        report.extend(r)
        for key, val in r.values.items():
            report.values[f"{','.join(map(str, lam))}:{key}"] = val
    return report


def verify_corollary(d: int, k: int) -> VerificationReport:
    """G_(k,0,...,0) by the bi-alternant against the single coefficient
    G_k^(k+d-1)."""
    a = (k,) + (0,) * (d - 1)
    ctx = gr.default_context(d, a)
    lhs = gr.bialternant(ctx, a)
    rhs = g_coeff(ctx, k + d - 1, k)
    report = VerificationReport(_ctx_json(ctx))
    report.values = {"bialternant": lhs, "g_coeff": rhs}
    report.add(compare("corollary.single_row", {"d": d, "k": k, "N": ctx.N}, lhs, rhs))
    return report


# -- proof identities --------------------------------------------------------------


def _unit_power(p: Polynomial, e: int) -> Polynomial:
    return p**e if e >= 0 else unit_inverse(p) ** (-e)


def _b_part(ctx: RingContext, k: int) -> LaurentSeries:
    """prod_{l<=k} (1 - bbar_l u) / (1 + beta bbar_l)."""
    beta = ctx.beta()
    out = LaurentSeries.constant(ctx.one())
    for l in range(1, k + 1):
        bb = bar(ctx, f"b{l}")
        scale = unit_inverse(1 + beta * bb)
        out = laurent_mul(out, LaurentSeries.from_coeffs(ctx, 0, [scale, -bb * scale], finite=True))
    return out


def _index_vectors(d: int, k_max: int):
    """Every a with 0 <= a_i + d - i <= k_max."""
    for ks in product(range(k_max + 1), repeat=d):
        yield tuple(k - d + i for i, k in enumerate(ks, start=1))


def verify_proof_suite(d: int, k_max: int, N: int) -> VerificationReport:
    """Every intermediate identity used by the two determinant proofs, for
    all j in 1..d and k in 0..k_max."""
    try:
        if d < 1 or k_max < 0 or N < 0:
            raise ValueError(f"need d >= 1, k_max >= 0, N >= 0; got d={d}, k_max={k_max}, N={N}")
        ctx = RingContext(d, k_max, N)
    except ValueError as exc:
        return VerificationReport(None, errors=[str(exc)])
    report = VerificationReport(_ctx_json(ctx))
    beta = ctx.beta()
    xs = [ctx.x(i) for i in range(1, d + 1)]
    units = [1 + beta * x for x in xs]
    all_units = ctx.one()
    for u in units:
        all_units = all_units * u
    tail = beta_inverse_tail(ctx)

    for j in range(1, d + 1):
        xj = xs[j - 1]
        ep = e_series(ctx, j)
        ebar = ebar_series(ctx, j)
        others = ctx.one()
        for i, u in enumerate(units, start=1):
            if i != j:
                others = others * u
        for k in range(k_max + 1):
            m_top = k + 3
            params = {"j": j, "k": k}
            gk = gk_series(ctx, k, m_top)
            # right sides are expanded from the closed forms, independently of gk_series
            geo = geometric(ctx, xj, m_top + N)
            bpart = _b_part(ctx, k)
            window = range(-N, m_top + 1)

            lhs4 = laurent_mul(gk, shift_substitute(ep, "-u"))
            rhs4 = laurent_mul(laurent_mul(tail, geo.scale(all_units)), bpart)
            report.add(_compare_series("eq4.series", params, lhs4, rhs4, window))

            lhs6 = laurent_mul(gk, shift_substitute(ebar, "-u-beta"))
            rhs6 = laurent_mul(laurent_mul(tail, geo.scale(units[j - 1])), bpart)
            report.add(_compare_series("eq6.series", params, lhs6, rhs6, window))

            fp = gr.factorial_power(ctx, xj, k)
            for m in range(k, k + 4):
                mp = {"j": j, "k": k, "m": m}
                lhs5 = ctx.zero()
                for p in range(d):
                    lhs5 = lhs5 + g_coeff(ctx, k, m - p) * ep.coeff(p) * (-1) ** p
                report.add(compare("eq5.coefficient", mp, lhs5, xj ** (m - k) * fp * others))

                lhs7 = ctx.zero()
                for p in range(d):
                    inner = ctx.zero()
                    for s in range(p + 1):
                        inner = inner + g_coeff(ctx, k, m - p + s) * (beta**s * gen_binomial(p, s))
                    lhs7 = lhs7 + inner * ebar.coeff(p) * (-1) ** p
                report.add(compare("eq7.coefficient", mp, lhs7, xj ** (m - k) * fp))

        for l in range(1, k_max + 1):
            bb = bar(ctx, f"b{l}")
            lhs = (xj - bb) * unit_inverse(1 + beta * bb)
            report.add(compare("oplus.bar_quotient", {"j": j, "l": l}, lhs, gr.oplus(xj, ctx.b(l))))

    vdm = gr.vandermonde(ctx)
    M = gr.build_M(ctx)
    Mbar = gr.build_Mbar(ctx)
    report.add(compare("detM.vandermonde", {"d": d}, determinant(M), vdm))
    inv = ctx.one()
    for u in units:
        inv = inv * _unit_power(u, 1 - d)
    report.add(compare("detMbar.evaluation", {"d": d}, determinant(Mbar), inv * vdm))

    for a in _index_vectors(d, k_max):
        ks = gr.levels(a)
        params = {"a": list(a)}
        H = gr.hm_matrix(ctx, a, method="literal")
        Hp = gr.himn_matrix(ctx, a, method="literal")
        HM = _matmul(H, M)
        HpMbar = _matmul(Hp, Mbar)
        exp_HM = []
        exp_HpMbar = []
        for i in range(1, d + 1):
            row1, row2 = [], []
            for jj in range(1, d + 1):
                fp = gr.factorial_power(ctx, xs[jj - 1], ks[i - 1])
                row1.append(fp * _unit_power(units[jj - 1], i - d - 1) * all_units)
                row2.append(fp * _unit_power(units[jj - 1], i - 1) * _unit_power(units[jj - 1], 1 - d))
            exp_HM.append(row1)
            exp_HpMbar.append(row2)
        report.add(_compare_matrices("HM.entries", params, HM, exp_HM))
        report.add(_compare_matrices("HprimeMbar.entries", params, HpMbar, exp_HpMbar))

    for i in range(1, d + 1):
        for p in range(d):
            witness = None
            for s in range(N + 1):
                lhs = gen_binomial(i - d + p, s)
                rhs = sum(gen_binomial(i - d, l) * gen_binomial(p, s - l) for l in range(s + 1))
                if lhs != rhs:
                    witness = {"monomial": "1", "lhs": str(lhs), "rhs": str(rhs), "where": f"s={s}"}
                    break
            report.add(Check("binomial.convolution", {"i": i, "p": p, "s_max": N}, witness is None, witness))
    return report


def _matmul(A, B):
    n = len(A)
    ctx = A[0][0].ctx
    out = []
    for i in range(n):
        row = []
        for j in range(len(B[0])):
            acc = ctx.zero()
            for t in range(len(B)):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out

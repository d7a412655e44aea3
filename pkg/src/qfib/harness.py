"""Identity catalog and verification harness.

Every identity or conjecture is registered as an IdentityEntry whose
builder maps concrete parameters to a single exact residual; a zero
residual certifies that instance.  Identities stated with polynomial-ratio
coefficients are cleared first: each summand is multiplied by the product
of the *other* denominators, and the common numerator is multiplied back in
only when the sum is nonzero (when the sum vanishes the product does too,
so the returned residual is the fully cleared form either way).

Determinant identities also expose their two sides (determinant side,
closed-form side) so the monomial fitter can recover a correction factor
when a closed form's prefactor is in doubt; entries flagged fit_default attempt
the fit automatically whenever a sweep enables fitting.

All prefactor exponents that are written with fractional bases are
accumulated as exact rationals and asserted integral before any monomial is
built; a non-integral total is an entry-level error, never a silent
rounding.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .matrices import PolyMatrix
from .poly import ONE, Poly, ZERO, monomial
from .qcomb import (
    Fac,
    binom_product,
    fac,
    fibonomial,
    qfibonomial_ell_parts,
    qfibonomial_parts,
)
from .sequences import TruncatedSeries, fib, gf_truncated, lucas, qfib, transform_T

__all__ = [
    "IdentityEntry",
    "CellResult",
    "VerificationReport",
    "MonomialCorrection",
    "NotProportional",
    "NonIntegralExponent",
    "BadParams",
    "CATALOG",
    "residual",
    "sides",
    "fit_monomial_correction",
    "sweep",
    "det_table",
    "REPORT_SCHEMA_VERSION",
]

REPORT_SCHEMA_VERSION = "1"


class NotProportional(ValueError):
    """The two polynomials do not differ by a signed monomial."""


class NonIntegralExponent(ArithmeticError):
    """A prefactor exponent came out non-integral for these parameters."""


class BadParams(ValueError):
    """Parameters outside an identity's signature."""


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _int_exp(value: Fraction) -> int:
    if value.denominator != 1:
        raise NonIntegralExponent(f"exponent {value} is not an integer")
    return value.numerator


def _prod(polys) -> Poly:
    total = ONE
    for p in polys:
        total = total * p
    return total


def _cleared_sum(num: Poly, dens: list[Poly], coeffs: list[Poly], tails: list[Poly]) -> Poly:
    """sum_j coeffs[j] * (num / dens[j]) * tails[j], multiplied through by
    prod(dens); the common numerator is folded in only when needed."""
    m = len(dens)
    pre = [ONE] * (m + 1)
    for i in range(m):
        pre[i + 1] = pre[i] * dens[i]
    suf = [ONE] * (m + 1)
    for i in range(m - 1, -1, -1):
        suf[i] = suf[i + 1] * dens[i]
    total = ZERO
    for j in range(m):
        total = total + coeffs[j] * (pre[j] * suf[j + 1]) * tails[j]
    if total.is_zero():
        return ZERO
    return num * total


# --------------------------------------------------------------------------
# residual builders


def power_rec_classical(n: int, k: int) -> Poly:
    """Recurrence for k-th powers of Fibonacci polynomials:
    sum_j (-1)^C(j+1,2) s^C(j,2) <k+1, j> F(n-j)^k."""
    if k < 1:
        raise BadParams("power_rec_classical needs k >= 1")
    total = ZERO
    for j in range(k + 2):
        coeff = monomial(_sign(j * (j + 1) // 2), es=j * (j - 1) // 2)
        total = total + coeff * fibonomial(k + 1, j) * fib(n - j) ** k
    return total


def squares_classical(n: int) -> Poly:
    """F(n)^2 - 2F(n-1)^2 - 2F(n-2)^2 + F(n-3)^2 at x = s = 1."""
    vals = [int(fib(n - j).evaluate(x=1, s=1)) for j in range(4)]
    return Poly(vals[0] ** 2 - 2 * vals[1] ** 2 - 2 * vals[2] ** 2 + vals[3] ** 2)


def _conj1_terms(n: int, k: int) -> tuple[Poly, list[Poly], list[Poly], list[Poly]]:
    if k < 1:
        raise BadParams("conj1_f needs k >= 1")
    kk = k + 1
    num, _ = qfibonomial_parts(kk, 0)
    dens = [qfibonomial_parts(kk, j)[1] for j in range(kk + 1)]
    coeffs = []
    tails = []
    for j in range(kk + 1):
        qexp = _int_exp(Fraction(j * (j - 1) * (2 * j - 1), 6))
        coeffs.append(
            monomial(_sign(j * (j + 1) // 2), es=j * (j - 1) // 2, eq=qexp)
        )
        tails.append(qfib(n - j, shift=j) ** k)
    return num, dens, coeffs, tails


def conj1_f(n: int, k: int) -> Poly:
    """Power recurrence for q-Fibonacci polynomials with shifted arguments
    f(n-j, x, q^j s)^k and q-fibonomial coefficients, denominators cleared."""
    return _cleared_sum(*_conj1_terms(n, k))


def conj1_fibo(n: int, k: int) -> Poly:
    """The equivalent plain-argument form, obtained by transporting the
    shifted-argument residual through q -> 1/q, s -> q^(n-1) s."""
    return transform_T(conj1_f(n, k), n)


def euler_cassini(n: int, k: int) -> Poly:
    """q-Euler-Cassini: f(k-1,qs) f(n+k,s) - f(k,s) f(n+k-1,qs)
    - (-1)^k q^C(k,2) s^(k-1) f(n, q^k s)."""
    if k < 1:
        raise BadParams("euler_cassini needs k >= 1")
    lhs, rhs = _euler_cassini_sides(n, k)
    return lhs - rhs


def _euler_cassini_sides(n: int, k: int) -> tuple[Poly, Poly]:
    lhs = qfib(k - 1, shift=1) * qfib(n + k) - qfib(k) * qfib(n + k - 1, shift=1)
    rhs = monomial(_sign(k), es=k - 1, eq=k * (k - 1) // 2) * qfib(n, shift=k)
    return lhs, rhs


def basis_decomp(n: int, k: int) -> Poly:
    """v(k) f(n-k, q^k s) - f(k-1,qs) f(n,s) + f(k,s) f(n-1,qs), with
    v(k) = (-1)^k q^C(k,2) s^(k-1)."""
    if k < 1:
        raise BadParams("basis_decomp needs k >= 1")
    v = monomial(_sign(k), es=k - 1, eq=k * (k - 1) // 2)
    return v * qfib(n - k, shift=k) - qfib(k - 1, shift=1) * qfib(n) + qfib(k) * qfib(
        n - 1, shift=1
    )


def _conj2_terms(n: int, k: int, ell: int):
    if k < 1 or ell < 1:
        raise BadParams("conj2 needs k >= 1 and ell >= 1")
    kk = k + 1
    num, _ = qfibonomial_ell_parts(kk, 0, ell)
    dens = [qfibonomial_ell_parts(kk, j, ell)[1] for j in range(kk + 1)]
    coeffs = []
    tails = []
    for j in range(kk + 1):
        cj2 = j * (j - 1) // 2
        qexp = _int_exp(Fraction(ell * cj2 * ((4 * j + 1) * ell - 3), 6))
        coeffs.append(monomial(_sign(j + ell * cj2), es=ell * cj2, eq=qexp))
        tails.append(qfib(ell * (n - j), shift=ell * j) ** k)
    return num, dens, coeffs, tails


def conj2(n: int, k: int, ell: int) -> Poly:
    """Stride-ell power recurrence on the subsequence f(ell*n), with
    stride-ell q-fibonomial coefficients; denominators cleared."""
    return _cleared_sum(*_conj2_terms(n, k, ell))


def _threeterm_ell_terms(n: int, ell: int) -> tuple[Poly, Poly, Poly]:
    if ell < 1:
        raise BadParams("threeterm_ell needs ell >= 1")
    t0 = qfib(ell, shift=ell) * qfib(ell * n)
    t1 = -(qfib(2 * ell) * qfib(ell * (n - 1), shift=ell))
    qexp = _int_exp(Fraction(ell * (3 * ell - 1), 2))
    t2 = monomial(_sign(ell), es=ell, eq=qexp) * qfib(ell) * qfib(
        ell * (n - 2), shift=2 * ell
    )
    return t0, t1, t2


def threeterm_ell(n: int, ell: int) -> Poly:
    """Three-term recurrence for f(ell*n), cleared by f(ell, q^ell s)."""
    t0, t1, t2 = _threeterm_ell_terms(n, ell)
    return t0 + t1 + t2


def _threeterm_classical_terms(n: int, ell: int) -> tuple[Poly, Poly, Poly]:
    if ell < 1:
        raise BadParams("threeterm_classical needs ell >= 1")
    return (
        fib(ell * n),
        -(lucas(ell) * fib(ell * (n - 1))),
        monomial(_sign(ell), es=ell) * fib(ell * (n - 2)),
    )


def threeterm_classical(n: int, ell: int) -> Poly:
    """F(ell n) - L(ell) F(ell(n-1)) + (-s)^ell F(ell(n-2))."""
    t0, t1, t2 = _threeterm_classical_terms(n, ell)
    return t0 + t1 + t2


def _gen_cassini_sides(N: int, m: int, ell: int) -> tuple[Poly, Poly]:
    if ell < 1 or m < 0:
        raise BadParams("gen_cassini needs ell >= 1 and m >= 0")
    det = PolyMatrix(
        [
            [qfib(N + (m + 1) * ell), qfib((m + 1) * ell)],
            [qfib(N + m * ell, shift=ell), qfib(m * ell, shift=ell)],
        ]
    ).det()
    qexp = _int_exp(Fraction(m * ell * ((m + 2) * ell - 1), 2))
    closed = monomial(_sign(m * ell - 1), es=m * ell, eq=qexp) * qfib(ell) * qfib(
        N, shift=(m + 1) * ell
    )
    return det, closed


def gen_cassini(N: int, m: int, ell: int) -> Poly:
    """Generalized two-row Cassini determinant for strided, shifted
    q-Fibonacci values minus its closed form."""
    det, closed = _gen_cassini_sides(N, m, ell)
    return det - closed


def gf_limit(k: int, s_order: int = 8, q_order: int = 12) -> TruncatedSeries:
    """Limit form of the q-Euler-Cassini identity for the x = 1 generating
    function F(s), checked modulo (s^s_order, q^q_order)."""
    if k < 1:
        raise BadParams("gf_limit needs k >= 1")
    F = gf_truncated(s_order, q_order)
    first = F.mul_poly(qfib(k - 1, shift=1).subst_x_one())
    second = F.scale_s(1).mul_poly(qfib(k).subst_x_one())
    third = F.scale_s(k).mul_poly(
        monomial(_sign(k), es=k - 1, eq=k * (k - 1) // 2)
    )
    return first - second - third


def conj2_k2(n: int, ell: int) -> Poly:
    """The k = 2 case of the stride-ell power recurrence, cleared by the
    product of its three distinct denominators."""
    if ell < 1:
        raise BadParams("conj2_k2 needs ell >= 1")
    d1 = qfib(ell, shift=ell)
    d2 = qfib(2 * ell, shift=ell)
    d3 = qfib(ell, shift=2 * ell)
    t0 = d1 * d2 * d3 * qfib(ell * n) ** 2
    t1 = -(qfib(3 * ell) * qfib(2 * ell) * d3 * qfib(ell * (n - 1), shift=ell) ** 2)
    q2 = _int_exp(Fraction(ell * (3 * ell - 1), 2))
    t2 = (
        monomial(_sign(ell), es=ell, eq=q2)
        * qfib(3 * ell)
        * qfib(ell)
        * d2
        * qfib(ell * (n - 2), shift=2 * ell) ** 2
    )
    q3 = _int_exp(Fraction(ell * (13 * ell - 3), 2))
    t3 = (
        monomial(_sign(ell - 1), es=3 * ell, eq=q3)
        * qfib(ell)
        * qfib(2 * ell)
        * d1
        * qfib(ell * (n - 3), shift=3 * ell) ** 2
    )
    return t0 + t1 + t2 + t3


def _cassini_classical_sides(n: int) -> tuple[Poly, Poly]:
    det = PolyMatrix([[fib(n), fib(n - 1)], [fib(n + 1), fib(n)]]).det()
    return det, monomial(_sign(n - 1), es=n - 1)


def cassini_classical(n: int) -> Poly:
    """Cassini with the s generalization: det = (-1)^(n-1) s^(n-1)."""
    det, closed = _cassini_classical_sides(n)
    return det - closed


def _det_power_classical_sides(n: int, k: int) -> tuple[Poly, Poly]:
    if k < 1:
        raise BadParams("det_power_classical needs k >= 1")
    det = PolyMatrix(
        [[fib(n + i - j) ** k for j in range(k + 1)] for i in range(k + 1)]
    ).det()
    ck2 = k * (k + 1) // 2
    closed = monomial(
        _sign(ck2 * (n - k)) * binom_product(k),
        es=ck2 * (n - k) + 2 * comb(k + 1, 3),
    ) * _prod(Fac(k - j) ** 2 for j in range(k))
    return det, closed


def det_power_classical(n: int, k: int) -> Poly:
    """det(F(n+i-j)^k) minus its product closed form."""
    det, closed = _det_power_classical_sides(n, k)
    return det - closed


def _q_cassini_sides(n: int) -> tuple[Poly, Poly]:
    det = PolyMatrix(
        [[qfib(n), qfib(n - 1, shift=1)], [qfib(n + 1), qfib(n, shift=1)]]
    ).det()
    return det, monomial(_sign(n - 1), es=n - 1, eq=n * (n - 1) // 2)


def q_cassini(n: int) -> Poly:
    """q-Cassini: d(n, s) = (-1)^(n-1) q^C(n,2) s^(n-1)."""
    det, closed = _q_cassini_sides(n)
    return det - closed


def _det_sq_q_sides(n: int) -> tuple[Poly, Poly]:
    det = PolyMatrix(
        [[qfib(n + i - j, shift=j) ** 2 for j in range(3)] for i in range(3)]
    ).det()
    qexp = _int_exp(Fraction((n + 1) * (3 * n - 4), 2))
    closed = monomial(2 * _sign(n), ex=2, es=3 * n - 4, eq=qexp)
    return det, closed


def det_sq_q(n: int) -> Poly:
    """3x3 determinant of squared shifted q-Fibonacci values minus
    2 (-1)^n x^2 s^(3n-4) q^((n+1)(3n-4)/2)."""
    det, closed = _det_sq_q_sides(n)
    return det - closed


def _conj3_sides(n: int, k: int) -> tuple[Poly, Poly]:
    if k < 1:
        raise BadParams("conj3 needs k >= 1")
    det = PolyMatrix(
        [[qfib(n + i - j, shift=j) ** k for j in range(k + 1)] for i in range(k + 1)]
    ).det()
    ck2 = k * (k + 1) // 2
    e = ck2 * (n - k) + 2 * comb(k + 1, 3)
    qexp = _int_exp(Fraction((n + k - 1) * e, 2))
    closed = (
        monomial(_sign(ck2 * (n - k)) * binom_product(k), es=e, eq=qexp)
        * _prod(fac(k - j, shift=j) for j in range(k))
        * _prod(fac(k - j, shift=n + j) for j in range(k))
    )
    return det, closed


def conj3(n: int, k: int) -> Poly:
    """det(f(n+i-j, q^j s)^k) minus the conjectured product closed form."""
    det, closed = _conj3_sides(n, k)
    return det - closed


def _conj4_sides(n: int, k: int, ell: int) -> tuple[Poly, Poly]:
    if k < 1 or ell < 1:
        raise BadParams("conj4 needs k >= 1 and ell >= 1")
    det = PolyMatrix(
        [
            [qfib(ell * (n + i - j), shift=ell * j) ** k for j in range(k + 1)]
            for i in range(k + 1)
        ]
    ).det()
    ck2 = k * (k + 1) // 2
    e = ck2 * (n - k) + 2 * comb(k + 1, 3)
    qexp = _int_exp(Fraction((ell * (n + k) - 1) * ell * e, 2))
    closed = (
        monomial(_sign(ell * ck2 * (n - k)) * binom_product(k), es=ell * e, eq=qexp)
        * _prod(fac(k - j, shift=ell * j, ell=ell) for j in range(k))
        * _prod(fac(k - j, shift=ell * (n + j), ell=ell) for j in range(k))
    )
    return det, closed


def conj4(n: int, k: int, ell: int) -> Poly:
    """Stride-ell version of the shifted power determinant identity."""
    det, closed = _conj4_sides(n, k, ell)
    return det - closed


def _conj4_k1_sides(n: int, ell: int) -> tuple[Poly, Poly]:
    if ell < 1:
        raise BadParams("conj4_k1 needs ell >= 1")
    det = PolyMatrix(
        [
            [qfib(n * ell), qfib((n - 1) * ell, shift=ell)],
            [qfib((n + 1) * ell), qfib(n * ell, shift=ell)],
        ]
    ).det()
    e = (n - 1) * ell
    qexp = _int_exp(Fraction((ell * (n + 1) - 1) * e, 2))
    closed = monomial(_sign(e), es=e, eq=qexp) * qfib(ell) * qfib(ell, shift=n * ell)
    return det, closed


def conj4_k1(n: int, ell: int) -> Poly:
    """Simplest stride-ell determinant case (k = 1)."""
    det, closed = _conj4_k1_sides(n, ell)
    return det - closed


def _conj4_k2_sides(n: int, ell: int) -> tuple[Poly, Poly]:
    if ell < 1:
        raise BadParams("conj4_k2 needs ell >= 1")
    det = PolyMatrix(
        [
            [qfib(ell * (n + i - j), shift=ell * j) ** 2 for j in range(3)]
            for i in range(3)
        ]
    ).det()
    e = ell * (3 * n - 4)
    qexp = _int_exp(Fraction((ell * (n + 2) - 1) * e, 2))
    closed = (
        monomial(2 * _sign(n * ell), es=e, eq=qexp)
        * qfib(2 * ell)
        * qfib(2 * ell, shift=n * ell)
        * qfib(ell)
        * qfib(ell, shift=ell)
        * qfib(ell, shift=n * ell)
        * qfib(ell, shift=(n + 1) * ell)
    )
    return det, closed


def conj4_k2(n: int, ell: int) -> Poly:
    """The 3x3 stride-ell squared determinant case (k = 2)."""
    det, closed = _conj4_k2_sides(n, ell)
    return det - closed


def _det_classical_ell_sides(n: int, k: int, ell: int) -> tuple[Poly, Poly]:
    if k < 1 or ell < 1:
        raise BadParams("det_classical_ell needs k >= 1 and ell >= 1")
    det = PolyMatrix(
        [
            [fib(ell * (n + i - j)) ** k for j in range(k + 1)]
            for i in range(k + 1)
        ]
    ).det()
    ck2 = k * (k + 1) // 2
    e = ck2 * (n - k) + 2 * comb(k + 1, 3)
    closed = monomial(
        _sign(ell * ck2 * (n - k)) * binom_product(k), es=ell * e
    ) * _prod(Fac(k - j, ell) ** 2 for j in range(k))
    return det, closed


def det_classical_ell(n: int, k: int, ell: int) -> Poly:
    """q = 1 stride-ell power determinant minus its closed form."""
    det, closed = _det_classical_ell_sides(n, k, ell)
    return det - closed


def det_table(max_k: int) -> dict[int, Poly]:
    """The shifted power determinants det(f(k+i-j, q^j s)^k) at n = k,
    keyed by k = 1..max_k."""
    if max_k < 1:
        raise BadParams("det_table needs max_k >= 1")
    out = {}
    for k in range(1, max_k + 1):
        out[k] = PolyMatrix(
            [[qfib(k + i - j, shift=j) ** k for j in range(k + 1)] for i in range(k + 1)]
        ).det()
    return out


# --------------------------------------------------------------------------
# fitter


@dataclass(frozen=True)
class MonomialCorrection:
    """A signed monomial c * x^ex s^es q^eq z^ez with c in {+1, -1}."""

    sign: int
    ex: int = 0
    es: int = 0
    eq: int = 0
    ez: int = 0

    def as_poly(self) -> Poly:
        return monomial(self.sign, self.ex, self.es, self.eq, self.ez)

    def __str__(self) -> str:
        mono = monomial(1, self.ex, self.es, self.eq, self.ez)
        return ("+" if self.sign > 0 else "-") + mono.to_canonical_string()


def fit_monomial_correction(lhs: Poly, rhs: Poly) -> MonomialCorrection:
    """Find the unique signed monomial with lhs = sign * monomial * rhs, or
    raise NotProportional."""
    if lhs.is_zero() or rhs.is_zero():
        raise ValueError("fit_monomial_correction needs nonzero inputs")
    if len(lhs) != len(rhs):
        raise NotProportional("term counts differ")
    lt_l = max(lhs._t)
    lt_r = max(rhs._t)
    cl, cr = lhs._t[lt_l], rhs._t[lt_r]
    if abs(cl) != abs(cr):
        raise NotProportional("leading coefficients differ by more than a sign")
    sign = 1 if (cl > 0) == (cr > 0) else -1
    delta = lt_l - lt_r
    for k, c in rhs._t.items():
        if lhs._t.get(k + delta) != sign * c:
            raise NotProportional("terms do not map onto each other")
    from .poly import _unpack, _ZKEY  # packed-key helpers

    ex, es, eq, ez = _unpack(delta + _ZKEY)
    return MonomialCorrection(sign, ex, es, eq, ez)


# --------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class IdentityEntry:
    id: str
    params: tuple[str, ...]
    builder: object
    grid_spec: dict
    valid: object = None
    sides: object = None
    fit_default: bool = False
    summary: str = ""

    def cells(self, overrides: dict | None = None) -> list[dict]:
        """Parameter grid as a deterministic list of param dicts."""
        overrides = overrides or {}
        axes = []
        for p in self.params:
            lo, hi = overrides.get(p, self.grid_spec[p])
            axes.append([(p, v) for v in range(lo, hi + 1)])
        cells = [{}]
        for axis in axes:
            cells = [dict(c, **{p: v}) for c in cells for (p, v) in axis]
        if self.valid is not None:
            cells = [c for c in cells if self.valid(**c)]
        return cells


def _entry(id, params, builder, grid, valid=None, sides=None, fit_default=False, summary=""):
    return IdentityEntry(id, params, builder, grid, valid, sides, fit_default, summary)


CATALOG: dict[str, IdentityEntry] = {
    e.id: e
    for e in [
        _entry(
            "power_rec_classical",
            ("k", "n"),
            power_rec_classical,
            {"k": (1, 4), "n": (3, 12)},
            valid=lambda k, n: n >= k + 2,
            summary="power recurrence for F(n)^k",
        ),
        _entry(
            "squares_classical",
            ("n",),
            squares_classical,
            {"n": (3, 30)},
            summary="Fibonacci squares recurrence at x=s=1",
        ),
        _entry(
            "conj1_f",
            ("k", "n"),
            conj1_f,
            {"k": (2, 3), "n": (-3, 8)},
            summary="q power recurrence, shifted arguments",
        ),
        _entry(
            "conj1_fibo",
            ("k", "n"),
            conj1_fibo,
            {"k": (2, 3), "n": (-3, 8)},
            summary="q power recurrence, plain arguments (transform image)",
        ),
        _entry(
            "euler_cassini",
            ("k", "n"),
            euler_cassini,
            {"k": (1, 6), "n": (-4, 8)},
            sides=_euler_cassini_sides,
            summary="q-Euler-Cassini two-product identity",
        ),
        _entry(
            "basis_decomp",
            ("k", "n"),
            basis_decomp,
            {"k": (1, 6), "n": (-4, 8)},
            summary="f(n-k, q^k s) in the f(n), f(n-1, qs) basis",
        ),
        _entry(
            "conj2",
            ("k", "ell", "n"),
            conj2,
            {"k": (1, 2), "ell": (1, 3), "n": (3, 7)},
            summary="stride-ell q power recurrence",
        ),
        _entry(
            "threeterm_ell",
            ("ell", "n"),
            threeterm_ell,
            {"ell": (1, 4), "n": (3, 8)},
            summary="three-term recurrence for f(ell n)",
        ),
        _entry(
            "threeterm_classical",
            ("ell", "n"),
            threeterm_classical,
            {"ell": (1, 4), "n": (3, 8)},
            summary="classical three-term recurrence for F(ell n)",
        ),
        _entry(
            "gen_cassini",
            ("N", "ell", "m"),
            gen_cassini,
            {"N": (-3, 6), "ell": (1, 3), "m": (0, 3)},
            sides=_gen_cassini_sides,
            summary="generalized strided Cassini determinant",
        ),
        _entry(
            "gf_limit",
            ("k",),
            gf_limit,
            {"k": (1, 4)},
            summary="limit Euler-Cassini identity for F(s) mod (s^8, q^12)",
        ),
        _entry(
            "conj2_k2",
            ("ell", "n"),
            conj2_k2,
            {"ell": (1, 3), "n": (4, 7)},
            summary="k=2 case of the stride-ell power recurrence",
        ),
        _entry(
            "cassini_classical",
            ("n",),
            cassini_classical,
            {"n": (1, 10)},
            sides=_cassini_classical_sides,
            summary="Cassini determinant with s generalization",
        ),
        _entry(
            "det_power_classical",
            ("k", "n"),
            det_power_classical,
            {"k": (1, 2), "n": (1, 6)},
            valid=lambda k, n: n >= k,
            sides=_det_power_classical_sides,
            summary="classical power determinant closed form",
        ),
        _entry(
            "q_cassini",
            ("n",),
            q_cassini,
            {"n": (1, 12)},
            sides=_q_cassini_sides,
            summary="q-Cassini determinant",
        ),
        _entry(
            "det_sq_q",
            ("n",),
            det_sq_q,
            {"n": (2, 8)},
            sides=_det_sq_q_sides,
            summary="3x3 squared q determinant closed form",
        ),
        _entry(
            "conj3",
            ("k", "n"),
            conj3,
            {"k": (1, 2), "n": (1, 6)},
            valid=lambda k, n: n >= k,
            sides=_conj3_sides,
            fit_default=True,
            summary="shifted power determinant closed form",
        ),
        _entry(
            "conj4",
            ("ell", "k", "n"),
            conj4,
            {"ell": (1, 2), "k": (1, 2), "n": (1, 5)},
            valid=lambda ell, k, n: n >= k,
            sides=_conj4_sides,
            fit_default=True,
            summary="stride-ell shifted power determinant closed form",
        ),
        _entry(
            "conj4_k1",
            ("ell", "n"),
            conj4_k1,
            {"ell": (1, 3), "n": (1, 6)},
            sides=_conj4_k1_sides,
            summary="stride-ell determinant, k=1 case",
        ),
        _entry(
            "conj4_k2",
            ("ell", "n"),
            conj4_k2,
            {"ell": (1, 2), "n": (2, 5)},
            sides=_conj4_k2_sides,
            summary="stride-ell determinant, k=2 case",
        ),
        _entry(
            "det_classical_ell",
            ("ell", "k", "n"),
            det_classical_ell,
            {"ell": (1, 2), "k": (1, 2), "n": (1, 5)},
            valid=lambda ell, k, n: n >= k,
            sides=_det_classical_ell_sides,
            summary="q=1 stride-ell power determinant closed form",
        ),
    ]
}


def residual(id: str, **params):
    entry = CATALOG.get(id)
    if entry is None:
        raise BadParams(f"unknown identity {id!r}")
    missing = [p for p in entry.params if p not in params]
    extra = [p for p in params if p not in entry.params]
    if missing or extra:
        raise BadParams(
            f"{id} takes parameters {entry.params}; missing {missing}, extra {extra}"
        )
    return entry.builder(**params)


def sides(id: str, **params):
    entry = CATALOG.get(id)
    if entry is None or entry.sides is None:
        raise BadParams(f"identity {id!r} does not expose sides")
    return entry.sides(**params)


# --------------------------------------------------------------------------
# sweep runner and report


@dataclass
class CellResult:
    id: str
    params: dict
    status: str  # pass | fail | fitted
    residual: str | None = None
    correction: str | None = None
    ms: float = 0.0

    def to_dict(self) -> dict:
        d = {"id": self.id, "params": dict(self.params), "status": self.status}
        if self.residual is not None:
            d["residual"] = self.residual
        if self.correction is not None:
            d["correction"] = self.correction
        d["ms"] = self.ms
        return d


@dataclass
class VerificationReport:
    cells: list = field(default_factory=list)

    @property
    def counts(self) -> dict:
        c = {"pass": 0, "fail": 0, "fitted": 0}
        for cell in self.cells:
            c[cell.status] += 1
        return c

    def all_pass(self, fit_ok: bool = False) -> bool:
        counts = self.counts
        if counts["fail"]:
            return False
        return fit_ok or counts["fitted"] == 0

    def to_json_dict(self, command: str = "verify") -> dict:
        return {
            "version": REPORT_SCHEMA_VERSION,
            "command": command,
            "cells": [c.to_dict() for c in self.cells],
            "summary": self.counts,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "VerificationReport":
        if data.get("version") != REPORT_SCHEMA_VERSION:
            raise ValueError("unsupported report version")
        cells = [
            CellResult(
                id=c["id"],
                params=dict(c["params"]),
                status=c["status"],
                residual=c.get("residual"),
                correction=c.get("correction"),
                ms=c.get("ms", 0.0),
            )
            for c in data["cells"]
        ]
        return cls(cells)


_RESIDUAL_TEXT_LIMIT = 400


def _residual_text(value) -> str:
    text = str(value)
    if len(text) > _RESIDUAL_TEXT_LIMIT:
        suffix = f" ... ({len(value)} terms)" if isinstance(value, Poly) else " ..."
        text = text[:_RESIDUAL_TEXT_LIMIT] + suffix
    return text


def _run_cell(task) -> CellResult:
    id, params, fit = task
    entry = CATALOG[id]
    start = time.perf_counter()
    try:
        value = entry.builder(**params)
        ok = value.is_zero()
    except Exception as exc:  # failures are report content, not exceptions
        ms = (time.perf_counter() - start) * 1000.0
        return CellResult(id, params, "fail", residual=f"error: {exc}", ms=round(ms, 3))
    if ok:
        ms = (time.perf_counter() - start) * 1000.0
        return CellResult(id, params, "pass", ms=round(ms, 3))
    if fit and entry.sides is not None:
        try:
            lhs, rhs = entry.sides(**params)
            corr = fit_monomial_correction(lhs, rhs)
            ms = (time.perf_counter() - start) * 1000.0
            return CellResult(
                id, params, "fitted", correction=str(corr), ms=round(ms, 3)
            )
        except (NotProportional, ValueError):
            pass
    ms = (time.perf_counter() - start) * 1000.0
    return CellResult(id, params, "fail", residual=_residual_text(value), ms=round(ms, 3))


def sweep(
    ids,
    overrides: dict | None = None,
    fit: bool = False,
    workers: int = 1,
) -> VerificationReport:
    """Evaluate the residual of every grid cell of the named identities.

    `overrides` maps a parameter name to an inclusive (lo, hi) range that
    replaces the entry default.  Cells are ordered by (id, params) and the
    report is identical for any worker count.
    """
    if isinstance(ids, str):
        ids = [ids]
    tasks = []
    for id in ids:
        entry = CATALOG.get(id)
        if entry is None:
            raise BadParams(f"unknown identity {id!r}")
        use_fit = fit or entry.fit_default
        for params in entry.cells(overrides):
            tasks.append((id, params, use_fit))
    tasks.sort(key=lambda t: (t[0], tuple(sorted(t[1].items()))))
    if workers > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(_run_cell, tasks))
    else:
        cells = [_run_cell(t) for t in tasks]
    return VerificationReport(cells)

"""Exact sparse Laurent polynomials in the four fixed variables x, s, q, z.

Coefficients are Python ints, so arithmetic never overflows or rounds.
Exponents may be negative on every variable.  A polynomial is stored as a
dict mapping a packed monomial key to its coefficient; the packed key is a
single int whose bit fields hold (total degree, ex, es, eq, ez) with fixed
offsets, so that

  * multiplying monomials is one integer addition (key_a + key_b - _ZKEY),
  * the natural int order on keys IS the graded-lex order with priority
    x > s > q > z, which drives leading-term logic in exact division.

The *display* order used by to_canonical_string is different (z desc,
x desc, then s and q ascending) so that characteristic polynomials lead
with z^n and q-expansions read like q-series; both orders are strict and
total, and parse() accepts terms in any order.

Large products go through a Kronecker-substitution fast path: terms are
grouped into blocks sharing (ex, es, ez), each block's q-coefficients are
packed into one big integer with a rigorously chosen limb width, and block
products become single bigint multiplications.  Setting QFIB_NO_FAST=1 in
the environment forces the plain dict paths everywhere (the test suite
checks both paths agree).
"""

from __future__ import annotations

import os
import re
from fractions import Fraction

__all__ = [
    "Poly",
    "NotDivisible",
    "ParseError",
    "PoleAtZero",
    "exact_div",
    "monomial",
    "parse",
    "ZERO",
    "ONE",
    "X",
    "S",
    "Q",
    "Z",
]

_FAST = os.environ.get("QFIB_NO_FAST", "") not in ("1", "true", "yes")

# --------------------------------------------------------------------------
# monomial packing
#
# layout (low to high): ez | eq | es | ex | total, each variable field is
# _FIELD bits wide with bias _BIAS; the total-degree field is wider since it
# holds the sum of four exponents.

_FIELD = 24
_BIAS = 1 << 23
_TFIELD = 28
_TBIAS = 1 << 27

_SH_EZ = 0
_SH_EQ = _FIELD
_SH_ES = 2 * _FIELD
_SH_EX = 3 * _FIELD
_SH_T = 4 * _FIELD

_MASK = (1 << _FIELD) - 1

# exponent magnitudes accepted from callers; ring ops guard against the
# (much larger) field capacity so packed arithmetic can never alias.
_EXP_LIMIT = 1 << 20
_VAR_GUARD = 1 << 22
_TOT_GUARD = 1 << 26


def _pack(ex: int, es: int, eq: int, ez: int) -> int:
    return (
        ((ex + es + eq + ez + _TBIAS) << _SH_T)
        | ((ex + _BIAS) << _SH_EX)
        | ((es + _BIAS) << _SH_ES)
        | ((eq + _BIAS) << _SH_EQ)
        | (ez + _BIAS)
    )


def _unpack(key: int) -> tuple[int, int, int, int]:
    return (
        ((key >> _SH_EX) & _MASK) - _BIAS,
        ((key >> _SH_ES) & _MASK) - _BIAS,
        ((key >> _SH_EQ) & _MASK) - _BIAS,
        (key & _MASK) - _BIAS,
    )


_ZKEY = _pack(0, 0, 0, 0)
# adding n*_QSTEP to a key raises the q exponent by n (and fixes up the
# total-degree field); same idea for x.
_QSTEP = (1 << _SH_EQ) + (1 << _SH_T)
_XSTEP = (1 << _SH_EX) + (1 << _SH_T)

_VARS = ("x", "s", "q", "z")


def _display_key(key: int) -> tuple[int, int, int, int]:
    ex, es, eq, ez = _unpack(key)
    return (-ez, -ex, es, eq)


class NotDivisible(ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


class PoleAtZero(ZeroDivisionError):
    """Evaluation hit a zero value raised to a negative exponent."""


class ParseError(ValueError):
    """Polynomial text did not conform to the canonical grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _check_exp(e: int) -> int:
    if not isinstance(e, int) or abs(e) > _EXP_LIMIT:
        raise ValueError(f"exponent out of supported range: {e!r}")
    return e


class Poly:
    """Immutable sparse Laurent polynomial over the integers."""

    __slots__ = ("_t", "_ranges", "_cmax", "_cneg", "_blocks")

    def __init__(self, terms: dict | int | None = None):
        """Build from {(ex, es, eq, ez): coeff} (zero coefficients dropped)
        or from a plain int constant."""
        d: dict[int, int] = {}
        if isinstance(terms, int):
            if terms:
                d[_ZKEY] = terms
        elif terms:
            for exps, c in terms.items():
                if not c:
                    continue
                ex, es, eq, ez = (_check_exp(e) for e in exps)
                k = _pack(ex, es, eq, ez)
                v = d.get(k, 0) + c
                if v:
                    d[k] = v
                else:
                    del d[k]
        self._t = d
        self._ranges = None
        self._cmax = None
        self._cneg = None
        self._blocks = None

    @classmethod
    def _raw(cls, d: dict[int, int]) -> "Poly":
        p = cls.__new__(cls)
        p._t = d
        p._ranges = None
        p._cmax = None
        p._cneg = None
        p._blocks = None
        return p

    # ---------------------------------------------------------------- basics

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            if other == 0:
                return not self._t
            return self._t == {_ZKEY: other}
        if isinstance(other, Poly):
            return self._t == other._t
        return NotImplemented

    __hash__ = None

    def terms(self):
        """Iterate ((ex, es, eq, ez), coeff) pairs in no particular order."""
        for k, c in self._t.items():
            yield _unpack(k), c

    def exponent_range(self, var: str) -> tuple[int, int]:
        """(min, max) exponent of `var` over the terms; (0, 0) if zero poly."""
        return self._get_ranges()[_VARS.index(var)]

    def _get_ranges(self):
        r = self._ranges
        if r is None:
            if not self._t:
                r = ((0, 0),) * 5
            else:
                lo = [_EXP_LIMIT * 8] * 5
                hi = [-_EXP_LIMIT * 8] * 5
                for k in self._t:
                    ex, es, eq, ez = _unpack(k)
                    for i, e in enumerate((ex, es, eq, ez, ex + es + eq + ez)):
                        if e < lo[i]:
                            lo[i] = e
                        if e > hi[i]:
                            hi[i] = e
                r = tuple(zip(lo, hi))
            self._ranges = r
        return r

    def _coeff_stats(self) -> tuple[int, bool]:
        """(max |coeff|, any negative coeff)."""
        if self._cmax is None:
            cmax, cneg = 1, False
            for c in self._t.values():
                if c < 0:
                    cneg = True
                    c = -c
                if c > cmax:
                    cmax = c
            self._cmax = cmax
            self._cneg = cneg
        return self._cmax, self._cneg

    def _guard_mul(self, other: "Poly") -> None:
        ra, rb = self._get_ranges(), other._get_ranges()
        for i in range(5):
            guard = _TOT_GUARD if i == 4 else _VAR_GUARD
            if abs(ra[i][0] + rb[i][0]) > guard or abs(ra[i][1] + rb[i][1]) > guard:
                raise OverflowError("product exponent exceeds supported range")

    # ------------------------------------------------------------ arithmetic

    def __neg__(self) -> "Poly":
        return Poly._raw({k: -c for k, c in self._t.items()})

    def __add__(self, other) -> "Poly":
        if isinstance(other, int):
            other = Poly(other)
        elif not isinstance(other, Poly):
            return NotImplemented
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for k, c in b.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if isinstance(other, int):
            other = Poly(other)
        elif not isinstance(other, Poly):
            return NotImplemented
        out = dict(self._t)
        for k, c in other._t.items():
            v = out.get(k, 0) - c
            if v:
                out[k] = v
            else:
                del out[k]
        return Poly._raw(out)

    def __rsub__(self, other) -> "Poly":
        return (-self).__add__(other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, int):
            if not other:
                return ZERO
            if other == 1:
                return self
            return Poly._raw({k: c * other for k, c in self._t.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self._t, other._t
        if not a or not b:
            return ZERO
        self._guard_mul(other)
        if len(a) == 1:
            (ka, ca), = a.items()
            return Poly._raw({ka + kb - _ZKEY: ca * cb for kb, cb in b.items()})
        if len(b) == 1:
            (kb, cb), = b.items()
            return Poly._raw({ka + kb - _ZKEY: ca * cb for ka, ca in a.items()})
        if _FAST and len(a) * len(b) > 2048:
            out = _mul_blocked(self, other)
            if out is not None:
                return out
        return _mul_naive(a, b)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial powers require a nonnegative int")
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # ---------------------------------------------------------- substitution

    def subst_s_scale(self, m: int) -> "Poly":
        """s -> q^m s: every term's q exponent grows by m times its s exponent."""
        if not isinstance(m, int):
            raise ValueError("shift must be an int")
        if m == 0 or not self._t:
            return self
        (slo, shi) = self._get_ranges()[1]
        (qlo, qhi) = self._get_ranges()[2]
        for corner in (qlo + m * slo, qlo + m * shi, qhi + m * slo, qhi + m * shi):
            if abs(corner) > _VAR_GUARD:
                raise OverflowError("substitution exponent exceeds supported range")
        out = {}
        for k, c in self._t.items():
            es = ((k >> _SH_ES) & _MASK) - _BIAS
            out[k + (m * es) * _QSTEP] = c
        return Poly._raw(out)

    def subst_q_invert(self) -> "Poly":
        """q -> 1/q: negate every q exponent."""
        out = {}
        for k, c in self._t.items():
            eq = ((k >> _SH_EQ) & _MASK) - _BIAS
            out[k - (2 * eq) * _QSTEP] = c
        return Poly._raw(out)

    def subst_q_one(self) -> "Poly":
        """q -> 1."""
        return self._subst_one(_SH_EQ, _QSTEP)

    def subst_x_one(self) -> "Poly":
        """x -> 1."""
        return self._subst_one(_SH_EX, _XSTEP)

    def _subst_one(self, shift: int, step: int) -> "Poly":
        out: dict[int, int] = {}
        for k, c in self._t.items():
            e = ((k >> shift) & _MASK) - _BIAS
            kk = k - e * step
            v = out.get(kk, 0) + c
            if v:
                out[kk] = v
            else:
                del out[kk]
        return Poly._raw(out)

    def evaluate(self, x=None, s=None, q=None, z=None) -> Fraction:
        """Evaluate at rational values. Every variable that occurs needs a
        value; a zero value under a negative exponent raises PoleAtZero."""
        vals = [x, s, q, z]
        ranges = self._get_ranges()
        for i, v in enumerate(vals):
            if v is None:
                if ranges[i] != (0, 0):
                    raise ValueError(f"no value given for variable {_VARS[i]}")
                vals[i] = Fraction(0)
            else:
                vals[i] = Fraction(v)
        total = Fraction(0)
        for k, c in self._t.items():
            exps = _unpack(k)
            term = Fraction(c)
            for v, e in zip(vals, exps):
                if e:
                    if v == 0 and e < 0:
                        raise PoleAtZero("zero value raised to a negative exponent")
                    term *= v ** e
            total += term
        return total

    # -------------------------------------------------------------- division

    def exact_div(self, b: "Poly") -> "Poly":
        """Return q with self = q*b, by ordered long division; the quotient
        must be an ordinary polynomial (no negative exponents) or
        NotDivisible is raised."""
        if not isinstance(b, Poly) or not b._t:
            raise ZeroDivisionError("exact_div by the zero polynomial")
        if not self._t:
            return ZERO
        if len(b) == 1:
            return _div_monomial(self, b)
        if _FAST and len(self._t) > 400:
            out = _div_blocked(self, b)
            if out is not None:
                return out
        return _div_naive(self, b)

    # -------------------------------------------------------------- printing

    def to_canonical_string(self) -> str:
        if not self._t:
            return "0"
        keys = sorted(self._t, key=_display_key)
        parts: list[str] = []
        for i, k in enumerate(keys):
            c = self._t[k]
            body = _term_str(abs(c), k)
            if i == 0:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append((" + " if c > 0 else " - ") + body)
        return "".join(parts)

    __str__ = to_canonical_string

    def __repr__(self) -> str:
        return f"Poly({self.to_canonical_string()!r})"

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Inverse of to_canonical_string (accepts terms in any order)."""
        return _Parser(text).parse()


def _term_str(c: int, key: int) -> str:
    ex, es, eq, ez = _unpack(key)
    parts = []
    for name, e in (("q", eq), ("s", es), ("x", ex), ("z", ez)):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    if not parts:
        return str(c)
    body = "*".join(parts)
    return body if c == 1 else f"{c}*{body}"


# ------------------------------------------------------------------ parsing


class _Parser:
    _INT = re.compile(r"\d+")

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self):
        t, n = self.text, len(self.text)
        while self.pos < n and t[self.pos] in " \t":
            self.pos += 1

    def _peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _fail(self, message: str):
        raise ParseError(message, self.pos)

    def _int(self, signed: bool = False) -> int:
        self._skip_ws()
        start = self.pos
        sign = 1
        if signed and self._peek() == "-":
            sign = -1
            self.pos += 1
        m = self._INT.match(self.text, self.pos)
        if not m:
            self.pos = start
            self._fail("expected an integer")
        self.pos = m.end()
        return sign * int(m.group())

    def parse(self) -> Poly:
        total: dict[int, int] = {}
        self._skip_ws()
        if not self._peek():
            self._fail("empty polynomial")
        sign = 1
        if self._peek() in "+-":
            sign = -1 if self._peek() == "-" else 1
            self.pos += 1
        while True:
            coeff, key = self._term()
            c = sign * coeff
            v = total.get(key, 0) + c
            if v:
                total[key] = v
            else:
                total.pop(key, None)
            self._skip_ws()
            ch = self._peek()
            if not ch:
                break
            if ch == "+":
                sign = 1
            elif ch == "-":
                sign = -1
            else:
                self._fail(f"unexpected character {ch!r}")
            self.pos += 1
        return Poly._raw(total)

    def _term(self) -> tuple[int, int]:
        coeff = 1
        exps = {"x": 0, "s": 0, "q": 0, "z": 0}
        saw_factor = False
        while True:
            self._skip_ws()
            ch = self._peek()
            if ch.isdigit():
                coeff *= self._int()
            elif ch and ch in "xsqz":
                self.pos += 1
                e = 1
                if self._peek() == "^":
                    self.pos += 1
                    e = self._int(signed=True)
                exps[ch] += _check_exp(e)
            else:
                self._fail("expected a coefficient or variable")
            saw_factor = True
            self._skip_ws()
            if self._peek() == "*":
                self.pos += 1
                continue
            break
        if not saw_factor:
            self._fail("empty term")
        return coeff, _pack(exps["x"], exps["s"], exps["q"], exps["z"])


# --------------------------------------------------------- plain arithmetic


def _mul_naive(a: dict, b: dict) -> Poly:
    if len(a) > len(b):
        a, b = b, a
    out: dict[int, int] = {}
    get = out.get
    bitems = list(b.items())
    off = _ZKEY
    for ka, ca in a.items():
        base = ka - off
        for kb, cb in bitems:
            k = base + kb
            out[k] = get(k, 0) + ca * cb
    return Poly._raw({k: v for k, v in out.items() if v})


def _div_monomial(a: Poly, b: Poly) -> Poly:
    (kb, cb), = b._t.items()
    exb = _unpack(kb)
    out = {}
    for k, c in a._t.items():
        exs = _unpack(k)
        if any(ea < eb for ea, eb in zip(exs, exb)) or c % cb:
            raise NotDivisible("remainder in monomial division")
        out[k - kb + _ZKEY] = c // cb
    return Poly._raw(out)


def _div_naive(a: Poly, b: Poly) -> Poly:
    bt = b._t
    kb = max(bt)
    cb = bt[kb]
    exb = _unpack(kb)
    bitems = [(k, c) for k, c in bt.items() if k != kb]
    r = dict(a._t)
    quot: dict[int, int] = {}
    get = r.get
    while r:
        kr = max(r)
        cr = r[kr]
        if any(ea < eb for ea, eb in zip(_unpack(kr), exb)) or cr % cb:
            raise NotDivisible("nonzero remainder")
        cq = cr // cb
        kq = kr - kb + _ZKEY
        quot[kq] = cq
        del r[kr]
        base = kq - _ZKEY
        for k2, c2 in bitems:
            kk = base + k2
            v = get(kk, 0) - cq * c2
            if v:
                r[kk] = v
            else:
                del r[kk]
    return Poly._raw(quot)


# ---------------------------------------------------- blocked (fast) engine
#
# A block collects the terms sharing (ex, es, ez); within a block the q
# exponents are laid out densely and packed into one big int with limb
# width L bits (L chosen so no accumulated coefficient can reach the limb
# boundary, making the packing a faithful ring map).


def _block_map(p: Poly):
    bm = p._blocks
    if bm is not None:
        return bm
    grouped: dict[int, list] = {}
    for k, c in p._t.items():
        eq = ((k >> _SH_EQ) & _MASK) - _BIAS
        base = k - eq * _QSTEP
        grouped.setdefault(base, []).append((eq, c))
    bm = {}
    width_total = 0
    for base, lst in grouped.items():
        qmin = min(e for e, _ in lst)
        qmax = max(e for e, _ in lst)
        width = qmax - qmin + 1
        width_total += width
        coeffs = [0] * width
        for e, c in lst:
            coeffs[e - qmin] = c
        bm[base] = (qmin, coeffs)
    if width_total > 64 * len(p._t) + 4096:
        bm = False  # hopelessly q-sparse; dense packing would thrash
    p._blocks = bm
    return bm


def _pack_coeffs(coeffs: list[int], L: int) -> int:
    if coeffs and min(coeffs) >= 0:
        nb = L // 8
        return int.from_bytes(
            b"".join(c.to_bytes(nb, "little") for c in coeffs), "little"
        )
    acc = 0
    for c in reversed(coeffs):
        acc = (acc << L) + c
    return acc


def _unpack_signed(acc: int, L: int) -> list[int]:
    """Balanced base-2^L digits of acc (digits in [-2^(L-1), 2^(L-1)))."""
    digits = []
    full = 1 << L
    half = full >> 1
    mask = full - 1
    while acc:
        d = acc & mask
        if d >= half:
            d -= full
        digits.append(d)
        acc = (acc - d) >> L
    return digits


def _mul_blocked(a: Poly, b: Poly) -> Poly | None:
    ba = _block_map(a)
    bb = _block_map(b)
    if ba is False or bb is False:
        return None
    amax, _ = a._coeff_stats()
    bmax, _ = b._coeff_stats()
    bound = amax * bmax * min(len(a._t), len(b._t))
    L = (bound.bit_length() + 9) & ~7
    apacked = [(base, off, _pack_coeffs(cs, L)) for base, (off, cs) in ba.items()]
    bpacked = [(base, off, _pack_coeffs(cs, L)) for base, (off, cs) in bb.items()]
    if len(apacked) > len(bpacked):
        apacked, bpacked = bpacked, apacked
    acc: dict[int, list] = {}
    for base_a, off_a, int_a in apacked:
        shift_a = base_a - _ZKEY
        for base_b, off_b, int_b in bpacked:
            base = shift_a + base_b
            off = off_a + off_b
            prod = int_a * int_b
            cur = acc.get(base)
            if cur is None:
                acc[base] = [off, prod]
            elif cur[0] <= off:
                cur[1] += prod << ((off - cur[0]) * L)
            else:
                cur[1] = prod + (cur[1] << ((cur[0] - off) * L))
                cur[0] = off
    out: dict[int, int] = {}
    for base, (off, big) in acc.items():
        for i, d in enumerate(_unpack_signed(big, L)):
            if d:
                out[base + (off + i) * _QSTEP] = d
    return Poly._raw(out)


class _RetryDivision(Exception):
    pass


def _div_blocked(a: Poly, b: Poly) -> Poly | None:
    ba = _block_map(a)
    bb = _block_map(b)
    if ba is False or bb is False:
        return None
    amax, _ = a._coeff_stats()
    bmax, _ = b._coeff_stats()
    L0 = ((amax.bit_length() + bmax.bit_length() + 40) + 7) & ~7
    for L in (L0, 2 * L0, 4 * L0):
        try:
            quot = _div_blocked_at(a, ba, bb, L)
        except _RetryDivision:
            continue
        if quot * b == a:
            return quot
    return None  # caller falls back to the naive path


def _div_blocked_at(a: Poly, ba: dict, bb: dict, L: int) -> Poly:
    bpacked = {
        base: (off, _pack_coeffs(cs, L)) for base, (off, cs) in bb.items()
    }
    kb = max(bpacked)
    off_b, int_b = bpacked[kb]
    exb = _unpack(kb)
    rest_b = [(base, off, big) for base, (off, big) in bpacked.items() if base != kb]
    r: dict[int, list] = {
        base: [off, _pack_coeffs(cs, L)] for base, (off, cs) in ba.items()
    }
    out: dict[int, int] = {}
    while r:
        kr = max(r)
        off_r, int_r = r.pop(kr)
        if not int_r:
            continue
        if any(ea < eb for ea, eb in zip(_unpack(kr), exb)):
            raise NotDivisible("nonzero remainder")
        qt, rem = divmod(int_r, int_b)
        if rem:
            raise _RetryDivision  # possibly limb aliasing; retry wider
        t_base = kr - kb + _ZKEY
        t_off = off_r - off_b
        for i, d in enumerate(_unpack_signed(qt, L)):
            if not d:
                continue
            if t_off + i < 0:
                raise _RetryDivision
            out[t_base + (t_off + i) * _QSTEP] = d
        shift_t = t_base - _ZKEY
        for base_b2, off_b2, int_b2 in rest_b:
            base = shift_t + base_b2
            off = t_off + off_b2
            prod = qt * int_b2
            cur = r.get(base)
            if cur is None:
                r[base] = [off, -prod]
            elif cur[0] <= off:
                cur[1] -= prod << ((off - cur[0]) * L)
                if not cur[1]:
                    del r[base]
            else:
                cur[1] = (cur[1] << ((cur[0] - off) * L)) - prod
                cur[0] = off
                if not cur[1]:
                    del r[base]
    return Poly._raw(out)


# ----------------------------------------------------------------- helpers


def monomial(coeff: int, ex: int = 0, es: int = 0, eq: int = 0, ez: int = 0) -> Poly:
    return Poly({(ex, es, eq, ez): coeff})


def exact_div(a: Poly, b: Poly) -> Poly:
    return a.exact_div(b)


def parse(text: str) -> Poly:
    return Poly.parse(text)


ZERO = Poly()
ONE = Poly(1)
X = monomial(1, ex=1)
S = monomial(1, es=1)
Q = monomial(1, eq=1)
Z = monomial(1, ez=1)

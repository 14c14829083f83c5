"""Sparse Laurent polynomials and rational functions in q, t, z over Q.

A fourth variable ``eps`` tracks ordinary (non-plethystic) sign changes: its
exponent lives mod 2 and an explicit fold substitutes eps -> -1.  Keeping eps
symbolic until the fold is what lets alphabet expressions carry an ordinary
minus sign through a plethystic bracket.

Terms are stored sparsely as a dict mapping exponent vectors
``(e_t, e_q, e_z, e_eps)`` to nonzero ``Fraction`` coefficients.  Exponents of
t, q, z may be negative; e_eps is 0 or 1.  Values are immutable after
construction; every operation returns a fresh canonical value.

Canonical term order (used for deterministic text output): ascending by
total degree (e_t + e_q + e_z), then e_t, then e_q, then e_z.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

# Exponent-vector component indices.
_T, _Q, _Z, _E = 0, 1, 2, 3
_VARNAMES = ("t", "q", "z", "eps")
_ZERO_KEY = (0, 0, 0, 0)

Key = tuple  # (e_t, e_q, e_z, e_eps)


def term_sort_key(key: Key) -> tuple:
    """Canonical ordering of exponent vectors."""
    return (key[_T] + key[_Q] + key[_Z], key[_T], key[_Q], key[_Z], key[_E])


def _fmt_coeff(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def _fmt_monomial(key: Key) -> str:
    parts = []
    for i, name in enumerate(_VARNAMES):
        e = key[i]
        if e == 0:
            continue
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


class LaurentPoly:
    """Immutable sparse Laurent polynomial in t, q, z, eps."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Key, Fraction] | None = None):
        clean: dict[Key, Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                if not coeff:
                    continue
                et, eq, ez, ee = key
                ee &= 1
                k = (et, eq, ez, ee)
                prev = clean.get(k)
                if prev is None:
                    clean[k] = Fraction(coeff)
                else:
                    s = prev + coeff
                    if s:
                        clean[k] = s
                    else:
                        del clean[k]
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @staticmethod
    def const(c) -> "LaurentPoly":
        c = Fraction(c)
        return LaurentPoly({_ZERO_KEY: c}) if c else LaurentPoly()

    @staticmethod
    def monomial(coeff, et: int = 0, eq: int = 0, ez: int = 0, ee: int = 0) -> "LaurentPoly":
        return LaurentPoly({(et, eq, ez, ee): Fraction(coeff)})

    @staticmethod
    def var(name: str, power: int = 1) -> "LaurentPoly":
        idx = _VARNAMES.index(name)
        key = [0, 0, 0, 0]
        key[idx] = power
        return LaurentPoly({tuple(key): Fraction(1)})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_one(self) -> bool:
        return self.terms == {_ZERO_KEY: Fraction(1)}

    def is_const(self) -> bool:
        return not self.terms or set(self.terms) == {_ZERO_KEY}

    def is_eps_free(self) -> bool:
        return all(k[_E] == 0 for k in self.terms)

    def is_z_free(self) -> bool:
        return all(k[_Z] == 0 for k in self.terms)

    def const_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if set(self.terms) != {_ZERO_KEY}:
            raise ValueError("not a constant: %s" % self.text())
        return self.terms[_ZERO_KEY]

    # -- ring operations ----------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly()
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.terms:
            return other
        if not other.terms:
            return self
        res = dict(self.terms)
        for k, c in other.terms.items():
            s = res.get(k)
            if s is None:
                res[k] = c
            else:
                s = s + c
                if s:
                    res[k] = s
                else:
                    del res[k]
        out = LaurentPoly()
        out.terms = res
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.terms or not other.terms:
            return LaurentPoly()
        res: dict[Key, Fraction] = {}
        for (t1, q1, z1, e1), c1 in self.terms.items():
            for (t2, q2, z2, e2), c2 in other.terms.items():
                k = (t1 + t2, q1 + q2, z1 + z2, (e1 + e2) & 1)
                c = c1 * c2
                prev = res.get(k)
                if prev is None:
                    res[k] = c
                else:
                    s = prev + c
                    if s:
                        res[k] = s
                    else:
                        del res[k]
        out = LaurentPoly()
        out.terms = res
        return out

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial; use RatFunc")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, c) -> "LaurentPoly":
        c = Fraction(c)
        if not c:
            return LaurentPoly()
        out = LaurentPoly()
        out.terms = {k: v * c for k, v in self.terms.items()}
        return out

    # -- variable manipulation ----------------------------------------------

    def coeff_z(self, a: int) -> "LaurentPoly":
        """Coefficient of z**a; the result has e_z = 0 in all terms."""
        out = LaurentPoly()
        out.terms = {
            (k[_T], k[_Q], 0, k[_E]): c for k, c in self.terms.items() if k[_Z] == a
        }
        return out

    def z_range(self) -> tuple[int, int]:
        """(min, max) z-exponent; (0, 0) for the zero polynomial."""
        if not self.terms:
            return (0, 0)
        exps = [k[_Z] for k in self.terms]
        return (min(exps), max(exps))

    def fold_eps(self) -> "LaurentPoly":
        """Substitute eps -> -1 (idempotent)."""
        if self.is_eps_free():
            return self
        res: dict[Key, Fraction] = {}
        for k, c in self.terms.items():
            if k[_E]:
                k = (k[_T], k[_Q], k[_Z], 0)
                c = -c
            prev = res.get(k)
            if prev is None:
                res[k] = c
            else:
                s = prev + c
                if s:
                    res[k] = s
                else:
                    del res[k]
        out = LaurentPoly()
        out.terms = res
        return out

    def power_vars(self, k: int) -> "LaurentPoly":
        """Raise every variable (not the coefficients) to the k-th power.

        This is the plethystic transform of an alphabet expression: each
        monomial's exponent vector is multiplied by k, with eps mod 2.
        """
        if k == 1:
            return self
        out = LaurentPoly()
        out.terms = {
            (key[_T] * k, key[_Q] * k, key[_Z] * k, (key[_E] * k) & 1): c
            for key, c in self.terms.items()
        }
        return out

    def invert_qt(self) -> "LaurentPoly":
        """Substitute q -> 1/q and t -> 1/t."""
        out = LaurentPoly()
        out.terms = {(-k[_T], -k[_Q], k[_Z], k[_E]): c for k, c in self.terms.items()}
        return out

    def specialize(self, bindings: Mapping[str, object]) -> "LaurentPoly":
        """Substitute rational values for a subset of the variables.

        Negative exponents require a nonzero binding (else ValueError).
        """
        vals: dict[int, Fraction] = {}
        for name, v in bindings.items():
            vals[_VARNAMES.index(name)] = Fraction(v)  # type: ignore[arg-type]
        res: dict[Key, Fraction] = {}
        for key, c in self.terms.items():
            k = list(key)
            for idx, v in vals.items():
                e = k[idx]
                if e == 0:
                    continue
                if v == 0 and e < 0:
                    raise ValueError(
                        "substituting zero for %s with negative exponent" % _VARNAMES[idx]
                    )
                c = c * v ** e
                k[idx] = 0
            key2 = (k[0], k[1], k[2], k[3])
            prev = res.get(key2)
            if prev is None:
                if c:
                    res[key2] = c
            else:
                s = prev + c
                if s:
                    res[key2] = s
                else:
                    del res[key2]
        out = LaurentPoly()
        out.terms = res
        return out

    # -- inspection / output -------------------------------------------------

    def min_exps(self) -> tuple[int, int, int]:
        """Per-variable minimum exponent over (t, q, z); zero poly -> zeros."""
        if not self.terms:
            return (0, 0, 0)
        keys = list(self.terms)
        return (
            min(k[_T] for k in keys),
            min(k[_Q] for k in keys),
            min(k[_Z] for k in keys),
        )

    def leading_key(self) -> Key:
        return max(self.terms, key=term_sort_key)

    def sorted_terms(self) -> list[tuple[Key, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: term_sort_key(kv[0]))

    def text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for i, (key, coeff) in enumerate(self.sorted_terms()):
            mono = _fmt_monomial(key)
            mag = abs(coeff)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{_fmt_coeff(mag)}*{mono}"
            else:
                body = _fmt_coeff(mag)
            if i == 0:
                pieces.append(body if coeff > 0 else "-" + body)
            else:
                pieces.append((" + " if coeff > 0 else " - ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.text()})"


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
Q = LaurentPoly.var("q")
T = LaurentPoly.var("t")
Z = LaurentPoly.var("z")
EPS = LaurentPoly.var("eps")
M_POLY = (ONE - T) * (ONE - Q)  # (1-t)(1-q), ubiquitous in Macdonald theory


# ---------------------------------------------------------------------------
# Multivariate polynomial gcd over Q (for eps-free values).
#
# Polynomials here are dicts mapping (e_t, e_q, e_z) with e >= 0 to Fraction.
# The gcd is computed by a primitive pseudo-remainder sequence, recursing on
# the number of variables through content/primitive-part decomposition.
# ---------------------------------------------------------------------------

P3 = dict  # dict[(et, eq, ez)] -> Fraction

_P3_ONE: P3 = {(0, 0, 0): Fraction(1)}


def _p3_is_const(a: P3) -> bool:
    return len(a) == 1 and (0, 0, 0) in a


def _p3_mul(a: P3, b: P3) -> P3:
    res: P3 = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
            c = ca * cb
            prev = res.get(k)
            if prev is None:
                res[k] = c
            else:
                s = prev + c
                if s:
                    res[k] = s
                else:
                    del res[k]
    return res


def _p3_sub(a: P3, b: P3) -> P3:
    res = dict(a)
    for k, c in b.items():
        prev = res.get(k)
        if prev is None:
            res[k] = -c
        else:
            s = prev - c
            if s:
                res[k] = s
            else:
                del res[k]
    return res


def _p3_deg(a: P3, v: int) -> int:
    return max((k[v] for k in a), default=-1)


def _p3_coeff(a: P3, v: int, d: int) -> P3:
    """Coefficient of var_v**d, as a polynomial with e_v = 0."""
    res: P3 = {}
    for k, c in a.items():
        if k[v] == d:
            kk = list(k)
            kk[v] = 0
            res[tuple(kk)] = c
    return res


def _p3_shift(a: P3, v: int, d: int) -> P3:
    res: P3 = {}
    for k, c in a.items():
        kk = list(k)
        kk[v] += d
        res[tuple(kk)] = c
    return res


def _p3_exact_div(a: P3, b: P3) -> P3:
    """Exact multivariate division a / b; raises ArithmeticError on remainder."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if _p3_is_const(b):
        inv = 1 / b[(0, 0, 0)]
        return {k: c * inv for k, c in a.items()}
    rem = dict(a)
    quot: P3 = {}
    lb = max(b)  # lex-leading term of the divisor
    cb = b[lb]
    while rem:
        la = max(rem)
        dk = (la[0] - lb[0], la[1] - lb[1], la[2] - lb[2])
        if min(dk) < 0:
            raise ArithmeticError("inexact polynomial division")
        qc = rem[la] / cb
        quot[dk] = qc
        for kb, vb in b.items():
            k = (kb[0] + dk[0], kb[1] + dk[1], kb[2] + dk[2])
            prev = rem.get(k)
            s = (prev if prev is not None else Fraction(0)) - qc * vb
            if s:
                rem[k] = s
            elif prev is not None:
                del rem[k]
    return quot


def _p3_monic(a: P3) -> P3:
    if not a:
        return a
    lead = max(a, key=lambda k: (k[0] + k[1] + k[2], k[0], k[1], k[2]))
    c = a[lead]
    if c == 1:
        return a
    return {k: v / c for k, v in a.items()}


# The gcd core runs over integer coefficients (PZ = dict key -> int): Fraction
# arithmetic normalizes on every operation and dominates the profile otherwise.

PZ = dict


def _pz_mul(a: PZ, b: PZ) -> PZ:
    res: PZ = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
            s = res.get(k, 0) + ca * cb
            if s:
                res[k] = s
            else:
                del res[k]
    return res


def _pz_sub(a: PZ, b: PZ) -> PZ:
    res = dict(a)
    for k, c in b.items():
        s = res.get(k, 0) - c
        if s:
            res[k] = s
        else:
            res.pop(k, None)
    return res


def _pz_scale(a: PZ, c: int) -> PZ:
    return {k: v * c for k, v in a.items()}


def _pz_coeff(a: PZ, v: int, d: int) -> PZ:
    res: PZ = {}
    for k, c in a.items():
        if k[v] == d:
            kk = list(k)
            kk[v] = 0
            res[tuple(kk)] = c
    return res


def _pz_shift(a: PZ, v: int, d: int) -> PZ:
    res: PZ = {}
    for k, c in a.items():
        kk = list(k)
        kk[v] += d
        res[tuple(kk)] = c
    return res


def _pz_icontent(a: PZ) -> int:
    from math import gcd as _g

    c = 0
    for v in a.values():
        c = _g(c, v)
        if c == 1:
            return 1
    return c or 1


def _pz_exact_div(a: PZ, b: PZ) -> PZ:
    if not b:
        raise ZeroDivisionError
    if len(b) == 1 and (0, 0, 0) in b:
        d = b[(0, 0, 0)]
        if d in (1, -1):
            return a if d == 1 else {k: -c for k, c in a.items()}
        out = {}
        for k, c in a.items():
            if c % d:
                raise ArithmeticError("inexact integer division")
            out[k] = c // d
        return out
    rem = dict(a)
    quot: PZ = {}
    lb = max(b)
    cb = b[lb]
    while rem:
        la = max(rem)
        dk = (la[0] - lb[0], la[1] - lb[1], la[2] - lb[2])
        if min(dk) < 0 or rem[la] % cb:
            raise ArithmeticError("inexact integer polynomial division")
        qc = rem[la] // cb
        quot[dk] = qc
        for kb, vb in b.items():
            k = (kb[0] + dk[0], kb[1] + dk[1], kb[2] + dk[2])
            s = rem.get(k, 0) - qc * vb
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return quot


def _pz_prem(f: PZ, g: PZ, v: int) -> PZ:
    """Standard pseudo-remainder: lc(g)^(deg f - deg g + 1) * f  mod  g."""
    n = max(k[v] for k in g)
    lcg = _pz_coeff(g, v, n)
    steps = max(k[v] for k in f) - n + 1
    r = f
    while r:
        d = max(k[v] for k in r)
        if d < n:
            break
        lcr = _pz_coeff(r, v, d)
        r = _pz_sub(_pz_mul(lcg, r), _pz_shift(_pz_mul(lcr, g), v, d - n))
        steps -= 1
    for _ in range(steps):
        r = _pz_mul(r, lcg)
    return r


def _pz_deg(a: PZ, v: int) -> int:
    return max((k[v] for k in a), default=-1)


def _pz_is_const(a: PZ) -> bool:
    return len(a) == 1 and (0, 0, 0) in a


def _pz_content_prim(a: PZ, v: int) -> tuple[PZ, PZ]:
    cont: PZ = {}
    for d in range(_pz_deg(a, v) + 1):
        cd = _pz_coeff(a, v, d)
        if cd:
            cont = _pz_gcd(cont, cd) if cont else cd
            if _pz_is_const(cont) and abs(cont[(0, 0, 0)]) == 1:
                cont = {(0, 0, 0): 1}
                break
    if _pz_is_const(cont):
        cont = {(0, 0, 0): abs(cont[(0, 0, 0)])}
    prim = _pz_exact_div(a, cont)
    return cont, prim


def _pz_gcd(a: PZ, b: PZ) -> PZ:
    """Gcd over Z[t,q,z] by subresultant PRS, up to sign."""
    if not a:
        return b
    if not b:
        return a
    ca, cb = _pz_icontent(a), _pz_icontent(b)
    from math import gcd as _g

    ic = _g(ca, cb)
    if _pz_is_const(a) or _pz_is_const(b):
        return {(0, 0, 0): ic}
    a = {k: c // ca for k, c in a.items()}
    b = {k: c // cb for k, c in b.items()}
    v = -1
    best = None
    for cand in range(3):
        da, db = _pz_deg(a, cand), _pz_deg(b, cand)
        if da > 0 and db > 0:
            m = max(da, db)
            if best is None or m < best:
                best, v = m, cand
    if v < 0:
        for cand in range(3):
            if _pz_deg(a, cand) > 0:
                cont, _ = _pz_content_prim(a, cand)
                return _pz_scale(_pz_gcd(cont, b), ic)
        return {(0, 0, 0): ic}
    conta, prima = _pz_content_prim(a, v)
    contb, primb = _pz_content_prim(b, v)
    cont = _pz_gcd(conta, contb)
    A, B = (prima, primb) if _pz_deg(prima, v) >= _pz_deg(primb, v) else (primb, prima)
    g: PZ = {(0, 0, 0): 1}
    h: PZ = {(0, 0, 0): 1}
    while True:
        delta = _pz_deg(A, v) - _pz_deg(B, v)
        R = _pz_prem(A, B, v)
        if not R:
            break
        if _pz_deg(R, v) == 0:
            B = {(0, 0, 0): 1}
            break
        denom = g
        for _ in range(delta):
            denom = _pz_mul(denom, h)
        A, B = B, _pz_exact_div(R, denom)
        g = _pz_coeff(A, v, _pz_deg(A, v))
        if delta == 1:
            h = g
        elif delta > 1:
            gp = g
            for _ in range(delta - 1):
                gp = _pz_mul(gp, g)
            hp = h
            for _ in range(delta - 2):
                hp = _pz_mul(hp, h)
            h = _pz_exact_div(gp, hp) if delta > 1 else g
    _, prim = _pz_content_prim(B, v)
    out = _pz_mul(cont, prim)
    c = _pz_icontent(out)
    if c != 1:
        out = {k: x // c for k, x in out.items()}
    return _pz_scale(out, ic)


def _p3_to_pz(a: P3) -> PZ:
    lcm = 1
    from math import gcd as _g

    for c in a.values():
        d = c.denominator
        lcm = lcm * d // _g(lcm, d)
    return {k: int(c * lcm) for k, c in a.items()}


def _p3_gcd(a: P3, b: P3) -> P3:
    za, zb = _p3_to_pz(a), _p3_to_pz(b)
    g = _pz_gcd(za, zb)
    return _p3_monic({k: Fraction(c) for k, c in g.items()})


def _laurent_to_p3(a: LaurentPoly) -> tuple[tuple[int, int, int], P3]:
    """Split an eps-free Laurent polynomial into monomial content and poly part."""
    mins = a.min_exps()
    p: P3 = {}
    for k, c in a.terms.items():
        if k[_E]:
            raise ValueError("eps is not allowed here")
        p[(k[_T] - mins[0], k[_Q] - mins[1], k[_Z] - mins[2])] = c
    return mins, p


def _p3_to_laurent(p: P3, shift: tuple[int, int, int] = (0, 0, 0)) -> LaurentPoly:
    out = LaurentPoly()
    out.terms = {
        (k[0] + shift[0], k[1] + shift[1], k[2] + shift[2], 0): c for k, c in p.items()
    }
    return out


def laurent_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd of eps-free Laurent polynomials, normalized to a monic polynomial.

    The unit-part (monomial content, leading coefficient) is discarded, so the
    result has min exponent 0 in every variable and leading coefficient 1.
    """
    if a.is_zero():
        if b.is_zero():
            return ZERO
        _, pb = _laurent_to_p3(b)
        return _p3_to_laurent(_p3_monic(pb))
    if b.is_zero():
        _, pa = _laurent_to_p3(a)
        return _p3_to_laurent(_p3_monic(pa))
    _, pa = _laurent_to_p3(a)
    _, pb = _laurent_to_p3(b)
    return _p3_to_laurent(_p3_gcd(pa, pb))


def laurent_exact_div(a: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Exact division of an eps-free Laurent polynomial by a polynomial."""
    if a.is_zero():
        return ZERO
    sa, pa = _laurent_to_p3(a)
    sg, pg = _laurent_to_p3(g)
    q = _p3_exact_div(pa, pg)
    shift = (sa[0] - sg[0], sa[1] - sg[1], sa[2] - sg[2])
    return _p3_to_laurent(q, shift)


def _eps_split(a: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """a = even + eps*odd with both parts eps-free."""
    even = LaurentPoly()
    odd = LaurentPoly()
    ev: dict[Key, Fraction] = {}
    od: dict[Key, Fraction] = {}
    for k, c in a.terms.items():
        if k[_E]:
            od[(k[_T], k[_Q], k[_Z], 0)] = c
        else:
            ev[k] = c
    even.terms = ev
    odd.terms = od
    return even, odd


# ---------------------------------------------------------------------------
# Rational functions.
# ---------------------------------------------------------------------------


class RatFunc:
    """Reduced rational function num/den.

    The denominator is eps-free; the numerator may carry eps transiently
    while dual-operator formulas are being expanded (fold_eps clears it).
    Canonical form: gcd(num, den) is a unit, den is a true polynomial in
    t, q, z (min exponents 0, monomial content moved to num) whose leading
    term under the canonical order has coefficient 1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = ONE, *, _reduced: bool = False):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not den.is_eps_free():
            raise ValueError("denominator must be eps-free")
        if _reduced:
            self.num = num
            self.den = den
            return
        if num.is_zero():
            self.num = ZERO
            self.den = ONE
            return
        if not den.is_one():
            even, odd = _eps_split(num)
            g = laurent_gcd(even, odd)
            g = laurent_gcd(g, den)
            if not (g.is_zero() or g.is_one()):
                even = laurent_exact_div(even, g) if even else ZERO
                odd = laurent_exact_div(odd, g) if odd else ZERO
                num = even + odd * EPS
                den = laurent_exact_div(den, g)
        # Move the denominator's monomial content and leading coefficient out.
        mins = den.min_exps()
        if any(mins):
            den = LaurentPoly(
                {(k[_T] - mins[0], k[_Q] - mins[1], k[_Z] - mins[2], 0): c
                 for k, c in den.terms.items()}
            )
            num = num * LaurentPoly.monomial(1, -mins[0], -mins[1], -mins[2])
        lead = den.terms[den.leading_key()]
        if lead != 1:
            inv = 1 / lead
            den = den.scale(inv)
            num = num.scale(inv)
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(LaurentPoly.const(c), ONE, _reduced=True)

    @staticmethod
    def from_poly(p: LaurentPoly) -> "RatFunc":
        return RatFunc(p, ONE, _reduced=True)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return bool(self.num.terms)

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    # -- field operations ------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    __hash__ = None  # type: ignore[assignment]

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _reduced=True)

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num + other.num, ONE, _reduced=True)
        if not self.num.terms:
            return other
        if not other.num.terms:
            return self
        if self.den == other.den:
            num = self.num + other.num
            h = _num_den_gcd(num, self.den)
            if h.is_one():
                return RatFunc(num, self.den, _reduced=True)
            return RatFunc(_num_div(num, h), laurent_exact_div(self.den, h), _reduced=True)
        # Henrici: with both operands reduced, the only possible cancellation
        # in n1/d1 + n2/d2 sits inside g = gcd(d1, d2).
        g = laurent_gcd(self.den, other.den)
        if g.is_one():
            num = self.num * other.den + other.num * self.den
            return RatFunc(num, self.den * other.den, _reduced=True)
        d2g = laurent_exact_div(other.den, g)
        num = self.num * d2g + other.num * laurent_exact_div(self.den, g)
        den = self.den * d2g
        h = _num_den_gcd(num, g)
        if h.is_one():
            return RatFunc(num, den, _reduced=True)
        return RatFunc(_num_div(num, h), laurent_exact_div(den, h), _reduced=True)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        if not self.num.terms or not other.num.terms:
            return RF_ZERO
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, ONE, _reduced=True)
        # Cross-cancel: inputs are reduced, so only gcd(n1, d2) and gcd(n2, d1)
        # can cancel, and the result below is already in lowest terms.
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if not d2.is_one():
            g = _num_den_gcd(n1, d2)
            if not g.is_one():
                n1 = _num_div(n1, g)
                d2 = laurent_exact_div(d2, g)
        if not d1.is_one():
            g = _num_den_gcd(n2, d1)
            if not g.is_one():
                n2 = _num_div(n2, g)
                d1 = laurent_exact_div(d1, g)
        return RatFunc(n1 * n2, d1 * d2, _reduced=True)

    def recip(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("reciprocal of zero")
        if not self.num.is_eps_free():
            raise ValueError("cannot invert an eps-carrying numerator")
        return _finalize(self.den, self.num)  # already coprime; only renormalize

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return self * other.recip()

    def scale(self, c) -> "RatFunc":
        c = Fraction(c)
        if not c:
            return RF_ZERO
        return RatFunc(self.num.scale(c), self.den, _reduced=True)

    # -- variable manipulation -------------------------------------------------

    def power_vars(self, k: int) -> "RatFunc":
        if k == 1:
            return self
        return RatFunc(self.num.power_vars(k), self.den.power_vars(k))

    def fold_eps(self) -> "RatFunc":
        if self.num.is_eps_free():
            return self
        return RatFunc(self.num.fold_eps(), self.den, _reduced=True)

    def invert_qt(self) -> "RatFunc":
        return RatFunc(self.num.invert_qt(), self.den.invert_qt())

    def coeff_z(self, a: int) -> "RatFunc":
        if not self.den.is_z_free():
            raise ValueError("z-coefficient extraction needs a z-free denominator")
        return RatFunc(self.num.coeff_z(a), self.den, _reduced=True)

    def specialize(self, bindings: Mapping[str, object]) -> "RatFunc":
        den = self.den.specialize(bindings)
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes under substitution")
        return RatFunc(self.num.specialize(bindings), den)

    # -- output -------------------------------------------------------------

    def as_laurent(self) -> LaurentPoly:
        if not self.den.is_one():
            raise ValueError("not a Laurent polynomial: %s" % self.text())
        return self.num

    def text(self) -> str:
        if self.den.is_one():
            return self.num.text()
        return f"({self.num.text()})/({self.den.text()})"

    def __repr__(self) -> str:
        return f"RatFunc({self.text()})"


def _num_den_gcd(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """gcd of a possibly-eps-carrying numerator with an eps-free denominator."""
    if num.is_eps_free():
        return laurent_gcd(num, den)
    even, odd = _eps_split(num)
    return laurent_gcd(laurent_gcd(even, odd), den)


def _num_div(num: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    if num.is_eps_free():
        return laurent_exact_div(num, g)
    even, odd = _eps_split(num)
    even = laurent_exact_div(even, g) if even else ZERO
    odd = laurent_exact_div(odd, g) if odd else ZERO
    return even + odd * EPS


def _finalize(num: LaurentPoly, den: LaurentPoly) -> RatFunc:
    """Build a RatFunc from an already-coprime pair, normalizing only the den."""
    if num.is_zero():
        return RF_ZERO
    mins = den.min_exps()
    if any(mins):
        den = LaurentPoly(
            {(k[_T] - mins[0], k[_Q] - mins[1], k[_Z] - mins[2], 0): c
             for k, c in den.terms.items()}
        )
        num = num * LaurentPoly.monomial(1, -mins[0], -mins[1], -mins[2])
    lead = den.terms[den.leading_key()]
    if lead != 1:
        inv = 1 / lead
        den = den.scale(inv)
        num = num.scale(inv)
    return RatFunc(num, den, _reduced=True)


RF_ZERO = RatFunc.const(0)
RF_ONE = RatFunc.const(1)
RF_M = RatFunc.from_poly(M_POLY)


def rf_normalize(num: LaurentPoly, den: LaurentPoly) -> RatFunc:
    """Construct the reduced, canonically normalized rational function num/den."""
    return RatFunc(num, den)


def cross_equal(a: RatFunc, b: RatFunc) -> bool:
    """Equality decided by cross-multiplication (independent of reduction)."""
    return a.num * b.den == b.num * a.den

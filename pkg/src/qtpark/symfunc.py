"""Partitions, compositions, and symmetric functions over the field Q(q,t).

Symmetric functions are stored as a basis tag ('p', 'm', 'h', 'e', 's') plus a
graded coefficient map Partition -> RatFunc.  The power basis is the internal
pivot: plethysm, the two scalar products and the omega involution are all
defined on p and every other basis converts through it with exact per-degree
transition matrices (cached, lock-guarded).

Plethystic alphabets are pairs (scalar, xmult): the expression
scalar + xmult*X, where both components are rational functions in q, t, z and
the numerator may carry the sign-tracking variable eps.  Applying p_k raises
every variable in both components to the k-th power and leaves coefficients
alone, so a negative coefficient acts as the plethystic minus sign while eps
carries ordinary sign changes.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .laurent import EPS, ONE, ZERO, LaurentPoly, RatFunc, RF_ONE, RF_ZERO
from .linsolve import invert_matrix

BASES = ("p", "m", "h", "e", "s")


# ---------------------------------------------------------------------------
# Partitions and compositions
# ---------------------------------------------------------------------------


class Partition:
    """Weakly decreasing sequence of positive integers (possibly empty)."""

    __slots__ = ("parts", "_hash")

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        for i, p in enumerate(parts):
            if p <= 0:
                raise ValueError(f"partition parts must be positive: {parts}")
            if i and parts[i - 1] < p:
                raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        self.parts = parts
        self._hash = hash(parts)

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        cols = self.parts[0]
        return Partition(tuple(sum(1 for p in self.parts if p > c) for c in range(cols)))

    def cells(self):
        """(row, col) pairs, 0-based, row i has parts[i] cells."""
        for r, p in enumerate(self.parts):
            for c in range(p):
                yield (r, c)

    def arm(self, r: int, c: int) -> int:
        return self.parts[r] - c - 1

    def leg(self, r: int, c: int) -> int:
        return sum(1 for p in self.parts[r + 1:] if p > c)

    def multiplicities(self) -> dict[int, int]:
        m: dict[int, int] = {}
        for p in self.parts:
            m[p] = m.get(p, 0) + 1
        return m

    def z_factor(self) -> int:
        """Order of the centralizer of a permutation with this cycle type."""
        z = 1
        for v, m in self.multiplicities().items():
            z *= v ** m * factorial(m)
        return z

    def sign(self) -> int:
        """(-1)^(|mu| - length), the sign omega puts on p_mu."""
        return -1 if (self.size - len(self.parts)) % 2 else 1

    def dominates(self, other: "Partition") -> bool:
        """True iff self >= other in dominance order (requires equal size)."""
        if self.size != other.size:
            return False
        total_s = total_o = 0
        for i in range(max(len(self.parts), len(other.parts))):
            total_s += self.parts[i] if i < len(self.parts) else 0
            total_o += other.parts[i] if i < len(other.parts) else 0
            if total_s < total_o:
                return False
        return True

    def remove_corner_results(self) -> list["Partition"]:
        out = []
        for i, p in enumerate(self.parts):
            if i + 1 == len(self.parts) or self.parts[i + 1] < p:
                parts = list(self.parts)
                parts[i] -= 1
                out.append(Partition(tuple(x for x in parts if x)))
        return out

    def add_corner_results(self) -> list["Partition"]:
        out = []
        for i in range(len(self.parts) + 1):
            prev = self.parts[i - 1] if i else None
            cur = self.parts[i] if i < len(self.parts) else 0
            if prev is None or prev > cur:
                parts = list(self.parts)
                if i < len(parts):
                    parts[i] += 1
                else:
                    parts.append(1)
                out.append(Partition(parts))
        return out

    def text(self) -> str:
        return "[" + ",".join(str(p) for p in self.parts) + "]"

    def __repr__(self):
        return f"Partition({self.parts})"


EMPTY = Partition(())


def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n in descending lexicographic (canonical) order."""
    return _partitions_cached(n)


_PARTITIONS: dict[int, tuple[Partition, ...]] = {}


def _partitions_cached(n: int) -> tuple[Partition, ...]:
    got = _PARTITIONS.get(n)
    if got is not None:
        return got

    def gen(remaining: int, cap: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    out = tuple(Partition(p) for p in gen(n, n))
    _PARTITIONS[n] = out
    return out


def partition_sort_key(mu: Partition) -> tuple:
    """Canonical order: by size, then reverse-lexicographic within a degree."""
    return (mu.size, tuple(-p for p in mu.parts))


def composition(parts) -> tuple[int, ...]:
    parts = tuple(int(p) for p in parts)
    if any(p < 1 for p in parts):
        raise ValueError(f"composition parts must be >= 1: {parts}")
    return parts


def compositions_of(n: int) -> list[tuple[int, ...]]:
    """All compositions of n (2^(n-1) of them), first part ascending."""
    if n == 0:
        return [()]
    out = []
    for first in range(1, n + 1):
        for rest in compositions_of(n - first):
            out.append((first,) + rest)
    return out


def compositions_of_length(n: int, k: int) -> list[tuple[int, ...]]:
    return [c for c in compositions_of(n) if len(c) == k]


@dataclass(frozen=True)
class CellStats:
    row: int
    col: int
    arm: int
    leg: int
    coarm: int
    coleg: int


def cell_stats(mu: Partition) -> list[CellStats]:
    """Arm/leg/coarm/coleg for every cell of the (french) diagram of mu."""
    return [
        CellStats(r, c, mu.arm(r, c), mu.leg(r, c), c, r) for (r, c) in mu.cells()
    ]


# ---------------------------------------------------------------------------
# SymF
# ---------------------------------------------------------------------------


class SymF:
    """Basis-tagged graded symmetric function with RatFunc coefficients."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: str, coeffs: dict[Partition, RatFunc] | None = None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        self.coeffs = {mu: c for mu, c in (coeffs or {}).items() if c}

    @staticmethod
    def zero(basis: str = "p") -> "SymF":
        return SymF(basis)

    @staticmethod
    def one(basis: str = "p") -> "SymF":
        return SymF(basis, {EMPTY: RF_ONE})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def degrees(self) -> list[int]:
        return sorted({mu.size for mu in self.coeffs})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError(f"not homogeneous of a single degree: {degs}")
        return degs[0]

    def homogeneous_component(self, d: int) -> "SymF":
        return SymF(self.basis, {mu: c for mu, c in self.coeffs.items() if mu.size == d})

    def scalar_value(self) -> RatFunc:
        """The coefficient of degree 0 (for plethysms with no X part)."""
        for mu in self.coeffs:
            if mu.size:
                raise ValueError("not a scalar symmetric function")
        return self.coeffs.get(EMPTY, RF_ZERO)

    def map_coeffs(self, fn) -> "SymF":
        return SymF(self.basis, {mu: fn(c) for mu, c in self.coeffs.items()})

    def fold_eps(self) -> "SymF":
        return self.map_coeffs(lambda c: c.fold_eps())

    def scale(self, c: RatFunc) -> "SymF":
        if not c:
            return SymF(self.basis)
        return self.map_coeffs(lambda v: v * c)

    def __neg__(self) -> "SymF":
        return self.map_coeffs(lambda c: -c)

    def __add__(self, other: "SymF") -> "SymF":
        if other.basis != self.basis:
            other = convert(other, self.basis)
        res = dict(self.coeffs)
        for mu, c in other.coeffs.items():
            s = res.get(mu, RF_ZERO) + c
            if s:
                res[mu] = s
            else:
                res.pop(mu, None)
        out = SymF(self.basis)
        out.coeffs = res
        return out

    def __sub__(self, other: "SymF") -> "SymF":
        return self + (-other)

    def __mul__(self, other: "SymF") -> "SymF":
        """Product in the ring of symmetric functions; result in the p basis."""
        a, b = convert(self, "p"), convert(other, "p")
        res: dict[Partition, RatFunc] = {}
        for lam, cl in a.coeffs.items():
            for mu, cm in b.coeffs.items():
                key = Partition(tuple(sorted(lam.parts + mu.parts, reverse=True)))
                s = res.get(key, RF_ZERO) + cl * cm
                if s:
                    res[key] = s
                else:
                    res.pop(key, None)
        out = SymF("p")
        out.coeffs = res
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymF):
            return NotImplemented
        return convert(self, "p").coeffs == convert(other, "p").coeffs

    __hash__ = None  # type: ignore[assignment]

    def text(self) -> str:
        if not self.coeffs:
            return f"{self.basis}: 0"
        keys = sorted(self.coeffs, key=partition_sort_key)
        body = " + ".join(f"{mu.text()}*({self.coeffs[mu].text()})" for mu in keys)
        return f"{self.basis}: {body}"

    def __repr__(self):
        return f"SymF({self.text()})"


def _single(basis: str, spec) -> SymF:
    mu = Partition((spec,)) if isinstance(spec, int) else Partition(spec)
    return SymF(basis, {mu: RF_ONE})


def p_(spec) -> SymF:
    return _single("p", spec)


def m_(spec) -> SymF:
    return _single("m", spec)


def h_(spec) -> SymF:
    return _single("h", spec)


def e_(spec) -> SymF:
    return _single("e", spec)


def s_(spec) -> SymF:
    return _single("s", spec)


# ---------------------------------------------------------------------------
# Basis transitions (per-degree matrices over Q, cached)
# ---------------------------------------------------------------------------

_TRANS_CACHE: dict[tuple[int, str, str], dict[Partition, dict[Partition, Fraction]]] = {}
_TRANS_LOCK = threading.RLock()  # re-entrant: builders recurse into other transitions


def _p_dict_mul(a: dict[Partition, Fraction], b: dict[Partition, Fraction]):
    res: dict[Partition, Fraction] = {}
    for lam, cl in a.items():
        for mu, cm in b.items():
            key = Partition(tuple(sorted(lam.parts + mu.parts, reverse=True)))
            s = res.get(key, Fraction(0)) + cl * cm
            if s:
                res[key] = s
            else:
                res.pop(key, None)
    return res


def _hk_in_p(k: int) -> dict[Partition, Fraction]:
    return {lam: Fraction(1, lam.z_factor()) for lam in partitions_of(k)}


def _ek_in_p(k: int) -> dict[Partition, Fraction]:
    return {lam: Fraction(lam.sign(), lam.z_factor()) for lam in partitions_of(k)}


def _multiplicative_to_p(n: int, row_of: callable) -> dict[Partition, dict[Partition, Fraction]]:
    out = {}
    for lam in partitions_of(n):
        acc = {EMPTY: Fraction(1)}
        for part in lam.parts:
            acc = _p_dict_mul(acc, row_of(part))
        out[lam] = acc
    return out


def _jacobi_trudi_h(lam: Partition) -> dict[Partition, Fraction]:
    """Schur function as a signed sum of h products (determinant expansion)."""
    ell = len(lam)
    if ell == 0:
        return {EMPTY: Fraction(1)}
    # DP over rows; state = bitmask of used columns -> {h-part multiset: coeff}
    states: dict[int, dict[tuple, int]] = {0: {(): 1}}
    for i in range(ell):
        new_states: dict[int, dict[tuple, int]] = {}
        for mask, table in states.items():
            for j in range(ell):
                bit = 1 << j
                if mask & bit:
                    continue
                idx = lam.parts[i] - i + j
                if idx < 0:
                    continue
                sign = -1 if bin(mask >> (j + 1)).count("1") % 2 else 1
                nmask = mask | bit
                dest = new_states.setdefault(nmask, {})
                for parts, coeff in table.items():
                    np = tuple(sorted(parts + (idx,), reverse=True)) if idx else parts
                    c = dest.get(np, 0) + sign * coeff
                    if c:
                        dest[np] = c
                    else:
                        del dest[np]
        states = new_states
    full = states.get((1 << ell) - 1, {})
    return {Partition(parts): Fraction(c) for parts, c in full.items()}


def _invert_transition(mat, order):
    rows = [[mat[a].get(b, Fraction(0)) for b in order] for a in order]
    inv = invert_matrix(rows, Fraction(0), Fraction(1))
    return {
        a: {b: inv[i][j] for j, b in enumerate(order) if inv[i][j]}
        for i, a in enumerate(order)
    }


def _build_transition(n: int, src: str, dst: str):
    if src == dst:
        return {mu: {mu: Fraction(1)} for mu in partitions_of(n)}
    order = partitions_of(n)
    if (src, dst) == ("h", "p"):
        return _multiplicative_to_p(n, _hk_in_p)
    if (src, dst) == ("e", "p"):
        return _multiplicative_to_p(n, _ek_in_p)
    if (src, dst) == ("s", "p"):
        h2p = _transition(n, "h", "p")
        out = {}
        for lam in order:
            acc: dict[Partition, Fraction] = {}
            for hmu, c in _jacobi_trudi_h(lam).items():
                for pmu, c2 in h2p[hmu].items():
                    s = acc.get(pmu, Fraction(0)) + c * c2
                    if s:
                        acc[pmu] = s
                    else:
                        acc.pop(pmu, None)
            out[lam] = acc
        return out
    if (src, dst) == ("p", "m"):
        # m and h are Hall-dual: coeff of m_mu in p_lam is z_lam * [p_lam](h_mu).
        h2p = _transition(n, "h", "p")
        return {
            lam: {
                mu: h2p[mu][lam] * lam.z_factor()
                for mu in order
                if lam in h2p[mu]
            }
            for lam in order
        }
    if src == "p":
        return _invert_transition(_transition(n, dst, "p"), order)
    if dst == "p":  # remaining direct case: m -> p
        return _invert_transition(_transition(n, "p", src), order)
    # generic: src -> p -> dst
    a = _transition(n, src, "p")
    b = _transition(n, "p", dst)
    out = {}
    for lam in order:
        acc: dict[Partition, Fraction] = {}
        for mid, c in a[lam].items():
            for mu, c2 in b[mid].items():
                s = acc.get(mu, Fraction(0)) + c * c2
                if s:
                    acc[mu] = s
                else:
                    acc.pop(mu, None)
        out[lam] = acc
    return out


def _transition(n: int, src: str, dst: str):
    key = (n, src, dst)
    got = _TRANS_CACHE.get(key)
    if got is not None:
        return got
    with _TRANS_LOCK:
        got = _TRANS_CACHE.get(key)
        if got is None:
            got = _build_transition(n, src, dst)
            _TRANS_CACHE[key] = got
    return got


def convert(F: SymF, basis: str) -> SymF:
    """Re-express F in another classical basis (exact; round-trips are identity)."""
    if basis not in BASES:
        raise ValueError(f"unknown basis {basis!r}")
    if F.basis == basis:
        return F
    res: dict[Partition, RatFunc] = {}
    for d in F.degrees():
        mat = _transition(d, F.basis, basis)
        for lam, c in F.coeffs.items():
            if lam.size != d:
                continue
            for mu, f in mat[lam].items():
                s = res.get(mu, RF_ZERO) + c.scale(f)
                if s:
                    res[mu] = s
                else:
                    res.pop(mu, None)
    out = SymF(basis)
    out.coeffs = res
    return out


# ---------------------------------------------------------------------------
# Plethysm
# ---------------------------------------------------------------------------


class Alphabet:
    """Plethystic alphabet scalar + xmult * X (components over Q(q,t,z), eps ok)."""

    __slots__ = ("scalar", "xmult")

    def __init__(self, scalar: RatFunc = RF_ZERO, xmult: RatFunc = RF_ZERO):
        self.scalar = scalar
        self.xmult = xmult

    @staticmethod
    def X() -> "Alphabet":
        return Alphabet(RF_ZERO, RF_ONE)

    @staticmethod
    def scalar_only(s: RatFunc | LaurentPoly) -> "Alphabet":
        if isinstance(s, LaurentPoly):
            s = RatFunc.from_poly(s)
        return Alphabet(s, RF_ZERO)

    @staticmethod
    def x_shifted(s: RatFunc | LaurentPoly) -> "Alphabet":
        """The alphabet X + s."""
        if isinstance(s, LaurentPoly):
            s = RatFunc.from_poly(s)
        return Alphabet(s, RF_ONE)

    @staticmethod
    def x_times(m: RatFunc | LaurentPoly) -> "Alphabet":
        """The alphabet m * X."""
        if isinstance(m, LaurentPoly):
            m = RatFunc.from_poly(m)
        return Alphabet(RF_ZERO, m)

    def powered(self, k: int) -> "Alphabet":
        return Alphabet(self.scalar.power_vars(k), self.xmult.power_vars(k))

    def __repr__(self):
        return f"Alphabet(scalar={self.scalar.text()}, xmult={self.xmult.text()})"


def plethysm(F: SymF, E: Alphabet) -> SymF:
    """F[E]: substitute p_k |-> scalar^(k) + xmult^(k) p_k.  Result in p basis.

    When E has no X part the result is concentrated in degree 0 (a scalar).
    """
    Fp = convert(F, "p")
    powers: dict[int, Alphabet] = {}
    out: dict[Partition, RatFunc] = {}
    for lam, c in Fp.coeffs.items():
        acc: dict[tuple, RatFunc] = {(): c}
        for k in lam.parts:
            Ek = powers.get(k)
            if Ek is None:
                Ek = E.powered(k)
                powers[k] = Ek
            nxt: dict[tuple, RatFunc] = {}
            for rem, coeff in acc.items():
                if Ek.scalar:
                    s = nxt.get(rem, RF_ZERO) + coeff * Ek.scalar
                    if s:
                        nxt[rem] = s
                    else:
                        nxt.pop(rem, None)
                if Ek.xmult:
                    key = rem + (k,)
                    s = nxt.get(key, RF_ZERO) + coeff * Ek.xmult
                    if s:
                        nxt[key] = s
                    else:
                        nxt.pop(key, None)
            acc = nxt
        for rem, coeff in acc.items():
            mu = Partition(tuple(sorted(rem, reverse=True)))
            s = out.get(mu, RF_ZERO) + coeff
            if s:
                out[mu] = s
            else:
                out.pop(mu, None)
    res = SymF("p")
    res.coeffs = out
    return res


def eval_scalar(F: SymF, E: Alphabet) -> RatFunc:
    """F evaluated at a pure-scalar alphabet."""
    return plethysm(F, E).scalar_value()


def omega_invol(F: SymF) -> SymF:
    """The involution sending p_mu to (-1)^(|mu|-len) p_mu.  Result in p basis."""
    Fp = convert(F, "p")
    return SymF(
        "p",
        {mu: (c if mu.sign() > 0 else -c) for mu, c in Fp.coeffs.items()},
    )


def omega_series(E: Alphabet, dmax: int) -> list[SymF]:
    """Graded pieces of the exponential kernel applied to E, degrees 0..dmax.

    Component d equals h_d[E]; for E = zX the z^m piece is z^m h_m[X].
    """
    if dmax < 0:
        raise ValueError("dmax must be >= 0")
    return [plethysm(h_((d,)) if d else SymF.one("h"), E) for d in range(dmax + 1)]


# ---------------------------------------------------------------------------
# Scalar products and perp
# ---------------------------------------------------------------------------

_STAR_WEIGHTS: dict[Partition, RatFunc] = {}


def _star_weight(mu: Partition) -> RatFunc:
    got = _STAR_WEIGHTS.get(mu)
    if got is None:
        w = ONE
        for part in mu.parts:
            w = w * (ONE - LaurentPoly.var("t", part)) * (ONE - LaurentPoly.var("q", part))
        w = w.scale(Fraction(mu.sign() * mu.z_factor()))
        got = RatFunc.from_poly(w)
        _STAR_WEIGHTS[mu] = got
    return got


def hall(F: SymF, G: SymF) -> RatFunc:
    """Hall scalar product (p basis is orthogonal with norms z_mu)."""
    a, b = convert(F, "p"), convert(G, "p")
    if len(b.coeffs) < len(a.coeffs):
        a, b = b, a
    total = RF_ZERO
    for mu, c in a.coeffs.items():
        g = b.coeffs.get(mu)
        if g is not None:
            total = total + (c * g).scale(mu.z_factor())
    return total


def star(F: SymF, G: SymF) -> RatFunc:
    """The q,t-deformed (star) scalar product."""
    a, b = convert(F, "p"), convert(G, "p")
    if len(b.coeffs) < len(a.coeffs):
        a, b = b, a
    total = RF_ZERO
    for mu, c in a.coeffs.items():
        g = b.coeffs.get(mu)
        if g is not None:
            total = total + c * g * _star_weight(mu)
    return total


def perp(G: SymF, F: SymF) -> SymF:
    """Hall-adjoint of multiplication by G applied to F (result in p basis).

    On the p algebra the adjoint of multiplication by p_k is k d/dp_k.
    """
    Gp, Fp = convert(G, "p"), convert(F, "p")
    out: dict[Partition, RatFunc] = {}
    for lam, cf in Fp.coeffs.items():
        lam_mult = lam.multiplicities()
        for mu, cg in Gp.coeffs.items():
            mu_mult = mu.multiplicities()
            factor = 1
            ok = True
            for v, m in mu_mult.items():
                have = lam_mult.get(v, 0)
                if have < m:
                    ok = False
                    break
                for i in range(m):
                    factor *= v * (have - i)
            if not ok:
                continue
            remaining = []
            for v, m in lam_mult.items():
                remaining.extend([v] * (m - mu_mult.get(v, 0)))
            key = Partition(tuple(sorted(remaining, reverse=True)))
            s = out.get(key, RF_ZERO) + (cf * cg).scale(factor)
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    res = SymF("p")
    res.coeffs = out
    return res

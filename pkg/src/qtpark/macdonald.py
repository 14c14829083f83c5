"""Mu-statistics, the modified Macdonald basis, and its operator calculus.

The basis elements are produced by an exact linear solve: the element for mu
is supported on the frame {s_lam[X/(t-1)] : lam <= mu in dominance}, is
star-orthogonal to every element of strictly smaller dominance, and evaluates
to 1 at the one-letter alphabet.  Everything downstream (nabla, delta_F, the
creation operators and their star-duals, Pieri coefficients, the composition
sums E_{n,k}, and the main bracket polynomial) runs through this table.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .laurent import (
    EPS,
    M_POLY,
    ONE,
    Q,
    RF_ONE,
    RF_ZERO,
    T,
    Z,
    ZERO,
    LaurentPoly,
    RatFunc,
)
from .linsolve import SingularSystemError, solve_linear
from .qtpoly import QtPoly
from .symfunc import (
    EMPTY,
    Alphabet,
    Partition,
    SymF,
    compositions_of,
    compositions_of_length,
    convert,
    e_,
    eval_scalar,
    h_,
    hall,
    omega_invol,
    omega_series,
    partitions_of,
    plethysm,
    star,
)


class DegreeCapError(ValueError):
    pass


# ---------------------------------------------------------------------------
# mu-statistics
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MuStats:
    mu: Partition
    T: LaurentPoly          # t^{n(mu)} q^{n(mu')}
    B: LaurentPoly          # sum of t^coleg q^coarm over cells
    Pi: LaurentPoly         # product of (1 - t^coleg q^coarm) over non-origin cells
    D: LaurentPoly          # M*B - 1
    w: LaurentPoly          # product of (q^arm - t^(leg+1))(t^leg - q^(arm+1))
    nmu: int
    nmuprime: int


_MU_STATS: dict[Partition, MuStats] = {}


def mu_stats(mu: Partition) -> MuStats:
    got = _MU_STATS.get(mu)
    if got is not None:
        return got
    B = ZERO
    Pi = ONE
    w = ONE
    nmu = nmuprime = 0
    for (r, c) in mu.cells():
        B = B + LaurentPoly.monomial(1, et=r, eq=c)
        nmu += r
        nmuprime += c
        if (r, c) != (0, 0):
            Pi = Pi * (ONE - LaurentPoly.monomial(1, et=r, eq=c))
        arm, leg = mu.arm(r, c), mu.leg(r, c)
        w = w * (LaurentPoly.monomial(1, eq=arm) - LaurentPoly.monomial(1, et=leg + 1))
        w = w * (LaurentPoly.monomial(1, et=leg) - LaurentPoly.monomial(1, eq=arm + 1))
    stats = MuStats(
        mu=mu,
        T=LaurentPoly.monomial(1, et=nmu, eq=nmuprime),
        B=B,
        Pi=Pi,
        D=M_POLY * B - ONE,
        w=w,
        nmu=nmu,
        nmuprime=nmuprime,
    )
    _MU_STATS[mu] = stats
    return stats


# ---------------------------------------------------------------------------
# The modified Macdonald table
# ---------------------------------------------------------------------------


def _dominance_ascending(n: int) -> list[Partition]:
    # lexicographic order on part tuples refines dominance
    return sorted(partitions_of(n), key=lambda p: p.parts)


class MacdonaldTable:
    """Lazily built table of modified Macdonald polynomials up to a degree cap."""

    def __init__(self, degree_cap: int = 8):
        self.degree_cap = degree_cap
        self._by_mu: dict[Partition, SymF] = {EMPTY: SymF.one("p")}
        self._schur: dict[Partition, SymF] = {EMPTY: SymF.one("s")}
        self._built: set[int] = {0}
        self._lock = threading.RLock()

    # -- construction -------------------------------------------------------

    def ensure_degree(self, n: int) -> None:
        if n > self.degree_cap:
            raise DegreeCapError(f"degree {n} exceeds cap {self.degree_cap}")
        if n in self._built:
            return
        with self._lock:
            if n in self._built:
                return
            for d in range(1, n + 1):
                if d not in self._built:
                    self._build_degree(d)
                    self._built.add(d)

    def _build_degree(self, n: int) -> None:
        # Star-orthogonalize the triangular frame s_mu[X/(t-1)]: the candidate
        # for mu lies in span{H_lam : lam <= mu}, so projecting out every
        # strictly dominated component leaves a multiple of H_mu, pinned by
        # the normalization H_mu[1] = 1.  Sequential projection is exactly the
        # orthogonality + triangularity + normalization characterization.
        inv_tm1 = Alphabet.x_times(RatFunc(ONE, T - ONE))
        one_alpha = Alphabet.scalar_only(ONE)
        order = _dominance_ascending(n)
        for mu in order:
            P0 = plethysm(SymF("s", {mu: RF_ONE}), inv_tm1)
            # Mutual star-orthogonality of the finished elements lets every
            # projection coefficient be read off the raw frame element.
            P = P0
            for nu in order:
                if nu == mu or not mu.dominates(nu):
                    continue
                Hnu = self._by_mu[nu]
                coeff = star(P0, Hnu) / RatFunc.from_poly(mu_stats(nu).w)
                if coeff:
                    P = P + Hnu.scale(-coeff)
            norm = eval_scalar(P, one_alpha)
            if not norm:
                raise SingularSystemError(
                    f"Macdonald construction for {mu.text()} degenerates"
                )
            H = P.scale(norm.recip())
            Hs = convert(H, "s")
            top = Hs.coeffs.get(Partition((n,)))
            if top != RF_ONE:
                raise AssertionError(f"top Schur coefficient of {mu.text()} is not 1")
            for lam, c in Hs.coeffs.items():
                if not c.is_polynomial():
                    raise AssertionError(
                        f"Schur coefficient {lam.text()} of {mu.text()} has a denominator"
                    )
            st = mu_stats(mu)
            if eval_scalar(e_(n), Alphabet.scalar_only(st.B)) != RatFunc.from_poly(st.T):
                raise AssertionError(f"e_n[B] != T for {mu.text()}")
            self._by_mu[mu] = H
            self._schur[mu] = Hs

    # -- access ---------------------------------------------------------------

    def htilde(self, mu: Partition) -> SymF:
        """Modified Macdonald polynomial for mu, in the power basis."""
        got = self._by_mu.get(mu)
        if got is None:
            self.ensure_degree(mu.size)
            got = self._by_mu[mu]
        return got

    def htilde_schur(self, mu: Partition) -> SymF:
        got = self._schur.get(mu)
        if got is None:
            self.ensure_degree(mu.size)
            got = self._schur[mu]
        return got

    # -- eigen-operator machinery ----------------------------------------------

    def expand_htilde(self, F: SymF) -> dict[Partition, RatFunc]:
        """Coefficients of F on the Macdonald basis (star-orthogonality)."""
        degs = F.degrees()
        if not degs:
            return {}
        out: dict[Partition, RatFunc] = {}
        for n in degs:
            self.ensure_degree(n)
            comp = F.homogeneous_component(n)
            for mu in partitions_of(n):
                c = star(comp, self._by_mu[mu]) / RatFunc.from_poly(mu_stats(mu).w)
                if c:
                    out[mu] = c
        return out

    def _eigen_apply(self, F: SymF, eigenvalue) -> SymF:
        out = SymF.zero("p")
        for mu, c in self.expand_htilde(F).items():
            lam = eigenvalue(mu)
            if lam:
                out = out + self._by_mu[mu].scale(c * lam)
        return out

    def nabla(self, F: SymF) -> SymF:
        """Eigen-operator multiplying the mu component by T_mu."""
        return self._eigen_apply(F, lambda mu: RatFunc.from_poly(mu_stats(mu).T))

    def delta(self, G: SymF, F: SymF) -> SymF:
        """Eigen-operator multiplying the mu component by G[B_mu]."""
        return self._eigen_apply(
            F, lambda mu: eval_scalar(G, Alphabet.scalar_only(mu_stats(mu).B))
        )

    def delta_h(self, j: int, F: SymF) -> SymF:
        return self.delta(h_((j,)) if j else SymF.one("h"), F)

    # -- Pieri data -------------------------------------------------------------

    def pieri(self, nu: Partition) -> "PieriData":
        exp = self.expand_htilde(e_(1) * self.htilde(nu))
        w_nu = RatFunc.from_poly(mu_stats(nu).w)
        rf_m = RatFunc.from_poly(M_POLY)
        d: dict[Partition, RatFunc] = {}
        c: dict[Partition, RatFunc] = {}
        for mu in nu.add_corner_results():
            dmn = exp.get(mu, RF_ZERO)
            d[mu] = dmn
            c[mu] = dmn * RatFunc.from_poly(mu_stats(mu).w) / (rf_m * w_nu)
        return PieriData(nu=nu, d=d, c=c)

    # -- the main bracket polynomial -----------------------------------------------

    def lhs_poly(self, J: int, p: tuple[int, ...]) -> QtPoly:
        """<Delta_{h_J} C_{p_1}...C_{p_k} 1, e_n> as an exact (t, q)-polynomial.

        The result must clear every denominator and have nonnegative integer
        coefficients; anything else signals an engine bug and raises.
        """
        if J < 0:
            raise ValueError("J must be >= 0")
        n = sum(p)
        if n + J > self.degree_cap:
            raise DegreeCapError(f"n + J = {n + J} exceeds cap {self.degree_cap}")
        chain = c_chain(tuple(p))
        applied = self.delta_h(J, chain)
        val = hall(applied, e_((n,)) if n else SymF.one("e"))
        return QtPoly.from_laurent(val.as_laurent())


@dataclass(frozen=True)
class PieriData:
    """Corner-removal coefficients around nu for both Pieri directions."""

    nu: Partition
    d: dict[Partition, RatFunc]  # e_1 H_nu = sum d[mu] H_mu over mu <- nu
    c: dict[Partition, RatFunc]  # e_1-perp H_mu = sum c[...] (related by d = M c w_nu / w_mu)


DEFAULT_TABLE = MacdonaldTable()


# ---------------------------------------------------------------------------
# Creation operators and their star duals (table-free)
# ---------------------------------------------------------------------------


def _hm_p(m: int) -> SymF:
    return convert(h_((m,)) if m else SymF.one("h"), "p")


def _neg_power_prefactor(a: int) -> RatFunc:
    # (-1/q)^(a-1)
    return RatFunc.from_poly(LaurentPoly.monomial((-1) ** (a - 1), eq=-(a - 1)))


def op_C(a: int, F: SymF) -> SymF:
    """Hall-Littlewood creation operator raising the degree by a."""
    if a < 1:
        raise ValueError("operator index must be >= 1")
    d = F.degree() if F else 0
    shift = LaurentPoly.monomial(1, eq=-1, ez=-1) - LaurentPoly.monomial(1, ez=-1)
    sub = plethysm(F, Alphabet.x_shifted(shift))  # F[X - (1-1/q)/z]
    total = SymF.zero("p")
    for m in range(a, a + d + 1):
        layer = sub.map_coeffs(lambda c, mm=m: c.coeff_z(a - mm))
        if layer:
            total = total + layer * _hm_p(m)
    return total.scale(_neg_power_prefactor(a))


def op_B_tilde(a: int, F: SymF) -> SymF:
    if a < 1:
        raise ValueError("operator index must be >= 1")
    d = F.degree() if F else 0
    shift = LaurentPoly.monomial(1, eq=1, ez=-1) - LaurentPoly.monomial(1, ez=-1)
    sub = plethysm(F, Alphabet.x_shifted(shift))  # F[X - (1-q)/z]
    total = SymF.zero("p")
    for m in range(a, a + d + 1):
        layer = sub.map_coeffs(lambda c, mm=m: c.coeff_z(a - mm))
        if layer:
            total = total + layer * _hm_p(m)
    return total


def op_B(a: int, F: SymF) -> SymF:
    """The omega-conjugated creation operator (adds a column-type piece)."""
    return omega_invol(op_B_tilde(a, omega_invol(F)))


def op_C_star(a: int, P: SymF) -> SymF:
    """Star-scalar-product dual of op_C; lowers the degree by a."""
    if a < 1:
        raise ValueError("operator index must be >= 1")
    if not P:
        return SymF.zero("p")
    d = P.degree()
    if d < a:
        return SymF.zero("p")
    eps_m_over_z = LaurentPoly(
        {(et, eq, -1, 1): -c for (et, eq, _ez, _ee), c in M_POLY.terms.items()}
    )
    sub = plethysm(P, Alphabet.x_shifted(eps_m_over_z))  # P[X - eps M / z]
    kernel = Alphabet.x_times(
        RatFunc(LaurentPoly.monomial(-1, ez=1, ee=1), Q * (ONE - T))
    )  # -eps z X / (q (1 - t))
    series = omega_series(kernel, d - a)
    total = SymF.zero("p")
    for m, om in enumerate(series):
        layer = sub.map_coeffs(lambda c, mm=m: c.coeff_z(-a - mm))
        if not layer:
            continue
        omz = om.map_coeffs(lambda c, mm=m: c.coeff_z(mm))
        total = total + layer * omz
    return total.scale(_neg_power_prefactor(a)).fold_eps()


def op_B_star(a: int, P: SymF) -> SymF:
    """Star-scalar-product dual of op_B; lowers the degree by a."""
    if a < 1:
        raise ValueError("operator index must be >= 1")
    if not P:
        return SymF.zero("p")
    d = P.degree()
    if d < a:
        return SymF.zero("p")
    m_over_z = LaurentPoly(
        {(et, eq, -1, 0): c for (et, eq, _ez, _ee), c in M_POLY.terms.items()}
    )
    sub = plethysm(P, Alphabet.x_shifted(m_over_z))  # P[X + M / z]
    kernel = Alphabet.x_times(RatFunc(LaurentPoly.monomial(-1, ez=1), ONE - T))
    series = omega_series(kernel, d - a)  # -z X / (1 - t)
    total = SymF.zero("p")
    for m, om in enumerate(series):
        layer = sub.map_coeffs(lambda c, mm=m: c.coeff_z(-a - mm))
        if not layer:
            continue
        omz = om.map_coeffs(lambda c, mm=m: c.coeff_z(mm))
        total = total + layer * omz
    return total.fold_eps()


@lru_cache(maxsize=None)
def c_chain(comp: tuple[int, ...]) -> SymF:
    """C_{p_1} C_{p_2} ... C_{p_k} applied to 1."""
    if not comp:
        return SymF.one("p")
    return op_C(comp[0], c_chain(comp[1:]))


def e_nk(n: int, k: int) -> SymF:
    """Sum of C-operator chains over compositions of n with k parts."""
    if not (1 <= k <= n):
        raise ValueError("need 1 <= k <= n")
    total = SymF.zero("p")
    for comp in compositions_of_length(n, k):
        total = total + c_chain(comp)
    return total


def lhs_poly(J: int, p, table: MacdonaldTable | None = None) -> QtPoly:
    """Module-level convenience wrapper around MacdonaldTable.lhs_poly."""
    return (table or DEFAULT_TABLE).lhs_poly(J, tuple(p))


def x_over_m(n: int) -> SymF:
    """h_n[X / M] (a recurring right-hand test vector)."""
    return plethysm(h_((n,)) if n else SymF.one("h"), Alphabet.x_times(RatFunc(ONE, M_POLY)))

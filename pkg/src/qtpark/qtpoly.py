"""Canonical polynomial-in-(t, q) result object shared by all computation routes.

A QtPoly is a finite sum of t^i q^j monomials with positive integer
coefficients (the generating-function weights are counts, so nothing else can
appear).  It serializes deterministically: terms ascend by total degree, then
t-exponent, then q-exponent.
"""

from __future__ import annotations

import json
from typing import Iterator, Mapping

from .laurent import LaurentPoly


class QtPoly:
    """Immutable polynomial in t, q with nonnegative-integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean: dict[tuple[int, int], int] = {}
        if terms:
            for (et, eq), c in terms.items():
                if c == 0:
                    continue
                if c < 0 or c != int(c):
                    raise ValueError(f"coefficient {c} is not a positive integer")
                if et < 0 or eq < 0:
                    raise ValueError(f"negative exponent in t^{et} q^{eq}")
                clean[(et, eq)] = clean.get((et, eq), 0) + int(c)
        self.terms = clean

    @staticmethod
    def zero() -> "QtPoly":
        return QtPoly()

    @staticmethod
    def one() -> "QtPoly":
        return QtPoly({(0, 0): 1})

    @staticmethod
    def monomial(et: int, eq: int, coeff: int = 1) -> "QtPoly":
        return QtPoly({(et, eq): coeff})

    @staticmethod
    def from_laurent(p: LaurentPoly) -> "QtPoly":
        """Convert an exact Laurent polynomial; rejects anything non-conforming."""
        terms: dict[tuple[int, int], int] = {}
        for (et, eq, ez, ee), c in p.terms.items():
            if ez or ee:
                raise ValueError("result involves z or eps: %s" % p.text())
            if c.denominator != 1:
                raise ValueError("non-integer coefficient: %s" % p.text())
            terms[(et, eq)] = c.numerator
        return QtPoly(terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, QtPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "QtPoly") -> "QtPoly":
        res = dict(self.terms)
        for k, c in other.terms.items():
            res[k] = res.get(k, 0) + c
        out = QtPoly()
        out.terms = {k: c for k, c in res.items() if c}
        return out

    def shift(self, dt: int, dq: int) -> "QtPoly":
        """Multiply by the monomial t^dt q^dq."""
        out = QtPoly()
        out.terms = {(et + dt, eq + dq): c for (et, eq), c in self.terms.items()}
        return out

    def subs_q1(self) -> dict[int, int]:
        """Specialize q -> 1; returns {t-exponent: coefficient}."""
        res: dict[int, int] = {}
        for (et, _eq), c in self.terms.items():
            res[et] = res.get(et, 0) + c
        return {k: v for k, v in res.items() if v}

    def sorted_terms(self) -> list[tuple[tuple[int, int], int]]:
        return sorted(self.terms.items(), key=lambda kv: (kv[0][0] + kv[0][1],) + kv[0])

    def text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for (et, eq), c in self.sorted_terms():
            factors = []
            if et:
                factors.append("t" if et == 1 else f"t^{et}")
            if eq:
                factors.append("q" if eq == 1 else f"q^{eq}")
            mono = "*".join(factors)
            if not mono:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(mono)
            else:
                pieces.append(f"{c}*{mono}")
        return " + ".join(pieces)

    def json_terms(self) -> list[dict]:
        return [
            {"t": et, "q": eq, "coef": str(c)} for (et, eq), c in self.sorted_terms()
        ]

    @staticmethod
    def from_json_terms(items: list[dict]) -> "QtPoly":
        return QtPoly({(int(d["t"]), int(d["q"])): int(d["coef"]) for d in items})

    def __repr__(self) -> str:
        return f"QtPoly({self.text()})"


def parse_qt_text(s: str) -> QtPoly:
    """Inverse of QtPoly.text(), for round-trip tests and golden fixtures."""
    s = s.strip()
    if s == "0":
        return QtPoly()
    terms: dict[tuple[int, int], int] = {}
    for piece in s.split(" + "):
        coeff, et, eq = 1, 0, 0
        for factor in piece.split("*"):
            if factor.startswith("t"):
                et = int(factor[2:]) if "^" in factor else 1
            elif factor.startswith("q"):
                eq = int(factor[2:]) if "^" in factor else 1
            else:
                coeff = int(factor)
        terms[(et, eq)] = terms.get((et, eq), 0) + coeff
    return QtPoly(terms)

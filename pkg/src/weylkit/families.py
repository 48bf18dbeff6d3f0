"""Canonical spectral families with closed-form majorization predicates.

Two one-parameter families organize the chamber:

* u(k) -- equal weight 1/k on the first k outcomes.  These are the extreme
  points of the chamber, totally ordered u(1) > u(2) > ... > u(d), and any
  spectrum decomposes as a unique convex combination of them.
* chi(q) = (1 - q) u(1) + q u(d) -- the depolarized pure family, sweeping
  from the pure spectrum to complete disorder.

Against either family, majorization reduces to scalar tests (a rank count
for u(k), head/tail weight tests for chi(q)), and any incomparable pair has
inversion rank exactly 1, which makes both families noncatalyzable.
Sandwiching a spectrum between two chi members yields cheap sufficient
conditions for majorization of arbitrary pairs.

Members are built on the exact-rational path whenever their parameters are
rational, so the volume geometry can consume them exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from .errors import InvalidDimension, KOutOfRange, QOutOfRange
from .spectra import (
    EPS,
    ComparisonOutcome,
    Relation,
    Spectrum,
    make_spectrum,
    outcome_with_relation,
)


def uniform(k: int, d: int) -> Spectrum:
    """The k-uniform spectrum (1/k, ..., 1/k, 0, ..., 0) in dimension d."""
    if not 1 <= k <= d:
        raise KOutOfRange(f"need 1 <= k <= d, got k={k}, d={d}")
    return Spectrum((Fraction(1, k),) * k + (Fraction(0),) * (d - k))


def chi(q, d: int) -> Spectrum:
    """Depolarized pure spectrum (1 - q + q/d, q/d, ..., q/d)."""
    if d < 1:
        raise KOutOfRange(f"dimension must be >= 1, got {d}")
    if not 0 <= q <= 1:
        raise QOutOfRange(f"depolarization parameter {q} outside [0, 1]")
    if isinstance(q, float):
        tail = q / d
        return Spectrum((1.0 - q + tail,) + (tail,) * (d - 1))
    q = Fraction(q)
    tail = q / d
    return Spectrum((1 - q + tail,) + (tail,) * (d - 1))


def boltzmann_spectrum(n: int, k: int) -> Spectrum:
    """(1 - k/N) u(1) + (k/N) u(k), embedded in dimension N."""
    if not 1 <= k <= n:
        raise KOutOfRange(f"need 1 <= k <= N, got k={k}, N={n}")
    share = Fraction(k, n)
    head = 1 - share + share * Fraction(1, k)
    rest = share * Fraction(1, k)
    return Spectrum((head,) + (rest,) * (k - 1) + (Fraction(0),) * (n - k))


@dataclass(frozen=True)
class FamilyPoint:
    """A family member tagged with its generator and parameters."""

    kind: str  # uniform | depolarized_pure | boltzmann
    params: tuple
    d: int
    spectrum: Spectrum

    @classmethod
    def uniform(cls, k: int, d: int) -> "FamilyPoint":
        return cls("uniform", (k,), d, uniform(k, d))

    @classmethod
    def depolarized_pure(cls, q, d: int) -> "FamilyPoint":
        return cls("depolarized_pure", (q,), d, chi(q, d))

    @classmethod
    def boltzmann(cls, n: int, k: int) -> "FamilyPoint":
        return cls("boltzmann", (n, k), n, boltzmann_spectrum(n, k))

    @classmethod
    def from_json(cls, block: dict) -> "FamilyPoint":
        kind = block["kind"]
        if kind == "uniform":
            return cls.uniform(int(block["k"]), int(block["d"]))
        if kind == "depolarized_pure":
            q = block["q"]
            q = Fraction(q) if isinstance(q, str) else q
            return cls.depolarized_pure(q, int(block["d"]))
        if kind == "boltzmann":
            return cls.boltzmann(int(block["N"]), int(block["k"]))
        raise ValueError(f"unknown family kind {kind!r}")

    def to_jsonable(self) -> dict:
        out = {"kind": self.kind, "d": self.d, "spectrum": self.spectrum.to_jsonable()}
        if self.kind == "uniform":
            out["k"] = self.params[0]
        elif self.kind == "depolarized_pure":
            q = self.params[0]
            out["q"] = str(q) if isinstance(q, Fraction) else q
        else:
            out["N"], out["k"] = self.params
        return out


def _ge(a, b, exact: bool) -> bool:
    return a >= b if exact else float(a) >= float(b) - EPS


def compare_with_uniform(r: Spectrum, k: int) -> ComparisonOutcome:
    """Compare r against u(k) via the closed predicates.

    r majorizes u(k) iff rank(r) <= k; u(k) majorizes r iff r_1 <= 1/k;
    otherwise the pair is incomparable with inversion rank 1.
    """
    if not 1 <= k <= r.d:
        raise KOutOfRange(f"need 1 <= k <= d, got k={k}, d={r.d}")
    u = uniform(k, r.d)
    exact = r.is_exact
    top = Fraction(1, k) if exact else 1.0 / k
    r_maj = r.rank <= k
    u_maj = _ge(top, r.weights[0], exact)
    if r_maj and u_maj:
        relation = Relation.EQUAL if compare_equal(r, u) else Relation.MAJORIZES
    elif r_maj:
        relation = Relation.MAJORIZES
    elif u_maj:
        relation = Relation.MAJORIZED_BY
    else:
        relation = Relation.INCOMPARABLE
    return outcome_with_relation(r, u, relation)


def compare_equal(r: Spectrum, s: Spectrum) -> bool:
    if r.d != s.d:
        return False
    if r.is_exact and s.is_exact:
        return r.weights == s.weights
    return all(abs(float(a) - float(b)) <= EPS for a, b in zip(r.weights, s.weights))


def compare_with_chi(r: Spectrum, q) -> ComparisonOutcome:
    """Compare r against chi(q) via the closed predicates.

    r majorizes chi(q) iff r_1 >= chi_1; chi(q) majorizes r iff
    r_d >= chi_d; otherwise incomparable with inversion rank 1.  Both
    predicates hold simultaneously only when r equals chi(q).
    """
    c = chi(q, r.d)
    exact = r.is_exact and c.is_exact
    r_maj = _ge(r.weights[0], c.weights[0], exact)
    c_maj = _ge(r.weights[-1], c.weights[-1], exact)
    if r_maj and c_maj:
        relation = Relation.EQUAL if compare_equal(r, c) else Relation.MAJORIZES
    elif r_maj:
        relation = Relation.MAJORIZES
    elif c_maj:
        relation = Relation.MAJORIZED_BY
    else:
        relation = Relation.INCOMPARABLE
    return outcome_with_relation(r, c, relation)


@dataclass(frozen=True)
class DepolarizationBounds:
    """chi-family sandwich of a spectrum: upper majorizes it, lower is
    majorized by it, each with a prefix-sum coincidence."""

    upper: Spectrum
    lower: Spectrum
    q_upper: Union[float, Fraction]
    q_lower: Union[float, Fraction]

    def to_jsonable(self) -> dict:
        def num(v):
            return str(v) if isinstance(v, Fraction) else v

        return {
            "upper": self.upper.to_jsonable(),
            "lower": self.lower.to_jsonable(),
            "q_upper": num(self.q_upper),
            "q_lower": num(self.q_lower),
        }


def depolarization_bounds(s: Spectrum) -> DepolarizationBounds:
    """Tightest chi members bracketing s: q_up = d s_d, q_lo = d(1-s_1)/(d-1)."""
    d = s.d
    if d == 1:
        zero = Fraction(0) if s.is_exact else 0.0
        return DepolarizationBounds(s, s, zero, zero)
    q_up = d * s.weights[-1]
    q_lo = d * (1 - s.weights[0]) / (d - 1)
    return DepolarizationBounds(chi(q_up, d), chi(q_lo, d), q_up, q_lo)


class CorollaryVerdict(Enum):
    IMPLIES_MAJORIZES = "ImpliesMajorizes"
    IMPLIES_MAJORIZED_BY = "ImpliesMajorizedBy"
    INCONCLUSIVE = "Inconclusive"


def corollary_check(r: Spectrum, s: Spectrum) -> CorollaryVerdict:
    """Sufficient majorization test through the depolarization sandwich.

    If r_1 >= 1 + (1-d) s_d, then r majorizes the upper chi bound of s and
    hence s itself; if r_d >= (1 - s_1)/(d - 1), then r sits below the
    lower bound and s majorizes r.  Otherwise no conclusion.
    """
    if r.d != s.d:
        raise InvalidDimension(f"equal dimensions required, got {r.d} and {s.d}")
    d = r.d
    exact = r.is_exact and s.is_exact
    if _ge(r.weights[0], 1 + (1 - d) * s.weights[-1], exact):
        return CorollaryVerdict.IMPLIES_MAJORIZES
    if d > 1 and _ge(r.weights[-1], (1 - s.weights[0]) / (d - 1), exact):
        return CorollaryVerdict.IMPLIES_MAJORIZED_BY
    return CorollaryVerdict.INCONCLUSIVE


def decompose_uniform(r: Spectrum) -> tuple:
    """Barycentric weights of r over the extreme points u(1), ..., u(d).

    p_k = k (r_k - r_{k+1}) for k < d and p_d = d r_d; the p_k are
    nonnegative, sum to 1, and sum(p_k u(k)) telescopes back to r.
    """
    d = r.d
    w = r.weights
    p = [k * (w[k - 1] - w[k]) for k in range(1, d)]
    p.append(d * w[-1])
    return tuple(p)

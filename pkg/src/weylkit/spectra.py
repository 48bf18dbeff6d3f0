"""Sorted probability spectra and the majorization preorder.

A spectrum is a probability vector arranged in nonincreasing order, i.e. a
point of the nonincreasing Weyl chamber of the probability simplex.  Two
spectra r, s are compared through their prefix sums A_j = r_1 + ... + r_j:
r majorizes s when every A_j(r) >= A_j(s), with equality forced at j = d.
When the prefix-sum difference changes sign the pair is incomparable, and
the number of strict sign reversals (the inversion rank) classifies how the
two Lorenz curves interleave.

Two arithmetic paths coexist.  Float spectra are compared with tolerance
``EPS``; spectra built entirely from exact rationals (``fractions.Fraction``
or int entries, or "p/q" strings) keep exact arithmetic end to end, which
the volume geometry and golden tests rely on.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    EmptyInput,
    InvalidDimension,
    NegativeWeight,
    NotNormalized,
    ZeroSum,
)

# Tolerance for float prefix-sum comparisons and the zero threshold for rank.
EPS = 1e-12

Weight = Union[float, Fraction]


@dataclass(frozen=True)
class Spectrum:
    """Immutable sorted probability vector.

    ``weights`` is a tuple of floats, or of Fractions on the exact path.
    Construct through :func:`make_spectrum`, which sorts, validates and
    normalizes; the raw constructor trusts its input.
    """

    weights: tuple

    @property
    def d(self) -> int:
        return len(self.weights)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(w, (Fraction, int)) for w in self.weights)

    @property
    def rank(self) -> int:
        """Number of strictly positive weights (float path: > EPS)."""
        if self.is_exact:
            return sum(1 for w in self.weights if w > 0)
        return sum(1 for w in self.weights if w > EPS)

    def as_floats(self) -> np.ndarray:
        return np.array([float(w) for w in self.weights])

    def to_jsonable(self) -> list:
        """JSON form: list of decimals, or 'p/q' strings on the exact path."""
        if self.is_exact:
            return [str(Fraction(w)) for w in self.weights]
        return [float(w) for w in self.weights]

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i):
        return self.weights[i]


def _parse_value(v) -> Weight:
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, (Fraction, int, np.integer)):
        return Fraction(v)
    return float(v)


def make_spectrum(values: Iterable, normalize: bool = False) -> Spectrum:
    """Build a Spectrum from raw values, sorting them into the chamber.

    Entries may be numbers, Fractions, or strings such as "2/5" or "0.4";
    if every entry parses to a rational the exact path is used.  Entries in
    [-1e-12, 0) are clamped to zero.  With ``normalize`` the values are
    divided by their sum, otherwise the sum must already be 1 (exactly on
    the exact path, within EPS on the float path).
    """
    parsed = [_parse_value(v) for v in values]
    if not parsed:
        raise EmptyInput("spectrum needs at least one weight")
    exact = all(isinstance(w, Fraction) for w in parsed)
    if not exact:
        parsed = [float(w) for w in parsed]
    cleaned = []
    for w in parsed:
        if w < -EPS:
            raise NegativeWeight(f"weight {w} below -{EPS}")
        cleaned.append(w if w > 0 else (Fraction(0) if exact else 0.0))
    total = sum(cleaned) if exact else math.fsum(cleaned)
    if normalize:
        if total <= 0:
            raise ZeroSum("cannot normalize weights summing to <= 0")
        cleaned = [w / total for w in cleaned]
    else:
        if exact:
            if total != 1:
                raise NotNormalized(f"weights sum to {total}, expected 1")
        elif abs(total - 1.0) > EPS:
            raise NotNormalized(f"weights sum to {total!r}, expected 1")
    cleaned.sort(reverse=True)
    return Spectrum(tuple(cleaned))


def embed(r: Spectrum, d: int) -> Spectrum:
    """Zero-pad ``r`` to dimension ``d`` (the standard chamber embedding)."""
    if d < r.d:
        raise InvalidDimension(f"cannot embed dimension {r.d} into {d}")
    if d == r.d:
        return r
    zero = Fraction(0) if r.is_exact else 0.0
    return Spectrum(r.weights + (zero,) * (d - r.d))


def _common(r: Spectrum, s: Spectrum) -> tuple[Spectrum, Spectrum]:
    d = max(r.d, s.d)
    return embed(r, d), embed(s, d)


def partial_sums(r: Spectrum) -> tuple:
    """Prefix sums (A_1, ..., A_d); nondecreasing with concave increments."""
    return tuple(itertools.accumulate(r.weights))


def tail_sums(r: Spectrum) -> tuple:
    """Suffix sums (A'_1, ..., A'_d) with A'_j = r_j + ... + r_d, A'_1 = 1."""
    rev = list(itertools.accumulate(reversed(r.weights)))
    return tuple(reversed(rev))


class Relation(Enum):
    EQUAL = "Equal"
    MAJORIZES = "Majorizes"
    MAJORIZED_BY = "MajorizedBy"
    INCOMPARABLE = "Incomparable"


SIGN_CHARS = {-1: "-", 0: "0", 1: "+"}


@dataclass(frozen=True)
class ComparisonOutcome:
    """Full result of a majorization comparison.

    ``sign_sequence`` holds sign(A_j(r) - A_j(s)) as -1/0/+1 for j = 1..d
    (the last entry is always 0).  ``exact`` flags a prefix-sum coincidence
    at some j < d while the pair is comparable.  ``inversion_indices`` are
    the 1-based positions where the strict-sign subsequence flips, zeros
    disregarded; their count is the inversion rank, at most d - 2.
    """

    relation: Relation
    exact: bool
    sign_sequence: tuple
    inversion_indices: tuple
    inversion_rank: int

    @property
    def is_comparable(self) -> bool:
        return self.relation is not Relation.INCOMPARABLE

    def signs_as_chars(self) -> tuple:
        return tuple(SIGN_CHARS[s] for s in self.sign_sequence)

    def to_jsonable(self) -> dict:
        return {
            "relation": self.relation.value,
            "exact": self.exact,
            "sign_sequence": list(self.signs_as_chars()),
            "inversion_indices": list(self.inversion_indices),
            "inversion_rank": self.inversion_rank,
        }


def _sign_sequence(r: Spectrum, s: Spectrum) -> list[int]:
    exact_pair = r.is_exact and s.is_exact
    tol = 0 if exact_pair else EPS
    ar, as_ = partial_sums(r), partial_sums(s)
    signs = []
    for j in range(r.d):
        diff = ar[j] - as_[j]
        if diff > tol:
            signs.append(1)
        elif diff < -tol:
            signs.append(-1)
        else:
            signs.append(0)
    signs[-1] = 0  # total probability always coincides
    return signs


def _inversions(signs: Sequence[int]) -> tuple:
    """Flip positions of the strict-sign subsequence (1-based)."""
    indices = []
    prev = 0
    for j, sg in enumerate(signs, start=1):
        if sg == 0:
            continue
        if prev != 0 and sg != prev:
            indices.append(j)
        prev = sg
    return tuple(indices)


def _relation_from_signs(signs: Sequence[int]) -> Relation:
    has_pos = any(s > 0 for s in signs)
    has_neg = any(s < 0 for s in signs)
    if has_pos and has_neg:
        return Relation.INCOMPARABLE
    if has_pos:
        return Relation.MAJORIZES
    if has_neg:
        return Relation.MAJORIZED_BY
    return Relation.EQUAL


def outcome_with_relation(r: Spectrum, s: Spectrum, relation: Relation) -> ComparisonOutcome:
    """Assemble a ComparisonOutcome given an externally decided relation.

    Used by the fast family predicates, whose relation comes from a closed
    criterion rather than from the sign sequence itself.
    """
    signs = _sign_sequence(r, s)
    comparable = relation is not Relation.INCOMPARABLE
    inv = _inversions(signs) if not comparable else ()
    exact = comparable and r.d >= 2 and any(sg == 0 for sg in signs[:-1])
    return ComparisonOutcome(
        relation=relation,
        exact=exact,
        sign_sequence=tuple(signs),
        inversion_indices=inv,
        inversion_rank=len(inv),
    )


def compare(r: Spectrum, s: Spectrum) -> ComparisonOutcome:
    """Classify the majorization relation between two spectra.

    Dimensions may differ; the shorter spectrum is zero-padded.  Float
    pairs use tolerance EPS on prefix-sum differences, exact pairs compare
    exactly.
    """
    r, s = _common(r, s)
    signs = _sign_sequence(r, s)
    return outcome_with_relation(r, s, _relation_from_signs(signs))


def meet(r: Spectrum, s: Spectrum) -> Spectrum:
    """Greatest lower bound: prefix sums are the pointwise minima.

    The minimum of two concave nondecreasing prefix-sum sequences is again
    concave and nondecreasing, so the differenced weights form a valid
    sorted spectrum.  The result is majorized by both inputs and majorizes
    every common lower bound.
    """
    r, s = _common(r, s)
    ar, as_ = partial_sums(r), partial_sums(s)
    mins = [min(a, b) for a, b in zip(ar, as_)]
    weights = [mins[0]] + [mins[j] - mins[j - 1] for j in range(1, len(mins))]
    return make_spectrum(weights, normalize=False)


def tensor(r: Spectrum, s: Spectrum) -> Spectrum:
    """Product spectrum: all pairwise products, sorted descending."""
    products = [a * b for a in r.weights for b in s.weights]
    products.sort(reverse=True)
    return Spectrum(tuple(products))


def lorenz(r: Spectrum) -> tuple:
    """Lorenz curve vertices ((j/d, A_j) for j = 0..d), starting at (0, 0)."""
    sums = partial_sums(r)
    d = r.d
    if r.is_exact:
        pts = [(Fraction(0), Fraction(0))]
        pts += [(Fraction(j, d), sums[j - 1]) for j in range(1, d + 1)]
    else:
        pts = [(0.0, 0.0)] + [(j / d, sums[j - 1]) for j in range(1, d + 1)]
    return tuple(pts)


def sample_chamber_array(d: int, n: int, seed) -> np.ndarray:
    """n i.i.d. uniform chamber points as an (n, d) float array.

    Uniformity on the sorted simplex: draw d standard exponentials,
    normalize by their sum, sort descending.  Deterministic given seed
    (which may be an int or a numpy SeedSequence).
    """
    if d < 1:
        raise InvalidDimension("dimension must be >= 1")
    if n < 1:
        raise InvalidDimension("sample count must be >= 1")
    rng = np.random.default_rng(seed)
    x = rng.standard_exponential((n, d))
    x /= x.sum(axis=1, keepdims=True)
    x.sort(axis=1)
    return np.ascontiguousarray(x[:, ::-1])


def sample_chamber(d: int, n: int, seed) -> list[Spectrum]:
    """n uniform chamber samples as Spectrum objects (see array variant)."""
    x = sample_chamber_array(d, n, seed)
    return [Spectrum(tuple(float(v) for v in row)) for row in x]

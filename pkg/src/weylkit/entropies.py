"""Generalized entropy family and catalytic-comparability verdicts.

The one-parameter family

    f_nu(r) = log(sum_i r_i^nu) / (nu (1 - nu))   for nu not in {0, 1},
    f_0(r)  = (1/d) sum_i log r_i                 (Burg entropy),
    f_1(r)  = -sum_i r_i log r_i                  (Shannon entropy),

is Schur-concave for every nu, and the difference profile
F(nu, r, s) = f_nu(s) - f_nu(r) certifies catalytic convertibility:
r can be converted to s with the help of some catalyst iff F > 0 for all
real nu (after trimming shared trailing zeros).  A sign change in F means
no catalyst works in either direction: the pair is strongly incomparable.

Grid evaluation cannot quantify over all nu, so verdicts here are numerical
certifications; ``min_abs_F`` records the observed margin.  One shortcut is
exact: an odd inversion rank forces opposite strict dominance at the head
and tail of the Lorenz curves, which survives tensoring with any catalyst,
so odd-rank pairs are strongly incomparable with no grid needed.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .errors import UndefinedForZeroWeights
from .spectra import (
    EPS,
    ComparisonOutcome,
    Relation,
    Spectrum,
    compare,
    tensor,
)

LN2 = math.log(2.0)


def shannon(r: Spectrum, bits: bool = False) -> float:
    """Shannon entropy in nats (bits with the flag); 0*log0 taken as 0."""
    w = r.as_floats()
    w = w[w > 0.0]
    val = -float(np.dot(w, np.log(w)))
    val = max(val, 0.0)
    return val / LN2 if bits else val


def _f_nu_weights(w: np.ndarray, nu: float) -> float:
    """Evaluate f_nu on a positive-weight float array (log-sum-exp form)."""
    if nu == 1.0:
        return -float(np.dot(w, np.log(w)))
    logw = np.log(w)
    if nu == 0.0:
        return float(np.mean(logw))
    t = nu * logw
    m = t.max()
    lse = m + math.log(float(np.exp(t - m).sum()))
    return lse / (nu * (1.0 - nu))


def f_nu(r: Spectrum, nu: float, bits: bool = False) -> float:
    """Generalized entropy of order nu, in nats.

    Orders nu <= 0 diverge on zero weights; the caller is expected to have
    trimmed shared padding zeros first (``f_profile`` does this), otherwise
    UndefinedForZeroWeights is raised.
    """
    w = r.as_floats()
    if nu <= 0.0 and r.rank < r.d:
        raise UndefinedForZeroWeights(
            f"f_nu with nu={nu} needs strictly positive weights (rank "
            f"{r.rank} < d {r.d})"
        )
    if nu > 0.0 and nu != 1.0:
        w = w[w > 0.0]
    val = _f_nu_weights(w, float(nu))
    return val / LN2 if bits else val


@dataclass(frozen=True)
class NuGridConfig:
    """Evaluation grid for F-profiles.

    The default covers [lin_min, lin_max] with ``lin_count`` linear points
    plus log-spaced tails out to +-``log_tail_max`` (``log_tail_count``
    points split over both tails); the exact branch points 0 and 1 are
    always included.  The tail cap saturates the extreme-weight behavior of
    F at double precision.
    """

    lin_min: float = -5.0
    lin_max: float = 5.0
    lin_count: int = 2001
    log_tail_max: float = 100.0
    log_tail_count: int = 200

    def points(self) -> np.ndarray:
        parts = [np.linspace(self.lin_min, self.lin_max, self.lin_count)]
        hi = max(abs(self.lin_min), abs(self.lin_max), 1.0)
        if self.log_tail_max > hi and self.log_tail_count > 0:
            per_side = max(self.log_tail_count // 2, 1)
            tail = np.geomspace(hi, self.log_tail_max, per_side + 1)[1:]
            parts += [tail, -tail]
        parts.append(np.array([0.0, 1.0]))
        return np.unique(np.concatenate(parts))

    @classmethod
    def from_json(cls, block: dict) -> "NuGridConfig":
        return cls(
            lin_min=float(block.get("min", -5.0)),
            lin_max=float(block.get("max", 5.0)),
            lin_count=int(block.get("count", 2001)),
            log_tail_max=float(block.get("log_tail_max", 100.0)),
            log_tail_count=int(block.get("log_tail_count", 200)),
        )

    def to_jsonable(self) -> dict:
        return {
            "min": self.lin_min,
            "max": self.lin_max,
            "count": self.lin_count,
            "log_tail_max": self.log_tail_max,
            "log_tail_count": self.log_tail_count,
        }


DEFAULT_NU_GRID = NuGridConfig()


@dataclass(frozen=True)
class FProfile:
    """Sampled F(nu, r, s) = f_nu(s) - f_nu(r) over a nu grid.

    Both spectra are zero-padded to a common dimension, then trimmed to
    m = max(rank(r), rank(s)); grid points nu <= 0 are kept only when both
    trimmed spectra are strictly positive (i.e. the ranks match).
    """

    nu_grid: tuple
    f_source: tuple
    f_target: tuple
    F_values: tuple
    trimmed_rank: int
    ranks_equal: bool

    @property
    def min_abs_F(self) -> float:
        return min(abs(v) for v in self.F_values)

    def sign_changes(self, tol: float = EPS) -> list[tuple[float, float]]:
        """Brackets (nu_i, nu_i+1) where F strictly changes sign.

        Grid-level bisection brackets only; the crossing itself is not
        solved for analytically.
        """
        brackets = []
        for i in range(len(self.F_values) - 1):
            a, b = self.F_values[i], self.F_values[i + 1]
            if (a > tol and b < -tol) or (a < -tol and b > tol):
                brackets.append((self.nu_grid[i], self.nu_grid[i + 1]))
        return brackets

    def touches_zero(self, tol: float = EPS) -> bool:
        return any(abs(v) <= tol for v in self.F_values)

    def to_csv(self, path_or_file) -> None:
        """Write columns nu, f_source, f_target, F (17 significant digits)."""
        own = isinstance(path_or_file, (str, bytes))
        fh = open(path_or_file, "w", newline="", encoding="utf-8") if own else path_or_file
        try:
            writer = csv.writer(fh)
            writer.writerow(["nu", "f_source", "f_target", "F"])
            for nu, fs, ft, fv in zip(self.nu_grid, self.f_source, self.f_target, self.F_values):
                writer.writerow([f"{nu:.17g}", f"{fs:.17g}", f"{ft:.17g}", f"{fv:.17g}"])
        finally:
            if own:
                fh.close()


def _trimmed_floats(r: Spectrum, s: Spectrum) -> tuple[np.ndarray, np.ndarray, int, bool]:
    """Pad to a common dimension, then drop the shared zero tail."""
    d = max(r.d, s.d)
    wr = np.zeros(d)
    ws = np.zeros(d)
    wr[: r.d] = r.as_floats()
    ws[: s.d] = s.as_floats()
    m = max(r.rank, s.rank, 1)
    ranks_equal = r.rank == s.rank
    return wr[:m], ws[:m], m, ranks_equal


def _f_nu_vector(w: np.ndarray, nus: np.ndarray) -> np.ndarray:
    """f_nu over a grid of orders, for strictly positive weights."""
    logw = np.log(w)
    t = np.outer(nus, logw)
    peak = t.max(axis=1, keepdims=True)
    lse = peak[:, 0] + np.log(np.exp(t - peak).sum(axis=1))
    out = np.empty(len(nus))
    generic = (nus != 0.0) & (nus != 1.0)
    out[generic] = lse[generic] / (nus[generic] * (1.0 - nus[generic]))
    at_one = nus == 1.0
    if at_one.any():
        out[at_one] = -float(np.dot(w, logw))
    at_zero = nus == 0.0
    if at_zero.any():
        out[at_zero] = float(logw.mean())
    return out


def f_profile(r: Spectrum, s: Spectrum, grid: Optional[NuGridConfig] = None) -> FProfile:
    """Evaluate the entropy-difference profile F(nu, r, s) on a grid."""
    cfg = grid or DEFAULT_NU_GRID
    wr, ws, m, ranks_equal = _trimmed_floats(r, s)
    nus = cfg.points()
    if not ranks_equal:
        # orders <= 0 do not exist when one trimmed spectrum has zeros
        nus = nus[nus > 0.0]
    # zeros never contribute to sum(r^nu) for nu > 0, so a single
    # positive-entry array serves the whole remaining grid
    f_src = _f_nu_vector(wr[wr > 0.0], nus)
    f_tgt = _f_nu_vector(ws[ws > 0.0], nus)
    return FProfile(
        nu_grid=tuple(float(v) for v in nus),
        f_source=tuple(float(v) for v in f_src),
        f_target=tuple(float(v) for v in f_tgt),
        F_values=tuple(float(v) for v in (f_tgt - f_src)),
        trimmed_rank=m,
        ranks_equal=ranks_equal,
    )


class TrumpRelation(Enum):
    TRUMPS = "Trumps"
    TRUMPED_BY = "TrumpedBy"
    STRONGLY_INCOMPARABLE = "StronglyIncomparable"
    EQUAL = "Equal"
    BOUNDARY_ISOENTROPIC = "BoundaryIsoentropic"


@dataclass(frozen=True)
class TrumpVerdict:
    verdict: TrumpRelation
    via_parity: bool
    min_abs_F: float

    def to_jsonable(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "via_parity": self.via_parity,
            "min_abs_F": self.min_abs_F,
        }


def trump_verdict(r: Spectrum, s: Spectrum, grid: Optional[NuGridConfig] = None) -> TrumpVerdict:
    """Classify catalytic comparability of r versus s.

    Order of decision: identical spectra are Equal; plain majorization
    already implies trumping, so comparable pairs inherit their relation;
    an odd inversion rank settles strong incomparability by parity; the
    remaining (even-rank incomparable) pairs are classified by the sign
    pattern of the F-profile at tolerance EPS.  When the ranks differ the
    profile exists for nu > 0 only, and the divergence of F at nu -> 0+
    pins one direction: the lower-rank spectrum can never be trumped by
    the higher-rank one.  That limit sign enters the classification as an
    extra observation.
    """
    outcome = compare(r, s)
    if outcome.relation is Relation.EQUAL:
        return TrumpVerdict(TrumpRelation.EQUAL, via_parity=False, min_abs_F=0.0)

    profile = f_profile(r, s, grid)
    min_abs = profile.min_abs_F

    if outcome.relation is Relation.MAJORIZES:
        return TrumpVerdict(TrumpRelation.TRUMPS, via_parity=False, min_abs_F=min_abs)
    if outcome.relation is Relation.MAJORIZED_BY:
        return TrumpVerdict(TrumpRelation.TRUMPED_BY, via_parity=False, min_abs_F=min_abs)

    if outcome.inversion_rank % 2 == 1:
        return TrumpVerdict(
            TrumpRelation.STRONGLY_INCOMPARABLE, via_parity=True, min_abs_F=min_abs
        )

    values = np.array(profile.F_values)
    has_pos = bool(np.any(values > EPS))
    has_neg = bool(np.any(values < -EPS))
    if not profile.ranks_equal:
        # nu -> 0+ limit: F ~ (log rank(s) - log rank(r)) / nu
        if r.rank < s.rank:
            has_pos = True
        else:
            has_neg = True
    touches = bool(np.any(np.abs(values) <= EPS))

    if has_pos and has_neg:
        return TrumpVerdict(
            TrumpRelation.STRONGLY_INCOMPARABLE, via_parity=False, min_abs_F=min_abs
        )
    if touches or not (has_pos or has_neg):
        return TrumpVerdict(
            TrumpRelation.BOUNDARY_ISOENTROPIC, via_parity=False, min_abs_F=min_abs
        )
    verdict = TrumpRelation.TRUMPS if has_pos else TrumpRelation.TRUMPED_BY
    return TrumpVerdict(verdict, via_parity=False, min_abs_F=min_abs)


def catalyst_check(r: Spectrum, s: Spectrum, c: Spectrum) -> bool:
    """True iff r tensored with the catalyst majorizes s tensored with it."""
    outcome = compare(tensor(r, c), tensor(s, c))
    return outcome.relation in (Relation.MAJORIZES, Relation.EQUAL)

"""Weighted-shift reduction of the final-stage membership problem.

For 0 < |mu| < 1 the question whether a point belongs to the final-stage
failure locus reduces to an approximate-point-spectrum test for a weighted
shift whose weights are |mu| raised to consecutive border drops.  This
module builds that shift description, evaluates the exact spectral-radius
style bounds (geometric-mean asymptotics of weight products, which for these
weights are again |mu| to the spectral parameters), and predicts membership.
For mu = 0 the shift degenerates to a power partial isometry; the census
here records its backward/unilateral parts and the truncated-block gap
statistics that decide closed-range failure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .diagram import (
    DiagramProfile,
    MValue,
    NEG_INF,
    POS_INF,
    eval_M,
    validate,
)
from .extnum import (
    DEFAULT_TOL,
    EXT_INF,
    BandMembership,
    ExtReal,
    Membership,
    best_membership,
    pow_ext,
)
from .params import SpectralParams


class MuOutOfRangeError(ValueError):
    """The shift reduction needs 0 < |mu| < 1."""


class ShiftKind(Enum):
    BILATERAL = "bilateral"
    UNILATERAL = "unilateral"
    UNILATERAL_ADJOINT = "unilateral_adjoint"
    FINITE_NILPOTENT = "finite_nilpotent"


@dataclass(frozen=True)
class ShiftSpec:
    """A weighted shift built from a profile and a magnitude |mu|.

    ``weight(j)`` follows the per-kind convention: |mu|**(M_j - M_{j+1}) for
    bilateral and unilateral kinds (edge j -> j+1), |mu|**(M_{j-1} - M_j) for
    the adjoint kind (edge j -> j-1, defined for j <= j_max).  Phases are
    dropped throughout: every spectral set used downstream is rotation
    invariant, so only weight magnitudes matter.  ``down_weight(j)`` is the
    uniform descending-edge magnitude |mu|**(M_{j-1} - M_j) used to assemble
    truncated matrices of the dual operator.
    """

    kind: ShiftKind
    mu_abs: float
    profile: DiagramProfile
    j_min: MValue
    j_max: MValue

    def _pow_drop(self, drop: MValue) -> float:
        if drop == POS_INF:
            return 0.0
        return self.mu_abs ** int(drop)

    def weight(self, j: int) -> float:
        if self.kind is ShiftKind.UNILATERAL_ADJOINT:
            if j > self.j_max:
                raise ValueError(f"index {j} above the shift range")
            return self._pow_drop(eval_M(self.profile, j - 1) - eval_M(self.profile, j))
        if j < self.j_min or j > self.j_max:
            raise ValueError(f"index {j} outside the shift range")
        lo = eval_M(self.profile, j)
        hi = eval_M(self.profile, j + 1) if j + 1 <= self.j_max else NEG_INF
        if hi == NEG_INF:
            raise ValueError(f"edge {j} -> {j + 1} leaves the shift range")
        return self._pow_drop(lo - hi)

    def down_weight(self, j: int) -> float:
        """|mu|**(M_{j-1} - M_j) for j in the index range."""
        if j < self.j_min or j > self.j_max:
            raise ValueError(f"index {j} outside the shift range")
        return self._pow_drop(eval_M(self.profile, j - 1) - eval_M(self.profile, j))


def fringe_operator(profile: DiagramProfile, mu_abs: float) -> ShiftSpec:
    """The shift governing final-stage membership at magnitude |mu| in (0,1).

    The kind tracks where the border sequence stays finite: bilateral when it
    is finite on both sides, unilateral (adjoint) when it ends below (above),
    and a finite nilpotent block when it is finite on a bounded range only;
    in the last case membership holds exactly at lambda = 0 and no matrix
    oracle is needed.
    """
    structure = validate(profile)
    if not 0.0 < mu_abs < 1.0:
        raise MuOutOfRangeError(f"|mu| must lie in (0, 1): {mu_abs}")
    if structure.is_simple:
        raise ValueError("fringe reduction is only used for non-simple diagrams")
    j0, j1 = structure.j0, structure.j1
    if j0 == NEG_INF and j1 == POS_INF:
        kind = ShiftKind.BILATERAL
    elif j0 == NEG_INF:
        kind = ShiftKind.UNILATERAL_ADJOINT
    elif j1 == POS_INF:
        kind = ShiftKind.UNILATERAL
    else:
        kind = ShiftKind.FINITE_NILPOTENT
    return ShiftSpec(kind=kind, mu_abs=mu_abs, profile=profile, j_min=j0, j_max=j1)


@dataclass(frozen=True)
class RidgeBounds:
    """Exact geometric-mean bounds for the dual shift, as (|mu|, exponent).

    For the bilateral kind these are the two-sided inf/sup product limits of
    the adjoint shift; for one-sided kinds both slots of a pair carry the
    single relevant value.  ``i`` bounds never exceed their ``r`` partners.
    """

    mu_abs: float
    i_minus: ExtReal
    i_plus: ExtReal
    r_minus: ExtReal
    r_plus: ExtReal
    kind: ShiftKind

    @property
    def i_minus_value(self) -> float:
        return pow_ext(self.mu_abs, self.i_minus)

    @property
    def i_plus_value(self) -> float:
        return pow_ext(self.mu_abs, self.i_plus)

    @property
    def r_minus_value(self) -> float:
        return pow_ext(self.mu_abs, self.r_minus)

    @property
    def r_plus_value(self) -> float:
        return pow_ext(self.mu_abs, self.r_plus)

    def to_json(self) -> dict:
        return {
            "mu_abs": self.mu_abs,
            "i_minus": {"exponent": str(self.i_minus), "value": self.i_minus_value},
            "i_plus": {"exponent": str(self.i_plus), "value": self.i_plus_value},
            "r_minus": {"exponent": str(self.r_minus), "value": self.r_minus_value},
            "r_plus": {"exponent": str(self.r_plus), "value": self.r_plus_value},
        }


def ridge_bounds(spec: ShiftSpec, params: SpectralParams) -> RidgeBounds:
    """Map the spectral parameters onto the dual shift's product bounds.

    Since |mu| < 1, sup/inf of |mu|**(average drop) swap with inf/sup of the
    drops, so the bounds come out as |mu| raised to the exact parameters:
    bilateral dual has i^- = mu**rho_plus, i^+ = mu**rho_minus,
    r^- = mu**delta_plus, r^+ = mu**delta_minus; the one-sided kinds keep
    the pair from their finite side.
    """
    if spec.kind is ShiftKind.BILATERAL:
        return RidgeBounds(
            spec.mu_abs,
            i_minus=params.rho_plus,
            i_plus=params.rho_minus,
            r_minus=params.delta_plus,
            r_plus=params.delta_minus,
            kind=spec.kind,
        )
    if spec.kind is ShiftKind.UNILATERAL_ADJOINT:
        return RidgeBounds(
            spec.mu_abs,
            i_minus=params.rho_minus,
            i_plus=params.rho_minus,
            r_minus=params.delta_minus,
            r_plus=params.delta_minus,
            kind=spec.kind,
        )
    if spec.kind is ShiftKind.UNILATERAL:
        return RidgeBounds(
            spec.mu_abs,
            i_minus=params.rho_plus,
            i_plus=params.rho_plus,
            r_minus=params.delta_plus,
            r_plus=params.delta_plus,
            kind=spec.kind,
        )
    return RidgeBounds(
        spec.mu_abs,
        i_minus=EXT_INF,
        i_plus=EXT_INF,
        r_minus=EXT_INF,
        r_plus=EXT_INF,
        kind=spec.kind,
    )


def _radius_interval_member(
    lambda_abs: float, lo: float, hi: float, tol: float
) -> Membership:
    """Closed-interval membership of a radius, with a log-domain outside collar.

    Points in the interval (including its endpoints) are inside; points whose
    violation is below ``tol`` in the log domain are boundary.  An empty
    interval (lo > hi) admits no members.
    """
    lower = math.inf if lo == 0.0 else (
        -math.inf if lambda_abs == 0.0 else math.log(lambda_abs) - math.log(lo)
    )
    upper = math.inf if lambda_abs == 0.0 else (
        -math.inf if hi == 0.0 else math.log(hi) - math.log(lambda_abs)
    )
    slack = min(lower, upper)
    if slack >= 0.0:
        return Membership.INSIDE
    if slack > -tol:
        return Membership.BOUNDARY
    return Membership.OUTSIDE


def sigma_ap_predict(
    spec: ShiftSpec,
    bounds: RidgeBounds,
    lambda_abs: float,
    tol: float = DEFAULT_TOL,
) -> BandMembership:
    """Predicted approximate-point-spectrum membership of |lambda|.

    The prediction covers the operator whose boundedness below decides
    final-stage membership: the descending dual of the fringe shift.
    Bilateral: union of the three radius intervals [i^+, r^+], [r^+, i^-],
    [i^-, r^-] (the middle one may be empty).  Unilateral: the closed disc
    of radius r.  Unilateral adjoint: the annulus [i, r].  Finite nilpotent:
    the single point 0.  These are genuine closed sets, so exact members
    (even on a degenerate circle) report inside; the boundary state is the
    thin outside collar within log-domain ``tol``.
    """
    if not 0.0 <= lambda_abs <= 1.0:
        raise ValueError(f"|lambda| must lie in [0, 1]: {lambda_abs}")
    if spec.kind is ShiftKind.FINITE_NILPOTENT:
        state = Membership.INSIDE if lambda_abs == 0.0 else Membership.OUTSIDE
        return BandMembership(state, tol)
    if spec.kind is ShiftKind.UNILATERAL:
        state = _radius_interval_member(lambda_abs, 0.0, bounds.r_minus_value, tol)
        return BandMembership(state, tol)
    if spec.kind is ShiftKind.UNILATERAL_ADJOINT:
        state = _radius_interval_member(
            lambda_abs, bounds.i_minus_value, bounds.r_minus_value, tol
        )
        return BandMembership(state, tol)
    states = (
        _radius_interval_member(lambda_abs, bounds.i_plus_value, bounds.r_plus_value, tol),
        _radius_interval_member(lambda_abs, bounds.r_plus_value, bounds.i_minus_value, tol),
        _radius_interval_member(lambda_abs, bounds.i_minus_value, bounds.r_minus_value, tol),
    )
    return BandMembership(best_membership(*states), tol)


@dataclass(frozen=True)
class PpiCensus:
    """Census of the mu = 0 power partial isometry.

    ``index_histogram`` maps truncated-block index (gap between consecutive
    border drops) to its multiplicity within the scanned range; the
    unboundedness flag is decided symbolically from the tails so it reflects
    the whole diagram, not just the scan.
    """

    has_backward: bool
    has_unilateral: bool
    truncated_indices_unbounded: bool
    index_histogram: dict[int, int]


def ppi_census(profile: DiagramProfile, scan: int) -> PpiCensus:
    """Drop positions and gap statistics over [-scan, scan].

    A backward-shift part exists exactly when the minus tail stops dropping
    (constant rows below); a unilateral part when the plus tail does.  Gap
    lengths are unbounded exactly when a tail keeps producing arbitrarily
    long flat runs: a zero-rise periodic tail or geometric blocks containing
    a zero slope.
    """
    validate(profile)
    if scan < 1:
        raise ValueError("scan must be >= 1")
    drops = []
    for j in range(-scan, scan):
        mj = eval_M(profile, j)
        mnext = eval_M(profile, j + 1)
        if isinstance(mj, int) and mj > mnext:
            drops.append(j)
    histogram: dict[int, int] = {}
    for left, right in zip(drops, drops[1:]):
        gap = right - left
        histogram[gap] = histogram.get(gap, 0) + 1
    unbounded = (
        profile.minus_tail.unbounded_flat_runs()
        or profile.plus_tail.unbounded_flat_runs()
    )
    return PpiCensus(
        has_backward=profile.minus_tail.is_rise_zero(),
        has_unilateral=profile.plus_tail.is_rise_zero(),
        truncated_indices_unbounded=unbounded,
        index_histogram=histogram,
    )

"""Symbolic spectral regions and point membership on the magnitude square.

Three region kinds are exposed for a non-simple profile, all rotation
invariant and therefore described entirely on (|mu|, |lambda|) in [0,1]^2:

* the joint spectrum: one closed exponent band between min(delta) and
  max(rho), exact everywhere including the degenerate-exponent conventions;
* the middle-stage failure locus: the open band between the two running
  average exponents, plus axis rules driven by the Wold decomposition of
  each isometry, plus the origin;
* the final-stage failure locus: one of four shapes keyed by the Wold types,
  built from closed bands and torus strips.

The last two are determined by the structure theory only up to the torus
shell (and up to a closed-versus-open layer for the middle stage), so
membership is tri-state: points inside the unresolved layer report as
boundary, never as inside or outside.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .diagram import StructureReport, WoldType
from .extnum import (
    DEFAULT_TOL,
    BandDomainError,
    BandMembership,
    ExtReal,
    Membership,
    band_member,
    best_membership,
    envelope_pair_member,
)
from .params import SpectralParams


class RegionKind(Enum):
    TAYLOR = "taylor"
    GAMMA2 = "gamma2"
    GAMMA3 = "gamma3"


class WoldCase(Enum):
    MIXED_MIXED = "mixed_mixed"
    MIXED_W_SHIFT_Z = "mixed_w_shift_z"
    SHIFT_W_MIXED_Z = "shift_w_mixed_z"
    SHIFT_SHIFT = "shift_shift"


@dataclass(frozen=True)
class RegionSpec:
    """Evaluable description of one region.

    ``bands`` holds (upper_exp, lower_exp) pairs: the band is
    a**lower_exp <= b <= a**upper_exp on (a, b) = (|mu|, |lambda|).  The
    middle band of the shift/shift case may be crossed (upper > lower); it
    is then empty away from convention cells and is evaluated as a raw
    envelope pair.  Axis and torus flags add the strip components.
    """

    kind: RegionKind
    bands: tuple[tuple[ExtReal, ExtReal], ...]
    include_t_cross_d: bool = False  # {|mu| = 1}
    include_d_cross_t: bool = False  # {|lambda| = 1}
    include_mu_axis: bool = False  # {|lambda| = 0}, middle stage only
    include_lambda_axis: bool = False  # {|mu| = 0}, middle stage only
    origin_included: bool = True
    strict_bands: bool = False  # open-band semantics (middle stage)
    wold_case: WoldCase | None = None


def wold_case(structure: StructureReport) -> WoldCase:
    w_mixed = structure.wold_w is WoldType.MIXED_UNITARY_AND_SHIFT
    z_mixed = structure.wold_z is WoldType.MIXED_UNITARY_AND_SHIFT
    if w_mixed and z_mixed:
        return WoldCase.MIXED_MIXED
    if w_mixed:
        return WoldCase.MIXED_W_SHIFT_Z
    if z_mixed:
        return WoldCase.SHIFT_W_MIXED_Z
    return WoldCase.SHIFT_SHIFT


def _require_nonsimple(structure: StructureReport) -> None:
    if structure.is_simple:
        raise ValueError("regions are only defined for non-simple diagrams")


def taylor_region(params: SpectralParams) -> RegionSpec:
    """The joint spectrum: the closed band (min delta, max rho)."""
    p = min(params.delta_minus, params.delta_plus)
    q = max(params.rho_minus, params.rho_plus)
    return RegionSpec(kind=RegionKind.TAYLOR, bands=((p, q),))


def taylor_member(
    params: SpectralParams, mu_abs: float, lambda_abs: float, tol: float = DEFAULT_TOL
) -> BandMembership:
    region = taylor_region(params)
    p, q = region.bands[0]
    return band_member(mu_abs, lambda_abs, p, q, tol)


def gamma2_region(params: SpectralParams, structure: StructureReport) -> RegionSpec:
    """Middle-stage failure locus: open band (eta_plus, eta_minus) + axes."""
    _require_nonsimple(structure)
    return RegionSpec(
        kind=RegionKind.GAMMA2,
        bands=((params.eta_minus, params.eta_plus),),
        include_mu_axis=structure.wold_w is WoldType.MIXED_UNITARY_AND_SHIFT,
        include_lambda_axis=structure.wold_z is WoldType.MIXED_UNITARY_AND_SHIFT,
        origin_included=True,
        strict_bands=True,
        wold_case=wold_case(structure),
    )


def _is_notched_plane(structure: StructureReport) -> bool:
    # Non-simple with no outer corners: the plane-minus-a-quadrant class.
    from .diagram import DefectClass

    return structure.defect_class is DefectClass.NON_POSITIVE


def gamma3_region(params: SpectralParams, structure: StructureReport) -> RegionSpec:
    """Final-stage failure locus, keyed by the Wold types of the pair."""
    _require_nonsimple(structure)
    case = wold_case(structure)
    if case is WoldCase.MIXED_MIXED:
        return RegionSpec(
            kind=RegionKind.GAMMA3,
            bands=(),
            include_t_cross_d=True,
            include_d_cross_t=True,
            origin_included=not _is_notched_plane(structure),
            wold_case=case,
        )
    if case is WoldCase.MIXED_W_SHIFT_Z:
        bands = ((params.delta_minus, params.rho_minus),)
        return RegionSpec(
            kind=RegionKind.GAMMA3,
            bands=bands,
            include_t_cross_d=True,
            origin_included=True,
            wold_case=case,
        )
    if case is WoldCase.SHIFT_W_MIXED_Z:
        bands = ((params.delta_plus, params.rho_plus),)
        return RegionSpec(
            kind=RegionKind.GAMMA3,
            bands=bands,
            include_d_cross_t=True,
            origin_included=True,
            wold_case=case,
        )
    bands = (
        (params.delta_minus, params.rho_minus),
        (params.rho_plus, params.delta_minus),  # middle pair, possibly crossed
        (params.delta_plus, params.rho_plus),
    )
    return RegionSpec(
        kind=RegionKind.GAMMA3, bands=bands, origin_included=True, wold_case=case
    )


def _check_point(mu_abs: float, lambda_abs: float) -> None:
    if not 0.0 <= mu_abs <= 1.0:
        raise BandDomainError(f"|mu| must lie in [0, 1]: {mu_abs}")
    if not 0.0 <= lambda_abs <= 1.0:
        raise BandDomainError(f"|lambda| must lie in [0, 1]: {lambda_abs}")


def _band_eval(
    pair: tuple[ExtReal, ExtReal], a: float, b: float, tol: float
) -> BandMembership:
    p, q = pair
    if p <= q:
        return band_member(a, b, p, q, tol)
    return envelope_pair_member(a, b, lower_exp=q, upper_exp=p, tol=tol)


def region_member(
    region: RegionSpec, mu_abs: float, lambda_abs: float, tol: float = DEFAULT_TOL
) -> BandMembership:
    """Tri-state membership of a magnitude pair in a region."""
    _check_point(mu_abs, lambda_abs)
    a, b = mu_abs, lambda_abs

    if region.kind is RegionKind.TAYLOR:
        p, q = region.bands[0]
        return band_member(a, b, p, q, tol)

    if region.kind is RegionKind.GAMMA2:
        if a == 0.0 and b == 0.0:
            return BandMembership(Membership.INSIDE, tol)
        if a == 1.0 and b == 1.0:
            return BandMembership(Membership.BOUNDARY, tol)  # torus shell unresolved
        if a == 1.0 or b == 1.0:
            return BandMembership(Membership.OUTSIDE, tol)
        if b == 0.0:
            state = Membership.INSIDE if region.include_mu_axis else Membership.OUTSIDE
            return BandMembership(state, tol)
        if a == 0.0:
            state = (
                Membership.INSIDE if region.include_lambda_axis else Membership.OUTSIDE
            )
            return BandMembership(state, tol)
        eta_minus, eta_plus = region.bands[0]
        return envelope_pair_member(a, b, lower_exp=eta_plus, upper_exp=eta_minus, tol=tol)

    # final-stage locus
    if a == 1.0 and b == 1.0:
        return BandMembership(Membership.BOUNDARY, tol)  # torus shell unresolved
    if a == 0.0 and b == 0.0:
        state = Membership.INSIDE if region.origin_included else Membership.OUTSIDE
        return BandMembership(state, tol)
    states = []
    if region.include_t_cross_d and a == 1.0:
        states.append(Membership.INSIDE)
    if region.include_d_cross_t and b == 1.0:
        states.append(Membership.INSIDE)
    for pair in region.bands:
        states.append(_band_eval(pair, a, b, tol).state)
    if not states:
        states.append(Membership.OUTSIDE)
    return BandMembership(best_membership(*states), tol)


def gamma2_member(
    params: SpectralParams,
    structure: StructureReport,
    mu_abs: float,
    lambda_abs: float,
    tol: float = DEFAULT_TOL,
) -> BandMembership:
    return region_member(gamma2_region(params, structure), mu_abs, lambda_abs, tol)


def gamma3_member(
    params: SpectralParams,
    structure: StructureReport,
    mu_abs: float,
    lambda_abs: float,
    tol: float = DEFAULT_TOL,
) -> BandMembership:
    return region_member(gamma3_region(params, structure), mu_abs, lambda_abs, tol)


@dataclass(frozen=True)
class ConsistencyReport:
    checked: int
    skipped: int
    mismatches: tuple[tuple[float, float], ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def parts_consistency_check(
    params: SpectralParams,
    structure: StructureReport,
    samples: list[tuple[float, float]],
    tol: float = DEFAULT_TOL,
) -> ConsistencyReport:
    """Check that the joint spectrum is the union of its two failure loci.

    Samples where any of the three answers is boundary are skipped (the
    decomposition is only determined off the unresolved layers); for the
    rest, membership in the joint spectrum must coincide with membership in
    at least one locus.
    """
    taylor = taylor_region(params)
    gamma2 = gamma2_region(params, structure)
    gamma3 = gamma3_region(params, structure)
    checked = skipped = 0
    mismatches = []
    for mu_abs, lambda_abs in samples:
        t = region_member(taylor, mu_abs, lambda_abs, tol).state
        g2 = region_member(gamma2, mu_abs, lambda_abs, tol).state
        g3 = region_member(gamma3, mu_abs, lambda_abs, tol).state
        if Membership.BOUNDARY in (t, g2, g3):
            skipped += 1
            continue
        checked += 1
        in_union = g2 is Membership.INSIDE or g3 is Membership.INSIDE
        if (t is Membership.INSIDE) != in_union:
            mismatches.append((mu_abs, lambda_abs))
    return ConsistencyReport(checked, skipped, tuple(mismatches))


def modulus(value: complex | float | int) -> float:
    """Reduce a complex sample point to its magnitude.

    Region membership is rotation invariant, so only |mu| and |lambda|
    matter; this is the single place complex inputs are accepted.
    """
    return abs(value)

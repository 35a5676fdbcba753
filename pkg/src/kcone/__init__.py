"""Cones over metric spaces with a lower curvature bound, their boundary
self-gluings, and numerical checks of volume comparison."""

__version__ = "0.1.0"

from .errors import (
    ExpansionDomainError,
    InfeasibleTriangle,
    InvalidArgument,
    KConeError,
    SchemaError,
    StepViolation,
    UnsupportedMeasure,
    UnsupportedVariant,
)
from .spaceform import (
    TriangleData,
    asn,
    comparison_angle,
    cosine_law_side,
    cs,
    diameter_bound,
    half_chord_value,
    sn,
    sn_power_integral,
    trig_inequality_margin,
)
from .estimate import VolumeEstimate
from .dirspace import Circle, DirectionSpace, FiniteNet, Interval, Sphere, Suspension, dir_distance, dir_net, dir_sample, dir_volume
from .cone import ConePoint, ConeSpace, annulus_volume, cone_ball_volume, cone_distance, cone_sample
from .tube import BallChain, euclidean_ball_volume, trapezoidal_ball_volume, tube_volume_exact, tube_volume_expansion, union_volume_mc
from .glue import (
    AntipodalCircle,
    AntipodalSphere,
    FinitePairing,
    GluedSpace,
    Identity,
    IntervalReflection,
    PolygonGluing,
    ReflectionCircle,
    ReflectionSphere,
    catalog_2d,
    glued_distance,
    glued_volume,
    involution_bilipschitz_property,
    involution_check,
    polygon_glued_distance,
    radius_report,
)
from .comparison import (
    AnnulusSpec,
    RoundSphere,
    annulus_map,
    bg_ratio_report,
    bilipschitz_bounds_check,
    model_annulus_volume,
    partition_sequence,
    riemann_sum_consistency,
    rigidity_equality_check,
    rough_volume_estimate,
    space_annulus_volume,
)

"""Kernel (current) distance between weighted point sets, curves and meshes."""

from kdist._core import get_threads, set_threads
from kdist.collection import ShapeCollection, distance_matrix, mean_shape_embedding, nearest_neighbor
from kdist.currents import (
    CurrentAtoms,
    current_cross_similarity,
    current_distance_sq,
    curve_atoms,
    mesh_atoms,
    refine_curve,
)
from kdist.errors import (
    DimensionMismatchError,
    IndistinguishableError,
    KdistError,
    NotPositiveDefiniteError,
    ParseError,
)
from kdist.exact import DistanceResult, cross_similarity, kernel_distance, kernel_distance_sq
from kdist.features import (
    FeatureMapSpec,
    approx_distance_sq,
    embed_current,
    embed_measure,
    feature_error_report,
    lift_point,
    lift_points,
    sample_feature_map,
)
from kdist.ipm import WitnessFunction, ipm_lower_bound, rkhs_norm, tv_distance, witness
from kdist.kernels import GramReport, KernelSpec, check_positive_definite, eval_kernel, gram_matrix
from kdist.shapes import (
    DiscreteMeasure,
    PolyCurve,
    TriMesh,
    parse_curve,
    parse_mesh,
    parse_points,
    serialize_curve,
    serialize_mesh,
    serialize_points,
)
from kdist.spectral import SpectralLift, lifted_distance_sq, spectral_lift

__version__ = "0.1.0"

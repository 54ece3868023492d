"""Bézier curves, B-splines and centroid curves in unique geodesic spaces."""

from .bezier import (ControlPolygon, CurveSample, DeCasteljauTrace, aitken_neville,
                     condition1_defect, de_casteljau, de_casteljau_trace, distance_weights,
                     rational_de_casteljau, sample_curve, split)
from .core import (Capabilities, CapabilityError, ConvergenceError, DomainError,
                   EuclideanSpace, GeodesicError, GeodesicSpace, GeodesicSpaceDescriptor,
                   SpaceMismatchError, SpacePoint, TangentVector, affine, bernstein,
                   distance, euclidean_space, exp_map, log_map)
from .karcher import (KarcherSolution, WeightedMeanProblem, casteljau_lower_bounds,
                      centroid_curve, endpoint_tangent_check, karcher_mean, segment_median,
                      sphere_counterexample, stagewise_energies)
from .matrix import (E3, SPD2, E3Space, Spd2Space, e3_distance, e3_exp, e3_log, spd2_affine,
                     spd2_distance)
from .spaces import SPHERE, ManhattanSpace, ParisSpace, SphereSpace, manhattan_affine, sphere_affine
from .spline import KnotError, KnotVector, SplineDef, close_spline, de_boor, locate_span

__version__ = "0.1.0"

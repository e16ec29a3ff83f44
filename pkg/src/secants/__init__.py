"""Secant-size spectra of point sets in finite projective planes."""

__version__ = "0.1.0"

from .field import Field, FieldError, legendre, lift, make_field
from .plane import AffineFrame, PlaneError, ProjectivePlane, affine_embed, build_plane
from .spectrum import (BoundsReport, PointSet, SecantSpectrum, bounds_report,
                       complement, compute_spectrum, cor_bound_ceiling,
                       max_frequency, verify_counting_identities)
from .construct import (ConstructionError, FamilyParams, ParabolaParams, ec_region,
                        parabola_family, parabola_region, pointset_from_json,
                        pointset_to_json, random_set)
from .charwalk import (LawReport, LevelStats, ProjectionProfile, Walk, level_stats,
                       phi_sum, projection_profile, psi_walk, verify_projection_laws)
from .ecurve import (Curve, CurveError, LineCurveRelation, cubic_root_count,
                     curve_count, ec_spectrum_scan, line_curve_check)
from .legit import (LegitColoring, LegitError, LinearHypergraph,
                    generate_linear_hypergraph, two_phase_coloring, verify_legitimate)
from .harness import (SearchResult, SweepRow, exhaustive_minmax, local_search,
                      run_sweep, sweep_to_csv)

"""Profiles of Riemann surfaces spread over the sphere with finitely many base points."""

from .perm import (Finite, Orbit, PeriodicIntegers, Permutation, SheetSet, SheetSetMismatch,
                   compose, cycle_structure, inverse)
from .model import (Arc, Constellation, EdgeSeg, ProfileGraph, Vertex, from_constellation,
                    is_transitive, monodromy_product)
from .validation import (InvalidProfile, ValidationReport, Violation, is_connected,
                         validate_profile_type)
from .covering import (BetaCycle, CoveringPath, ExactCovering, MuObject, Walk,
                       backtracking_cover_oracle, beta_cycles, find_exact_covering, forced_walk,
                       is_definition1_path, mu_objects, verify_exact_covering)
from .surface import (GluingRecord, SurfaceReport, euler_from_cells, glue, surface_report,
                      to_constellation)
from .enumeration import (EnumFilter, cross_check_theorem, enumerate_constellations,
                          random_constellation)
from .fileformat import ProfileDocument, ProfileParseError, parse_profile, serialize_profile
from .render import render_diagram

__version__ = "0.1.0"

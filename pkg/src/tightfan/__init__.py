"""Exact-arithmetic toolkit for complete polyhedral fans.

Face, normal and meeting fans; tightness and the 2D/3D classification;
torsion, canonical scalings and the constructive polytopality test; and
the stars of Voronoi parallelohedron tilings.  Every number is a
:class:`fractions.Fraction`.
"""

from .cone import Cone
from .errors import (BadChain, ClassificationConflict, IncompleteScaling, InvalidFan,
                     InvariantViolation, MalformedInput, NonzeroTorsion, NotAHyperplane,
                     NotAStar, NotCompletePointed, NotConvex, NotFullDim, NotInterior,
                     NotPosDef, PoleUndefined, TightFanError, TightnessViolation, Unbounded,
                     WrongDim)
from .fan import Fan, direct_sum, face_fan, fan_meeting_fan, meeting_fan, normal_fan
from .parallelohedra import (FaceStar, Lattice, delone_classify, face_stars,
                             verify_parallelohedron_tightness, voronoi_cell)
from .polytope import Polytope, combinatorially_isomorphic, from_halfspaces, hull, polar, pole
from .scaling import (Lifting, Polytopality, TorsionSystem, WeightedScaling, canonical_scaling,
                      fan_star_scaling, is_polytopal, lifting_from_scaling,
                      polytope_from_scaling, scaling_from_polytope, star_scaling, torsion,
                      torsion_system)
from .tightness import (NotTight, Separation, TightType2, TightType3, classify, classify_2d,
                        classify_3d, facet_cycles, is_standard_face, is_tight, locally_symmetric,
                        separating_surrogate, tangent_cone, tightness_violations)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

"""Pinch-point scheme lengths and Gauss-class coefficients of projective surfaces,
computed from Picard-lattice data and, independently, from Groebner bases of
ramification ideals of random projections."""

from .chowlattice import (Classification, GaussClass, ModelInconsistencyError, SurfaceModel,
                          blow_up, class_degree, classify, curve_gauss_coefficient,
                          gauss_class, inner_projection_model, pinch_number, ruled_pinch)
from .catalog import (ParamSurface, catalog_models, del_pezzo, load_descriptor, ruled_model,
                      save_descriptor, scroll, surface_from_spec, veronese)

__version__ = "0.1.0"

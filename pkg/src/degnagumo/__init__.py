"""Fronts and spectra of the Nagumo equation with degenerate diffusion."""
from .model import (ModelSpec, validate_hypotheses, threshold_speed, script_D,
                    stationary_alpha, hamiltonian)
from .fronts import (GridConfig, FrontProfile, solve_stationary_front,
                     solve_traveling_front, solve_front, verify_decay,
                     coefficient_bound, coefficient_tails, profile_residual)
from .spectrum import (WeightPlan, select_weight, classify_and_threshold,
                       fredholm_border, consistent_splitting_bound,
                       absolute_spectrum_edge)
from .eigensolve import (build_operator, compute_spectrum, Window,
                         translation_eigenpair_check, translation_pair,
                         liouville_transform, sturm_check, regularization_sweep)
from .energy import energy_certificate, transform_pair, G_coefficient

__version__ = "0.1.0"

"""per1lab: numerics for cubic polynomials with a multiplier-1 parabolic
fixed point, their Fatou coordinates, and eggbeater perturbations."""

from .dynamics import (CubicMap, FixedPoint, MonicCentered, OrbitResult,
                       Per1Param, classify_orbit, critical_points,
                       cubic_roots, fixed_points, from_monic_centered,
                       per1_map, residue_index, residue_index_quadrature,
                       resit, to_monic_centered)
from .errors import (BasinError, CapturedError, ConvergenceError,
                     NumericalError, Per1LabError, TransitError)
from .fatou import (EcalleHeight, FatouValue, attracting_coordinate,
                    critical_ecalle_height, find_parameter_for_height,
                    horn_multiplier, horn_offset, in_attracting_petal,
                    in_repelling_petal, repelling_coordinate,
                    repelling_coordinate_inverse)
from .perturb import (PerturbationOutcome, PerturbedMap, PhaseEstimate,
                      classify_perturbation, estimate_lifted_phase_im,
                      perturb, return_multiplier_modulus, split_fixed_points)
from .scan import (ScanCell, ScanGrid, csv_lines, ppm_bytes, scan_delta_disk,
                   scan_slice_a, write_csv, write_ppm)
from .verify import (M_CONSTANT, VerifyReport, theorem_interval,
                     verify_cylinder, verify_lemma41, verify_lemma42,
                     verify_theorem)
from .config import RunConfig, load_config

__version__ = "0.1.0"

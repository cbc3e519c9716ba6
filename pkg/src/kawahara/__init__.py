"""Fourier-Galerkin spectral solver for the periodic Kawahara equation."""
from .dynamics import Invariants, galerkin_rhs, invariants
from .harness import (ConvergenceReport, InitialCondition, RunRecord, SchemeConfig, run,
                      spatial_convergence, temporal_convergence)
from .spectral import (PhysicalSamples, SpectralField, convolve_truncated, differentiate, evaluate,
                       inner_product, l2_norm, project, sobolev_norm)
from .timestepping import (BlowUpError, CnSolverConfig, LeapfrogState, NonConvergenceError,
                           NumericalFailure, bootstrap_first_step, cfl_max_dt, cn_step, leapfrog_step,
                           rk4_step)

__version__ = "0.1.0"

"""
Sampling in shift-invariant spaces from samples, differences and averages.

A function ``f = sum_n a_n phi(t - n)`` is recovered from channels such
as ``f(a + pn)``, ``Delta_+^k f(a + pn)`` or averages, through composite
kernels built from shifts of the Shannon-type sampling function ``S_a``.
"""

from .errors import (CoverageError, DegenerateKernelError, InsufficientGridError,
                     InvalidOrderError, NotAFrameError, SamplingError, SchemeError,
                     SingularSchemeError, UnderdeterminedError, WindowOverflowError)
from .generators import (FunctionGenerator2D, Generator, ProductGenerator, RieszCheck,
                         ZakKernel, ZakKernel2D, bspline_eval, gram_sequence, gram_symbol,
                         riesz_condition, zak_kernel, zak_kernel_2d, zak_series)
from .kernels import (SamplingKernelSet, SamplingKernelSet2D, ShannonKernel, ShannonKernel2D,
                      assemble_kernels, assemble_kernels_2d, build_kernel_set, decay_rate,
                      interpolation_check, shannon_kernel, shannon_kernel_2d)
from .reconstruct import (ReconstructionReport, Signal, Signal2D, frame_reconstruct_1d,
                          reconstruct_1d, reconstruct_2d, recovered_samples, report,
                          required_window, required_window_2d, signal_norm, stability_bounds)
from .riesz import (DualMatrix, SchemeMatrix, biorthogonality_check, invert_scheme, kronecker,
                    left_inverse)
from .schemes import (OperatorSpec, SampleSet, SampleSet2D, apply_operators, apply_operators_2d,
                      backward_scheme, forward_scheme, parse_spec, scheme_matrix)

__version__ = "0.1.0"

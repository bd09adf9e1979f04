"""Two-sided quaternionic linear canonical transforms (QLCTs), quaternionic
prolate spheroidal wave functions, and energy-concentration analysis between
the spatial and QLCT-frequency domains.

Subpackages follow the pipeline: ``quaternion`` (scalar algebra), ``signal``
(sampled H-valued signals and quadrature), ``qft`` (two-sided quaternion
Fourier transform and convolution), ``lct`` (the QLCT itself), ``prolate``
(sinc-kernel eigenproblem and QPSWFs), ``concentration`` (energy ratios,
extremal curve, comparison reports), and ``cli``.
"""

from ._core import backend_name
from .quaternion import Quaternion
from .signal import Box, Grid2D, QSignal

__all__ = ["Quaternion", "Grid2D", "Box", "QSignal", "backend_name"]
__version__ = "0.1.0"

"""Verified spectral decompositions and powers of interval matrices."""

from .interval import (ComplexDisc, ComplexRect, Interval, disc_add,
                       disc_mul, disc_pow, disc_sub, disc_to_rect, iv_add,
                       iv_div, iv_mul, iv_sub, mag, mid, mig, rad,
                       rect_to_disc)
from .matrices import (ComplexIntervalMatrix, IntervalMatrix,
                       SymIntervalMatrix, im_add, im_mul, read_matrix,
                       spectral_norm_ub, sum_radii, write_matrix)
from .linsys import (SingularEnclosureError, SolveReport, inverse_enclosure,
                     solve_complex_enclosure, solve_enclosure)
from .eigenvalues import (EigDiscs, MidpointEigError, SymEigBounds,
                          bauer_fike_discs, check_assumption,
                          symmetric_eigen_bounds)
from .eigenvectors import (EigvecEnclosure, EigvecFailedError, eigvec_enclose,
                           fallback_unit_box, normalize_column)
from .decomposition import (AssumptionViolatedError, InversionFailedError,
                            SpectralDecomposition, decompose_circulant,
                            decompose_general, decompose_symmetric,
                            verify_containment)
from .powers import (PowerResult, power_binary, power_circulant,
                     power_spectral, power_symmetric_spectral, power_widebox)
from .experiments import (ConfigError, ExperimentConfig, RunRecord,
                          SummaryRow, gen_circulant, gen_general,
                          gen_symmetric, run_comparison, summarize)

__version__ = "0.1.0"

from lexcut.logging_config import setup_logging
setup_logging()
from lexcut.analysis.service import brute_force_integer_opt
from lexcut.analysis.service import cg_to_lexcut
from lexcut.analysis.service import check_hull
from lexcut.analysis.service import enumerate_splits
from lexcut.analysis.service import is_valid_split_cut
from lexcut.arith.service import complete_basis
from lexcut.arith.views import LatticeBasis
from lexcut.lex.service import lexcut
from lexcut.lex.service import q_description
from lexcut.lex.views import LinearInequality
from lexcut.oracles.views import BallBox
from lexcut.oracles.views import PointCloud
from lexcut.oracles.views import Polytope
from lexcut.solver.service import LexSolver
from lexcut.solver.views import SolveOutcome
from lexcut.solver.views import SolverSettings

__all__ = [
    'LexSolver',
    'SolverSettings',
    'SolveOutcome',
    'LatticeBasis',
    'LinearInequality',
    'Polytope',
    'PointCloud',
    'BallBox',
    'complete_basis',
    'lexcut',
    'q_description',
    'cg_to_lexcut',
    'is_valid_split_cut',
    'enumerate_splits',
    'check_hull',
    'brute_force_integer_opt'
]

import argparse
import logging
import re
import sys
from fractions import Fraction
from typing import Optional, Sequence

from pydantic import ValidationError

from lexcut.analysis.service import check_hull, enumerate_splits, is_valid_split_cut, s_up_pointcloud, v_set
from lexcut.analysis.views import SplitDisjunction
from lexcut.arith.views import LatticeBasis
from lexcut.cli.views import InstanceError, InstanceFile, TraceFile
from lexcut.lex.service import lexcut, q_description
from lexcut.lex.views import LinearInequality
from lexcut.oracles.views import PointCloud
from lexcut.solver.service import LexSolver, resolve_basis
from lexcut.solver.views import EmptyInputError, SolveOutcome, SolverSettings
from lexcut.utils import format_point, format_rational, parse_int_vector
from lexcut.views import LexcutError

logger = logging.getLogger(__name__)

EXIT_OPTIMAL = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2

_TERM = re.compile(r'([+-])?(\d+(?:/\d+)?)?(?:\*?x(\d+))?')


# ----------------------------------------------------------------------
# argument parsing helpers
# ----------------------------------------------------------------------


def _parse_side(text: str, n: int) -> tuple[list[Fraction], Fraction]:
    coeffs = [Fraction(0)] * n
    constant = Fraction(0)
    if not text:
        raise InstanceError('empty side in inequality')
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        sign, number, variable = m.groups()
        if m.end() == pos or (number is None and variable is None):
            raise InstanceError(f'cannot parse {text[pos:]!r}')
        if pos > 0 and sign is None:
            raise InstanceError(f'missing + or - before {text[pos:]!r}')
        value = Fraction(number) if number else Fraction(1)
        if sign == '-':
            value = -value
        if variable is None:
            constant += value
        else:
            index = int(variable)
            if not 1 <= index <= n:
                raise InstanceError(f'variable x{index} outside x1..x{n}')
            coeffs[index - 1] += value
        pos = m.end()
    return coeffs, constant


def parse_inequality(text: str, n: int) -> LinearInequality:
    """Parse "2x1+x2>=2", "x2 >= 0", "0>=-1" or "x1<=3" into a >= inequality"""
    compact = text.replace(' ', '')
    for op in ('>=', '<='):
        if op in compact:
            left, right = compact.split(op, 1)
            break
    else:
        raise InstanceError(f'no >= or <= in {text!r}')
    lcoeffs, lconst = _parse_side(left, n)
    rcoeffs, rconst = _parse_side(right, n)
    coeffs = [a - b for a, b in zip(lcoeffs, rcoeffs)]
    rhs = rconst - lconst
    if op == '<=':
        coeffs, rhs = [-a for a in coeffs], -rhs
    return LinearInequality(tuple(coeffs), rhs)


def parse_basis(text: Optional[str], n: int) -> LatticeBasis:
    """ "identity" (or nothing) for the standard basis, otherwise rows separated by ';' """
    if text is None or text.strip().lower() == 'identity':
        return LatticeBasis.standard(n)
    rows = tuple(parse_int_vector(row) for row in text.split(';') if row.strip())
    if len(rows) != n or any(len(r) != n for r in rows):
        raise InstanceError(f'basis must be a {n}x{n} matrix')
    return LatticeBasis(rows)


def _settings(args: argparse.Namespace) -> SolverSettings:
    overrides = {}
    for name in ('eps', 'snap'):
        if getattr(args, name, None) is not None:
            overrides[name] = getattr(args, name)
    for name in ('refresh_bounds', 'strengthen_alpha'):
        if getattr(args, name, False):
            overrides[name] = True
    if getattr(args, 'no_trace', False):
        overrides['record_trace'] = False
    return SolverSettings.from_env(**overrides)


def _summary(outcome: SolveOutcome) -> str:
    steps = f'cuts: {outcome.cuts}' if outcome.algorithm == 'cut' else f'enumerations: {outcome.enumerations}'
    if outcome.is_optimal:
        return f'OPTIMAL {format_point(outcome.point)} value {format_rational(outcome.value)}; {steps}'
    return f'INFEASIBLE; {steps}'


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------


def cmd_solve(args: argparse.Namespace) -> int:
    instance = InstanceFile.load_from_file(args.path)
    settings = _settings(args)
    solver = LexSolver(settings)
    S = instance.to_set()
    if args.algorithm == 'enum':
        outcome = solver.algorithm2_solve(S, instance.objective, instance.lattice_basis())
    else:
        outcome = solver.algorithm1_solve(S, instance.objective, instance.lattice_basis())
    print(_summary(outcome))
    if args.trace:
        TraceFile.from_outcome(outcome, settings).save_to_file(args.trace)
        logger.info(f'📄 Trace written to {args.trace}')
    return EXIT_OPTIMAL if outcome.is_optimal else EXIT_INFEASIBLE


def cmd_cuts(args: argparse.Namespace) -> int:
    xbar = parse_int_vector(args.xbar)
    if args.instance:
        instance = InstanceFile.load_from_file(args.instance)
        B = resolve_basis(instance.objective, instance.lattice_basis())
    else:
        B = parse_basis(args.basis, len(xbar))
    if args.all:
        for inequality in q_description(B, xbar, trim=args.trim):
            print(inequality)
    else:
        print(lexcut(B, xbar, args.k))
    return 0


def cmd_hull_check(args: argparse.Namespace) -> int:
    xbar = parse_int_vector(args.xbar)
    B = parse_basis(args.basis, len(xbar))
    report = check_hull(B, xbar, args.box, perturb_rhs=args.perturb_rhs, trim=args.trim)
    if report.passed:
        print(f'PASS ({report.points_checked} points)')
        return 0
    print(f'FAIL ({report.mismatches} mismatches of {report.points_checked} points)')
    for x in report.examples:
        print(f'  mismatch at {format_point(x)}')
    for failure in report.vertex_failures:
        print(f'  {failure}')
    return 1


def cmd_split_check(args: argparse.Namespace) -> int:
    instance = InstanceFile.load_from_file(args.path)
    S = instance.to_set()
    cut = parse_inequality(args.cut, instance.n)
    if args.enumerate is not None:
        valid = enumerate_splits(S, cut, args.enumerate)
        if not valid:
            print(f'no validating split with |pi|_inf <= {args.enumerate}')
        for d in valid:
            print(f'{d}: VALID')
        return 0
    if args.pi is None or args.pi0 is None:
        raise InstanceError('split-check needs --pi and --pi0, or --enumerate')
    d = SplitDisjunction(parse_int_vector(args.pi), args.pi0)
    print('VALID' if is_valid_split_cut(S, cut, d) else 'INVALID')
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    instance = InstanceFile.load_from_file(args.path)
    settings = SolverSettings.from_env(record_trace=False)
    S = instance.to_set()
    B = instance.lattice_basis()
    first = LexSolver(settings).algorithm1_solve(S, instance.objective, B)
    second = LexSolver(settings).algorithm2_solve(S, instance.objective, B)
    print(f'alg1: {first.cuts} cuts; {first.oracle_calls} oracle calls; {_summary(first)}')
    print(f'alg2: {second.enumerations} line-2 executions; {second.oracle_calls} oracle calls; {_summary(second)}')
    if isinstance(S, PointCloud):
        P = LexSolver(settings).preprocess(S, instance.objective, B)
        s_up = s_up_pointcloud(P.set, P.basis)
        print(f'|S-up|: {len(s_up)}; |V(S)|+1: {len(v_set(P.basis, s_up)) + 1}')
    return 0


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='lexcut', description='Lexicographic cutting planes and lex-enumeration')
    commands = parser.add_subparsers(dest='command', required=True)

    solve = commands.add_parser('solve', help='Solve an instance file')
    solve.add_argument('path', help='Instance JSON file')
    solve.add_argument('--algorithm', choices=['cut', 'enum'], default='cut', help='Cutting planes or lex-enumeration (default: cut)')
    solve.add_argument('--eps', type=float, default=None, help='Ball oracle tolerance (default: 1e-9)')
    solve.add_argument('--snap', type=float, default=None, help='Integrality snapping tolerance (default: 1e-6)')
    solve.add_argument('--refresh-bounds', action='store_true', help='Recompute lower bounds every iteration')
    solve.add_argument('--strengthen-alpha', action='store_true', help='Advance alpha_n past x-up')
    solve.add_argument('--trace', default=None, help='Write the trace to this JSON file')
    solve.add_argument('--no-trace', action='store_true', help='Keep no per-iteration trace')
    solve.set_defaults(handler=cmd_solve)

    cuts = commands.add_parser('cuts', help='Print lex-cuts of an integer point')
    cuts.add_argument('--xbar', required=True, help='Integer point, e.g. 1,2,1')
    cuts.add_argument('--basis', default=None, help='"identity" or rows like "1,0;0,1"')
    cuts.add_argument('--instance', default=None, help='Take the basis from an instance file')
    which = cuts.add_mutually_exclusive_group(required=True)
    which.add_argument('--k', type=int, help='Index of the lex-cut')
    which.add_argument('--all', action='store_true', help='Print the whole description of Q(xbar)')
    cuts.add_argument('--trim', action='store_true', help='Drop redundant inequalities')
    cuts.set_defaults(handler=cmd_cuts)

    hull = commands.add_parser('hull-check', help='Brute-force check of the Q(xbar) description')
    hull.add_argument('--xbar', required=True, help='Integer point, e.g. 1,2,1')
    hull.add_argument('--basis', default=None, help='"identity" or rows like "1,0;0,1"')
    hull.add_argument('--box', type=int, default=6, help='Bound M on c^i x (default: 6)')
    hull.add_argument('--trim', action='store_true', help='Check the trimmed description')
    hull.add_argument('--perturb-rhs', action='store_true', help=argparse.SUPPRESS)
    hull.set_defaults(handler=cmd_hull_check)

    split = commands.add_parser('split-check', help='Check a cut against split disjunctions')
    split.add_argument('path', help='Instance JSON file')
    split.add_argument('--cut', required=True, help='Inequality, e.g. "2x1+x2>=2"')
    split.add_argument('--pi', default=None, help='Disjunction normal, e.g. 1,0')
    split.add_argument('--pi0', type=int, default=None, help='Disjunction right-hand side')
    split.add_argument('--enumerate', type=int, default=None, metavar='N', help='Try every pi with |pi|_inf <= N')
    split.set_defaults(handler=cmd_split_check)

    compare = commands.add_parser('compare', help='Run both algorithms side by side')
    compare.add_argument('path', help='Instance JSON file')
    compare.set_defaults(handler=cmd_compare)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ValidationError as err:
        logger.error(f'Invalid instance: {err}')
        print(str(err), file=sys.stderr)
        return EXIT_ERROR
    except EmptyInputError:
        print('INFEASIBLE; the input set is empty')
        return EXIT_INFEASIBLE
    except LexcutError as err:
        logger.error(f'{type(err).__name__}: {err}')
        print(str(err), file=sys.stderr)
        return EXIT_ERROR
    except (OSError, ValueError) as err:
        logger.error(f'{type(err).__name__}: {err}')
        print(str(err), file=sys.stderr)
        return EXIT_ERROR

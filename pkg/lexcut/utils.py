import logging
import time
from fractions import Fraction
from functools import wraps
from typing import Callable, ParamSpec, Sequence, TypeVar

logger = logging.getLogger(__name__)


# Define generic type variables for return type and parameters
R = TypeVar('R')
P = ParamSpec('P')


def time_execution_sync(additional_text: str = '') -> Callable[[Callable[P, R]], Callable[P, R]]:
	def decorator(func: Callable[P, R]) -> Callable[P, R]:
		@wraps(func)
		def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
			start_time = time.time()
			result = func(*args, **kwargs)
			execution_time = time.time() - start_time
			logger.debug(f'{additional_text} Execution time: {execution_time:.2f} seconds')
			return result

		return wrapper

	return decorator


def parse_rational(value: int | str | Fraction) -> Fraction:
	"""Parse an integer, a "p/q" string or a decimal string into an exact Fraction"""
	if isinstance(value, bool):
		raise ValueError(f'not a rational number: {value!r}')
	if isinstance(value, (int, Fraction)):
		return Fraction(value)
	if isinstance(value, str):
		return Fraction(value.strip())
	raise ValueError(f'not a rational number: {value!r}')


def format_rational(value: Fraction | int) -> str:
	value = Fraction(value)
	if value.denominator == 1:
		return str(value.numerator)
	return f'{value.numerator}/{value.denominator}'


def format_decimal(value: Fraction | int, digits: int = 12) -> str:
	return f'{float(value):.{digits}g}'


def format_point(point: Sequence[Fraction | int]) -> str:
	return '(' + ','.join(format_rational(v) for v in point) + ')'


def parse_int_vector(text: str) -> tuple[int, ...]:
	"""Parse "1,2,-3" into (1, 2, -3)"""
	parts = [p.strip() for p in text.split(',') if p.strip()]
	if not parts:
		raise ValueError(f'empty vector: {text!r}')
	return tuple(int(p) for p in parts)

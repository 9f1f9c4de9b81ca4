"""Exact sparse multivariate polynomials over the rationals.

Every polynomial lives on a :class:`Chart`, an ordered list of variable
names.  The arithmetic itself is SymPy's sparse ``PolyRing`` over ``QQ``
with graded-lexicographic ordering; :class:`Poly` adds the chart
bookkeeping and refuses to mix polynomials from different charts.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from sympy import Symbol, SympifyError, sympify
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import CoercionFailed
from sympy.polys.rings import PolyRing

from .exceptions import StructuralError

logger = logging.getLogger(__name__)

Rat = QQ.dtype


def rat(value):
    '''Coerce an int, Fraction, decimal "a/b" string or QQ element to QQ.'''
    if isinstance(value, str):
        try:
            value = Fraction(value.strip())
        except ValueError as exc:
            raise StructuralError(f'not a rational number: {value!r}') from exc
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    try:
        return QQ.convert(value)
    except CoercionFailed as exc:
        raise StructuralError(f'not a rational number: {value!r}') from exc


def rat_text(value):
    '''Inverse of rat() for strings: "3/2", "-4", "0".'''
    value = rat(value)
    if value.denominator == 1:
        return str(int(value.numerator))
    return f'{int(value.numerator)}/{int(value.denominator)}'


@dataclass(frozen=True)
class Chart:
    """A coordinate chart: a name and an ordered tuple of variable names."""
    name: str
    variables: tuple

    def __post_init__(self):
        object.__setattr__(self, 'variables', tuple(self.variables))
        if not self.variables:
            raise StructuralError(f'chart {self.name} has no variables')
        if len(set(self.variables)) != len(self.variables):
            raise StructuralError(f'chart {self.name} repeats a variable name')

    @classmethod
    def standard(cls, dimension, name='U', prefix='x'):
        return cls(name, tuple(f'{prefix}{i}' for i in range(dimension)))

    @property
    def dimension(self):
        return len(self.variables)

    @cached_property
    def ring(self):
        return PolyRing(self.variables, QQ, grlex)

    @cached_property
    def domain(self):
        return self.ring.to_domain()

    @cached_property
    def field(self):
        '''The fraction field of the chart ring, as a SymPy domain.'''
        return self.domain.get_field()

    def doubled(self):
        '''The chart of the complexification: x-variables followed by
        one y-variable per x-variable.'''
        if all(v.startswith('x') for v in self.variables):
            imaginary = tuple('y' + v[1:] for v in self.variables)
        else:
            imaginary = tuple(v + '_im' for v in self.variables)
        if set(imaginary) & set(self.variables):
            imaginary = tuple(v + '_im' for v in self.variables)
        return Chart(self.name + '^C', self.variables + imaginary)

    def is_doubling_of(self, base):
        return (self.dimension == 2 * base.dimension and
                self.variables[:base.dimension] == base.variables)

    def point(self, values):
        values = tuple(rat(v) for v in values)
        if len(values) != self.dimension:
            raise StructuralError(
                f'point of length {len(values)} on a chart of dimension {self.dimension}')
        return values

    def origin(self):
        return (QQ.zero,) * self.dimension


class Poly:
    """A polynomial with rational coefficients on a chart.

    Values are immutable: every operation returns a new Poly and the
    wrapped ``PolyElement`` is never modified in place.
    """
    __slots__ = ('chart', 'rep')

    def __init__(self, chart, rep=None):
        self.chart = chart
        self.rep = chart.ring.zero if rep is None else rep

    @classmethod
    def const(cls, chart, value):
        return cls(chart, chart.ring.ground_new(rat(value)))

    @classmethod
    def var(cls, chart, index):
        _check_index(chart, index)
        return cls(chart, chart.ring.gens[index])

    @classmethod
    def from_terms(cls, chart, terms):
        '''Build from a mapping exponent-tuple -> rational.'''
        for exps in terms:
            if len(exps) != chart.dimension or min(exps, default=0) < 0:
                raise StructuralError(f'bad exponent vector {exps} for chart {chart.name}')
        return cls(chart, chart.ring.from_dict(
            {tuple(exps): rat(c) for exps, c in terms.items()}))

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.chart != self.chart:
                raise StructuralError(
                    f'chart mismatch: {self.chart.name} vs {other.chart.name}')
            return other.rep
        return self.chart.ring.ground_new(rat(other))

    def __add__(self, other):
        return Poly(self.chart, self.rep + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Poly(self.chart, self.rep - self._coerce(other))

    def __rsub__(self, other):
        return Poly(self.chart, self._coerce(other) - self.rep)

    def __neg__(self):
        return Poly(self.chart, -self.rep)

    def __mul__(self, other):
        return Poly(self.chart, self.rep * self._coerce(other))

    __rmul__ = __mul__

    def __pow__(self, exponent):
        return Poly(self.chart, self.rep ** exponent)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.chart == other.chart and self.rep == other.rep
        try:
            return self.rep == self.chart.ring.ground_new(rat(other))
        except (StructuralError, TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.chart, frozenset(self.rep.items())))

    def __bool__(self):
        return bool(self.rep)

    def __repr__(self):
        return f'Poly({self.rep}, chart={self.chart.name})'

    def __str__(self):
        return str(self.rep.as_expr())

    def is_zero(self):
        return not self.rep

    def terms(self):
        '''(exponents, coefficient) pairs in descending grlex order.'''
        return self.rep.terms()

    def total_degree(self):
        '''Total degree; -1 for the zero polynomial.'''
        return max((sum(exps) for exps in self.rep), default=-1)

    def partial(self, index):
        _check_index(self.chart, index)
        return Poly(self.chart, self.rep.diff(self.chart.ring.gens[index]))

    def eval(self, point):
        point = self.chart.point(point)
        return self.rep(*point)

    def compose(self, substitutions):
        '''Substitute polynomials for chart variables, simultaneously.

        ``substitutions`` maps variable indices to Polys on the same chart.
        '''
        gens = self.chart.ring.gens
        pairs = [(gens[i], self._coerce(q)) for i, q in sorted(substitutions.items())]
        if not pairs:
            return self
        return Poly(self.chart, self.rep.compose(pairs))

    def embed(self, chart, offset=0):
        '''The same polynomial on a larger chart whose variables
        offset..offset+N-1 play the role of this chart's variables.'''
        n = self.chart.dimension
        if offset < 0 or offset + n > chart.dimension:
            raise StructuralError(f'cannot embed {self.chart.name} into {chart.name}')
        before = (0,) * offset
        after = (0,) * (chart.dimension - offset - n)
        return Poly(chart, chart.ring.from_dict(
            {before + exps + after: c for exps, c in self.rep.items()}))


def _check_index(chart, index):
    if not 0 <= index < chart.dimension:
        raise StructuralError(
            f'variable index {index} out of range for chart {chart.name}')


def poly_add(a, b):
    return a + b


def poly_sub(a, b):
    return a - b


def poly_neg(a):
    return -a


def poly_mul(a, b):
    return a * b


def poly_scale(p, c):
    return p * rat(c)


def poly_eval(p, point):
    return p.eval(point)


def poly_partial(p, var_index):
    return p.partial(var_index)


def total_degree(p):
    return p.total_degree()


def complex_split(p):
    '''Split p(x + iy) into real and imaginary parts on the doubled chart.

    The substitution is carried out over the Gaussian rationals and the
    coefficients are then separated, so re(x, 0) == p(x) exactly.
    '''
    doubled = p.chart.doubled()
    m = p.chart.dimension
    gaussian = PolyRing(doubled.variables, QQ_I, grlex)
    i_unit = gaussian.ground_new(QQ_I(0, 1))
    lifted = gaussian.from_dict(
        {exps + (0,) * m: QQ_I(c, 0) for exps, c in p.rep.items()})
    gens = gaussian.gens
    expanded = lifted.compose(
        [(gens[j], gens[j] + i_unit * gens[m + j]) for j in range(m)])
    ring = doubled.ring
    re = ring.from_dict({exps: c.x for exps, c in expanded.items()})
    im = ring.from_dict({exps: c.y for exps, c in expanded.items()})
    return Poly(doubled, re), Poly(doubled, im)


def parse_poly(chart, text):
    '''Read a polynomial such as "1 + x0*x2 - 1/2*x1**2" on a chart.'''
    names = {v: Symbol(v) for v in chart.variables}
    try:
        expr = sympify(text, locals=names)
        return Poly(chart, chart.ring.from_expr(expr))
    except (SympifyError, ValueError, TypeError) as exc:
        raise StructuralError(f'cannot read {text!r} as a polynomial on {chart.name}') from exc

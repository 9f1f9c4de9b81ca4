"""Pencils of forms over the projective line.

A pencil of parameter degree n is the binary form
P(s, t) = sum_j s^(n-j) t^j w_j with form coefficients w_j.  Finite
parameter values are the points [1:t], infinity is [0:1], and GL2 acts
by linear substitution in (s, t).
"""
import functools
import logging

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

from .exceptions import StructuralError
from .exterior import DForm, exterior_d, wedge
from .polyring import Poly, rat, rat_text

logger = logging.getLogger(__name__)

BINARY = PolyRing(('s', 't'), QQ, grlex)

INFINITY_NAMES = ('inf', 'infinity', 'oo')


@functools.total_ordering
class ProjPoint:
    """A point [s:t] of the rational projective line, kept in canonical
    form: [1:t] for finite points and [0:1] for infinity."""
    __slots__ = ('s', 't')

    def __init__(self, s, t):
        s, t = rat(s), rat(t)
        if not s and not t:
            raise StructuralError('[0:0] is not a projective point')
        if s:
            self.s, self.t = QQ.one, t / s
        else:
            self.s, self.t = QQ.zero, QQ.one

    @classmethod
    def finite(cls, t):
        return cls(1, t)

    @classmethod
    def infinity(cls):
        return cls(0, 1)

    @classmethod
    def parse(cls, text):
        text = str(text).strip()
        if text.lower() in INFINITY_NAMES:
            return cls.infinity()
        return cls.finite(rat(text))

    @property
    def is_infinite(self):
        return not self.s

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.s == other.s and self.t == other.t

    def __lt__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if self.is_infinite or other.is_infinite:
            return other.is_infinite and not self.is_infinite
        return self.t < other.t

    def __hash__(self):
        return hash((self.s, self.t))

    def __str__(self):
        return 'inf' if self.is_infinite else rat_text(self.t)

    def __repr__(self):
        return f'[{rat_text(self.s)}:{rat_text(self.t)}]'


def parse_points(text):
    '''"0,1,inf,3/2" -> list of ProjPoints (order kept).'''
    return [ProjPoint.parse(part) for part in str(text).split(',') if part.strip()]


class Moebius:
    """An invertible 2x2 rational matrix acting on column vectors (s, t)."""
    __slots__ = ('a', 'b', 'c', 'd')

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = (rat(a), rat(b), rat(c), rat(d))
        if not self.det:
            raise StructuralError('singular Moebius matrix')

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def swap(cls):
        '''(s, t) -> (t, s), that is t -> 1/t.'''
        return cls(0, 1, 1, 0)

    @classmethod
    def shift(cls, c):
        '''(s, t) -> (s, t + c s), that is t -> t + c.'''
        return cls(1, 0, c, 1)

    @classmethod
    def sending_to_finite(cls, avoid):
        '''A map g with g(infinity) outside `avoid`, so that every
        g^-1(p) is finite.'''
        taken = {p.t for p in avoid if not p.is_infinite}
        candidate = 0
        while QQ(candidate) in taken:
            candidate = -candidate if candidate > 0 else 1 - candidate
        return cls(0, 1, 1, candidate)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    def matrix(self):
        return ((self.a, self.b), (self.c, self.d))

    def apply_raw(self, s, t):
        s, t = rat(s), rat(t)
        return self.a * s + self.b * t, self.c * s + self.d * t

    def __call__(self, point):
        return ProjPoint(*self.apply_raw(point.s, point.t))

    def inverse(self):
        det = self.det
        return Moebius(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def compose(self, other):
        '''self after other.'''
        return Moebius(self.a * other.a + self.b * other.c,
                       self.a * other.b + self.b * other.d,
                       self.c * other.a + self.d * other.c,
                       self.c * other.b + self.d * other.d)

    def __eq__(self, other):
        if not isinstance(other, Moebius):
            return NotImplemented
        return self.matrix() == other.matrix()

    def __hash__(self):
        return hash(self.matrix())

    def __repr__(self):
        return 'Moebius(%s)' % ', '.join(rat_text(x) for x in
                                         (self.a, self.b, self.c, self.d))


class FormPencil:
    """The pencil sum_j s^(n-j) t^j w_j of p-forms on one chart."""
    __slots__ = ('chart', 'form_degree', 'coefficients')

    def __init__(self, coefficients):
        coefficients = tuple(coefficients)
        if not coefficients:
            raise StructuralError('a pencil needs at least one coefficient')
        chart, degree = coefficients[0].chart, coefficients[0].degree
        for form in coefficients:
            if form.chart != chart:
                raise StructuralError('pencil coefficients on different charts')
            if form.degree != degree:
                raise StructuralError('pencil coefficients of different degrees')
        self.chart = chart
        self.form_degree = degree
        self.coefficients = coefficients

    @classmethod
    def zero(cls, chart, form_degree, degree):
        return cls([DForm.zero(chart, form_degree)] * (degree + 1))

    @property
    def degree(self):
        return len(self.coefficients) - 1

    def __eq__(self, other):
        if not isinstance(other, FormPencil):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return 'FormPencil(%s)' % ', '.join(str(w) for w in self.coefficients)

    def term_count(self):
        return sum(w.term_count() for w in self.coefficients)

    def evaluate(self, s, t):
        '''Evaluate at the representative (s, t) itself, without
        canonicalizing it.'''
        s, t = rat(s), rat(t)
        n = self.degree
        result = DForm.zero(self.chart, self.form_degree)
        for j, form in enumerate(self.coefficients):
            weight = s ** (n - j) * t ** j
            if weight and form:
                result = result + form * weight
        return result

    def at(self, point):
        return self.evaluate(point.s, point.t)


def eval_pencil(pencil, point):
    return pencil.at(point)


def pencil_add(p, q):
    if p.chart != q.chart:
        raise StructuralError('chart mismatch')
    if p.degree != q.degree or p.form_degree != q.form_degree:
        raise StructuralError('cannot add pencils of different shapes')
    return FormPencil([a + b for a, b in zip(p.coefficients, q.coefficients)])


def pencil_scale_poly(pencil, factor):
    '''Multiply every coefficient by a t-independent function.'''
    if isinstance(factor, Poly) and factor.chart != pencil.chart:
        raise StructuralError('chart mismatch')
    return FormPencil([w * factor for w in pencil.coefficients])


def pencil_wedge(p, q):
    if p.chart != q.chart:
        raise StructuralError(f'chart mismatch: {p.chart.name} vs {q.chart.name}')
    products = [DForm.zero(p.chart, p.form_degree + q.form_degree)
                for _ in range(p.degree + q.degree + 1)]
    for i, a in enumerate(p.coefficients):
        if not a:
            continue
        for j, b in enumerate(q.coefficients):
            if b:
                products[i + j] = products[i + j] + wedge(a, b)
    return FormPencil(products)


def pencil_d(pencil):
    return FormPencil([exterior_d(w) for w in pencil.coefficients])


def pencil_is_zero(pencil):
    return all(w.is_zero() for w in pencil.coefficients)


def binary_weights(g, n):
    '''Rows of the degree-n symmetric power of g: weights[j][k] is the
    coefficient of s^(n-k) t^k in (a s + b t)^(n-j) (c s + d t)^j.'''
    s, t = BINARY.gens
    first = s * g.a + t * g.b
    second = s * g.c + t * g.d
    weights = []
    for j in range(n + 1):
        product = first ** (n - j) * second ** j
        weights.append([product.coeff(s ** (n - k) * t ** k) for k in range(n + 1)])
    return weights


def moebius_transform(pencil, g):
    '''The pencil R with R(s, t) = P(g(s, t)) identically.'''
    n = pencil.degree
    weights = binary_weights(g, n)
    result = [DForm.zero(pencil.chart, pencil.form_degree) for _ in range(n + 1)]
    for j, form in enumerate(pencil.coefficients):
        if not form:
            continue
        for k, weight in enumerate(weights[j]):
            if weight:
                result[k] = result[k] + form * weight
    return FormPencil(result)

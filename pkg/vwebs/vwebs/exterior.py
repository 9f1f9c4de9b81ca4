"""Differential forms and vector fields with polynomial coefficients.

A p-form is stored sparsely as a map from strictly increasing covector
index tuples to chart polynomials; signs are normalized when a term is
inserted, so a form is zero exactly when its map is empty.
"""
import logging
from bisect import bisect_left, bisect_right
from functools import reduce

from sympy import Poly as SymPoly
from sympy import Symbol, SympifyError, expand, sympify
from sympy.polys.matrices import DomainMatrix
from sympy.polys.domains import QQ
from sympy.polys.polyerrors import PolynomialError

from .exceptions import StructuralError
from .polyring import Poly, rat

logger = logging.getLogger(__name__)


def _sort_sign(indices):
    '''Sort covector indices, returning (sign, key); sign 0 on a repeat.'''
    indices = list(indices)
    if len(set(indices)) != len(indices):
        return 0, None
    sign = 1
    for i in range(len(indices)):
        for j in range(len(indices) - 1 - i):
            if indices[j] > indices[j + 1]:
                indices[j], indices[j + 1] = indices[j + 1], indices[j]
                sign = -sign
    return sign, tuple(indices)


def _same_chart(a, b):
    if a.chart != b.chart:
        raise StructuralError(f'chart mismatch: {a.chart.name} vs {b.chart.name}')


class DForm:
    """A differential p-form on a chart."""
    __slots__ = ('chart', 'degree', '_terms')

    def __init__(self, chart, degree, terms=None):
        # terms: already normalized {sorted index tuple: nonzero PolyElement}
        self.chart = chart
        self.degree = degree
        self._terms = terms or {}

    @classmethod
    def zero(cls, chart, degree):
        return cls(chart, degree)

    @classmethod
    def from_terms(cls, chart, degree, terms):
        '''Build from {index tuple: Poly or rational}; tuples may be
        unsorted and repeat keys, signs and sums are applied.'''
        ring = chart.ring
        acc = {}
        for indices, coef in terms.items():
            indices = tuple(indices)
            if len(indices) != degree:
                raise StructuralError(f'covector tuple {indices} in a {degree}-form')
            if any(not 0 <= i < chart.dimension for i in indices):
                raise StructuralError(f'covector index out of range in {indices}')
            if isinstance(coef, Poly):
                if coef.chart != chart:
                    raise StructuralError('coefficient on a different chart')
                rep = coef.rep
            else:
                rep = ring.ground_new(rat(coef))
            sign, key = _sort_sign(indices)
            if sign:
                acc[key] = acc.get(key, ring.zero) + (rep if sign > 0 else -rep)
        return cls(chart, degree, {k: v for k, v in acc.items() if v})

    @classmethod
    def dx(cls, chart, index):
        if not 0 <= index < chart.dimension:
            raise StructuralError(f'no covector dx{index} on chart {chart.name}')
        return cls(chart, 1, {(index,): chart.ring.one})

    @classmethod
    def function(cls, poly):
        return cls(poly.chart, 0, {(): poly.rep} if poly.rep else {})

    @classmethod
    def from_vector(cls, chart, components):
        '''A 1-form from its N coefficient polynomials.'''
        if len(components) != chart.dimension:
            raise StructuralError('wrong number of 1-form components')
        return cls(chart, 1, {(i,): c for i, c in enumerate(components) if c})

    def items(self):
        for key in sorted(self._terms):
            yield key, Poly(self.chart, self._terms[key])

    def coefficient(self, indices):
        sign, key = _sort_sign(indices)
        rep = self._terms.get(key) if sign else None
        if rep is None:
            return Poly(self.chart)
        return Poly(self.chart, rep if sign > 0 else -rep)

    def vector(self):
        '''The N coefficient polynomials (as PolyElements) of a 1-form.'''
        self._require_degree(1)
        zero = self.chart.ring.zero
        return tuple(self._terms.get((i,), zero) for i in range(self.chart.dimension))

    def at(self, point):
        '''Coefficients of a 1-form at a point, as rationals.'''
        point = self.chart.point(point)
        return tuple(c(*point) for c in self.vector())

    def term_count(self):
        return sum(len(rep) for rep in self._terms.values())

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def _require_degree(self, degree):
        if self.degree != degree:
            raise StructuralError(f'expected a {degree}-form, got a {self.degree}-form')

    def _combine(self, other, sign):
        _same_chart(self, other)
        if self.degree != other.degree:
            raise StructuralError('cannot add forms of different degrees')
        terms = dict(self._terms)
        for key, rep in other._terms.items():
            value = terms.get(key, self.chart.ring.zero) + (rep if sign > 0 else -rep)
            if value:
                terms[key] = value
            else:
                terms.pop(key, None)
        return DForm(self.chart, self.degree, terms)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return DForm(self.chart, self.degree, {k: -v for k, v in self._terms.items()})

    def __mul__(self, other):
        '''Multiply by a function (Poly) or a rational constant.'''
        if isinstance(other, Poly):
            if other.chart != self.chart:
                raise StructuralError('multiplier on a different chart')
            factor = other.rep
        else:
            factor = self.chart.ring.ground_new(rat(other))
        if not factor:
            return DForm(self.chart, self.degree)
        terms = {}
        for key, rep in self._terms.items():
            value = rep * factor
            if value:
                terms[key] = value
        return DForm(self.chart, self.degree, terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DForm):
            return NotImplemented
        return (self.chart == other.chart and self.degree == other.degree
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.chart, self.degree, tuple(sorted(self._terms))))

    def __repr__(self):
        return f'DForm({self}, degree={self.degree}, chart={self.chart.name})'

    def __str__(self):
        if not self._terms:
            return '0'
        names = self.chart.variables
        parts = []
        for key in sorted(self._terms):
            wedge_text = '^'.join('d' + names[i] for i in key)
            coef = str(self._terms[key].as_expr())
            if not key:
                parts.append(coef)
            elif coef == '1':
                parts.append(wedge_text)
            else:
                parts.append(f'({coef})*{wedge_text}')
        return ' + '.join(parts)


class VectorField:
    """A polynomial vector field: N component polynomials."""
    __slots__ = ('chart', 'components')

    def __init__(self, chart, components):
        components = tuple(c.rep if isinstance(c, Poly) else c for c in components)
        if len(components) != chart.dimension:
            raise StructuralError(
                f'{len(components)} components for a chart of dimension {chart.dimension}')
        self.chart = chart
        self.components = components

    @classmethod
    def basis(cls, chart, index):
        ring = chart.ring
        return cls(chart, [ring.one if i == index else ring.zero
                           for i in range(chart.dimension)])

    @classmethod
    def from_polys(cls, chart, polys):
        for p in polys:
            if isinstance(p, Poly) and p.chart != chart:
                raise StructuralError('component on a different chart')
        return cls(chart, [p if isinstance(p, Poly) else Poly.const(chart, p) for p in polys])

    def __add__(self, other):
        _same_chart(self, other)
        return VectorField(self.chart, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other):
        _same_chart(self, other)
        return VectorField(self.chart, [a - b for a, b in zip(self.components, other.components)])

    def __neg__(self):
        return VectorField(self.chart, [-a for a in self.components])

    def __mul__(self, other):
        if isinstance(other, Poly):
            if other.chart != self.chart:
                raise StructuralError('multiplier on a different chart')
            factor = other.rep
        else:
            factor = self.chart.ring.ground_new(rat(other))
        return VectorField(self.chart, [a * factor for a in self.components])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.chart == other.chart and self.components == other.components

    def __hash__(self):
        return hash((self.chart, tuple(frozenset(c.items()) for c in self.components)))

    def __repr__(self):
        names = self.chart.variables
        parts = [f'({c.as_expr()})*d/d{names[i]}' for i, c in enumerate(self.components) if c]
        return 'VectorField(' + (' + '.join(parts) or '0') + ')'

    def is_zero(self):
        return not any(self.components)

    def derive(self, rep):
        '''The directional derivative v(f) of a ring element f.'''
        gens = self.chart.ring.gens
        result = self.chart.ring.zero
        for i, c in enumerate(self.components):
            if c:
                result += c * rep.diff(gens[i])
        return result

    def at(self, point):
        point = self.chart.point(point)
        return tuple(c(*point) for c in self.components)


def wedge(a, b):
    _same_chart(a, b)
    n = a.chart.dimension
    degree = a.degree + b.degree
    if degree > n:
        return DForm(a.chart, degree)
    terms = {}
    zero = a.chart.ring.zero
    for ka, ra in a._terms.items():
        for kb, rb in b._terms.items():
            if set(ka) & set(kb):
                continue
            inversions = sum(len(ka) - bisect_right(ka, k) for k in kb)
            key = tuple(sorted(ka + kb))
            product = ra * rb
            if inversions % 2:
                product = -product
            value = terms.get(key, zero) + product
            if value:
                terms[key] = value
            else:
                terms.pop(key, None)
    return DForm(a.chart, degree, terms)


def wedge_all(forms):
    forms = list(forms)
    if not forms:
        raise StructuralError('empty wedge product')
    return reduce(wedge, forms)


def exterior_d(a):
    chart = a.chart
    gens = chart.ring.gens
    zero = chart.ring.zero
    terms = {}
    for key, rep in a._terms.items():
        for v in range(chart.dimension):
            if v in key:
                continue
            derivative = rep.diff(gens[v])
            if not derivative:
                continue
            position = bisect_left(key, v)
            new_key = key[:position] + (v,) + key[position:]
            if position % 2:
                derivative = -derivative
            value = terms.get(new_key, zero) + derivative
            if value:
                terms[new_key] = value
            else:
                terms.pop(new_key, None)
    return DForm(chart, a.degree + 1, terms)


def contract(a, v):
    '''Interior product, inserting v in the first slot.'''
    _same_chart(a, v)
    if a.degree < 1:
        raise StructuralError('cannot contract a 0-form')
    zero = a.chart.ring.zero
    terms = {}
    for key, rep in a._terms.items():
        for r, index in enumerate(key):
            component = v.components[index]
            if not component:
                continue
            value = rep * component
            if r % 2:
                value = -value
            new_key = key[:r] + key[r + 1:]
            value = terms.get(new_key, zero) + value
            if value:
                terms[new_key] = value
            else:
                terms.pop(new_key, None)
    return DForm(a.chart, a.degree - 1, terms)


def lie_bracket(v, w):
    _same_chart(v, w)
    return VectorField(v.chart, [v.derive(b) - w.derive(a)
                                 for a, b in zip(v.components, w.components)])


def _vectors(items):
    '''Coefficient rows of 1-forms or components of vector fields.'''
    rows = []
    for item in items:
        if isinstance(item, DForm):
            rows.append(item.vector())
        elif isinstance(item, VectorField):
            rows.append(item.components)
        else:
            rows.append(tuple(item))
    return rows


def rank_at_point(chart, rows, point):
    '''Exact rank over QQ of polynomial rows evaluated at a point.'''
    point = chart.point(point)
    rows = _vectors(rows)
    if not rows:
        return 0
    values = [[c(*point) for c in row] for row in rows]
    return DomainMatrix(values, (len(values), chart.dimension), QQ).rank()


def rank_of_1forms_at_point(forms, point):
    forms = list(forms)
    if not forms:
        return 0
    chart = forms[0].chart
    for form in forms:
        _same_chart(forms[0], form)
        form._require_degree(1)
    return rank_at_point(chart, forms, point)


def _field_matrix(chart, rows):
    domain, field = chart.domain, chart.field
    values = [[field.convert_from(c, domain) for c in row] for row in rows]
    return DomainMatrix(values, (len(values), chart.dimension), field)


def generic_rank(chart, rows):
    '''Rank over the field of rational functions on the chart.'''
    rows = _vectors(rows)
    if not rows:
        return 0
    return _field_matrix(chart, rows).rank()


def _det(chart, square):
    '''Determinant of a square block of chart polynomials, as a polynomial.'''
    if not square:
        return chart.ring.one
    field = chart.field
    values = [[field.convert_from(c, chart.domain) for c in row] for row in square]
    value = DomainMatrix(values, (len(square), len(square)), field).det()
    return value.numer.exquo(value.denom)


def _pivots(matrix):
    return list(matrix.rref()[1])


def _minor_frame(chart, rows, point):
    '''Rows and columns of a maximal minor of `rows` that is nonzero at
    `point`, or only generically nonzero when the rank drops there.'''
    generic = _field_matrix(chart, rows)
    rank = generic.rank()
    if not rank:
        return [], []
    values = [[c(*point) for c in row] for row in rows]
    at_point = DomainMatrix(values, (len(rows), chart.dimension), QQ)
    frame = at_point
    if at_point.rank() != rank:
        logger.debug('rank drops from %d at %s; kernel frame chosen generically',
                     rank, point)
        frame = generic
    chosen = _pivots(frame.transpose())
    entries = frame.to_list()
    block = DomainMatrix([entries[i] for i in chosen], (len(chosen), chart.dimension),
                         frame.domain)
    return chosen, _pivots(block)


def _primitive(vector):
    '''Divide out the common polynomial content; the first nonzero entry
    ends up with leading coefficient 1.'''
    entries = [c for c in vector if c]
    content = reduce(lambda a, b: a.gcd(b), entries)
    content = content * entries[0].exquo(content).LC
    return tuple(c.exquo(content) if c else c for c in vector)


def polynomial_kernel(chart, rows, point=None):
    '''A basis of the kernel of the rows over the rational-function field,
    as polynomial vectors.

    The vectors come from Cramer's rule on a maximal minor chosen at
    `point` (the origin by default): their free block is the minor times
    the identity, so they stay independent there whenever the rows keep
    their generic rank at `point`.
    '''
    rows = _vectors(rows)
    ring = chart.ring
    point = chart.origin() if point is None else chart.point(point)
    chosen, columns = _minor_frame(chart, rows, point) if rows else ([], [])
    block = [rows[i] for i in chosen]
    minor = [[row[j] for j in columns] for row in block]
    det = _det(chart, minor)
    kernel = []
    for free in range(chart.dimension):
        if free in columns:
            continue
        vector = [ring.zero] * chart.dimension
        vector[free] = det
        for slot, j in enumerate(columns):
            replaced = [[row[free] if c == slot else entry for c, entry in enumerate(line)]
                        for row, line in zip(block, minor)]
            vector[j] = -_det(chart, replaced)
        kernel.append(_primitive(vector))
    return kernel


def pullback_map(a, components):
    '''Pull a form back along the polynomial self-map x -> (components).'''
    chart = a.chart
    if len(components) != chart.dimension:
        raise StructuralError('a self-map needs one component per variable')
    for c in components:
        if c.chart != chart:
            raise StructuralError('map component on a different chart')
    substitutions = dict(enumerate(components))
    differentials = {}
    result = DForm(chart, a.degree)
    for key, coef in a.items():
        pulled = coef.compose(substitutions)
        if not pulled:
            continue
        term = DForm.function(pulled)
        for i in key:
            if i not in differentials:
                differentials[i] = exterior_d(DForm.function(components[i]))
            term = wedge(term, differentials[i])
        result = result + term
    return result


def parse_one_form(chart, text):
    '''Read a 1-form such as "x2*dx1 + dx0" on a chart.'''
    names = {v: Symbol(v) for v in chart.variables}
    differentials = [Symbol('d' + v) for v in chart.variables]
    names.update({str(d): d for d in differentials})
    try:
        expr = expand(sympify(text, locals=names))
        linear = SymPoly(expr, *differentials)
    except (SympifyError, PolynomialError, TypeError) as exc:
        raise StructuralError(f'cannot read {text!r} as a 1-form') from exc
    terms = {}
    for monom, coef in linear.as_dict().items():
        if sum(monom) != 1:
            raise StructuralError(f'{text!r} is not linear in the differentials')
        index = monom.index(1)
        try:
            terms[(index,)] = Poly(chart, chart.ring.from_expr(coef))
        except ValueError as exc:
            raise StructuralError(f'bad coefficient {coef} in {text!r}') from exc
    return DForm.from_terms(chart, 1, terms)


def form_add(a, b):
    return a + b


def form_sub(a, b):
    return a - b


def form_scale(a, c):
    return a * rat(c)


def form_mul_poly(a, f):
    return a * f

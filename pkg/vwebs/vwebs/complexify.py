"""The complexification construction on a doubled chart.

U^C is modelled by the chart (x_0..x_{m-1}, y_0..y_{m-1}) with the
constant complex structure J d/dx_i = d/dy_i, J d/dy_i = -d/dx_i and its
adjoint J* dx_i = -dy_i, J* dy_i = dx_i.  pi(x, y) = x is the projection
along the foliation Y = {x = const}.
"""
import logging
import random
import time
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from sympy.polys.domains import QQ

from .exceptions import PreconditionError, StructuralError
from .exterior import (DForm, VectorField, exterior_d, generic_rank, lie_bracket,
                       polynomial_kernel, rank_at_point, wedge, wedge_all)
from .pencil import Moebius, ProjPoint, moebius_transform
from .polyring import Chart, rat, rat_text
from .webs import check_at

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DoubledChart:
    base: Chart

    @cached_property
    def chart(self):
        return self.base.doubled()

    @property
    def m(self):
        return self.base.dimension

    def point(self, base_point, imaginary=None):
        base_point = self.base.point(base_point)
        imaginary = (QQ.zero,) * self.m if imaginary is None else self.base.point(imaginary)
        return base_point + imaginary

    def vertical(self):
        '''The fields d/dy_i spanning TY.'''
        return [VectorField.basis(self.chart, self.m + i) for i in range(self.m)]

    def horizontal_covectors(self):
        return [DForm.dx(self.chart, i) for i in range(self.m)]


def _half(chart):
    if chart.dimension % 2:
        raise StructuralError(f'chart {chart.name} has odd dimension')
    return chart.dimension // 2


def pullback_pi(a, doubled):
    '''pi* of a form on the base chart: same covectors, coefficients in x.'''
    if a.chart != doubled.base:
        raise StructuralError('form is not on the base chart')
    chart = doubled.chart
    return DForm.from_terms(chart, a.degree,
                            {key: coef.embed(chart) for key, coef in a.items()})


def jstar(a):
    a._require_degree(1)
    m = _half(a.chart)
    components = a.vector()
    return DForm.from_vector(a.chart, components[m:] + tuple(-c for c in components[:m]))


def jvec(v):
    m = _half(v.chart)
    components = v.components
    return VectorField(v.chart, tuple(-c for c in components[m:]) + components[:m])


class Distribution:
    """A distribution on a chart, held by its annihilating 1-forms, its
    spanning vector fields, or both; the missing side is derived by an
    exact kernel computation over the rational-function field."""

    def __init__(self, chart, annihilator=None, span=None, basepoint=None):
        if annihilator is None and span is None:
            raise StructuralError('a distribution needs an annihilator or a span')
        self.chart = chart
        self.basepoint = chart.origin() if basepoint is None else chart.point(basepoint)
        if annihilator is not None:
            self.__dict__['annihilator'] = list(annihilator)
        if span is not None:
            self.__dict__['span'] = list(span)

    @cached_property
    def annihilator(self):
        return [DForm.from_vector(self.chart, row)
                for row in polynomial_kernel(self.chart, self.span, self.basepoint)]

    @cached_property
    def span(self):
        return [VectorField(self.chart, row)
                for row in polynomial_kernel(self.chart, self.annihilator, self.basepoint)]

    @property
    def codimension(self):
        return rank_at_point(self.chart, self.annihilator, self.basepoint)

    @property
    def rank(self):
        '''Rank at the basepoint.'''
        return self.chart.dimension - self.codimension

    def contains(self, v):
        return all(not contract_1form(alpha, v) for alpha in self.annihilator)

    def __repr__(self):
        return f'Distribution(chart={self.chart.name}, rank={self.rank})'


def contract_1form(alpha, v):
    return sum((a * b for a, b in zip(alpha.vector(), v.components)), alpha.chart.ring.zero)


def transform_distribution(D, a, b):
    '''(a Id + b J) D, with annihilator (a Id - b J*) ann(D).'''
    a, b = rat(a), rat(b)
    if not a and not b:
        raise PreconditionError('(a, b) = (0, 0) is not invertible', code='rotation')
    kwargs = {}
    if 'annihilator' in D.__dict__ or 'span' not in D.__dict__:
        kwargs['annihilator'] = [alpha * a - jstar(alpha) * b for alpha in D.annihilator]
    if 'span' in D.__dict__:
        kwargs['span'] = [v * a + jvec(v) * b for v in D.span]
    return Distribution(D.chart, basepoint=D.basepoint, **kwargs)


def rotation(point, sign=1):
    '''(a, b) with a Id + b J equal to Id + sign*t J at [1:t], J at infinity.'''
    if point.is_infinite:
        return QQ.zero, QQ.one
    return QQ.one, point.t * sign


def _require_anchors(c, anchors):
    anchors = list(anchors)
    if len(set(anchors)) != len(anchors):
        raise PreconditionError('duplicate anchors in %(anchors)s', code='duplicate-points',
                                params={'anchors': ','.join(str(a) for a in anchors)})
    if len(anchors) != c.n + 2:
        raise PreconditionError('F needs n+2 = %(needed)s anchors, got %(got)s',
                                code='anchor-count',
                                params={'needed': c.n + 2, 'got': len(anchors)})
    for anchor in anchors:
        if anchor.is_infinite:
            raise PreconditionError('anchor at infinity', code='anchor-at-infinity')
    for anchor in anchors:
        if not check_at(c, anchor):
            raise PreconditionError('curve is not integrable at anchor %(anchor)s',
                                    code='non-integrable-anchor',
                                    params={'anchor': str(anchor)})
    return anchors


def anchor_forms(c, doubled, point):
    '''(Id - t J*) pi* gamma^i(t) for every pencil, at a finite t.'''
    return [alpha - jstar(alpha) * point.t
            for alpha in (pullback_pi(form, doubled) for form in c.at(point))]


def build_F(c, anchors):
    anchors = _require_anchors(c, anchors)
    doubled = DoubledChart(c.chart)
    basepoint = doubled.point(c.basepoint)
    annihilator = [form for anchor in anchors for form in anchor_forms(c, doubled, anchor)]
    found = rank_at_point(doubled.chart, annihilator, basepoint)
    if found != c.k * (c.n + 2):
        raise PreconditionError(
            'anchor forms have rank %(found)s at the basepoint, expected %(expected)s',
            code='anchor-rank', params={'found': found, 'expected': c.k * (c.n + 2)})
    logger.debug('F built from anchors %s', ','.join(str(a) for a in anchors))
    return Distribution(doubled.chart, annihilator=annihilator, basepoint=basepoint)


def anchor_redundancy(c, F, extra_points):
    '''Adding anchor forms at further finite points leaves the rank of
    F's annihilator unchanged.'''
    doubled = DoubledChart(c.chart)
    expected = rank_at_point(F.chart, F.annihilator, F.basepoint)
    for point in extra_points:
        rows = F.annihilator + anchor_forms(c, doubled, point)
        if rank_at_point(F.chart, rows, F.basepoint) != expected:
            return False
    return True


def complexified_coframe(c, anchors):
    '''{pi* gamma^i(b), J* pi* gamma^i(b)} over n+1 nonzero anchors b is a
    coframe of U^C at the doubled basepoint.'''
    doubled = DoubledChart(c.chart)
    chosen = [a for a in anchors if a.is_infinite or a.t][:c.n + 1]
    forms = []
    for anchor in chosen:
        for form in c.at(anchor):
            lifted = pullback_pi(form, doubled)
            forms.extend([lifted, jstar(lifted)])
    return rank_at_point(doubled.chart, forms, doubled.point(c.basepoint)) == 2 * c.m


def frobenius_ann(D):
    forms = D.annihilator
    if not forms:
        return True
    if rank_at_point(D.chart, forms, D.basepoint) != len(forms):
        raise PreconditionError('annihilator is dependent at the basepoint',
                                code='dependent-annihilator')
    top = wedge_all(forms)
    return all(not wedge(exterior_d(alpha), top) for alpha in forms)


def sample_points(chart, count, seed, basepoint=None):
    rng = random.Random(seed)
    points = [chart.origin() if basepoint is None else chart.point(basepoint)]
    for _ in range(count):
        points.append(tuple(QQ(rng.randint(-9, 9), rng.randint(1, 5))
                            for _ in range(chart.dimension)))
    return points


def frobenius_span(D, points=None, samples=4, seed=0):
    '''Bracket closure of the span fields, tested by pointwise rank at the
    basepoint and `samples` further points drawn from `seed`.  Points where
    the fields lose rank are skipped.'''
    fields = D.span
    if rank_at_point(D.chart, fields, D.basepoint) != len(fields):
        raise PreconditionError('span fields are dependent at the basepoint',
                                code='dependent-span')
    if points is None:
        points = sample_points(D.chart, samples, seed, D.basepoint)
    brackets = [lie_bracket(v, w) for v, w in combinations(fields, 2)]
    for point in points:
        if rank_at_point(D.chart, fields, point) != len(fields):
            logger.debug('span degenerates at %s, point skipped', point)
            continue
        for bracket in brackets:
            if rank_at_point(D.chart, fields + [bracket], point) != len(fields):
                return False
    return True


def nijenhuis_check(v, w):
    '''J[v,w] - J[Jv,Jw] == [Jv,w] + [v,Jw] for the constant J.'''
    left = jvec(lie_bracket(v, w)) - jvec(lie_bracket(jvec(v), jvec(w)))
    right = lie_bracket(jvec(v), w) + lie_bracket(v, jvec(w))
    return left == right


def split_constant_distribution(doubled, rows, imaginary_rows=None):
    '''The distribution on U^C spanned by the constant fields
    (row, imaginary_row); imaginary parts default to zero.'''
    m = doubled.m
    chart = doubled.chart
    imaginary_rows = imaginary_rows or [[0] * m for _ in rows]
    fields = []
    for real, imaginary in zip(rows, imaginary_rows):
        if len(real) != m or len(imaginary) != m:
            raise StructuralError('constant rows must have one entry per base variable')
        fields.append(VectorField.from_polys(chart, [rat(x) for x in list(real) + list(imaginary)]))
    return Distribution(chart, span=fields)


@dataclass
class LemmaReport:
    hypotheses: dict
    results: list = field(default_factory=list)

    @property
    def hypotheses_ok(self):
        return all(self.hypotheses.values())

    @property
    def ok(self):
        return self.hypotheses_ok and all(ok for _, ok in self.results)

    def as_dict(self):
        return {
            'hypotheses': self.hypotheses,
            'results': [{'t': str(t), 'ok': ok} for t, ok in self.results],
        }


def lemma_check(D, ts):
    '''If D and JD are integrable then so is (Id + tJ) D for every t.'''
    hypotheses = {'D': frobenius_ann(D),
                  'JD': frobenius_ann(transform_distribution(D, 0, 1))}
    report = LemmaReport(hypotheses=hypotheses)
    if not report.hypotheses_ok:
        logger.info('lemma hypotheses fail: %s', hypotheses)
        return report
    for t in ts:
        a, b = rotation(t)
        report.results.append((t, frobenius_ann(transform_distribution(D, a, b))))
    return report


ITEMS = ('1', '2', '3', '4')


@dataclass
class TheoremOneReport:
    anchors: list
    rank_F: int
    normalization: Moebius = None
    items: dict = field(default_factory=lambda: {item: [] for item in ITEMS})
    witnesses: list = field(default_factory=list)
    coframe: bool = True
    redundancy: bool = True
    timings: dict = field(default_factory=dict)

    @property
    def ok(self):
        return (self.coframe and self.redundancy and
                all(ok for results in self.items.values() for _, ok in results))

    def record(self, item, t, ok, detail=None):
        self.items[item].append((t, ok))
        if not ok:
            self.witnesses.append({'item': item, 't': str(t), 'detail': detail or ''})

    def as_dict(self):
        return {
            'anchors': [str(a) for a in self.anchors],
            'rank_F': self.rank_F,
            'normalization': None if self.normalization is None else
                [[rat_text(x) for x in row] for row in self.normalization.matrix()],
            'coframe_on_UC': self.coframe,
            'anchor_redundancy': self.redundancy,
            'items': {item: [{'t': str(t), 'ok': ok} for t, ok in results]
                      for item, results in self.items.items()},
            'witnesses': self.witnesses,
        }


def _padded_x_part(v, m):
    ring = v.chart.ring
    return VectorField(v.chart, v.components[:m] + (ring.zero,) * m)


def _projection_items(c, doubled, projected, q):
    '''Items (3) and (4) at the parameter q for the distribution
    (Id - qJ) F, given as `projected`.'''
    chart, m = doubled.chart, doubled.m
    gammas = [pullback_pi(form, doubled) for form in c.at(q)]
    ann = projected.annihilator
    r_ann = generic_rank(chart, ann)
    horizontal = doubled.horizontal_covectors()
    intersection = r_ann + m - generic_rank(chart, ann + horizontal)
    contained = generic_rank(chart, ann + gammas) == r_ann
    integrable = all(not wedge(exterior_d(g), wedge_all(gammas)) for g in gammas)
    item3 = intersection == c.k and contained and integrable
    detail3 = (f'dim(ann + TY)^perp = {intersection}, expected {c.k}; '
               f'pi*gamma in annihilator: {contained}; pi*w integrable: {integrable}')

    x_parts = [_padded_x_part(v, m) for v in projected.span]
    annihilated = all(not contract_1form(g, v) for g in gammas for v in x_parts)
    projected_rank = generic_rank(chart, x_parts) if x_parts else 0
    item4 = annihilated and projected_rank == c.k * c.n
    detail4 = f'projection annihilated: {annihilated}; projection rank {projected_rank}'
    return (item3, detail3), (item4, detail4)


def check_theorem1(c, anchors, sample_ts, redundancy_points=None, span_samples=0, seed=0):
    '''Verify items (1)-(4) of the complexification construction at each
    sample parameter.  With span_samples > 0 item (1) is also checked on
    the span side, at that many points drawn from seed.'''
    started = time.perf_counter()
    anchors = requested = list(anchors)
    normalization = None
    curve, ts = c, list(sample_ts)
    if any(a.is_infinite for a in anchors):
        normalization = Moebius.sending_to_finite(anchors)
        inverse = normalization.inverse()
        curve = c.replace(pencils=[moebius_transform(p, normalization) for p in c.pencils])
        anchors = [inverse(a) for a in anchors]
        ts = [inverse(t) for t in ts]
    F = build_F(curve, anchors)
    doubled = DoubledChart(curve.chart)
    nominal = curve.k * curve.n
    report = TheoremOneReport(anchors=requested, rank_F=F.rank, normalization=normalization)
    report.coframe = complexified_coframe(curve, anchors)
    if redundancy_points is None:
        taken = {a.t for a in anchors}
        redundancy_points = [ProjPoint.finite(b) for b in range(-3, 10) if QQ(b) not in taken][:2]
    report.redundancy = anchor_redundancy(curve, F, redundancy_points)

    for original, q in zip(sample_ts, ts):
        rotated = transform_distribution(F, *rotation(q))
        integrable = frobenius_ann(rotated)
        if integrable and span_samples:
            integrable = frobenius_span(rotated, samples=span_samples, seed=seed)
        report.record('1', original, integrable, 'Frobenius condition fails')
        rank = rotated.rank
        report.record('2', original, rank == nominal, f'rank {rank}, expected {nominal}')
        projected = transform_distribution(F, *rotation(q, sign=-1))
        (ok3, detail3), (ok4, detail4) = _projection_items(curve, doubled, projected, q)
        report.record('3', original, ok3, detail3)
        report.record('4', original, ok4, detail4)
    report.timings['theorem1'] = time.perf_counter() - started
    logger.info('complexification items at %d parameters: %s', len(ts),
                'pass' if report.ok else 'FAIL')
    return report

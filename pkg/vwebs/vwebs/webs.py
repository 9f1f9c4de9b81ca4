"""Generalized Veronese curves of distributions and their integrability.

A curve is given by k pencils of 1-forms gamma^i(s, t) of parameter
degree n on a chart of dimension m = k(n+1).  The distribution w(t) is
the common kernel of the k forms gamma^i(t); it is integrable at t when
d gamma^i(t) ^ gamma^1(t) ^ ... ^ gamma^k(t) vanishes for every i.
Those k (k+2)-form pencils of parameter degree n(k+1) carry every check
in this module.
"""
import enum
import logging
import random
import time
from dataclasses import dataclass, field
from functools import cached_property, reduce

from sympy.polys.domains import QQ

from .exceptions import InvalidCurve, PreconditionError, StructuralError
from .exterior import DForm, rank_of_1forms_at_point, wedge, wedge_all, exterior_d
from .pencil import BINARY, FormPencil, ProjPoint, pencil_d, pencil_wedge
from .polyring import rat, rat_text

logger = logging.getLogger(__name__)


class Verdict(enum.Enum):
    EVERYWHERE = 'integrable-everywhere'
    LISTED_ONLY = 'integrable-at-listed-points-only'
    NOT_INTEGRABLE = 'not-integrable-at-queried-points'
    PROBABLE = 'probable-integrable'


class Mode(enum.Enum):
    FULL = 'full'
    SPARSE = 'sparse'
    NAIVE = 'naive'
    RANDOMIZED = 'randomized'


@dataclass(frozen=True)
class Locus:
    """Where a curve is integrable: everywhere, or at finitely many
    rational points plus `residual_degree` irrational or complex ones."""
    everywhere: bool = False
    points: tuple = ()
    residual_degree: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'points', tuple(sorted(set(self.points))))

    @classmethod
    def all(cls):
        return cls(everywhere=True)

    @property
    def residual(self):
        return self.residual_degree > 0

    @property
    def verdict(self):
        if self.everywhere:
            return Verdict.EVERYWHERE
        if self.points or self.residual:
            return Verdict.LISTED_ONLY
        return Verdict.NOT_INTEGRABLE

    def __contains__(self, point):
        return self.everywhere or point in self.points

    def pulled_back(self, g):
        '''The locus of the curve transformed by g: the points g^-1(p).'''
        if self.everywhere:
            return self
        inverse = g.inverse()
        return Locus(points=tuple(inverse(p) for p in self.points),
                     residual_degree=self.residual_degree)

    def __str__(self):
        if self.everywhere:
            return 'ALL'
        text = '{' + ', '.join(str(p) for p in self.points) + '}'
        if self.residual:
            text += f' + {self.residual_degree} non-rational'
        return text


@dataclass(frozen=True)
class GroundTruth:
    """What a generator knows about the curve it produced."""
    locus: Locus
    generator: str
    seed: int = 0
    adapted: bool = True
    first_integrals: tuple = ()
    params: dict = field(default_factory=dict, compare=False, hash=False)


@dataclass(frozen=True, eq=False)
class VeroneseCurve:
    k: int
    n: int
    chart: object
    pencils: tuple
    basepoint: tuple = None
    manifest: GroundTruth = None

    def __post_init__(self):
        object.__setattr__(self, 'pencils', tuple(self.pencils))
        if self.k < 1 or self.n < 0:
            raise InvalidCurve('k must be at least 1 and n non-negative',
                               code='shape', params={'k': self.k, 'n': self.n})
        if len(self.pencils) != self.k:
            raise InvalidCurve('expected %(k)s pencils, got %(got)s', code='shape',
                               params={'k': self.k, 'got': len(self.pencils)})
        if self.chart.dimension != self.m:
            raise InvalidCurve('chart dimension %(dim)s is not k(n+1) = %(m)s',
                               code='shape',
                               params={'dim': self.chart.dimension, 'm': self.m})
        for pencil in self.pencils:
            if pencil.chart != self.chart or pencil.form_degree != 1:
                raise InvalidCurve('pencils must be 1-forms on the curve chart',
                                   code='shape')
            if pencil.degree != self.n:
                raise InvalidCurve('pencil of parameter degree %(got)s, expected %(n)s',
                                   code='shape', params={'got': pencil.degree, 'n': self.n})
        point = self.chart.origin() if self.basepoint is None else self.basepoint
        try:
            object.__setattr__(self, 'basepoint', self.chart.point(point))
        except StructuralError as exc:
            raise InvalidCurve(str(exc), code='basepoint') from exc

    @property
    def m(self):
        return self.k * (self.n + 1)

    def coefficient_forms(self):
        return [form for pencil in self.pencils for form in pencil.coefficients]

    def replace(self, **changes):
        values = dict(k=self.k, n=self.n, chart=self.chart, pencils=self.pencils,
                      basepoint=self.basepoint, manifest=self.manifest)
        values.update(changes)
        return VeroneseCurve(**values)

    def at(self, point):
        '''The k annihilating forms of w(point).'''
        return [pencil.at(point) for pencil in self.pencils]

    @cached_property
    def volume_pencil(self):
        '''gamma^1 ^ ... ^ gamma^k as a k-form pencil.'''
        return reduce(pencil_wedge, self.pencils)

    @cached_property
    def integrability_pencils(self):
        started = time.perf_counter()
        result = tuple(pencil_wedge(pencil_d(pencil), self.volume_pencil)
                       for pencil in self.pencils)
        logger.debug('integrability pencils for k=%d n=%d: %d terms in %.3fs',
                     self.k, self.n, sum(p.term_count() for p in result),
                     time.perf_counter() - started)
        return result

    @cached_property
    def has_coframe(self):
        return validate_coframe(self, self.basepoint)


@dataclass
class IntegrabilityReport:
    mode: Mode
    verdict: Verdict
    points: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    @property
    def integrable(self):
        return self.verdict in (Verdict.EVERYWHERE, Verdict.PROBABLE)

    def passed(self):
        return [point for point, ok in self.points if ok]

    def as_dict(self):
        return {
            'mode': self.mode.value,
            'verdict': self.verdict.value,
            'points': [{'t': str(point), 'ok': ok} for point, ok in self.points],
            'witnesses': self.witnesses,
            'notes': self.notes,
            'stats': self.stats,
        }


def validate_coframe(c, point):
    return rank_of_1forms_at_point(c.coefficient_forms(), point) == c.m


def require_coframe(c):
    if not c.has_coframe:
        raise InvalidCurve(
            'coefficient forms are not a coframe at the basepoint %(point)s',
            code='coframe',
            params={'point': [rat_text(v) for v in c.basepoint]})


def integrability_pencil(c, i):
    '''d gamma^i ^ gamma^1 ^ ... ^ gamma^k, for 1 <= i <= k.'''
    if not 1 <= i <= c.k:
        raise StructuralError(f'pencil index {i} outside 1..{c.k}')
    return c.integrability_pencils[i - 1]


def _witness_at(c, point):
    for i, pencil in enumerate(c.integrability_pencils, start=1):
        value = pencil.at(point)
        if value:
            return {'t': str(point), 'pencil': i, 'form': str(value)}
    return None


def check_at(c, q):
    require_coframe(c)
    return _witness_at(c, q) is None


def evaluate_points(c, points):
    '''[(ok, witness or None)] per point, in order.'''
    results = []
    for point in points:
        witness = _witness_at(c, point)
        logger.debug('integrable at %s: %s', point, witness is None)
        results.append((witness is None, witness))
    return results


def _require_distinct(points, minimum, what):
    if len(set(points)) != len(points):
        raise PreconditionError('duplicate points in %(points)s', code='duplicate-points',
                                params={'points': ','.join(str(p) for p in points)})
    if len(points) < minimum:
        raise PreconditionError(
            '%(what)s needs at least %(minimum)s distinct points, got %(got)s',
            code='too-few-points',
            params={'what': what, 'minimum': minimum, 'got': len(points)})


def _stats(c):
    return {
        'k': c.k,
        'n': c.n,
        'm': c.m,
        'parameter_degree': c.n * (c.k + 1),
        'terms': sum(p.term_count() for p in c.integrability_pencils),
    }


def check_full(c):
    require_coframe(c)
    started = time.perf_counter()
    witnesses = []
    for i, pencil in enumerate(c.integrability_pencils, start=1):
        for j, form in enumerate(pencil.coefficients):
            if form:
                witnesses.append({'pencil': i, 'coefficient': j, 'form': str(form)})
                break
    verdict = Verdict.NOT_INTEGRABLE if witnesses else Verdict.EVERYWHERE
    logger.info('full check k=%d n=%d: %s', c.k, c.n, verdict.value)
    return IntegrabilityReport(
        mode=Mode.FULL, verdict=verdict, witnesses=witnesses, stats=_stats(c),
        timings={'check': time.perf_counter() - started})


def _point_report(c, mode, points, map_points):
    started = time.perf_counter()
    results = (map_points or evaluate_points)(c, points)
    checked = [(point, ok) for point, (ok, _) in zip(points, results)]
    witnesses = [witness for ok, witness in results if not ok]
    verdict = Verdict.NOT_INTEGRABLE if witnesses else Verdict.EVERYWHERE
    return IntegrabilityReport(
        mode=mode, verdict=verdict, points=checked, witnesses=witnesses,
        stats=_stats(c), timings={'check': time.perf_counter() - started})


def check_sparse(c, points, map_points=None):
    '''Integrability at n+3 distinct points implies integrability at
    every point of the projective line.'''
    require_coframe(c)
    points = list(points)
    _require_distinct(points, c.n + 3, 'sparse check')
    report = _point_report(c, Mode.SPARSE, points, map_points)
    if report.verdict is Verdict.EVERYWHERE:
        report.notes.append(
            f'integrability everywhere inferred from {len(points)} >= n+3 = {c.n + 3} '
            'integrable points')
    logger.info('sparse check at %d points: %s', len(points), report.verdict.value)
    return report


def check_naive(c, points, map_points=None):
    '''Vanishing at n(k+1)+1 distinct points forces the integrability
    pencils, of parameter degree n(k+1), to vanish identically.'''
    require_coframe(c)
    points = list(points)
    _require_distinct(points, c.n * (c.k + 1) + 1, 'naive check')
    report = _point_report(c, Mode.NAIVE, points, map_points)
    if report.verdict is Verdict.EVERYWHERE:
        report.notes.append('integrability pencils vanish at more points than their degree')
    return report


def binary_coefficients(c):
    '''Every x-monomial coefficient of the integrability pencils as a
    binary form of degree n(k+1) in (s, t).'''
    degree = c.n * (c.k + 1)
    s, t = BINARY.gens
    collected = {}
    for i, pencil in enumerate(c.integrability_pencils):
        for j, form in enumerate(pencil.coefficients):
            weight = s ** (degree - j) * t ** j
            for key, coef in form.items():
                for exps, value in coef.rep.items():
                    slot = (i, key, exps)
                    collected[slot] = collected.get(slot, BINARY.zero) + weight * value
    return [form for form in collected.values() if form]


def integrability_locus(c):
    require_coframe(c)
    forms = binary_coefficients(c)
    if not forms:
        return Locus.all()
    common = reduce(lambda a, b: a.gcd(b), forms)
    s, t = BINARY.gens
    points, residual = [], 0
    _, factors = common.factor_list()
    for factor, _multiplicity in factors:
        degree = max(sum(monom) for monom in factor.monoms())
        if degree == 1:
            alpha, beta = factor.coeff(s), factor.coeff(t)
            points.append(ProjPoint(beta, -alpha))
        elif degree > 1:
            residual += degree
    locus = Locus(points=tuple(points), residual_degree=residual)
    logger.debug('integrability locus: %s', locus)
    return locus


def randomized_check(c, samples, seed):
    '''Schwartz-Zippel test of the integrability pencils: evaluate their
    coefficient polynomials at random points of a rational grid.'''
    if samples < 1:
        raise PreconditionError('samples must be at least 1', code='samples')
    require_coframe(c)
    started = time.perf_counter()
    slots = []
    for i, pencil in enumerate(c.integrability_pencils, start=1):
        for j, form in enumerate(pencil.coefficients):
            for key, coef in form.items():
                slots.append((i, j, key, coef))
    degree = max((coef.total_degree() for *_, coef in slots), default=0)
    grid = max(2 * max(degree, 1) * samples, 2)
    rng = random.Random(seed)
    witnesses = []
    for _ in range(samples):
        point = tuple(QQ(rng.randrange(grid)) for _ in range(c.m))
        for i, j, key, coef in slots:
            value = coef.eval(point)
            if value:
                witnesses.append({
                    'point': [rat_text(v) for v in point],
                    'pencil': i, 'coefficient': j, 'covectors': list(key),
                    'value': rat_text(value)})
                break
        if witnesses:
            break
    per_trial = QQ(degree, grid)
    stats = dict(_stats(c), degree=degree, grid=grid, samples=samples, seed=seed)
    if witnesses:
        verdict = Verdict.NOT_INTEGRABLE
    else:
        verdict = Verdict.PROBABLE
        stats['failure_bound_per_trial'] = rat_text(per_trial)
        stats['failure_bound'] = rat_text(per_trial ** samples)
    return IntegrabilityReport(
        mode=Mode.RANDOMIZED, verdict=verdict, witnesses=witnesses, stats=stats,
        timings={'check': time.perf_counter() - started})


def general_position_check(c, points, base_point):
    points = list(points)
    _require_distinct(points, 1, 'general position check')
    covectors = [pencil.at(point) for pencil in c.pencils for point in points]
    return rank_of_1forms_at_point(covectors, base_point) == min(len(covectors), c.m)


def infinity_consistency(c):
    '''Evaluation at [0:1] picks out the top coefficient, for the curve
    pencils and for its integrability pencils alike.'''
    infinity = ProjPoint.infinity()
    pencils = c.pencils + c.integrability_pencils
    return all(p.at(infinity) == p.coefficients[-1] for p in pencils)


def first_integrals_at(c, q):
    '''The functions psi^s(q) whose level sets are the leaves of w(q).'''
    if c.manifest is None or not c.manifest.first_integrals:
        raise PreconditionError('curve carries no first integrals', code='first-integrals')
    return [psi.at(q).coefficient(()) for psi in c.manifest.first_integrals]


def first_integrals_consistent(c, q):
    '''d psi^1(q) ^ ... ^ d psi^k(q) is nonzero and every gamma^i(q)
    lies in the span of the d psi^s(q).'''
    differentials = [exterior_d(DForm.function(psi)) for psi in first_integrals_at(c, q)]
    top = wedge_all(differentials)
    if not top:
        return False
    return all(not wedge(form, top) for form in c.at(q))


@dataclass
class TheoremReport:
    trials: int
    seed: int
    full_verdict: Verdict
    draws: list = field(default_factory=list)
    disagreements: list = field(default_factory=list)
    opposite: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.disagreements

    def as_dict(self):
        return {
            'trials': self.trials,
            'seed': self.seed,
            'full_verdict': self.full_verdict.value,
            'sparse_passes': sum(1 for _, ok in self.draws if ok),
            'disagreements': [[str(p) for p in points] for points in self.disagreements],
            'opposite_direction': [[str(p) for p in points] for points in self.opposite],
        }


def point_pool(rng, size):
    '''Infinity, small integers and small fractions, then random ones.'''
    pool = {ProjPoint.infinity()}
    pool.update(ProjPoint.finite(QQ(a, b)) for a in range(-4, 5) for b in (1, 2, 3))
    while len(pool) < size:
        pool.add(ProjPoint.finite(QQ(rng.randint(-50, 50), rng.randint(1, 7))))
    return sorted(pool)


def draw_trials(c, trials, seed):
    rng = random.Random(seed)
    pool = point_pool(rng, 2 * (c.n + 3) + 27)
    return [sorted(rng.sample(pool, c.n + 3)) for _ in range(trials)]


def theorem_trials(c, trials, seed, map_points=None):
    '''Compare the sparse verdict at n+3 random points with the full one.'''
    started = time.perf_counter()
    full = check_full(c)
    draws = draw_trials(c, trials, seed)
    distinct = sorted({point for points in draws for point in points})
    results = (map_points or evaluate_points)(c, distinct)
    passing = {point for point, (ok, _) in zip(distinct, results) if ok}
    report = TheoremReport(trials=trials, seed=seed, full_verdict=full.verdict)
    for points in draws:
        sparse_ok = all(point in passing for point in points)
        report.draws.append((points, sparse_ok))
        if sparse_ok and not full.integrable:
            report.disagreements.append(points)
        elif full.integrable and not sparse_ok:
            report.opposite.append(points)
    if report.disagreements:
        logger.error('sparse check passed where the full check fails: %s',
                     report.disagreements[0])
    report.timings['trials'] = time.perf_counter() - started
    return report

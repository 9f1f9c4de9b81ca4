"""Deterministic generators of Veronese curves with known ground truth.

Every curve starts from the flat curve gamma^i_j = dx_{(i-1)(n+1)+j}; the
other families rescale it, pull it back along a triangular shear, move
the parameter by a Moebius map, or perturb one pencil by p(s, t) beta so
that it stays integrable only where p vanishes.
"""
import enum
import logging
import random
from dataclasses import dataclass, field, replace

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .exceptions import GenerationError
from .exterior import DForm, parse_one_form, pullback_map
from .pencil import (BINARY, FormPencil, Moebius, ProjPoint, moebius_transform, parse_points,
                     pencil_add, pencil_scale_poly)
from .polyring import Chart, Poly, parse_poly, rat, rat_text
from .webs import GroundTruth, Locus, VeroneseCurve, integrability_locus, validate_coframe

logger = logging.getLogger(__name__)


class Family(enum.Enum):
    FLAT = 'flat'
    RESCALED = 'rescaled'
    PULLBACK = 'pullback'
    MOEBIUS = 'moebius'
    PERTURBED = 'perturbed'


@dataclass(frozen=True)
class GeneratorSpec:
    family: Family
    k: int
    n: int
    seed: int = 0
    params: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, 'family', Family(self.family))
        if self.k < 1 or self.n < 1:
            raise GenerationError('k and n must be at least 1', code='shape',
                                  params={'k': self.k, 'n': self.n})

    def as_dict(self):
        return {'family': self.family.value, 'k': self.k, 'n': self.n,
                'seed': self.seed, 'params': self.params}


@dataclass(frozen=True)
class Shear:
    """A triangular polynomial map x_i -> x_i + q_i(x_{i+1}, ..., x_{m-1})."""
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, 'components', tuple(self.components))
        chart = self.chart
        if len(self.components) != chart.dimension:
            raise GenerationError('a shear needs one component per variable', code='shear')
        for i, component in enumerate(self.components):
            if component.chart != chart:
                raise GenerationError('shear components on different charts', code='shear')
            rest = component - Poly.var(chart, i)
            for exps, _ in rest.terms():
                if any(exps[: i + 1]):
                    raise GenerationError(
                        'component %(index)s is not of the form x_i + q(x_{>i})',
                        code='non-triangular', params={'index': i})

    @classmethod
    def identity(cls, chart):
        return cls(tuple(Poly.var(chart, i) for i in range(chart.dimension)))

    @classmethod
    def parse(cls, chart, texts):
        return cls(tuple(parse_poly(chart, text) for text in texts))

    @classmethod
    def random(cls, chart, rng, terms=2):
        m = chart.dimension
        components = []
        for i in range(m):
            component = Poly.var(chart, i)
            later = list(range(i + 1, m))
            for _ in range(rng.randint(0, terms) if later else 0):
                monomial = Poly.const(chart, rng.choice((-2, -1, 1, 2)))
                for _ in range(rng.randint(1, 2)):
                    monomial = monomial * Poly.var(chart, rng.choice(later))
                component = component + monomial
            components.append(component)
        return cls(tuple(components))

    @property
    def chart(self):
        return self.components[0].chart

    def __call__(self, point):
        return tuple(c.eval(point) for c in self.components)

    def compose(self, other):
        '''self after other.'''
        substitutions = dict(enumerate(other.components))
        return Shear(tuple(c.compose(substitutions) for c in self.components))

    def inverse(self):
        chart = self.chart
        m = chart.dimension
        inverse = [None] * m
        for i in reversed(range(m)):
            rest = self.components[i] - Poly.var(chart, i)
            substituted = rest.compose({j: inverse[j] for j in range(i + 1, m)})
            inverse[i] = Poly.var(chart, i) - substituted
        return Shear(tuple(inverse))

    def texts(self):
        return [str(c) for c in self.components]


def coordinate_pencils(chart, k, n):
    '''psi^s(t) = sum_j t^j x_{(s-1)(n+1)+j}, the first integrals of the
    flat curve.'''
    return tuple(FormPencil([DForm.function(Poly.var(chart, s * (n + 1) + j))
                             for j in range(n + 1)]) for s in range(k))


def gen_flat(k, n, seed=0):
    chart = Chart.standard(k * (n + 1))
    pencils = [FormPencil([DForm.dx(chart, i * (n + 1) + j) for j in range(n + 1)])
               for i in range(k)]
    manifest = GroundTruth(locus=Locus.all(), generator=Family.FLAT.value, seed=seed,
                           adapted=True, first_integrals=coordinate_pencils(chart, k, n))
    return VeroneseCurve(k=k, n=n, chart=chart, pencils=pencils, manifest=manifest)


def _with_manifest(c, family, **changes):
    manifest = c.manifest or GroundTruth(locus=Locus(), generator=family)
    params = dict(manifest.params)
    params.update(changes.pop('params', {}))
    return replace(manifest, generator=family, params=params, **changes)


def gen_rescaled(c, matrix):
    '''gamma'^i = sum_s C[i][s] gamma^s for a t-independent matrix C of
    polynomials, invertible at the basepoint.'''
    if len(matrix) != c.k or any(len(row) != c.k for row in matrix):
        raise GenerationError('rescaling matrix must be k x k', code='rescale-shape')
    values = [[entry.eval(c.basepoint) for entry in row] for row in matrix]
    if not DomainMatrix(values, (c.k, c.k), QQ).det():
        raise GenerationError('rescaling matrix is singular at the basepoint',
                              code='singular-rescale')
    pencils = []
    for row in matrix:
        combined = None
        for entry, pencil in zip(row, c.pencils):
            if entry.is_zero():
                continue
            term = pencil_scale_poly(pencil, entry)
            combined = term if combined is None else pencil_add(combined, term)
        pencils.append(combined)
    manifest = _with_manifest(c, Family.RESCALED.value,
                              params={'matrix': [[str(e) for e in row] for row in matrix]})
    return c.replace(pencils=pencils, manifest=manifest)


def gen_pullback(c, shear):
    if shear.chart != c.chart:
        raise GenerationError('shear on a different chart', code='shear')
    components = list(shear.components)
    pencils = [FormPencil([pullback_map(w, components) for w in pencil.coefficients])
               for pencil in c.pencils]
    inverse = shear.inverse()
    basepoint = inverse(c.basepoint)
    manifest = None
    if c.manifest is not None:
        substitutions = dict(enumerate(components))
        integrals = tuple(
            FormPencil([DForm.function(w.coefficient(()).compose(substitutions))
                        for w in psi.coefficients])
            for psi in c.manifest.first_integrals)
        params = {'shear': shear.texts(), 'adapted_chart': inverse.texts()}
        manifest = _with_manifest(c, Family.PULLBACK.value, adapted=False,
                                  first_integrals=integrals, params=params)
    return c.replace(pencils=pencils, basepoint=basepoint, manifest=manifest)


def to_adapted_chart(c):
    '''Undo the recorded shear: the curve in the coordinates built from
    its first integrals.'''
    if c.manifest is None or c.manifest.adapted:
        return c
    if 'shear' not in c.manifest.params:
        raise GenerationError('curve records no adapted chart', code='not-adaptable')
    shear = Shear.parse(c.chart, c.manifest.params['shear'])
    inverse = Shear.parse(c.chart, c.manifest.params['adapted_chart'])
    components = list(inverse.components)
    substitutions = dict(enumerate(components))
    pencils = [FormPencil([pullback_map(w, components) for w in pencil.coefficients])
               for pencil in c.pencils]
    integrals = tuple(
        FormPencil([DForm.function(w.coefficient(()).compose(substitutions))
                    for w in psi.coefficients])
        for psi in c.manifest.first_integrals)
    manifest = replace(c.manifest, adapted=True, first_integrals=integrals)
    return c.replace(pencils=pencils, basepoint=shear(c.basepoint), manifest=manifest)


def gen_moebius(c, g):
    pencils = [moebius_transform(p, g) for p in c.pencils]
    manifest = None
    if c.manifest is not None:
        integrals = tuple(moebius_transform(p, g) for p in c.manifest.first_integrals)
        manifest = _with_manifest(
            c, Family.MOEBIUS.value, locus=c.manifest.locus.pulled_back(g),
            first_integrals=integrals,
            params={'moebius': [rat_text(x) for row in g.matrix() for x in row]})
    return c.replace(pencils=pencils, manifest=manifest)


def vanishing_profile(n, points):
    '''Coefficients p_0..p_n of p(s,t) = s^(n-#points) prod (t - a s),
    with the factor s standing in for a point at infinity.'''
    points = list(points)
    if len(points) > n:
        raise GenerationError('at most n = %(n)s vanishing points, got %(got)s',
                              code='too-many-points', params={'n': n, 'got': len(points)})
    s, t = BINARY.gens
    profile = s ** (n - len(points))
    for point in points:
        profile *= s if point.is_infinite else t - s * point.t
    return [profile.coeff(s ** (n - j) * t ** j) for j in range(n + 1)]


def _candidate_basepoints(chart, seed):
    yield chart.origin()
    rng = random.Random(seed)
    for _ in range(20):
        yield tuple(QQ(rng.randint(-3, 3)) for _ in range(chart.dimension))


def gen_perturbed(c, points, beta, index, profile=None, seed=0):
    '''gamma^index(t) += p(t) beta with p vanishing at the given points.'''
    points = list(points)
    if len(set(points)) != len(points):
        raise GenerationError('duplicate vanishing points', code='duplicate-points')
    if not 1 <= index <= c.k:
        raise GenerationError('pencil index %(index)s outside 1..%(k)s', code='pencil-index',
                              params={'index': index, 'k': c.k})
    if profile is None:
        profile = vanishing_profile(c.n, points)
    else:
        profile = [rat(p) for p in profile]
        if len(profile) != c.n + 1:
            raise GenerationError('profile needs n+1 coefficients', code='profile')
    pencils = list(c.pencils)
    target = pencils[index - 1]
    pencils[index - 1] = FormPencil([w + beta * p for w, p in zip(target.coefficients, profile)])
    curve = c.replace(pencils=pencils, manifest=None)
    for basepoint in _candidate_basepoints(c.chart, seed):
        if validate_coframe(curve, basepoint):
            if basepoint != curve.basepoint:
                logger.warning('perturbed curve degenerates at %s, basepoint moved to %s',
                               [rat_text(v) for v in curve.basepoint],
                               [rat_text(v) for v in basepoint])
            curve = curve.replace(basepoint=basepoint)
            break
    else:
        raise GenerationError('perturbation destroys the coframe at every candidate basepoint',
                              code='coframe')
    locus = integrability_locus(curve)
    if locus.everywhere:
        logger.warning('perturbation by %s is absorbed: curve stays integrable', beta)
    params = {'points': [str(p) for p in points], 'beta': str(beta), 'pencil': index,
              'profile': [rat_text(p) for p in profile]}
    manifest = GroundTruth(locus=locus, generator=Family.PERTURBED.value, seed=seed,
                           adapted=False, params=params)
    return curve.replace(manifest=manifest)


def _random_poly(chart, rng, constant):
    poly = Poly.const(chart, constant)
    coefficient = rng.choice((-2, -1, 1, 2))
    return poly + Poly.var(chart, rng.randrange(chart.dimension)) * coefficient


def resolve_params(spec):
    '''Fill family parameters missing from the spec, drawing them from
    its seed; the result reproduces the same curve without the seed.'''
    rng = random.Random(spec.seed)
    chart = Chart.standard(spec.k * (spec.n + 1))
    params = dict(spec.params)
    family = spec.family
    if family is Family.RESCALED or (family is Family.PULLBACK and params.get('rescale')):
        params.setdefault('matrix', [
            [str(_random_poly(chart, rng, 1)) if i == j else
             str(_random_poly(chart, rng, 0)) if j > i else '0'
             for j in range(spec.k)] for i in range(spec.k)])
    if family is Family.PULLBACK:
        params.setdefault('shear', Shear.random(chart, rng).texts())
    if family is Family.MOEBIUS:
        if 'moebius' not in params:
            while True:
                entries = [rng.randint(-3, 3) for _ in range(4)]
                if entries[0] * entries[3] - entries[1] * entries[2]:
                    break
            params['moebius'] = [str(e) for e in entries]
    if family is Family.PERTURBED:
        pool = ['0', '1', '-1', '2', 'inf', '1/2']
        params.setdefault('points', rng.sample(pool, rng.randint(1, spec.n)))
        if 'beta' not in params:
            a, b = rng.sample(range(chart.dimension), 2)
            params['beta'] = f'{chart.variables[a]}*d{chart.variables[b]}'
        params.setdefault('pencil', rng.randint(1, spec.k))
    return replace(spec, params=params)


def generate(spec):
    spec = resolve_params(spec)
    params = spec.params
    curve = gen_flat(spec.k, spec.n, seed=spec.seed)
    chart = curve.chart
    if 'matrix' in params:
        matrix = [[parse_poly(chart, e) for e in row] for row in params['matrix']]
        curve = gen_rescaled(curve, matrix)
    if spec.family is Family.PULLBACK:
        curve = gen_pullback(curve, Shear.parse(chart, params['shear']))
    elif spec.family is Family.MOEBIUS:
        curve = gen_moebius(curve, Moebius(*params['moebius']))
    elif spec.family is Family.PERTURBED:
        points = params['points']
        if isinstance(points, str):
            points = parse_points(points)
        else:
            points = [ProjPoint.parse(p) for p in points]
        curve = gen_perturbed(curve, points, parse_one_form(chart, params['beta']),
                              int(params['pencil']), profile=params.get('profile'),
                              seed=spec.seed)
    manifest = replace(curve.manifest, seed=spec.seed,
                       params=dict(curve.manifest.params, **spec.params))
    return curve.replace(manifest=manifest)


def random_spec(seed, index):
    rng = random.Random(seed * 1000003 + index)
    families = list(Family)
    family = families[index % len(families)]
    k = rng.choice((1, 2))
    n = rng.choice((1, 2, 3))
    params = {'rescale': True} if family is Family.PULLBACK and rng.random() < 0.5 else {}
    return GeneratorSpec(family=family, k=k, n=n, seed=rng.randrange(2 ** 31), params=params)


def check_theorem_bound(curve):
    '''A non-integrable curve is integrable at fewer than n+3 points.'''
    locus = curve.manifest.locus
    if not locus.everywhere and len(locus.points) + locus.residual_degree >= curve.n + 3:
        logger.error('curve integrable at %s points contradicts the n+3 bound', locus)
        raise GenerationError('locus %(locus)s has at least n+3 points', code='theorem-bound',
                              params={'locus': str(locus)})


def build_corpus(seed, size):
    entries = []
    for index in range(size):
        spec = random_spec(seed, index)
        curve = generate(spec)
        check_theorem_bound(curve)
        entries.append((spec, curve))
    logger.info('built corpus of %d curves from seed %d', size, seed)
    return entries

"""JSON encoding of polynomials, forms, pencils, curves and manifests.

Rationals travel as decimal strings so that arbitrary precision survives
the round trip.  Terms are written in descending graded-lexicographic
order, which makes the output of a deterministic computation
byte-identical from run to run.
"""
import json
import logging

from .exceptions import InvalidCurve, StructuralError
from .exterior import DForm
from .pencil import FormPencil, ProjPoint
from .polyring import Chart, Poly, rat, rat_text
from .webs import GroundTruth, Locus, VeroneseCurve

logger = logging.getLogger(__name__)


def poly_to_json(p):
    return [{'num': str(int(c.numerator)), 'den': str(int(c.denominator)), 'exps': list(exps)}
            for exps, c in p.terms()]


def poly_from_json(chart, data):
    terms = {}
    for term in data:
        terms[tuple(term['exps'])] = rat(f"{term['num']}/{term['den']}")
    return Poly.from_terms(chart, terms)


def form_to_json(a):
    return {'degree': a.degree,
            'terms': [{'covectors': list(key), 'poly': poly_to_json(coef)}
                      for key, coef in a.items()]}


def form_from_json(chart, data):
    return DForm.from_terms(chart, data['degree'], {
        tuple(term['covectors']): poly_from_json(chart, term['poly'])
        for term in data['terms']})


def pencil_to_json(pencil):
    return [form_to_json(w) for w in pencil.coefficients]


def pencil_from_json(chart, data):
    return FormPencil([form_from_json(chart, w) for w in data])


def locus_to_json(locus):
    if locus.everywhere:
        return 'ALL'
    return {'points': [str(p) for p in locus.points],
            'residual_degree': locus.residual_degree}


def locus_from_json(data):
    if data == 'ALL':
        return Locus.all()
    return Locus(points=tuple(ProjPoint.parse(p) for p in data['points']),
                 residual_degree=data.get('residual_degree', 0))


def manifest_to_json(manifest):
    return {
        'generator': manifest.generator,
        'seed': manifest.seed,
        'locus': locus_to_json(manifest.locus),
        'adapted': manifest.adapted,
        'first_integrals': [pencil_to_json(p) for p in manifest.first_integrals],
        'params': manifest.params,
    }


def manifest_from_json(chart, data):
    return GroundTruth(
        locus=locus_from_json(data['locus']),
        generator=data['generator'],
        seed=data.get('seed', 0),
        adapted=data.get('adapted', False),
        first_integrals=tuple(pencil_from_json(chart, p)
                              for p in data.get('first_integrals', [])),
        params=data.get('params', {}))


def curve_to_json(c, manifest=True):
    data = {
        'k': c.k,
        'n': c.n,
        'chart': c.chart.name,
        'variables': list(c.chart.variables),
        'pencils': [pencil_to_json(p) for p in c.pencils],
        'basepoint': [rat_text(v) for v in c.basepoint],
    }
    if manifest and c.manifest is not None:
        data['manifest'] = manifest_to_json(c.manifest)
    return data


def curve_from_json(data):
    try:
        chart = Chart(data.get('chart', 'U'), tuple(data['variables']))
        pencils = [pencil_from_json(chart, p) for p in data['pencils']]
        manifest = data.get('manifest')
        return VeroneseCurve(
            k=data['k'], n=data['n'], chart=chart, pencils=pencils,
            basepoint=data.get('basepoint'),
            manifest=None if manifest is None else manifest_from_json(chart, manifest))
    except (KeyError, TypeError, StructuralError) as exc:
        raise InvalidCurve('malformed curve JSON: %(error)s', code='malformed',
                           params={'error': repr(exc)}) from exc


def dumps(data):
    return json.dumps(data, indent=2) + '\n'


def read_curve(path):
    try:
        with open(path) as stream:
            data = json.load(stream)
    except (OSError, ValueError) as exc:
        raise InvalidCurve('cannot read curve %(path)s: %(error)s', code='malformed',
                           params={'path': str(path), 'error': str(exc)}) from exc
    return curve_from_json(data)


def write_json(path, data):
    with open(path, 'w') as stream:
        stream.write(dumps(data))


def report_document(command, body, seed=None, timings=None):
    '''A command report: stable fields first, timings last under
    "volatile" so reproducibility checks can drop them.'''
    document = {'command': command, 'seed': seed}
    document.update(body)
    document['volatile'] = {'timings': {key: round(value, 6)
                                        for key, value in (timings or {}).items()}}
    return document


def stable_part(document):
    return {key: value for key, value in document.items() if key != 'volatile'}

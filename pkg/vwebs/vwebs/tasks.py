from celery import shared_task

from .codec import curve_from_json, curve_to_json
from .corpus import GeneratorSpec, check_theorem_bound, generate
from .pencil import ProjPoint
from .webs import evaluate_points


@shared_task
def check_points(curve, points):
    '''Integrability of a curve (as JSON) at a batch of points (as text).
    returns: [[ok, witness], ...] in point order
    '''
    c = curve_from_json(curve)
    results = evaluate_points(c, [ProjPoint.parse(p) for p in points])
    return [[ok, witness] for ok, witness in results]


@shared_task
def generate_curve(spec):
    '''Build one corpus curve from a GeneratorSpec dict.
    returns: the curve as JSON, manifest included
    '''
    curve = generate(GeneratorSpec(**spec))
    check_theorem_bound(curve)
    return curve_to_json(curve)

"""Fan independent check units out to Celery workers.

With the default settings tasks run eagerly in-process; setting
VWEBS_BROKER_URL sends them to real workers.  Results are reassembled in
input order, so reports do not depend on scheduling.
"""
import logging

from celery import group
from django.conf import settings

from .codec import curve_from_json, curve_to_json
from .tasks import check_points, generate_curve
from .webs import evaluate_points

logger = logging.getLogger(__name__)


def chunked(items, count):
    '''Split items into at most `count` contiguous, nearly equal chunks.'''
    items = list(items)
    count = max(1, min(count, len(items)))
    size, extra = divmod(len(items), count)
    chunks, start = [], 0
    for index in range(count):
        end = start + size + (1 if index < extra else 0)
        chunks.append(items[start:end])
        start = end
    return chunks


class Runner:
    def __init__(self, workers=None):
        self.workers = workers or settings.VWEBS['WORKERS']

    def map_points(self, c, points):
        points = list(points)
        if self.workers <= 1 or len(points) < 2:
            return evaluate_points(c, points)
        curve = curve_to_json(c)
        jobs = group(check_points.s(curve, [str(p) for p in chunk])
                     for chunk in chunked(points, self.workers))
        logger.debug('dispatching %d points to %d workers', len(points), self.workers)
        results = jobs.apply_async().get()
        return [(ok, witness) for batch in results for ok, witness in batch]

    def generate(self, specs):
        specs = list(specs)
        if self.workers <= 1:
            return [generate_curve(spec.as_dict()) for spec in specs]
        jobs = group(generate_curve.s(spec.as_dict()) for spec in specs)
        return jobs.apply_async().get()

    def curves(self, specs):
        return [curve_from_json(data) for data in self.generate(specs)]

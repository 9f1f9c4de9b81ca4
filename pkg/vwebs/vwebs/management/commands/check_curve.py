from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from vwebs.codec import locus_to_json, report_document
from vwebs.decorators import curve_from_path, form_is_valid, reports_errors
from vwebs.forms import CheckForm
from vwebs.runner import Runner
from vwebs.webs import (check_full, check_naive, check_sparse, integrability_locus,
                        randomized_check)

from ._report import write_report


class Command(BaseCommand):
    help = 'Check a Veronese curve for integrability (exit 0 integrable, 1 not, 2 bad input).'

    def add_arguments(self, parser):
        parser.add_argument('curve', help='curve JSON file')
        parser.add_argument('--mode', help='full (default), sparse, naive or random')
        parser.add_argument('--points', help='comma-separated points, e.g. 0,1,inf,3/2')
        parser.add_argument('--samples', help='evaluations in random mode')
        parser.add_argument('--seed')
        parser.add_argument('--out', help='report file (default: stdout)')

    @reports_errors
    @form_is_valid(CheckForm)
    @curve_from_path
    def handle(self, *args, **options):
        cleaned = options['_cleaned']
        curve = options['_curve']
        defaults = settings.VWEBS
        seed = defaults['SEED'] if cleaned['seed'] is None else cleaned['seed']
        mode = cleaned['mode']
        runner = Runner()

        if mode == 'full':
            report = check_full(curve)
        elif mode == 'sparse':
            report = check_sparse(curve, cleaned['points'], runner.map_points)
        elif mode == 'naive':
            report = check_naive(curve, cleaned['points'], runner.map_points)
        else:
            samples = cleaned['samples'] or defaults['RANDOM_SAMPLES']
            report = randomized_check(curve, samples, seed)

        body = report.as_dict()
        if mode == 'full' and not report.integrable:
            locus = integrability_locus(curve)
            body['locus'] = locus_to_json(locus)
            body['locus_verdict'] = locus.verdict.value
        write_report(self, options['out'],
                     report_document('check', body, seed=seed, timings=report.timings))
        if not report.integrable:
            raise CommandError(f'curve is not integrable ({report.verdict.value})', returncode=1)

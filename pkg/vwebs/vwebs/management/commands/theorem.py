from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from vwebs.codec import locus_to_json, report_document
from vwebs.decorators import curve_from_path, form_is_valid, reports_errors
from vwebs.forms import TheoremForm
from vwebs.runner import Runner
from vwebs.webs import integrability_locus, theorem_trials

from ._report import write_report


class Command(BaseCommand):
    help = ('Compare the n+3 point check with the full check on random point sets; '
            'exit 1 if the sparse check ever passes where the full check fails.')

    def add_arguments(self, parser):
        parser.add_argument('curve', help='curve JSON file')
        parser.add_argument('--trials')
        parser.add_argument('--seed')
        parser.add_argument('--out', help='report file (default: stdout)')

    @reports_errors
    @form_is_valid(TheoremForm)
    @curve_from_path
    def handle(self, *args, **options):
        cleaned = options['_cleaned']
        curve = options['_curve']
        defaults = settings.VWEBS
        trials = cleaned['trials'] or defaults['THEOREM_TRIALS']
        seed = defaults['SEED'] if cleaned['seed'] is None else cleaned['seed']

        report = theorem_trials(curve, trials, seed, Runner().map_points)
        body = report.as_dict()
        body['locus'] = locus_to_json(integrability_locus(curve))
        write_report(self, options['out'],
                     report_document('theorem', body, seed=seed, timings=report.timings))
        if not report.ok:
            raise CommandError(f'{len(report.disagreements)} point sets pass the sparse '
                               'check on a non-integrable curve', returncode=1)

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from vwebs.codec import report_document
from vwebs.complexify import check_theorem1
from vwebs.decorators import anchors_are_integrable, curve_from_path, form_is_valid, reports_errors
from vwebs.forms import ComplexifyForm
from vwebs.pencil import parse_points

from ._report import write_report


class Command(BaseCommand):
    help = 'Verify the complexification construction for a curve at sample parameters.'

    def add_arguments(self, parser):
        parser.add_argument('curve', help='curve JSON file')
        parser.add_argument('--anchors', help='n+2 distinct points the curve is integrable at')
        parser.add_argument('--sample-ts', help='parameters to test (default from settings)')
        parser.add_argument('--seed', help='seed for the span-side sample points')
        parser.add_argument('--out', help='report file (default: stdout)')

    @reports_errors
    @form_is_valid(ComplexifyForm)
    @curve_from_path
    @anchors_are_integrable
    def handle(self, *args, **options):
        cleaned = options['_cleaned']
        defaults = settings.VWEBS
        sample_ts = cleaned['sample_ts'] or parse_points(defaults['SAMPLE_TS'])
        seed = defaults['SEED'] if cleaned['seed'] is None else cleaned['seed']

        report = check_theorem1(options['_curve'], cleaned['anchors'], sample_ts,
                                span_samples=defaults['SPAN_SAMPLE_POINTS'], seed=seed)
        write_report(self, options['out'],
                     report_document('complexify', report.as_dict(), seed=seed,
                                     timings=report.timings))
        if not report.ok:
            raise CommandError('complexification items fail: ' +
                               '; '.join(f"item {w['item']} at t={w['t']}"
                                         for w in report.witnesses), returncode=1)

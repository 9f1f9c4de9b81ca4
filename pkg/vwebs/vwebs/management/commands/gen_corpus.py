from django.conf import settings
from django.core.management.base import BaseCommand

from vwebs.corpus import random_spec
from vwebs.decorators import form_is_valid, reports_errors
from vwebs.forms import CorpusForm
from vwebs.runner import Runner
from vwebs.storage import write_corpus


class Command(BaseCommand):
    help = 'Build a deterministic corpus of curves and write its fixture index.'

    def add_arguments(self, parser):
        parser.add_argument('--size')
        parser.add_argument('--seed')
        parser.add_argument('--out-dir')

    @reports_errors
    @form_is_valid(CorpusForm)
    def handle(self, *args, **options):
        cleaned = options['_cleaned']
        defaults = settings.VWEBS
        size = cleaned['size'] or defaults['CORPUS_SIZE']
        seed = defaults['SEED'] if cleaned['seed'] is None else cleaned['seed']

        specs = [random_spec(seed, index) for index in range(size)]
        curves = Runner().curves(specs)
        records = write_corpus(cleaned['out_dir'], list(zip(specs, curves)))
        integrable = sum(1 for record in records if record.integrable)
        self.stdout.write(f'wrote {len(records)} curves ({integrable} integrable) '
                          f'to {cleaned["out_dir"]}')

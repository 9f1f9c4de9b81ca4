from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand

from vwebs.codec import curve_to_json, dumps, manifest_to_json
from vwebs.corpus import GeneratorSpec, check_theorem_bound, generate
from vwebs.decorators import form_is_valid, reports_errors
from vwebs.exceptions import GenerationError, StructuralError
from vwebs.forms import GenForm


class Command(BaseCommand):
    help = 'Generate one curve with its ground-truth manifest.'

    def add_arguments(self, parser):
        parser.add_argument('--family', help='flat, rescaled, pullback, moebius or perturbed')
        parser.add_argument('--k')
        parser.add_argument('--n')
        parser.add_argument('--seed')
        parser.add_argument('--points', help='perturbed: vanishing points, at most n')
        parser.add_argument('--beta', help='perturbed: 1-form, e.g. "x2*dx1"')
        parser.add_argument('--pencil', help='perturbed: pencil index 1..k')
        parser.add_argument('--profile', help='perturbed: explicit p_0,...,p_n')
        parser.add_argument('--shear', help='pullback: components separated by ";"')
        parser.add_argument('--matrix', help='rescaled: rows separated by ";"')
        parser.add_argument('--moebius', help='moebius: a,b,c,d')
        parser.add_argument('--out-dir', help='directory for curve and manifest (default: stdout)')

    @reports_errors
    @form_is_valid(GenForm)
    def handle(self, *args, **options):
        cleaned = options['_cleaned']
        seed = settings.VWEBS['SEED'] if cleaned['seed'] is None else cleaned['seed']
        spec = GeneratorSpec(family=cleaned['family'], k=cleaned['k'], n=cleaned['n'],
                             seed=seed, params=options['_form'].params())
        try:
            curve = generate(spec)
        except StructuralError as exc:
            raise GenerationError(str(exc), code='params') from exc
        check_theorem_bound(curve)

        if not options['out_dir']:
            self.stdout.write(dumps(curve_to_json(curve)), ending='')
            return
        out_dir = Path(options['out_dir'])
        out_dir.mkdir(parents=True, exist_ok=True)
        name = f'{spec.family.value}-k{spec.k}-n{spec.n}-s{seed}'
        (out_dir / f'{name}.curve.json').write_text(dumps(curve_to_json(curve, manifest=False)))
        (out_dir / f'{name}.manifest.json').write_text(dumps(manifest_to_json(curve.manifest)))
        self.stdout.write(f'wrote {name} to {out_dir}')

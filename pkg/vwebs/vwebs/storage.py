"""Corpus directories: one curve file and one manifest file per instance,
and an index.json that `manage.py loaddata` accepts."""
import hashlib
import json
import logging
from pathlib import Path

from django.core import serializers

from .codec import curve_from_json, curve_to_json, dumps, locus_to_json, manifest_to_json
from .exceptions import InvalidCurve
from .models import CorpusEntry

logger = logging.getLogger(__name__)

INDEX = 'index.json'


def entry_name(index, spec):
    return f'{index:04d}-{spec.family.value}-k{spec.k}-n{spec.n}'


def _sha256(text):
    return hashlib.sha256(text.encode()).hexdigest()


def write_corpus(out_dir, entries):
    '''entries: (GeneratorSpec, VeroneseCurve) pairs.
    returns: the unsaved CorpusEntry records written to the index
    '''
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = []
    for index, (spec, curve) in enumerate(entries):
        name = entry_name(index, spec)
        curve_text = dumps(curve_to_json(curve, manifest=False))
        manifest_text = dumps(manifest_to_json(curve.manifest))
        (out_dir / f'{name}.curve.json').write_text(curve_text)
        (out_dir / f'{name}.manifest.json').write_text(manifest_text)
        locus = locus_to_json(curve.manifest.locus)
        records.append(CorpusEntry(
            pk=index + 1,
            name=name,
            family=spec.family.value,
            k=spec.k,
            n=spec.n,
            seed=spec.seed,
            params=curve.manifest.params,
            locus=locus if locus == 'ALL' else ','.join(locus['points']),
            curve_file=f'{name}.curve.json',
            manifest_file=f'{name}.manifest.json',
            sha256=_sha256(curve_text),
            manifest_sha256=_sha256(manifest_text)))
    (out_dir / INDEX).write_text(serializers.serialize('json', records, indent=2) + '\n')
    logger.info('wrote %d curves to %s', len(records), out_dir)
    return records


def read_entry(out_dir, entry):
    '''The curve of an index record, manifest attached, hashes checked.'''
    out_dir = Path(out_dir)
    curve_text = (out_dir / entry.curve_file).read_text()
    manifest_text = (out_dir / entry.manifest_file).read_text()
    if _sha256(curve_text) != entry.sha256 or _sha256(manifest_text) != entry.manifest_sha256:
        raise InvalidCurve('content hash mismatch for %(name)s', code='hash',
                           params={'name': entry.name})
    data = json.loads(curve_text)
    data['manifest'] = json.loads(manifest_text)
    return curve_from_json(data)


def read_corpus(out_dir):
    '''(CorpusEntry, VeroneseCurve) pairs from a corpus directory's index.'''
    out_dir = Path(out_dir)
    index = (out_dir / INDEX).read_text()
    entries = [obj.object for obj in serializers.deserialize('json', index)]
    return [(entry, read_entry(out_dir, entry)) for entry in entries]

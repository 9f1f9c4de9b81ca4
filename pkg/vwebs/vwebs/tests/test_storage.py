import tempfile
from pathlib import Path

from django.core.management import call_command
from django.test import TestCase

from vwebs.codec import curve_to_json
from vwebs.corpus import build_corpus
from vwebs.exceptions import InvalidCurve
from vwebs.models import CorpusEntry
from vwebs.storage import read_corpus, write_corpus


class CorpusStorageTests(TestCase):

    def setUp(self):
        tmp = tempfile.TemporaryDirectory()
        self.addCleanup(tmp.cleanup)
        self.dir = Path(tmp.name)
        self.entries = build_corpus(seed=4, size=6)
        self.records = write_corpus(self.dir, self.entries)

    def test_index_loads_as_a_fixture(self):
        call_command('loaddata', str(self.dir / 'index.json'), verbosity=0)
        self.assertEqual(CorpusEntry.objects.count(), 6)
        first = CorpusEntry.objects.first()
        self.assertEqual(first.name, '0000-flat-k%d-n%d' % (first.k, first.n))
        self.assertTrue(first.integrable)

    def test_locus_column_matches_the_manifest(self):
        for record, (_, curve) in zip(self.records, self.entries):
            self.assertEqual(record.integrable, curve.manifest.locus.everywhere)

    def test_read_back(self):
        loaded = read_corpus(self.dir)
        self.assertEqual(len(loaded), 6)
        for (entry, curve), (_, original) in zip(loaded, self.entries):
            self.assertEqual(curve_to_json(curve), curve_to_json(original), entry.name)

    def test_tampered_curve_is_rejected(self):
        path = self.dir / self.records[0].curve_file
        path.write_text(path.read_text() + ' ')
        with self.assertRaises(InvalidCurve):
            read_corpus(self.dir)

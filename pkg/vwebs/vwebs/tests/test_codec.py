from django.test import SimpleTestCase

from vwebs.codec import (curve_from_json, curve_to_json, locus_from_json, locus_to_json,
                         poly_to_json, report_document, stable_part)
from vwebs.corpus import gen_flat
from vwebs.exceptions import InvalidCurve
from vwebs.pencil import parse_points
from vwebs.polyring import Chart, Poly
from vwebs.webs import Locus


class CodecTests(SimpleTestCase):

    def test_poly_terms_are_exact_and_ordered(self):
        chart = Chart.standard(2)
        x0, x1 = Poly.var(chart, 0), Poly.var(chart, 1)
        self.assertEqual(poly_to_json(x0 ** 2 * 3 + x1 * Poly.const(chart, '-1/2')), [
            {'num': '3', 'den': '1', 'exps': [2, 0]},
            {'num': '-1', 'den': '2', 'exps': [0, 1]},
        ])

    def test_locus(self):
        self.assertEqual(locus_to_json(Locus.all()), 'ALL')
        locus = Locus(points=tuple(parse_points('inf,0')), residual_degree=2)
        self.assertEqual(locus_to_json(locus), {'points': ['0', 'inf'], 'residual_degree': 2})
        self.assertEqual(locus_from_json(locus_to_json(locus)), locus)

    def test_curve_without_manifest(self):
        data = curve_to_json(gen_flat(1, 1), manifest=False)
        self.assertNotIn('manifest', data)
        self.assertEqual(data['variables'], ['x0', 'x1'])
        self.assertIsNone(curve_from_json(data).manifest)

    def test_inconsistent_curve(self):
        data = curve_to_json(gen_flat(1, 1))
        data['n'] = 2
        with self.assertRaises(InvalidCurve):
            curve_from_json(data)

    def test_report_document(self):
        document = report_document('check', {'verdict': 'x'}, seed=3, timings={'check': 0.5})
        self.assertEqual(list(document)[-1], 'volatile')
        self.assertEqual(stable_part(document), {'command': 'check', 'seed': 3, 'verdict': 'x'})

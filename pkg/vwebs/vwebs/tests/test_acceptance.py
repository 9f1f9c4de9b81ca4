"""Whole-corpus suites.  Slow; run with --tag acceptance or skip with
--exclude-tag acceptance."""
import time
from itertools import combinations

from django.test import SimpleTestCase, tag
from hypothesis import given, settings

from vwebs.complexify import (DoubledChart, build_F, check_theorem1, lemma_check,
                              nijenhuis_check, split_constant_distribution)
from vwebs.corpus import (Family, Shear, build_corpus, gen_flat, gen_perturbed, gen_pullback,
                          to_adapted_chart)
from vwebs.exterior import parse_one_form
from vwebs.pencil import ProjPoint, parse_points
from vwebs.polyring import Chart, rat
from vwebs.webs import (Verdict, check_at, check_full, check_naive, general_position_check,
                        infinity_consistency, integrability_pencil, randomized_check,
                        theorem_trials)

from .strategies import fields

SAMPLE_TS = parse_points('0,1,-1,5,inf')
FINITE = parse_points('0,1,2,3,-1,-2,1/2,-1/2,4,-3')
DOUBLED_PLANE = DoubledChart(Chart.standard(2)).chart


def adapted(curve):
    manifest = curve.manifest
    if manifest.adapted:
        return curve
    if 'shear' in manifest.params:
        return to_adapted_chart(curve)
    return None


@tag('acceptance')
class CorpusAcceptanceTests(SimpleTestCase):

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.corpus = build_corpus(seed=0, size=100)

    def test_corpus_shape(self):
        self.assertGreaterEqual(len(self.corpus), 100)
        self.assertEqual({spec.family for spec, _ in self.corpus}, set(Family))
        self.assertEqual({spec.k for spec, _ in self.corpus}, {1, 2})
        self.assertEqual({spec.n for spec, _ in self.corpus if spec.k == 2}, {1, 2, 3})

    def test_sparse_never_passes_where_full_fails(self):
        for spec, curve in self.corpus:
            report = theorem_trials(curve, trials=50, seed=spec.seed)
            self.assertEqual(report.disagreements, [], spec)

    def test_naive_check_agrees_with_full_check(self):
        for spec, curve in self.corpus:
            points = FINITE[:curve.n * (curve.k + 1) + 1]
            naive = check_naive(curve, points)
            self.assertEqual(naive.verdict, check_full(curve).verdict, spec)

    def test_randomized_check_agrees_with_full_check(self):
        for spec, curve in self.corpus:
            report = randomized_check(curve, samples=10, seed=spec.seed)
            self.assertEqual(report.integrable, check_full(curve).integrable, spec)
            for witness in report.witnesses:
                pencil = integrability_pencil(curve, witness['pencil'])
                coefficient = pencil.coefficients[witness['coefficient']]
                value = coefficient.coefficient(tuple(witness['covectors'])).eval(
                    [rat(v) for v in witness['point']])
                self.assertEqual(value, rat(witness['value']))
                self.assertTrue(value)

    def test_infinity(self):
        for spec, curve in self.corpus:
            self.assertTrue(infinity_consistency(curve), spec)
            points = FINITE[:curve.n * (curve.k + 1) + 1]
            if all(check_at(curve, p) for p in points):
                self.assertTrue(check_at(curve, ProjPoint.infinity()), spec)

    def test_complexification_items(self):
        checked = 0
        for spec, curve in self.corpus:
            if (curve.k, curve.n) not in ((1, 1), (1, 2), (2, 1)):
                continue
            if not curve.manifest.locus.everywhere:
                continue
            curve = adapted(curve)
            if curve is None:
                continue
            anchors = FINITE[:curve.n + 2]
            report = check_theorem1(curve, anchors, SAMPLE_TS)
            self.assertTrue(report.ok, (spec, report.witnesses))
            self.assertEqual(report.rank_F, curve.k * curve.n)
            checked += 1
        self.assertGreater(checked, 0)

    def test_lemma_on_corpus_distributions(self):
        checked = 0
        for spec, curve in self.corpus:
            if checked == 10:
                break
            if curve.k * curve.n > 2 or not curve.manifest.locus.everywhere:
                continue
            curve = adapted(curve)
            if curve is None:
                continue
            F = build_F(curve, FINITE[:curve.n + 2])
            self.assertTrue(lemma_check(F, SAMPLE_TS).ok, spec)
            checked += 1
        self.assertEqual(checked, 10)


@tag('acceptance')
class FullCheckTimingTests(SimpleTestCase):

    def assertFullCheckWithin(self, curve, seconds, verdict):
        start = time.perf_counter()
        report = check_full(curve)
        self.assertLess(time.perf_counter() - start, seconds)
        self.assertEqual(report.verdict, verdict)

    def test_sheared_cubic_curve(self):
        chart = Chart.standard(4)
        shear = Shear.parse(chart, ['x0 + x1*x2', 'x1 + x3**2', 'x2 - x3', 'x3'])
        self.assertFullCheckWithin(gen_pullback(gen_flat(1, 3), shear), 10, Verdict.EVERYWHERE)

    def test_perturbed_cubic_curve(self):
        c = gen_flat(1, 3)
        curve = gen_perturbed(c, parse_points('0,1'), parse_one_form(c.chart, 'x3*dx1'), 1)
        self.assertFullCheckWithin(curve, 10, Verdict.NOT_INTEGRABLE)


@tag('acceptance')
class ConstantAcceptanceTests(SimpleTestCase):

    def test_split_constant_examples(self):
        doubled = DoubledChart(Chart.standard(3))
        examples = [
            ([[1, 0, 0]], None),
            ([[1, 0, 0], [0, 1, 0]], [[0, 0, 1], [1, 0, 0]]),
            ([[1, 2, 3]], [[3, 2, 1]]),
        ]
        for rows, imaginary in examples:
            D = split_constant_distribution(doubled, rows, imaginary)
            self.assertTrue(lemma_check(D, SAMPLE_TS).ok, rows)

    def test_general_position_of_flat_curves(self):
        pool = parse_points('0,1,-1,2,1/2,inf')
        for n in (1, 2, 3):
            c = gen_flat(1, n)
            for points in combinations(pool, n + 1):
                self.assertTrue(general_position_check(c, points, c.chart.origin()), points)
        c = gen_flat(2, 1)
        for points in combinations(pool, 2):
            self.assertTrue(general_position_check(c, points, c.chart.origin()), points)

    @settings(max_examples=20, deadline=None)
    @given(fields(DOUBLED_PLANE), fields(DOUBLED_PLANE))
    def test_nijenhuis_on_random_fields(self, v, w):
        self.assertTrue(nijenhuis_check(v, w))

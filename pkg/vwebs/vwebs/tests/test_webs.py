from django.test import SimpleTestCase
from hypothesis import given, settings

from vwebs.corpus import Shear, gen_flat, gen_pullback, gen_rescaled
from vwebs.exceptions import InvalidCurve, PreconditionError
from vwebs.exterior import DForm, wedge_all
from vwebs.pencil import Moebius, ProjPoint, parse_points
from vwebs.polyring import Chart, Poly
from vwebs.webs import (Locus, Mode, VeroneseCurve, Verdict, check_at, check_full,
                        check_naive, check_sparse, evaluate_points, first_integrals_at,
                        first_integrals_consistent, general_position_check,
                        infinity_consistency, integrability_locus, integrability_pencil,
                        randomized_check, theorem_trials, validate_coframe)

from .curves import (perturbed_example, repeated_coefficient_curve, sum_of_squares_example,
                     two_pencil_perturbed_example)
from .strategies import proj_points, rescalings

PROPERTIES = settings(max_examples=100, deadline=None)


def top_form(chart, *indices):
    return wedge_all([DForm.dx(chart, i) for i in indices])


class CurveShapeTests(SimpleTestCase):

    def test_flat_curve_shape(self):
        c = gen_flat(2, 1)
        self.assertEqual(c.m, 4)
        self.assertEqual(len(c.coefficient_forms()), 4)
        self.assertEqual(c.basepoint, c.chart.origin())

    def test_wrong_pencil_count(self):
        c = gen_flat(1, 2)
        with self.assertRaises(InvalidCurve):
            VeroneseCurve(k=2, n=2, chart=c.chart, pencils=c.pencils)

    def test_wrong_chart_dimension(self):
        c = gen_flat(1, 1)
        with self.assertRaises(InvalidCurve):
            VeroneseCurve(k=1, n=2, chart=c.chart, pencils=c.pencils)

    def test_basepoint_of_wrong_length(self):
        with self.assertRaises(InvalidCurve):
            gen_flat(1, 1).replace(basepoint=(0, 0, 0))


class CoframeTests(SimpleTestCase):

    def test_flat_curve(self):
        c = gen_flat(1, 2)
        self.assertTrue(validate_coframe(c, c.chart.origin()))

    def test_perturbed_example_degenerates_at_x2_equal_one(self):
        c = perturbed_example()
        self.assertTrue(validate_coframe(c, (0, 0, 0)))
        self.assertFalse(validate_coframe(c, (0, 0, 1)))

    def test_repeated_coefficient_is_rejected(self):
        c = repeated_coefficient_curve()
        self.assertFalse(c.has_coframe)
        with self.assertRaises(InvalidCurve) as caught:
            check_full(c)
        self.assertEqual(caught.exception.code, 'coframe')
        with self.assertRaises(InvalidCurve):
            check_at(c, ProjPoint.finite(0))


class IntegrabilityPencilTests(SimpleTestCase):

    def test_flat_curve_gives_zero_pencils(self):
        c = gen_flat(2, 2)
        for i in (1, 2):
            pencil = integrability_pencil(c, i)
            self.assertEqual(pencil.degree, 6)
            self.assertEqual(pencil.form_degree, 4)
            self.assertTrue(all(w.is_zero() for w in pencil.coefficients))

    def test_perturbed_example(self):
        c = perturbed_example()
        volume = top_form(c.chart, 2, 1, 0)
        zero = DForm.zero(c.chart, 3)
        self.assertEqual(integrability_pencil(c, 1).coefficients,
                         (zero, -volume, volume, zero, zero))

    def test_unit_rescaling_keeps_the_pencil_zero(self):
        c = gen_flat(1, 2)
        rescaled = gen_rescaled(c, [[1 + Poly.var(c.chart, 0)]])
        self.assertTrue(all(w.is_zero() for w in integrability_pencil(rescaled, 1).coefficients))

    def test_index_out_of_range(self):
        with self.assertRaises(ValueError):
            integrability_pencil(gen_flat(1, 1), 2)


class PointCheckTests(SimpleTestCase):

    def test_perturbed_example(self):
        c = perturbed_example()
        self.assertTrue(check_at(c, ProjPoint.finite(0)))
        self.assertTrue(check_at(c, ProjPoint.finite(1)))
        self.assertTrue(check_at(c, ProjPoint.infinity()))
        self.assertFalse(check_at(c, ProjPoint.finite(2)))

    def test_witness_names_the_nonzero_form(self):
        c = perturbed_example()
        [(ok, witness)] = evaluate_points(c, [ProjPoint.finite(2)])
        self.assertFalse(ok)
        self.assertEqual(witness['t'], '2')
        self.assertEqual(witness['pencil'], 1)
        self.assertEqual(witness['form'], str(top_form(c.chart, 2, 1, 0) * 2))

    @PROPERTIES
    @given(proj_points())
    def test_flat_curve_everywhere(self, q):
        self.assertTrue(check_at(gen_flat(1, 2), q))


class FullCheckTests(SimpleTestCase):

    def test_flat_curve(self):
        report = check_full(gen_flat(2, 1))
        self.assertEqual(report.mode, Mode.FULL)
        self.assertEqual(report.verdict, Verdict.EVERYWHERE)
        self.assertTrue(report.integrable)
        self.assertEqual(report.witnesses, [])

    def test_perturbed_example(self):
        report = check_full(perturbed_example())
        self.assertEqual(report.verdict, Verdict.NOT_INTEGRABLE)
        self.assertFalse(report.integrable)
        self.assertEqual(report.witnesses[0]['pencil'], 1)
        self.assertEqual(report.witnesses[0]['coefficient'], 1)

    def test_sheared_and_rescaled_curve(self):
        c = gen_flat(1, 2)
        x0, x1, x2 = (Poly.var(c.chart, i) for i in range(3))
        sheared = gen_pullback(c, Shear((x0 + x1 * x2, x1, x2)))
        rescaled = gen_rescaled(sheared, [[1 + x0]])
        self.assertEqual(check_full(rescaled).verdict, Verdict.EVERYWHERE)

    def test_report_as_dict(self):
        data = check_full(gen_flat(1, 1)).as_dict()
        self.assertEqual(data['mode'], 'full')
        self.assertEqual(data['verdict'], 'integrable-everywhere')
        self.assertEqual(data['stats']['parameter_degree'], 2)


class SparseCheckTests(SimpleTestCase):

    def test_flat_curve_at_n_plus_3_points(self):
        report = check_sparse(gen_flat(1, 2), parse_points('0,1,-1,2,inf'))
        self.assertEqual(report.verdict, Verdict.EVERYWHERE)
        self.assertEqual(len(report.notes), 1)

    def test_perturbed_example(self):
        report = check_sparse(perturbed_example(), parse_points('0,1,inf,2,3'))
        self.assertEqual(report.verdict, Verdict.NOT_INTEGRABLE)
        self.assertFalse(report.integrable)
        self.assertEqual([str(p) for p in report.passed()], ['0', '1', 'inf'])
        self.assertEqual(len(report.witnesses), 2)

    def test_duplicate_points(self):
        with self.assertRaises(PreconditionError) as caught:
            check_sparse(gen_flat(1, 2), parse_points('0,1,inf,1,2'))
        self.assertEqual(caught.exception.code, 'duplicate-points')

    def test_too_few_points(self):
        with self.assertRaises(PreconditionError) as caught:
            check_sparse(gen_flat(1, 2), parse_points('0,1,2,3'))
        self.assertEqual(caught.exception.code, 'too-few-points')

    def test_map_points_is_used(self):
        calls = []

        def map_points(c, points):
            calls.append(list(points))
            return evaluate_points(c, points)

        points = parse_points('0,1,2,3')
        check_sparse(gen_flat(1, 1), points, map_points=map_points)
        self.assertEqual(calls, [points])


class NaiveCheckTests(SimpleTestCase):

    def test_flat_curve(self):
        report = check_naive(gen_flat(1, 2), parse_points('0,1,2,3,4'))
        self.assertEqual(report.verdict, Verdict.EVERYWHERE)
        self.assertEqual(report.verdict, check_full(gen_flat(1, 2)).verdict)

    def test_perturbed_example(self):
        c = perturbed_example()
        report = check_naive(c, parse_points('0,1,inf,2,3'))
        self.assertEqual(report.verdict, Verdict.NOT_INTEGRABLE)
        self.assertEqual(report.verdict, check_full(c).verdict)
        self.assertEqual([ok for _, ok in report.points], [True, True, True, False, False])

    def test_needs_degree_plus_one_points(self):
        with self.assertRaises(PreconditionError):
            check_naive(gen_flat(1, 2), parse_points('0,1,2,3'))


class LocusTests(SimpleTestCase):

    def test_flat_curve(self):
        self.assertEqual(integrability_locus(gen_flat(1, 2)), Locus.all())

    def test_perturbed_example(self):
        locus = integrability_locus(perturbed_example())
        self.assertEqual(locus.points, tuple(parse_points('0,1,inf')))
        self.assertFalse(locus.residual)
        for point in locus.points:
            self.assertTrue(check_at(perturbed_example(), point))

    def test_irreducible_quadratic_is_residual(self):
        locus = integrability_locus(sum_of_squares_example())
        self.assertEqual(locus.points, (ProjPoint.infinity(),))
        self.assertEqual(locus.residual_degree, 2)
        self.assertEqual(str(locus), '{inf} + 2 non-rational')

    def test_pulled_back_locus(self):
        locus = Locus(points=tuple(parse_points('0,1,inf')))
        moved = locus.pulled_back(Moebius.shift(1))
        self.assertEqual(moved.points, tuple(parse_points('-1,0,inf')))
        self.assertIs(Locus.all().pulled_back(Moebius.swap()).everywhere, True)

    def test_membership(self):
        locus = Locus(points=(ProjPoint.finite(2),))
        self.assertIn(ProjPoint.finite(2), locus)
        self.assertNotIn(ProjPoint.finite(3), locus)
        self.assertIn(ProjPoint.finite(3), Locus.all())

    def test_verdicts(self):
        self.assertEqual(Locus.all().verdict, Verdict.EVERYWHERE)
        self.assertEqual(integrability_locus(perturbed_example()).verdict, Verdict.LISTED_ONLY)
        self.assertEqual(Locus(residual_degree=2).verdict, Verdict.LISTED_ONLY)
        self.assertEqual(Locus().verdict, Verdict.NOT_INTEGRABLE)


class RandomizedCheckTests(SimpleTestCase):

    def test_flat_curve(self):
        report = randomized_check(gen_flat(2, 1), samples=10, seed=3)
        self.assertEqual(report.verdict, Verdict.PROBABLE)
        self.assertTrue(report.integrable)
        self.assertEqual(report.witnesses, [])
        self.assertEqual(report.stats['failure_bound'], '0')

    def test_perturbed_example(self):
        report = randomized_check(perturbed_example(), samples=10, seed=0)
        self.assertEqual(report.verdict, Verdict.NOT_INTEGRABLE)
        self.assertEqual(len(report.witnesses), 1)
        self.assertEqual(len(report.witnesses[0]['point']), 3)

    def test_needs_a_sample(self):
        with self.assertRaises(PreconditionError):
            randomized_check(gen_flat(1, 1), samples=0, seed=0)


class GeneralPositionTests(SimpleTestCase):

    def test_vandermonde_points(self):
        c = gen_flat(1, 2)
        origin = c.chart.origin()
        self.assertTrue(general_position_check(c, parse_points('0,1,2'), origin))
        self.assertTrue(general_position_check(c, parse_points('0,1,2,3'), origin))
        self.assertTrue(general_position_check(c, parse_points('0,inf'), origin))

    def test_two_pencils(self):
        c = gen_flat(2, 1)
        self.assertTrue(general_position_check(c, parse_points('0,1'), c.chart.origin()))

    def test_duplicates(self):
        c = gen_flat(1, 2)
        with self.assertRaises(PreconditionError):
            general_position_check(c, parse_points('1,1'), c.chart.origin())


class InfinityTests(SimpleTestCase):

    def test_flat_and_perturbed(self):
        self.assertTrue(infinity_consistency(gen_flat(2, 2)))
        self.assertTrue(infinity_consistency(perturbed_example()))


class FirstIntegralTests(SimpleTestCase):

    def test_flat_first_integrals(self):
        c = gen_flat(1, 1)
        [psi] = first_integrals_at(c, ProjPoint.finite(2))
        x0, x1 = (Poly.var(c.chart, i) for i in range(2))
        self.assertEqual(psi, x0 + x1 * 2)

    @PROPERTIES
    @given(proj_points())
    def test_flat_first_integrals_are_consistent(self, q):
        self.assertTrue(first_integrals_consistent(gen_flat(2, 1), q))

    def test_sheared_first_integrals_are_consistent(self):
        c = gen_flat(1, 2)
        x0, x1, x2 = (Poly.var(c.chart, i) for i in range(3))
        sheared = gen_pullback(c, Shear((x0 + x1 * x2, x1 + x2 ** 2, x2)))
        for q in parse_points('0,1,-2,inf'):
            self.assertTrue(first_integrals_consistent(sheared, q))

    def test_curve_without_integrals(self):
        with self.assertRaises(PreconditionError):
            first_integrals_at(perturbed_example(), ProjPoint.finite(0))


class TheoremTrialTests(SimpleTestCase):

    def test_flat_curve(self):
        report = theorem_trials(gen_flat(1, 2), trials=50, seed=0)
        self.assertTrue(report.ok)
        self.assertEqual(len(report.draws), 50)
        self.assertEqual(report.opposite, [])
        self.assertEqual(report.as_dict()['sparse_passes'], 50)

    def test_perturbed_curve_never_passes(self):
        report = theorem_trials(perturbed_example(), trials=50, seed=1)
        self.assertTrue(report.ok)
        self.assertEqual(report.as_dict()['sparse_passes'], 0)

    def test_draws_are_reproducible(self):
        first = theorem_trials(gen_flat(1, 1), trials=5, seed=9).as_dict()
        second = theorem_trials(gen_flat(1, 1), trials=5, seed=9).as_dict()
        self.assertEqual(first, second)
        for points, _ in theorem_trials(gen_flat(1, 1), trials=5, seed=9).draws:
            self.assertEqual(len(set(points)), 4)


class RescalingInvarianceTests(SimpleTestCase):

    def test_rescaled_perturbed_curve_keeps_its_locus(self):
        c = perturbed_example()
        x0 = Poly.var(c.chart, 0)
        rescaled = gen_rescaled(c, [[Poly.const(c.chart, 2) + x0 * x0]])
        self.assertEqual(integrability_locus(rescaled), integrability_locus(c))

    @settings(max_examples=25, deadline=None)
    @given(rescalings(Chart.standard(4), 2))
    def test_two_by_two_rescalings_keep_the_verdict(self, matrix):
        for c in (gen_flat(2, 1), two_pencil_perturbed_example()):
            self.assertEqual(check_full(gen_rescaled(c, matrix)).verdict, check_full(c).verdict)

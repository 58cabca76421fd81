import unittest

from hypothesis import given, settings, strategies as st
import numpy as np

import kloops as kl

from .fixtures import NONBOL5, fixture, fixtures


def mask(text, order):
    return kl.SubsetMask.parse(text, order)


N7 = "0,1,2,3,4,5,6"


class TestSubloops(unittest.TestCase):
    def test_enumerate(self):
        found = kl.enumerate_subloops(fixture("z9"))
        self.assertEqual([c.format() for c in found], ["0", "0,3,6", "0,1,2,3,4,5,6,7,8"])
        self.assertEqual(len(kl.enumerate_subloops(fixture("z3xz3"))), 6)
        self.assertEqual(len(kl.enumerate_subloops(fixture("z15"))), 4)

    def test_enumerate_cap(self):
        with self.assertRaises(kl.CapExceeded) as ctx:
            kl.enumerate_subloops(fixture("z3xz3"), cap=3)
        self.assertEqual(len(ctx.exception.partial), 3)

    def test_closure(self):
        z9 = fixture("z9")
        self.assertEqual(kl.subloop_closure(z9, mask("3", 9)).format(), "0,3,6")
        self.assertEqual(kl.subloop_closure(z9, mask("", 9)).format(), "0")
        self.assertEqual(len(kl.subloop_closure(z9, mask("2", 9))), 9)

    def test_is_subloop(self):
        z9 = fixture("z9")
        self.assertTrue(kl.is_subloop(z9, mask("0,3,6", 9)))
        self.assertFalse(kl.is_subloop(z9, mask("0,3", 9)))
        self.assertFalse(kl.is_subloop(z9, mask("3,6", 9)))

    def test_requires_bol(self):
        L = kl.make_loop(kl.CayleyTable(NONBOL5))
        with self.assertRaises(kl.PreconditionError):
            kl.is_subloop(L, mask("0", 5))
        with self.assertRaises(kl.PreconditionError):
            kl.enumerate_subloops(L)

    def test_subloop_structure(self):
        sub, members = kl.subloop_structure(fixture("z9"), mask("0,3,6", 9))
        self.assertEqual(members, (0, 3, 6))
        self.assertEqual(sub.table, fixture("z3").table)
        with self.assertRaises(kl.PreconditionError):
            kl.subloop_structure(fixture("z9"), mask("0,3", 9))

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=0, max_value=2**9 - 1))
    def test_closure_is_a_closure_operator(self, bits):
        L = fixture("z3xz3")
        seed = kl.SubsetMask(9, bits)
        c = kl.subloop_closure(L, seed)
        self.assertTrue(seed.issubset(c))
        self.assertTrue(kl.is_subloop(L, c))
        self.assertEqual(kl.subloop_closure(L, c), c)
        self.assertEqual(9 % len(c), 0)


class TestNormality(unittest.TestCase):
    def test_abelian(self):
        z9 = fixture("z9")
        c = mask("0,3,6", 9)
        self.assertTrue(kl.is_normal(z9, c))
        self.assertTrue(kl.is_normal_by_cosets(z9, c))

    def test_frobenius(self):
        L = fixture("frobenius21")
        n = mask(N7, 21)
        c = mask("0,7,14", 21)
        self.assertTrue(kl.is_normal(L, n))
        self.assertTrue(kl.is_normal_by_cosets(L, n))
        self.assertTrue(kl.is_subloop(L, c))
        self.assertFalse(kl.is_normal(L, c))
        self.assertFalse(kl.is_normal_by_cosets(L, c))

    def test_requires_subloop(self):
        with self.assertRaises(kl.PreconditionError):
            kl.is_normal(fixture("z9"), mask("0,3", 9))

    def test_both_criteria_agree(self):
        for name, L in fixtures().items():
            for c in kl.enumerate_subloops(L):
                self.assertEqual(kl.is_normal(L, c), kl.is_normal_by_cosets(L, c), (name, c))

    def test_join_of_normal_subloops_is_normal(self):
        for name, L in fixtures().items():
            normal = [c for c in kl.enumerate_subloops(L) if kl.is_normal(L, c)]
            for i, c in enumerate(normal):
                for d in normal[i + 1 :]:
                    self.assertTrue(kl.is_normal(L, kl.join_subloops(L, [c, d])), (name, c, d))


class TestQuotient(unittest.TestCase):
    def test_cyclic(self):
        q = kl.quotient(fixture("z9"), mask("0,3,6", 9))
        self.assertEqual([b.format() for b in q.blocks], ["0,3,6", "1,4,7", "2,5,8"])
        self.assertEqual(q.table, fixture("z3").table)
        np.testing.assert_array_equal(q.projection, [0, 1, 2] * 3)
        self.assertEqual(q.inherited, {"kloop": True, "u2d": True, "automorphic": True})

    def test_frobenius(self):
        L = fixture("frobenius21")
        q = kl.quotient(L, mask(N7, 21))
        self.assertEqual(q.table.order, 3)
        np.testing.assert_array_equal(q.projection, np.arange(21) // 7)
        self.assertIsNotNone(kl.find_isomorphism(q.loop, fixture("z3")))
        self.assertTrue(q.inherited["kloop"])

    def test_not_normal(self):
        with self.assertRaises(kl.NotNormal):
            kl.quotient(fixture("frobenius21"), mask("0,7,14", 21))
        with self.assertRaises(kl.NotNormal):
            kl.quotient(fixture("z9"), mask("3,6", 9))

    def test_quotients_of_every_fixture(self):
        for name, L in fixtures().items():
            automorphic = kl.is_automorphic(L)
            for c in kl.enumerate_subloops(L):
                if not kl.is_normal(L, c):
                    continue
                q = kl.quotient(L, c)
                self.assertEqual(q.table.order * len(c), L.order, (name, c))
                self.assertTrue(q.loop.flags.is_kloop, (name, c))
                self.assertTrue(q.loop.flags.is_u2d, (name, c))
                self.assertEqual(q.inherited.get("automorphic", False), automorphic, (name, c))
                if automorphic:
                    self.assertTrue(kl.is_automorphic(q.loop), (name, c))

    def test_trivial_and_full(self):
        z5 = fixture("z5")
        self.assertEqual(kl.quotient(z5, mask("0", 5)).table, z5.table)
        self.assertEqual(kl.quotient(z5, kl.SubsetMask.full(5)).table.order, 1)


class TestMorphisms(unittest.TestCase):
    def test_reduction_mod_three(self):
        m = kl.LoopMorphism(fixture("z9"), fixture("z3"), [x % 3 for x in range(9)])
        self.assertTrue(kl.check_homomorphism(m))
        self.assertEqual(kl.kernel(m).format(), "0,3,6")
        self.assertEqual(kl.image(m), kl.SubsetMask.full(3))
        induced = kl.induced_isomorphism(m)
        self.assertEqual(induced.map, (0, 1, 2))

    def test_not_a_homomorphism(self):
        z5 = fixture("z5")
        m = kl.LoopMorphism(z5, z5, (1, 2, 3, 4, 0))
        self.assertFalse(kl.check_homomorphism(m))
        with self.assertRaises(kl.PreconditionError):
            kl.induced_isomorphism(m)

    def test_bad_map(self):
        with self.assertRaises(ValueError):
            kl.LoopMorphism(fixture("z3"), fixture("z3"), (0, 1))
        with self.assertRaises(ValueError):
            kl.LoopMorphism(fixture("z3"), fixture("z3"), (0, 1, 3))

    def test_find_isomorphism(self):
        z15 = fixture("z15")
        other = kl.direct_product(fixture("z3"), fixture("z5"))
        found = kl.find_isomorphism(z15, other)
        self.assertIsNotNone(found)
        self.assertTrue(kl.check_homomorphism(kl.LoopMorphism(z15, other, found)))
        self.assertEqual(sorted(found), list(range(15)))
        self.assertIsNone(kl.find_isomorphism(fixture("z9"), fixture("z3xz3")))
        self.assertIsNone(kl.find_isomorphism(fixture("z3"), fixture("z5")))


class TestCentralizers(unittest.TestCase):
    def test_abelian(self):
        z5 = fixture("z5")
        self.assertEqual(len(kl.centralizer(z5, 2)), 5)
        self.assertEqual(kl.center_of_centralizer(z5, 2), kl.SubsetMask.full(5))
        self.assertTrue(kl.check_centralizer_lemma(z5, 1))
        self.assertTrue(kl.check_commutation_criterion(fixture("z3xz3")))

    def test_frobenius(self):
        L = fixture("frobenius21")
        c = kl.centralizer(L, 1)
        self.assertTrue(mask(N7, 21).issubset(c))
        self.assertNotIn(7, c)
        self.assertTrue(kl.center_of_centralizer(L, 1).issubset(c))

    def test_lemmas_need_fixed_point_freeness(self):
        L = fixture("frobenius21")
        with self.assertRaises(kl.PreconditionError):
            kl.check_centralizer_lemma(L, 1)
        with self.assertRaises(kl.PreconditionError):
            kl.check_commutation_criterion(L)

    def test_requires_kloop(self):
        with self.assertRaises(kl.PreconditionError):
            kl.centralizer(kl.make_loop(kl.CayleyTable(NONBOL5)), 1)

    def test_automorphic(self):
        self.assertTrue(kl.is_automorphic(fixture("z7")))
        self.assertTrue(kl.is_automorphic(fixture("z3xz3")))


class TestJoins(unittest.TestCase):
    def test_join_and_sum(self):
        z15 = fixture("z15")
        c = mask("0,5,10", 15)
        d = mask("0,3,6,9,12", 15)
        self.assertEqual(kl.join_subloops(z15, [c, d]), kl.SubsetMask.full(15))
        self.assertEqual(kl.setwise_sum(z15, c, d), kl.SubsetMask.full(15))
        self.assertEqual(kl.setwise_sum(z15, c, c), c)

    def test_second_isomorphism(self):
        z15 = fixture("z15")
        self.assertTrue(kl.check_second_isomorphism(z15, mask("0,5,10", 15), mask("0,3,6,9,12", 15)))
        L = fixture("frobenius21")
        self.assertTrue(kl.check_second_isomorphism(L, mask("0,7,14", 21), mask(N7, 21)))

    def test_second_isomorphism_needs_normal_subloop(self):
        L = fixture("frobenius21")
        with self.assertRaises(kl.PreconditionError):
            kl.check_second_isomorphism(L, mask(N7, 21), mask("0,7,14", 21))

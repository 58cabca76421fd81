import unittest

import numpy as np

import kloops as kl

from .fixtures import NONBOL5, all_subsets, fixture, fixtures, symetron


def mask(text, order):
    return kl.SubsetMask.parse(text, order)


class TestKloopToSymetron(unittest.TestCase):
    def test_cyclic(self):
        S = kl.kloop_to_symetron(fixture("z5"))
        self.assertEqual(S.reflect_point(1, 3), 0)
        self.assertEqual(S.mid(1, 3), 2)
        np.testing.assert_array_equal(S.midpoint[0], fixture("z5").halving)

    def test_requires_u2d_kloop(self):
        with self.assertRaises(kl.PreconditionError):
            kl.kloop_to_symetron(kl.make_loop(kl.CayleyTable(NONBOL5)))
        z4 = kl.make_loop(kl.cyclic_group(4).table)
        self.assertTrue(z4.flags.is_kloop)
        with self.assertRaises(kl.PreconditionError):
            kl.kloop_to_symetron(z4)

    def test_loop_midpoint_matches_symetron(self):
        for name, L in fixtures().items():
            S = symetron(name)
            for a in range(L.order):
                for b in range(L.order):
                    self.assertEqual(kl.kloop_midpoint(L, a, b), S.mid(a, b), (name, a, b))
        self.assertEqual(kl.kloop_midpoint(fixture("z5"), 1, 3), 2)


class TestSymetronToKloop(unittest.TestCase):
    def test_basepoint_is_identity(self):
        S = symetron("z7")
        for a in range(7):
            self.assertEqual(kl.find_identity(kl.basepoint_table(S, a)), a)
            L = kl.symetron_to_kloop(S, a)
            self.assertEqual(L.relabeling[a], 0)
            self.assertTrue(L.flags.is_kloop)
            self.assertTrue(L.flags.is_u2d)

    def test_bad_basepoint(self):
        with self.assertRaises(kl.PreconditionError):
            kl.basepoint_table(symetron("z3"), 3)

    def test_from_group_symetron(self):
        S = kl.symetron_from_group(kl.cyclic_group(5))
        self.assertEqual(kl.symetron_to_kloop(S).table, fixture("z5").table)

    def test_isomorphisms(self):
        for name, L in fixtures().items():
            if L.order > 9:
                continue
            S = symetron(name)
            for a in range(S.order):
                self.assertTrue(kl.check_midpoint_isomorphism(S, a), (name, a))
                for u in range(S.order):
                    self.assertTrue(kl.check_su_isomorphism(S, a, u), (name, a, u))

    def test_sampled_isomorphisms_of_frobenius21(self):
        S = symetron("frobenius21")
        rng = np.random.default_rng(21)
        for a, u in rng.integers(0, 21, size=(200, 2)):
            self.assertTrue(kl.check_su_isomorphism(S, int(a), int(u)))
        for a in range(0, 21, 4):
            self.assertTrue(kl.check_midpoint_isomorphism(S, a))


class TestRoundtrip(unittest.TestCase):
    def test_abelian(self):
        for name in ("z1", "z5", "z9", "z3xz3", "heisenberg27"):
            self.assertEqual(kl.roundtrip_check(fixture(name)), (True, True), name)

    def test_nonassociative(self):
        # the tables differ, e.g. at (7, 1), but the loops are isomorphic
        self.assertEqual(kl.roundtrip_check(fixture("frobenius21")), (False, True))


class TestBridges(unittest.TestCase):
    def test_symmetric_quasigroup(self):
        S = symetron("z5")
        q = kl.symmetric_quasigroup(S)
        np.testing.assert_array_equal(q.entries, S.s.T)
        self.assertEqual(q[3, 1], S.reflect_point(1, 3))

    def test_subloop_from_convex(self):
        z9 = fixture("z9")
        self.assertEqual(kl.subloop_from_convex(z9, mask("1,4,7", 9), 1).format(), "0,3,6")
        self.assertEqual(kl.subloop_from_convex(z9, mask("4", 9), 4).format(), "0")
        with self.assertRaises(kl.PreconditionError):
            kl.subloop_from_convex(z9, mask("1,4,7", 9), 2)
        with self.assertRaises(kl.PreconditionError):
            kl.subloop_from_convex(z9, mask("1,4", 9), 1)

    def test_convex_subloop_bridge(self):
        L = fixture("z3xz3")
        for X in all_subsets(9):
            self.assertTrue(kl.check_convex_subloop_bridge(L, X), X)

    def test_convex_subloop_bridge_nonassociative(self):
        L = fixture("frobenius21")
        for X in kl.enumerate_subloops(L):
            self.assertTrue(kl.check_convex_subloop_bridge(L, X), X)
        self.assertTrue(kl.check_convex_subloop_bridge(L, mask("1,2", 21)))

    def test_subloops_are_the_convex_sets_through_zero(self):
        for name in ("z9", "z3xz3", "frobenius21"):
            L = fixture(name)
            convex = {X for X in kl.enumerate_convex(symetron(name)) if 0 in X}
            self.assertEqual(set(kl.enumerate_subloops(L)), convex, name)

    def test_subloop_from_every_convex_set(self):
        L = fixture("z3xz3")
        for X in kl.enumerate_convex(symetron("z3xz3")):
            for x in X:
                self.assertEqual(len(kl.subloop_from_convex(L, X, x)), len(X))


class TestOrder27(unittest.TestCase):
    def test_sampled_isomorphisms(self):
        S = symetron("heisenberg27")
        rng = np.random.default_rng(7)
        for a, u in rng.integers(0, 27, size=(200, 2)):
            self.assertTrue(kl.check_su_isomorphism(S, int(a), int(u)))
        self.assertTrue(kl.check_midpoint_isomorphism(S, 13))

import unittest

import numpy as np

import kloops as kl

from .fixtures import NONBOL5, fixture


def swap(g):
    return 3 * (g % 3) + g // 3


class TestGroups(unittest.TestCase):
    def test_make_group(self):
        G = kl.make_group(kl.parse_table("3\n1 2 0\n2 0 1\n0 1 2"))
        self.assertEqual(G.identity, 2)
        self.assertEqual(G.inverse.tolist(), [1, 0, 2])
        self.assertTrue(G.is_abelian())

    def test_not_a_group(self):
        with self.assertRaises(kl.NotAGroup):
            kl.make_group(kl.CayleyTable(NONBOL5))
        with self.assertRaises(kl.NotAGroup):
            kl.make_group(kl.CayleyTable([[1, 0], [0, 0]]))
        with self.assertRaises(kl.NotAGroup):
            kl.metacyclic_group(7, 3, 3)

    def test_cyclic(self):
        G = kl.cyclic_group(6)
        self.assertEqual(G.order, 6)
        self.assertEqual(G.mul(4, 5), 3)
        self.assertEqual(G.squaring.tolist(), [0, 2, 4, 0, 2, 4])
        with self.assertRaises(ValueError):
            kl.cyclic_group(0)

    def test_metacyclic(self):
        s3 = kl.metacyclic_group(3, 2, 2)
        self.assertEqual(s3.order, 6)
        self.assertFalse(s3.is_abelian())
        F = kl.metacyclic_group(7, 3, 2)
        self.assertEqual(F.order, 21)
        # (1, 1)·(1, 0) = (1 + 2, 1)
        self.assertEqual(F.mul(8, 1), 10)
        self.assertEqual(F.mul(1, 8), 9)

    def test_heisenberg(self):
        H = kl.heisenberg27()
        self.assertEqual(H.mul(9, 3), 13)
        self.assertEqual(H.mul(3, 9), 12)
        self.assertFalse(H.is_abelian())
        self.assertEqual(H.identity, 0)

    def test_product(self):
        G = kl.group_product(kl.cyclic_group(3), kl.cyclic_group(3))
        self.assertEqual(G.order, 9)
        self.assertEqual(G.mul(4, 5), 3 * 2 + 0)
        self.assertEqual(G.table, fixture("z3xz3").table)


class TestKloopConstructions(unittest.TestCase):
    def test_cyclic_kloop(self):
        self.assertEqual(kl.cyclic_kloop(5).table, kl.cyclic_group(5).table)
        for n in (0, 4):
            with self.assertRaises(kl.EvenOrder):
                kl.cyclic_kloop(n)

    def test_half_sandwich(self):
        self.assertEqual(kl.kloop_from_group(kl.cyclic_group(5)).table, fixture("z5").table)
        with self.assertRaises(kl.NotTwoDivisibleGroup):
            kl.kloop_from_group(kl.cyclic_group(4))

    def test_half_sandwich_of_frobenius(self):
        L = fixture("frobenius21")
        G = kl.metacyclic_group(7, 3, 2)
        root = np.argsort(G.squaring)
        for x in (1, 7, 8, 15):
            for y in (2, 9, 20):
                expected = G.mul(G.mul(root[x], y), root[x])
                self.assertEqual(L.add(x, y), expected)
        # σ(7) = (0, 2) and (0, 2)·(1, 0)·(0, 2) = (4, 1)
        self.assertEqual(L.add(7, 1), 11)

    def test_half_sandwich_of_heisenberg(self):
        L = kl.kloop_from_group(kl.heisenberg27())
        self.assertTrue(L.flags.is_associative)
        self.assertTrue(L.flags.is_commutative)
        z3 = fixture("z3")
        cube = kl.direct_product(z3, fixture("z3xz3"))
        self.assertIsNotNone(kl.find_isomorphism(L, cube))
        self.assertEqual(len(kl.automorphisms(L)), 11232)

    def test_involution(self):
        G = kl.group_product(kl.cyclic_group(3), kl.cyclic_group(3))
        L, members = kl.kloop_from_involution(G, swap, return_index_map=True)
        self.assertEqual(members, (0, 5, 7))
        self.assertEqual(L.table, fixture("z3").table)
        self.assertEqual(kl.kloop_from_involution(G, [swap(g) for g in range(9)]).order, 3)

    def test_involution_of_identity_gives_trivial_loop(self):
        L = kl.kloop_from_involution(kl.cyclic_group(5), list(range(5)))
        self.assertEqual(L.order, 1)

    def test_inversion_gives_squares(self):
        L, members = kl.kloop_from_involution(
            kl.cyclic_group(5), lambda g: -g % 5, return_index_map=True
        )
        self.assertEqual(L.order, 5)
        self.assertEqual(sorted(members), list(range(5)))

    def test_involution_errors(self):
        with self.assertRaises(kl.NotAutomorphism):
            kl.kloop_from_involution(kl.cyclic_group(5), [0, 2, 1, 3, 4])
        with self.assertRaises(kl.NotAutomorphism):
            kl.kloop_from_involution(kl.cyclic_group(5), [0, 0, 1, 2, 3])
        with self.assertRaises(kl.NotInvolutive):
            kl.kloop_from_involution(kl.cyclic_group(5), lambda g: 2 * g % 5)
        with self.assertRaises(kl.NotTwoDivisibleSet):
            kl.kloop_from_involution(kl.cyclic_group(4), lambda g: -g % 4)

    def test_direct_product(self):
        L = kl.direct_product(fixture("z3"), fixture("z5"))
        self.assertEqual(L.order, 15)
        self.assertEqual(L.add(4, 7), 1 * 5 + 1)
        self.assertTrue(L.flags.is_kloop)
        nonbol = kl.direct_product(fixture("z3"), kl.make_loop(kl.CayleyTable(NONBOL5)))
        self.assertFalse(nonbol.flags.is_kloop)
        self.assertFalse(nonbol.flags.is_u2d)

    def test_symetron_from_group(self):
        S = kl.symetron_from_group(kl.cyclic_group(5))
        self.assertEqual(S.mid(1, 3), 2)
        self.assertEqual(S.table, kl.kloop_to_symetron(fixture("z5")).table)
        with self.assertRaises(kl.NotTwoDivisibleGroup):
            kl.symetron_from_group(kl.cyclic_group(4))


class TestCanonicalForm(unittest.TestCase):
    def test_relabelings_agree(self):
        t = fixture("z5").table
        c = kl.canonical_form(t)
        self.assertEqual(kl.canonical_form(kl.relabel(t, [0, 3, 1, 4, 2])), c)
        self.assertEqual(kl.canonical_form(kl.relabel(t, [4, 1, 2, 3, 0])), c)

    def test_relabeling(self):
        t = kl.relabel(fixture("z7").table, [3, 1, 2, 0, 4, 6, 5])
        c, perm = kl.canonical_form(t, return_relabeling=True)
        self.assertEqual(kl.relabel(t, perm), c)
        self.assertEqual(kl.find_identity(c), 0)

    def test_separates_classes(self):
        self.assertNotEqual(
            kl.canonical_form(fixture("z9").table), kl.canonical_form(fixture("z3xz3").table)
        )
        z4 = kl.cyclic_group(4).table
        v4 = kl.group_product(kl.cyclic_group(2), kl.cyclic_group(2)).table
        self.assertNotEqual(kl.canonical_form(z4), kl.canonical_form(v4))

    def test_bounds(self):
        with self.assertRaises(kl.OrderTooLarge):
            kl.canonical_form(fixture("z15").table)
        with self.assertRaises(kl.NoIdentity):
            kl.canonical_form(kl.CayleyTable([[1, 0], [0, 0]]))


class TestEnumeration(unittest.TestCase):
    def test_counts(self):
        self.assertEqual([len(kl.enumerate_kloops(n)) for n in range(1, 8)], [1, 1, 1, 2, 1, 1, 1])

    def test_forms(self):
        found = kl.enumerate_kloops(4)
        self.assertEqual(found, sorted(found, key=lambda t: t.entries.ravel().tolist()))
        for t in found:
            self.assertEqual(kl.canonical_form(t), t)
            L = kl.make_loop(t)
            self.assertTrue(L.flags.is_kloop)
        self.assertEqual(kl.enumerate_kloops(5), [kl.canonical_form(fixture("z5").table)])

    def test_bounds(self):
        with self.assertRaises(kl.OrderTooLarge):
            kl.enumerate_kloops(9)
        with self.assertRaises(ValueError):
            kl.enumerate_kloops(0)

    def test_cap(self):
        with self.assertRaises(kl.CapExceeded):
            kl.enumerate_kloops(4, cap=1)


class TestFixtures(unittest.TestCase):
    def test_names(self):
        found = kl.standard_fixtures()
        self.assertEqual(
            sorted(found),
            sorted(["z1", "z3", "z5", "z7", "z9", "z15", "z3xz3", "frobenius21", "heisenberg27"]),
        )
        for name, L in found.items():
            self.assertTrue(L.flags.is_kloop, name)
            self.assertTrue(L.flags.is_u2d, name)

from functools import lru_cache

import kloops as kl

# Latin, identity 0, nonassociative; Bol loops of order below 8 are groups, so it is not Bol
NONBOL5 = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]

NOT_LATIN = [
    [0, 1, 2],
    [1, 1, 0],
    [2, 0, 1],
]

SMALL = ("z3", "z5", "z7", "z9", "z3xz3")


@lru_cache(maxsize=None)
def fixtures():
    return kl.standard_fixtures()


def fixture(name):
    return fixtures()[name]


@lru_cache(maxsize=None)
def symetron(name):
    return kl.kloop_to_symetron(fixture(name))


def all_subsets(order):
    for bits in range(1 << order):
        yield kl.SubsetMask(order, bits)


def random_subsets(order, count, seed=0):
    import numpy as np

    rng = np.random.default_rng(seed)
    for _ in range(count):
        yield kl.SubsetMask.from_bool(rng.random(order) < 0.5)

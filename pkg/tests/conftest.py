import random

import pytest

from scsgap import hybrid_model
from scsgap.gadgets import GadgetVariant, reduce
from scsgap.superstring_core import StringSet, Symbol


@pytest.fixture(scope='session')
def triple_e3():
    return hybrid_model.generate_e3('triple')


@pytest.fixture(scope='session')
def triple_instance(triple_e3):
    return hybrid_model.build_hybrid(triple_e3)


@pytest.fixture(scope='session')
def disjoint_instance():
    e3 = hybrid_model.generate_e3('disjoint')
    return hybrid_model.build_hybrid(e3, allow_any_occurrence=True)


@pytest.fixture(scope='session')
def b4_reduction(triple_instance):
    return reduce(triple_instance, GadgetVariant.B4)


@pytest.fixture(scope='session')
def a6_reduction(triple_instance):
    return reduce(triple_instance, GadgetVariant.A6)


@pytest.fixture
def rng():
    return random.Random(20240601)


def _contains(longer, shorter):
    return any(longer[start:start + len(shorter)] == shorter for start in range(len(longer) - len(shorter) + 1))


@pytest.fixture
def make_string_set(rng):
    """
    Factory for substring-free sets of random strings over a small alphabet.
    """

    def make(count, alphabet='abc', min_length=2, max_length=5):
        symbols = [Symbol('e', 'test', letter) for letter in alphabet]
        while True:
            candidates = {tuple(rng.choice(symbols) for _ in range(rng.randint(min_length, max_length)))
                          for _ in range(count * 4)}
            chosen = []
            for candidate in sorted(candidates, key=lambda string: (-len(string), string)):
                if any(_contains(other, candidate) for other in chosen):
                    continue
                chosen.append(candidate)
                if len(chosen) == count:
                    return StringSet(chosen)

    return make

import json
import os
import random

import pytest

import shiftforge
from shiftforge.shifts import shift_from_descriptor

FIXTURE_DIR = os.path.join(os.path.dirname(shiftforge.__file__), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURE_DIR, name + ".json")


def load_shift(name: str):
    with open(fixture_path(name)) as fh:
        return shift_from_descriptor(json.load(fh)["shift"])


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def z4():
    return load_shift("z4_coset")


@pytest.fixture
def prufer():
    return load_shift("prufer_fractal")


@pytest.fixture
def parity():
    return load_shift("parity")


@pytest.fixture
def full_z_one_sided():
    return load_shift("full_z_one_sided")


@pytest.fixture
def full_z2():
    return load_shift("full_z2_two_sided")


@pytest.fixture
def union_groups():
    return load_shift("union_groups")


@pytest.fixture
def broken():
    return load_shift("broken_closure")


@pytest.fixture
def z2_pairs():
    return load_shift("z2_second_coord")

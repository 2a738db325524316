"""
Shared fixtures: standard fans, a few embedded 1-complexes and JSON helpers.
"""

import json
from fractions import Fraction

import pytest

from tropex.core.config import Config, set_config
from tropex.tropical.cones import make_complex
from tropex.tropical.graphs import embedded_complex
from tropex.tropical.troplim import projective_plane_fan

# Cone indices of projective_plane_fan(), sorted by (dim, rays):
# 0 origin, 1 ray (-1,-1), 2 ray (0,1), 3 ray (1,0),
# 4 cone((-1,-1),(0,1)), 5 cone((-1,-1),(1,0)), 6 cone((0,1),(1,0))
P2_ORIGIN, P2_D0, P2_D2, P2_D1 = 0, 1, 2, 3
P2_C4, P2_C5, P2_C6 = 4, 5, 6


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: randomized sweeps over many instances")


@pytest.fixture(autouse=True)
def default_config():
    """Every test starts from the built-in configuration."""
    config = Config()
    set_config(config)
    yield config
    set_config(Config())


@pytest.fixture
def p2():
    return projective_plane_fan()


@pytest.fixture
def quadrant():
    return make_complex(2, [[(1, 0), (0, 1)]])


@pytest.fixture
def axes_fan():
    """Complete fan of the four coordinate quadrants."""
    return make_complex(2, [
        [(1, 0), (0, 1)], [(0, 1), (-1, 0)], [(-1, 0), (0, -1)], [(0, -1), (1, 0)],
    ])


@pytest.fixture
def line_at_origin():
    """Tropical line with its vertex at the cone point of the fan."""
    return embedded_complex(
        [(P2_ORIGIN, (0, 0))],
        rays=[(0, P2_D1, (1, 0)), (0, P2_D2, (0, 1)), (0, P2_D0, (-1, -1))],
    )


@pytest.fixture
def line_half():
    """Tropical line with vertex (1/2, 1/2); its diagonal ray passes the origin."""
    return embedded_complex(
        [(P2_C6, (Fraction(1, 2), Fraction(1, 2))), (P2_ORIGIN, (0, 0))],
        edges=[((0, 1), P2_C6, (-1, -1))],
        rays=[(0, P2_C6, (1, 0)), (0, P2_C6, (0, 1)), (1, P2_D0, (-1, -1))],
    )


@pytest.fixture
def write_json(tmp_path):
    """Write a JSON document under tmp_path and return its path."""
    def _write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path
    return _write

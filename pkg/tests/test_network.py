"""网络模型测试"""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from src.exceptions import NetworkSpecError
from src.models import FrequencyGrid
from src.network import (
    NetworkSpec, build_fp_laplacian, build_vq_matrix, compute_gamma, shifted_network,
    verify_shifted_passivity,
)


def test_laplacian_two_node(two_node):
    L = build_fp_laplacian(two_node)
    w = 2 * math.pi * 5.0 / (1 + 0.1 ** 2)
    assert_allclose(L, [[w, -w], [-w, w]])
    assert_allclose(L.sum(axis=1), 0.0, atol=1e-12)
    assert np.array_equal(L, L.T)


def test_vq_matrix_uses_operating_voltages():
    spec = NetworkSpec(n=2, lines=[{'i': 1, 'j': 2, 'b': 5.0}], rho=0.1, v0=[1.0, 1.05])
    M = build_vq_matrix(spec)
    scale = 1 / 1.01
    assert M[0, 1] == pytest.approx(-5.0 * 1.0 * scale)
    assert M[1, 0] == pytest.approx(-5.0 * 1.05 * scale)
    assert M[0, 0] == pytest.approx(5.0 * (2 * 1.0 - 1.05) * scale)
    assert M[1, 1] == pytest.approx(5.0 * (2 * 1.05 - 1.0) * scale)


def test_gamma(two_node):
    assert_allclose(compute_gamma(two_node), [0.8 * 5.0 / 1.01] * 2)


def test_shifted_network_requires_positive_frequency(two_node):
    with pytest.raises(ValueError):
        shifted_network(two_node, 0.0)


def test_passivity_two_node(two_node):
    report = verify_shifted_passivity(two_node, FrequencyGrid(points_per_decade=10))
    assert report.passive
    assert report.min_eigenvalue == pytest.approx(0.0, abs=1e-12)
    assert report.qv_min_eigenvalue > 0
    lam, omega = report
    assert lam == report.min_eigenvalue
    assert omega > 0


def random_connected_network(rng, n):
    """随机生成树再补几条边"""
    pairs = {(int(rng.integers(1, k)), k) for k in range(2, n + 1)}
    for _ in range(int(rng.integers(0, n))):
        i, j = sorted(int(x) for x in rng.choice(np.arange(1, n + 1), 2, replace=False))
        pairs.add((i, j))
    lines = [{'i': i, 'j': j, 'b': float(rng.uniform(1, 20))} for i, j in sorted(pairs)]
    return NetworkSpec(n=n, lines=lines, rho=float(rng.uniform(0, 0.1)),
                       v0=list(rng.uniform(0.95, 1.05, n)))


def test_passivity_random_networks():
    rng = np.random.default_rng(7)
    grid = FrequencyGrid(points_per_decade=5)
    for _ in range(50):
        spec = random_connected_network(rng, int(rng.integers(2, 7)))
        assert spec.components()[0] == 1
        report = verify_shifted_passivity(spec, grid)
        assert report.passive
        assert report.qv_min_eigenvalue > 0


@pytest.mark.parametrize("alpha", [0.5, 3.0])
def test_matrices_scale_with_susceptance(alpha):
    rng = np.random.default_rng(13)
    spec = random_connected_network(rng, 5)
    lines = [{'i': line.i, 'j': line.j, 'b': alpha * line.b} for line in spec.lines]
    scaled = NetworkSpec(n=spec.n, lines=lines, rho=spec.rho, v0=spec.v0)
    assert_allclose(build_fp_laplacian(scaled), alpha * build_fp_laplacian(spec), rtol=1e-12)
    assert_allclose(build_vq_matrix(scaled), alpha * build_vq_matrix(spec), rtol=1e-12)
    assert_allclose(compute_gamma(scaled), alpha * compute_gamma(spec), rtol=1e-12)


def test_components():
    spec = NetworkSpec(n=3, lines=[{'i': 1, 'j': 2, 'b': 1.0}])
    count, labels = spec.components()
    assert count == 2
    assert labels[0] == labels[1] != labels[2]


def test_defaults_and_round_trip():
    spec = NetworkSpec.from_dict({'n': 2, 'lines': [{'i': 2, 'j': 1, 'b': 3.0}]})
    assert spec.rho == 0.0
    assert spec.v0 == [1.0, 1.0]
    assert spec.lines[0].i == 1 and spec.lines[0].j == 2
    assert NetworkSpec.from_dict(spec.to_dict()).to_dict() == spec.to_dict()


def test_high_rho_warns(caplog):
    NetworkSpec(n=2, lines=[{'i': 1, 'j': 2, 'b': 1.0}], rho=0.3)
    assert "感性网络假设" in caplog.text


@pytest.mark.parametrize("data", [
    {'n': 0},
    {'n': 2, 'rho': 0.6},
    {'n': 2, 'v0': [1.0]},
    {'n': 2, 'lines': [{'i': 1, 'j': 1, 'b': 1.0}]},
    {'n': 2, 'lines': [{'i': 1, 'j': 3, 'b': 1.0}]},
    {'n': 2, 'lines': [{'i': 1, 'j': 2, 'b': -1.0}]},
    {'n': 2, 'lines': [{'i': 1, 'j': 2, 'b': 1.0}, {'i': 2, 'j': 1, 'b': 2.0}]},
    {'n': 2, 'lines': [{'i': 1, 'j': 2, 'b': 1.0, 'rho': 0.1}]},
    {'n': 2, 'x': 1},
])
def test_invalid_networks(data):
    with pytest.raises(NetworkSpecError):
        NetworkSpec.from_dict(data)

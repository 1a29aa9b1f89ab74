import os

import numpy as np
import pytest

from greenkit._parallel import ordered_map, thread_count
from greenkit.kernel import build_kernel
from greenkit.response import Sampled, convolve_quadrature


@pytest.mark.parametrize("raw, expected", [("1", 1), ("4", 4), ("", os.cpu_count() or 1), ("0", os.cpu_count() or 1)])
def test_thread_count(monkeypatch, raw, expected):
    monkeypatch.setenv("GREENKIT_THREADS", raw)
    assert thread_count() == expected


def test_thread_count_rejects_negative(monkeypatch):
    monkeypatch.setenv("GREENKIT_THREADS", "-2")
    with pytest.raises(ValueError):
        thread_count()


def test_ordered_map_keeps_order(monkeypatch):
    monkeypatch.setenv("GREENKIT_THREADS", "4")
    assert ordered_map(lambda v: v * v, range(50)) == [v * v for v in range(50)]


def test_results_independent_of_threads(monkeypatch):
    k = build_kernel(4)
    src = Sampled((-1.0, 0.0, 2.0), (0.5, 1.0, 0.2))
    grid = np.linspace(-3, 3, 25)
    monkeypatch.setenv("GREENKIT_THREADS", "1")
    serial = convolve_quadrature(k, src, grid).values
    monkeypatch.setenv("GREENKIT_THREADS", "4")
    threaded = convolve_quadrature(k, src, grid).values
    assert np.array_equal(serial, threaded)

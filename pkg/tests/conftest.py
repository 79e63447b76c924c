# !/usr/bin/env python
"""
==============================================================
Description  : 测试共享夹具
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls
==============================================================
"""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np
import pytest

from xtrnls import ComplexField, Grid, ModelConfig, NonlinearityConfig, RotationConfig, SolverDefaults, TrapConfig, make_grid

# 二维高斯 A (pi w^2)^(-1/2) e^(-r^2/2w^2) 在 gamma=1, lambda=-1, sigma=1 下 E0 = A^2 - A^4/(4 pi) = -1
CASE_I_AMPLITUDE = math.sqrt(2.0 * math.pi * (1.0 + math.sqrt(1.0 + 1.0 / math.pi)))


@pytest.fixture(autouse=True)
def _reset_defaults():
    yield
    SolverDefaults.reset()


@pytest.fixture
def grid64() -> Grid:
    return make_grid(2, 64, 8.0)


def gaussian_values(grid: Grid, center: Sequence[float] | None = None, width: float = 1.0, amplitude: float = 1.0) -> np.ndarray:
    center = center or (0.0,) * grid.d
    values = np.ones(grid.shape, dtype=np.complex128)
    for xj, cj in zip(grid.mesh, center, strict=True):
        values = values * (math.pi * width * width) ** -0.25 * np.exp(-((xj - cj) ** 2) / (2.0 * width * width))
    return amplitude * values


def vortex_values(grid: Grid) -> np.ndarray:
    x1, x2 = grid.mesh[0], grid.mesh[1]
    return (x1 + 1j * x2) / math.sqrt(math.pi) * np.exp(-0.5 * (x1 * x1 + x2 * x2))


@pytest.fixture
def make_gaussian():
    def factory(grid: Grid, center: Sequence[float] | None = None, width: float = 1.0, amplitude: float = 1.0) -> ComplexField:
        return ComplexField(grid, gaussian_values(grid, center, width, amplitude))

    return factory


@pytest.fixture
def make_model():
    def factory(gamma=(1.0, 1.0), omega: float = 0.0, lam: float = 0.0, sigma: float = 1.0, repulsive=()) -> ModelConfig:
        return ModelConfig(
            d=len(gamma),
            trap=TrapConfig(tuple(gamma), tuple(repulsive)),
            rotation=RotationConfig.planar(omega),
            nonlinearity=NonlinearityConfig(lam, sigma),
        )

    return factory


@pytest.fixture
def vortex(grid64) -> ComplexField:
    """gamma=1 谐振子的 m=1 本征态, E0 = 2, 角动量 1"""
    return ComplexField(grid64, vortex_values(grid64))

# !/usr/bin/env python
"""
==============================================================
Description  : 实验室坐标系交替方向谱推进模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

旋转轴沿第三轴(角频率 w)时, 实验室方程的旋转项为 i w (x1 d2 - x2 d1) psi。
把线性部分拆成两个沿单轴精确可解的子流:
    A1: i dt psi = -1/2 d1^2 psi - i w x2 d1 psi  (三维时并入 -1/2 d3^2)
    A2: i dt psi = -1/2 d2^2 psi + i w x1 d2 psi
每个子流在固定横向坐标下是沿一条线的常系数问题, 用一维FFT精确求解。
单步采用对称组合 P(dt/2) A1(dt/2) A2(dt) A1(dt/2) P(dt/2), 保持二阶精度。
==============================================================
"""

from __future__ import annotations

import numpy as np

from ..errors import UnsupportedRotationAxisError
from ..model import ModelConfig, potential_value
from ..spectral import ComplexField, Grid, fftn, ifftn


class LabFrameStepper:
    """实验室系交替方向推进器

    Raises:
        UnsupportedRotationAxisError: 旋转轴不是第三轴
    """

    def __init__(self, model: ModelConfig, grid: Grid, dt: float):
        if not model.rotation.is_axis_aligned:
            raise UnsupportedRotationAxisError(f'实验室系后端要求旋转轴为第三轴, 得到 {model.rotation.omega}')
        self.model = model
        self.grid = grid
        self.dt = dt

        w = model.rotation.omega[2]
        k, kd, x = grid.kmesh, grid.deriv_kmesh, grid.mesh
        half = 0.5 * dt
        exponent_1 = 0.5 * k[0] ** 2 + w * x[1] * kd[0]
        self._axes_1: tuple[int, ...] = (0,)
        if grid.d == 3:
            exponent_1 = exponent_1 + 0.5 * k[2] ** 2
            self._axes_1 = (0, 2)
        self._sweep_1 = np.exp(-1j * half * exponent_1)
        self._sweep_2 = np.exp(-1j * dt * (0.5 * k[1] ** 2 - w * x[0] * kd[1]))
        self._potential = potential_value(model.trap, x)

    def phase(self, values: np.ndarray, h: float) -> np.ndarray:
        total = self._potential
        lam = self.model.nonlinearity.lam
        if lam != 0.0:
            rho = (values * values.conj()).real
            total = total + lam * rho**self.model.nonlinearity.sigma
        return values * np.exp(-1j * h * total)

    def sweep_1(self, values: np.ndarray) -> np.ndarray:
        """A1 子流, 步长 dt/2"""
        return ifftn(self._sweep_1 * fftn(values, axes=self._axes_1), axes=self._axes_1)

    def sweep_2(self, values: np.ndarray) -> np.ndarray:
        """A2 子流, 步长 dt"""
        return ifftn(self._sweep_2 * fftn(values, axes=(1,)), axes=(1,))

    def step(self, values: np.ndarray, t: float = 0.0) -> np.ndarray:
        half = 0.5 * self.dt
        values = self.phase(values, half)
        values = self.sweep_1(values)
        values = self.sweep_2(values)
        values = self.sweep_1(values)
        return self.phase(values, half)


def adi_step_lab(psi: ComplexField, dt: float, model: ModelConfig) -> ComplexField:
    """实验室系单步推进"""
    return ComplexField(psi.grid, LabFrameStepper(model, psi.grid, dt).step(psi.values))


__all__ = ['LabFrameStepper', 'adi_step_lab']

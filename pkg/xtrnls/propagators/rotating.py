# !/usr/bin/env python
"""
==============================================================
Description  : 旋转坐标系分裂步推进模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

旋转系中 psi~(t,x) = psi(t, X(t,x)) 满足不含旋转项的方程
    i dt psi~ = -1/2 Lap psi~ + W(t,x) psi~ + lam |psi~|^(2 sigma) psi~
本模块以Strang分裂推进:
    相位(dt/2, 中点 t+dt/4) -> 动能(dt) -> 相位(dt/2, 中点 t+3dt/4)
动能子步在谱空间精确求解, 相位子步逐点精确求解(子步内 |psi| 不变)。
==============================================================
"""

from __future__ import annotations

import numpy as np

from ..model import ModelConfig, potential_value, rotated_potential
from ..spectral import ComplexField, Grid, fftn, ifftn


class RotatingFrameStepper:
    """旋转系Strang分裂推进器, 缓存给定 dt 的谱乘子

    Args:
        model: 模型配置
        grid: 网格
        dt: 时间步长
    """

    def __init__(self, model: ModelConfig, grid: Grid, dt: float):
        self.model = model
        self.grid = grid
        self.dt = dt
        self._kinetic = np.exp(-0.5j * dt * grid.k_squared)
        self._static = potential_value(model.trap, grid.mesh) if model.is_axisymmetric() else None

    def potential(self, t: float) -> np.ndarray:
        """W(t,x), 轴对称陷阱时为缓存的 V(x)"""
        if self._static is not None:
            return self._static
        return rotated_potential(self.model.trap, self.model.rotation, t, self.grid.mesh)

    def phase(self, values: np.ndarray, t: float, h: float) -> np.ndarray:
        """相位子步: psi * exp(-i h [W(t+h/2) + lam |psi|^(2 sigma)])"""
        total = self.potential(t + 0.5 * h)
        lam = self.model.nonlinearity.lam
        if lam != 0.0:
            rho = (values * values.conj()).real
            total = total + lam * rho**self.model.nonlinearity.sigma
        return values * np.exp(-1j * h * total)

    def kinetic(self, values: np.ndarray) -> np.ndarray:
        return ifftn(self._kinetic * fftn(values))

    def step(self, values: np.ndarray, t: float) -> np.ndarray:
        half = 0.5 * self.dt
        values = self.phase(values, t, half)
        values = self.kinetic(values)
        return self.phase(values, t + half, half)


def kinetic_half_step(psi: ComplexField, dt: float) -> ComplexField:
    """精确求解 i dt psi = -1/2 Lap psi 一个步长, 谱乘子 exp(-i |k|^2 dt / 2)"""
    multiplier = np.exp(-0.5j * dt * psi.grid.k_squared)
    return ComplexField(psi.grid, ifftn(multiplier * fftn(psi.values)))


def phase_step_rotating(psi: ComplexField, t: float, dt: float, model: ModelConfig) -> ComplexField:
    """逐点相位子步, W 取 t+dt/2 处的值"""
    return ComplexField(psi.grid, RotatingFrameStepper(model, psi.grid, dt).phase(psi.values, t, dt))


def strang_step_rotating(psi: ComplexField, t: float, dt: float, model: ModelConfig) -> ComplexField:
    """旋转系单步Strang推进"""
    return ComplexField(psi.grid, RotatingFrameStepper(model, psi.grid, dt).step(psi.values, t))


__all__ = ['RotatingFrameStepper', 'kinetic_half_step', 'phase_step_rotating', 'strang_step_rotating']

# !/usr/bin/env python
"""
==============================================================
Description  : 坐标系映射模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

在实验室系与旋转系之间映射场: psi~(x) = psi(X(t,x))。
平面旋转 g(x) = f(R(phi) x) 的实现:
1. 角度模 2pi 后折叠为 q*pi/2 + r, |r| <= pi/4, 四分之一圈由精确的下标置换完成
2. 剩余角 r 分解为三次剪切 Sx(a) Sy(b) Sx(a), a = -tan(r/2), b = sin(r)
3. 每次剪切是沿一条线的平移, 以逐线谱相位斜坡 exp(i k s) 实现
==============================================================
"""

from __future__ import annotations

import math
from enum import StrEnum

import numpy as np

from ..defaults import SolverDefaults
from ..errors import UnresolvedFieldError, UnsupportedGridError, UnsupportedRotationAxisError
from ..model import RotationConfig
from ..spectral import ComplexField, Grid, fftn, ifftn, tail_fraction


class FrameDirection(StrEnum):
    LAB_TO_ROTATING = 'lab_to_rotating'
    ROTATING_TO_LAB = 'rotating_to_lab'


def _quarter_turns(values: np.ndarray, q: int) -> np.ndarray:
    """g(x) = f(R(q pi/2) x), 周期网格上 -x_m 对应下标 (n-m) mod n"""
    q %= 4
    if q == 0:
        return values
    idx = (-np.arange(values.shape[0])) % values.shape[0]
    if q == 1:
        return values[idx].swapaxes(0, 1)
    if q == 2:
        return values[idx][:, idx]
    return values[:, idx].swapaxes(0, 1)


def _shear(values: np.ndarray, grid: Grid, axis: int, along: int, amount: float) -> np.ndarray:
    """g = f(x + amount * x_along * e_axis), 沿 axis 的逐线平移"""
    ramp = np.exp(1j * amount * grid.deriv_kmesh[axis] * grid.mesh[along])
    return ifftn(ramp * fftn(values, axes=(axis,)), axes=(axis,))


def rotate_samples(values: np.ndarray, grid: Grid, phi: float) -> np.ndarray:
    """在前两轴平面内求 g(x) = f(R(phi) x), R 为逆时针旋转"""
    phi = math.remainder(phi, 2.0 * math.pi)
    q = round(phi / (0.5 * math.pi))
    rest = phi - q * 0.5 * math.pi

    values = _quarter_turns(values, q)
    if rest == 0.0:
        return values
    a = -math.tan(0.5 * rest)
    b = math.sin(rest)
    values = _shear(values, grid, 0, 1, a)
    values = _shear(values, grid, 1, 0, b)
    return _shear(values, grid, 0, 1, a)


def map_frame(psi: ComplexField, t: float, rot: RotationConfig, direction: FrameDirection | str) -> ComplexField:
    """实验室系与旋转系之间的场映射

    Args:
        psi: 待映射的场
        t: 时间
        rot: 旋转配置, 旋转轴须为第三轴
        direction: lab_to_rotating 或 rotating_to_lab

    Returns:
        ComplexField: 映射后的场

    Raises:
        UnsupportedRotationAxisError: 旋转轴不是第三轴
        UnsupportedGridError: 旋转平面内网格不是正方形
        UnresolvedFieldError: 场尾部比例过大, 剪切会混叠
    """
    direction = FrameDirection(direction)
    if not rot.is_axis_aligned:
        raise UnsupportedRotationAxisError(f'帧映射要求旋转轴为第三轴, 得到 {rot.omega}')
    grid = psi.grid
    if not grid.is_square_in_plane():
        raise UnsupportedGridError(f'旋转平面内网格须为正方形: n={grid.n[:2]}, L={grid.halfwidth[:2]}')

    angle = rot.omega[2] * t
    if angle == 0.0:
        return psi

    tail = tail_fraction(psi)
    if tail >= SolverDefaults.UNRESOLVED_TAIL:
        raise UnresolvedFieldError(tail, SolverDefaults.UNRESOLVED_TAIL)

    phi = -angle if direction is FrameDirection.LAB_TO_ROTATING else angle
    return ComplexField(grid, rotate_samples(psi.values, grid, phi))


__all__ = ['FrameDirection', 'map_frame', 'rotate_samples']

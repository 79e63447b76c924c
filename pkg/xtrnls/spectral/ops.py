# !/usr/bin/env python
"""
==============================================================
Description  : 谱运算模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

本模块提供:
- transform_forward / transform_backward: n维FFT, 正变换不归一, 逆变换除以总点数
- gradient / divergence: 谱求导, 奈奎斯特模导数系数置零
- tail_fraction / spectral_monitor: 分辨率监控
- integrate / l2_norm: 周期梯形积分(求和乘单元体积)

归一化约定下离散Parseval关系为 sum|f|^2 = sum|F|^2 / N
==============================================================
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np
from scipy import fft as sfft

from ..defaults import SolverDefaults
from ..errors import ZeroFieldError
from .fields import ComplexField, VectorField
from .grid import Grid


def fftn(values: np.ndarray, axes: Sequence[int] | None = None) -> np.ndarray:
    return sfft.fftn(values, axes=axes, workers=SolverDefaults.FFT_WORKERS)


def ifftn(values: np.ndarray, axes: Sequence[int] | None = None) -> np.ndarray:
    return sfft.ifftn(values, axes=axes, workers=SolverDefaults.FFT_WORKERS)


def transform_forward(f: ComplexField) -> np.ndarray:
    """正变换, 返回谱系数数组(未归一化)"""
    return fftn(f.values)


def transform_backward(coeffs: np.ndarray, grid: Grid) -> ComplexField:
    """逆变换, 结果除以总点数"""
    return ComplexField(grid, ifftn(coeffs))


def _spectral_derivative(coeffs: np.ndarray, grid: Grid, axis: int) -> np.ndarray:
    return ifftn(1j * grid.deriv_kmesh[axis] * coeffs)


def gradient(f: ComplexField) -> VectorField:
    """谱梯度: 第 j 分量为 ifft(i k_j F)"""
    coeffs = transform_forward(f)
    return VectorField(f.grid, tuple(_spectral_derivative(coeffs, f.grid, axis) for axis in range(f.grid.d)))


def gradient_of(values: np.ndarray, grid: Grid) -> tuple[np.ndarray, ...]:
    """对数组直接求谱梯度, 实输入返回实分量"""
    coeffs = fftn(values)
    comps = tuple(_spectral_derivative(coeffs, grid, axis) for axis in range(grid.d))
    if np.isrealobj(values):
        return tuple(c.real for c in comps)
    return comps


def divergence(v: VectorField | Sequence[np.ndarray], grid: Grid | None = None) -> np.ndarray:
    """谱散度 sum_j d_j v_j, 分量全为实数时返回实数组"""
    if isinstance(v, VectorField):
        grid = v.grid
    if grid is None:
        raise ValueError('对分量序列求散度时必须提供 grid')
    comps = tuple(v)
    total = sum((_spectral_derivative(fftn(c), grid, axis) for axis, c in enumerate(comps)), start=np.zeros(grid.shape, dtype=np.complex128))
    if all(np.isrealobj(c) for c in comps):
        return total.real
    return total


def _tail_of_power(power: np.ndarray, grid: Grid) -> float:
    total = float(power.sum())
    if total == 0.0:
        raise ZeroFieldError('零场的谱尾部比例无定义')
    return float(power[grid.tail_mask].sum()) / total


def tail_fraction(f: ComplexField) -> float:
    """谱尾部质量比例

    Returns:
        float: 任一轴 |k_j| >= 3/4 k_max 的模式所占谱 l2 质量比例, 取值 [0, 1]

    Raises:
        ZeroFieldError: 场恒为零
    """
    coeffs = transform_forward(f)
    return _tail_of_power((coeffs * coeffs.conj()).real, f.grid)


def spectral_monitor(values: np.ndarray, grid: Grid) -> tuple[float, float]:
    """单次FFT同时得到 ||grad psi||^2 与谱尾部比例

    Returns:
        tuple[float, float]: (梯度范数平方, 尾部比例), 场含非有限值时返回 (nan, nan)
    """
    coeffs = fftn(values)
    power = (coeffs * coeffs.conj()).real
    if not np.isfinite(power).all():
        return float('nan'), float('nan')
    kd2 = sum((k * k for k in grid.deriv_kmesh), start=np.zeros(grid.shape))
    grad_sq = float((kd2 * power).sum()) * grid.cell_volume / grid.size
    return grad_sq, _tail_of_power(power, grid)


def integrate(values: np.ndarray, grid: Grid) -> float | complex:
    """周期梯形积分: 求和乘单元体积"""
    total = np.sum(values) * grid.cell_volume
    return complex(total) if np.iscomplexobj(total) else float(total)


def l2_norm(f: ComplexField | np.ndarray, grid: Grid | None = None) -> float:
    """离散 l2 范数 (sum |f|^2 dV)^(1/2)"""
    if isinstance(f, ComplexField):
        grid, values = f.grid, f.values
    else:
        values = f
    if grid is None:
        raise ValueError('对数组求范数时必须提供 grid')
    return float(np.sqrt(integrate((values * values.conj()).real, grid)))


__all__ = [
    'divergence',
    'fftn',
    'gradient',
    'gradient_of',
    'ifftn',
    'integrate',
    'l2_norm',
    'spectral_monitor',
    'tail_fraction',
    'transform_backward',
    'transform_forward',
]

# !/usr/bin/env python
"""
==============================================================
Description  : 周期谱网格模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

本模块提供计算盒 [-L, L)^d 上的周期谱网格:
- 坐标采样 x_m = -L + m*h, h = 2L/n
- DFT波数 k_m = m*pi/L, m 依次为 0..n/2-1, -n/2..-1
- 求导波数(奈奎斯特模置零)与 |k|^2 缓存

from xtrnls.spectral import make_grid

grid = make_grid(2, 64, 8.0)
grid.spacing        # (0.25, 0.25)
x1, x2 = grid.mesh  # 稀疏网格, 可直接广播
==============================================================
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import fft as sfft

from ..defaults import SolverDefaults
from ..errors import InvalidDimensionError, NonPositiveBoxError, NonPowerOfTwoError


@dataclass(frozen=True)
class Grid:
    """周期谱网格

    Attributes:
        d: 空间维数, 2 或 3
        n: 每轴采样点数
        halfwidth: 每轴计算盒半宽 L_j
    """

    d: int
    n: tuple[int, ...]
    halfwidth: tuple[float, ...]

    @property
    def shape(self) -> tuple[int, ...]:
        return self.n

    @property
    def size(self) -> int:
        """总采样点数"""
        return math.prod(self.n)

    @cached_property
    def spacing(self) -> tuple[float, ...]:
        return tuple(2.0 * length / count for length, count in zip(self.halfwidth, self.n, strict=True))

    @cached_property
    def cell_volume(self) -> float:
        return math.prod(self.spacing)

    @cached_property
    def coords(self) -> tuple[np.ndarray, ...]:
        """每轴一维坐标数组, 取单元左端点 -L + m h"""
        return tuple(-length + h * np.arange(count) for length, h, count in zip(self.halfwidth, self.spacing, self.n, strict=True))

    @cached_property
    def wavenumbers(self) -> tuple[np.ndarray, ...]:
        """每轴一维DFT波数"""
        return tuple(2.0 * np.pi * sfft.fftfreq(count, h) for count, h in zip(self.n, self.spacing, strict=True))

    @cached_property
    def deriv_wavenumbers(self) -> tuple[np.ndarray, ...]:
        """求导用波数, 奈奎斯特模置零"""
        result = []
        for k in self.wavenumbers:
            k = k.copy()
            k[k.size // 2] = 0.0
            result.append(k)
        return tuple(result)

    @cached_property
    def k_max(self) -> tuple[float, ...]:
        """每轴最大波数模 (奈奎斯特)"""
        return tuple(np.pi * count / (2.0 * length) for count, length in zip(self.n, self.halfwidth, strict=True))

    @cached_property
    def mesh(self) -> tuple[np.ndarray, ...]:
        """稀疏坐标网格, 各分量可互相广播"""
        return tuple(np.meshgrid(*self.coords, indexing='ij', sparse=True))

    @cached_property
    def kmesh(self) -> tuple[np.ndarray, ...]:
        return tuple(np.meshgrid(*self.wavenumbers, indexing='ij', sparse=True))

    @cached_property
    def deriv_kmesh(self) -> tuple[np.ndarray, ...]:
        return tuple(np.meshgrid(*self.deriv_wavenumbers, indexing='ij', sparse=True))

    @cached_property
    def k_squared(self) -> np.ndarray:
        """|k|^2, 完整形状"""
        total = np.zeros(self.shape)
        for k in self.kmesh:
            total = total + k * k
        return total

    @cached_property
    def radius_squared(self) -> np.ndarray:
        """|x|^2, 完整形状"""
        total = np.zeros(self.shape)
        for x in self.mesh:
            total = total + x * x
        return total

    @cached_property
    def tail_mask(self) -> np.ndarray:
        """任一轴上 |k_j| >= TAIL_CUTOFF * k_max 的模式"""
        cutoff = SolverDefaults.TAIL_CUTOFF
        mask = np.zeros(self.shape, dtype=bool)
        for k, kmax in zip(self.kmesh, self.k_max, strict=True):
            mask = mask | (np.abs(k) >= cutoff * kmax * (1.0 - 1e-12))
        return mask

    def is_square_in_plane(self) -> bool:
        """前两轴的点数与半宽是否相同"""
        return self.n[0] == self.n[1] and math.isclose(self.halfwidth[0], self.halfwidth[1], rel_tol=1e-14)


def _per_axis(value: int | float | Sequence, d: int, name: str) -> tuple:
    if isinstance(value, int | float | np.integer | np.floating):
        return (value,) * d
    items = tuple(value)
    if len(items) == 1:
        return items * d
    if len(items) != d:
        raise InvalidDimensionError(f'{name} 需要 {d} 个分量, 得到 {len(items)}')
    return items


def make_grid(d: int, n: int | Sequence[int], L: float | Sequence[float]) -> Grid:
    """构造周期谱网格

    Args:
        d: 空间维数, 2 或 3
        n: 每轴采样点数, 2的幂, 标量表示各轴相同
        L: 每轴半宽, 正数, 标量表示各轴相同

    Returns:
        Grid: 网格对象

    Raises:
        InvalidDimensionError: 维数不是2或3
        NonPowerOfTwoError: 点数不是2的幂或小于下限
        NonPositiveBoxError: 半宽不为正

    Example:
        >>> grid = make_grid(2, (4, 4), (math.pi, math.pi))
        >>> grid.wavenumbers[0]
        array([ 0.,  1., -2., -1.])
    """
    if d not in (2, 3):
        raise InvalidDimensionError(f'维数必须为2或3, 得到 {d}')

    counts = _per_axis(n, d, 'n')
    lengths = _per_axis(L, d, 'L')

    for count in counts:
        if int(count) != count or count < SolverDefaults.MIN_POINTS or int(count) & (int(count) - 1):
            raise NonPowerOfTwoError(f'每轴点数必须是不小于{SolverDefaults.MIN_POINTS}的2的幂, 得到 {count}')
    for length in lengths:
        if not math.isfinite(length) or length <= 0:
            raise NonPositiveBoxError(f'计算盒半宽必须为正, 得到 {length}')

    return Grid(d=d, n=tuple(int(c) for c in counts), halfwidth=tuple(float(x) for x in lengths))


__all__ = ['Grid', 'make_grid']

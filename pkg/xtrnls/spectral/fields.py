# !/usr/bin/env python
"""
==============================================================
Description  : 网格场类型模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

ComplexField 保存网格上的复波函数采样(complex128, 行优先, 最后一轴最快),
VectorField 保存 d 个分量的向量场(梯度, 流密度)。两者构造后只读。
==============================================================
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .grid import Grid


def _frozen(values: np.ndarray) -> np.ndarray:
    values.flags.writeable = False
    return values


@dataclass(frozen=True, eq=False)
class ComplexField:
    """网格上的复值场

    Args:
        grid: 所在网格
        values: 采样值, 形状须等于 grid.shape, 或长度等于总点数的一维数组
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.complex128)
        if values.shape != self.grid.shape:
            if values.size != self.grid.size:
                raise ValueError(f'采样数 {values.size} 与网格点数 {self.grid.size} 不符')
            values = values.reshape(self.grid.shape)
        object.__setattr__(self, 'values', _frozen(values))

    @classmethod
    def from_function(cls, grid: Grid, func) -> ComplexField:
        """在网格坐标上求值 func(*mesh) 构造场"""
        return cls(grid, np.broadcast_to(func(*grid.mesh), grid.shape))

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.values).all())

    def copy_values(self) -> np.ndarray:
        """返回可写副本"""
        return self.values.copy()

    def __len__(self) -> int:
        return self.grid.size


@dataclass(frozen=True, eq=False)
class VectorField:
    """网格上的向量场, 分量个数等于维数"""

    grid: Grid
    components: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        comps = tuple(_frozen(np.array(np.broadcast_to(c, self.grid.shape))) for c in self.components)
        if len(comps) != self.grid.d:
            raise ValueError(f'分量个数 {len(comps)} 与维数 {self.grid.d} 不符')
        object.__setattr__(self, 'components', comps)

    def __getitem__(self, index: int) -> np.ndarray:
        return self.components[index]

    def __iter__(self):
        return iter(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def dot(self, other: Sequence[np.ndarray] | VectorField) -> np.ndarray:
        """逐点内积 sum_j self_j * other_j"""
        return sum((a * b for a, b in zip(self.components, other, strict=True)), start=np.zeros(self.grid.shape))


__all__ = ['ComplexField', 'VectorField']

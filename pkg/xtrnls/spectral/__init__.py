# !/usr/bin/env python
"""
==============================================================
Description  : 谱计算基础包
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls
==============================================================
"""

from __future__ import annotations

from .fields import ComplexField, VectorField
from .grid import Grid, make_grid
from .ops import (
    divergence,
    fftn,
    gradient,
    gradient_of,
    ifftn,
    integrate,
    l2_norm,
    spectral_monitor,
    tail_fraction,
    transform_backward,
    transform_forward,
)

__all__ = [
    'ComplexField',
    'Grid',
    'VectorField',
    'divergence',
    'fftn',
    'gradient',
    'gradient_of',
    'ifftn',
    'integrate',
    'l2_norm',
    'make_grid',
    'spectral_monitor',
    'tail_fraction',
    'transform_backward',
    'transform_forward',
]

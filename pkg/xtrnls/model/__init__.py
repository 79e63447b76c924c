# !/usr/bin/env python
"""
==============================================================
Description  : 物理模型包
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls
==============================================================
"""

from __future__ import annotations

from .blowup import BlowupCase, BlowupReport, classify_blowup, parabola_root
from .config import Criticality, LatticeConfig, ModelConfig, NonlinearityConfig, RotationConfig, TrapConfig, is_axisymmetric
from .rotation import (
    alpha_omega,
    cross_omega,
    potential_gradient,
    potential_value,
    rotate_coords,
    rotated_potential,
    rotated_potential_gradient,
    rotated_potential_time_derivative,
    theta_matrix,
)

__all__ = [
    'BlowupCase',
    'BlowupReport',
    'Criticality',
    'LatticeConfig',
    'ModelConfig',
    'NonlinearityConfig',
    'RotationConfig',
    'TrapConfig',
    'alpha_omega',
    'classify_blowup',
    'cross_omega',
    'is_axisymmetric',
    'parabola_root',
    'potential_gradient',
    'potential_value',
    'rotate_coords',
    'rotated_potential',
    'rotated_potential_gradient',
    'rotated_potential_time_derivative',
    'theta_matrix',
]

# !/usr/bin/env python
"""
==============================================================
Description  : 时间推进包
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

两个互相独立的推进后端:
- rotating_frame: 旋转系Strang分裂, 势能为 W(t,x) = V(X(t,x))
- lab_frame: 实验室系交替方向谱方法, 要求旋转轴为第三轴
==============================================================
"""

from __future__ import annotations

from .frame import FrameDirection, map_frame, rotate_samples
from .groundstate import imaginary_time_ground_state
from .lab import LabFrameStepper, adi_step_lab
from .params import Backend, RunResult, RunStatus, SimParams
from .rotating import RotatingFrameStepper, kinetic_half_step, phase_step_rotating, strang_step_rotating
from .runner import make_stepper, run, run_many, run_many_async

__all__ = [
    'Backend',
    'FrameDirection',
    'LabFrameStepper',
    'RotatingFrameStepper',
    'RunResult',
    'RunStatus',
    'SimParams',
    'adi_step_lab',
    'imaginary_time_ground_state',
    'kinetic_half_step',
    'make_stepper',
    'map_frame',
    'phase_step_rotating',
    'rotate_samples',
    'run',
    'run_many',
    'run_many_async',
    'strang_step_rotating',
]

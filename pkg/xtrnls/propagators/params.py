# !/usr/bin/env python
"""
==============================================================
Description  : 时间推进参数与结果模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls
==============================================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import StrEnum

from ..defaults import SolverDefaults
from ..errors import ConfigValidationError
from ..model import ModelConfig
from ..observables import Frame, ObservableRecord
from ..spectral import ComplexField


class Backend(StrEnum):
    ROTATING_FRAME = 'rotating_frame'
    LAB_FRAME = 'lab_frame'

    @classmethod
    def parse(cls, value: str | Backend) -> Backend:
        """接受 lab / rotating 简写"""
        text = str(value).strip().lower()
        aliases = {'lab': cls.LAB_FRAME, 'rotating': cls.ROTATING_FRAME}
        if text in aliases:
            return aliases[text]
        try:
            return cls(text)
        except ValueError:
            raise ConfigValidationError('solver.backend', f'未知后端 {value!r}') from None


class RunStatus(StrEnum):
    COMPLETED = 'completed'
    BLOWUP_DETECTED = 'blowup_detected'
    UNRESOLVED = 'unresolved'


@dataclass(frozen=True)
class SimParams:
    """时间推进参数

    Args:
        dt: 时间步长
        t_end: 终止时间
        backend: 推进后端, rotating_frame 或 lab_frame
        sample_every: 相邻观测记录间隔的步数
        blowup_grad_factor: 梯度范数平方相对初值的爆破阈值, 缺省取 SolverDefaults
        blowup_tail: 谱尾部阈值, 缺省取 SolverDefaults
        frame_of_record: 记录与最终场所在坐标系
    """

    dt: float
    t_end: float
    backend: Backend = Backend.ROTATING_FRAME
    sample_every: int = 1
    blowup_grad_factor: float = field(default_factory=lambda: SolverDefaults.BLOWUP_GRAD_FACTOR)
    blowup_tail: float = field(default_factory=lambda: SolverDefaults.BLOWUP_TAIL)
    frame_of_record: Frame = Frame.LAB

    def __post_init__(self) -> None:
        object.__setattr__(self, 'backend', Backend.parse(self.backend))
        object.__setattr__(self, 'frame_of_record', Frame(self.frame_of_record))
        for name, value in (('time.dt', self.dt), ('time.t_end', self.t_end), ('solver.blowup_grad_factor', self.blowup_grad_factor), ('solver.blowup_tail', self.blowup_tail)):
            if not (isinstance(value, int | float) and math.isfinite(value) and value > 0):
                raise ConfigValidationError(name, f'必须为正的有限数, 得到 {value}')
        if int(self.sample_every) != self.sample_every or self.sample_every < 1:
            raise ConfigValidationError('time.sample_every', f'必须为正整数, 得到 {self.sample_every}')

    @property
    def n_steps(self) -> int:
        return max(1, round(self.t_end / self.dt))


@dataclass(frozen=True)
class RunResult:
    """一次时间推进的结果

    Attributes:
        status: completed / blowup_detected / unresolved
        t_final: 最后一步的时间
        records: 观测记录序列
        t_detect: 检测到爆破的时间, 仅 blowup_detected 时存在
        final_field: 最终场
        final_frame: 最终场所在坐标系
    """

    status: RunStatus
    t_final: float
    records: tuple[ObservableRecord, ...]
    t_detect: float | None
    final_field: ComplexField
    final_frame: Frame
    params: SimParams
    model: ModelConfig

    @property
    def dt(self) -> float:
        return self.params.dt

    @property
    def backend(self) -> Backend:
        return self.params.backend

    @property
    def completed(self) -> bool:
        return self.status is RunStatus.COMPLETED

    def column(self, name: str) -> list[float]:
        """按列名取记录序列"""
        return [getattr(r, name) for r in self.records]


__all__ = ['Backend', 'RunResult', 'RunStatus', 'SimParams']

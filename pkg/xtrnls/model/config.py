# !/usr/bin/env python
"""
==============================================================
Description  : 物理模型配置模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

本模块定义陷阱、旋转、非线性项及完整模型配置:
- TrapConfig: 各轴陷阱频率 gamma_j, 排斥标志, 可选余弦光晶格
- RotationConfig: 旋转向量, 二维时为绕第三轴的有符号标量
- NonlinearityConfig: 耦合常数 lambda 与指数 sigma
- ModelConfig: 组合配置, 提供轴对称判定与能量次临界校验
==============================================================
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np

from ..errors import ConfigValidationError, InvalidDimensionError, UnsupportedRotationAxisError


class Criticality(StrEnum):
    SUBCRITICAL = 'subcritical'
    CRITICAL = 'critical'
    SUPERCRITICAL = 'supercritical'


@dataclass(frozen=True)
class LatticeConfig:
    """光晶格项 a*cos(q.x)"""

    amplitude: float
    wavevector: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, 'amplitude', float(self.amplitude))
        object.__setattr__(self, 'wavevector', tuple(float(q) for q in self.wavevector))


@dataclass(frozen=True)
class TrapConfig:
    """陷阱配置

    Args:
        gamma: 各轴陷阱频率, 可为零
        repulsive: 各轴排斥标志, 为真时该轴势能取 -gamma^2 x^2 / 2
        lattice: 可选光晶格
    """

    gamma: tuple[float, ...]
    repulsive: tuple[bool, ...] = ()
    lattice: LatticeConfig | None = None

    def __post_init__(self) -> None:
        gamma = tuple(float(g) for g in self.gamma)
        repulsive = tuple(bool(r) for r in self.repulsive) or (False,) * len(gamma)
        if len(repulsive) != len(gamma):
            raise ConfigValidationError('trap.repulsive', f'需要 {len(gamma)} 个分量')
        if self.lattice is not None and len(self.lattice.wavevector) != len(gamma):
            raise ConfigValidationError('trap.lattice.wavevector', f'需要 {len(gamma)} 个分量')
        object.__setattr__(self, 'gamma', gamma)
        object.__setattr__(self, 'repulsive', repulsive)

    @property
    def d(self) -> int:
        return len(self.gamma)

    @property
    def signs(self) -> tuple[float, ...]:
        return tuple(-1.0 if r else 1.0 for r in self.repulsive)

    @property
    def gamma_min(self) -> float:
        """各轴 |gamma_j| 的最小值"""
        return min(abs(g) for g in self.gamma)

    @property
    def has_repulsive(self) -> bool:
        return any(self.repulsive)

    @property
    def is_confining(self) -> bool:
        return not self.has_repulsive and all(g > 0 for g in self.gamma)

    def _same_axes(self, axes: Sequence[int]) -> bool:
        first = axes[0]
        return all(abs(self.gamma[j]) == abs(self.gamma[first]) and self.repulsive[j] == self.repulsive[first] for j in axes)

    @property
    def is_isotropic(self) -> bool:
        return self.lattice is None and self._same_axes(range(self.d))

    @property
    def is_transverse_isotropic(self) -> bool:
        """前两轴(垂直于第三轴的平面)是否对称"""
        return self.lattice is None and self._same_axes((0, 1))


@dataclass(frozen=True)
class RotationConfig:
    """旋转配置, 内部总是保存三维向量

    Example:
        >>> RotationConfig.planar(0.5).omega
        (0.0, 0.0, 0.5)
    """

    omega: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __post_init__(self) -> None:
        omega = tuple(float(w) for w in self.omega)
        if len(omega) != 3:
            raise ConfigValidationError('rotation.omega', f'需要3个分量, 得到 {len(omega)}')
        if not all(math.isfinite(w) for w in omega):
            raise ConfigValidationError('rotation.omega', '分量必须有限')
        object.__setattr__(self, 'omega', omega)

    @classmethod
    def planar(cls, omega: float) -> RotationConfig:
        """绕第三轴的旋转, omega 可带符号"""
        return cls((0.0, 0.0, float(omega)))

    @classmethod
    def from_values(cls, values: float | Sequence[float], d: int) -> RotationConfig:
        """由配置值构造: 二维取标量, 三维取3分量向量"""
        if isinstance(values, int | float):
            return cls.planar(values)
        items = tuple(values)
        if len(items) == 1:
            return cls.planar(items[0])
        if d == 2:
            raise ConfigValidationError('rotation.omega', '二维时旋转为标量')
        return cls(items)  # type: ignore[arg-type]

    @property
    def vector(self) -> np.ndarray:
        return np.asarray(self.omega)

    @property
    def magnitude(self) -> float:
        return math.sqrt(sum(w * w for w in self.omega))

    @property
    def axis(self) -> tuple[float, float, float] | None:
        """单位旋转轴, 无旋转时为 None"""
        mag = self.magnitude
        if mag == 0.0:
            return None
        return (self.omega[0] / mag, self.omega[1] / mag, self.omega[2] / mag)

    @property
    def is_axis_aligned(self) -> bool:
        """旋转轴是否为第三坐标轴"""
        return self.omega[0] == 0.0 and self.omega[1] == 0.0

    @property
    def planar_rate(self) -> float:
        """绕第三轴的有符号角频率"""
        if not self.is_axis_aligned:
            raise UnsupportedRotationAxisError(f'旋转轴未与第三轴对齐: {self.omega}')
        return self.omega[2]


@dataclass(frozen=True)
class NonlinearityConfig:
    """非线性项 lam * |psi|^(2 sigma) psi"""

    lam: float = 0.0
    sigma: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, 'lam', float(self.lam))
        object.__setattr__(self, 'sigma', float(self.sigma))

    @property
    def is_focusing(self) -> bool:
        return self.lam < 0

    def criticality(self, d: int) -> Criticality:
        """相对质量临界指数 2/d 的分类"""
        critical = 2.0 / d
        if math.isclose(self.sigma, critical, rel_tol=1e-12):
            return Criticality.CRITICAL
        return Criticality.SUBCRITICAL if self.sigma < critical else Criticality.SUPERCRITICAL


def is_axisymmetric(trap: TrapConfig, rot: RotationConfig) -> bool:
    """势能是否关于旋转轴对称, 即 (Omega.L)V = 0

    结构判定: 无旋转; 或全各向同性且无晶格; 或旋转沿第三轴且前两轴频率与符号相同且无晶格。
    """
    if rot.magnitude == 0.0:
        return True
    if trap.is_isotropic:
        return True
    return rot.is_axis_aligned and trap.is_transverse_isotropic


@dataclass(frozen=True)
class ModelConfig:
    """完整模型配置"""

    d: int
    trap: TrapConfig
    rotation: RotationConfig = field(default_factory=RotationConfig)
    nonlinearity: NonlinearityConfig = field(default_factory=NonlinearityConfig)

    def __post_init__(self) -> None:
        if self.d not in (2, 3):
            raise InvalidDimensionError(f'维数必须为2或3, 得到 {self.d}')
        if self.trap.d != self.d:
            raise ConfigValidationError('trap.gamma', f'需要 {self.d} 个分量, 得到 {self.trap.d}')

    @property
    def gamma_min(self) -> float:
        return self.trap.gamma_min

    @property
    def criticality(self) -> Criticality:
        return self.nonlinearity.criticality(self.d)

    def is_axisymmetric(self) -> bool:
        return is_axisymmetric(self.trap, self.rotation)

    def validate(self) -> ModelConfig:
        """校验模型可用于模拟

        Raises:
            ConfigValidationError: sigma 不为正, 三维能量超临界, 或二维旋转轴不是第三轴
        """
        sigma = self.nonlinearity.sigma
        if not sigma > 0:
            raise ConfigValidationError('nonlinearity.sigma', f'必须为正, 得到 {sigma}')
        if self.d == 3 and not sigma < 2.0 / (self.d - 2):
            raise ConfigValidationError('nonlinearity.sigma', f'三维要求能量次临界 sigma < 2, 得到 {sigma}')
        if self.d == 2 and not self.rotation.is_axis_aligned:
            raise ConfigValidationError('rotation.omega', '二维旋转必须绕第三轴')
        if not all(math.isfinite(g) for g in self.trap.gamma):
            raise ConfigValidationError('trap.gamma', '频率必须有限')
        if not math.isfinite(self.nonlinearity.lam):
            raise ConfigValidationError('nonlinearity.lambda', '必须有限')
        return self


__all__ = [
    'Criticality',
    'LatticeConfig',
    'ModelConfig',
    'NonlinearityConfig',
    'RotationConfig',
    'TrapConfig',
    'is_axisymmetric',
]

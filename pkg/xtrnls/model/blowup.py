# !/usr/bin/env python
"""
==============================================================
Description  : 有限时间爆破判据模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

根据初始能量与方差判定聚焦情形下的有限时间爆破:
- 轴对称情形: sigma >= 2/d 且 E0(0) < 0, 由 I'' <= 2 E0 得到上界
- 非对称情形: |Omega| < gamma_min, sigma >= alpha/d 且 E_Omega(0) < 0,
  由 I'' <= alpha E_Omega 得到上界
上界取 I(t) 抛物线上界的正根。不适用时返回 not_applicable 及原因, 不抛异常。
==============================================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import StrEnum

from xtlog import mylog

from .config import ModelConfig
from .rotation import alpha_omega


class BlowupCase(StrEnum):
    AXISYMMETRIC_CASE_I = 'axisymmetric_case_i'
    NONSYMMETRIC_CASE_II = 'nonsymmetric_case_ii'
    NOT_APPLICABLE = 'not_applicable'


@dataclass(frozen=True)
class BlowupReport:
    """爆破判定结果"""

    case: BlowupCase
    alpha_omega: float | None
    e0_initial: float
    eomega_initial: float
    sigma_threshold: float | None
    t_star_bound: float | None = None
    reason: str = ''

    @property
    def applicable(self) -> bool:
        return self.case is not BlowupCase.NOT_APPLICABLE

    def to_dict(self) -> dict:
        return {
            'case': str(self.case),
            'alpha_omega': self.alpha_omega,
            'e0_initial': self.e0_initial,
            'eomega_initial': self.eomega_initial,
            'sigma_threshold': self.sigma_threshold,
            't_star_bound': self.t_star_bound,
            'reason': self.reason,
        }


def parabola_root(i0: float, di0: float, curvature: float) -> float:
    """i0 + di0 t + curvature t^2 = 0 的正根, curvature < 0, i0 >= 0"""
    if not curvature < 0:
        raise ValueError(f'curvature 必须为负, 得到 {curvature}')
    disc = di0 * di0 - 4.0 * curvature * i0
    return (di0 + math.sqrt(disc)) / (2.0 * abs(curvature))


def _at_least(value: float, threshold: float) -> bool:
    return value >= threshold or math.isclose(value, threshold, rel_tol=1e-12)


def classify_blowup(model: ModelConfig, e0: float, eomega: float, i0: float, di0: float) -> BlowupReport:
    """按初始数据判定爆破情形并给出爆破时间上界

    Args:
        model: 模型配置
        e0: 初始 E0
        eomega: 初始 E_Omega
        i0: 初始方差 I(0)
        di0: 初始方差变化率 I'(0)

    Returns:
        BlowupReport: 判定结果

    Example:
        >>> report = classify_blowup(model, e0=-1.0, eomega=-1.0, i0=1.0, di0=0.0)
        >>> report.case, report.t_star_bound
        (<BlowupCase.AXISYMMETRIC_CASE_I: 'axisymmetric_case_i'>, 1.0)
    """
    d = model.d
    sigma = model.nonlinearity.sigma
    gamma_min = model.gamma_min
    omega_mag = model.rotation.magnitude
    alpha = alpha_omega(gamma_min, omega_mag) if gamma_min > 0 and omega_mag < gamma_min else None

    def not_applicable(reason: str, threshold: float | None = None) -> BlowupReport:
        mylog.debug(f'classify_blowup | not_applicable: {reason}')
        return BlowupReport(BlowupCase.NOT_APPLICABLE, alpha, e0, eomega, threshold, None, reason)

    if model.nonlinearity.lam >= 0:
        return not_applicable('非聚焦非线性 (lambda >= 0)')
    if model.trap.has_repulsive:
        return not_applicable('存在排斥陷阱轴, 判据要求 V >= 0')
    if model.trap.lattice is not None:
        return not_applicable('存在光晶格, 判据只针对二次陷阱')

    if model.is_axisymmetric():
        threshold = 2.0 / d
        if not _at_least(sigma, threshold):
            return not_applicable(f'sigma={sigma} 小于 2/d={threshold}', threshold)
        if not e0 < 0:
            return not_applicable(f'E0(0)={e0} 非负', threshold)
        bound = parabola_root(i0, di0, e0)
        return BlowupReport(BlowupCase.AXISYMMETRIC_CASE_I, alpha, e0, eomega, threshold, bound, '')

    if omega_mag > gamma_min:
        return not_applicable(f'|Omega|={omega_mag} > gamma_min={gamma_min}: 该区域爆破问题完全开放')
    if alpha is None:
        return not_applicable(f'|Omega|={omega_mag} = gamma_min={gamma_min}: alpha_omega 无定义')

    threshold = alpha / d
    if not _at_least(sigma, threshold):
        return not_applicable(f'sigma={sigma} 小于 alpha_omega/d={threshold}', threshold)
    if not eomega < 0:
        return not_applicable(f'E_Omega(0)={eomega} 非负', threshold)
    bound = parabola_root(i0, di0, 0.5 * alpha * eomega)
    return BlowupReport(BlowupCase.NONSYMMETRIC_CASE_II, alpha, e0, eomega, threshold, bound, '')


__all__ = ['BlowupCase', 'BlowupReport', 'classify_blowup', 'parabola_root']

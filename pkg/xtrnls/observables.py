# !/usr/bin/env python
"""
==============================================================
Description  : 物理观测量模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

本模块计算旋转NLS的全部泛函:
- 质量 M, 能量 E_Omega / E0, 磁形式能量, 角动量 L_Omega = int (Omega^x).J
- 方差 I = 1/2 int |x|^2 rho 及其变化率 int x.J
- 位力右端 ||grad psi||^2 + lam d sigma/(sigma+1) int rho^(sigma+1) - int rho x.gradV
- 角动量源项 int rho (Omega^x).gradV
- 连续性方程残差, 角动量平衡残差

旋转系中的场 psi~(x) = psi(X(t,x)) 可直接传入(frame='rotating'):
动能项, 流与方差在旋转下不变, 只有势能相关项改由 X(t,x) 求值,
因此无需重采样即可得到实验室观测量。
==============================================================
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import astuple, dataclass, fields
from enum import StrEnum

import numpy as np
from scipy.integrate import cumulative_trapezoid
from xtlog import mylog

from .defaults import SolverDefaults
from .errors import TooFewSamplesError, UnresolvedFieldError
from .model import ModelConfig, RotationConfig, cross_omega, potential_gradient, potential_value, rotate_coords
from .spectral import ComplexField, Grid, VectorField, divergence, gradient, gradient_of, integrate, spectral_monitor, tail_fraction


class Frame(StrEnum):
    LAB = 'lab'
    ROTATING = 'rotating'


@dataclass(frozen=True)
class ObservableRecord:
    """单个时刻的全部观测量, 字段顺序即CSV列顺序"""

    t: float
    mass: float
    energy_omega: float
    energy_zero: float
    energy_magnetic: float
    ang_mom: float
    variance: float
    variance_rate: float
    grad_norm_sq: float
    virial_rhs: float
    lmom_source: float
    tail: float
    resolved: bool = True

    def values(self) -> tuple[float, ...]:
        """CSV数值列"""
        return astuple(self)[: len(CSV_COLUMNS)]

    def to_dict(self) -> dict[str, float]:
        return dict(zip(CSV_COLUMNS, self.values(), strict=True))


CSV_COLUMNS: tuple[str, ...] = tuple(f.name for f in fields(ObservableRecord) if f.name != 'resolved')


def density(psi: ComplexField) -> np.ndarray:
    """rho = |psi|^2"""
    values = psi.values
    return (values * values.conj()).real


def _current(values: np.ndarray, grads: Sequence[np.ndarray]) -> tuple[np.ndarray, ...]:
    return tuple((values.conj() * g).imag for g in grads)


def current_density(psi: ComplexField) -> VectorField:
    """J = Im(conj(psi) grad psi)"""
    return VectorField(psi.grid, _current(psi.values, gradient(psi).components))


def _trap_terms(model: ModelConfig, grid: Grid, t: float, frame: Frame):
    """势能, 势能梯度及其求值点; 旋转系中求值点为 X(t,x)"""
    x = grid.mesh
    if frame == Frame.ROTATING and not model.is_axisymmetric():
        x = rotate_coords(t, x, model.rotation)
    return x, potential_value(model.trap, x), potential_gradient(model.trap, x)


def _nonlinear_integral(rho: np.ndarray, model: ModelConfig, grid: Grid) -> float:
    """int rho^(sigma+1)"""
    if model.nonlinearity.lam == 0.0:
        return 0.0
    return integrate(rho ** (model.nonlinearity.sigma + 1.0), grid)  # type: ignore[return-value]


def _magnetic_density(values: np.ndarray, grads: Sequence[np.ndarray], potential, vector_potential: Sequence | None):
    """1/2 |(-i grad - A) psi|^2 + (V - 1/2|A|^2) rho, 不含非线性项"""
    rho = (values * values.conj()).real
    if vector_potential is None:
        kinetic = sum((g * g.conj()).real for g in grads)
        return 0.5 * kinetic + potential * rho
    total = potential * rho
    for g, a in zip(grads, vector_potential, strict=True):
        shifted = -1j * g - a * values
        total = total + 0.5 * (shifted * shifted.conj()).real - 0.5 * a * a * rho
    return total


def _check_resolved(psi: ComplexField) -> float:
    tail = tail_fraction(psi)
    if tail >= SolverDefaults.UNRESOLVED_TAIL:
        raise UnresolvedFieldError(tail, SolverDefaults.UNRESOLVED_TAIL)
    return tail


def compute_record(psi: ComplexField, t: float, model: ModelConfig, frame: Frame | str = Frame.LAB, view: Frame | str = Frame.LAB) -> ObservableRecord:
    """计算一个时刻的全部观测量

    Args:
        psi: 波函数
        t: 时间
        model: 模型配置
        frame: psi 所在坐标系, 'rotating' 表示 psi~(x) = psi(X(t,x))
        view: 'lab' 记录 E_Omega 与其磁形式; 'rotating' 记录旋转系方程的能量 E_W (与 E0 相等)

    Returns:
        ObservableRecord: 观测记录; 尾部比例 >= 0.1 时 resolved=False 并输出告警
    """
    frame, view = Frame(frame), Frame(view)
    grid = psi.grid
    values = psi.values
    lam, sigma = model.nonlinearity.lam, model.nonlinearity.sigma

    tail = tail_fraction(psi)
    resolved = tail < SolverDefaults.UNRESOLVED_TAIL
    if not resolved:
        mylog.warning(f'compute_record | t={t:.6g} 分辨率不足 tail={tail:.3e}')

    rho = density(psi)
    grads = gradient(psi).components
    current = _current(values, grads)
    x = grid.mesh
    big_x, potential, grad_potential = _trap_terms(model, grid, t, frame)
    vector_potential = cross_omega(model.rotation, x)

    mass = integrate(rho, grid)
    grad_norm_sq = integrate(sum((g * g.conj()).real for g in grads), grid)
    nl_integral = _nonlinear_integral(rho, model, grid)
    nl_energy = lam / (sigma + 1.0) * nl_integral
    ang_mom = integrate(sum(a * j for a, j in zip(vector_potential, current, strict=True)), grid)

    e_zero = 0.5 * grad_norm_sq + integrate(potential * rho, grid) + nl_energy
    if view == Frame.LAB:
        energy_omega = e_zero - ang_mom
        energy_magnetic = integrate(_magnetic_density(values, grads, potential, vector_potential), grid) + nl_energy
    else:
        energy_omega = e_zero
        energy_magnetic = integrate(_magnetic_density(values, grads, potential, None), grid) + nl_energy

    variance = 0.5 * integrate(grid.radius_squared * rho, grid)
    variance_rate = integrate(sum(xj * j for xj, j in zip(x, current, strict=True)), grid)
    x_grad_v = sum(xj * g for xj, g in zip(big_x, grad_potential, strict=True))
    virial_rhs = grad_norm_sq + lam * grid.d * sigma / (sigma + 1.0) * nl_integral - integrate(rho * x_grad_v, grid)

    if model.is_axisymmetric():
        lmom_source = 0.0
    else:
        advect = cross_omega(model.rotation, big_x)
        lmom_source = integrate(rho * sum(a * g for a, g in zip(advect, grad_potential, strict=True)), grid)

    record = ObservableRecord(
        t=float(t),
        mass=float(mass),
        energy_omega=float(energy_omega),
        energy_zero=float(e_zero),
        energy_magnetic=float(energy_magnetic),
        ang_mom=float(ang_mom),
        variance=float(variance),
        variance_rate=float(variance_rate),
        grad_norm_sq=float(grad_norm_sq),
        virial_rhs=float(virial_rhs),
        lmom_source=float(lmom_source),
        tail=tail,
        resolved=resolved,
    )
    mylog.debug(f'compute_record | t={t:.6g} mass={mass:.12g} E_Omega={energy_omega:.12g} tail={tail:.3e}')
    return record


def energy_magnetic_form(psi: ComplexField, model: ModelConfig, t: float = 0.0, frame: Frame | str = Frame.LAB) -> float:
    """磁形式能量 int 1/2|(-i grad - A)psi|^2 + (V - 1/2|Omega|^2 r^2)|psi|^2 + NL, A = Omega^x

    Raises:
        UnresolvedFieldError: 尾部比例 >= 0.1
    """
    _check_resolved(psi)
    grid = psi.grid
    _, potential, _ = _trap_terms(model, grid, t, Frame(frame))
    grads = gradient(psi).components
    rho = density(psi)
    lam, sigma = model.nonlinearity.lam, model.nonlinearity.sigma
    linear = integrate(_magnetic_density(psi.values, grads, potential, cross_omega(model.rotation, grid.mesh)), grid)
    return float(linear + lam / (sigma + 1.0) * _nonlinear_integral(rho, model, grid))  # type: ignore[arg-type]


def energy_zero(psi: ComplexField, model: ModelConfig) -> float:
    """E0 = 1/2||grad psi||^2 + int V rho + lam/(sigma+1) int rho^(sigma+1), 单次FFT"""
    grid = psi.grid
    grad_sq, _ = spectral_monitor(psi.values, grid)
    rho = density(psi)
    potential = potential_value(model.trap, grid.mesh)
    nl = model.nonlinearity.lam / (model.nonlinearity.sigma + 1.0) * _nonlinear_integral(rho, model, grid)
    return float(0.5 * grad_sq + integrate(potential * rho, grid) + nl)  # type: ignore[arg-type]


def continuity_residual(psi_prev: ComplexField, psi_next: ComplexField, dt: float, rot: RotationConfig) -> float:
    """连续性方程 d(rho)/dt + div J = (Omega^x).grad rho 的离散残差

    以中点场(两场平均后按平均质量归一)求右端, 返回 l2 范数。

    Raises:
        UnresolvedFieldError: 任一场尾部比例 >= 0.1
    """
    _check_resolved(psi_prev)
    _check_resolved(psi_next)
    grid = psi_prev.grid
    rho_prev, rho_next = density(psi_prev), density(psi_next)

    mid = 0.5 * (psi_prev.values + psi_next.values)
    target_mass = 0.5 * (integrate(rho_prev, grid) + integrate(rho_next, grid))
    mid_mass = integrate((mid * mid.conj()).real, grid)
    if mid_mass > 0:
        mid = mid * np.sqrt(target_mass / mid_mass)
    rho_mid = (mid * mid.conj()).real

    current = _current(mid, gradient_of(mid, grid))
    grad_rho = gradient_of(rho_mid, grid)
    advect = cross_omega(rot, grid.mesh)
    rhs = -divergence(current, grid) + sum(a * g for a, g in zip(advect, grad_rho, strict=True))

    residual = (rho_next - rho_prev) / dt - rhs
    return float(np.sqrt(integrate(residual * residual, grid)))


def angular_momentum_balance(records: Sequence[ObservableRecord], sources: Sequence[float] | None = None) -> float:
    """角动量平衡残差 max_t |L(t) + int_0^t source ds - L(0)|

    Args:
        records: 观测记录序列
        sources: 源项序列, 缺省取记录中的 lmom_source

    Raises:
        TooFewSamplesError: 记录少于3个
    """
    if len(records) < 3:
        raise TooFewSamplesError(len(records), 3)
    times = np.array([r.t for r in records])
    ang_mom = np.array([r.ang_mom for r in records])
    source = np.array(sources if sources is not None else [r.lmom_source for r in records], dtype=float)
    if source.shape != times.shape:
        raise ValueError(f'源项个数 {source.size} 与记录数 {times.size} 不符')
    accumulated = cumulative_trapezoid(source, times, initial=0.0)
    return float(np.max(np.abs(ang_mom + accumulated - ang_mom[0])))


__all__ = [
    'CSV_COLUMNS',
    'Frame',
    'ObservableRecord',
    'angular_momentum_balance',
    'compute_record',
    'continuity_residual',
    'current_density',
    'density',
    'energy_magnetic_form',
    'energy_zero',
]

# !/usr/bin/env python
"""
==============================================================
Description  : 虚时间基态生成模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

对 E0 做归一化梯度流: 以 t -> -i tau 的分裂步推进, 每步把质量投影回1,
每隔若干步检查 E0 的变化量。旋转项不参与, 因此得到的是无涡旋基态。
==============================================================
"""

from __future__ import annotations

import numpy as np
from xtlog import mylog

from ..defaults import SolverDefaults
from ..errors import NoConvergenceError, NonConfiningTrapError
from ..model import ModelConfig, potential_value
from ..observables import energy_zero
from ..spectral import ComplexField, Grid, fftn, ifftn, integrate


def _normalize(values: np.ndarray, grid: Grid) -> np.ndarray:
    mass = integrate((values * values.conj()).real, grid)
    return values / np.sqrt(mass)


def imaginary_time_ground_state(
    model: ModelConfig,
    grid: Grid,
    tol: float = 1e-10,
    dtau: float | None = None,
    max_iter: int | None = None,
) -> ComplexField:
    """虚时间迭代求单位质量基态

    Args:
        model: 模型配置, 陷阱须各轴约束
        grid: 网格
        tol: 相邻两次检查间 E0 变化量的收敛阈值
        dtau: 虚时间步长, 缺省取 SolverDefaults.GROUND_DTAU
        max_iter: 最大迭代步数, 缺省取 SolverDefaults.GROUND_MAX_ITER

    Returns:
        ComplexField: 单位质量基态

    Raises:
        NonConfiningTrapError: 存在排斥轴或零频率轴
        NoConvergenceError: 达到最大步数仍未收敛
    """
    if not model.trap.is_confining:
        raise NonConfiningTrapError(f'虚时间基态要求各轴约束陷阱, gamma={model.trap.gamma}, repulsive={model.trap.repulsive}')
    dtau = SolverDefaults.GROUND_DTAU if dtau is None else dtau
    max_iter = SolverDefaults.GROUND_MAX_ITER if max_iter is None else max_iter
    check_every = SolverDefaults.GROUND_CHECK_EVERY

    # 初值取与陷阱无关的各向同性高斯 e^(-|x|^2/4)
    values = _normalize(np.exp(-0.25 * grid.radius_squared).astype(np.complex128), grid)

    potential = potential_value(model.trap, grid.mesh)
    kinetic = np.exp(-0.5 * dtau * grid.k_squared)
    lam, sigma = model.nonlinearity.lam, model.nonlinearity.sigma

    def half_potential(v: np.ndarray) -> np.ndarray:
        total = potential
        if lam != 0.0:
            total = total + lam * (v * v.conj()).real ** sigma
        return v * np.exp(-0.5 * dtau * total)

    energy = energy_zero(ComplexField(grid, values), model)
    mylog.info(f'ground_state | 开始迭代 dtau={dtau} tol={tol} E0={energy:.12g}')
    for iteration in range(1, max_iter + 1):
        values = half_potential(values)
        values = ifftn(kinetic * fftn(values))
        values = _normalize(half_potential(values), grid)
        if iteration % check_every:
            continue
        new_energy = energy_zero(ComplexField(grid, values), model)
        if abs(new_energy - energy) < tol:
            mylog.info(f'ground_state | 第{iteration}步收敛 E0={new_energy:.12g}')
            return ComplexField(grid, values)
        energy = new_energy

    raise NoConvergenceError(f'虚时间迭代 {max_iter} 步未收敛, 最后 E0={energy:.12g}')


__all__ = ['imaginary_time_ground_state']

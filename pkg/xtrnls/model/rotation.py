# !/usr/bin/env python
"""
==============================================================
Description  : 旋转坐标变换模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

本模块实现旋转坐标系的全部几何量:
- theta_matrix: 反对称矩阵 Theta, 满足 Theta.x = -Omega^x
- rotate_coords: X(t,x) = exp(Theta t) x, 绕 Omega 转角 -|Omega|t
- potential_value / potential_gradient: V(x) 与 grad V(x)
- rotated_potential: W(t,x) = V(X(t,x))
- rotated_potential_time_derivative: dW/dt = -(Omega^X).gradV(X)
- alpha_omega: 非对称陷阱爆破判据的指数阈值

"点" 是 d 个分量的序列, 每个分量可以是标量或可互相广播的数组
(例如 Grid.mesh), 因此同一组函数既可逐点求值也可在整张网格上求值。
==============================================================
"""

from __future__ import annotations

import math
from collections.abc import Sequence

import numpy as np

from ..errors import RotationExceedsTrapError
from .config import RotationConfig, TrapConfig, is_axisymmetric

Point = Sequence[float | np.ndarray]


def theta_matrix(rot: RotationConfig) -> np.ndarray:
    """返回 3x3 反对称矩阵 Theta

    Example:
        >>> theta_matrix(RotationConfig.planar(1.0))
        array([[ 0.,  1.,  0.],
               [-1.,  0.,  0.],
               [ 0.,  0.,  0.]])
    """
    w1, w2, w3 = rot.omega
    return np.array([
        [0.0, w3, -w2],
        [-w3, 0.0, w1],
        [w2, -w1, 0.0],
    ])


def cross_omega(rot: RotationConfig, x: Point) -> tuple:
    """Omega^x, 二维时返回平面内两个分量"""
    w1, w2, w3 = rot.omega
    if len(x) == 2:
        x1, x2 = x
        return (-w3 * x2, w3 * x1)
    x1, x2, x3 = x
    return (w2 * x3 - w3 * x2, w3 * x1 - w1 * x3, w1 * x2 - w2 * x1)


def rotate_coords(t: float, x: Point, rot: RotationConfig) -> tuple:
    """旋转坐标 X(t,x) = exp(Theta t) x

    以Rodrigues公式绕单位轴 Omega/|Omega| 转角 -|Omega|t。二维点嵌入 x3=0,
    此时旋转只作用在平面内。

    Args:
        t: 时间
        x: d 分量的点或网格
        rot: 旋转配置

    Returns:
        tuple: X 的 d 个分量
    """
    comps = tuple(x)
    mag = rot.magnitude
    if mag == 0.0 or t == 0.0:
        return comps

    if len(comps) == 2:
        wt = rot.omega[2] * t
        c, s = math.cos(wt), math.sin(wt)
        x1, x2 = comps
        return (c * x1 + s * x2, -s * x1 + c * x2)

    n1, n2, n3 = rot.axis  # type: ignore[misc]
    phi = -mag * t
    c, s = math.cos(phi), math.sin(phi)
    x1, x2, x3 = comps
    along = (n1 * x1 + n2 * x2 + n3 * x3) * (1.0 - c)
    return (
        x1 * c + (n2 * x3 - n3 * x2) * s + n1 * along,
        x2 * c + (n3 * x1 - n1 * x3) * s + n2 * along,
        x3 * c + (n1 * x2 - n2 * x1) * s + n3 * along,
    )


def potential_value(trap: TrapConfig, x: Point):
    """V(x) = 1/2 sum s_j gamma_j^2 x_j^2 + a cos(q.x)"""
    total = 0.0
    for sign, gamma, xj in zip(trap.signs, trap.gamma, x, strict=True):
        total = total + 0.5 * sign * gamma * gamma * xj * xj
    if trap.lattice is not None:
        phase = sum(q * xj for q, xj in zip(trap.lattice.wavevector, x, strict=True))
        total = total + trap.lattice.amplitude * np.cos(phase)
    return total


def potential_gradient(trap: TrapConfig, x: Point) -> tuple:
    """grad V(x), 每轴 s_j gamma_j^2 x_j - a sin(q.x) q_j"""
    grad = [sign * gamma * gamma * xj for sign, gamma, xj in zip(trap.signs, trap.gamma, x, strict=True)]
    if trap.lattice is not None:
        phase = sum(q * xj for q, xj in zip(trap.lattice.wavevector, x, strict=True))
        sine = trap.lattice.amplitude * np.sin(phase)
        grad = [g - sine * q for g, q in zip(grad, trap.lattice.wavevector, strict=True)]
    return tuple(grad)


def _zeros_like_point(x: Point):
    shape = np.broadcast_shapes(*(np.shape(xj) for xj in x))
    return 0.0 if shape == () else np.zeros(shape)


def rotated_potential(trap: TrapConfig, rot: RotationConfig, t: float, x: Point):
    """W(t,x) = V(X(t,x)), 轴对称时直接返回 V(x) 且与 t 无关"""
    if is_axisymmetric(trap, rot):
        return potential_value(trap, x)
    return potential_value(trap, rotate_coords(t, x, rot))


def rotated_potential_gradient(trap: TrapConfig, rot: RotationConfig, t: float, x: Point) -> tuple:
    """grad V 在 X(t,x) 处的值(实验室分量)"""
    if is_axisymmetric(trap, rot):
        return potential_gradient(trap, x)
    return potential_gradient(trap, rotate_coords(t, x, rot))


def rotated_potential_time_derivative(trap: TrapConfig, rot: RotationConfig, t: float, x: Point):
    """dW/dt(t,x) = -(Omega^X).grad V(X), 轴对称时恒为零"""
    if is_axisymmetric(trap, rot):
        return _zeros_like_point(x)
    big_x = rotate_coords(t, x, rot)
    grad = potential_gradient(trap, big_x)
    advect = cross_omega(rot, big_x)
    return -sum(a * g for a, g in zip(advect, grad, strict=True))


def alpha_omega(gamma_min: float, omega_mag: float) -> float:
    """非对称陷阱爆破判据的指数阈值 sqrt(4 g^2 / (g^2 - |Omega|^2))

    Args:
        gamma_min: 最小陷阱频率, 须为正
        omega_mag: 旋转频率模, 须小于 gamma_min

    Raises:
        ValueError: gamma_min 不为正或 omega_mag 为负
        RotationExceedsTrapError: omega_mag >= gamma_min

    Example:
        >>> alpha_omega(1.0, 0.0)
        2.0
    """
    if not gamma_min > 0:
        raise ValueError(f'gamma_min 必须为正, 得到 {gamma_min}')
    if omega_mag < 0:
        raise ValueError(f'omega_mag 不能为负, 得到 {omega_mag}')
    if omega_mag >= gamma_min:
        raise RotationExceedsTrapError(f'|Omega|={omega_mag} 不小于 gamma_min={gamma_min}')
    g2 = gamma_min * gamma_min
    return math.sqrt(4.0 * g2 / (g2 - omega_mag * omega_mag))


__all__ = [
    'alpha_omega',
    'cross_omega',
    'potential_gradient',
    'potential_value',
    'rotate_coords',
    'rotated_potential',
    'rotated_potential_gradient',
    'rotated_potential_time_derivative',
    'theta_matrix',
]

# !/usr/bin/env python
"""
==============================================================
Description  : 数值默认参数管理模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

本模块集中管理求解器和诊断实验的全部数值阈值

from xtrnls import SolverDefaults

# 获取默认阈值
SolverDefaults.get_blowup_thresholds()   # (100.0, 1e-3)

# 临时修改
SolverDefaults.update_blowup_thresholds(grad_factor=50.0)
SolverDefaults.reset()
==============================================================
"""

from __future__ import annotations

from typing import Any

_INITIAL: dict[str, Any] = {}


class SolverDefaults:
    """求解器默认参数管理类"""

    # 每轴最少采样点数
    MIN_POINTS = 4
    # 谱尾部统计的截断比例 |k_j| >= TAIL_CUTOFF * k_max
    TAIL_CUTOFF = 0.75
    # 观测记录的分辨率告警阈值
    UNRESOLVED_TAIL = 0.1

    # 爆破检测: 梯度放大倍数与尾部阈值
    BLOWUP_GRAD_FACTOR = 100.0
    BLOWUP_TAIL = 1e-3
    # 检测时刻相对理论上界的宽限系数
    BLOWUP_SLACK = 1.25

    # scipy.fft 工作线程数, 1 保证记录逐字节可复现
    FFT_WORKERS = 1

    # 诊断实验容差
    MASS_TOL = 1e-10
    ENERGY_DRIFT_CONSTANT = 1.0  # tol = C * dt**2
    BALANCE_CONSTANT = 100.0
    FRAME_EQUIVALENCE_TOL = 1e-4
    ORDER_WINDOW = (1.8, 2.2)
    VIRIAL_FLOOR = 1e-7
    # 位力容差标定常数的放大系数
    VIRIAL_SLACK = 2.0
    # 线性各向同性情形方差与矩方程解的偏差
    ORACLE_TOL = 1e-6

    # 虚时间基态
    GROUND_DTAU = 0.01
    GROUND_MAX_ITER = 50000
    GROUND_CHECK_EVERY = 10

    # 并行运行的最大并发数
    MAX_CONCURRENT = 4

    @classmethod
    def get_blowup_thresholds(cls) -> tuple[float, float]:
        """获取爆破检测阈值

        Returns:
            tuple[float, float]: (梯度放大倍数, 谱尾部阈值)
        """
        return cls.BLOWUP_GRAD_FACTOR, cls.BLOWUP_TAIL

    @classmethod
    def update_blowup_thresholds(cls, grad_factor: float | None = None, tail: float | None = None) -> None:
        """更新全局爆破检测阈值

        Args:
            grad_factor: 梯度范数平方相对初值的放大倍数
            tail: 谱尾部比例阈值
        """
        for name, value in (('grad_factor', grad_factor), ('tail', tail)):
            if value is not None and value <= 0:
                raise ValueError(f'{name} 必须为正数, 得到 {value}')
        cls.BLOWUP_GRAD_FACTOR = grad_factor if grad_factor is not None else cls.BLOWUP_GRAD_FACTOR
        cls.BLOWUP_TAIL = tail if tail is not None else cls.BLOWUP_TAIL

    @classmethod
    def get_fft_workers(cls) -> int:
        """获取 scipy.fft 工作线程数"""
        return cls.FFT_WORKERS

    @classmethod
    def update_fft_workers(cls, workers: int) -> None:
        """更新 scipy.fft 工作线程数

        Note:
            大于1时变换内部的归约顺序不再固定, 观测记录不保证逐字节一致。
        """
        if workers < 1:
            raise ValueError(f'workers 必须 >= 1, 得到 {workers}')
        cls.FFT_WORKERS = int(workers)

    @classmethod
    def drift_tolerance(cls, dt: float, constant: float | None = None) -> float:
        """按 dt**2 缩放的守恒量漂移容差"""
        return (cls.ENERGY_DRIFT_CONSTANT if constant is None else constant) * dt * dt

    @classmethod
    def balance_tolerance(cls, h: float) -> float:
        """平衡律残差容差 C * h**2, h 取步长与记录间隔中的较大者"""
        return cls.BALANCE_CONSTANT * h * h

    @classmethod
    def snapshot(cls) -> dict[str, Any]:
        """返回当前全部参数的副本"""
        return {name: getattr(cls, name) for name in dir(cls) if name.isupper()}

    @classmethod
    def reset(cls) -> None:
        """恢复导入时的默认值"""
        for name, value in _INITIAL.items():
            setattr(cls, name, value)


_INITIAL.update(SolverDefaults.snapshot())


__all__ = [
    'SolverDefaults',
]

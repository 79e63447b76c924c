# !/usr/bin/env python
"""
==============================================================
Description  : 数值诊断实验模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

把守恒律, 位力恒等式, 坐标系等价性, 爆破判据与收敛阶转成带容差的数值检验:
- verify_virial: I 的二阶中心差分与位力右端比较
- verify_balance_laws: 质量, 能量漂移, 角动量平衡, 能量漂移恒等式
- frame_equivalence: 两个后端在 t_end 的场差
- blowup_experiment: 检测时刻与理论上界比较
- convergence_order: 相对细步长参考解的误差拟合阶数
- variance_moment_oracle: 线性各向同性陷阱下方差的三变量矩方程
==============================================================
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass, field, replace
from typing import Any

import numpy as np
from scipy.integrate import solve_ivp
from xtlog import mylog

from .defaults import SolverDefaults
from .errors import RnlsError, TooFewSamplesError, UnsupportedRotationAxisError
from .model import BlowupReport, ModelConfig, classify_blowup
from .observables import Frame, ObservableRecord, angular_momentum_balance, compute_record
from .propagators import Backend, RunResult, RunStatus, SimParams, run, run_many
from .spectral import ComplexField, Grid, l2_norm


@dataclass
class ExperimentReport:
    """实验报告: 每个残差都有对应容差与判定

    Attributes:
        name: 实验名称
        inputs: 输入摘要
        residuals: 命名残差
        tolerances: 命名容差
        verdicts: 命名判定
        notes: 文字说明
        extras: 其他可序列化结果
        runs: 实验内部的推进结果, 不参与序列化
    """

    name: str
    inputs: dict[str, Any] = field(default_factory=dict)
    residuals: dict[str, float] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)
    verdicts: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    extras: dict[str, Any] = field(default_factory=dict)
    runs: dict[str, RunResult] = field(default_factory=dict, repr=False)

    def check(self, name: str, residual: float, tolerance: float) -> bool:
        """登记一个残差并按 residual <= tolerance 判定"""
        verdict = bool(residual <= tolerance)
        self.residuals[name] = float(residual)
        self.tolerances[name] = float(tolerance)
        self.verdicts[name] = verdict
        level = 'debug' if verdict else 'warning'
        getattr(mylog, level)(f'{self.name} | {name}: residual={residual:.3e} tol={tolerance:.3e} pass={verdict}')
        return verdict

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def to_dict(self) -> dict[str, Any]:
        return {
            'name': self.name,
            'passed': self.passed,
            'inputs': self.inputs,
            'residuals': self.residuals,
            'tolerances': self.tolerances,
            'verdicts': self.verdicts,
            'notes': self.notes,
            'extras': self.extras,
        }


def _series(records: Sequence[ObservableRecord], name: str) -> np.ndarray:
    return np.array([getattr(r, name) for r in records], dtype=float)


def _sample_interval(records: Sequence[ObservableRecord]) -> float:
    return records[1].t - records[0].t


def _virial_mismatch(times: np.ndarray, variance: np.ndarray, rhs: np.ndarray) -> float:
    h = times[1] - times[0]
    second = (variance[2:] - 2.0 * variance[1:-1] + variance[:-2]) / (h * h)
    return float(np.max(np.abs(second - rhs[1:-1])))


def verify_virial(result: RunResult, dt_sample: float | None = None) -> ExperimentReport:
    """位力恒等式检验: I 的二阶中心差分对比 virial_rhs

    容差为 C1 h^2 + 1e-7, C1 由间隔 2h 的子序列残差标定。

    Raises:
        TooFewSamplesError: 记录少于5个
    """
    records = result.records
    if len(records) < 5:
        raise TooFewSamplesError(len(records), 5)
    times = _series(records, 't')
    variance = _series(records, 'variance')
    rhs = _series(records, 'virial_rhs')
    h = dt_sample or _sample_interval(records)

    report = ExperimentReport('virial', inputs={'samples': len(records), 'dt_sample': h, 'dt': result.dt})
    fine = _virial_mismatch(times, variance, rhs)
    coarse = _virial_mismatch(times[::2], variance[::2], rhs[::2])
    constant = SolverDefaults.VIRIAL_SLACK * coarse / (2.0 * h) ** 2
    report.extras.update({'residual_2h': coarse, 'calibrated_constant': constant, 'ratio': coarse / fine if fine > 0 else math.inf})
    report.check('virial', fine, constant * h * h + SolverDefaults.VIRIAL_FLOOR)

    model = result.model
    if model.nonlinearity.lam == 0.0 and model.trap.is_isotropic and model.trap.is_confining:
        first = records[0]
        oracle = variance_moment_oracle(first.variance, first.variance_rate, first.energy_zero, model.trap.gamma[0], times)
        report.check('moment_oracle', float(np.max(np.abs(variance - oracle))), SolverDefaults.ORACLE_TOL)
    return report


def energy_drift_identity(records: Sequence[ObservableRecord]) -> float:
    """旋转系能量 E_W(与 E0 相等)的中心差分导数与 int dW/dt rho = -lmom_source 的最大偏差"""
    if len(records) < 3:
        raise TooFewSamplesError(len(records), 3)
    times = _series(records, 't')
    energy = _series(records, 'energy_zero')
    source = _series(records, 'lmom_source')
    derivative = (energy[2:] - energy[:-2]) / (times[2:] - times[:-2])
    return float(np.max(np.abs(derivative + source[1:-1])))


def _unwrap(outcomes: Sequence[RunResult | BaseException]) -> list[RunResult]:
    """run_many 结果中的第一个异常直接抛出"""
    for outcome in outcomes:
        if isinstance(outcome, BaseException):
            raise outcome
    return list(outcomes)  # pyright: ignore[reportReturnType]


def _max_drift(values: np.ndarray) -> float:
    return float(np.max(np.abs(values - values[0])))


def verify_balance_laws(result: RunResult) -> ExperimentReport:
    """守恒律与平衡律检验: 质量, E_Omega, 角动量平衡; 轴对称时加 E0 与 L_Omega, 否则加能量漂移恒等式"""
    model = result.model
    records = result.records
    dt = result.dt
    report = ExperimentReport('balance_laws', inputs={'dt': dt, 'samples': len(records), 'backend': str(result.backend), 'axisymmetric': model.is_axisymmetric()})
    if result.status is not RunStatus.COMPLETED:
        report.notes.append(f'推进状态为 {result.status}, 守恒律只检验已有记录')

    mass = _series(records, 'mass')
    report.check('mass', _max_drift(mass) / mass[0], SolverDefaults.MASS_TOL)

    drift_tol = SolverDefaults.drift_tolerance(dt)
    if result.params.frame_of_record == Frame.LAB or model.is_axisymmetric():
        report.check('energy_omega', _max_drift(_series(records, 'energy_omega')), drift_tol)

    # 时间积分与中心差分都在记录间隔 h 上进行, 容差按 max(h, dt)^2 缩放
    h = _sample_interval(records) if len(records) >= 2 else dt
    report.inputs['dt_sample'] = h
    sampled_tol = SolverDefaults.balance_tolerance(max(h, dt))
    if len(records) >= 3:
        report.check('angular_momentum_balance', angular_momentum_balance(records), sampled_tol)
    else:
        report.notes.append('记录少于3个, 跳过角动量平衡')

    if model.is_axisymmetric():
        report.check('energy_zero', _max_drift(_series(records, 'energy_zero')), drift_tol)
        report.check('ang_mom', _max_drift(_series(records, 'ang_mom')), drift_tol)
    elif len(records) >= 3:
        report.check('energy_drift_identity', energy_drift_identity(records), sampled_tol)
    return report


def frame_equivalence(model: ModelConfig, grid: Grid, psi0: ComplexField, params: SimParams) -> ExperimentReport:
    """两个后端的交叉验证

    Raises:
        UnsupportedRotationAxisError: 旋转轴不是第三轴
    """
    if not model.rotation.is_axis_aligned:
        raise UnsupportedRotationAxisError(f'坐标系等价检验要求旋转轴为第三轴, 得到 {model.rotation.omega}')
    lab_params = replace(params, backend=Backend.LAB_FRAME, frame_of_record=Frame.LAB)
    rot_params = replace(params, backend=Backend.ROTATING_FRAME, frame_of_record=Frame.LAB)
    lab, rot = _unwrap(run_many([(psi0, model, lab_params), (psi0, model, rot_params)], max_concurrent=2))

    report = ExperimentReport('frame_equivalence', inputs={'dt': params.dt, 't_end': params.t_end, 'n': list(grid.n), 'omega': list(model.rotation.omega)})
    report.runs.update({'lab_frame': lab, 'rotating_frame': rot})
    report.extras.update({'status_lab': str(lab.status), 'status_rotating': str(rot.status)})
    if not (lab.completed and rot.completed and rot.final_frame == Frame.LAB):
        report.notes.append('至少一个后端未完成或最终场未能映射回实验室系')
        report.check('field_l2', math.inf, SolverDefaults.FRAME_EQUIVALENCE_TOL)
        return report

    difference = lab.final_field.values - rot.final_field.values
    report.check('field_l2', l2_norm(difference, grid), SolverDefaults.FRAME_EQUIVALENCE_TOL)
    for name in ('mass', 'grad_norm_sq', 'variance', 'energy_omega'):
        a, b = _series(lab.records, name), _series(rot.records, name)
        scale = 1.0 + float(np.max(np.abs(a)))
        report.check(f'series_{name}', float(np.max(np.abs(a - b))), SolverDefaults.FRAME_EQUIVALENCE_TOL * scale)
    return report


def blowup_experiment(model: ModelConfig, grid: Grid, psi0: ComplexField, params: SimParams) -> tuple[ExperimentReport, BlowupReport]:
    """爆破实验: 判定理论情形, 推进, 比较检测时刻与上界

    判据适用时推进时间至少延长到 slack * t_star_bound, 判定 t_detect <= slack * t_star_bound;
    不适用时只记录推进结果, 不给判定。
    """
    initial = compute_record(psi0, 0.0, model)
    blowup = classify_blowup(model, initial.energy_zero, initial.energy_omega, initial.variance, initial.variance_rate)
    slack = SolverDefaults.BLOWUP_SLACK

    if blowup.applicable and blowup.t_star_bound is not None:
        params = replace(params, t_end=max(params.t_end, slack * blowup.t_star_bound))
    result = run(psi0, model, params)

    grad = _series(result.records, 'grad_norm_sq')
    report = ExperimentReport('blowup', inputs={'dt': params.dt, 't_end': params.t_end, 'lambda': model.nonlinearity.lam, 'sigma': model.nonlinearity.sigma})
    report.runs['run'] = result
    report.extras.update({
        'status': str(result.status),
        't_detect': result.t_detect,
        't_star_bound': blowup.t_star_bound,
        'case': str(blowup.case),
        'grad_growth': float(np.max(grad) / grad[0]),
        'blowup_report': blowup.to_dict(),
    })

    if not blowup.applicable:
        report.notes.append(f'判据不适用: {blowup.reason}; 推进结果 {result.status} 仅作探索记录')
        mylog.info(f'blowup | not_applicable, 探索性推进结果 {result.status}')
        return report, blowup

    bound = blowup.t_star_bound or math.inf
    ratio = result.t_detect / bound if result.t_detect is not None else math.inf
    if result.status is RunStatus.UNRESOLVED:
        report.notes.append('分辨率不足先于梯度判据触发, 需要更细的网格')
    report.check('t_detect_over_bound', ratio, slack)
    return report, blowup


def convergence_order(
    model: ModelConfig,
    grid: Grid,
    psi0: ComplexField,
    t_end: float,
    dt_list: Sequence[float],
    backend: Backend | str = Backend.ROTATING_FRAME,
) -> ExperimentReport:
    """时间收敛阶测量

    以 min(dt_list)/8 的推进为参考解, 对 log(err) - log(dt) 作线性拟合得到阶数 p。

    Raises:
        TooFewSamplesError: dt 少于3个
    """
    if len(dt_list) < 3:
        raise TooFewSamplesError(len(dt_list), 3)
    backend = Backend.parse(backend)
    dts = sorted((float(dt) for dt in dt_list), reverse=True)
    reference_dt = dts[-1] / 8.0

    def params_for(dt: float) -> SimParams:
        steps = max(1, round(t_end / dt))
        return SimParams(dt=dt, t_end=t_end, backend=backend, sample_every=steps, frame_of_record=Frame.LAB)

    jobs = [(psi0, model, params_for(dt)) for dt in [*dts, reference_dt]]
    outcomes = _unwrap(run_many(jobs))
    *coarse, reference = outcomes

    report = ExperimentReport('convergence', inputs={'backend': str(backend), 't_end': t_end, 'dt_list': dts, 'reference_dt': reference_dt})
    report.runs.update({f'dt={dt:g}': res for dt, res in zip([*dts, reference_dt], outcomes, strict=True)})
    errors = [l2_norm(res.final_field.values - reference.final_field.values, grid) for res in coarse]
    order = float(np.polyfit(np.log(dts), np.log(errors), 1)[0])
    low, high = SolverDefaults.ORDER_WINDOW
    report.extras.update({'errors': errors, 'order': order, 'ratios': [a / b for a, b in zip(errors, errors[1:], strict=False)]})
    report.residuals['order'] = order
    report.tolerances['order'] = high
    report.verdicts['order'] = low <= order <= high
    mylog.info(f'convergence | backend={backend} order={order:.3f} errors={errors}')
    return report


def variance_moment_oracle(i0: float, di0: float, energy: float, gamma: float, times: Sequence[float]) -> np.ndarray:
    """线性(lambda=0)各向同性陷阱下方差的矩方程

    I' = D, D' = 2E - 4 gamma^2 I, E 为守恒的 E0, 用 solve_ivp 积分。
    """
    times = np.asarray(times, dtype=float)

    def rhs(_t: float, y: np.ndarray) -> list[float]:
        return [y[1], 2.0 * energy - 4.0 * gamma * gamma * y[0]]

    solution = solve_ivp(rhs, (float(times[0]), float(times[-1])), [i0, di0], t_eval=times, method='DOP853', rtol=1e-12, atol=1e-14)
    if not solution.success:
        raise RnlsError(f'矩方程积分失败: {solution.message}')
    return solution.y[0]


__all__ = [
    'ExperimentReport',
    'blowup_experiment',
    'convergence_order',
    'energy_drift_identity',
    'frame_equivalence',
    'variance_moment_oracle',
    'verify_balance_laws',
    'verify_virial',
]

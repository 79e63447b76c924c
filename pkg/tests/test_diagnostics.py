# !/usr/bin/env python
"""
==============================================================
Description  : 诊断实验测试
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls
==============================================================
"""

from __future__ import annotations

import math
from dataclasses import replace

import numpy as np
import pytest
from scipy.optimize import brentq

from xtrnls.defaults import SolverDefaults
from xtrnls.diagnostics import (
    ExperimentReport,
    blowup_experiment,
    convergence_order,
    energy_drift_identity,
    frame_equivalence,
    variance_moment_oracle,
    verify_balance_laws,
    verify_virial,
)
from xtrnls.errors import TooFewSamplesError, UnsupportedRotationAxisError
from xtrnls.model import BlowupCase, ModelConfig, NonlinearityConfig, RotationConfig, TrapConfig
from xtrnls.observables import CSV_COLUMNS, ObservableRecord, compute_record
from xtrnls.propagators import RunStatus, SimParams, run
from xtrnls.spectral import ComplexField, make_grid

from .conftest import CASE_I_AMPLITUDE, gaussian_values


def _record(t: float, energy_zero: float, lmom_source: float) -> ObservableRecord:
    values = dict.fromkeys(CSV_COLUMNS, 0.0)
    values.update(t=t, energy_zero=energy_zero, lmom_source=lmom_source)
    return ObservableRecord(**values)


def _moving_gaussian(grid, center=(0.5, 0.3), momentum=(0.4, -0.2)) -> ComplexField:
    x1, x2 = grid.mesh
    return ComplexField(grid, gaussian_values(grid, center) * np.exp(1j * (momentum[0] * x1 + momentum[1] * x2)))


def test_report_check_records_everything():
    report = ExperimentReport('demo')
    assert report.check('a', 1e-9, 1e-8)
    assert not report.check('b', 2.0, 1.0)
    assert not report.passed
    data = report.to_dict()
    assert data['verdicts'] == {'a': True, 'b': False}
    assert data['tolerances']['b'] == 1.0
    assert 'runs' not in data


def test_energy_drift_identity_on_exact_series():
    times = np.linspace(0.0, 1.0, 11)
    # E = sin t, 源项 = -cos t, 中心差分误差约 h^2/6
    records = [_record(t, math.sin(t), -math.cos(t)) for t in times]
    assert energy_drift_identity(records) < 0.1**2 / 6 * 1.01


def test_energy_drift_identity_needs_three_records():
    with pytest.raises(TooFewSamplesError):
        energy_drift_identity([_record(0.0, 0.0, 0.0)] * 2)


def test_balance_laws_anisotropic_rotating_trap(grid64):
    model = ModelConfig(2, TrapConfig((1.0, 1.2)), RotationConfig.planar(0.3), NonlinearityConfig(0.5, 1.0))
    result = run(_moving_gaussian(grid64), model, SimParams(dt=1e-3, t_end=0.3, sample_every=10))
    report = verify_balance_laws(result)
    assert set(report.verdicts) == {'mass', 'energy_omega', 'angular_momentum_balance', 'energy_drift_identity'}
    assert report.passed, report.to_dict()


def test_balance_laws_axisymmetric_trap(grid64, make_model):
    model = make_model(gamma=(1.0, 1.0), omega=0.5, lam=1.0)
    result = run(_moving_gaussian(grid64), model, SimParams(dt=1e-3, t_end=0.2, sample_every=10, backend='lab'))
    report = verify_balance_laws(result)
    assert {'energy_zero', 'ang_mom'} <= set(report.verdicts)
    assert report.passed, report.to_dict()


def test_balance_tolerance_follows_sample_interval(grid64):
    model = ModelConfig(2, TrapConfig((1.0, 2.0)), RotationConfig.planar(0.5), NonlinearityConfig(1.0, 1.0))
    result = run(_moving_gaussian(grid64), model, SimParams(dt=1e-3, t_end=1.0, sample_every=50))
    coarse = replace(result, records=result.records[::2])

    fine_report, coarse_report = verify_balance_laws(result), verify_balance_laws(coarse)
    assert fine_report.inputs['dt_sample'] == pytest.approx(0.05)
    assert coarse_report.inputs['dt_sample'] == pytest.approx(0.1)
    for report in (fine_report, coarse_report):
        assert report.verdicts['angular_momentum_balance'], report.to_dict()
        assert report.verdicts['energy_drift_identity'], report.to_dict()
    # 梯形时间积分误差随记录间隔平方增长
    ratio = coarse_report.residuals['angular_momentum_balance'] / fine_report.residuals['angular_momentum_balance']
    assert 3.0 <= ratio <= 5.0


def test_virial_identity_holds(grid64, make_model):
    model = make_model(gamma=(1.0, 1.3), omega=0.2, lam=-0.5)
    psi = ComplexField(grid64, gaussian_values(grid64, (0.7, -0.4), width=1.1))
    result = run(psi, model, SimParams(dt=1e-3, t_end=0.5, sample_every=10))
    report = verify_virial(result)
    assert report.passed, report.to_dict()
    assert report.inputs['dt_sample'] == pytest.approx(0.01)
    assert 'moment_oracle' not in report.verdicts


def test_virial_residual_scales_with_sample_interval(grid64, make_model):
    model = make_model(gamma=(1.0, 1.3), omega=0.2, lam=-0.5)
    psi = ComplexField(grid64, gaussian_values(grid64, (0.7, -0.4), width=1.1))
    report = verify_virial(run(psi, model, SimParams(dt=1e-3, t_end=1.0, sample_every=50)))
    assert report.passed, report.to_dict()
    # 二阶中心差分截断误差主导, 间隔加倍残差约增至4倍
    assert 3.0 <= report.extras['ratio'] <= 5.0


def test_virial_needs_five_records(grid64, make_model):
    result = run(ComplexField(grid64, gaussian_values(grid64)), make_model(), SimParams(dt=1e-2, t_end=0.03))
    with pytest.raises(TooFewSamplesError):
        verify_virial(result)


def test_variance_moment_oracle_closed_form():
    # I' = D, D' = 2E - 4 I 的解 I = E/2 + (I0 - E/2) cos 2t + D0/2 sin 2t
    times = np.linspace(0.0, 2.0, 41)
    oracle = variance_moment_oracle(0.8, 0.3, 1.0, 1.0, times)
    expected = 0.5 + 0.3 * np.cos(2 * times) + 0.15 * np.sin(2 * times)
    np.testing.assert_allclose(oracle, expected, atol=1e-10)


def test_linear_isotropic_run_matches_moment_oracle(grid64, make_model):
    model = make_model(gamma=(1.0, 1.0), omega=0.5)
    psi = ComplexField(grid64, gaussian_values(grid64, (1.0, 0.0), width=0.9))
    result = run(psi, model, SimParams(dt=1e-3, t_end=1.0, sample_every=20))
    report = verify_virial(result)
    assert report.verdicts['moment_oracle'], report.to_dict()


def test_frame_equivalence_rejects_tilted_axis():
    model = ModelConfig(3, TrapConfig((1.0, 1.0, 1.0)), RotationConfig((0.2, 0.0, 0.4)))
    grid = make_grid(3, 8, 4.0)
    with pytest.raises(UnsupportedRotationAxisError):
        frame_equivalence(model, grid, ComplexField(grid, gaussian_values(grid)), SimParams(dt=1e-2, t_end=0.1))


def test_blowup_not_applicable_for_defocusing(grid64, make_model):
    model = make_model(lam=1.0)
    psi = ComplexField(grid64, gaussian_values(grid64, amplitude=2.0))
    report, blowup = blowup_experiment(model, grid64, psi, SimParams(dt=1e-2, t_end=0.2))
    assert blowup.case is BlowupCase.NOT_APPLICABLE
    assert report.verdicts == {}
    assert report.extras['status'] == RunStatus.COMPLETED
    assert report.notes


@pytest.mark.slow
def test_frame_equivalence_anisotropic_trap():
    grid = make_grid(2, 128, 8.0)
    model = ModelConfig(2, TrapConfig((1.0, 1.3)), RotationConfig.planar(0.5), NonlinearityConfig(1.0, 1.0))
    psi = ComplexField(grid, gaussian_values(grid, (0.5, -0.5), width=0.9))
    report = frame_equivalence(model, grid, psi, SimParams(dt=1e-3, t_end=1.0, sample_every=100))
    assert report.passed, report.to_dict()
    assert report.residuals['field_l2'] <= 1e-4


@pytest.mark.slow
def test_frame_equivalence_standard_config_improves_with_dt():
    grid = make_grid(2, 128, 8.0)
    model = ModelConfig(2, TrapConfig((1.0, 2.0)), RotationConfig.planar(0.5), NonlinearityConfig(1.0, 1.0))
    psi = ComplexField(grid, gaussian_values(grid, (0.5, -0.5), width=0.9))
    residuals = []
    for dt in (2e-3, 1e-3):
        report = frame_equivalence(model, grid, psi, SimParams(dt=dt, t_end=1.0, sample_every=100))
        residuals.append(report.residuals['field_l2'])
    assert max(residuals) <= 1e-4
    assert residuals[1] < residuals[0]


@pytest.mark.slow
@pytest.mark.parametrize('backend', ['rotating_frame', 'lab_frame'])
def test_second_order_convergence(grid64, backend):
    model = ModelConfig(2, TrapConfig((1.0, 1.2)), RotationConfig.planar(0.4), NonlinearityConfig(1.0, 1.0))
    psi = _moving_gaussian(grid64)
    report = convergence_order(model, grid64, psi, 1.0, (0.02, 0.01, 0.005), backend=backend)
    assert 1.8 <= report.extras['order'] <= 2.2
    assert report.passed


def test_convergence_needs_three_step_sizes(grid64, make_model):
    with pytest.raises(TooFewSamplesError):
        convergence_order(make_model(), grid64, ComplexField(grid64, gaussian_values(grid64)), 0.1, (0.02, 0.01))


@pytest.mark.slow
def test_blowup_axisymmetric_case():
    # 半宽5: 初始高斯在边界处约 e^-12.5, 网格分辨率足以让梯度判据先于谱尾部判据触发
    grid = make_grid(2, 256, 5.0)
    model = ModelConfig(2, TrapConfig((1.0, 1.0)), RotationConfig.planar(0.5), NonlinearityConfig(-1.0, 1.0))
    psi = ComplexField(grid, gaussian_values(grid, amplitude=CASE_I_AMPLITUDE))
    report, blowup = blowup_experiment(model, grid, psi, SimParams(dt=1e-4, t_end=1.0, sample_every=100))
    assert blowup.case is BlowupCase.AXISYMMETRIC_CASE_I
    assert blowup.t_star_bound == pytest.approx(math.sqrt(CASE_I_AMPLITUDE**2 / 2), rel=1e-6)
    assert report.extras['status'] == RunStatus.BLOWUP_DETECTED
    assert report.runs['run'].records[-1].tail < SolverDefaults.BLOWUP_TAIL
    assert report.passed, report.to_dict()

    # 同一初值取散焦非线性, 梯度范数有界
    control_model = replace(model, nonlinearity=NonlinearityConfig(1.0, 1.0))
    control = run(psi, control_model, SimParams(dt=1e-3, t_end=1.25 * blowup.t_star_bound, sample_every=100))
    assert control.status is RunStatus.COMPLETED
    grad = control.column('grad_norm_sq')
    assert max(grad) / grad[0] < 2.0


@pytest.mark.slow
def test_blowup_nonsymmetric_case():
    # 超临界塌缩更尖锐, 取半宽4使 k_max 加倍
    grid = make_grid(2, 256, 4.0)
    model = ModelConfig(2, TrapConfig((1.0, 1.5)), RotationConfig.planar(0.5), NonlinearityConfig(-1.0, 1.2))

    def eomega(amplitude: float) -> float:
        return compute_record(ComplexField(grid, gaussian_values(grid, amplitude=amplitude)), 0.0, model).energy_omega

    amplitude = brentq(lambda a: eomega(a) + 1.0, 1.0, 10.0)
    psi = ComplexField(grid, gaussian_values(grid, amplitude=amplitude))
    report, blowup = blowup_experiment(model, grid, psi, SimParams(dt=1e-4, t_end=1.0, sample_every=100))
    assert blowup.case is BlowupCase.NONSYMMETRIC_CASE_II
    assert report.extras['status'] == RunStatus.BLOWUP_DETECTED
    assert report.runs['run'].records[-1].tail < SolverDefaults.BLOWUP_TAIL
    assert report.passed, report.to_dict()

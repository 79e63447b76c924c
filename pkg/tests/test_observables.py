# !/usr/bin/env python
"""
==============================================================
Description  : 观测量与残差测试
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls
==============================================================
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from xtrnls.errors import TooFewSamplesError, UnresolvedFieldError
from xtrnls.model import RotationConfig, potential_value
from xtrnls.observables import (
    CSV_COLUMNS,
    Frame,
    ObservableRecord,
    angular_momentum_balance,
    compute_record,
    continuity_residual,
    current_density,
    density,
    energy_magnetic_form,
    energy_zero,
)
from xtrnls.propagators import FrameDirection, map_frame
from xtrnls.spectral import ComplexField, integrate, make_grid


def _record(t: float, ang_mom: float = 0.0, lmom_source: float = 0.0) -> ObservableRecord:
    values = dict.fromkeys(CSV_COLUMNS, 0.0)
    values.update(t=t, ang_mom=ang_mom, lmom_source=lmom_source)
    return ObservableRecord(**values)


def test_csv_column_order():
    assert ','.join(CSV_COLUMNS) == 't,mass,energy_omega,energy_zero,energy_magnetic,ang_mom,variance,variance_rate,grad_norm_sq,virial_rhs,lmom_source,tail'


def test_gaussian_record(make_gaussian, make_model, grid64):
    model = make_model(gamma=(1.0, 1.0), omega=0.5)
    record = compute_record(make_gaussian(grid64), 0.0, model)
    assert record.mass == pytest.approx(1.0, abs=1e-12)
    # 实高斯无流
    assert record.ang_mom == pytest.approx(0.0, abs=1e-14)
    assert record.variance_rate == pytest.approx(0.0, abs=1e-14)
    assert record.energy_zero == pytest.approx(1.0, abs=1e-10)
    assert record.energy_omega == pytest.approx(record.energy_zero, abs=1e-14)
    assert record.variance == pytest.approx(0.5, abs=1e-10)
    assert record.lmom_source == 0.0
    assert record.resolved


def test_vortex_eigenstate_observables(vortex, make_model):
    model = make_model(gamma=(1.0, 1.0), omega=0.5)
    record = compute_record(vortex, 0.0, model)
    assert record.mass == pytest.approx(1.0, abs=1e-12)
    assert record.energy_zero == pytest.approx(2.0, abs=1e-10)
    # L_Omega = int (Omega^x).J = |Omega| <L_z>
    assert record.ang_mom == pytest.approx(0.5, abs=1e-10)
    assert record.energy_omega == pytest.approx(1.5, abs=1e-10)
    assert record.energy_magnetic == pytest.approx(1.5, abs=1e-10)


def test_magnetic_form_identity_on_random_fields(make_model, grid64):
    rng = np.random.default_rng(20251102)
    x1, x2 = grid64.mesh
    for _ in range(50):
        gamma = tuple(rng.uniform(0.8, 2.0, size=2))
        omega = rng.uniform(-0.7, 0.7) * min(gamma)
        model = make_model(gamma=gamma, omega=omega, lam=rng.uniform(-1, 1), sigma=rng.choice([0.5, 1.0, 1.5]))
        c1, c2, k1, k2 = rng.uniform(-1.5, 1.5, size=4)
        width = rng.uniform(0.7, 1.4)
        envelope = np.exp(-((x1 - c1) ** 2 + (x2 - c2) ** 2) / (2 * width * width))
        psi = ComplexField(grid64, rng.uniform(0.5, 2.0) * envelope * np.exp(1j * (k1 * x1 + k2 * x2 + 0.3 * x1 * x2)))
        record = compute_record(psi, 0.0, model)
        assert abs(record.energy_magnetic - record.energy_omega) <= 1e-8 * (1 + abs(record.energy_omega))
        assert energy_magnetic_form(psi, model) == pytest.approx(record.energy_magnetic, abs=1e-12)


def test_energy_zero_matches_record(make_gaussian, make_model, grid64):
    model = make_model(gamma=(1.0, 1.3), lam=0.7, sigma=1.5)
    psi = make_gaussian(grid64, center=(0.4, -0.3), amplitude=1.4)
    assert energy_zero(psi, model) == pytest.approx(compute_record(psi, 0.0, model).energy_zero, rel=1e-12)


def test_virial_rhs_for_quadratic_trap(make_gaussian, make_model, grid64):
    model = make_model(gamma=(1.0, 1.7), lam=-0.5, sigma=1.0)
    psi = make_gaussian(grid64, center=(0.5, 0.2), amplitude=1.2)
    record = compute_record(psi, 0.0, model)
    rho = np.abs(psi.values) ** 2
    trap_term = integrate(potential_value(model.trap, grid64.mesh) * rho, grid64)
    nonlinear = integrate(rho**2, grid64)
    expected = record.grad_norm_sq + model.nonlinearity.lam * nonlinear - 2 * trap_term
    assert record.virial_rhs == pytest.approx(expected, rel=1e-12)


def test_symmetric_trap_has_no_momentum_source(make_gaussian, make_model, grid64):
    model = make_model(gamma=(1.2, 1.2), omega=0.8, lam=1.0)
    record = compute_record(make_gaussian(grid64, center=(1.0, -0.5)), 0.7, model)
    assert record.lmom_source == 0.0


def test_anisotropic_trap_momentum_source(make_gaussian, make_model, grid64):
    model = make_model(gamma=(1.0, 2.0), omega=0.5)
    psi = make_gaussian(grid64, center=(1.0, 1.0))
    record = compute_record(psi, 0.0, model)
    # int rho (Omega^x).grad V = w (g2^2 - g1^2) <x1 x2>
    assert record.lmom_source == pytest.approx(0.5 * (4.0 - 1.0) * 1.0, rel=1e-10)


def test_rotating_frame_record_matches_lab_record(make_gaussian, make_model, grid64):
    model = make_model(gamma=(1.0, 1.6), omega=0.5, lam=0.8)
    psi = make_gaussian(grid64, center=(1.0, -0.5), width=0.9)
    psi = ComplexField(grid64, psi.values * np.exp(0.4j * grid64.mesh[0]))
    t = 0.9
    rotated = map_frame(psi, t, model.rotation, FrameDirection.LAB_TO_ROTATING)
    lab = compute_record(psi, t, model)
    via_rotating = compute_record(rotated, t, model, frame=Frame.ROTATING)
    for name in CSV_COLUMNS:
        assert getattr(via_rotating, name) == pytest.approx(getattr(lab, name), rel=1e-8, abs=1e-9), name


def test_unresolved_field_is_flagged(make_model):
    grid = make_grid(2, 16, 1.0)
    alternating = (-1.0) ** np.arange(16)
    psi = ComplexField(grid, np.outer(alternating, np.ones(16)) + 0.1)
    model = make_model()
    assert not compute_record(psi, 0.0, model).resolved
    with pytest.raises(UnresolvedFieldError):
        energy_magnetic_form(psi, model)


def test_current_density_of_plane_wave():
    grid = make_grid(2, 16, math.pi)
    psi = ComplexField.from_function(grid, lambda a, b: np.exp(1j * (2 * a - b)))
    current = current_density(psi)
    np.testing.assert_allclose(current[0], 2.0, atol=1e-12)
    np.testing.assert_allclose(current[1], -1.0, atol=1e-12)
    np.testing.assert_allclose(density(psi), 1.0, atol=1e-14)


def test_density_integrates_to_mass(make_gaussian, grid64):
    psi = make_gaussian(grid64, amplitude=3.0)
    rho = density(psi)
    assert rho.dtype == np.float64
    assert integrate(rho, grid64) == pytest.approx(9.0, rel=1e-12)


def test_continuity_residual_of_stationary_state(make_gaussian, grid64):
    psi = make_gaussian(grid64)
    dt = 1e-3
    later = ComplexField(grid64, psi.values * np.exp(-1j * dt))
    assert continuity_residual(psi, later, dt, RotationConfig.planar(0.5)) <= 1e-8


def test_angular_momentum_balance_constant():
    records = [_record(t, ang_mom=0.3) for t in np.linspace(0, 1, 11)]
    assert angular_momentum_balance(records) == pytest.approx(0.0, abs=1e-15)


def test_angular_momentum_balance_with_linear_source():
    times = np.linspace(0, 1, 21)
    records = [_record(t, ang_mom=-(t**2), lmom_source=2 * t) for t in times]
    assert angular_momentum_balance(records) == pytest.approx(0.0, abs=1e-14)
    # 显式传入的源项覆盖记录中的值
    assert angular_momentum_balance(records, sources=[0.0] * len(records)) == pytest.approx(1.0)


def test_angular_momentum_balance_needs_three_records():
    with pytest.raises(TooFewSamplesError):
        angular_momentum_balance([_record(0.0), _record(0.1)])


def test_variance_rate_matches_independent_evaluation(grid64, make_model):
    x1, x2 = grid64.mesh
    envelope = np.exp(-((x1 - 0.5) ** 2 + (x2 - 0.3) ** 2) / 2) / math.sqrt(math.pi)
    psi = ComplexField(grid64, envelope * np.exp(1j * (0.4 * x1 - 0.2 * x2)))
    record = compute_record(psi, 0.0, make_model(gamma=(1.0, 1.3), omega=0.4, lam=0.5))

    # 用 numpy.fft 独立求导, 计算 Im int conj(psi) x.grad(psi)
    coeffs = np.fft.fft2(psi.values)
    h = grid64.spacing[0]
    k = 2 * math.pi * np.fft.fftfreq(64, d=h)
    d1 = np.fft.ifft2(1j * k[:, None] * coeffs)
    d2 = np.fft.ifft2(1j * k[None, :] * coeffs)
    direct = float(np.sum(np.conj(psi.values) * (x1 * d1 + x2 * d2)).imag) * h * h
    assert record.variance_rate == pytest.approx(direct, rel=1e-9)
    # 运动高斯 d/dt <|x|^2> = 2 p.c, 按 int x.J 记录为 p.c
    assert record.variance_rate == pytest.approx(0.4 * 0.5 - 0.2 * 0.3, abs=1e-8)


def _coherent_state(grid, t: float, c0=(1.0, 0.5)) -> ComplexField:
    """gamma=1 线性谐振子的相干态, 中心 c0 cos t, 动量 -c0 sin t, 略去全局相位"""
    x1, x2 = grid.mesh
    c1, c2 = c0[0] * math.cos(t), c0[1] * math.cos(t)
    p1, p2 = -c0[0] * math.sin(t), -c0[1] * math.sin(t)
    values = np.exp(-((x1 - c1) ** 2 + (x2 - c2) ** 2) / 2 + 1j * (p1 * x1 + p2 * x2)) / math.sqrt(math.pi)
    return ComplexField(grid, values)


def test_continuity_residual_halves_quadratically(grid64):
    t0 = 0.7
    rot = RotationConfig.planar(0.0)
    residuals = [continuity_residual(_coherent_state(grid64, t0), _coherent_state(grid64, t0 + dt), dt, rot) for dt in (0.02, 0.01)]
    assert residuals[1] < 1e-3
    assert 3.0 <= residuals[0] / residuals[1] <= 5.0

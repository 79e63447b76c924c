# !/usr/bin/env python
"""
==============================================================
Description  : 时间推进调度模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

本模块提供:
- run: 按 SimParams 推进到 t_end, 每 sample_every 步记录观测量,
  每步以单次FFT监控梯度范数与谱尾部, 触发时提前停止
- run_many: 以信号量限制并发, 在工作线程中执行多个互相独立的推进,
  结果(或异常)按输入顺序返回

from xtrnls.propagators import SimParams, run

result = run(psi0, model, SimParams(dt=1e-3, t_end=1.0, backend='lab'))
result.status        # RunStatus.COMPLETED
==============================================================
"""

from __future__ import annotations

import asyncio
import math
from collections.abc import Sequence

from xtlog import mylog

from ..defaults import SolverDefaults
from ..errors import RnlsError
from ..model import ModelConfig
from ..observables import Frame, ObservableRecord, compute_record
from ..spectral import ComplexField, spectral_monitor
from .frame import FrameDirection, map_frame
from .lab import LabFrameStepper
from .params import Backend, RunResult, RunStatus, SimParams
from .rotating import RotatingFrameStepper

RunJob = tuple[ComplexField, ModelConfig, SimParams]


def make_stepper(model: ModelConfig, psi0: ComplexField, params: SimParams) -> RotatingFrameStepper | LabFrameStepper:
    """按后端构造推进器"""
    if params.backend is Backend.LAB_FRAME:
        return LabFrameStepper(model, psi0.grid, params.dt)
    return RotatingFrameStepper(model, psi0.grid, params.dt)


def _to_frame(psi: ComplexField, t: float, model: ModelConfig, source: Frame, target: Frame) -> tuple[ComplexField, Frame]:
    """把最终场映射到记录坐标系, 无法映射时保留原坐标系"""
    if source == target:
        return psi, source
    direction = FrameDirection.ROTATING_TO_LAB if target == Frame.LAB else FrameDirection.LAB_TO_ROTATING
    try:
        return map_frame(psi, t, model.rotation, direction), target
    except RnlsError as err:
        mylog.warning(f'run | 最终场保留在 {source} 坐标系: {err.message}')
        return psi, source


def run(psi0: ComplexField, model: ModelConfig, params: SimParams) -> RunResult:
    """时间推进主循环

    Args:
        psi0: 初始场(实验室系, t=0 时两坐标系重合)
        model: 模型配置
        params: 推进参数

    Returns:
        RunResult: 推进结果

    Raises:
        ConfigValidationError: 模型校验失败
        UnsupportedRotationAxisError: 实验室系后端且旋转轴不是第三轴

    Note:
        每步先检查谱尾部与有限性(分辨率不足), 再检查梯度范数放大倍数(爆破),
        因此分辨率不足永远不会被报告为爆破。
    """
    model.validate()
    grid = psi0.grid
    stepper = make_stepper(model, psi0, params)
    field_frame = Frame.ROTATING if params.backend is Backend.ROTATING_FRAME else Frame.LAB
    view = params.frame_of_record
    n_steps = params.n_steps
    dt = params.dt
    factor, tail_limit = params.blowup_grad_factor, params.blowup_tail

    mylog.info(f'run | backend={params.backend} steps={n_steps} dt={dt} n={grid.n} L={grid.halfwidth}')

    def record(values, t: float) -> ObservableRecord:
        return compute_record(ComplexField(grid, values), t, model, frame=field_frame, view=view)

    values = psi0.copy_values()
    initial_grad, initial_tail = spectral_monitor(values, grid)
    records: list[ObservableRecord] = [record(values, 0.0)]
    status = RunStatus.COMPLETED
    t_detect: float | None = None
    t = 0.0
    last_recorded = 0

    if not math.isfinite(initial_tail) or initial_tail > tail_limit:
        status = RunStatus.UNRESOLVED
        mylog.warning(f'run | 初始场分辨率不足 tail={initial_tail:.3e}')
        n_steps = 0

    for step in range(1, n_steps + 1):
        values = stepper.step(values, t)
        t = step * dt
        grad_sq, tail = spectral_monitor(values, grid)
        if not (math.isfinite(grad_sq) and math.isfinite(tail)) or tail > tail_limit:
            status = RunStatus.UNRESOLVED
            mylog.warning(f'run | t={t:.6g} 分辨率不足 tail={tail:.3e}, 提前停止')
            break
        if grad_sq > factor * initial_grad:
            status = RunStatus.BLOWUP_DETECTED
            t_detect = t
            mylog.warning(f'run | t={t:.6g} 检测到爆破 grad_norm_sq={grad_sq:.6g} (初值 {initial_grad:.6g})')
            break
        if step % params.sample_every == 0:
            records.append(record(values, t))
            last_recorded = step

    final_step = round(t / dt)
    if status is RunStatus.BLOWUP_DETECTED and final_step != last_recorded:
        records.append(record(values, t))

    final_field, final_frame = ComplexField(grid, values), field_frame
    if status is not RunStatus.UNRESOLVED:
        final_field, final_frame = _to_frame(final_field, t, model, field_frame, view)

    mylog.info(f'run | status={status} t_final={t:.6g} records={len(records)}')
    return RunResult(
        status=status,
        t_final=t,
        records=tuple(records),
        t_detect=t_detect,
        final_field=final_field,
        final_frame=final_frame,
        params=params,
        model=model,
    )


async def run_many_async(jobs: Sequence[RunJob], max_concurrent: int | None = None) -> list[RunResult | BaseException]:
    """并发执行多个推进, 结果按输入顺序返回, 单个失败以异常对象占位"""
    semaphore = asyncio.Semaphore(max_concurrent or SolverDefaults.MAX_CONCURRENT)

    async def _guarded(job: RunJob) -> RunResult:
        async with semaphore:
            return await asyncio.to_thread(run, *job)

    return await asyncio.gather(*[_guarded(job) for job in jobs], return_exceptions=True)


def run_many(jobs: Sequence[RunJob], max_concurrent: int | None = None) -> list[RunResult | BaseException]:
    """run_many_async 的同步入口"""
    if not jobs:
        return []
    return asyncio.run(run_many_async(jobs, max_concurrent))


__all__ = ['make_stepper', 'run', 'run_many', 'run_many_async']

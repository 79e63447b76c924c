# !/usr/bin/env python
"""
==============================================================
Description  : 运行配置解析模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

配置为扁平的 key = value 文本, 每行一个键, # 开头为注释,
列表值以逗号分隔。键名使用带点的规范形式, 常用键接受短别名:

    dimension = 2
    n = 64, 64
    box = 8, 8
    gamma = 1, 1
    omega = 0.5
    lambda = 1
    sigma = 1
    dt = 1e-3
    t_end = 1
    backend = lab

from xtrnls.io import parse_config, build_model

cfg = parse_config(text)
model = build_model(cfg)
==============================================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from xtlog import mylog

from ..errors import ConfigParseError, ConfigValidationError, NonPositiveBoxError, RnlsError
from ..model import LatticeConfig, ModelConfig, NonlinearityConfig, RotationConfig, TrapConfig
from ..observables import Frame
from ..propagators import Backend, SimParams, imaginary_time_ground_state
from ..spectral import ComplexField, Grid, make_grid
from .snapshot import read_snapshot

REQUIRED = object()

EXPERIMENTS = ('simulate', 'equivalence', 'blowup', 'virial', 'convergence', 'groundstate', 'alpha')
INITIAL_KINDS = ('gaussian', 'vortex', 'ground_state', 'file')


@dataclass(frozen=True)
class ConfigKey:
    """单个配置键的说明"""

    name: str
    kind: str
    default: Any = REQUIRED
    alias: str | None = None
    doc: str = ''

    @property
    def label(self) -> str:
        """错误信息中使用的名称, 有别名时取别名"""
        return self.alias or self.name


CONFIG_KEYS: tuple[ConfigKey, ...] = (
    ConfigKey('dimension', 'int', doc='空间维数, 2 或 3'),
    ConfigKey('grid.n', 'ints', alias='n', doc='每轴采样点数, 2的幂; 单值表示各轴相同'),
    ConfigKey('grid.box', 'floats', alias='box', doc='每轴半宽 L, 计算域 [-L, L)'),
    ConfigKey('trap.gamma', 'floats', alias='gamma', doc='各轴陷阱频率'),
    ConfigKey('trap.repulsive', 'bools', (), doc='各轴排斥标志, 缺省全为 false'),
    ConfigKey('trap.lattice.amplitude', 'float', None, doc='光晶格幅度 a, 缺省无晶格'),
    ConfigKey('trap.lattice.wavevector', 'floats', None, doc='光晶格波矢 q'),
    ConfigKey('rotation.omega', 'floats', (0.0,), alias='omega', doc='二维为标量(绕第三轴), 三维为3分量向量'),
    ConfigKey('nonlinearity.lambda', 'float', 0.0, alias='lambda', doc='非线性系数, 负值为聚焦'),
    ConfigKey('nonlinearity.sigma', 'float', 1.0, alias='sigma', doc='非线性指数, 三维要求 sigma < 2'),
    ConfigKey('time.dt', 'float', alias='dt', doc='时间步长'),
    ConfigKey('time.t_end', 'float', alias='t_end', doc='终止时间'),
    ConfigKey('time.sample_every', 'int', 1, alias='sample_every', doc='观测记录间隔步数'),
    ConfigKey('solver.backend', 'str', 'rotating_frame', alias='backend', doc='lab|lab_frame|rotating|rotating_frame'),
    ConfigKey('solver.frame_of_record', 'str', 'lab', doc='记录与最终快照所在坐标系 lab|rotating'),
    ConfigKey('solver.blowup_grad_factor', 'float', None, doc='梯度范数平方放大阈值, 缺省取 SolverDefaults'),
    ConfigKey('solver.blowup_tail', 'float', None, doc='爆破检测的谱尾部阈值, 缺省取 SolverDefaults'),
    ConfigKey('initial.kind', 'str', 'gaussian', doc='gaussian|vortex|ground_state|file'),
    ConfigKey('initial.center', 'floats', None, doc='初始包中心, 缺省原点'),
    ConfigKey('initial.width', 'float', 1.0, doc='初始包宽度 w'),
    ConfigKey('initial.amplitude', 'float', 1.0, doc='初始包幅度 A, A=1 时质量为1'),
    ConfigKey('initial.path', 'str', None, doc='kind=file 时的快照路径'),
    ConfigKey('output.dir', 'str', 'output', alias='output_dir', doc='输出目录'),
    ConfigKey('experiment.kind', 'str', None, alias='experiment', doc='声明本配置对应的子命令, 给出时须与命令行子命令一致'),
    ConfigKey('experiment.dt_list', 'floats', None, doc='收敛实验的步长序列, 缺省 dt, dt/2, dt/4'),
    ConfigKey('groundstate.tol', 'float', 1e-10, doc='虚时间基态的能量收敛阈值'),
)

_BY_NAME: dict[str, ConfigKey] = {key.name: key for key in CONFIG_KEYS}
_BY_ALIAS: dict[str, ConfigKey] = {key.alias: key for key in CONFIG_KEYS if key.alias}


def _lookup(name: str) -> ConfigKey | None:
    return _BY_NAME.get(name) or _BY_ALIAS.get(name)


def _label(name: str) -> str:
    """把模型层抛出的规范字段名换成配置中的短别名"""
    key = _BY_NAME.get(name)
    return key.label if key else name


@dataclass(frozen=True)
class RunConfig:
    """一次运行的完整配置, 由 parse_config 构造并通过校验"""

    dimension: int
    n: tuple[int, ...]
    box: tuple[float, ...]
    gamma: tuple[float, ...]
    dt: float
    t_end: float
    repulsive: tuple[bool, ...] = ()
    omega: tuple[float, ...] = (0.0,)
    lam: float = 0.0
    sigma: float = 1.0
    lattice_amplitude: float | None = None
    lattice_wavevector: tuple[float, ...] | None = None
    sample_every: int = 1
    backend: Backend = Backend.ROTATING_FRAME
    frame_of_record: Frame = Frame.LAB
    blowup_grad_factor: float | None = None
    blowup_tail: float | None = None
    initial_kind: str = 'gaussian'
    initial_center: tuple[float, ...] | None = None
    initial_width: float = 1.0
    initial_amplitude: float = 1.0
    initial_path: str | None = None
    output_dir: str = 'output'
    experiment: str | None = None
    dt_list: tuple[float, ...] | None = None
    groundstate_tol: float = 1e-10
    echo: dict[str, str] = field(default_factory=dict, compare=False)

    @property
    def center(self) -> tuple[float, ...]:
        return self.initial_center or (0.0,) * self.dimension

    def dt_ladder(self) -> tuple[float, ...]:
        """收敛实验步长序列"""
        return self.dt_list or (self.dt, self.dt / 2.0, self.dt / 4.0)


def _convert(key: ConfigKey, raw: str) -> Any:
    """按键类型转换文本值"""
    items = [item.strip() for item in raw.split(',')]
    try:
        match key.kind:
            case 'int':
                value = float(raw)
                if not value.is_integer():
                    raise ValueError(raw)
                return int(value)
            case 'float':
                return float(raw)
            case 'ints':
                values = [float(item) for item in items]
                if not all(v.is_integer() for v in values):
                    raise ValueError(raw)
                return tuple(int(v) for v in values)
            case 'floats':
                return tuple(float(item) for item in items)
            case 'bools':
                lookup = {'true': True, 'yes': True, '1': True, 'false': False, 'no': False, '0': False}
                return tuple(lookup[item.lower()] for item in items)
            case _:
                return raw
    except (KeyError, ValueError):
        raise ConfigValidationError(key.label, f'无法解析为 {key.kind}: {raw!r}') from None


def _read_lines(text: str) -> dict[str, tuple[int, str]]:
    """逐行切分 key = value, 返回 规范键 -> (行号, 原始值)"""
    entries: dict[str, tuple[int, str]] = {}
    for number, line in enumerate(text.splitlines(), start=1):
        content = line.split('#', 1)[0].strip()
        if not content:
            continue
        name, sep, value = content.partition('=')
        name, value = name.strip(), value.strip()
        if not sep or not name or not value or any(ch.isspace() for ch in name):
            raise ConfigParseError(number, f'应为 key = value, 得到 {line.strip()!r}')
        key = _lookup(name)
        if key is None:
            raise ConfigValidationError(name, '未知配置键')
        if key.name in entries:
            raise ConfigParseError(number, f'重复的键 {name!r} (首次出现在第{entries[key.name][0]}行)')
        entries[key.name] = (number, value)
    return entries


def _per_axis(values: tuple | None, d: int, key: str) -> tuple | None:
    if values is None:
        return None
    if len(values) == 1 and d > 1:
        return values * d
    if len(values) != d:
        raise ConfigValidationError(_label(key), f'需要 {d} 个分量, 得到 {len(values)}')
    return values


def parse_config(text: str) -> RunConfig:
    """解析并校验运行配置

    Args:
        text: 扁平 key = value 配置文本

    Returns:
        RunConfig: 已通过网格, 模型和推进参数校验的配置

    Raises:
        ConfigParseError: 语法错误或重复键, 带行号
        ConfigValidationError: 未知键, 缺少必需键, 取值非法或模型校验失败

    Example:
        >>> cfg = parse_config('dimension = 2\\nn = 64\\nbox = 8\\ngamma = 1\\ndt = 1e-3\\nt_end = 1')
        >>> cfg.n
        (64, 64)
    """
    entries = _read_lines(text)
    for key in CONFIG_KEYS:
        if key.default is REQUIRED and key.name not in entries:
            raise ConfigValidationError(key.label, 'required')

    values = {key.name: (_convert(key, entries[key.name][1]) if key.name in entries else key.default) for key in CONFIG_KEYS}
    d = values['dimension']
    if d not in (2, 3):
        raise ConfigValidationError('dimension', f'必须为2或3, 得到 {d}')

    omega = values['rotation.omega']
    if d == 2 and len(omega) != 1:
        raise ConfigValidationError('omega', '二维时旋转为标量')
    if d == 3 and len(omega) not in (1, 3):
        raise ConfigValidationError('omega', f'三维时需要3个分量, 得到 {len(omega)}')

    experiment = values['experiment.kind']
    if experiment is not None and experiment not in EXPERIMENTS:
        raise ConfigValidationError('experiment', f'未知实验 {experiment!r}, 可选 {"|".join(EXPERIMENTS)}')
    initial_kind = values['initial.kind']
    if initial_kind not in INITIAL_KINDS:
        raise ConfigValidationError('initial.kind', f'未知初值类型 {initial_kind!r}, 可选 {"|".join(INITIAL_KINDS)}')
    if initial_kind == 'file' and not values['initial.path']:
        raise ConfigValidationError('initial.path', 'initial.kind = file 时为必需项')
    if (values['trap.lattice.amplitude'] is None) != (values['trap.lattice.wavevector'] is None):
        raise ConfigValidationError('trap.lattice.wavevector', '晶格幅度与波矢须同时给出')
    if not values['initial.width'] > 0:
        raise ConfigValidationError('initial.width', f'必须为正, 得到 {values["initial.width"]}')
    dt_list = values['experiment.dt_list']
    if dt_list is not None and not all(dt > 0 for dt in dt_list):
        raise ConfigValidationError('experiment.dt_list', '步长必须为正')

    try:
        backend = Backend.parse(values['solver.backend'])
    except ConfigValidationError:
        raise ConfigValidationError('backend', f'未知后端 {values["solver.backend"]!r}') from None
    try:
        frame_of_record = Frame(values['solver.frame_of_record'])
    except ValueError:
        raise ConfigValidationError('solver.frame_of_record', f'必须为 lab 或 rotating, 得到 {values["solver.frame_of_record"]!r}') from None

    cfg = RunConfig(
        dimension=d,
        n=_per_axis(values['grid.n'], d, 'grid.n'),
        box=_per_axis(values['grid.box'], d, 'grid.box'),
        gamma=_per_axis(values['trap.gamma'], d, 'trap.gamma'),
        dt=values['time.dt'],
        t_end=values['time.t_end'],
        repulsive=_per_axis(values['trap.repulsive'], d, 'trap.repulsive') if values['trap.repulsive'] else (),
        omega=omega,
        lam=values['nonlinearity.lambda'],
        sigma=values['nonlinearity.sigma'],
        lattice_amplitude=values['trap.lattice.amplitude'],
        lattice_wavevector=_per_axis(values['trap.lattice.wavevector'], d, 'trap.lattice.wavevector'),
        sample_every=values['time.sample_every'],
        backend=backend,
        frame_of_record=frame_of_record,
        blowup_grad_factor=values['solver.blowup_grad_factor'],
        blowup_tail=values['solver.blowup_tail'],
        initial_kind=initial_kind,
        initial_center=_per_axis(values['initial.center'], d, 'initial.center'),
        initial_width=values['initial.width'],
        initial_amplitude=values['initial.amplitude'],
        initial_path=values['initial.path'],
        output_dir=values['output.dir'],
        experiment=experiment,
        dt_list=dt_list,
        groundstate_tol=values['groundstate.tol'],
        echo={name: raw for name, (_line, raw) in sorted(entries.items())},
    )

    # 运行前完成网格, 模型与推进参数的全部校验
    build_grid(cfg)
    build_model(cfg)
    build_params(cfg)
    mylog.debug(f'parse_config | {len(entries)} 个键, experiment={cfg.experiment} backend={cfg.backend}')
    return cfg


def build_grid(cfg: RunConfig) -> Grid:
    """由配置构造网格, 网格错误转为字段校验错误"""
    try:
        return make_grid(cfg.dimension, cfg.n, cfg.box)
    except NonPositiveBoxError as err:
        raise ConfigValidationError('box', err.message) from err
    except RnlsError as err:
        raise ConfigValidationError('n', err.message) from err


def build_model(cfg: RunConfig) -> ModelConfig:
    """由配置构造并校验模型"""
    lattice = None
    if cfg.lattice_amplitude is not None and cfg.lattice_wavevector is not None:
        lattice = LatticeConfig(cfg.lattice_amplitude, cfg.lattice_wavevector)
    try:
        model = ModelConfig(
            d=cfg.dimension,
            trap=TrapConfig(cfg.gamma, cfg.repulsive, lattice),
            rotation=RotationConfig.from_values(cfg.omega, cfg.dimension),
            nonlinearity=NonlinearityConfig(cfg.lam, cfg.sigma),
        )
        return model.validate()
    except ConfigValidationError as err:
        raise ConfigValidationError(_label(err.field), err.reason) from err


def build_params(cfg: RunConfig) -> SimParams:
    """由配置构造推进参数"""
    thresholds = {
        name: value
        for name, value in (('blowup_grad_factor', cfg.blowup_grad_factor), ('blowup_tail', cfg.blowup_tail))
        if value is not None
    }
    try:
        return SimParams(dt=cfg.dt, t_end=cfg.t_end, backend=cfg.backend, sample_every=cfg.sample_every, frame_of_record=cfg.frame_of_record, **thresholds)
    except ConfigValidationError as err:
        raise ConfigValidationError(_label(err.field), err.reason) from err


def _gaussian_factor(x: np.ndarray, center: float, width: float) -> np.ndarray:
    """单轴归一化高斯因子 (pi w^2)^(-1/4) exp(-(x-c)^2 / 2w^2)"""
    return (math.pi * width * width) ** -0.25 * np.exp(-((x - center) ** 2) / (2.0 * width * width))


def build_initial_field(cfg: RunConfig, grid: Grid, model: ModelConfig | None = None) -> ComplexField:
    """按 initial.kind 构造初始场

    - gaussian: A (pi w^2)^(-d/4) exp(-|x-c|^2 / 2w^2), A=1 时质量为1
    - vortex: 前两轴乘以 (x1 + i x2)/w, 绕第三轴角动量为1; gamma=1, w=1 时为线性本征态
    - ground_state: 虚时间基态再乘以 A
    - file: 读取快照, 网格必须与配置一致

    Raises:
        ConfigValidationError: 快照网格与配置不符
        NonConfiningTrapError: ground_state 且陷阱不约束
    """
    model = model or build_model(cfg)
    width, amplitude, center = cfg.initial_width, cfg.initial_amplitude, cfg.center

    if cfg.initial_kind == 'ground_state':
        state = imaginary_time_ground_state(model, grid, tol=cfg.groundstate_tol)
        return ComplexField(grid, amplitude * state.values)

    if cfg.initial_kind == 'file':
        psi, t = read_snapshot(cfg.initial_path or '')
        if psi.grid.n != grid.n or psi.grid.halfwidth != grid.halfwidth:
            raise ConfigValidationError('initial.path', f'快照网格 n={psi.grid.n} L={psi.grid.halfwidth} 与配置 n={grid.n} L={grid.halfwidth} 不一致')
        mylog.info(f'initial | 读取快照 {cfg.initial_path} (t={t:g}) 作为初值')
        return ComplexField(grid, amplitude * psi.values)

    factors = [_gaussian_factor(xj, cj, width) for xj, cj in zip(grid.mesh, center, strict=True)]
    values = amplitude * np.prod(np.broadcast_arrays(*factors), axis=0).astype(np.complex128)
    if cfg.initial_kind == 'vortex':
        x1, x2 = grid.mesh[0] - center[0], grid.mesh[1] - center[1]
        values = values * (x1 + 1j * x2) / width
    return ComplexField(grid, values)


__all__ = [
    'CONFIG_KEYS',
    'ConfigKey',
    'RunConfig',
    'build_grid',
    'build_initial_field',
    'build_model',
    'build_params',
    'parse_config',
]

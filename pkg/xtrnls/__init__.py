# d:/CODE/xjlib/xtrnls/__init__.py
"""旋转非线性薛定谔方程谱方法模拟与诊断"""

from __future__ import annotations

from .defaults import SolverDefaults
from .diagnostics import (
    ExperimentReport,
    blowup_experiment,
    convergence_order,
    energy_drift_identity,
    frame_equivalence,
    variance_moment_oracle,
    verify_balance_laws,
    verify_virial,
)
from .errors import (
    BadMagicError,
    ConfigParseError,
    ConfigValidationError,
    InvalidDimensionError,
    NoConvergenceError,
    NonConfiningTrapError,
    NonPositiveBoxError,
    NonPowerOfTwoError,
    OutputIOError,
    RnlsError,
    RotationExceedsTrapError,
    SizeMismatchError,
    TooFewSamplesError,
    UnknownColumnError,
    UnresolvedFieldError,
    UnsupportedGridError,
    UnsupportedRotationAxisError,
    VersionMismatchError,
    ZeroFieldError,
)
from .io import (
    RunConfig,
    build_initial_field,
    parse_config,
    read_snapshot,
    read_timeseries_csv,
    render_svg_timeseries,
    write_snapshot,
    write_timeseries_csv,
)
from .model import (
    BlowupCase,
    BlowupReport,
    LatticeConfig,
    ModelConfig,
    NonlinearityConfig,
    RotationConfig,
    TrapConfig,
    alpha_omega,
    classify_blowup,
    rotate_coords,
    rotated_potential,
)
from .observables import (
    CSV_COLUMNS,
    Frame,
    ObservableRecord,
    angular_momentum_balance,
    compute_record,
    continuity_residual,
    energy_magnetic_form,
)
from .propagators import (
    Backend,
    RunResult,
    RunStatus,
    SimParams,
    adi_step_lab,
    imaginary_time_ground_state,
    map_frame,
    run,
    run_many,
    strang_step_rotating,
)
from .spectral import ComplexField, Grid, VectorField, gradient, make_grid, tail_fraction, transform_backward, transform_forward

__version__ = '0.1.0'

__all__ = (
    'CSV_COLUMNS',
    'Backend',
    'BadMagicError',
    'BlowupCase',
    'BlowupReport',
    'ComplexField',
    'ConfigParseError',
    'ConfigValidationError',
    'ExperimentReport',
    'Frame',
    'Grid',
    'InvalidDimensionError',
    'LatticeConfig',
    'ModelConfig',
    'NoConvergenceError',
    'NonConfiningTrapError',
    'NonPositiveBoxError',
    'NonPowerOfTwoError',
    'NonlinearityConfig',
    'ObservableRecord',
    'OutputIOError',
    'RnlsError',
    'RotationConfig',
    'RotationExceedsTrapError',
    'RunConfig',
    'RunResult',
    'RunStatus',
    'SimParams',
    'SizeMismatchError',
    'SolverDefaults',
    'TooFewSamplesError',
    'TrapConfig',
    'UnknownColumnError',
    'UnresolvedFieldError',
    'UnsupportedGridError',
    'UnsupportedRotationAxisError',
    'VectorField',
    'VersionMismatchError',
    'ZeroFieldError',
    '__version__',
    'adi_step_lab',
    'alpha_omega',
    'angular_momentum_balance',
    'blowup_experiment',
    'build_initial_field',
    'classify_blowup',
    'compute_record',
    'continuity_residual',
    'convergence_order',
    'energy_drift_identity',
    'energy_magnetic_form',
    'frame_equivalence',
    'gradient',
    'imaginary_time_ground_state',
    'make_grid',
    'map_frame',
    'parse_config',
    'read_snapshot',
    'read_timeseries_csv',
    'render_svg_timeseries',
    'rotate_coords',
    'rotated_potential',
    'run',
    'run_many',
    'strang_step_rotating',
    'tail_fraction',
    'transform_backward',
    'transform_forward',
    'variance_moment_oracle',
    'verify_balance_laws',
    'verify_virial',
    'write_snapshot',
    'write_timeseries_csv',
)

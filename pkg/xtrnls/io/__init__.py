# !/usr/bin/env python
"""
==============================================================
Description  : 配置与输出文件包
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls
==============================================================
"""

from __future__ import annotations

from .config import CONFIG_KEYS, ConfigKey, RunConfig, build_grid, build_initial_field, build_model, build_params, parse_config
from .plot import render_svg_timeseries
from .snapshot import MAGIC, VERSION, read_snapshot, snapshot_size, write_snapshot
from .timeseries import read_timeseries_csv, write_timeseries_csv

__all__ = [
    'CONFIG_KEYS',
    'MAGIC',
    'VERSION',
    'ConfigKey',
    'RunConfig',
    'build_grid',
    'build_initial_field',
    'build_model',
    'build_params',
    'parse_config',
    'read_snapshot',
    'read_timeseries_csv',
    'render_svg_timeseries',
    'snapshot_size',
    'write_snapshot',
    'write_timeseries_csv',
]

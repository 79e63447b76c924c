# !/usr/bin/env python
"""
==============================================================
Description  : 时间序列SVG速览图模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

读取观测量CSV, 每列一条折线, 线性坐标自动缩放。
相同输入产生逐字节相同的SVG: 固定 svg.hashsalt, 去掉日期元数据。
==============================================================
"""

from __future__ import annotations

from collections.abc import Sequence
from pathlib import Path

import matplotlib as mpl
import numpy as np
from matplotlib.figure import Figure

from ..errors import OutputIOError, UnknownColumnError
from ..observables import CSV_COLUMNS
from .timeseries import read_timeseries_csv

_SVG_RC = {'svg.hashsalt': 'xtrnls', 'svg.fonttype': 'path'}


def render_svg_timeseries(csv_path: str | Path, columns: Sequence[str], svg_path: str | Path | None = None) -> Path:
    """把CSV中的若干列画成SVG折线图

    Args:
        csv_path: write_timeseries_csv 写出的文件
        columns: 要画的列名
        svg_path: 输出路径, 缺省与CSV同名, 后缀 .svg

    Returns:
        Path: SVG文件路径

    Raises:
        UnknownColumnError: 列名不在CSV表头中
        OutputIOError: 读写失败

    Note:
        标题给出全部所画数据的 y 范围 (max - min), 守恒量的平直曲线据此可读出漂移量级。
    """
    if not columns:
        raise UnknownColumnError('至少需要一个列名')
    for name in columns:
        if name not in CSV_COLUMNS:
            raise UnknownColumnError(f'未知列 {name!r}, 可选 {",".join(CSV_COLUMNS)}')

    csv_path = Path(csv_path)
    svg_path = Path(svg_path) if svg_path is not None else csv_path.with_suffix('.svg')
    records = read_timeseries_csv(csv_path)
    times = np.array([r.t for r in records])
    series = {name: np.array([getattr(r, name) for r in records]) for name in columns}
    stacked = np.concatenate(list(series.values()))
    finite = stacked[np.isfinite(stacked)]
    y_range = float(finite.max() - finite.min()) if finite.size else float('nan')

    with mpl.rc_context(_SVG_RC):
        fig = Figure(figsize=(8, 4.5))
        ax = fig.add_subplot()
        for name, values in series.items():
            ax.plot(times, values, label=name, linewidth=1.2)
        ax.set_xlabel('t')
        ax.set_ylabel(', '.join(columns))
        ax.set_title(f'{", ".join(columns)}  (y range {y_range:.3e})')
        ax.legend(loc='best')
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        try:
            svg_path.parent.mkdir(parents=True, exist_ok=True)
            fig.savefig(svg_path, format='svg', metadata={'Date': None})
        except OSError as err:
            raise OutputIOError(f'写入 {svg_path} 失败: {err}') from err
    return svg_path


__all__ = ['render_svg_timeseries']

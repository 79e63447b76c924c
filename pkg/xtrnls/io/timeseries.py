# !/usr/bin/env python
"""
==============================================================
Description  : 观测量时间序列CSV读写模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

表头固定为 CSV_COLUMNS, 每个数值以17位有效数字写出, 读回后与
写入前的64位浮点数逐位相同。行尾统一为 '\\n'。
==============================================================
"""

from __future__ import annotations

import csv
from collections.abc import Sequence
from pathlib import Path

from xtlog import mylog

from ..defaults import SolverDefaults
from ..errors import OutputIOError, TooFewSamplesError
from ..observables import CSV_COLUMNS, ObservableRecord


def _format(value: float) -> str:
    return format(value, '.17g')


def write_timeseries_csv(records: Sequence[ObservableRecord], path: str | Path) -> Path:
    """写出观测量时间序列

    Args:
        records: 观测记录, 不能为空
        path: 输出文件路径, 父目录不存在时自动创建

    Returns:
        Path: 写出的文件路径

    Raises:
        TooFewSamplesError: records 为空, 此时不创建文件
        OutputIOError: 写文件失败
    """
    if not records:
        raise TooFewSamplesError(0, 1)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open('w', encoding='utf-8', newline='') as handle:
            writer = csv.writer(handle, lineterminator='\n')
            writer.writerow(CSV_COLUMNS)
            writer.writerows([_format(v) for v in record.values()] for record in records)
    except OSError as err:
        raise OutputIOError(f'写入 {path} 失败: {err}') from err
    mylog.debug(f'write_timeseries_csv | {path} rows={len(records)}')
    return path


def read_timeseries_csv(path: str | Path) -> list[ObservableRecord]:
    """读回 write_timeseries_csv 写出的文件

    Raises:
        OutputIOError: 文件无法读取, 表头不符或数值无法解析
    """
    path = Path(path)
    try:
        with path.open(encoding='utf-8', newline='') as handle:
            rows = list(csv.reader(handle))
    except OSError as err:
        raise OutputIOError(f'读取 {path} 失败: {err}') from err

    if not rows or tuple(rows[0]) != CSV_COLUMNS:
        raise OutputIOError(f'{path} 表头不符, 期望 {",".join(CSV_COLUMNS)}')
    records = []
    for number, row in enumerate(rows[1:], start=2):
        try:
            values = [float(item) for item in row]
        except ValueError as err:
            raise OutputIOError(f'{path} 第{number}行: {err}') from err
        if len(values) != len(CSV_COLUMNS):
            raise OutputIOError(f'{path} 第{number}行: 需要 {len(CSV_COLUMNS)} 列, 得到 {len(values)}')
        record = dict(zip(CSV_COLUMNS, values, strict=True))
        records.append(ObservableRecord(**record, resolved=record['tail'] < SolverDefaults.UNRESOLVED_TAIL))
    return records


__all__ = ['read_timeseries_csv', 'write_timeseries_csv']

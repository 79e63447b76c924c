# !/usr/bin/env python
"""
==============================================================
Description  : 场快照二进制读写模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

小端二进制布局:
    b'RNLS'            魔数
    u32 version = 1
    u32 d
    u32 n[j] x d
    f64 L[j] x d
    f64 t
    f64 (re, im) x prod(n)   行主序, 最后一轴最快
==============================================================
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from ..errors import BadMagicError, OutputIOError, RnlsError, SizeMismatchError, VersionMismatchError
from ..spectral import ComplexField, make_grid

MAGIC = b'RNLS'
VERSION = 1
_U32 = np.dtype('<u4')
_F64 = np.dtype('<f8')
_C128 = np.dtype('<c16')


def snapshot_size(n: tuple[int, ...]) -> int:
    """给定每轴点数时快照文件的字节数"""
    d = len(n)
    return len(MAGIC) + _U32.itemsize * (2 + d) + _F64.itemsize * (d + 1) + _C128.itemsize * math.prod(n)


def write_snapshot(psi: ComplexField, t: float, path: str | Path) -> Path:
    """写出场快照

    Raises:
        OutputIOError: 写文件失败
    """
    grid = psi.grid
    path = Path(path)
    header = [
        MAGIC,
        np.array([VERSION, grid.d, *grid.n], dtype=_U32).tobytes(),
        np.array([*grid.halfwidth, t], dtype=_F64).tobytes(),
    ]
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open('wb') as handle:
            handle.writelines(header)
            handle.write(np.ascontiguousarray(psi.values, dtype=_C128).tobytes())
    except OSError as err:
        raise OutputIOError(f'写入 {path} 失败: {err}') from err
    return path


def read_snapshot(path: str | Path) -> tuple[ComplexField, float]:
    """读取场快照, 与 write_snapshot 逐位互逆

    Returns:
        tuple[ComplexField, float]: 场与时间

    Raises:
        OutputIOError: 文件无法读取或头部非法
        BadMagicError: 魔数不符
        VersionMismatchError: 版本不是1
        SizeMismatchError: 文件长度与头部声明不一致
    """
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as err:
        raise OutputIOError(f'读取 {path} 失败: {err}') from err

    if data[:4] != MAGIC:
        raise BadMagicError(f'{path} 魔数不符: {data[:4]!r}')
    if len(data) < 12:
        raise SizeMismatchError(f'{path} 头部不完整, 长度 {len(data)}')
    version, d = np.frombuffer(data, dtype=_U32, count=2, offset=4)
    if version != VERSION:
        raise VersionMismatchError(f'{path} 版本 {version} 不受支持, 期望 {VERSION}')
    if d not in (2, 3):
        raise OutputIOError(f'{path} 头部维数非法: {d}')

    offset = 12
    if len(data) < offset + _U32.itemsize * d:
        raise SizeMismatchError(f'{path} 头部不完整, 长度 {len(data)}')
    n = tuple(int(v) for v in np.frombuffer(data, dtype=_U32, count=d, offset=offset))
    expected = snapshot_size(n)
    if len(data) != expected:
        raise SizeMismatchError(f'{path} 长度 {len(data)} 与头部声明的 {expected} 字节不一致')

    offset += _U32.itemsize * d
    floats = np.frombuffer(data, dtype=_F64, count=d + 1, offset=offset)
    offset += _F64.itemsize * (d + 1)
    try:
        grid = make_grid(int(d), n, tuple(float(v) for v in floats[:d]))
    except RnlsError as err:
        raise OutputIOError(f'{path} 头部网格非法: {err.message}') from err
    values = np.frombuffer(data, dtype=_C128, offset=offset).reshape(n)
    return ComplexField(grid, values), float(floats[d])


__all__ = ['MAGIC', 'VERSION', 'read_snapshot', 'snapshot_size', 'write_snapshot']

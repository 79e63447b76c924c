# !/usr/bin/env python
"""
==============================================================
Description  : 异常定义模块
Develop      : VSCode
Author       : sandorn sandorn@live.cn
LastEditTime : 2025-11-02 10:00:00
Github       : https://github.com/sandorn/xtrnls

本模块集中定义旋转NLS模拟器使用的全部异常类型
==============================================================
"""

from __future__ import annotations


class RnlsError(Exception):
    """模拟器异常基类"""

    def __init__(self, message: str | None = None):
        self.message = message or self.__class__.__name__
        super().__init__(self.message)


# ---------------------------------------------------------------- 网格与场
class InvalidDimensionError(RnlsError, ValueError):
    """空间维数不是2或3"""


class NonPowerOfTwoError(RnlsError, ValueError):
    """每轴采样点数不是2的幂或过小"""


class NonPositiveBoxError(RnlsError, ValueError):
    """计算盒半宽不为正"""


class ZeroFieldError(RnlsError, ValueError):
    """场恒为零, 无法计算比例量"""


class UnsupportedGridError(RnlsError, ValueError):
    """网格不满足操作要求(例如旋转平面内非正方形)"""


# ---------------------------------------------------------------- 模型
class RotationExceedsTrapError(RnlsError, ValueError):
    """旋转频率不小于最小陷阱频率, alpha_omega 无定义"""


class UnsupportedRotationAxisError(RnlsError, ValueError):
    """旋转轴未与第三坐标轴对齐"""


class NonConfiningTrapError(RnlsError, ValueError):
    """陷阱在某个方向上不约束"""


# ---------------------------------------------------------------- 数值过程
class UnresolvedFieldError(RnlsError):
    """场的谱尾部过大, 数值分辨率不足"""

    def __init__(self, tail: float, threshold: float):
        self.tail = tail
        self.threshold = threshold
        super().__init__(f'场分辨率不足: tail={tail:.3e} >= {threshold:.3e}')


class TooFewSamplesError(RnlsError):
    """时间序列样本过少"""

    def __init__(self, count: int, required: int):
        self.count = count
        self.required = required
        super().__init__(f'样本数不足: {count} < {required}')


class NoConvergenceError(RnlsError):
    """迭代在最大步数内未收敛"""


# ---------------------------------------------------------------- 配置与文件
class ConfigParseError(RnlsError):
    """配置文本语法错误"""

    def __init__(self, line: int, message: str | None = None):
        self.line = line
        super().__init__(f'配置第{line}行: {message or "无法解析"}')


class ConfigValidationError(RnlsError):
    """配置字段校验失败"""

    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f'配置字段 {field}: {reason}')


class OutputIOError(RnlsError, OSError):
    """读写输出文件失败"""


class BadMagicError(OutputIOError):
    """快照文件魔数不符"""


class VersionMismatchError(OutputIOError):
    """快照文件版本不受支持"""


class SizeMismatchError(OutputIOError):
    """快照文件长度与头部声明不一致"""


class UnknownColumnError(RnlsError, KeyError):
    """时间序列中不存在请求的列"""

    def __str__(self) -> str:
        return self.message


__all__ = (
    'BadMagicError',
    'ConfigParseError',
    'ConfigValidationError',
    'InvalidDimensionError',
    'NoConvergenceError',
    'NonConfiningTrapError',
    'NonPositiveBoxError',
    'NonPowerOfTwoError',
    'OutputIOError',
    'RnlsError',
    'RotationExceedsTrapError',
    'SizeMismatchError',
    'TooFewSamplesError',
    'UnknownColumnError',
    'UnresolvedFieldError',
    'UnsupportedGridError',
    'UnsupportedRotationAxisError',
    'VersionMismatchError',
    'ZeroFieldError',
)

#!/usr/bin/env python3
"""
网络描述
Network Specification
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..exceptions import NetworkSpecError

logger = logging.getLogger(__name__)

# ρ 超过该值时“感性为主”的假设已勉强
RHO_WARN = 0.2
RHO_MAX = 0.5


@dataclass
class Line:
    """线路 (i, j, b)，母线编号从 1 开始"""
    i: int
    j: int
    b: float

    def to_dict(self) -> dict:
        return {'i': self.i, 'j': self.j, 'b': self.b}


@dataclass
class NetworkSpec:
    """
    n 母线网络: 线路电纳 b_ij、统一 R/X 比 ρ、工作点电压 |v|₀

    构造时校验；ρ > 0.2 记录警告
    """
    n: int
    lines: List[Line] = field(default_factory=list)
    rho: float = 0.0
    v0: List[float] = None

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool) or self.n < 1:
            raise NetworkSpecError(f"母线数 n 必须是正整数: {self.n!r}")
        self.n = int(self.n)

        if self.v0 is None:
            self.v0 = [1.0] * self.n
        self.v0 = [float(v) for v in self.v0]
        if len(self.v0) != self.n:
            raise NetworkSpecError(f"v0 长度 {len(self.v0)} 与母线数 {self.n} 不一致")
        for k, v in enumerate(self.v0):
            if not (0.0 < v < 2.0):
                raise NetworkSpecError(f"v0[{k}]={v} 超出 (0, 2) p.u.")

        self.rho = float(self.rho)
        if not (0.0 <= self.rho <= RHO_MAX):
            raise NetworkSpecError(f"R/X 比 ρ={self.rho} 超出 [0, {RHO_MAX}]")
        if self.rho > RHO_WARN:
            logger.warning(f"ρ={self.rho} > {RHO_WARN}，感性网络假设偏离较大")

        normalized = []
        seen = set()
        for k, line in enumerate(self.lines):
            if isinstance(line, dict):
                line = _line_from_dict(line, k)
            i, j = int(line.i), int(line.j)
            if i == j:
                raise NetworkSpecError(f"lines[{k}]: 自环 ({i}, {j})")
            if not (1 <= min(i, j) and max(i, j) <= self.n):
                raise NetworkSpecError(f"lines[{k}]: 母线编号 ({i}, {j}) 超出 1..{self.n}")
            i, j = min(i, j), max(i, j)
            if (i, j) in seen:
                raise NetworkSpecError(f"lines[{k}]: 重复线路 ({i}, {j})")
            b = float(line.b)
            if not (math.isfinite(b) and b > 0):
                raise NetworkSpecError(f"lines[{k}]: 电纳 b={line.b} 必须为正")
            seen.add((i, j))
            normalized.append(Line(i, j, b))
        self.lines = normalized

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'NetworkSpec':
        if not isinstance(data, dict):
            raise NetworkSpecError("网络描述必须是对象")
        unknown = set(data) - {'n', 'lines', 'rho', 'v0'}
        if unknown:
            raise NetworkSpecError(f"未知网络字段: {sorted(unknown)}")
        if 'n' not in data:
            raise NetworkSpecError("缺少母线数 n")
        lines = data.get('lines', [])
        if not isinstance(lines, list):
            raise NetworkSpecError("lines 必须是数组")
        return cls(
            n=data['n'],
            lines=[_line_from_dict(line, k) for k, line in enumerate(lines)],
            rho=data.get('rho', 0.0),
            v0=data.get('v0'),
        )

    def to_dict(self) -> dict:
        return {
            'n': self.n,
            'rho': self.rho,
            'v0': list(self.v0),
            'lines': [line.to_dict() for line in self.lines],
        }

    def edges(self) -> List[Tuple[int, int, float]]:
        """0 起始下标的 (i, j, b)"""
        return [(line.i - 1, line.j - 1, line.b) for line in self.lines]

    def components(self) -> Tuple[int, np.ndarray]:
        """连通分量数与每条母线所属分量标号"""
        if not self.lines:
            return self.n, np.arange(self.n)
        rows = [i for i, _, _ in self.edges()]
        cols = [j for _, j, _ in self.edges()]
        graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(self.n, self.n))
        count, labels = connected_components(graph, directed=False)
        return int(count), labels


def _line_from_dict(data: Any, k: int) -> Line:
    if isinstance(data, Line):
        return data
    if not isinstance(data, dict):
        raise NetworkSpecError(f"lines[{k}] 必须是对象")
    if 'rho' in data:
        raise NetworkSpecError(f"lines[{k}]: 不支持逐线路 ρ，只允许全网统一 R/X 比")
    missing = [key for key in ('i', 'j', 'b') if key not in data]
    if missing:
        raise NetworkSpecError(f"lines[{k}]: 缺少字段 {missing}")
    for key in ('i', 'j'):
        if not isinstance(data[key], int) or isinstance(data[key], bool):
            raise NetworkSpecError(f"lines[{k}].{key} 必须是整数")
    return Line(data['i'], data['j'], data['b'])

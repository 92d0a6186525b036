#!/usr/bin/env python3
"""
配置管理模块
Configuration Management
"""

import copy
import os
import yaml
from typing import Any, Dict, Optional, List
from pathlib import Path


class Config:
    """配置管理类"""

    _instance: Optional['Config'] = None
    _config: Dict[str, Any] = {}

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self):
        if not self._config:
            self.load()

    def load(self, config_path: str = None):
        """加载配置文件，未指定路径时依次取 NGGC_CONFIG 环境变量与默认配置"""
        if config_path is None:
            config_path = os.environ.get('NGGC_CONFIG') or os.path.join(
                os.path.dirname(__file__),
                '..', 'config', 'nggc.yaml'
            )

        config_path = Path(config_path).resolve()

        if not config_path.exists():
            raise FileNotFoundError(f"配置文件不存在: {config_path}")

        with open(config_path, 'r', encoding='utf-8') as f:
            self._config = yaml.safe_load(f) or {}

        return self._config

    def get(self, key: str, default: Any = None) -> Any:
        """获取配置项，支持点号分隔的多级键"""
        keys = key.split('.')
        value = self._config

        for k in keys:
            if isinstance(value, dict):
                value = value.get(k)
                if value is None:
                    return default
            else:
                return default

        return value

    def section(self, key: str) -> Dict[str, Any]:
        """返回某一配置段的深拷贝，调用方修改不影响全局配置"""
        return copy.deepcopy(self.get(key, {}))

    # ============ 基准 ============
    @property
    def f_base(self) -> float:
        return float(self.get('f_base', 50.0))

    # ============ 数值容差 ============
    @property
    def trim_tol(self) -> float:
        return float(self.get('tolerances.trim_tol', 1e-12))

    @property
    def axis_tol(self) -> float:
        return float(self.get('tolerances.axis_tol', 1e-12))

    @property
    def stab_tol(self) -> float:
        return float(self.get('tolerances.stab_tol', 1e-9))

    @property
    def strict_tol(self) -> float:
        return float(self.get('tolerances.strict_tol', 1e-9))

    @property
    def coincident_tol(self) -> float:
        return float(self.get('tolerances.coincident_tol', 1e-8))

    @property
    def passivity_tol(self) -> float:
        return float(self.get('tolerances.passivity_tol', 1e-9))

    @property
    def magnitude_floor(self) -> float:
        return float(self.get('tolerances.magnitude_floor', 1e-12))

    # ============ 认证限值 ============
    @property
    def limits(self) -> Dict[str, float]:
        return {k: float(v) for k, v in self.section('limits').items()}

    @property
    def toolkit_defaults(self) -> List[str]:
        return list(self.get('toolkit_defaults', []))

    # ============ 频率网格 ============
    @property
    def grid(self) -> Dict[str, Any]:
        return self.section('grid')

    # ============ 时域仿真 ============
    @property
    def sim_T(self) -> float:
        return float(self.get('simulation.T', 30.0))

    @property
    def sim_h(self) -> float:
        return float(self.get('simulation.h', 1e-3))

    @property
    def tail_fraction(self) -> float:
        return float(self.get('simulation.tail_fraction', 0.1))

    @property
    def settle_band(self) -> float:
        return float(self.get('simulation.settle_band', 0.02))

    @property
    def dc_check_rtol(self) -> float:
        return float(self.get('simulation.dc_check_rtol', 0.01))

    @property
    def max_step_factor(self) -> float:
        return float(self.get('simulation.max_step_factor', 0.2))

    @property
    def min_horizon_factor(self) -> float:
        return float(self.get('simulation.min_horizon_factor', 5.0))

    # ============ 参考实验 ============
    @property
    def reference_network(self) -> Dict[str, Any]:
        return self.section('reference_network')

    @property
    def reference_fleet(self) -> Dict[str, Dict]:
        return self.section('reference_fleet')

    @property
    def qv_fleet(self) -> Dict[str, Dict]:
        return self.section('qv_fleet')


# 全局配置实例
config = Config()

#!/usr/bin/env python3
"""
生成参考场景文件
写出两节点参考实验 (实验 1/2 × DUT 1-7) 以及 qv 示例场景到 scenarios/
"""

import sys
sys.path.insert(0, '.')

import argparse
import json
from pathlib import Path

from src.config import config
from src.experiments import REFERENCE_DUTS, reference_scenario_dict


def qv_scenario(label: str) -> dict:
    """两台 VSM 并带无功下垂的 qv 示例"""
    net = config.reference_network
    vsm = config.reference_fleet['DUT 3']
    qv = config.qv_fleet[label]
    devices = []
    for bus in (1, 2):
        devices.append({'label': f"VSM@bus{bus}", 'bus': bus, 'kind': vsm['kind'],
                        'params': dict(vsm['params'])})
        devices.append({'label': f"{label}@bus{bus}", 'bus': bus, 'kind': qv['kind'],
                        'params': dict(qv['params'])})
    return {
        'name': f"qv_{qv['kind'].split('_')[-1]}",
        'f_base': config.f_base,
        'network': {k: net[k] for k in ('n', 'rho', 'v0', 'lines')},
        'devices': devices,
        'experiments': [
            {'type': 'step', 'bus': 2, 'channel': 'qv',
             'magnitude': config.limits['dq_step'], 'T': 10.0, 'h': config.sim_h},
        ],
    }


def write(path: Path, data: dict):
    path.write_text(json.dumps(data, ensure_ascii=False, indent=2) + "\n", encoding='utf-8')
    print(f"    {path}")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument('--out', default='scenarios', help='输出目录')
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    print("=" * 60)
    print("生成参考场景")
    print("=" * 60)
    for experiment in (1, 2):
        for dut in REFERENCE_DUTS:
            data = reference_scenario_dict(dut, experiment)
            write(out / f"{data['name']}.json", data)

    zero = reference_scenario_dict("DUT 3", 1)
    zero['name'] = "zero_step"
    zero['experiments'][0]['magnitude'] = 0.0
    write(out / "zero_step.json", zero)

    for label in config.qv_fleet:
        data = qv_scenario(label)
        write(out / f"{data['name']}.json", data)
    print("\n完成!")


if __name__ == "__main__":
    main()

#!/usr/bin/env python3
"""
命令行入口
Command-Line Interface

    run_nggc.py certify  --scenario S --out DIR [--grid-ppd N] [--strict] [--format csv|json]
    run_nggc.py simulate --scenario S --out DIR [--strict] [--format csv|json]
    run_nggc.py export   --scenario S --out DIR [--what nyquist|envelope|all]

退出码: 0 全部合规, 1 存在不合规项, 2 输入或数值错误
"""

import argparse
import hashlib
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional

import pandas as pd

from . import __version__
from .certify import certify_fleet, envelope_geometry, nyquist_locus
from .exceptions import NGGCError
from .experiments import run_scenario_steps
from .models import json_safe
from .network import compute_gamma
from .scenario import Scenario, load_scenario

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NONCOMPLIANT = 1
EXIT_ERROR = 2


class OutputWriter:
    """输出目录写入器，记录每个文件的 SHA-256"""

    def __init__(self, out_dir: Path):
        self.out_dir = Path(out_dir)
        self.out_dir.mkdir(parents=True, exist_ok=True)
        self.files: Dict[str, str] = {}

    def _write(self, name: str, text: str):
        data = text.encode('utf-8')
        (self.out_dir / name).write_bytes(data)
        self.files[name] = hashlib.sha256(data).hexdigest()

    def text(self, name: str, text: str):
        self._write(name, text)

    def frame(self, name: str, frame: pd.DataFrame):
        self._write(name, frame.to_csv(index=False, lineterminator='\n'))

    def json(self, name: str, payload):
        text = json.dumps(json_safe(payload), ensure_ascii=False, indent=2, sort_keys=True)
        self._write(name, text + "\n")

    def table(self, stem: str, frame: pd.DataFrame, fmt: str):
        if fmt == "json":
            self.json(f"{stem}.json", frame.to_dict(orient='records'))
        else:
            self.frame(f"{stem}.csv", frame)

    def manifest(self, command: str, scenario: Scenario, exit_code: int, extra: dict = None):
        """manifest.json 不含时间戳，重复运行逐字节一致"""
        payload = {
            'tool': 'nggc',
            'version': __version__,
            'command': command,
            'scenario': scenario.name,
            'exit_code': exit_code,
            'files': dict(sorted(self.files.items())),
            'defaults_applied': scenario.defaults_applied,
            'toolkit_defaults': scenario.toolkit_defaults,
            'limits': scenario.limits.to_dict(),
            'grid': scenario.grid.to_dict(),
        }
        if extra:
            payload.update(extra)
        text = json.dumps(json_safe(payload), ensure_ascii=False, indent=2, sort_keys=True)
        (self.out_dir / "manifest.json").write_text(text + "\n", encoding='utf-8')


def run_certify(scenario: Scenario, writer: OutputWriter, fmt: str = "csv",
                strict: bool = False) -> int:
    """逐台认证并写出合规报告"""
    report = certify_fleet(scenario.entries, scenario.network, scenario.limits,
                           scenario.grid, scenario.toolkit_defaults)
    table = report.render_table()
    dependent = report.default_dependent()
    if strict and dependent:
        lines = ["--strict: 以下判定依赖工具箱默认限值，视为不通过"]
        lines += [f"  {label}: {condition}" for label, condition in dependent]
        table += "\n".join(lines) + "\n"
    print(table, end="")

    writer.text("compliance_report.txt", table)
    if fmt == "json":
        writer.json("compliance.json", report.to_dict())
    else:
        writer.frame("compliance.csv", report.to_frame())
    return EXIT_OK if report.all_passed(strict) else EXIT_NONCOMPLIANT


def run_simulate(scenario: Scenario, writer: OutputWriter, fmt: str = "csv",
                 strict: bool = False) -> int:
    """运行场景中的阶跃实验并写出轨迹与指标"""
    results = run_scenario_steps(scenario)
    f_base = scenario.limits.f_base

    print("=" * 60)
    print(f"阶跃实验: {scenario.name}")
    print("=" * 60)
    for result in results:
        writer.frame(f"step_{result.index}_timeseries.csv", result.timeseries_frame(f_base))
        m = result.metrics
        zeta = "n/a" if m.damping_ratio is None else f"{m.damping_ratio:.3f}"
        print(f"[{result.index}] {result.experiment.channel} 母线 {result.experiment.bus}: "
              f"最大偏差 {m.nadir:.4g} {m.unit}, 稳态 {m.f_ss:.4g} {m.unit}, "
              f"RoCoF {m.rocof_max:.4g}, ζ {zeta} -> "
              f"{'通过' if result.passed(strict, scenario.toolkit_defaults) else '不通过'}")

    frame = pd.DataFrame([r.to_record() for r in results])
    writer.table("metrics", frame, fmt)
    ok = all(r.passed(strict, scenario.toolkit_defaults) for r in results)
    return EXIT_OK if ok else EXIT_NONCOMPLIANT


def run_export(scenario: Scenario, writer: OutputWriter, what: str = "all") -> int:
    """导出 Nyquist 轨迹与认证包络"""
    if what in ("nyquist", "all"):
        for entry in scenario.entries:
            locus = nyquist_locus(entry.tf, scenario.grid)
            if locus.skipped:
                logger.warning(f"{entry.label}: {len(locus.skipped)} 个网格点位于 jω 轴极点，已跳过")
            writer.frame(f"nyquist_bus{entry.bus}_{entry.channel}.csv", locus.to_frame())

    if what in ("envelope", "all"):
        writer.frame("envelope_pf.csv", envelope_geometry(scenario.limits, "pf").to_frame())
        qv_entries = scenario.channel_entries("qv")
        if qv_entries:
            gamma = compute_gamma(scenario.network)
            for entry in qv_entries:
                geometry = envelope_geometry(scenario.limits, "qv", float(gamma[entry.bus - 1]))
                writer.frame(f"envelope_qv_bus{entry.bus}.csv", geometry.to_frame())
    print(f"已导出 {len(writer.files)} 个文件到 {writer.out_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="run_nggc.py", description="NGGC 并网认证与仿真工具箱")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser):
        p.add_argument('--scenario', required=True, help='场景 JSON 文件')
        p.add_argument('--out', required=True, help='输出目录')
        p.add_argument('--grid-ppd', type=int, default=None, help='频率网格每十倍频程点数')

    p = sub.add_parser('certify', help='逐台认证并生成合规报告')
    common(p)
    p.add_argument('--strict', action='store_true', help='依赖工具箱默认限值的判定视为不通过')
    p.add_argument('--format', choices=['csv', 'json'], default='csv')

    p = sub.add_parser('simulate', help='运行阶跃实验')
    common(p)
    p.add_argument('--strict', action='store_true', help='依赖工具箱默认限值的判定视为不通过')
    p.add_argument('--format', choices=['csv', 'json'], default='csv')

    p = sub.add_parser('export', help='导出 Nyquist 轨迹与认证包络')
    common(p)
    p.add_argument('--what', choices=['nyquist', 'envelope', 'all'], default='all')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """解析参数并运行，返回退出码"""
    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    args = build_parser().parse_args(argv)

    scenario = None
    writer = None
    try:
        scenario = load_scenario(args.scenario, grid_ppd=args.grid_ppd)
        writer = OutputWriter(Path(args.out))
        if args.command == 'certify':
            code = run_certify(scenario, writer, args.format, args.strict)
            extra = {'strict': args.strict}
        elif args.command == 'simulate':
            code = run_simulate(scenario, writer, args.format, args.strict)
            extra = {'strict': args.strict}
        else:
            code = run_export(scenario, writer, args.what)
            extra = {'what': args.what}
        writer.manifest(args.command, scenario, code, extra)
        return code
    except (NGGCError, OSError, json.JSONDecodeError) as e:
        print(f"错误: {e}", file=sys.stderr)
        if scenario is not None and writer is not None:
            try:
                writer.manifest(args.command, scenario, EXIT_ERROR, {'error': str(e)})
            except OSError:
                pass
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""
NGGC 并网认证与仿真工具箱

用法:
    python run_nggc.py certify  --scenario scenarios/exp1_dut3.json --out out/
    python run_nggc.py simulate --scenario scenarios/exp2_dut1.json --out out/
    python run_nggc.py export   --scenario scenarios/qv_filtered.json --out out/ --what all
"""

import sys
sys.path.insert(0, '.')

from src.cli import main


if __name__ == "__main__":
    sys.exit(main())

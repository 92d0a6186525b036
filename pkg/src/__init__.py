"""
NGGC 认证与仿真工具箱
Grid-Code Certification and Simulation Toolkit
"""

__version__ = "1.0.0"

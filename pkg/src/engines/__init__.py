# 闭环装配与时域仿真
from .closed_loop import ClosedLoopModel, assemble_pf_loop, assemble_qv_loop, average_mode
from .simulation import (
    TimeSeries, average_mode_response, dominant_damping, local_voltage_response,
    step_response, time_metrics,
)

# 认证模块
from .conditions import (
    PF_CONDITIONS, QV_CONDITIONS, certify_pf, certify_qv, shifted_qv_transfer,
)
from .envelope import Disc, EnvelopeGeometry, HalfPlane, Wedge, envelope_geometry
from .nyquist import NyquistLocus, nyquist_locus
from .report import (
    CONDITION_LIMITS, ComplianceReport, DeviceCompliance, FleetEntry, certify_fleet,
)

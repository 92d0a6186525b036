# 传递函数内核
from .polynomial import Polynomial
from .rational import (
    RationalTF, Stability, eval_response, frequency_response, poles, zeros,
    is_stable, relative_degree, is_strictly_proper, hf_derivative_limit,
    dc_gain, feedback_transform, coincident_roots,
)
from .statespace import StateSpace, to_statespace
from .norms import hinf_norm

# 网络模型
from .spec import Line, NetworkSpec
from .matrices import build_fp_laplacian, build_vq_matrix, compute_gamma, shifted_network
from .passivity import PassivityReport, verify_shifted_passivity

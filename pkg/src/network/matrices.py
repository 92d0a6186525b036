#!/usr/bin/env python3
"""
线性化网络矩阵
Linearized Network Matrices

    N^fp(s) = L/s,   N^vq = M (常数),   Γ = diag(0, Γ^qv)
"""

import math

import numpy as np

from .spec import NetworkSpec

# Γ^qv 的安全系数
GAMMA_FACTOR = 0.8


def build_fp_laplacian(spec: NetworkSpec) -> np.ndarray:
    """
    频率-有功通道的加权拉普拉斯矩阵 L（隐含 1/s）

    L_ij = −(2π/(1+ρ²))·b_ij·|v_i|₀·|v_j|₀,  L_ii = −Σ_j L_ij
    """
    n = spec.n
    L = np.zeros((n, n))
    gain = 2 * math.pi / (1 + spec.rho ** 2)
    v = spec.v0
    for i, j, b in spec.edges():
        w = gain * b * v[i] * v[j]
        L[i, j] = -w
        L[j, i] = -w
        L[i, i] += w
        L[j, j] += w
    return L


def build_vq_matrix(spec: NetworkSpec) -> np.ndarray:
    """
    电压-无功通道的静态矩阵 M

    M_ii = Σ_j b_ij(2|v_i|₀ − |v_j|₀)/(1+ρ²),  M_ij = −b_ij·|v_i|₀/(1+ρ²)
    """
    n = spec.n
    M = np.zeros((n, n))
    scale = 1.0 / (1 + spec.rho ** 2)
    v = spec.v0
    for i, j, b in spec.edges():
        M[i, j] = -b * v[i] * scale
        M[j, i] = -b * v[j] * scale
        M[i, i] += b * (2 * v[i] - v[j]) * scale
        M[j, j] += b * (2 * v[j] - v[i]) * scale
    return M


def compute_gamma(spec: NetworkSpec) -> np.ndarray:
    """环路移位 c_i = 0.8·Σ_j b_ij/(1+ρ²)"""
    c = np.zeros(spec.n)
    scale = GAMMA_FACTOR / (1 + spec.rho ** 2)
    for i, j, b in spec.edges():
        c[i] += b * scale
        c[j] += b * scale
    return c


def gamma_matrix(spec: NetworkSpec) -> np.ndarray:
    """Γ = diag(0, Γ^qv)，2n×2n"""
    n = spec.n
    return np.diag(np.concatenate((np.zeros(n), compute_gamma(spec))))


def shifted_network(spec: NetworkSpec, omega: float) -> np.ndarray:
    """N′(jω) = diag(L/(jω), M) + Γ，ω > 0"""
    if omega <= 0:
        raise ValueError(f"N^fp 在 ω={omega} 处无定义")
    n = spec.n
    N = np.zeros((2 * n, 2 * n), dtype=complex)
    N[:n, :n] = build_fp_laplacian(spec) / (1j * omega)
    N[n:, n:] = build_vq_matrix(spec)
    return N + gamma_matrix(spec)

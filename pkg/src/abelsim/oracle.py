"""Dense state-vector simulation over finite groups Z_N1 x ... x Z_Nm.

This is the brute-force reference used to check the stabilizer pipeline.  It
deliberately shares no phase code with it: quadratic phases are computed from
an integer-scaled copy of (M, C, v), characters from the defining formula.
"""

import os
from dataclasses import dataclass
from math import lcm

import numpy as np

from .groups import GroupElement, GroupSpec
from .stabilizer import Automorphism, Fourier, QuadraticPhase, fourier_group

__all__ = [
    "DenseState",
    "OracleError",
    "oracle_cap",
    "elements",
    "dense_run",
    "dense_support",
    "dense_gate",
    "dense_pauli",
    "dense_conjugate",
    "TOL",
    "SUPPORT_TOL",
]

TOL = 1e-9
SUPPORT_TOL = 1e-6
DEFAULT_CAP = 4096


class OracleError(ValueError):
    pass


def oracle_cap():
    return int(os.environ.get("ABELSIM_ORACLE_CAP", DEFAULT_CAP))


def _dims(G):
    if not G.is_finite:
        raise OracleError(f"dense simulation needs a finite group, got {G}")
    dims = tuple(f.n for f in G)
    size = int(np.prod(dims, dtype=np.int64)) if dims else 1
    if size > oracle_cap():
        raise OracleError(f"|G| = {size} exceeds the oracle cap {oracle_cap()}")
    return dims


def elements(G):
    """All elements as an integer array of shape (|G|, m), lexicographic."""
    dims = _dims(G)
    if not dims:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices(dims).reshape(len(dims), -1).T
    return grids.astype(np.int64)


def _index(points, dims):
    if not dims:
        return np.zeros(len(points), dtype=np.int64)
    return np.ravel_multi_index(tuple(points.T), dims)


@dataclass
class DenseState:
    group: GroupSpec
    amplitudes: np.ndarray


def _int_matrix(A):
    out = np.zeros(A.shape, dtype=np.int64)
    for i, row in enumerate(A.rows):
        for j, x in enumerate(row):
            if x.denominator != 1:
                raise OracleError("automorphism of a finite group must be integral")
            out[i, j] = x.numerator
    return out


def _quadratic_phases(Q, pts):
    M, v = Q.M, Q.v
    chars = [f.n for f in Q.group]
    L = 1
    for x in list(M.entries()) + list(v):
        L = lcm(L, x.denominator)
    Mi = np.array([[int(x * L) for x in r] for r in M.rows], dtype=np.int64).reshape(M.shape)
    Ci = np.array([int(M[i, i] * chars[i] * L) for i in range(len(chars))], dtype=np.int64)
    vi = np.array([int(x * L) for x in v], dtype=np.int64)
    k = np.einsum("ni,ij,nj->n", pts, Mi, pts) + pts @ Ci + 2 * (pts @ vi)
    k = np.mod(k, 2 * L)
    return np.exp(1j * np.pi * k / L)


def _dft(N):
    x = np.arange(N)
    return np.exp(2j * np.pi * np.outer(x, x) / N) / np.sqrt(N)


def dense_gate(gate, G):
    """Unitary of a gate acting on L2(G), plus the group after the gate."""
    dims = _dims(G)
    pts = elements(G)
    size = len(pts)
    if isinstance(gate, Automorphism):
        A = _int_matrix(gate.rep.A)
        img = np.mod(pts @ A.T, np.array(dims, dtype=np.int64)) if dims else pts
        U = np.zeros((size, size), dtype=complex)
        U[_index(img, dims), np.arange(size)] = 1.0
        return U, G
    if isinstance(gate, QuadraticPhase):
        return np.diag(_quadratic_phases(gate.Q, pts)), G
    if isinstance(gate, Fourier):
        U = np.ones((1, 1), dtype=complex)
        for i, N in enumerate(dims):
            U = np.kron(U, _dft(N) if i in gate.registers else np.eye(N))
        return U, fourier_group(G, gate.registers)
    raise TypeError(f"unknown gate {gate!r}")


def _apply(gate, G, psi):
    dims = _dims(G)
    if isinstance(gate, Fourier):
        t = psi.reshape(dims)
        for i in gate.registers:
            t = np.moveaxis(np.tensordot(_dft(dims[i]), t, axes=([1], [i])), 0, i)
        return t.reshape(-1), fourier_group(G, gate.registers)
    if isinstance(gate, QuadraticPhase):
        return psi * _quadratic_phases(gate.Q, elements(G)), G
    pts = elements(G)
    A = _int_matrix(gate.rep.A)
    img = np.mod(pts @ A.T, np.array(dims, dtype=np.int64)) if dims else pts
    out = np.zeros_like(psi)
    np.add.at(out, _index(img, dims), psi)
    return out, G


def dense_run(circuit):
    G = circuit.group0
    dims = _dims(G)
    psi = np.zeros(int(np.prod(dims, dtype=np.int64)) if dims else 1, dtype=complex)
    start = np.array([[int(x) for x in circuit.input.coords]], dtype=np.int64)
    psi[_index(start, dims)[0]] = 1.0
    for gate in circuit.gates:
        psi, G = _apply(gate, G, psi)
        norm = np.linalg.norm(psi)
        if abs(norm - 1) > TOL:
            raise OracleError(f"state norm drifted to {norm}")
    return DenseState(G, psi)


def dense_support(state, tol=SUPPORT_TOL):
    amp = np.abs(state.amplitudes)
    keep = np.nonzero(amp > tol * amp.max())[0]
    pts = elements(state.group)[keep]
    return {GroupElement(state.group, tuple(int(x) for x in p)) for p in pts}


def dense_pauli(p):
    """Dense matrix of phase * Z(mu) X(g)."""
    G = p.group
    dims = _dims(G)
    pts = elements(G)
    size = len(pts)
    N = np.array(dims, dtype=np.int64)
    g = np.array([int(x) for x in p.g.coords], dtype=np.int64)
    mu = np.array([int(x) for x in p.mu.coords], dtype=np.int64)
    shifted = np.mod(pts + g, N) if dims else pts
    chi = np.exp(2j * np.pi * ((shifted * mu) / N).sum(axis=1)) if dims else np.ones(1)
    P = np.zeros((size, size), dtype=complex)
    P[_index(shifted, dims), np.arange(size)] = complex(p.phase) * chi
    return P


def dense_conjugate(gate, p):
    U, _ = dense_gate(gate, p.group)
    return U @ dense_pauli(p) @ U.conj().T

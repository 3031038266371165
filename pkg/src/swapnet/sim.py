"""Exact simulation: statevectors, density matrices, depolarizing noise, fidelity.

Basis convention matches gates.py: wire 0 is the most significant bit of the
basis index, so a state over n wires reshaped to [2]*n has axis w == wire w.

Density matrices cost 4^n; construction is capped (default n <= 10) so a typo
cannot silently allocate gigabytes.  Statevectors are capped only by memory.
"""

from __future__ import annotations

import numpy as np

from .circuit import Circuit, Gate
from .gates import gate_matrix

DENSITY_WIRE_CAP = 10
UNITARY_WIRE_CAP = 12


class PureState:
    """Statevector over n wires; vec has shape (2**n,)."""

    __slots__ = ("n", "vec")

    def __init__(self, n: int, vec: np.ndarray):
        if vec.shape != (2**n,):
            raise ValueError(f"statevector for {n} wires needs shape {(2**n,)}, got {vec.shape}")
        self.n = n
        self.vec = np.asarray(vec, dtype=complex)

    @staticmethod
    def basis(n: int, index: int = 0) -> "PureState":
        vec = np.zeros(2**n, dtype=complex)
        vec[index] = 1.0
        return PureState(n, vec)

    @staticmethod
    def product(factors: list[np.ndarray]) -> "PureState":
        vec = np.array([1.0], dtype=complex)
        for f in factors:
            vec = np.kron(vec, np.asarray(f, dtype=complex))
        return PureState(len(factors), vec)

    def copy(self) -> "PureState":
        return PureState(self.n, self.vec.copy())

    def apply_gate(self, gate: Gate) -> None:
        self.vec = _apply_unitary(self.vec.reshape([2] * self.n), gate).reshape(-1)

    def to_density(self, cap: int = DENSITY_WIRE_CAP) -> "MixedState":
        if self.n > cap:
            raise ValueError(f"refusing density matrix on {self.n} wires (cap {cap})")
        return MixedState(self.n, np.outer(self.vec, self.vec.conj()), cap=cap)


class MixedState:
    """Density matrix over n wires; rho has shape (2**n, 2**n)."""

    __slots__ = ("n", "rho")

    def __init__(self, n: int, rho: np.ndarray, cap: int = DENSITY_WIRE_CAP):
        if n > cap:
            raise ValueError(f"refusing density matrix on {n} wires (cap {cap})")
        if rho.shape != (2**n, 2**n):
            raise ValueError(f"density matrix for {n} wires needs shape {(2**n, 2**n)}")
        self.n = n
        self.rho = np.asarray(rho, dtype=complex)

    @staticmethod
    def basis(n: int, index: int = 0) -> "MixedState":
        return PureState.basis(n, index).to_density()

    def copy(self) -> "MixedState":
        return MixedState(self.n, self.rho.copy())

    def apply_gate(self, gate: Gate) -> None:
        n = self.n
        t = self.rho.reshape([2] * (2 * n))
        t = _apply_tensor(t, gate.kind, gate.wires)  # U rho
        bra = tuple(n + w for w in gate.wires)
        t = _apply_tensor(t, gate.kind, bra, conj=True)  # ... U^dag
        self.rho = t.reshape(2**n, 2**n)


def _apply_tensor(t: np.ndarray, kind, axes: tuple[int, ...], conj: bool = False) -> np.ndarray:
    w = len(axes)
    u = gate_matrix(kind)
    if conj:
        u = u.conj()
    ut = u.reshape([2] * (2 * w))
    out = np.tensordot(ut, t, axes=(list(range(w, 2 * w)), list(axes)))
    return np.moveaxis(out, list(range(w)), list(axes))


def _apply_unitary(t: np.ndarray, gate: Gate) -> np.ndarray:
    return _apply_tensor(t, gate.kind, gate.wires)


def depolarize_pair(state: MixedState, pair: tuple[int, ...], p: float) -> None:
    """Two-qubit depolarizing channel: rho -> (1-p) rho + p Tr_pair(rho) (x) I/4.

    Generalizes to any wire tuple (dimension 2**len(pair)); netbench uses pairs.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"depolarizing strength {p} outside [0, 1]")
    if p == 0.0:
        return
    n, w = state.n, len(pair)
    d = 2**w
    rest = [i for i in range(n) if i not in pair]
    perm = list(pair) + rest + [n + i for i in pair] + [n + i for i in rest]
    t = state.rho.reshape([2] * (2 * n)).transpose(perm)
    r = 2 ** len(rest)
    t = np.ascontiguousarray(t).reshape(d, r, d, r)
    reduced = np.einsum("arac->rc", t)
    mixed = np.zeros_like(t)
    idx = np.arange(d)
    mixed[idx, :, idx, :] = reduced / d
    t = (1.0 - p) * t + p * mixed
    inv = np.argsort(perm)
    state.rho = t.reshape([2] * (2 * n)).transpose(inv).reshape(2**n, 2**n)


# Alias for the common two-wire case; the kernel handles any operand tuple.
depolarize_two_qubit = depolarize_pair


class NoiseModel:
    """Depolarize every multi-qubit gate's operand set right after the gate."""

    __slots__ = ("p",)

    def __init__(self, p: float):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"depolarizing strength {p} outside [0, 1]")
        self.p = p


def apply_circuit(
    state: PureState | MixedState, circuit: Circuit, noise: NoiseModel | None = None
) -> PureState | MixedState:
    """Run the circuit on a copy of the state and return the copy."""
    if state.n != circuit.n_wires:
        raise ValueError(f"state has {state.n} wires, circuit {circuit.n_wires}")
    if noise is not None and isinstance(state, PureState):
        raise ValueError("noisy simulation needs a density matrix")
    out = state.copy()
    for g in circuit.gates:
        out.apply_gate(g)
        if noise is not None and len(g.wires) >= 2 and noise.p > 0.0:
            depolarize_pair(out, g.wires, noise.p)
    return out


def circuit_unitary(circuit: Circuit, cap: int = UNITARY_WIRE_CAP) -> np.ndarray:
    """Full 2**n x 2**n unitary; batched over columns, capped to keep memory sane."""
    n = circuit.n_wires
    if n > cap:
        raise ValueError(f"refusing unitary on {n} wires (cap {cap})")
    t = np.eye(2**n, dtype=complex).reshape([2] * n + [2**n])
    for g in circuit.gates:
        t = _apply_unitary(t, g)
    return t.reshape(2**n, 2**n)


def random_product_state(n: int, rng: np.random.Generator) -> PureState:
    """Haar-random single-qubit product state: two complex normals per qubit, normalized."""
    factors = []
    for _ in range(n):
        a = rng.normal(size=2) + 1j * rng.normal(size=2)
        factors.append(a / np.linalg.norm(a))
    return PureState.product(factors)


def fidelity(a: PureState | MixedState, b: PureState | MixedState) -> float:
    """Uhlmann fidelity Tr[sqrt(sqrt(r1) r2 sqrt(r1))]^2, with pure-state shortcuts."""
    if isinstance(a, PureState) and isinstance(b, PureState):
        return float(abs(np.vdot(a.vec, b.vec)) ** 2)
    if isinstance(a, PureState):
        return float(np.real(np.vdot(a.vec, b.rho @ a.vec)))
    if isinstance(b, PureState):
        return fidelity(b, a)
    sq = _psd_sqrt(a.rho)
    inner = sq @ b.rho @ sq
    evals = np.linalg.eigvalsh((inner + inner.conj().T) / 2)
    evals = np.clip(evals, 0.0, None)
    return float(np.sum(np.sqrt(evals)) ** 2)


def _psd_sqrt(m: np.ndarray) -> np.ndarray:
    evals, vecs = np.linalg.eigh((m + m.conj().T) / 2)
    evals = np.clip(evals, 0.0, None)
    return (vecs * np.sqrt(evals)) @ vecs.conj().T


def states_equal(a: np.ndarray, b: np.ndarray, tol: float = 1e-10) -> bool:
    """Exact equality including global phase."""
    return bool(np.max(np.abs(np.asarray(a) - np.asarray(b))) <= tol)

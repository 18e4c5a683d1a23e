"""Graph-state construction, stabilizer generators, and reduced forms.

States are dense complex vectors over the standard product basis
|j1, j2, j3, j4>, stored row-major with the first qudit slowest. A graph
state carries the amplitude omega^(sum over edges of w_nm * j_n * j_m) / d^2,
each edge counted once, and is the simultaneous +1 eigenstate of the four
generators X_n (x) Z_m^w_nm.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

from .graphs import N_VERTICES, AdjacencyMatrix, cluster_graph, gamma_graph, ghz_graph, p_graph
from .pauli import PauliWord, check_prime, fourier_conjugate, omega_powers

__all__ = [
    "GeneratorSet",
    "StateVector",
    "apply_local_fourier",
    "apply_pauli",
    "build_state",
    "family_fourier_sites",
    "family_graph",
    "family_reduced_generators",
    "family_reduced_state",
    "generators",
    "ghz3_state",
    "iter_stabilizers",
    "psi_gamma",
    "stabilizer",
    "verify_eigen",
]

NORM_TOL = 1e-10


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state of ``n_qudits`` d-level systems."""

    d: int
    n_qudits: int
    amps: np.ndarray

    def __post_init__(self) -> None:
        d = check_prime(self.d)
        amps = np.asarray(self.amps, dtype=complex)
        if amps.shape != (d**self.n_qudits,):
            raise ValueError(
                f"expected {d**self.n_qudits} amplitudes, got shape {amps.shape}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm} deviates from 1 beyond {NORM_TOL}")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def from_amplitudes(cls, amps, d: int, normalize: bool = False) -> "StateVector":
        amps = np.asarray(amps, dtype=complex)
        n = round(np.log(len(amps)) / np.log(d))
        if normalize:
            norm = np.linalg.norm(amps)
            if norm == 0:
                raise ValueError("cannot normalize the zero vector")
            amps = amps / norm
        return cls(d, n, amps)

    @classmethod
    def basis_state(cls, d: int, indices: Sequence[int]) -> "StateVector":
        n = len(indices)
        amps = np.zeros(d**n, dtype=complex)
        amps[int(np.ravel_multi_index(tuple(indices), (d,) * n))] = 1.0
        return cls(d, n, amps)

    def reshaped(self) -> np.ndarray:
        return self.amps.reshape((self.d,) * self.n_qudits)

    def overlap(self, other: "StateVector") -> complex:
        self._check_compatible(other)
        return complex(np.vdot(other.amps, self.amps))

    def equals_up_to_phase(self, other: "StateVector", tol: float = 1e-9) -> bool:
        """True when |<self|other>| >= 1 - tol, i.e. equal up to a global phase."""
        self._check_compatible(other)
        return abs(np.vdot(self.amps, other.amps)) >= 1.0 - tol

    def permute_qudits(self, axes: Sequence[int]) -> "StateVector":
        """Reorder qudits so that new position i carries old qudit axes[i]."""
        if sorted(axes) != list(range(self.n_qudits)):
            raise ValueError("axes must be a permutation of the qudit positions")
        arr = self.reshaped().transpose(tuple(axes)).reshape(-1)
        return StateVector(self.d, self.n_qudits, arr)

    def _check_compatible(self, other: "StateVector") -> None:
        if self.d != other.d or self.n_qudits != other.n_qudits:
            raise ValueError("states live in different Hilbert spaces")


def build_state(g: AdjacencyMatrix) -> StateVector:
    """Graph state of g: amplitudes omega^(sum_{n<m} w_nm j_n j_m) / d^2."""
    d = g.d
    idx = np.indices((d,) * N_VERTICES)
    exponent = np.zeros((d,) * N_VERTICES, dtype=int)
    for n in range(N_VERTICES):
        for m in range(n + 1, N_VERTICES):
            w = g.entries[n][m]
            if w:
                exponent = exponent + w * idx[n] * idx[m]
    amps = omega_powers(d)[exponent % d] / d**2
    return StateVector(d, N_VERTICES, amps.reshape(-1))


@dataclass(frozen=True)
class GeneratorSet:
    """Four commuting, independent stabilizer generators with eigenvalue
    exponents r_k (eigenvalue omega^r_k on the associated state)."""

    words: tuple[PauliWord, ...]
    eigen_exps: tuple[int, ...]


def generators(g: AdjacencyMatrix) -> GeneratorSet:
    """Generators X_n (x) Z_m^w_nm of the graph state, eigenvalues all +1."""
    d = g.d
    words = tuple(
        PauliWord.from_powers(
            d,
            [1 if m == n else 0 for m in range(N_VERTICES)],
            list(g.entries[n]),
        )
        for n in range(N_VERTICES)
    )
    return GeneratorSet(words, (0,) * N_VERTICES)


def stabilizer(g: AdjacencyMatrix, powers: Sequence[int]) -> PauliWord:
    """Stabilizer g_1^p1 g_2^p2 g_3^p3 g_4^p4 in normal-ordered form.

    Collecting the per-site factors yields the phase exponent
    sum_{n>m} w_nm p_n p_m and site powers (p_n, sum_m w_nm p_m).
    """
    d = g.d
    p = [int(v) % d for v in powers]
    if len(p) != N_VERTICES:
        raise ValueError("need one power per vertex")
    phase = sum(
        g.entries[n][m] * p[n] * p[m]
        for n in range(N_VERTICES)
        for m in range(n)
    )
    z = [sum(g.entries[n][m] * p[m] for m in range(N_VERTICES)) % d for n in range(N_VERTICES)]
    return PauliWord.from_powers(d, p, z, phase)


def iter_stabilizers(g: AdjacencyMatrix) -> Iterator[tuple[tuple[int, ...], PauliWord]]:
    """All d^4 stabilizers, keyed by their generator powers."""
    for p in product(range(g.d), repeat=N_VERTICES):
        yield p, stabilizer(g, p)


def apply_pauli(s: StateVector, w: PauliWord) -> StateVector:
    """Apply a Pauli word to a state without building its dense matrix."""
    if w.d != s.d or w.n_qudits != s.n_qudits:
        raise ValueError("word and state dimensions do not match")
    d = s.d
    omega = omega_powers(d)
    arr = s.reshaped().copy()
    for site, (x, z) in enumerate(w.xz):
        if z:
            shape = [1] * s.n_qudits
            shape[site] = d
            arr = arr * omega[(z * np.arange(d)) % d].reshape(shape)
        if x:
            arr = np.roll(arr, x, axis=site)
    arr = arr * omega[w.phase]
    return StateVector(d, s.n_qudits, arr.reshape(-1))


def verify_eigen(s: StateVector, w: PauliWord, tol: float = 1e-9) -> int | None:
    """Eigenvalue exponent r with w|s> = omega^r |s>, or None if not an eigenstate."""
    ws = apply_pauli(s, w)
    val = np.vdot(s.amps, ws.amps)
    d = s.d
    r = int(np.round(d * np.angle(val) / (2 * np.pi))) % d
    if np.linalg.norm(ws.amps - omega_powers(d)[r] * s.amps) <= tol:
        return r
    return None


def psi_gamma(gamma: int, d: int) -> StateVector:
    """The two-index family (1/d) sum_{i,k} |i, i+gamma*k, k, i+k>.

    gamma = 1 is the reduced square-graph state, gamma = -1 the reduced state
    of the third class, gamma = 0 the reduced open-chain state.
    """
    d = check_prime(d)
    gamma %= d
    arr = np.zeros((d,) * N_VERTICES, dtype=complex)
    for i in range(d):
        for k in range(d):
            arr[i, (i + gamma * k) % d, k, (i + k) % d] = 1.0 / d
    return StateVector(d, N_VERTICES, arr.reshape(-1))


def ghz3_state(d: int) -> StateVector:
    """Three-qudit maximally entangled reference state sum |i,i,i> / sqrt(d)."""
    arr = np.zeros((d,) * 3, dtype=complex)
    for i in range(d):
        arr[i, i, i] = 1.0
    return StateVector(d, 3, arr.reshape(-1) / np.sqrt(d))


def apply_local_fourier(s: StateVector, sites: Iterable[int]) -> StateVector:
    """Apply the single-qudit gate |k> -> d^(-1/2) sum_j omega^(-jk) |j> at each site.

    This is the transform that carries X eigenstates to the standard basis,
    collapsing the internal Fourier sums of graph states into their short
    reduced forms.
    """
    d = s.d
    omega = omega_powers(d)
    gate = omega[(-np.outer(np.arange(d), np.arange(d))) % d] / np.sqrt(d)
    arr = s.reshaped()
    for site in sorted(set(sites)):
        if not 0 <= site < s.n_qudits:
            raise ValueError(f"site {site} out of range")
        arr = np.moveaxis(np.tensordot(gate, arr, axes=([1], [site])), 0, site)
    return StateVector(d, s.n_qudits, arr.reshape(-1))


_FAMILY_GRAPHS = {"G": ghz_graph, "C": cluster_graph, "P": p_graph}
_FAMILY_FOURIER_SITES = {"G": (1, 2, 3), "C": (1, 3), "P": (1, 3), "psi": (1, 3)}


def family_graph(name: str, d: int, gamma: int | None = None) -> AdjacencyMatrix:
    """Graph of a named family: G, C, P, or psi (requires gamma)."""
    if name == "psi":
        if gamma is None:
            raise ValueError("family psi requires a gamma value")
        return gamma_graph(gamma, d)
    try:
        return _FAMILY_GRAPHS[name](d)
    except KeyError:
        raise ValueError(f"unknown family {name!r}; expected G, C, P, or psi") from None


def family_fourier_sites(name: str) -> tuple[int, ...]:
    """Sites whose Fourier transform collapses the family state to reduced form."""
    try:
        return _FAMILY_FOURIER_SITES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}") from None


def family_reduced_state(name: str, d: int, gamma: int | None = None) -> StateVector:
    """Fourier-reduced state of a family (the short equal-weight form)."""
    g = family_graph(name, d, gamma)
    return apply_local_fourier(build_state(g), family_fourier_sites(name))


def family_reduced_generators(name: str, d: int, gamma: int | None = None) -> GeneratorSet:
    """Generator set conjugated into the frame of the reduced family state."""
    g = family_graph(name, d, gamma)
    sites = family_fourier_sites(name)
    gens = generators(g)
    return GeneratorSet(
        tuple(fourier_conjugate(w, sites) for w in gens.words), gens.eigen_exps
    )

"""Reduced states, purities, and derived entanglement measures.

Two independent routes produce reduced density matrices: contracting the
state vector (the Gram matrix of associated states) and summing the dense
matrices of the stabilizers that survive the partial trace. Purity-based
quantities (k-MM tests, concurrence, the summed wedge product) all live on
top of the first route; the second exists so the two can be cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graphs import N_VERTICES, AdjacencyMatrix
from .pauli import omega_powers, site_matrix
from .states import StateVector, stabilizer

__all__ = [
    "PurityProfile",
    "ReducedState",
    "all_subsystems",
    "concurrence",
    "is_k_mm",
    "max_identity_factors",
    "partial_trace",
    "purity",
    "purity_profile",
    "reduced_from_stabilizers",
    "schmidt_bounds",
    "subsystem_label",
    "wedge_measure",
]

HERM_TOL = 1e-10
PSD_TOL = 1e-9
RANK_TOL = 1e-8


def subsystem_label(keep: tuple[int, ...]) -> str:
    """1-based label of a subsystem, e.g. (0, 2) -> "13"."""
    return "".join(str(i + 1) for i in keep)


def all_subsystems(n_qudits: int = N_VERTICES, max_size: int = 2) -> tuple[tuple[int, ...], ...]:
    """All kept-site tuples of size 1..max_size, in lexicographic order."""
    out = []
    for size in range(1, max_size + 1):
        out.extend(combinations(range(n_qudits), size))
    return tuple(out)


@dataclass(frozen=True)
class ReducedState:
    """Hermitian, unit-trace, positive semidefinite density matrix of a subsystem."""

    matrix: np.ndarray
    keep: tuple[int, ...]
    d: int

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        dim = self.d ** len(self.keep)
        if m.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix, got {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > HERM_TOL:
            raise ValueError("reduced state is not Hermitian")
        if abs(np.trace(m).real - 1.0) > HERM_TOL:
            raise ValueError("reduced state does not have unit trace")
        if np.linalg.eigvalsh(m)[0] < -PSD_TOL:
            raise ValueError("reduced state is not positive semidefinite")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "keep", tuple(self.keep))

    @property
    def dim(self) -> int:
        return self.d ** len(self.keep)


def _check_keep(s: StateVector, keep: tuple[int, ...]) -> tuple[int, ...]:
    keep = tuple(keep)
    if not keep or len(keep) >= s.n_qudits:
        raise ValueError("keep must be a nonempty strict subset of the qudits")
    if len(set(keep)) != len(keep) or any(not 0 <= k < s.n_qudits for k in keep):
        raise ValueError(f"invalid subsystem {keep} for {s.n_qudits} qudits")
    return keep


def _associated_matrix(s: StateVector, keep: tuple[int, ...]) -> np.ndarray:
    """Amplitudes regrouped so row a is the state of the complement associated
    with kept-basis state a."""
    rest = tuple(i for i in range(s.n_qudits) if i not in keep)
    return s.reshaped().transpose(keep + rest).reshape(
        s.d ** len(keep), s.d ** len(rest)
    )


def partial_trace(s: StateVector, keep, *, validate: bool = True):
    """Reduced density matrix on the kept sites.

    Equals the Gram matrix of the associated complement states, which is the
    same thing as the usual index-contraction partial trace. With
    ``validate=False`` returns the raw matrix without the ReducedState checks
    (used by hot classification loops).
    """
    keep = _check_keep(s, tuple(keep))
    m = _associated_matrix(s, keep)
    rho = m @ m.conj().T
    if not validate:
        return rho
    return ReducedState(rho, keep, s.d)


def purity(r) -> float:
    """Tr(rho^2); plain arrays are accepted alongside ReducedState."""
    m = r.matrix if isinstance(r, ReducedState) else np.asarray(r)
    return float(np.vdot(m, m).real)


def _site_purity(s: StateVector, site: int) -> float:
    return purity(partial_trace(s, (site,), validate=False))


@dataclass(frozen=True)
class PurityProfile:
    """Map from subsystem to Tr(rho^2) for all single sites and pairs."""

    d: int
    n_qudits: int
    values: dict

    def __getitem__(self, keep) -> float:
        return self.values[tuple(keep)]

    def singles(self) -> tuple[float, ...]:
        return tuple(self.values[(i,)] for i in range(self.n_qudits))

    def pairs(self) -> dict:
        return {k: v for k, v in self.values.items() if len(k) == 2}

    def pair_pattern(self, tol: float = 1e-7) -> int:
        """Number of pairs at purity 1/d: 6 for G-type, 2 for C-type, 0 for P-type."""
        return sum(1 for v in self.pairs().values() if abs(v - 1.0 / self.d) <= tol)

    def to_json_dict(self) -> dict:
        from .report import exact_and_float

        return {subsystem_label(k): exact_and_float(v) for k, v in self.values.items()}


def purity_profile(s: StateVector) -> PurityProfile:
    """Purities of all one- and two-site subsystems of a four-qudit state."""
    if s.n_qudits != N_VERTICES:
        raise ValueError("purity profiles are defined for four-qudit states")
    values = {
        keep: purity(partial_trace(s, keep, validate=False))
        for keep in all_subsystems(s.n_qudits, 2)
    }
    return PurityProfile(s.d, s.n_qudits, values)


def is_k_mm(profile: PurityProfile, k: int, tol: float = 1e-9) -> bool:
    """True when every subsystem of size <= k has purity d^-size (maximal mixing)."""
    if k not in (1, 2):
        raise ValueError("k must be 1 or 2 for four-particle systems")
    return all(
        abs(v - profile.d ** (-len(keep))) <= tol
        for keep, v in profile.values.items()
        if len(keep) <= k
    )


def concurrence(s: StateVector, keep) -> float:
    """Bipartite concurrence of a pure state: sqrt(1 - purity)."""
    pi_a = purity(partial_trace(s, tuple(keep), validate=False))
    return float(np.sqrt(max(0.0, 1.0 - pi_a)))


def wedge_measure(s: StateVector, keep) -> float:
    """Sum over unordered pairs of associated states of the squared wedge product.

    W^2(a, a') = <a|a><a'|a'> - |<a|a'>|^2, summed over a < a'. Twice this
    equals 1 - purity for any bipartition of a pure state.
    """
    keep = _check_keep(s, tuple(keep))
    m = _associated_matrix(s, keep)
    gram = m @ m.conj().T
    norms = np.diag(gram).real
    total = 0.0
    for a in range(len(norms)):
        for b in range(a + 1, len(norms)):
            total += norms[a] * norms[b] - abs(gram[a, b]) ** 2
    return float(total)


def _stabilizer_power_table(g: AdjacencyMatrix) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(powers, x, z) arrays over all d^4 stabilizers, exponents mod d."""
    d = g.d
    powers = np.indices((d,) * N_VERTICES).reshape(N_VERTICES, -1).T
    x = powers
    z = powers @ g.as_array() % d
    return powers, x, z


def reduced_from_stabilizers(g: AdjacencyMatrix, keep) -> ReducedState:
    """Reduced density matrix via the stabilizer expansion.

    Tracing a site kills every stabilizer that is not the identity there, so
    the reduced state is d^(traced - 4) times the sum of the surviving words
    restricted to the kept sites, phases included.
    """
    keep = tuple(keep)
    if not 1 <= len(keep) <= 2:
        raise ValueError("stabilizer-trace route supports subsystems of size 1 or 2")
    d = g.d
    traced = tuple(i for i in range(N_VERTICES) if i not in keep)
    powers, x, z = _stabilizer_power_table(g)
    survives = np.ones(len(powers), dtype=bool)
    for site in traced:
        survives &= (x[:, site] == 0) & (z[:, site] == 0)
    dim = d ** len(keep)
    acc = np.zeros((dim, dim), dtype=complex)
    for p in powers[survives]:
        w = stabilizer(g, tuple(p))
        term = np.array([[omega_powers(d)[w.phase]]])
        for site in keep:
            term = np.kron(term, site_matrix(d, *w.xz[site]))
        acc += term
    acc *= float(d) ** (len(traced) - N_VERTICES)
    return ReducedState(acc, keep, d)


def max_identity_factors(g: AdjacencyMatrix) -> int:
    """Largest number of identity site factors over all non-identity stabilizers.

    At most 1 exactly when every two-site subsystem of the graph state is
    maximally mixed.
    """
    powers, x, z = _stabilizer_power_table(g)
    nontrivial = np.any(powers != 0, axis=1)
    id_counts = np.sum((x == 0) & (z == 0), axis=1)
    return int(id_counts[nontrivial].max())


def schmidt_bounds(s: StateVector) -> tuple[float, int]:
    """(lower, upper) bounds on the Schmidt measure log_d N_min.

    Lower: max over bipartitions of log_d of the numerical rank of the
    coefficient matrix. Upper: the minimum number of single-site measurements
    that removes all entanglement. For the canonical graph states the two
    coincide and equal the Schmidt measure.
    """
    if s.n_qudits != N_VERTICES:
        raise ValueError("Schmidt bounds are implemented for four-qudit states")
    lower = 0.0
    for keep in all_subsystems(s.n_qudits, 2):
        if len(keep) == 2 and 0 not in keep:
            continue  # complements repeat the 2-2 bipartitions
        m = _associated_matrix(s, keep)
        rank = int(np.linalg.matrix_rank(m, tol=RANK_TOL))
        lower = max(lower, float(np.log(rank) / np.log(s.d)) if rank > 1 else 0.0)

    from .steering import persistency_stats  # deferred: steering builds on this module

    upper = persistency_stats(s).n_min
    return lower, upper

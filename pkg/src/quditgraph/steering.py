"""Projective-measurement steering of four-qudit graph states.

Each qudit offers d+1 measurement bases (Z and XZ^k for k = 0..d-1), which
are pairwise mutually unbiased for prime d. The engine enumerates every
ordered single measurement and measurement pair, classifies the residual
state by its single-site purity pattern, and aggregates the results into
tallies, per-branch trees, and averaged persistency statistics.

Outcome indices never affect the residual class (a property the test suite
checks exhaustively), so tallies fix one outcome per projection.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .measures import partial_trace, purity
from .pauli import check_prime, omega_powers, site_matrix
from .states import StateVector

__all__ = [
    "ClassificationError",
    "MeasurementBasis",
    "MeasurementEvent",
    "PathTally",
    "PersistencyStats",
    "StateClass2",
    "StateClass3",
    "ZeroProbabilityError",
    "all_bases",
    "basis_eigenvalue",
    "basis_operator",
    "classify2",
    "classify3",
    "enumerate_paths",
    "mub_eigenstate",
    "persistency_stats",
    "project",
]

PURITY_TOL = 1e-7
PROB_TOL = 1e-9

GHZ3 = "ghz3"
SNB = "snb"
PRODUCT = "product"
BELL = "bell"


class ZeroProbabilityError(ValueError):
    """Raised when projecting onto an outcome of (numerically) zero probability."""


class ClassificationError(ValueError):
    """Raised when a purity pattern matches no graph-state residue class."""


@dataclass(frozen=True)
class MeasurementBasis:
    """One of the d+1 single-qudit bases: Z, or the eigenbasis of XZ^k."""

    kind: str  # "Z" or "XZ"
    power: int = 0  # the k in XZ^k; ignored for kind "Z"

    def __post_init__(self) -> None:
        if self.kind not in ("Z", "XZ"):
            raise ValueError(f"unknown basis kind {self.kind!r}")
        if self.kind == "Z":
            object.__setattr__(self, "power", 0)

    @classmethod
    def z(cls) -> "MeasurementBasis":
        return cls("Z")

    @classmethod
    def xz(cls, k: int) -> "MeasurementBasis":
        return cls("XZ", k)

    @property
    def name(self) -> str:
        if self.kind == "Z":
            return "Z"
        if self.power == 0:
            return "X"
        if self.power == 1:
            return "XZ"
        return f"XZ^{self.power}"


def all_bases(d: int) -> tuple[MeasurementBasis, ...]:
    """The d+1 distinct measurement bases on one qudit."""
    check_prime(d)
    return (MeasurementBasis.z(),) + tuple(MeasurementBasis.xz(k) for k in range(d))


def basis_operator(basis: MeasurementBasis, d: int) -> np.ndarray:
    """Dense single-qudit operator whose eigenbasis is measured."""
    if basis.kind == "Z":
        return site_matrix(d, 0, 1)
    return site_matrix(d, 1, basis.power % d)


def basis_eigenvalue(basis: MeasurementBasis, outcome: int, d: int) -> complex:
    """Eigenvalue attached to an outcome index under this module's convention."""
    omega = omega_powers(d)
    if basis.kind == "Z":
        return complex(omega[outcome % d])
    k = basis.power % d
    if k == 0:
        return complex(omega[(-outcome) % d])
    if d == 2:
        return complex(1j * (-1) ** (outcome % 2))
    return complex(omega[outcome % d])


def mub_eigenstate(basis: MeasurementBasis, outcome: int, d: int) -> StateVector:
    """Normalized eigenvector of the basis operator for a given outcome index.

    Conventions: Z outcome i is the computational vector e_i (eigenvalue
    omega^i); X outcome j is the Fourier vector with components omega^(j*m)
    (eigenvalue omega^-j); for XZ^k with k >= 1 outcomes are indexed by
    eigenvalue phase from omega^0 upward.
    """
    d = check_prime(d)
    outcome %= d
    omega = omega_powers(d)
    if basis.kind == "Z":
        amps = np.zeros(d, dtype=complex)
        amps[outcome] = 1.0
        return StateVector(d, 1, amps)
    k = basis.power % d
    m = np.arange(d)
    if k == 0:
        amps = omega[(outcome * m) % d] / np.sqrt(d)
    elif d % 2 == 1:
        # X Z^k |v> = lambda |v> recursion: c_m = lambda^-m omega^(k m(m-1)/2) c_0
        amps = omega[(k * (m * (m - 1) // 2) - outcome * m) % d] / np.sqrt(d)
    else:
        # d = 2 only: XZ has order 4 with eigenvalues +/- i
        lam = basis_eigenvalue(basis, outcome, d)
        amps = lam ** (-m.astype(float)) / np.sqrt(d)
    return StateVector(d, 1, amps)


@dataclass(frozen=True)
class MeasurementEvent:
    """A projective measurement: which qudit, which basis, which outcome."""

    qudit: int
    basis: MeasurementBasis
    outcome: int


def project(s: StateVector, event: MeasurementEvent) -> tuple[StateVector, float]:
    """Project out one qudit, returning the renormalized residual and the
    outcome probability (the squared norm of the unnormalized contraction)."""
    if not 0 <= event.qudit < s.n_qudits:
        raise ValueError(f"qudit {event.qudit} out of range")
    v = mub_eigenstate(event.basis, event.outcome, s.d).amps
    res = np.tensordot(v.conj(), s.reshaped(), axes=(0, event.qudit))
    prob = float(np.vdot(res, res).real)
    if prob < PROB_TOL:
        raise ZeroProbabilityError(
            f"outcome {event.outcome} in basis {event.basis.name} has probability {prob:.3e}"
        )
    residual = StateVector(s.d, s.n_qudits - 1, res.reshape(-1) / np.sqrt(prob))
    return residual, prob


def _project_first_valid(
    s: StateVector, qudit: int, basis: MeasurementBasis
) -> StateVector:
    """Residual for the lowest outcome index of nonzero probability."""
    for outcome in range(s.d):
        try:
            residual, _ = project(s, MeasurementEvent(qudit, basis, outcome))
            return residual
        except ZeroProbabilityError:
            continue
    raise ZeroProbabilityError("no outcome has nonzero probability")


@dataclass(frozen=True)
class StateClass3:
    """Residue class after one measurement: product, S_nB, or a 3-particle
    maximally entangled state. ``separated`` is the 0-based position of the
    lone pure qudit for the S_nB case."""

    kind: str
    separated: int | None = None


@dataclass(frozen=True)
class StateClass2:
    """Residue class after two measurements: product or a generalized Bell pair."""

    kind: str


def _purity_kind(value: float, d: int) -> str:
    if abs(value - 1.0) <= PURITY_TOL:
        return "pure"
    if abs(value - 1.0 / d) <= PURITY_TOL:
        return "mixed"
    raise ClassificationError(f"single-site purity {value} is neither 1 nor 1/{d}")


def classify3(s: StateVector) -> StateClass3:
    """Classify a 3-qudit projection residue by its single-site purities."""
    if s.n_qudits != 3:
        raise ValueError("classify3 expects a 3-qudit state")
    kinds = [
        _purity_kind(purity(partial_trace(s, (i,), validate=False)), s.d)
        for i in range(3)
    ]
    pure_sites = [i for i, k in enumerate(kinds) if k == "pure"]
    if len(pure_sites) == 0:
        return StateClass3(GHZ3)
    if len(pure_sites) == 3:
        return StateClass3(PRODUCT)
    if len(pure_sites) == 1:
        return StateClass3(SNB, pure_sites[0])
    raise ClassificationError(f"purity pattern {kinds} is not a graph-state residue")


def classify2(s: StateVector) -> StateClass2:
    """Classify a 2-qudit projection residue: Bell-type or product."""
    if s.n_qudits != 2:
        raise ValueError("classify2 expects a 2-qudit state")
    kind = _purity_kind(purity(partial_trace(s, (0,), validate=False)), s.d)
    return StateClass2(PRODUCT if kind == "pure" else BELL)


@dataclass(frozen=True)
class FirstMove:
    """One first measurement (qudit, basis), its residue class, and the class
    of every second measurement that can follow it. Second-qudit indices refer
    to positions within the 3-qudit residual state."""

    qudit: int
    basis: MeasurementBasis
    class3: StateClass3
    seconds: tuple[tuple[int, MeasurementBasis, str], ...]

    def pair_count(self, kind: str) -> int:
        return sum(1 for _, _, c in self.seconds if c == kind)


@dataclass(frozen=True)
class PathTally:
    """Classified outcomes of all single measurements and measurement pairs.

    First-measurement classes total 4(d+1); ordered pairs total 12(d+1)^2.
    """

    d: int
    moves: tuple[FirstMove, ...]

    def first_counts(self, qudit: int | None = None) -> dict[str, int]:
        counts = {PRODUCT: 0, SNB: 0, GHZ3: 0}
        for mv in self._moves(qudit):
            counts[mv.class3.kind] += 1
        return counts

    def pair_counts(self, qudit: int | None = None) -> dict[str, int]:
        counts = {PRODUCT: 0, BELL: 0}
        for mv in self._moves(qudit):
            counts[PRODUCT] += mv.pair_count(PRODUCT)
            counts[BELL] += mv.pair_count(BELL)
        return counts

    def persistency_histogram(self, qudit: int | None = None) -> dict[int, int]:
        """Paths binned by the measurement count after which entanglement is gone."""
        hist = {1: 0, 2: 0, 3: 0}
        for mv in self._moves(qudit):
            if mv.class3.kind == PRODUCT:
                hist[1] += len(mv.seconds)
                continue
            for _, _, c in mv.seconds:
                hist[2 if c == PRODUCT else 3] += 1
        return hist

    def branch_tree(self, qudit: int = 0) -> list[dict]:
        """Per-branch counts for one first-qudit choice: first-measurement class,
        how many bases lead to it, and where its measurement pairs end up."""
        branches: dict[str, dict] = {}
        for mv in self._moves(qudit):
            node = branches.setdefault(
                mv.class3.kind,
                {"first_class": mv.class3.kind, "first_count": 0,
                 "pairs": {PRODUCT: 0, BELL: 0}},
            )
            node["first_count"] += 1
            node["pairs"][PRODUCT] += mv.pair_count(PRODUCT)
            node["pairs"][BELL] += mv.pair_count(BELL)
        return [branches[k] for k in (PRODUCT, SNB, GHZ3) if k in branches]

    def _moves(self, qudit: int | None) -> tuple[FirstMove, ...]:
        if qudit is None:
            return self.moves
        return tuple(mv for mv in self.moves if mv.qudit == qudit)

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "first_measurements": self.first_counts(),
            "measurement_pairs": self.pair_counts(),
            "persistency_histogram": {
                str(k): v for k, v in self.persistency_histogram().items()
            },
            "branches_first_qudit": self.branch_tree(0),
        }


def enumerate_paths(s: StateVector) -> PathTally:
    """Classify the residue of every ordered single and pair of measurements.

    The outcome of each projection is fixed to the lowest index of nonzero
    probability; residue classes are outcome-independent for graph states.
    """
    if s.n_qudits != 4:
        raise ValueError("path enumeration expects a four-qudit state")
    bases = all_bases(s.d)
    moves = []
    for q1 in range(4):
        for b1 in bases:
            res3 = _project_first_valid(s, q1, b1)
            c3 = classify3(res3)
            seconds = []
            for q2 in range(3):
                for b2 in bases:
                    res2 = _project_first_valid(res3, q2, b2)
                    seconds.append((q2, b2, classify2(res2).kind))
            moves.append(FirstMove(q1, b1, c3, tuple(seconds)))
    return PathTally(s.d, tuple(moves))


@dataclass(frozen=True)
class PersistencyStats:
    """Averaged persistency over all paths with a fixed first qudit, the
    minimum over paths, and the normalized Bell-minus-product difference."""

    n_ave: float
    n_min: int
    delta: float
    n_ave_exact: Fraction
    delta_exact: Fraction


def persistency_stats(s: StateVector, tally: PathTally | None = None) -> PersistencyStats:
    """Persistency statistics of a four-qudit graph state.

    A path scores 1 if entanglement is gone after the first measurement, 2 if
    after the second, and 3 otherwise; the average runs over the 3(d+1)^2
    paths with a fixed first qudit. The per-qudit statistics are checked to
    agree before the common value is returned. A fully product input scores 0.
    An already computed ``tally`` for the same state may be passed to avoid
    re-enumeration.
    """
    d = s.d
    if all(
        abs(purity(partial_trace(s, (i,), validate=False)) - 1.0) <= PURITY_TOL
        for i in range(s.n_qudits)
    ):
        return PersistencyStats(0.0, 0, 0.0, Fraction(0), Fraction(0))
    if tally is None:
        tally = enumerate_paths(s)
    total = 3 * (d + 1) ** 2
    per_qudit = []
    for q in range(4):
        hist = tally.persistency_histogram(q)
        pairs = tally.pair_counts(q)
        n_sum = sum(n * c for n, c in hist.items())
        per_qudit.append((n_sum, pairs[BELL], pairs[PRODUCT]))
    if len(set(per_qudit)) != 1:
        raise ClassificationError(
            "path statistics unexpectedly depend on the first qudit measured"
        )
    n_sum, bell, prod = per_qudit[0]
    hist = tally.persistency_histogram(0)
    n_min = 1 if hist[1] else (2 if hist[2] else 3)
    n_ave = Fraction(n_sum, total)
    delta = Fraction(bell - prod, total)
    return PersistencyStats(float(n_ave), n_min, float(delta), n_ave, delta)

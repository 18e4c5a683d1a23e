"""Self-verifying report bundles over the canonical state families.

A bundle collects, per prime dimension, the purity profiles, the first- and
second-measurement tallies, the per-branch path tree, the persistency
statistics, and the maximal-mixing flags of the three reduced family states,
together with a checklist comparing every value against its closed-form
expectation. Numeric entries carry both an exact-rational string and a float
rounded to 12 significant digits, so repeated runs are byte-identical.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from . import __version__
from .measures import is_k_mm, purity_profile
from .pauli import check_prime
from .states import family_reduced_state
from .steering import BELL, GHZ3, PRODUCT, SNB, enumerate_paths, persistency_stats

__all__ = [
    "build_report",
    "exact_and_float",
    "expected_first_counts",
    "expected_pair_counts",
    "expected_purity_columns",
    "flatten_json",
    "fmt_float",
    "rational_str",
]

FAMILIES = ("G", "C", "P")

# Pair subsystems of the reduced states, split by their role on the square:
# (0,2) and (1,3) are the diagonally coordinated pairs.
DIAGONAL_PAIRS = ((0, 2), (1, 3))
ADJACENT_PAIRS = ((0, 1), (1, 2), (2, 3), (0, 3))


def fmt_float(x: float) -> float:
    """Round to 12 significant digits for stable serialization."""
    return float(f"{float(x):.12g}")


def rational_str(x, max_den: int = 10**6) -> str | None:
    """Exact-rational rendering of a numerically rational value, or None."""
    if isinstance(x, Fraction):
        frac = x
    else:
        frac = Fraction(float(x)).limit_denominator(max_den)
        if abs(float(frac) - float(x)) > 1e-9:
            return None
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"


def exact_and_float(x) -> dict:
    return {"exact": rational_str(x), "float": fmt_float(x)}


def _family_effective(family: str, d: int) -> str:
    """At d = 2 the negated edge is no negation at all, so P collapses to C."""
    if family == "P" and d == 2:
        return "C"
    return family


def expected_purity_columns(family: str, d: int) -> tuple[Fraction, Fraction, Fraction]:
    """(single, diagonal pair, adjacent pair) purity pattern of a family."""
    family = _family_effective(family, d)
    one_d = Fraction(1, d)
    one_d2 = Fraction(1, d * d)
    if family == "G":
        return (one_d, one_d, one_d)
    if family == "C":
        return (one_d, one_d, one_d2)
    return (one_d, one_d2, one_d2)


def expected_first_counts(family: str, d: int) -> dict[str, int]:
    family = _family_effective(family, d)
    if family == "G":
        return {PRODUCT: 4, SNB: 0, GHZ3: 4 * d}
    if family == "C":
        return {PRODUCT: 0, SNB: 4, GHZ3: 4 * d}
    return {PRODUCT: 0, SNB: 0, GHZ3: 4 * (d + 1)}


def expected_pair_counts(family: str, d: int) -> dict[str, int]:
    family = _family_effective(family, d)
    if family == "G":
        return {PRODUCT: 24 * d + 12, BELL: 12 * d * d}
    if family == "C":
        return {PRODUCT: 20 * d + 8, BELL: 12 * d * d + 4 * d + 4}
    return {PRODUCT: 12 * d + 12, BELL: 12 * d * d + 12 * d}


# Exact persistency statistics at d = 3: (n_ave, n_min, delta).
_PERSISTENCY_D3 = {
    "G": (Fraction(37, 16), 1, Fraction(1, 8)),
    "C": (Fraction(127, 48), 2, Fraction(7, 24)),
    "P": (Fraction(11, 4), 2, Fraction(1, 2)),
}


def expected_n_min(family: str, d: int) -> int:
    return 1 if _family_effective(family, d) == "G" else 2


def expected_mmes(family: str, d: int) -> tuple[bool, bool]:
    """(1-MM, 2-MM) flags: only the P family reaches 2-MM, and only for d >= 3."""
    return (True, _family_effective(family, d) == "P")


class _Checklist:
    def __init__(self) -> None:
        self.rows: list[dict] = []

    def add(self, d: int, name: str, expected, actual) -> None:
        self.rows.append(
            {
                "d": d,
                "name": name,
                "expected": expected,
                "actual": actual,
                "pass": expected == actual,
            }
        )

    def all_pass(self) -> bool:
        return all(row["pass"] for row in self.rows)


def _purity_section(d: int, checks: _Checklist) -> dict:
    section = {}
    for family in FAMILIES:
        state = family_reduced_state(family, d)
        profile = purity_profile(state)
        section[family] = profile.to_json_dict()
        exp_single, exp_diag, exp_adj = expected_purity_columns(family, d)
        singles = tuple(fmt_float(v) for v in profile.singles())
        checks.add(d, f"purity:{family}:single", (fmt_float(exp_single),) * 4, singles)
        diag = tuple(fmt_float(profile[p]) for p in DIAGONAL_PAIRS)
        checks.add(d, f"purity:{family}:diagonal_pair", (fmt_float(exp_diag),) * 2, diag)
        adj = tuple(fmt_float(profile[p]) for p in ADJACENT_PAIRS)
        checks.add(d, f"purity:{family}:adjacent_pair", (fmt_float(exp_adj),) * 4, adj)

        one_mm, two_mm = is_k_mm(profile, 1), is_k_mm(profile, 2)
        checks.add(d, f"mmes:{family}", expected_mmes(family, d), (one_mm, two_mm))
        section.setdefault("_mmes", {})[family] = {"1mm": one_mm, "2mm": two_mm}
    return section


def _steering_section(d: int, checks: _Checklist) -> dict:
    firsts, pairs, trees, persistency = {}, {}, {}, {}
    for family in FAMILIES:
        state = family_reduced_state(family, d)
        tally = enumerate_paths(state)
        fc, pc = tally.first_counts(), tally.pair_counts()
        firsts[family] = fc
        pairs[family] = pc
        trees[family] = tally.branch_tree(0)
        checks.add(d, f"first_tally:{family}", expected_first_counts(family, d), fc)
        checks.add(d, f"pair_tally:{family}", expected_pair_counts(family, d), pc)
        checks.add(d, f"pair_total:{family}", 12 * (d + 1) ** 2, sum(pc.values()))

        stats = persistency_stats(state, tally)
        persistency[family] = {
            "n_ave": exact_and_float(stats.n_ave_exact),
            "n_min": stats.n_min,
            "delta": exact_and_float(stats.delta_exact),
        }
        checks.add(d, f"persistency_n_min:{family}", expected_n_min(family, d), stats.n_min)
        checks.add(d, f"n_ave_below_3:{family}", True, stats.n_ave < 3.0)
        if d == 3:
            exp_ave, _, exp_delta = _PERSISTENCY_D3[family]
            checks.add(d, f"persistency_n_ave:{family}", rational_str(exp_ave),
                       rational_str(stats.n_ave_exact))
            checks.add(d, f"persistency_delta:{family}", rational_str(exp_delta),
                       rational_str(stats.delta_exact))
    return {
        "first_measurement_tallies": firsts,
        "pair_tallies": pairs,
        "path_tree": trees,
        "persistency": persistency,
    }


def build_report(d_values: Sequence[int]) -> tuple[dict, bool]:
    """Full verified bundle over the given prime dimensions.

    Returns (bundle, all_pass); every comparison row also appears under
    ``checks`` with its expected and actual values.
    """
    d_values = [check_prime(d) for d in d_values]
    checks = _Checklist()
    sections = {}
    n_aves: dict[str, list[float]] = {family: [] for family in FAMILIES}
    for d in d_values:
        purities = _purity_section(d, checks)
        mmes = purities.pop("_mmes")
        steering = _steering_section(d, checks)
        for family in FAMILIES:
            n_aves[family].append(steering["persistency"][family]["n_ave"]["float"])
        sections[str(d)] = {
            "purities": purities,
            "mmes": mmes,
            **steering,
        }
    if len(d_values) >= 2 and sorted(d_values) == d_values:
        for family in FAMILIES:
            seq = n_aves[family]
            increasing = all(a < b for a, b in zip(seq, seq[1:]))
            checks.add(0, f"n_ave_monotone:{family}", True, increasing)
    bundle = {
        "metadata": {
            "tool": "quditgraph",
            "version": __version__,
            "d_values": list(d_values),
            "families": list(FAMILIES),
            "basis_order": "row-major |j1 j2 j3 j4>, first qudit slowest",
        },
        "sections": sections,
        "checks": checks.rows,
        "all_pass": checks.all_pass(),
    }
    return bundle, checks.all_pass()


def flatten_json(obj, prefix: str = "") -> list[tuple[str, object]]:
    """Depth-first (path, leaf-value) pairs of a JSON-like structure."""
    rows: list[tuple[str, object]] = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            rows.extend(flatten_json(v, f"{prefix}.{k}" if prefix else str(k)))
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            rows.extend(flatten_json(v, f"{prefix}[{i}]"))
    else:
        rows.append((prefix, obj))
    return rows

"""Cross-route verification: every quantity the package computes by more
than one method is recomputed both ways and compared exactly."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .covers import (
    CharacterCache,
    cover_profiles,
    frobenius_count,
    naive_enumerate,
    profile_connected_counts,
)
from .layers import LayerSignature, f_closed, f_kontsevich_base, f_recurrence
from .rationals import PiValue
from .ribbon import leading_part_fit
from .trees import volume

FIT_SIGNATURES = ((0, 2), (1, 1), (1, 3), (2, 0), (2, 2), (3, 1))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    lhs: str
    rhs: str


def _valid_signatures(mn_max: int) -> list[LayerSignature]:
    out = []
    for m in range(mn_max + 1):
        for n in range(mn_max + 1 - m):
            if (m, n) == (0, 0) or (m - n) % 2 or m - n < -2:
                continue
            out.append(LayerSignature(m, n))
    return out


def run_verification(
    k_max: int = 2,
    mn_max: int = 8,
    cover_n_max: int = 5,
    cache: CharacterCache | None = None,
) -> list[CheckResult]:
    """Run every cross-route check and report one result per identity.

    Checks: f_closed = f_recurrence on all valid signatures with
    m + n <= mn_max, f_closed(m, 0) = f_kontsevich_base(m), the leading-term
    fit from raw lattice counts on its supported signatures, volume(K)
    against the closed form for K <= k_max, and the character-sum cover
    counts against direct enumeration for degrees up to min(cover_n_max, 5).
    """
    results: list[CheckResult] = []

    for sig in _valid_signatures(mn_max):
        closed = f_closed(sig)
        recurred = f_recurrence(sig)
        results.append(
            CheckResult(
                name=f"local-poly closed = recurrence at (m,n)=({sig.m},{sig.n})",
                passed=closed == recurred,
                lhs=str(closed),
                rhs=str(recurred),
            )
        )

    for m in range(2, min(mn_max, 10) + 1, 2):
        closed = f_closed(LayerSignature(m, 0))
        base = f_kontsevich_base(m)
        results.append(
            CheckResult(
                name=f"local-poly closed = cylinder base at (m,n)=({m},0)",
                passed=closed == base,
                lhs=str(closed),
                rhs=str(base),
            )
        )

    for m, n in FIT_SIGNATURES:
        if m + n > mn_max:
            continue
        closed = f_closed(LayerSignature(m, n))
        fitted = leading_part_fit(m, n)
        results.append(
            CheckResult(
                name=f"leading-term fit = closed form at (m,n)=({m},{n})",
                passed=fitted == closed,
                lhs=str(fitted),
                rhs=str(closed),
            )
        )

    for k in range(1, k_max + 1):
        computed = volume(k)
        expected = PiValue(Fraction(1, 2 ** (k - 1)), 2 * k + 2)
        results.append(
            CheckResult(
                name=f"volume({k}) = pi^{2 * k + 2}/2^{k - 1}",
                passed=computed == expected,
                lhs=str(computed),
                rhs=str(expected),
            )
        )

    n_cap = min(cover_n_max, 5)
    connected = profile_connected_counts(n_cap, cache) if n_cap >= 1 else {}
    for n in range(1, n_cap + 1):
        all_ok = True
        lhs = rhs = f"all profile counts at degree {n}"
        for profile in cover_profiles(n, max_threes=2, max_ones=6):
            classes = profile.corner_types
            frob = frobenius_count(classes, cache)
            naive_all = naive_enumerate(classes)
            if frob != naive_all:
                all_ok, lhs, rhs = False, f"{classes}: {frob}", f"{classes}: {naive_all}"
                break
            conn = connected.get(classes, Fraction(0))
            naive_conn = naive_enumerate(classes, connected_only=True)
            if conn != naive_conn:
                all_ok, lhs, rhs = False, f"{classes}: {conn}", f"{classes}: {naive_conn}"
                break
        results.append(
            CheckResult(
                name=f"cover counts character sum = direct enumeration, degree {n}",
                passed=all_ok,
                lhs=lhs,
                rhs=rhs,
            )
        )

    return results

"""Analytic mixing-time bounds and the two-eigenvector distance formula."""

from __future__ import annotations

import math

from qwalk_lab.core.contracts import Theorem2Status
from qwalk_lab.core.exceptions import HypothesisViolationError, InvalidParameterError

MAX_GAP = 2.0
OVERLAP_EPSILON_RATIO = 80.0
# Relative slack so that epsilon = Q / 80 computed in floating point is accepted.
BOUNDARY_SLACK = 1e-12


def theorem1_upper_bound(m: int, t_rel: float, epsilon: float) -> float:
    """2 pi ln(2m) t_rel / epsilon, valid for every initial state."""
    if m < 1:
        raise InvalidParameterError(f"m must be >= 1, got {m}")
    if t_rel <= 0.0:
        raise InvalidParameterError(f"t_rel must be positive, got {t_rel}")
    if epsilon <= 0.0:
        raise InvalidParameterError(f"epsilon must be positive, got {epsilon}")
    return 2.0 * math.pi * math.log(2 * m) * t_rel / epsilon


def _hypothesis_failures(overlap: float, gap: float, epsilon: float) -> list[str]:
    reasons = []
    if gap > MAX_GAP:
        reasons.append(f"gap {gap:.6g} exceeds {MAX_GAP}")
    limit = overlap / OVERLAP_EPSILON_RATIO
    if epsilon > limit * (1.0 + BOUNDARY_SLACK):
        reasons.append(f"epsilon {epsilon:.6g} exceeds Q/80 = {limit:.6g}")
    return reasons


def _check_ranges(overlap: float, gap: float, epsilon: float) -> None:
    if not 0.0 < overlap <= 1.0 + BOUNDARY_SLACK:
        raise InvalidParameterError(f"overlap must lie in (0, 1], got {overlap}")
    if gap <= 0.0:
        raise InvalidParameterError(f"gap must be positive, got {gap}")
    if epsilon <= 0.0:
        raise InvalidParameterError(f"epsilon must be positive, got {epsilon}")


def theorem2_lower_bound(overlap: float, gap: float, epsilon: float) -> float:
    """Q / (8 epsilon gap) for a pair of real eigenvectors with d(lambda, lambda') <= 2."""
    _check_ranges(overlap, gap, epsilon)
    reasons = _hypothesis_failures(overlap, gap, epsilon)
    if reasons:
        raise HypothesisViolationError("; ".join(reasons))
    return overlap / (8.0 * epsilon * gap)


def theorem2_status(overlap: float, gap: float, epsilon: float) -> Theorem2Status:
    """Like :func:`theorem2_lower_bound` but reports why the bound is absent."""
    _check_ranges(overlap, gap, epsilon)
    reasons = _hypothesis_failures(overlap, gap, epsilon)
    return Theorem2Status(
        overlap=overlap,
        gap=gap,
        epsilon=epsilon,
        holds=not reasons,
        reasons=reasons,
        bound=None if reasons else overlap / (8.0 * epsilon * gap),
    )


def two_eigenvector_distance(overlap: float, gap: float, T: int) -> float:
    """d(T) of (psi + psi') / sqrt 2 for real eigenvectors psi, psi' at arc distance *gap*.

    (1 / 2T) |1 - cos(gap T) + sin(gap T) sin(gap) / (1 - cos gap)| Q
    """
    if T < 1:
        raise InvalidParameterError(f"T must be >= 1, got {T}")
    if math.isclose(math.cos(gap), 1.0, rel_tol=0.0, abs_tol=1e-15):
        raise InvalidParameterError("gap must be nonzero modulo 2 pi")
    value = 1.0 - math.cos(gap * T) + math.sin(gap * T) * math.sin(gap) / (1.0 - math.cos(gap))
    return abs(value) * overlap / (2.0 * T)


def reference_points(family: str | None, n: int | None, epsilon: float) -> dict[str, float]:
    """Order-of-growth reference values for the built-in families (constants set to 1)."""
    if family is None or n is None:
        return {}
    match family:
        case "cycle":
            return {
                "lower_n2_over_eps": n**2 / epsilon,
                "upper_n2_log_n_over_eps": n**2 * math.log(n) / epsilon,
            }
        case "hypercube":
            return {
                "lower_n_over_2eps": n / (2.0 * epsilon),
                "upper_2pi_n_log_n_over_eps": 2.0 * math.pi * n * math.log(n) / epsilon,
            }
        case "complete":
            return {"order_1_over_eps": 1.0 / epsilon}
        case _:
            return {}

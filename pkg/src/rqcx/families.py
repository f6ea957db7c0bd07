"""Named 2-qubit X-state families and their closed-form reference measures.

Werner states mix the singlet with the identity; MNMS (maximally nonlocal
mixed states) and MEMS (maximally entangled mixed states, with the kinked
chi(x) weight) are the standard one-parameter benchmark families.
"""

from __future__ import annotations

from dataclasses import dataclass

from .measures import u_func
from .states import XStateParams

FAMILY_KINDS = ("werner", "mnms", "mems")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    param: float

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family {self.kind!r}; expected one of {FAMILY_KINDS}")
        if not 0.0 <= self.param <= 1.0:
            raise ValueError(f"family parameter must lie in [0, 1], got {self.param}")


def mems_chi(x: float) -> float:
    """Weight function of the MEMS family: 1/3 below x = 2/3, x/2 above."""
    return 1.0 / 3.0 if x < 2.0 / 3.0 else 0.5 * x


def make_state(spec: FamilySpec) -> XStateParams:
    x = spec.param
    if spec.kind == "werner":
        return XStateParams(
            a=0.25 * (1.0 - x),
            b=0.25 * (1.0 + x),
            c=0.25 * (1.0 + x),
            d=0.25 * (1.0 - x),
            r=0.0,
            s=-0.5 * x,
        )
    if spec.kind == "mnms":
        return XStateParams(a=0.5, b=0.0, c=0.0, d=0.5, r=0.5 * x, s=0.0)
    chi = mems_chi(x)
    return XStateParams(a=chi, b=1.0 - 2.0 * chi, c=0.0, d=chi, r=0.5 * x, s=0.0)


def family_laqc_closed(spec: FamilySpec) -> float:
    """u(param)/2 for all three families."""
    return 0.5 * u_func(spec.param)


def family_concurrence_closed(spec: FamilySpec) -> float:
    if spec.kind == "werner":
        return max(0.0, 0.5 * (3.0 * spec.param - 1.0))
    return spec.param


def werner_concurrence_rtn(z: float, lam: float) -> float:
    """Concurrence of a dephased Werner state at envelope value Lambda."""
    if not 0.0 <= z <= 1.0:
        raise ValueError("Werner parameter must lie in [0, 1]")
    if abs(lam) > 1.0 + 1e-12:
        raise ValueError("|Lambda| must not exceed 1")
    return max(0.0, 0.5 * ((1.0 + 2.0 * lam * lam) * z - 1.0))


def crossover_z(tol: float = 1e-12) -> float:
    """Werner parameter where LAQC and concurrence coincide, by bisection.

    The residual u(z)/2 - (3z - 1)/2 is positive just above the separability
    threshold z = 1/3 and negative from the crossover until z = 1.
    """
    def residual(z: float) -> float:
        return 0.5 * u_func(z) - 0.5 * (3.0 * z - 1.0)

    lo, hi = 0.34, 0.99
    f_lo = residual(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = residual(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0) == (f_lo > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)

"""Ordering-ambiguity parameter algebra.

The von Roos kinetic operator carries three exponents (alpha, beta, gamma)
with alpha + beta + gamma = -1.  Everything downstream sees them only through
``zeta`` and ``beta`` (and the mass exponent ``j`` via ``barrier_f``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional

from .config import TOL


@dataclass(frozen=True)
class AmbiguityParameters:
    """Ordered triple (alpha, beta, gamma).

    The default constructor enforces the von Roos constraint.  Use
    :meth:`relaxed` for exploratory sweeps where it need not hold; such values
    carry ``canonical=False``.
    """

    alpha: float
    beta: float
    gamma: float
    canonical: bool = field(default=True, compare=False)

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.canonical and abs(self.alpha + self.beta + self.gamma + 1.0) > TOL.von_roos:
            raise ValueError(
                f"von Roos constraint violated: alpha+beta+gamma = "
                f"{self.alpha + self.beta + self.gamma!r} (expected -1)"
            )

    @classmethod
    def relaxed(cls, alpha, beta, gamma):
        return cls(float(alpha), float(beta), float(gamma), canonical=False)

    @classmethod
    def from_alpha_gamma(cls, alpha, gamma):
        """Fix beta from the constraint."""
        return cls(float(alpha), -1.0 - alpha - gamma, float(gamma))

    @property
    def is_von_roos(self) -> bool:
        return abs(self.alpha + self.beta + self.gamma + 1.0) <= TOL.von_roos

    def swapped(self) -> "AmbiguityParameters":
        """alpha <-> gamma."""
        return AmbiguityParameters(self.gamma, self.beta, self.alpha, canonical=self.canonical)

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma)


@dataclass(frozen=True)
class BarrierStrength:
    """Axial inverse-square strength F and, when admissible, |L| = sqrt(F + 1/4)."""

    f_value: float
    script_l_abs: Optional[float]

    @property
    def admissible(self) -> bool:
        return self.script_l_abs is not None


def zeta(params: AmbiguityParameters) -> float:
    a, b, g = params.alpha, params.beta, params.gamma
    return a * (a - 1.0) + g * (g - 1.0) - b * (b + 1.0)


def barrier_f(params: AmbiguityParameters, j: float) -> float:
    """Coefficient of 1/z^2 generated by the axial mass factor z**j."""
    z = zeta(params)
    # + 0.0 turns the -0.0 produced at j = 0 into 0.0
    return -j * (j * (2.0 * z - 3.0) / 4.0 - (j - 1.0) * params.beta / 2.0) + 0.0


def script_l(f_value: float) -> BarrierStrength:
    """|L| from F + 1/4 = L^2.

    A negative radicand is returned as ``script_l_abs=None`` rather than
    raised, so sweeps can record it per point.
    """
    radicand = f_value + 0.25
    if radicand < 0.0:
        return BarrierStrength(f_value, None)
    return BarrierStrength(f_value, math.sqrt(radicand))


class NamedSet(enum.Enum):
    BEN_DANIEL_DUKE = "BenDanielDuke"
    ZHU_KROEMER = "ZhuKroemer"
    MUSTAFA_MAZHARIMOUSAVI = "MustafaMazharimousavi"
    GORA_WILLIAMS = "GoraWilliams"
    LI_KUHN = "LiKuhn"

    @property
    def short(self) -> str:
        return _SHORT[self]

    @property
    def params(self) -> AmbiguityParameters:
        return AmbiguityParameters(*_CATALOG[self])


_CATALOG = {
    NamedSet.BEN_DANIEL_DUKE: (0.0, -1.0, 0.0),
    NamedSet.ZHU_KROEMER: (-0.5, 0.0, -0.5),
    NamedSet.MUSTAFA_MAZHARIMOUSAVI: (-0.25, -0.5, -0.25),
    NamedSet.GORA_WILLIAMS: (-1.0, 0.0, 0.0),
    NamedSet.LI_KUHN: (0.0, -0.5, -0.5),
}

_SHORT = {
    NamedSet.BEN_DANIEL_DUKE: "bdd",
    NamedSet.ZHU_KROEMER: "zk",
    NamedSet.MUSTAFA_MAZHARIMOUSAVI: "mm",
    NamedSet.GORA_WILLIAMS: "gw",
    NamedSet.LI_KUHN: "lk",
}


def _lookup(name) -> NamedSet:
    if isinstance(name, NamedSet):
        return name
    key = str(name).strip().lower().replace("-", "").replace("_", "").replace(" ", "")
    for member in NamedSet:
        if key in (member.short, member.value.lower(), member.name.lower().replace("_", "")):
            return member
    choices = ", ".join(m.short for m in NamedSet)
    raise KeyError(f"unknown parameter set {name!r} (choose from {choices})")


def named_set(name) -> AmbiguityParameters:
    """Parameters of a catalog entry; accepts the enum, its value, or the short alias."""
    return _lookup(name).params


def resolve_set(name) -> NamedSet:
    return _lookup(name)

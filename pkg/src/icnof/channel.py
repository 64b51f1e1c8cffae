"""Channel parametrization for the two-user Gaussian IC with noisy feedback.

A channel instance is fully described by six nonnegative linear-scale
parameters: the forward SNR of each link, the two cross-link INRs, and the
SNR of each feedback link.  Everything downstream (achievable region,
converse region, gap analysis) consumes a :class:`ChannelParams`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InputError, InterferenceTooWeak

__all__ = [
    "CoefficientSet",
    "ChannelParams",
    "Scenario",
    "ScenarioPair",
    "SymmetricSpec",
    "derive_params",
    "classify",
    "from_symmetric",
    "db_to_linear",
    "linear_to_db",
    "params_from_dict",
]


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


@dataclass(frozen=True, slots=True)
class CoefficientSet:
    """Amplitude gains of the six physical links (all nonnegative)."""

    h_fwd_11: float
    h_fwd_22: float
    h_12: float
    h_21: float
    h_fb_11: float
    h_fb_22: float

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            value = getattr(self, name)
            if not (value >= 0.0):
                raise ValueError(f"coefficient {name} must be >= 0, got {value!r}")


@dataclass(frozen=True, slots=True)
class ChannelParams:
    """Linear-scale channel description.

    ``inr_12``/``inr_21`` must exceed 1: below that, interference is weaker
    than noise and the bounds computed here do not apply.
    """

    snr_1: float
    snr_2: float
    inr_12: float
    inr_21: float
    snr_fb_1: float
    snr_fb_2: float

    def __post_init__(self):
        if not (self.snr_1 > 0.0 and self.snr_2 > 0.0):
            raise ValueError("forward SNRs must be > 0")
        if not (self.inr_12 > 1.0 and self.inr_21 > 1.0):
            raise InterferenceTooWeak(
                f"INRs must exceed 1 (got inr_12={self.inr_12!r}, inr_21={self.inr_21!r})"
            )
        if not (self.snr_fb_1 >= 0.0 and self.snr_fb_2 >= 0.0):
            raise ValueError("feedback SNRs must be >= 0")

    def swapped(self) -> "ChannelParams":
        """The same channel with the two transmitter-receiver pairs relabeled."""
        return ChannelParams(
            snr_1=self.snr_2,
            snr_2=self.snr_1,
            inr_12=self.inr_21,
            inr_21=self.inr_12,
            snr_fb_1=self.snr_fb_2,
            snr_fb_2=self.snr_fb_1,
        )


class Scenario(enum.Enum):
    """Interference scenario label for one pair (ordering of SNR vs the INRs)."""

    S1 = 1
    S2 = 2
    S3 = 3
    S4 = 4
    S5 = 5

    def __str__(self):
        return self.name


@dataclass(frozen=True, slots=True)
class ScenarioPair:
    s1: Scenario
    s2: Scenario

    def __str__(self):
        return f"({self.s1}, {self.s2})"


@dataclass(frozen=True, slots=True)
class SymmetricSpec:
    """Symmetric channel family: INR = snr**alpha, feedback SNR = snr**beta."""

    snr: float
    alpha: float
    beta: float

    def __post_init__(self):
        if not self.snr > 1.0:
            raise ValueError(f"symmetric snr must exceed 1, got {self.snr!r}")
        if not self.alpha * math.log2(self.snr) > 0.0:
            raise InterferenceTooWeak(
                f"alpha={self.alpha!r} yields INR = snr**alpha <= 1"
            )


def derive_params(coeffs: CoefficientSet) -> ChannelParams:
    """Square-law mapping from amplitude gains to the six linear parameters.

    The feedback SNR folds in the full receive power (signal, interference,
    cross term, and unit noise) seen through the feedback gain.
    """
    snr_1 = coeffs.h_fwd_11**2
    snr_2 = coeffs.h_fwd_22**2
    inr_12 = coeffs.h_12**2
    inr_21 = coeffs.h_21**2
    if inr_12 <= 1.0 or inr_21 <= 1.0:
        raise InterferenceTooWeak(
            f"cross gains give INR <= 1 (inr_12={inr_12!r}, inr_21={inr_21!r})"
        )
    snr_fb_1 = coeffs.h_fb_11**2 * (
        coeffs.h_fwd_11**2 + 2.0 * coeffs.h_fwd_11 * coeffs.h_12 + coeffs.h_12**2 + 1.0
    )
    snr_fb_2 = coeffs.h_fb_22**2 * (
        coeffs.h_fwd_22**2 + 2.0 * coeffs.h_fwd_22 * coeffs.h_21 + coeffs.h_21**2 + 1.0
    )
    return ChannelParams(snr_1, snr_2, inr_12, inr_21, snr_fb_1, snr_fb_2)


def _scenario_one_side(snr_other: float, inr_ij: float, inr_ji: float) -> Scenario:
    # The five events partition the axis exactly; comparisons are the verbatim
    # strict/non-strict mix, no epsilon.
    matches = []
    if snr_other < min(inr_ij, inr_ji):
        matches.append(Scenario.S1)
    if inr_ji <= snr_other < inr_ij:
        matches.append(Scenario.S2)
    if inr_ij <= snr_other < inr_ji:
        matches.append(Scenario.S3)
    if max(inr_ij, inr_ji) <= snr_other < inr_ij * inr_ji:
        matches.append(Scenario.S4)
    if snr_other >= inr_ij * inr_ji:
        matches.append(Scenario.S5)
    assert len(matches) == 1, (snr_other, inr_ij, inr_ji, matches)
    return matches[0]


def classify(params: ChannelParams) -> ScenarioPair:
    """Label each pair with the unique interference scenario that holds."""
    s1 = _scenario_one_side(params.snr_2, params.inr_12, params.inr_21)
    s2 = _scenario_one_side(params.snr_1, params.inr_21, params.inr_12)
    return ScenarioPair(s1, s2)


def from_symmetric(spec: SymmetricSpec) -> ChannelParams:
    """Instantiate the symmetric channel (snr, snr**alpha, snr**beta)."""
    inr = spec.snr**spec.alpha
    if inr <= 1.0:
        raise InterferenceTooWeak(f"snr**alpha = {inr!r} <= 1")
    snr_fb = spec.snr**spec.beta
    return ChannelParams(spec.snr, spec.snr, inr, inr, snr_fb, snr_fb)


_LINEAR_KEYS = ("snr1", "snr2", "inr12", "inr21", "snr_fb1", "snr_fb2")


def params_from_dict(obj: dict) -> ChannelParams:
    """Parse the JSON parameter object.

    Accepts either all-linear keys {"snr1", ..., "snr_fb2"} or the same keys
    suffixed "_db"; mixing the two conventions is an input error.
    """
    if not isinstance(obj, dict):
        raise InputError("parameter object must be a JSON object")
    linear = [k for k in obj if k in _LINEAR_KEYS]
    db = [k for k in obj if k.endswith("_db") and k[:-3] in _LINEAR_KEYS]
    unknown = [k for k in obj if k not in _LINEAR_KEYS and not (k.endswith("_db") and k[:-3] in _LINEAR_KEYS)]
    if unknown:
        raise InputError(f"unknown parameter key(s): {', '.join(sorted(unknown))}")
    if linear and db:
        raise InputError(
            f"mixed linear and dB keys: {', '.join(sorted(linear))} vs {', '.join(sorted(db))}"
        )
    use_db = bool(db)
    keys = [k + "_db" for k in _LINEAR_KEYS] if use_db else list(_LINEAR_KEYS)
    missing = [k for k in keys if k not in obj]
    if missing:
        raise InputError(f"missing parameter key(s): {', '.join(missing)}")
    values = {}
    for base, key in zip(_LINEAR_KEYS, keys):
        raw = obj[key]
        if not isinstance(raw, (int, float)) or isinstance(raw, bool):
            raise InputError(f"parameter {key} must be a number, got {raw!r}")
        values[base] = db_to_linear(float(raw)) if use_db else float(raw)
    try:
        return ChannelParams(
            snr_1=values["snr1"],
            snr_2=values["snr2"],
            inr_12=values["inr12"],
            inr_21=values["inr21"],
            snr_fb_1=values["snr_fb1"],
            snr_fb_2=values["snr_fb2"],
        )
    except (InterferenceTooWeak, ValueError) as exc:
        raise InputError(str(exc)) from exc

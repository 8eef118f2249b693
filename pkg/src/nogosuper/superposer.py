"""The hypothetical superposition oracle.

Given weights (alpha, beta), the oracle maps two pure states to the normalized
state alpha|psi> + beta e^{i theta}|phi>, where theta comes from a pluggable
phase policy and success is drawn from a pluggable success-probability policy.
Phase policies consume canonical forms only, so they structurally cannot peek
at unphysical global phases or at any particular basis representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidParams, NullSuperposition
from .states import CanonicalForm, PureState, canonicalize, normalize

TWO_PI = 2.0 * math.pi
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3


class PhasePolicy:
    """Maps a canonicalized input pair to a relative phase in [0, 2*pi)."""

    def phase(self, psi: CanonicalForm, phi: CanonicalForm) -> float:
        raise NotImplementedError

    def __call__(self, psi: PureState, phi: PureState) -> float:
        theta = self.phase(canonicalize(psi), canonicalize(phi))
        return theta % TWO_PI


@dataclass(frozen=True)
class ConstantPhase(PhasePolicy):
    theta0: float = 0.0

    def phase(self, psi, phi):
        return self.theta0


@dataclass(frozen=True)
class OverlapArgPhase(PhasePolicy):
    """theta = arg(<psi|phi>) of the canonical forms; 0 when they are orthogonal."""

    def phase(self, psi, phi):
        overlap = complex(np.vdot(psi.amplitudes, phi.amplitudes))
        if abs(overlap) < 1e-10:
            return 0.0
        return math.atan2(overlap.imag, overlap.real)


@dataclass(frozen=True)
class CanonicalHashPhase(PhasePolicy):
    """Adversarially arbitrary but reproducible phase: 64-bit FNV-1a over the
    canonical amplitudes rounded to 12 decimal digits, mapped to [0, 2*pi)."""

    def phase(self, psi, phi):
        h = _FNV_OFFSET
        for amps in (psi.amplitudes, phi.amplitudes):
            for z in amps:
                for part in (round(float(z.real), 12), round(float(z.imag), 12)):
                    if part == 0.0:
                        part = 0.0  # merge -0.0 and +0.0
                    for byte in part.hex().encode("ascii"):
                        h ^= byte
                        h = (h * _FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
        return TWO_PI * (h / 2.0**64)


class SuccessPolicy:
    """Success probability of one oracle invocation; must be nonzero."""

    def probability(self, psi: PureState, phi: PureState) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class AlwaysSucceed(SuccessPolicy):
    def probability(self, psi, phi):
        return 1.0


@dataclass(frozen=True)
class ConstantSuccess(SuccessPolicy):
    p: float

    def __post_init__(self):
        if not 0.0 < self.p <= 1.0:
            raise InvalidParams(f"success probability must lie in (0, 1], got {self.p}")

    def probability(self, psi, phi):
        return self.p


@dataclass(frozen=True)
class OverlapScaledSuccess(SuccessPolicy):
    """p = (1 + |<psi|phi>|^2) / 2, so orthogonal inputs succeed half the time."""

    def probability(self, psi, phi):
        return 0.5 * (1.0 + abs(psi.inner(phi)) ** 2)


@dataclass(frozen=True)
class SuperposerConfig:
    alpha: complex
    beta: complex
    phase_policy: PhasePolicy
    success_policy: SuccessPolicy

    def __post_init__(self):
        if abs(self.alpha) == 0.0 or abs(self.beta) == 0.0:
            raise InvalidParams("alpha and beta must both be nonzero")
        total = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(total - 1.0) > 1e-12:
            raise InvalidParams(f"|alpha|^2 + |beta|^2 must equal 1, got {total!r}")


@dataclass(frozen=True)
class SuperposeOutcome:
    succeeded: bool
    state: PureState | None
    theta_used: float
    probability: float


def superpose_deterministic(
    cfg: SuperposerConfig, psi: PureState, phi: PureState
) -> PureState:
    """normalize(alpha * psi + beta * e^{i theta} * phi) with theta from the policy."""
    if psi.dim != phi.dim:
        raise DimensionMismatch(f"dimensions {psi.dim} and {phi.dim} differ")
    theta = cfg.phase_policy(psi, phi)
    # superpose the canonical representatives: the oracle sees density
    # matrices, so unobservable input phases must not reach the output
    raw = (
        cfg.alpha * canonicalize(psi).amplitudes
        + cfg.beta * np.exp(1j * theta) * canonicalize(phi).amplitudes
    )
    if np.linalg.norm(raw) <= 1e-10:
        raise NullSuperposition(
            "superposition cancelled to zero; the inputs are parallel with "
            "cancelling coefficients, outside the oracle's contract"
        )
    return normalize(raw)


def superpose(
    cfg: SuperposerConfig,
    psi: PureState,
    phi: PureState,
    rng: np.random.Generator,
) -> SuperposeOutcome:
    """One probabilistic invocation: Bernoulli success draw, then the
    deterministic superposition on success."""
    theta = cfg.phase_policy(psi, phi)
    p = cfg.success_policy.probability(psi, phi)
    succeeded = bool(rng.random() < p)
    state = superpose_deterministic(cfg, psi, phi) if succeeded else None
    return SuperposeOutcome(
        succeeded=succeeded, state=state, theta_used=theta, probability=p
    )

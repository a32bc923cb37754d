#!/usr/bin/env python3

"""Results of positivity checks and their JSON form."""

from __future__ import annotations

import numpy as np

from enum import Enum
from typing import Any, NamedTuple


class CertificateMode(Enum):
    EXACT_S_PROCEDURE = "exact_s_procedure"
    SAMPLED = "sampled"
    SIGN_PATTERN = "sign_pattern"


class Certificate(NamedTuple):
    """Outcome of a positivity check.

    strict implies positive; margin is positive exactly when strict; witness is
    a failing boundary vector, present only when the check is not positive.
    """

    positive: bool
    strict: bool
    margin: float
    mode: PositivityMode
    witness: np.ndarray | None


class PositivityMode(NamedTuple):
    """Decision procedure of a positivity check; n_rays and seed drive sampling."""

    kind: CertificateMode
    n_rays: int = 1000
    seed: int = 0


STRICT_TOL = 1e-9


def exact_mode() -> PositivityMode:
    return PositivityMode(CertificateMode.EXACT_S_PROCEDURE)


def sampled_mode(n_rays: int = 1000, seed: int = 0) -> PositivityMode:
    if n_rays < 1:
        raise ValueError(f"Sampled mode needs at least one ray, got {n_rays}")
    return PositivityMode(CertificateMode.SAMPLED, n_rays, seed)


def sign_pattern_mode() -> PositivityMode:
    return PositivityMode(CertificateMode.SIGN_PATTERN)


def make_certificate(
    margin: float, mode: PositivityMode, witness: np.ndarray | None
) -> Certificate:
    """Classify a normalized margin; the witness is kept only on failure."""
    positive = margin >= -STRICT_TOL
    strict = margin > STRICT_TOL
    return Certificate(
        positive=positive,
        strict=strict,
        margin=float(margin),
        mode=mode,
        witness=None if positive else np.asarray(witness, dtype=float),
    )


def mode_to_dict(mode: PositivityMode) -> dict[str, Any]:
    if mode.kind is CertificateMode.SAMPLED:
        return {"kind": mode.kind.value, "n_rays": mode.n_rays, "seed": mode.seed}
    return {"kind": mode.kind.value}


def certificate_to_dict(certificate: Certificate) -> dict[str, Any]:
    return {
        "positive": certificate.positive,
        "strict": certificate.strict,
        "margin": certificate.margin,
        "mode": mode_to_dict(certificate.mode),
        "witness": (
            None if certificate.witness is None else certificate.witness.tolist()
        ),
    }

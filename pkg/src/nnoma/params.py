"""System parameters and derived link-budget constants.

All internal computation is in SI units (m, W, Hz); dB/dBm forms appear only
at the configuration boundary.  SystemParams is immutable and safe to share
across workers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Mapping

from .errors import ConfigurationError, ValidationError

SPEED_OF_LIGHT = 2.99792458e8  # m/s

#: raw (non-derived) parameter names, i.e. what build_params expects.
RAW_FIELDS = (
    "lambda_c", "K", "R_c", "R_bar", "R_D", "alpha", "f_c",
    "P_s_dbm", "noise_dbm_per_hz", "bandwidth_hz",
    "beta0_sq", "beta1_sq", "R0_bpcu", "Ri_bpcu",
)


def dbm_to_watt(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watt_to_dbm(watt: float) -> float:
    return 10.0 * math.log10(watt) + 30.0


@dataclass(frozen=True)
class SystemParams:
    """Physical/protocol parameters plus derived constants.

    Derived fields are computed by :func:`build_params`; do not fill them by
    hand.
    """

    lambda_c: float          # BS density, points per m^2
    K: int                   # NOMA users per cluster
    R_c: float               # cluster-disc radius, m
    R_bar: float             # CoMP exclusion radius, m
    R_D: float               # cooperation radius, m
    alpha: float             # path-loss exponent (> 2)
    f_c: float               # carrier frequency, Hz
    P_s_dbm: float           # per-subcarrier transmit power, dBm
    noise_dbm_per_hz: float  # noise PSD, dBm/Hz
    bandwidth_hz: float      # transmission bandwidth, Hz
    beta0_sq: float          # power share of the CoMP signal
    beta1_sq: float          # power share of the NOMA signal
    R0_bpcu: float           # CoMP user target rate, bits per channel use
    Ri_bpcu: float           # NOMA user target rate, bits per channel use
    # derived
    eta: float = 0.0         # path-loss constant c^2/(16 pi^2 f_c^2)
    sigma_sq_w: float = 0.0  # noise power over the full bandwidth, W
    rho: float = 0.0         # transmit SNR eta*P_s/sigma^2 (linear)
    eps0: float = 0.0        # SINR threshold 2^R0 - 1
    epsi: float = 0.0        # SINR threshold 2^Ri - 1
    S_C: float = 0.0         # cooperation annulus area pi(R_D^2 - R_bar^2)

    @property
    def p_s_w(self) -> float:
        """Per-subcarrier transmit power in watts."""
        return dbm_to_watt(self.P_s_dbm)

    def raw(self) -> dict:
        """The non-derived fields as a plain dict (build_params input)."""
        return {k: getattr(self, k) for k in RAW_FIELDS}

    def with_updates(self, **changes) -> "SystemParams":
        """Rebuild with some raw fields replaced; derived fields recomputed.

        Changing ``beta0_sq`` without ``beta1_sq`` sets the complement.
        """
        raw = self.raw()
        if "beta0_sq" in changes and "beta1_sq" not in changes:
            changes = dict(changes, beta1_sq=1.0 - float(changes["beta0_sq"]))
        raw.update(changes)
        return build_params(raw)


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValidationError(message)


def build_params(raw: Mapping[str, float]) -> SystemParams:
    """Validate raw parameters and compute every derived constant."""
    missing = [k for k in RAW_FIELDS if k not in raw]
    if missing:
        raise ConfigurationError(f"missing parameter key(s): {', '.join(missing)}")
    unknown = [k for k in raw if k not in RAW_FIELDS]
    if unknown:
        raise ConfigurationError(f"unknown parameter key(s): {', '.join(unknown)}")

    vals = {k: float(raw[k]) for k in RAW_FIELDS}
    k_users = vals["K"]
    _require(k_users == int(k_users) and k_users >= 1, "K must be an integer >= 1")
    vals["K"] = int(k_users)

    _require(vals["lambda_c"] > 0, "lambda_c must be positive")
    _require(vals["R_c"] > 0, "R_c must be positive")
    _require(0 < vals["R_bar"] < vals["R_D"], "need 0 < R_bar < R_D")
    _require(vals["alpha"] > 2, "alpha must exceed 2")
    _require(vals["f_c"] > 0, "f_c must be positive")
    _require(vals["bandwidth_hz"] > 0, "bandwidth_hz must be positive")
    _require(0.0 <= vals["beta0_sq"] <= 1.0 and 0.0 <= vals["beta1_sq"] <= 1.0,
             "beta coefficients must lie in [0, 1]")
    _require(abs(vals["beta0_sq"] + vals["beta1_sq"] - 1.0) <= 1e-12,
             "beta coefficients must sum to 1")
    _require(vals["R0_bpcu"] > 0, "R0_bpcu must be positive")
    _require(vals["Ri_bpcu"] > 0, "Ri_bpcu must be positive")

    eta = SPEED_OF_LIGHT**2 / (16.0 * math.pi**2 * vals["f_c"] ** 2)
    sigma_sq = dbm_to_watt(vals["noise_dbm_per_hz"]) * vals["bandwidth_hz"]
    rho = eta * dbm_to_watt(vals["P_s_dbm"]) / sigma_sq
    eps0 = 2.0 ** vals["R0_bpcu"] - 1.0
    epsi = 2.0 ** vals["Ri_bpcu"] - 1.0
    s_c = math.pi * (vals["R_D"] ** 2 - vals["R_bar"] ** 2)

    return SystemParams(**vals, eta=eta, sigma_sq_w=sigma_sq, rho=rho,
                        eps0=eps0, epsi=epsi, S_C=s_c)


def sic_feasible(p: SystemParams) -> bool:
    """True iff the CoMP signal is decodable at any SINR: beta0^2 > beta1^2*eps0.

    When false both outage probabilities are 1 by definition.
    """
    return p.beta0_sq > p.beta1_sq * p.eps0


def validate_derived(p: SystemParams) -> None:
    """Recompute every derived field and check it matches exactly."""
    rebuilt = build_params(p.raw())
    for f in fields(SystemParams):
        if getattr(rebuilt, f.name) != getattr(p, f.name):
            raise ValidationError(f"derived field {f.name} inconsistent with raw inputs")

"""Pruebas Monte Carlo de martingalas y la relación κ ↦ (c, h)."""

from src.martingale.lab import (
    DriftReport,
    MartingaleSuite,
    RNDensityReport,
    alpha_from_beta,
    central_charge_duality,
    ch_from_kappa,
    exact_kappa,
    companion_exponent,
    drift_test,
    kernel_martingale_suite,
    observable_drift_test,
    rn_density_report,
)

__all__ = [
    "DriftReport", "MartingaleSuite", "RNDensityReport", "alpha_from_beta", "exact_kappa",
    "central_charge_duality", "ch_from_kappa", "companion_exponent", "drift_test",
    "kernel_martingale_suite", "observable_drift_test", "rn_density_report",
]

"""Knotted electromagnetic fields: closed-form solutions, mode spectra,
coherent-state observables, and field-line topology."""

from ._knotfield import (  # noqa: F401
    KnotfieldError,
    KnotIndices,
    PhysicalScales,
    alpha,
    energy_expectation,
    field_at,
    g1,
    g2,
    linking_number,
    maxwell_residual,
    observable_report_json,
    spin_helicity_expectation,
    trace_fieldline,
    w_vector,
)

__all__ = [
    "KnotfieldError",
    "KnotIndices",
    "PhysicalScales",
    "alpha",
    "energy_expectation",
    "field_at",
    "g1",
    "g2",
    "linking_number",
    "maxwell_residual",
    "observable_report_json",
    "spin_helicity_expectation",
    "trace_fieldline",
    "w_vector",
]

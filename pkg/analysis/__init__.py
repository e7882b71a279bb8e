"""Hole analysis: fundamental holes, finiteness, saturation points and minimal saturation points."""

from analysis.frobenius import frobenius_matrix, frobenius_number
from analysis.holes import HoleAnalysis, enumerate_holes, fundamental_holes, holes_finite, is_fundamental_hole
from analysis.pipeline import AnalysisPipeline, PipelineOutcome, analyze
from analysis.saturation import (
    SaturationAnalysis,
    classify_point,
    finiteness_equivalences,
    is_saturation_point,
    min_sat_Q,
    min_sat_Qsat,
    min_sat_S,
    non_saturation_points,
)

__all__ = [
    "AnalysisPipeline",
    "HoleAnalysis",
    "PipelineOutcome",
    "SaturationAnalysis",
    "analyze",
    "classify_point",
    "enumerate_holes",
    "finiteness_equivalences",
    "frobenius_matrix",
    "frobenius_number",
    "fundamental_holes",
    "holes_finite",
    "is_fundamental_hole",
    "is_saturation_point",
    "min_sat_Q",
    "min_sat_Qsat",
    "min_sat_S",
    "non_saturation_points",
]

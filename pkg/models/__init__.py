"""Pydantic models for semigroup analysis inputs, intermediate results and reports."""

from models.basis import DioSolutionSet, HilbertBasis, HilbertElement, SignPattern, VariableSign
from models.census import BoxCensus, OracleReport, PointClass, PointReport, SaturationTag
from models.cone import ConeProfile
from models.matrix import GeneratorMatrix, LatticeNormalization, Vector
from models.report import AnalysisRequest, AnalysisSettings, Command, SaturationReport, Stage, close_stages
from models.saturation import (
    SATURATED_NOTE,
    Completeness,
    Finiteness,
    FinitenessEquivalences,
    FinitenessVerdict,
    HoleSet,
    MinimalSet,
    SaturationSets,
)
from models.shifts import INFINITY, CertificateKind, ShiftCertificate, ShiftEntry, ShiftKind, ShiftTable
from models.tables import MarginalModel

__all__ = [
    "AnalysisRequest",
    "AnalysisSettings",
    "BoxCensus",
    "CertificateKind",
    "Command",
    "Completeness",
    "ConeProfile",
    "DioSolutionSet",
    "Finiteness",
    "FinitenessEquivalences",
    "FinitenessVerdict",
    "GeneratorMatrix",
    "HilbertBasis",
    "HilbertElement",
    "HoleSet",
    "INFINITY",
    "LatticeNormalization",
    "MarginalModel",
    "MinimalSet",
    "OracleReport",
    "PointClass",
    "PointReport",
    "SATURATED_NOTE",
    "SaturationReport",
    "SaturationSets",
    "SaturationTag",
    "ShiftCertificate",
    "ShiftEntry",
    "ShiftKind",
    "ShiftTable",
    "SignPattern",
    "Stage",
    "VariableSign",
    "Vector",
    "close_stages",
]

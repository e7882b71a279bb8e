"""Staged analysis run producing one SaturationReport."""

import logging
import time
from collections.abc import Sequence
from dataclasses import dataclass, field

from analysis.holes import HoleAnalysis
from analysis.saturation import SaturationAnalysis
from engine.semigroup import Semigroup
from exceptions import ConsistencyError, InfiniteHoles, NotPointed, UnsupportedSystem
from models.matrix import GeneratorMatrix
from models.report import STAGE_ORDER, AnalysisSettings, SaturationReport, Stage
from models.saturation import HoleSet, SaturationSets

logger = logging.getLogger(__name__)


@dataclass
class PipelineOutcome:
    report: SaturationReport
    error: Exception | None = None


@dataclass
class _Timer:
    timings: dict[str, float] = field(default_factory=dict)

    def measure(self, name: str, started: float) -> None:
        self.timings[name] = round((time.perf_counter() - started) * 1000, 3)


class AnalysisPipeline:
    """Runs cone → hilbert → fundamental → finiteness → holes → saturation → minsets.

    A stage failure stops the run, except InfiniteHoles from a stage that needs a
    finite hole set: it is recorded and the stages that still make sense continue.
    Everything computed before a failure stays in the report.
    """

    def __init__(
        self,
        matrix: GeneratorMatrix,
        stages: Sequence[Stage] = STAGE_ORDER,
        settings: AnalysisSettings | None = None,
    ):
        self.matrix = matrix
        self.stages = tuple(stages)
        self.settings = settings or AnalysisSettings()

    def run(self) -> PipelineOutcome:
        fields: dict = {"matrix": self.matrix}
        timer = _Timer()
        error: Exception | None = None
        try:
            started = time.perf_counter()
            semigroup = Semigroup(self.matrix, self.settings)
            fields["rank"] = semigroup.cone.dim
            fields["profile"] = semigroup.cone.profile()
            timer.measure("cone", started)
            holes = HoleAnalysis(semigroup)
            saturation = SaturationAnalysis(holes)
            for stage in self.stages:
                started = time.perf_counter()
                try:
                    self._run_stage(stage, semigroup, holes, saturation, fields)
                except InfiniteHoles as e:
                    logger.warning("Stage %s needs a finite hole set: %s", stage, e)
                    error = error or e
                timer.measure(stage.value, started)
        except NotPointed as e:
            logger.error("Cone is not pointed: %s", e)
            fields["pointed"] = False
            error = e
        except (ConsistencyError, UnsupportedSystem) as e:
            logger.error("Analysis stopped: %s", e)
            error = e
        if error is not None:
            fields["errors"] = (f"{type(error).__name__}: {error}",)
        fields["timings_ms"] = timer.timings
        return PipelineOutcome(report=SaturationReport(**fields), error=error)

    def _run_stage(
        self,
        stage: Stage,
        semigroup: Semigroup,
        holes: HoleAnalysis,
        saturation: SaturationAnalysis,
        fields: dict,
    ) -> None:
        match stage:
            case Stage.HILBERT:
                fields["hilbert_basis"] = semigroup.hilbert_basis_model()
            case Stage.FUNDAMENTAL:
                fields["hole_set"] = HoleSet(fundamental=semigroup.lift_all(holes.fundamental))
            case Stage.FINITENESS:
                verdict = holes.finiteness
                fields["hole_set"] = fields["hole_set"].model_copy(update={"finiteness": verdict})
                if verdict.is_finite:
                    fields["shift_table"] = verdict.table
                    fields["fundamental_shift_table"] = holes.fundamental_table
                    fields["column_bounds"] = holes.column_bounds
            case Stage.HOLES:
                fields["hole_set"] = holes.hole_set()
                holes.require_finite()
            case Stage.SATURATION:
                holes.require_finite()
                fields["saturation"] = SaturationSets(non_saturation=semigroup.lift_all(saturation.non_saturation))
            case Stage.MINSETS:
                fields["saturation"] = saturation.saturation_sets()
                fields["equivalences"] = saturation.equivalences()


def analyze(
    matrix: GeneratorMatrix, stages: Sequence[Stage] = STAGE_ORDER, settings: AnalysisSettings | None = None
) -> PipelineOutcome:
    return AnalysisPipeline(matrix, stages, settings).run()

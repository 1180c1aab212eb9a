"""資料模型模組。"""

from su_mvop.models.family import QEntry, QFamily, RecurrenceCoefficients
from su_mvop.models.grid import GridSpec
from su_mvop.models.laurent import LaurentPoly, MatrixLaurent, TorusPoint, canonicalize
from su_mvop.models.operators import DiffOperator
from su_mvop.models.phipoly import PhiPoly
from su_mvop.models.reports import (
    CheckResult,
    CommutantReport,
    OutputFormat,
    RunConfig,
    Verdict,
)
from su_mvop.models.weights import (
    BottomElement,
    BoundaryPoint,
    CompositionMatrix,
    MeasureConstants,
    WeightPair,
    WeightSpec,
)

__all__ = [
    "BottomElement",
    "BoundaryPoint",
    "CheckResult",
    "CommutantReport",
    "CompositionMatrix",
    "DiffOperator",
    "GridSpec",
    "LaurentPoly",
    "MatrixLaurent",
    "MeasureConstants",
    "OutputFormat",
    "PhiPoly",
    "QEntry",
    "QFamily",
    "RecurrenceCoefficients",
    "RunConfig",
    "TorusPoint",
    "Verdict",
    "WeightPair",
    "WeightSpec",
    "canonicalize",
]

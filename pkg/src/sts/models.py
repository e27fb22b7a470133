"""
Result types of the statistical test suite.

TestResult is the in-process record for one test family on one sequence;
the pydantic models below form the JSON report.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..models import RunManifest

DEFAULT_ALPHA = 0.01


@dataclass
class TestResult:
    """One family's p-values for one sequence.

    An inapplicable result normally carries no p-values. The runs test is the
    exception: when its frequency prerequisite fails it records p = 0 for the
    sequence, as the reference suite does.
    """

    __test__ = False  # not a pytest class

    test_id: str
    subtest_ids: List[str]
    p_values: List[float] = field(default_factory=list)
    parameters: Dict[str, Any] = field(default_factory=dict)
    statistics: Dict[str, float] = field(default_factory=dict)
    applicable: bool = True
    reason: Optional[str] = None
    alpha: float = DEFAULT_ALPHA

    def passed(self) -> List[bool]:
        """Per sub-test pass flags, p >= alpha."""
        return [p >= self.alpha for p in self.p_values]

    @property
    def passed_count(self) -> int:
        return sum(self.passed())

    @property
    def total_count(self) -> int:
        return len(self.p_values)


class SubtestSummary(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    id: str
    proportion: Optional[float] = Field(None, description="Passing fraction; None when never applicable")
    applicable_count: int = 0
    passed_count: int = Field(0, alias="passedCount")
    below_threshold: Optional[bool] = Field(None, alias="belowThreshold")
    uniformity: Optional[float] = Field(None, description="Chi-square p-value of the p-values over 10 bins")


class FamilySummary(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    name: str
    title: str
    subtests: List[SubtestSummary] = Field(default_factory=list)
    proportion: Optional[float] = Field(None, description="Mean of the applicable subtest proportions")
    below_threshold: Optional[bool] = Field(None, alias="belowThreshold")


class CorpusDescriptor(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    sequences: int
    length: int
    digest: str = Field(..., description="SHA-256 over all sequences in order")


class SequenceNote(BaseModel):
    """A per-sequence inapplicability or failure, kept so nothing is dropped silently."""
    sequence: int
    test: str
    reason: str


class SuiteReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    corpus: CorpusDescriptor
    alpha: float
    threshold: float
    families: List[FamilySummary] = Field(default_factory=list)
    average_passing_rate: float = Field(..., alias="averagePassingRate")
    family_average_passing_rate: float = Field(..., alias="familyAveragePassingRate")
    failing_families: List[str] = Field(default_factory=list, alias="failingFamilies")
    notes: List[SequenceNote] = Field(default_factory=list)
    manifest: Optional[RunManifest] = None

    def family(self, name: str) -> FamilySummary:
        """Summary of one family; KeyError when it was not run."""
        for fam in self.families:
            if fam.name == name:
                return fam
        raise KeyError(name)

    def subtests(self) -> List[SubtestSummary]:
        return [s for fam in self.families for s in fam.subtests]

    def families_below_threshold(self) -> List[str]:
        return [f.name for f in self.families if f.below_threshold]

    def body_json(self) -> str:
        """Serialised report without the manifest (the reproducible part)."""
        return self.model_dump_json(by_alias=True, indent=2, exclude={"manifest"})

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)

"""
Solver configuration loaded from YAML.

Example file:

    solver:
      relevance: 2
      branch: pos-unsat
      seed: 7
      expansion_cap: 50000
"""

from pathlib import Path
from typing import Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field

from zap_engine import SolverOptions


class SolverConfig(BaseModel):
    """Validated mirror of zap_engine.SolverOptions."""

    model_config = ConfigDict(extra="forbid")

    relevance: int = Field(default=3, ge=0, description="Relevance bound k for learned clauses")
    branch: Literal["pos-unsat", "first"] = Field(default="pos-unsat", description="Branch heuristic")
    seed: Optional[int] = Field(default=None, ge=0, description="Tie-breaking seed (None = smallest literal)")
    enum_threshold: int = Field(default=10**6, ge=1, description="Group order below which subgroup search may enumerate")
    expansion_cap: int = Field(default=20_000, ge=1, description="Largest instance table kept per clause")
    max_branches: Optional[int] = Field(default=None, ge=1, description="Abort after this many branches")
    record_trace: bool = False

    @classmethod
    def from_yaml(cls, path: Path) -> "SolverConfig":
        """Load from a YAML file; settings may sit under a top-level `solver:` key."""
        with open(path, "r") as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ValueError(f"Expected a mapping in {path}, got {type(data).__name__}")
        if "solver" in data:
            data = data["solver"] or {}
        return cls(**data)

    def merged(self, **overrides) -> "SolverConfig":
        """Copy with every override that is not None applied and validated."""
        data = self.model_dump()
        data.update({key: value for key, value in overrides.items() if value is not None})
        return type(self).model_validate(data)

    def to_options(self) -> SolverOptions:
        return SolverOptions(**self.model_dump())

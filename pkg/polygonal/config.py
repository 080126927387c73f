"""
Defaults and the validated run configuration used by the command line.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field, fields
from fractions import Fraction
from typing import Any, Dict, Optional

from .errors import InvalidArgumentError
from .operators import rational

MAX_TRIANGULATION_N = 10
MAX_EHRHART_DIM = 8
MAX_VERTEX_DIM = 8
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 1000
FORMATS = ("text", "json")


@dataclass
class RunConfig:
    """
    Validated options of one command-line run.

    Attributes:
        n : polygon size
        perimeter : $|r|$, defaults to `n`
        gamma : triangulation spec (arc lists, "caterpillar" or a flip word)
        source : `--from` triangulation spec
        target : `--to` triangulation spec
        format : "text" or "json"
        seed : seed of the random rational samples
        max_dim : dimension limit for Ehrhart counting
        options : subcommand specific options
    """

    n: int = 4
    perimeter: Optional[Fraction] = None
    gamma: str = "caterpillar"
    source: Optional[str] = None
    target: Optional[str] = None
    format: str = "text"
    seed: int = DEFAULT_SEED
    max_dim: int = MAX_EHRHART_DIM
    options: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 3:
            raise InvalidArgumentError(f"n must be an integer >= 3, got {self.n!r}")
        if self.perimeter is None:
            self.perimeter = Fraction(self.n)
        else:
            self.perimeter = rational(self.perimeter)
        if self.perimeter <= 0:
            raise InvalidArgumentError("perimeter must be positive")
        if self.format not in FORMATS:
            raise InvalidArgumentError(
                f"format must be one of {', '.join(FORMATS)}, got {self.format!r}"
            )
        if self.max_dim < 1:
            raise InvalidArgumentError("max-dim must be positive")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> RunConfig:
        """
        Build a config from a plain mapping, rejecting unknown keys.

        Args:
            data: mapping of field names to values

        Returns:
            The validated config.
        """
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise InvalidArgumentError(f"unknown config fields: {', '.join(unknown)}")
        return cls(**data)

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> RunConfig:
        "Build a config from parsed command-line arguments."
        base = {f.name for f in fields(cls)} - {"options"}
        values = vars(ns)
        data: Dict[str, Any] = {k: values[k] for k in base if values.get(k) is not None}
        data["options"] = {
            k: v
            for k, v in values.items()
            if k not in base and k not in ("func", "verbose")
        }
        return cls.from_dict(data)

from __future__ import annotations

from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .operators import fmt_rational


class Report:
    """
    Reports form a tree that stores check results and sub-reports.
    Verification operations return them instead of raising.

    Attributes:
        _reports : Storage of the child reports
        _results : Storage of the report's own check results
        counts : Free-form numbers recorded along the way
    """

    _reports: Dict[str, Report]
    _results: Dict[str, CheckResult]
    counts: Dict[str, Any]

    def __init__(self) -> None:
        self.__dict__["_reports"] = {}
        self.__dict__["_results"] = {}
        self.__dict__["counts"] = {}

    def reports(self) -> Sequence[Report]:
        "Return the direct child reports."
        r: Dict[str, Report] = self.__dict__["_reports"]
        return list(r.values())

    def named_results(self) -> Sequence[Tuple[str, CheckResult]]:
        """
        Collect all the check results of this report and its descendents.

        Returns:
            The dotted name and `CheckResult` of each result.
        """
        out: List[Tuple[str, CheckResult]] = list(self._results.items())
        for name, child in self._reports.items():
            out.extend((f"{name}.{k}", v) for k, v in child.named_results())
        return out

    def results(self) -> Sequence[CheckResult]:
        "Enumerate over all the results of this report and its descendents."
        return [v for _, v in self.named_results()]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results())

    def failures(self) -> Sequence[Tuple[str, CheckResult]]:
        return [(k, v) for k, v in self.named_results() if not v.passed]

    def add_check(
        self, k: str, passed: bool, detail: str = "", witness: Any = None
    ) -> CheckResult:
        """
        Record a check result.

        Args:
            k: Local name of the check.
            passed: Outcome.
            detail: Human readable summary.
            witness: A counterexample or the data that was compared.

        Returns:
            Newly created result.
        """
        val = CheckResult(bool(passed), detail, witness)
        self.__dict__["_results"][k] = val
        return val

    def __setattr__(self, key: str, val: Any) -> None:
        if isinstance(val, CheckResult):
            self.__dict__["_results"][key] = val
        elif isinstance(val, Report):
            self.__dict__["_reports"][key] = val
        else:
            super().__setattr__(key, val)

    def __getattr__(self, key: str) -> Any:
        if key in self.__dict__["_results"]:
            return self.__dict__["_results"][key]
        if key in self.__dict__["_reports"]:
            return self.__dict__["_reports"][key]
        raise AttributeError(key)

    def to_json(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "counts": {k: to_plain(v) for k, v in self.counts.items()},
            "checks": {k: v.to_json() for k, v in self._results.items()},
            "reports": {k: v.to_json() for k, v in self._reports.items()},
        }

    def render(self) -> str:
        "One line per check: `PASS name: detail`."
        lines = []
        for name, r in self.named_results():
            status = "PASS" if r.passed else "FAIL"
            line = f"{status} {name}"
            if r.detail:
                line += f": {r.detail}"
            if not r.passed and r.witness is not None:
                line += f" (witness: {to_plain(r.witness)})"
            lines.append(line)
        return "\n".join(lines)

    def __repr__(self) -> str:
        def _addindent(s_: str, numSpaces: int) -> str:
            s2 = s_.split("\n")
            if len(s2) == 1:
                return s_
            first = s2.pop(0)
            s2 = [(numSpaces * " ") + line for line in s2]
            return first + "\n" + "\n".join(s2)

        lines = [f"({k}): {v!r}" for k, v in self._results.items()]
        for key, child in self._reports.items():
            lines.append("(" + key + "): " + _addindent(repr(child), 2))
        main_str = self.__class__.__name__ + "("
        if lines:
            main_str += "\n  " + "\n  ".join(lines) + "\n"
        return main_str + ")"


class CheckResult:
    """
    The outcome of one check stored in a `Report`.
    """

    def __init__(self, passed: bool, detail: str = "", witness: Optional[Any] = None):
        self.passed = passed
        self.detail = detail
        self.witness = witness

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {"passed": self.passed, "detail": self.detail}
        if self.witness is not None:
            out["witness"] = to_plain(self.witness)
        return out

    def __bool__(self) -> bool:
        return self.passed

    def __repr__(self) -> str:
        return f"CheckResult({'pass' if self.passed else 'fail'}, {self.detail!r})"


def to_plain(x: Any) -> Any:
    # JSON-friendly copy; rationals become "p/q" strings
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, Fraction)):
        return fmt_rational(x) if isinstance(x, Fraction) else x
    if isinstance(x, dict):
        return {str(k): to_plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = sorted(x, key=repr) if isinstance(x, (set, frozenset)) else x
        return [to_plain(v) for v in items]
    if hasattr(x, "to_json"):
        return x.to_json()
    return str(x)

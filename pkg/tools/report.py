"""Verification reports and dimension tables.

Every verification suite returns a ``Report``: a list of named checks with a
first failing witness, an info dict, and dimension tables keyed by invariant
name (``H_n``, ``H^n``, ``HC_n``, ``E^r_{p,q}`` ...). The JSON rendering and
the text rendering are produced from the same ``to_dict`` payload.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import pandas as pd

from tools.errors import AxiomFailure

logger = logging.getLogger(__name__)


@dataclass
class CheckReport:
    name: str
    passed: bool
    witness: Any = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "witness": _jsonable(self.witness),
            "detail": self.detail,
        }


@dataclass
class Report:
    title: str
    checks: List[CheckReport] = field(default_factory=list)
    info: Dict[str, Any] = field(default_factory=dict)
    tables: Dict[str, Dict[str, Any]] = field(default_factory=dict)

    def add(self, name: str, passed: bool, witness=None, detail: str = "") -> CheckReport:
        check = CheckReport(name, bool(passed), witness, detail)
        self.checks.append(check)
        if not passed:
            logger.info(f"[{self.title}] check '{name}' failed, witness {witness}")
        return check

    def check(self, name: str, witnesses) -> CheckReport:
        """Record ``name`` as failed at the first witness yielded, if any."""
        for w in witnesses:
            return self.add(name, False, w)
        return self.add(name, True)

    def extend(self, other: "Report") -> "Report":
        self.checks.extend(other.checks)
        self.info.update(other.info)
        self.tables.update(other.tables)
        return self

    def table(self, name: str, values: Dict[Any, Any]):
        self.tables[name] = {str(k): _jsonable(v) for k, v in values.items()}

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[CheckReport]:
        return [c for c in self.checks if not c.passed]

    def first_failure(self) -> Optional[CheckReport]:
        fails = self.failures()
        return fails[0] if fails else None

    def get(self, name: str) -> CheckReport:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def raise_on_failure(self):
        fail = self.first_failure()
        if fail is not None:
            raise AxiomFailure(fail.name, fail.witness, fail.detail)
        return self

    def to_frame(self) -> pd.DataFrame:
        rows = [c.to_dict() for c in self.checks]
        return pd.DataFrame(rows, columns=["name", "status", "witness", "detail"])

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
            "info": {k: _jsonable(v) for k, v in self.info.items()},
            "tables": self.tables,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def render(self) -> str:
        payload = self.to_dict()
        lines = [f"== {payload['title']} ({'PASS' if payload['passed'] else 'FAIL'})"]
        if payload["checks"]:
            width = max(len(c["name"]) for c in payload["checks"])
            for c in payload["checks"]:
                line = f"  {c['name']:<{width}}  {c['status']}"
                if c["witness"] is not None:
                    line += f"  witness={c['witness']}"
                if c["detail"]:
                    line += f"  {c['detail']}"
                lines.append(line)
        for k, v in payload["info"].items():
            lines.append(f"  {k}: {v}")
        for name, values in payload["tables"].items():
            lines.append(f"  [{name}]")
            for k, v in values.items():
                lines.append(f"    {k} = {v}")
        return "\n".join(lines)

    def __str__(self):
        return self.render()


def _jsonable(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return str(value)

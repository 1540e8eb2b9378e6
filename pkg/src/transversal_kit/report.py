from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import __version__
from .bs_lab import BSElement, Dyadic
from .groups import Perm
from .hyperspace import PointSet

SCHEMA = "transversal-kit/1"


def to_jsonable(obj):
    """Convert package values to plain JSON types; exact rationals become ``"p/q"`` strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, float):
        if math.isinf(obj):
            return "infinite" if obj > 0 else "-infinite"
        return obj
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return to_jsonable(float(obj))
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return [[[float(z.real), float(z.imag)] for z in row] for row in obj]
        return obj.tolist()
    if isinstance(obj, Perm):
        return list(obj.images)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Dyadic):
        return str(obj)
    if isinstance(obj, BSElement):
        return {"q": str(obj.q), "n": obj.n}
    if isinstance(obj, PointSet):
        return [[to_jsonable(c) for c in p] for p in obj.points]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def digest(payload) -> str:
    if isinstance(payload, str):
        payload = payload.encode("utf-8")
    if not isinstance(payload, bytes):
        payload = json.dumps(to_jsonable(payload), sort_keys=True, separators=(",", ":")).encode()
    return "sha256:" + hashlib.sha256(payload).hexdigest()


@dataclass
class Report:
    command: str
    inputs_digest: str
    results: dict = field(default_factory=dict)
    invariant_checks: list = field(default_factory=list)
    tool_version: str = __version__

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.invariant_checks.append({"name": name, "pass": bool(passed), "detail": detail})
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.invariant_checks)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "inputsDigest": self.inputs_digest,
            "results": to_jsonable(self.results),
            "invariantChecks": to_jsonable(self.invariant_checks),
            "toolVersion": self.tool_version,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    def summary(self) -> str:
        lines = [f"{self.command}  ({self.inputs_digest[:19]})"]
        for key, value in to_jsonable(self.results).items():
            text = json.dumps(value, sort_keys=True)
            if len(text) > 100:
                text = text[:97] + "..."
            lines.append(f"  {key:<28} {text}")
        lines.append("  checks:")
        for c in self.invariant_checks:
            mark = "PASS" if c["pass"] else "FAIL"
            lines.append(f"    [{mark}] {c['name']}" + (f"  {c['detail']}" if c["detail"] else ""))
        lines.append(f"  verdict: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)

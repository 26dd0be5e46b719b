"""Serialization of reports: JSON with "p/q" rationals, CSV through pandas."""
import json
from dataclasses import asdict, dataclass, field, is_dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import pandas as pd

from core.config import settings
from core.criteria import CriterionReport, NecessaryConditionVerdict, PDCertificate, PDFailure
from core.linearization import LinearizationTable, NonnegativityVerdict
from core.rationals import format_rational
from core.spectrum import (
    CompactnessProfile,
    DualMembershipReport,
    HaarCharacterization,
    HaarProfile,
    QuadraticTransformRow,
    SpectrumReport,
)

FLOAT_FORMAT = "%.17g"


@dataclass
class RunManifest:
    """Inputs that fully determine an exact-mode report"""

    command: str
    family: Dict[str, Any]
    bounds: Dict[str, Any] = field(default_factory=dict)
    outputs: List[str] = field(default_factory=list)
    tool_version: str = settings.TOOL_VERSION
    exact: bool = True
    floating_point: bool = False


def to_jsonable(value: Any) -> Any:
    """Recursively convert reports into JSON-ready values; rationals become "p/q" strings"""
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, CriterionReport):
        return {
            "title": value.title,
            "overall": value.overall,
            "checks": [to_jsonable(check) for check in value.checks],
        }
    if isinstance(value, NecessaryConditionVerdict):
        return {"kind": value.kind, "up_to": value.up_to, "index": value.index}
    if isinstance(value, PDCertificate):
        return {"positive_definite": True, "u": to_jsonable(value.u)}
    if isinstance(value, PDFailure):
        return {"positive_definite": False, "index": value.index,
                "u_value": to_jsonable(value.u_value), "u": to_jsonable(value.u)}
    if isinstance(value, DualMembershipReport):
        payload = {key: to_jsonable(item) for key, item in vars(value).items()}
        payload["verdict"] = value.verdict
        return payload
    if isinstance(value, HaarCharacterization):
        payload = to_jsonable(asdict(value))
        payload["both_nondecreasing"] = value.both_nondecreasing
        return payload
    if isinstance(value, SpectrumReport):
        return value.to_dict()
    if is_dataclass(value) and not isinstance(value, type):
        return {key: to_jsonable(item) for key, item in vars(value).items()}
    if isinstance(value, dict):
        return {str(key): to_jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(item) for item in value]
    return value


def dumps(payload: Any) -> str:
    """Deterministic JSON text (sorted keys, trailing newline)"""
    return json.dumps(to_jsonable(payload), sort_keys=True, indent=2) + "\n"


def with_manifest(manifest: RunManifest, body: Dict[str, Any]) -> Dict[str, Any]:
    return {"manifest": to_jsonable(manifest), **body}


def write_text(text: str, out: Optional[Union[str, Path]]) -> None:
    """Write to the given path, or to stdout when out is None or '-'"""
    if out is None or str(out) == "-":
        print(text, end="")
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


# -- tables -------------------------------------------------------------------

def linearization_frame(table: LinearizationTable) -> pd.DataFrame:
    rows = [(m, n, k, format_rational(value)) for m, n, k, value in table.entries()]
    return pd.DataFrame(rows, columns=["m", "n", "k", "g"])


def verdict_dict(verdict: NonnegativityVerdict) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"max_degree": verdict.max_degree,
                               "all_nonnegative": verdict.all_nonnegative}
    if verdict.witness is not None:
        m, n, k, value = verdict.witness
        payload["witness"] = {"m": m, "n": n, "k": k, "value": format_rational(value)}
    return payload


def certificate_frame(certificates: Dict[int, Union[PDCertificate, PDFailure]]) -> pd.DataFrame:
    """One row per (N, index) with the exact u-value"""
    rows = []
    for big, result in sorted(certificates.items()):
        for index, u in enumerate(result.u, start=1):
            rows.append((big, index, format_rational(u)))
    return pd.DataFrame(rows, columns=["N", "index", "u"])


def eigenvalue_frame(report: SpectrumReport) -> pd.DataFrame:
    return pd.DataFrame({"index": range(1, report.size + 1), "eigenvalue": report.eigenvalues})


def quadratic_transform_frame(rows: List[QuadraticTransformRow]) -> pd.DataFrame:
    return pd.DataFrame(
        [(row.n, format_rational(row.aR), format_rational(row.bR), format_rational(row.cR))
         for row in rows],
        columns=["n", "aR", "bR", "cR"],
    )


def compactness_frame(profile: CompactnessProfile) -> pd.DataFrame:
    return pd.DataFrame(
        [(m, format_rational(upper), format_rational(lower)) for m, upper, lower in profile.rows],
        columns=["m", "a_{m+1} a_m", "c_m c_{m-1}"],
    )


def haar_frame(profile: HaarProfile) -> pd.DataFrame:
    return pd.DataFrame(
        [(n, format_rational(value)) for n, value in enumerate(profile.values)],
        columns=["n", "h"],
    )


def write_csv(frame: pd.DataFrame, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path

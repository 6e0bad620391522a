"""JSON documents and flat CSV tables for results."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict
from typing import Any, Iterable

from .analysis import Condition1, Conditions23, SweepReport
from .comparators import ClosenessResult
from .difv import DIFV
from .pipeline import CaspasConfig, RankingResult

CSV_DIGITS = 6


def difv_json(v: DIFV) -> list[float]:
    return [v.mu, v.nu, v.r]


def config_json(config: CaspasConfig) -> dict[str, Any]:
    out = asdict(config)
    out["lambda"] = out.pop("lam")
    return out


def ranking_json(result: RankingResult) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "ranking": str(result.ranking),
        "order": list(result.ranking.order),
        "ties": [list(g) for g in result.ranking.ties],
        "alternatives": [
            {
                "name": a.name,
                "csm": difv_json(a.csm),
                "cpm": difv_json(a.cpm),
                "sd": difv_json(a.sd),
                "score": a.score,
                "accuracy": a.accuracy,
            }
            for a in result.alternatives
        ],
        "provenance": {
            "config": config_json(result.config),
            "criteria_weights": list(result.criteria_weights),
        },
    }
    prov = doc["provenance"]
    if result.measure is not None:
        prov["measure"] = result.measure.to_json()
    if result.aggregated_importance is not None:
        prov["aggregated_importance"] = [difv_json(v) for v in result.aggregated_importance]
    if result.aggregated is not None:
        prov["aggregated_matrix"] = [[difv_json(v) for v in row] for row in result.aggregated]
    return doc


def ranking_rows(result: RankingResult) -> tuple[list[str], list[list[Any]]]:
    header = ["alternative", "position", "score", "accuracy",
              "csm_mu", "csm_nu", "csm_r", "cpm_mu", "cpm_nu", "cpm_r", "sd_mu", "sd_nu", "sd_r"]
    position = {name: i + 1 for i, name in enumerate(result.ranking.order)}
    rows = [
        [a.name, position[a.name], a.score, a.accuracy, *a.csm, *a.cpm, *a.sd]
        for a in result.alternatives
    ]
    return header, rows


def closeness_json(result: ClosenessResult, beta: int) -> dict[str, Any]:
    return {
        "ranking": str(result.ranking),
        "order": list(result.ranking.order),
        "ties": [list(g) for g in result.ranking.ties],
        "beta": beta,
        "degenerate": result.degenerate,
        "ideal": difv_json(result.ideal),
        "anti_ideal": difv_json(result.anti_ideal),
        "alternatives": [
            {
                "name": n,
                "aggregate": difv_json(v),
                "distance_to_ideal": ds,
                "distance_to_anti_ideal": dn,
                "closeness": c,
            }
            for n, v, ds, dn, c in zip(result.names, result.aggregates, result.distance_to_ideal,
                                        result.distance_to_anti_ideal, result.closeness)
        ],
    }


def closeness_rows(result: ClosenessResult) -> tuple[list[str], list[list[Any]]]:
    header = ["alternative", "position", "closeness", "distance_to_ideal", "distance_to_anti_ideal",
              "agg_mu", "agg_nu", "agg_r"]
    position = {name: i + 1 for i, name in enumerate(result.ranking.order)}
    rows = [
        [n, position[n], c, ds, dn, *v]
        for n, v, ds, dn, c in zip(result.names, result.aggregates, result.distance_to_ideal,
                                    result.distance_to_anti_ideal, result.closeness)
    ]
    return header, rows


def sweep_json(report: SweepReport) -> dict[str, Any]:
    families = list(report.segments)
    return {
        "axis": report.axis,
        "grid": list(report.grid),
        "config": config_json(report.config) if report.config else None,
        "points": [
            {
                "value": pt.value,
                **{
                    fam: {
                        "ranking": str(pt.ranking(fam)),
                        "scores": {a.name: a.score for a in pt.results[fam].alternatives},
                    }
                    for fam in families
                },
            }
            for pt in report.points
        ],
        "segments": {
            fam: [{"start": s.start, "stop": s.stop, "ranking": s.ranking} for s in segs]
            for fam, segs in report.segments.items()
        },
    }


def sweep_rows(report: SweepReport) -> tuple[list[str], list[list[Any]]]:
    families = list(report.segments)
    names = [a.name for a in report.points[0].results[families[0]].alternatives]
    header = [report.axis]
    for fam in families:
        header += [f"ranking_{fam}"] + [f"score_{fam}_{n}" for n in names]
    rows = []
    for pt in report.points:
        row: list[Any] = [pt.value]
        for fam in families:
            scores = {a.name: a.score for a in pt.results[fam].alternatives}
            row += [str(pt.ranking(fam))] + [scores[n] for n in names]
        rows.append(row)
    return header, rows


def validity_json(cond1: Condition1 | None, cond23: Conditions23 | None, config: CaspasConfig) -> dict[str, Any]:
    doc: dict[str, Any] = {"config": config_json(config)}
    if cond1 is not None:
        doc["condition1"] = asdict(cond1)
    if cond23 is not None:
        d = asdict(cond23)
        d["contradictions"] = [list(p) for p in cond23.contradictions]
        for sub in d["subproblems"]:
            sub["criteria_weights"] = list(sub["criteria_weights"])
        doc["conditions23"] = d
    return doc


def validity_rows(cond1: Condition1 | None, cond23: Conditions23 | None) -> tuple[list[str], list[list[Any]]]:
    header = ["check", "passed", "subject", "ranking", "expected"]
    rows: list[list[Any]] = []
    if cond1 is not None:
        rows.append(["condition1", cond1.passed, f"{cond1.target}->{cond1.replacement}",
                     cond1.ranking_after, f"best={cond1.best_before}"])
    if cond23 is not None:
        for sub in cond23.subproblems:
            rows.append(["subproblem", "", " ".join(sub.alternatives), sub.ranking, ""])
        rows.append(["condition2", cond23.condition2, "transitivity", "", ""])
        rows.append(["condition3", cond23.condition3, "merged", cond23.merged_ranking, cond23.full_ranking])
    return header, rows


def measure_rows(measure_doc: dict[str, float]) -> tuple[list[str], list[list[Any]]]:
    return ["subset", "value"], [[k, v] for k, v in measure_doc.items()]


def _cell(x: Any) -> Any:
    if isinstance(x, bool) or not isinstance(x, float):
        return x
    return f"{x:.{CSV_DIGITS}f}"


def to_csv(header: list[str], rows: Iterable[list[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(x) for x in row])
    return buf.getvalue()


def all_finite(doc: Any) -> bool:
    if isinstance(doc, float):
        return math.isfinite(doc)
    if isinstance(doc, dict):
        return all(all_finite(v) for v in doc.values())
    if isinstance(doc, (list, tuple)):
        return all(all_finite(v) for v in doc)
    return True

"""CSV emitters and the matching readers.

Column contracts (fixed):

    roc:   p_false_alarm,p_detection,source,threshold
    sweep: n_elements,sigma_h_sq,mu_delta1,sigma_delta1,separation,p_d_at_target_pf,status
    stats: statistic,mean,variance

Floats are written with repr so values round-trip exactly. Lines starting
with `#` carry document-level metadata (sweep target/mode, stats mode and
channel variance) and are consumed by the readers. A roc CSV may hold
several curves; the source column separates them. Trial counts are not
part of the roc contract, so re-parsed curves carry n_trials_per_point=0.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile
from pathlib import Path

from .analytic import HypothesisStats
from .errors import MalformedDocumentError
from .model import GaussianStat, RocCurve, RocSource, VarianceMode
from .optimizer import SweepResult, SweepRow

ROC_COLUMNS = ("p_false_alarm", "p_detection", "source", "threshold")
SWEEP_COLUMNS = (
    "n_elements",
    "sigma_h_sq",
    "mu_delta1",
    "sigma_delta1",
    "separation",
    "p_d_at_target_pf",
    "status",
)
STATS_COLUMNS = ("statistic", "mean", "variance")


def write_text(path, text: str) -> None:
    """Atomic text write: temp file in the target directory, then rename."""
    path = Path(path)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, suffix=".part")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def _split_meta(text: str) -> tuple[dict[str, str], str]:
    meta: dict[str, str] = {}
    body: list[str] = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, eq, value = line[1:].partition("=")
            if eq:
                meta[key.strip()] = value.strip()
        elif line.strip():
            body.append(line)
    return meta, "\n".join(body)


def _rows(text: str, columns: tuple[str, ...], kind: str) -> list[list[str]]:
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row]
    if not rows or tuple(rows[0]) != columns:
        raise MalformedDocumentError(
            f"{kind} CSV must start with header {','.join(columns)!r}"
        )
    for row in rows[1:]:
        if len(row) != len(columns):
            raise MalformedDocumentError(f"{kind} CSV row has {len(row)} fields: {row!r}")
    return rows[1:]


def _parse_float(kind: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise MalformedDocumentError(f"{kind} CSV: bad number {raw!r}") from None


def roc_to_csv(*curves: RocCurve) -> str:
    lines = [",".join(ROC_COLUMNS)]
    for curve in curves:
        for (pf, pd), threshold in zip(curve.points, curve.thresholds):
            lines.append(f"{pf!r},{pd!r},{curve.source.value},{threshold!r}")
    return "\n".join(lines) + "\n"


def rocs_from_csv(text: str) -> tuple[RocCurve, ...]:
    """All curves in a roc CSV, grouped by source in order of appearance."""
    _, body = _split_meta(text)
    grouped: dict[str, tuple[list, list]] = {}
    for pf, pd, source, threshold in _rows(body, ROC_COLUMNS, "roc"):
        try:
            RocSource(source)
        except ValueError:
            raise MalformedDocumentError(f"roc CSV: unknown source {source!r}") from None
        points, thresholds = grouped.setdefault(source, ([], []))
        points.append((_parse_float("roc", pf), _parse_float("roc", pd)))
        thresholds.append(_parse_float("roc", threshold))
    return tuple(
        RocCurve(
            points=tuple(points),
            thresholds=tuple(thresholds),
            source=RocSource(source),
            n_trials_per_point=0,
        )
        for source, (points, thresholds) in grouped.items()
    )


def roc_from_csv(text: str) -> RocCurve:
    curves = rocs_from_csv(text)
    if len(curves) != 1:
        raise MalformedDocumentError(
            f"expected exactly one curve in roc CSV, found {len(curves)}"
        )
    return curves[0]


def _opt(value: float | None) -> str:
    return "" if value is None else repr(value)


def sweep_to_csv(result: SweepResult) -> str:
    lines = [
        f"# target_pf = {result.target_pf!r}",
        f"# variance_mode = {result.variance_mode.value}",
        ",".join(SWEEP_COLUMNS),
    ]
    for row in result.rows:
        lines.append(
            f"{row.n_elements},{row.sigma_h_sq!r},{row.mu_delta1!r},"
            f"{_opt(row.sigma_delta1)},{_opt(row.separation)},"
            f"{_opt(row.p_d_at_target_pf)},{row.status}"
        )
    return "\n".join(lines) + "\n"


def sweep_from_csv(text: str) -> SweepResult:
    meta, body = _split_meta(text)
    if "target_pf" not in meta or "variance_mode" not in meta:
        raise MalformedDocumentError("sweep CSV needs # target_pf and # variance_mode")
    rows = []
    for n, sh2, mu, sigma, sep, pd, status in _rows(body, SWEEP_COLUMNS, "sweep"):
        rows.append(
            SweepRow(
                n_elements=int(n),
                sigma_h_sq=_parse_float("sweep", sh2),
                mu_delta1=_parse_float("sweep", mu),
                sigma_delta1=_parse_float("sweep", sigma) if sigma else None,
                separation=_parse_float("sweep", sep) if sep else None,
                p_d_at_target_pf=_parse_float("sweep", pd) if pd else None,
                status=status,
            )
        )
    return SweepResult(
        target_pf=_parse_float("sweep", meta["target_pf"]),
        variance_mode=VarianceMode(meta["variance_mode"]),
        rows=tuple(rows),
    )


def stats_to_csv(stats: HypothesisStats) -> str:
    lines = [
        f"# sigma_h_sq = {stats.sigma_h_sq!r}",
        f"# variance_mode = {stats.variance_mode.value}",
        ",".join(STATS_COLUMNS),
    ]
    for name in ("t_h0", "t_h1", "dt_h0", "dt_h1"):
        stat: GaussianStat = getattr(stats, name)
        lines.append(f"{name},{stat.mean!r},{stat.variance!r}")
    return "\n".join(lines) + "\n"


def stats_from_csv(text: str) -> HypothesisStats:
    meta, body = _split_meta(text)
    if "sigma_h_sq" not in meta or "variance_mode" not in meta:
        raise MalformedDocumentError("stats CSV needs # sigma_h_sq and # variance_mode")
    entries: dict[str, GaussianStat] = {}
    for name, mean, variance in _rows(body, STATS_COLUMNS, "stats"):
        entries[name] = GaussianStat(_parse_float("stats", mean), _parse_float("stats", variance))
    missing = {"t_h0", "t_h1", "dt_h0", "dt_h1"} - set(entries)
    if missing:
        raise MalformedDocumentError(f"stats CSV missing rows: {sorted(missing)}")
    return HypothesisStats(
        t_h0=entries["t_h0"],
        t_h1=entries["t_h1"],
        dt_h0=entries["dt_h0"],
        dt_h1=entries["dt_h1"],
        sigma_h_sq=_parse_float("stats", meta["sigma_h_sq"]),
        variance_mode=VarianceMode(meta["variance_mode"]),
    )

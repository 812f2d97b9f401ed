"""Study-record ingestion, validation, and the bundled atherosclerosis tables.

CSV schema (header required, comma-separated, UTF-8):

    id,study,year,group_x,x_mean,x_sd,x_n,group_y,y_mean,y_sd,y_n,
    units,alpha_dm,species,pmid,location,reported_sign

alpha_dm accepts a decimal or an ``a/b`` fraction (the per-study
Bonferroni-corrected level is usually written as one, e.g. ``0.05/3``);
reported_sign is -1, 0, or 1 as claimed by the source study. Metadata
columns are opaque text.

Two datasets ship with the package: "tpc" (35 interventions changing total
plasma cholesterol) and "plaque" (28 interventions changing plaque size).
The plaque table's row 24 lists an alpha_dm of 0 in its source, which is
not a usable level; the bundled copy carries 0.05, the table's modal
uncorrected value. The parser rejects 0 in user data.
"""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass
from importlib import resources

from .posterior import GroupSummary, ValidationError

__all__ = [
    "StudyRecord",
    "Dataset",
    "RowError",
    "CsvError",
    "DatasetNotFoundError",
    "COLUMNS",
    "BUNDLED",
    "parse_csv",
    "serialize_csv",
    "validate_dataset",
    "bundled_dataset",
]

COLUMNS = [
    "id", "study", "year",
    "group_x", "x_mean", "x_sd", "x_n",
    "group_y", "y_mean", "y_sd", "y_n",
    "units", "alpha_dm", "species", "pmid", "location", "reported_sign",
]

BUNDLED = {
    "tpc": "total plasma cholesterol",
    "plaque": "atherosclerotic plaque size",
}

_FRACTION = re.compile(r"^\s*([0-9.]+)\s*/\s*([0-9.]+)\s*$")


@dataclass(frozen=True)
class RowError:
    row: int
    field: str
    message: str

    def __str__(self):
        return f"row {self.row}, {self.field}: {self.message}"


class CsvError(ValueError):
    """Collected row-level errors from a single parse pass."""

    def __init__(self, errors: list[RowError]):
        self.errors = list(errors)
        super().__init__("; ".join(str(e) for e in self.errors))


class DatasetNotFoundError(KeyError):
    pass


@dataclass(frozen=True)
class StudyRecord:
    """One study row: two arm summaries plus presentation metadata."""

    id: int
    study: str
    year: int
    group_x_label: str
    control: GroupSummary
    group_y_label: str
    experiment: GroupSummary
    units: str
    alpha_dm: float
    alpha_dm_text: str
    species: str
    pmid: str
    location: str
    reported_sign: int

    def __post_init__(self):
        if not 0.0 < self.alpha_dm < 1.0:
            raise ValidationError(f"alpha_dm must be in (0, 1), got {self.alpha_dm}")
        if self.reported_sign not in (-1, 0, 1):
            raise ValidationError(f"reported_sign must be -1, 0, or 1, got {self.reported_sign}")


@dataclass(frozen=True)
class Dataset:
    name: str
    measured_phenomenon: str
    records: tuple[StudyRecord, ...]

    def __post_init__(self):
        if not self.records:
            raise ValidationError("dataset must contain at least one record")
        ids = [r.id for r in self.records]
        if len(set(ids)) != len(ids):
            raise ValidationError("record ids must be unique within a dataset")


def parse_alpha(text: str) -> float:
    """Evaluate an alpha_dm cell: plain decimal or an ``a/b`` fraction."""
    text = str(text).strip()
    m = _FRACTION.match(text)
    if m:
        denom = float(m.group(2))
        if denom == 0:
            raise ValueError("fraction denominator is zero")
        value = float(m.group(1)) / denom
    else:
        value = float(text)
    if not 0.0 < value < 1.0:
        raise ValueError(
            f"alpha_dm must be in (0, 1), got {text!r}; use the study's "
            "Bonferroni-corrected level (for example 0.05/3), not 0"
        )
    return value


def _req_float(raw, field, positive=True):
    value = float(raw)
    if positive and not value > 0:
        raise ValueError(f"{field} must be > 0, got {raw!r}")
    return value


def _req_int(raw, field):
    value = float(raw)
    if value != int(value):
        raise ValueError(f"{field} must be an integer, got {raw!r}")
    return int(value)


def build_record(raw: dict, row: int, errors: list[RowError]) -> StudyRecord | None:
    """Build one StudyRecord from string-or-number fields.

    Appends a RowError per offending field instead of failing fast; returns
    None if the row is unusable. Shared by the CSV parser and the HTTP
    inline-records path.
    """
    start = len(errors)

    def grab(field, conv):
        try:
            return conv(raw[field], field)
        except KeyError:
            errors.append(RowError(row, field, "missing value"))
        except (TypeError, ValueError) as exc:
            errors.append(RowError(row, field, str(exc)))
        return None

    rec_id = grab("id", _req_int)
    year = grab("year", _req_int)
    sign = grab("reported_sign", _req_int)
    if sign is not None and sign not in (-1, 0, 1):
        errors.append(RowError(row, "reported_sign", f"must be -1, 0, or 1, got {sign}"))
        sign = None

    arms = {}
    for prefix in ("x", "y"):
        mean = grab(f"{prefix}_mean", _req_float)
        sd = grab(f"{prefix}_sd", _req_float)
        n = grab(f"{prefix}_n", _req_int)
        if n is not None and n < 2:
            errors.append(RowError(row, f"{prefix}_n", f"sample size below 2 (got {n})"))
            n = None
        if None not in (mean, sd, n):
            try:
                arms[prefix] = GroupSummary(mean=mean, sd=sd, n=n)
            except ValidationError as exc:
                errors.append(RowError(row, f"{prefix}_mean/{prefix}_sd/{prefix}_n", str(exc)))

    alpha_text = str(raw.get("alpha_dm", "")).strip()
    try:
        alpha = parse_alpha(alpha_text)
    except (TypeError, ValueError) as exc:
        errors.append(RowError(row, "alpha_dm", str(exc)))
        alpha = None

    if len(errors) > start or "x" not in arms or "y" not in arms:
        return None
    return StudyRecord(
        id=rec_id,
        study=str(raw.get("study", "")),
        year=year,
        group_x_label=str(raw.get("group_x", "")),
        control=arms["x"],
        group_y_label=str(raw.get("group_y", "")),
        experiment=arms["y"],
        units=str(raw.get("units", "")),
        alpha_dm=alpha,
        alpha_dm_text=alpha_text,
        species=str(raw.get("species", "")),
        pmid=str(raw.get("pmid", "")),
        location=str(raw.get("location", "")),
        reported_sign=sign,
    )


def parse_csv(text: str | bytes, name: str = "dataset", measured_phenomenon: str = "") -> Dataset:
    """Parse the CSV schema, collecting all row errors into one report."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise CsvError([RowError(1, "header", "empty input")]) from None
    header = [h.strip() for h in header]
    missing = [c for c in COLUMNS if c not in header]
    if missing:
        raise CsvError([RowError(1, c, "missing column") for c in missing])

    errors: list[RowError] = []
    records: list[StudyRecord] = []
    seen_ids: dict[int, int] = {}
    for row_no, cells in enumerate(reader, start=2):
        if not cells or all(not c.strip() for c in cells):
            continue
        if len(cells) != len(header):
            errors.append(RowError(row_no, "row", f"expected {len(header)} cells, got {len(cells)}"))
            continue
        raw = dict(zip(header, cells))
        rec = build_record(raw, row_no, errors)
        if rec is None:
            continue
        if rec.id in seen_ids:
            errors.append(RowError(row_no, "id", f"duplicate id {rec.id} (first seen at row {seen_ids[rec.id]})"))
            continue
        seen_ids[rec.id] = row_no
        records.append(rec)

    if errors:
        raise CsvError(errors)
    if not records:
        raise CsvError([RowError(2, "row", "no data rows")])
    return Dataset(name=name, measured_phenomenon=measured_phenomenon, records=tuple(records))


def _fmt_number(x: float) -> str:
    short = f"{x:g}"
    return short if float(short) == x else repr(x)


def serialize_csv(ds: Dataset) -> str:
    """Inverse of parse_csv: parse_csv(serialize_csv(ds)) == ds."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(COLUMNS)
    for r in ds.records:
        writer.writerow([
            r.id, r.study, r.year,
            r.group_x_label, _fmt_number(r.control.mean), _fmt_number(r.control.sd), r.control.n,
            r.group_y_label, _fmt_number(r.experiment.mean), _fmt_number(r.experiment.sd), r.experiment.n,
            r.units, r.alpha_dm_text, r.species, r.pmid, r.location, r.reported_sign,
        ])
    return out.getvalue()


def validate_dataset(ds: Dataset) -> list[str]:
    """Non-fatal quality warnings for a parsed dataset.

    Mixed units are merely informational (the relative difference is
    unit-free); a mean within two sample SDs of zero risks an unstable
    relative measure and is flagged per arm.
    """
    warnings: list[str] = []
    units = sorted({r.units for r in ds.records})
    if len(units) > 1:
        warnings.append(f"mixed measurement units present ({', '.join(units)}); "
                        "relative differences remain comparable")
    for r in ds.records:
        for label, arm in (("control", r.control), ("experiment", r.experiment)):
            if arm.mean < 2 * arm.sd:
                warnings.append(
                    f"study {r.id}: {label} mean {_fmt_number(arm.mean)} is within two SDs "
                    f"of zero; the relative difference may be unstable"
                )
    return warnings


def bundled_dataset(name: str) -> Dataset:
    """Load a packaged dataset ("tpc" or "plaque")."""
    if name not in BUNDLED:
        raise DatasetNotFoundError(f"unknown dataset {name!r}; bundled: {sorted(BUNDLED)}")
    text = resources.files("contraplot.data").joinpath(f"{name}.csv").read_text("utf-8")
    return parse_csv(text, name=name, measured_phenomenon=BUNDLED[name])

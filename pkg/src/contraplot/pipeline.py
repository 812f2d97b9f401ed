"""The analysis pipeline shared by the CLI and the HTTP service.

parse -> validate -> draw -> interval -> score -> rank, one study at a
time. Per-study work may fan out across worker threads; every study's
stream seed is derived from (global seed, study id), so results are
identical for any worker count and any completion order.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .datasets import Dataset, StudyRecord, validate_dataset
from .intervals import (
    CredibleInterval,
    ScoredStudy,
    ThresholdSpec,
    credible_interval,
    posterior_median,
    rank_entries,
    score_delta_l,
    test_meaningful,
)
from .posterior import WARN_DISCARD_FRACTION, derive_study_seed, draw_relative_dm

__all__ = [
    "SignView",
    "ContraEntry",
    "AnalysisResult",
    "analyze_dataset",
    "threshold_test",
    "result_payload",
    "round_sig",
]

MIN_SAMPLES = 1_000
DEFAULT_SAMPLES = 100_000


class SignView(enum.Enum):
    DECREASE = "decrease"
    INCREASE = "increase"


@dataclass(frozen=True)
class ContraEntry:
    """Per-study analysis unit: record, interval, score, and rank."""

    record: StudyRecord
    interval: CredibleInterval
    median: float
    delta_l: float
    rank: int
    discarded: int


@dataclass(frozen=True)
class AnalysisResult:
    dataset: str
    seed: int
    samples: int
    sign_view: SignView | None
    entries: tuple[ContraEntry, ...]
    warnings: tuple[str, ...]


def _analyze_one(record: StudyRecord, samples: int, seed: int):
    study_seed = derive_study_seed(seed, record.id)
    draws = draw_relative_dm(record.control, record.experiment, samples, study_seed)
    ci = credible_interval(draws, record.alpha_dm)
    return record.id, ci, posterior_median(draws), score_delta_l(ci), draws.discarded


def analyze_dataset(
    ds: Dataset,
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    sign_view: SignView | str | None = None,
    workers: int = 1,
) -> AnalysisResult:
    """Analyze every record, then rank the requested sign view.

    The decrease view keeps entries with delta_L <= 0 and the increase view
    those with delta_L >= 0 (zero-score studies appear in both, for
    reference); without a view, all entries are ranked together. Ranks are
    1..N ascending by delta_L within the emitted set.
    """
    if samples < MIN_SAMPLES:
        raise ValueError(f"samples K below minimum: {samples} < {MIN_SAMPLES}")
    if isinstance(sign_view, str):
        sign_view = SignView(sign_view)

    warnings = list(validate_dataset(ds))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            raw = list(pool.map(lambda r: _analyze_one(r, samples, seed), ds.records))
    else:
        raw = [_analyze_one(r, samples, seed) for r in ds.records]
    by_id = {rid: (ci, med, dl, disc) for rid, ci, med, dl, disc in raw}

    for record in ds.records:
        _, _, _, discarded = by_id[record.id]
        if discarded >= WARN_DISCARD_FRACTION * samples:
            warnings.append(
                f"study {record.id}: discarded {discarded} of {samples} draws "
                "with a non-positive mean draw"
            )

    selected = []
    for record in ds.records:
        ci, median, delta_l, discarded = by_id[record.id]
        if sign_view is SignView.DECREASE and delta_l > 0:
            continue
        if sign_view is SignView.INCREASE and delta_l < 0:
            continue
        selected.append((record, ci, median, delta_l, discarded))

    order = rank_entries(
        ScoredStudy(study_id=r.id, delta_l=dl, median=med) for r, _, med, dl, _ in selected
    )
    position = {s.study_id: i + 1 for i, s in enumerate(order)}
    entries = tuple(sorted(
        (ContraEntry(record=r, interval=ci, median=med, delta_l=dl,
                     rank=position[r.id], discarded=disc)
         for r, ci, med, dl, disc in selected),
        key=lambda e: e.rank,
    ))
    return AnalysisResult(
        dataset=ds.name,
        seed=int(seed),
        samples=int(samples),
        sign_view=sign_view,
        entries=entries,
        warnings=tuple(warnings),
    )


def threshold_test(result: AnalysisResult, threshold: ThresholdSpec) -> list[ContraEntry]:
    """Entries whose whole interval lies beyond the threshold, in rank order."""
    return [e for e in result.entries
            if test_meaningful(e.interval, threshold).reject_null]


def round_sig(x: float, sig: int = 6) -> float:
    return float(f"{x:.{sig}g}")


def entry_payload(entry: ContraEntry, full_precision: bool = False) -> dict:
    num = (lambda v: v) if full_precision else round_sig
    r = entry.record
    return {
        "id": r.id,
        "lo": num(entry.interval.lo),
        "hi": num(entry.interval.hi),
        "median": num(entry.median),
        "delta_l": num(entry.delta_l),
        "rank": entry.rank,
        "alpha_dm": num(r.alpha_dm),
        "metadata": {
            "study": r.study,
            "year": r.year,
            "group_x": r.group_x_label,
            "group_y": r.group_y_label,
            "units": r.units,
            "species": r.species,
            "pmid": r.pmid,
            "location": r.location,
            "reported_sign": r.reported_sign,
            "alpha_dm_text": r.alpha_dm_text,
            "discarded": entry.discarded,
        },
    }


def result_payload(result: AnalysisResult, full_precision: bool = False) -> dict:
    """CLI/service JSON body: {dataset, seed, samples, entries}."""
    return {
        "dataset": result.dataset,
        "seed": result.seed,
        "samples": result.samples,
        "entries": [entry_payload(e, full_precision) for e in result.entries],
    }

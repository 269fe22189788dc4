"""Persistence: curve/endomorphism input files, the point-count cache,
scan records, and run configuration.

The cache is an append-only JSON Lines file keyed by (curve hash, p, k);
duplicate keys resolve last-write-wins and corrupt lines are skipped with
a warning. Each line carries the timestamp of the computation, so a scan
replayed from a warm cache reproduces its output byte for byte.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import logging
import os
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

from .characters import EndoFactor, EndomorphismData, jump_character
from .curves import (
    DEFAULT_BUDGET,
    CurveModel,
    PointCounts,
    ReducedCurve,
    count_points,
    reduce_curve,
)
from .picard import ScanOutcome
from .poly import IntPoly
from .zeta import weil_polynomial

log = logging.getLogger(__name__)

CACHE_ENV_VAR = "PICARDSCAN_CACHE"


def curve_hash(model: CurveModel) -> str:
    """Stable 12-hex identifier of the model (exponent and coefficients)."""
    canon = json.dumps({"m": model.m, "f": list(model.f.coeffs)}, sort_keys=True)
    return hashlib.sha256(canon.encode()).hexdigest()[:12]


def load_curve(path: str | Path) -> CurveModel:
    """Read a curve model from JSON: {"m": int, "f": [c0, c1, ...], "label": str}."""
    data = json.loads(Path(path).read_text())
    try:
        m = int(data["m"])
        coeffs = [int(c) for c in data["f"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"{path}: curve file needs integer 'm' and coefficient list 'f'") from exc
    return CurveModel(m=m, f=IntPoly(coeffs), label=str(data.get("label", "")))


def load_endomorphism(path: str | Path) -> EndomorphismData:
    """Read endomorphism data from JSON.

    Schema: {"disc_label": int, "label": str,
             "factors": [{"min_poly": [...], "action": [...],
                          "multiplication": bool}]}
    """
    data = json.loads(Path(path).read_text())
    try:
        factors = tuple(
            EndoFactor(
                min_poly=IntPoly([int(c) for c in f["min_poly"]]),
                action=IntPoly([int(c) for c in f["action"]]),
                multiplication=bool(f.get("multiplication", False)),
            )
            for f in data["factors"]
        )
        disc = int(data["disc_label"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"{path}: endomorphism file needs 'factors' and 'disc_label'") from exc
    return EndomorphismData(factors=factors, disc_label=disc, label=str(data.get("label", "")))


@dataclass(frozen=True)
class Config:
    """Run configuration; flags override file values, which override defaults."""

    budget: int = DEFAULT_BUDGET
    period_cutoff: int = 12
    fmt: str = "json"
    cache_path: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if self.jobs < 1:
            raise ValueError("worker count must be >= 1")
        if self.budget < 3:
            raise ValueError("enumeration budget must cover at least one odd prime")
        if self.fmt not in ("json", "csv"):
            raise ValueError(f"unknown output format {self.fmt!r}")

    @classmethod
    def from_file(cls, path: str | Path) -> "Config":
        data = json.loads(Path(path).read_text())
        kwargs = {k: data[k] for k in ("budget", "period_cutoff", "fmt", "cache_path", "jobs") if k in data}
        return cls(**kwargs)

    def override(self, **kwargs) -> "Config":
        updates = {k: v for k, v in kwargs.items() if v is not None}
        return replace(self, **updates) if updates else self


def resolve_cache_path(flag_value: str | None, cfg: Config) -> str | None:
    """Precedence: explicit flag, then environment, then config file."""
    if flag_value:
        return flag_value
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return env
    return cfg.cache_path


def _now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%S.%fZ")


class CountCache:
    """Append-only JSON Lines store of point counts."""

    def __init__(self, path: str | Path | None):
        self.path = Path(path) if path else None
        self.entries: dict[tuple[str, int, int], tuple[int, str]] = {}
        self._handle = None
        if self.path and self.path.exists():
            self._load()

    def _load(self):
        with self.path.open() as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    row = json.loads(line)
                    key = (str(row["curve"]), int(row["p"]), int(row["k"]))
                    self.entries[key] = (int(row["n"]), str(row.get("ts", "")))
                except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                    log.warning("%s:%d: skipping corrupt cache line", self.path, lineno)

    def lookup(self, curve_h: str, p: int, k: int) -> tuple[int, str] | None:
        """Cached (N_k, timestamp) for the key, or None on a miss."""
        return self.entries.get((curve_h, p, k))

    def store(self, curve_h: str, label: str, p: int, k: int, n: int) -> str:
        ts = _now()
        self.entries[(curve_h, p, k)] = (n, ts)
        if self.path:
            if self._handle is None:
                self._handle = self.path.open("a")
            line = json.dumps(
                {"curve": curve_h, "label": label, "p": p, "k": k, "n": n, "ts": ts},
                sort_keys=True,
            )
            # one write call per full line, so a crash cannot leave a
            # partial line that still parses
            self._handle.write(line + "\n")
            self._handle.flush()
        return ts

    def close(self):
        if self._handle is not None:
            self._handle.close()
            self._handle = None


class CachedCounter:
    """count_points routed through a CountCache for one curve model."""

    def __init__(self, cache: CountCache, model: CurveModel, budget: int = DEFAULT_BUDGET):
        self.cache = cache
        self.model = model
        self.model_hash = curve_hash(model)
        self.budget = budget
        self.stamps: dict[tuple[int, int], str] = {}

    def __call__(self, curve: ReducedCurve, k: int) -> int:
        hit = self.cache.lookup(self.model_hash, curve.p, k)
        if hit is not None:
            n, ts = hit
        else:
            n = count_points(curve, k, budget=self.budget)
            ts = self.cache.store(self.model_hash, self.model.label, curve.p, k, n)
        self.stamps[(curve.p, k)] = ts
        return n

    def has_all(self, p: int, upto_k: int) -> bool:
        return all(self.cache.lookup(self.model_hash, p, k) is not None for k in range(1, upto_k + 1))

    def record_counts(self, p: int, counts) -> None:
        """Absorb worker-computed counts; existing cache entries win."""
        for k, n in enumerate(counts, start=1):
            hit = self.cache.lookup(self.model_hash, p, k)
            ts = hit[1] if hit is not None else self.cache.store(
                self.model_hash, self.model.label, p, k, n
            )
            self.stamps[(p, k)] = ts

    def stamp_for(self, p: int, upto_k: int) -> str:
        stamps = [self.stamps.get((p, k), "") for k in range(1, upto_k + 1)]
        return max(stamps) if stamps else ""


@dataclass(frozen=True)
class ScanRecord:
    """One serialized row of a jump scan."""

    label: str
    curve: str  # model hash
    p: int
    q: int
    counts: tuple[int, ...]
    weil: tuple[int, ...]
    picard_fq: int
    picard_geom: int
    baseline: int
    jumped: bool
    character: int
    computed_at: str

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "curve": self.curve,
            "p": self.p,
            "q": self.q,
            "counts": list(self.counts),
            "weil": list(self.weil),
            "picard_fq": self.picard_fq,
            "picard_geom": self.picard_geom,
            "baseline": self.baseline,
            "jumped": self.jumped,
            "character": self.character,
            "computed_at": self.computed_at,
        }


def build_scan_records(
    model: CurveModel,
    endo: EndomorphismData,
    outcome: ScanOutcome,
    *,
    budget: int = DEFAULT_BUDGET,
    counter: CachedCounter | None = None,
) -> list[ScanRecord]:
    """Flesh out PicardReports with counts, Weil coefficients, character."""
    h = curve_hash(model)
    g = model.genus
    records = []
    for rep in outcome.reports:
        curve = reduce_curve(model, rep.p)
        if counter is not None:
            counts = tuple(counter(curve, k) for k in range(1, g + 1))
            stamp = counter.stamp_for(rep.p, g)
        else:
            counts = tuple(count_points(curve, k, budget=budget) for k in range(1, g + 1))
            stamp = ""
        w = weil_polynomial(PointCounts(q=rep.p, counts=counts), g)
        records.append(
            ScanRecord(
                label=model.label,
                curve=h,
                p=rep.p,
                q=rep.q,
                counts=counts,
                weil=w.coeffs,
                picard_fq=rep.picard_fq,
                picard_geom=rep.picard_geom,
                baseline=rep.baseline,
                jumped=rep.jumped,
                character=jump_character(endo, rep.p),
                computed_at=stamp,
            )
        )
    return records


def records_to_jsonl(records) -> str:
    return "\n".join(json.dumps(r.to_dict(), sort_keys=True) for r in records)


def records_to_csv(records) -> str:
    buf = io.StringIO()
    fields = [
        "label", "curve", "p", "q", "counts", "weil", "picard_fq",
        "picard_geom", "baseline", "jumped", "character", "computed_at",
    ]
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for r in records:
        row = r.to_dict()
        row["counts"] = "|".join(str(c) for c in r.counts)
        row["weil"] = "|".join(str(c) for c in r.weil)
        writer.writerow(row)
    return buf.getvalue().rstrip("\n")

"""Grid sweeps and deterministic CSV / JSON-lines serialisation."""
from __future__ import annotations

import csv
import enum
import io
import json
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .core import ParamPair, Regime, classify
from .errors import DegenerateParameters, InvalidParameter, UnsupportedShift
from .interlace import COPRIME_TOL, ClaimId, InterlacingVerdict, check, check_cor_noninterlace
from .reference import TABLE1, TABLE1_DEGREE, TABLE1_TOL
from .zeros import askey_delta, bound_chain, zeros

DEFAULT_T = (2.0, 2.5, 3.0, 3.5, 4.0)
STATUSES = ("holds", "fails", "vacuous", "boundary")


class OutputFormat(enum.Enum):
    JSONL = "json"
    CSV = "csv"


@dataclass
class SweepConfig:
    alpha_list: list[float]
    beta_list: list[float]
    n_range: list[int]
    claims: list[str]
    t_list: list[float] = field(default_factory=lambda: list(DEFAULT_T))
    output_format: OutputFormat = OutputFormat.JSONL
    parallelism: int = 1
    tol: float = COPRIME_TOL

    def __post_init__(self):
        if not self.claims:
            raise InvalidParameter("claim list is empty")
        self.claims = [ClaimId(c).value for c in self.claims]
        self.output_format = OutputFormat(self.output_format)
        if not (isinstance(self.parallelism, int) and self.parallelism >= 1):
            raise InvalidParameter(f"parallelism must be a positive integer, got {self.parallelism!r}")
        if not (self.alpha_list and self.beta_list and self.n_range):
            raise InvalidParameter("alpha_list, beta_list and n_range must be non-empty")
        if any(int(n) != n or n < 1 for n in self.n_range):
            raise InvalidParameter(f"n_range must hold positive integers, got {self.n_range}")
        self.n_range = [int(n) for n in self.n_range]
        quasi = [c for c in self.claims if c != ClaimId.COR22.value]
        bad = [b for b in self.beta_list if not -2 < b < -1]
        if quasi and bad:
            raise InvalidParameter(f"beta values {bad} outside (-2, -1) for claims {quasi}")
        if ClaimId.THM51II.value in self.claims:
            off = [t for t in self.t_list if not 2 <= t <= 4]
            if off or not self.t_list:
                raise UnsupportedShift(f"thm51ii needs t in [2, 4], got {self.t_list}")

    @classmethod
    def from_dict(cls, d: dict) -> "SweepConfig":
        known = {"alpha_list", "beta_list", "n_range", "claims", "t_list", "output_format", "parallelism", "tol"}
        extra = set(d) - known
        if extra:
            raise InvalidParameter(f"unknown config keys {sorted(extra)}")
        d = dict(d)
        nr = d.get("n_range")
        if isinstance(nr, dict):
            d["n_range"] = list(range(nr["start"], nr["stop"] + 1))
        return cls(**d)


@dataclass
class ReportRow:
    claim_id: str
    n: int
    alpha: float
    beta: float
    t: float | None
    hypothesis_met: bool
    holds: bool
    status: str
    delta: float | None = None
    x1: float | None = None
    x2: float | None = None
    loose_lower: float | None = None
    tight_lower: float | None = None
    upper: float | None = None
    witnesses: list = field(default_factory=list)

    FIELDS = ("claim_id", "n", "alpha", "beta", "t", "hypothesis_met", "holds", "status", "delta",
              "x1", "x2", "loose_lower", "tight_lower", "upper", "witnesses")

    def sort_key(self):
        return (self.claim_id, self.n, self.alpha, self.beta, -1.0 if self.t is None else self.t)

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.FIELDS}


def key_values(n: int, params: ParamPair) -> dict:
    """delta, the two smallest zeros and the bound triple where defined."""
    out = {}
    if params.regime is not Regime.QUASI_ORDER1:
        return out
    try:
        out["delta"] = askey_delta(n, params)
        zs = zeros(n, params).zeros
        out["x1"] = zs[0]
        out["x2"] = zs[1] if n > 1 else None
        if n >= 3:
            bc = bound_chain(n, params)
            out.update(loose_lower=bc.loose_lower, tight_lower=bc.tight_lower, upper=bc.upper)
    except DegenerateParameters:
        pass
    return out


def _noninterlace_all_k(n: int, params: ParamPair) -> InterlacingVerdict:
    parts = [check_cor_noninterlace(n, k, params) for k in range(1, max(n, 2))]
    if not all(p.hypothesis_met for p in parts):
        return parts[0]
    wit = [w for p in parts for w in p.witnesses]
    return InterlacingVerdict(ClaimId.COR_NONINTERLACE, not wit, True, wit)


def verdict_row(v: InterlacingVerdict, n: int, params: ParamPair, t: float | None) -> ReportRow:
    vals = key_values(n, params)
    return ReportRow(
        claim_id=v.claim_id.value, n=n, alpha=params.alpha, beta=params.beta, t=t,
        hypothesis_met=v.hypothesis_met, holds=v.holds, status=v.status,
        witnesses=[w.as_dict() for w in v.witnesses], **vals,
    )


def _run_task(task):
    claim, n, alpha, beta, t, tol = task
    params = classify(alpha, beta)
    try:
        if claim == ClaimId.COR_NONINTERLACE.value:
            v = _noninterlace_all_k(n, params)
        else:
            v = check(claim, n, params, t=t, tol=tol)
        return verdict_row(v, n, params, t)
    except DegenerateParameters as exc:
        return ("skipped", claim, n, alpha, beta, t, str(exc))


def sweep_tasks(cfg: SweepConfig):
    tasks = []
    for claim in cfg.claims:
        if claim == ClaimId.THM51I.value:
            ts = [1.0]
        elif claim == ClaimId.THM51II.value:
            ts = [float(t) for t in cfg.t_list]
        else:
            ts = [None]
        for n in cfg.n_range:
            for a in cfg.alpha_list:
                for b in cfg.beta_list:
                    for t in ts:
                        tasks.append((claim, n, float(a), float(b), t, cfg.tol))
    return tasks


def worker_count(cfg: SweepConfig) -> int:
    env = os.environ.get("QJACOBI_THREADS")
    if env:
        try:
            w = int(env)
        except ValueError:
            raise InvalidParameter(f"QJACOBI_THREADS must be a positive integer, got {env!r}") from None
        if w < 1:
            raise InvalidParameter(f"QJACOBI_THREADS must be a positive integer, got {env!r}")
        return w
    return cfg.parallelism


@dataclass
class SweepResult:
    rows: list[ReportRow]
    skipped: list[tuple]

    def counts(self) -> dict:
        c = Counter(r.status for r in self.rows)
        out = {s: c.get(s, 0) for s in STATUSES}
        out["skipped"] = len(self.skipped)
        return out

    def summary(self) -> str:
        return " ".join(f"{k}={v}" for k, v in self.counts().items())

    @property
    def any_failure(self) -> bool:
        return any(r.status == "fails" for r in self.rows)


def run_sweep(cfg: SweepConfig) -> SweepResult:
    tasks = sweep_tasks(cfg)
    workers = worker_count(cfg)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        results = [_run_task(t) for t in tasks]
    rows = sorted((r for r in results if isinstance(r, ReportRow)), key=ReportRow.sort_key)
    skipped = sorted((r[1:] for r in results if not isinstance(r, ReportRow)), key=str)
    return SweepResult(rows, skipped)


# --- serialisation -----------------------------------------------------------


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "%.12g" % v
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"), allow_nan=False)
    return str(v)



def to_csv(records: list[dict], columns=None) -> str:
    columns = list(columns or (records[0].keys() if records else []))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for rec in records:
        w.writerow([_csv_cell(rec.get(c)) for c in columns])
    return buf.getvalue()


def to_jsonl(records: list[dict]) -> str:
    # json uses repr for floats: the shortest string that round-trips
    return "".join(json.dumps(r, allow_nan=False) + "\n" for r in records)


def render(records: list[dict], fmt: OutputFormat | str, columns=None) -> str:
    fmt = OutputFormat(fmt)
    if fmt is OutputFormat.CSV:
        return to_csv(records, columns)
    return to_jsonl(records)


# --- reference table ---------------------------------------------------------

TABLE1_COLUMNS = ("alpha", "beta", "tight_lower", "zero", "upper",
                  "published_tight_lower", "published_zero", "published_upper",
                  "abs_diff_tight_lower", "abs_diff_zero", "abs_diff_upper", "flag")


def table1_rows(tol: float = TABLE1_TOL) -> tuple[list[dict], bool]:
    """Computed bounds and smallest zero at n = 15 beside the printed values.

    Returns the rows and whether every unflagged value matches within ``tol``.
    A flagged column must instead satisfy the strict ordering.
    """
    ok = True
    rows = []
    for ref in TABLE1:
        params = classify(ref.alpha, ref.beta)
        bc = bound_chain(TABLE1_DEGREE, params)
        x1 = zeros(TABLE1_DEGREE, params).zeros[0]
        computed = {"tight_lower": bc.tight_lower, "zero": x1, "upper": bc.upper}
        printed = {"tight_lower": ref.tight_lower, "zero": ref.zero, "upper": ref.upper}
        row = {"alpha": ref.alpha, "beta": ref.beta, **computed}
        row.update({f"published_{k}": v for k, v in printed.items()})
        flags = []
        for k in computed:
            diff = abs(computed[k] - printed[k])
            row[f"abs_diff_{k}"] = diff
            if k == ref.anomaly:
                ordered = bc.loose_lower < bc.tight_lower < x1 < bc.upper < -1
                flags.append(f"printed_{k}_violates_ordering" + ("" if ordered else "+computed_ordering_fails"))
                ok &= ordered
            elif not diff <= tol:
                flags.append(f"{k}_mismatch")
                ok = False
        row["flag"] = ";".join(flags)
        rows.append(row)
    return rows, ok

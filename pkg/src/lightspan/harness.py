"""Experiment runner: generate instances, run every verifier, tabulate."""

from __future__ import annotations

import configparser
import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from statistics import mean

from .charging import lightness_certificate, outerplanar_block_charging, verify_scheme
from .errors import InputError, LightspanError
from .forest import charge_bound
from .generators import random_graph, random_outerplanar
from .graph import mst
from .pathdec import WEIGHT_DISTRIBUTIONS, generate_kpath
from .pipeline import charging_pipeline
from .spanner import (
    as_epsilon,
    greedy_spanner,
    planar_lightness_bound,
    verify_edge_path_property,
    verify_stretch,
)

FAMILIES = ("kpath", "outerplanar", "random")


def _int_list(key: str, text: str) -> list[int]:
    out: list[int] = []
    for part in text.replace(",", " ").split():
        try:
            if ".." in part:
                lo, hi = (int(x) for x in part.split(".."))
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise InputError(f"config key {key!r}: bad integer list {text!r}") from None
    return out


def _parse_bool(key: str, text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise InputError(f"config key {key!r}: expected true/false, got {text!r}")


@dataclass
class ExperimentConfig:
    family: str
    n: list[int]
    eps: list[Fraction]
    seeds: list[int]
    pw: list[int] = field(default_factory=lambda: [0])
    weights: str = "uniform"
    output: str = "results.csv"
    workers: int = 1
    invariants: bool = True
    edge_prob: float = 0.3
    keep: float = 0.5

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if not self.eps:
            raise InputError("config needs at least one eps value")
        self.eps = [as_epsilon(e) for e in self.eps]
        if not self.n:
            raise InputError("config needs at least one n value")
        if not self.seeds:
            raise InputError("config needs at least one seed")
        if self.weights not in WEIGHT_DISTRIBUTIONS:
            raise InputError(f"unknown weight distribution {self.weights!r}")
        if self.workers < 1:
            raise InputError("workers must be at least 1")
        if self.family == "kpath":
            if not self.pw:
                raise InputError("kpath family needs at least one pw value")
            for n in self.n:
                for pw in self.pw:
                    if n < pw + 1:
                        raise InputError(f"kpath needs n >= pw+1, got n={n}, pw={pw}")
        if self.family == "outerplanar" and min(self.n) < 3:
            raise InputError("outerplanar family needs n >= 3")

    @classmethod
    def parse(cls, text: str) -> ExperimentConfig:
        """Flat ``key = value`` lines; ``#`` starts a comment."""
        cp = configparser.ConfigParser(inline_comment_prefixes=("#",), comment_prefixes=("#",))
        try:
            cp.read_string("[run]\n" + text)
        except configparser.Error as exc:
            raise InputError(f"config: {exc}") from None
        raw = dict(cp["run"])
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise InputError(f"unknown config keys: {', '.join(unknown)}")
        for key in ("family", "n", "eps", "seeds"):
            if key not in raw:
                raise InputError(f"config is missing {key!r}")
        kw: dict = {"family": raw["family"].strip()}
        kw["n"] = _int_list("n", raw["n"])
        kw["seeds"] = _int_list("seeds", raw["seeds"])
        if "pw" in raw:
            kw["pw"] = _int_list("pw", raw["pw"])
        kw["eps"] = [t for t in raw["eps"].replace(",", " ").split()]
        for key in ("weights", "output"):
            if key in raw:
                kw[key] = raw[key].strip()
        for key, conv in (("workers", int), ("edge_prob", float), ("keep", float)):
            if key in raw:
                try:
                    kw[key] = conv(raw[key])
                except ValueError:
                    raise InputError(f"config key {key!r}: bad value {raw[key]!r}") from None
        if "invariants" in raw:
            kw["invariants"] = _parse_bool("invariants", raw["invariants"])
        return cls(**kw)

    @classmethod
    def load(cls, path: str | Path) -> ExperimentConfig:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise InputError(f"{path}: {exc.strerror}") from None
        try:
            return cls.parse(text)
        except InputError as exc:
            raise InputError(f"{path}: {exc}") from None

    def work_items(self) -> list[tuple]:
        pws = self.pw if self.family == "kpath" else [0]
        return [
            (self.family, n, pw, seed, eps, self.weights, self.invariants, self.edge_prob, self.keep)
            for n in self.n
            for pw in pws
            for seed in self.seeds
            for eps in self.eps
        ]


COLUMNS = (
    "family",
    "n",
    "pw",
    "seed",
    "eps",
    "m",
    "spanner_edges",
    "mst_weight",
    "spanner_weight",
    "lightness",
    "lightness_bound",
    "max_tree_charge",
    "charge_bound",
    "max_triangles",
    "max_pseudo_triangles",
    "stretch_ok",
    "edge_path_ok",
    "k_simple",
    "acyclic",
    "strong",
    "invariants_ok",
    "lightness_ok",
    "status",
    "error",
)

VERDICTS = ("stretch_ok", "edge_path_ok", "k_simple", "acyclic", "strong", "invariants_ok", "lightness_ok")


@dataclass
class ResultRow:
    family: str
    n: int
    pw: int | None
    seed: int
    eps: Fraction
    m: int | None = None
    spanner_edges: int | None = None
    mst_weight: Fraction | None = None
    spanner_weight: Fraction | None = None
    lightness: Fraction | None = None
    lightness_bound: Fraction | None = None
    max_tree_charge: int | None = None
    charge_bound: int | None = None
    max_triangles: int | None = None
    max_pseudo_triangles: int | None = None
    stretch_ok: bool | None = None
    edge_path_ok: bool | None = None
    k_simple: bool | None = None
    acyclic: bool | None = None
    strong: bool | None = None
    invariants_ok: bool | None = None
    lightness_ok: bool | None = None
    error: str = ""

    @property
    def failed(self) -> bool:
        return bool(self.error) or any(getattr(self, v) is False for v in VERDICTS)

    @property
    def status(self) -> str:
        return "FAILED" if self.failed else "ok"

    def cells(self) -> list[str]:
        out = []
        for col in COLUMNS:
            val = getattr(self, col)
            if val is None:
                out.append("")
            elif isinstance(val, bool):
                out.append("true" if val else "false")
            else:
                out.append(str(val))
        return out


def _run_item(item: tuple) -> ResultRow:
    family, n, pw, seed, eps, weights, invariants, edge_prob, keep = item
    row = ResultRow(family, n, pw if family == "kpath" else None, seed, eps)
    try:
        if family == "kpath":
            g, d = generate_kpath(n, pw, seed, weights)
            res = charging_pipeline(g, d, eps, check=invariants)
            s = res.spanner
            row.max_tree_charge = res.report.max_tree
            row.charge_bound = res.k
            row.k_simple = res.report.k_simple
            row.acyclic = res.report.acyclic
            row.strong = res.report.strong
            row.invariants_ok = res.invariants_ok if invariants else None
            row.max_triangles = max((a.triangles for a in res.audit), default=0)
            row.max_pseudo_triangles = max((a.pseudo_triangles for a in res.audit), default=0)
            row.lightness_bound = 1 + Fraction(res.k) / eps
        elif family == "outerplanar":
            g, order = random_outerplanar(n, seed, keep, weights)
            s = greedy_spanner(g, eps)
            cs = outerplanar_block_charging(s.as_graph(), order)
            rep = verify_scheme(s, cs, 1)
            row.max_tree_charge = rep.max_tree
            row.charge_bound = 1
            row.k_simple, row.acyclic, row.strong = rep.k_simple, rep.acyclic, rep.strong
            if rep.verdict:
                lightness_certificate(s, rep, 1)
            row.lightness_bound = planar_lightness_bound(eps)
        else:
            g = random_graph(n, edge_prob, seed, weights)
            s = greedy_spanner(g, eps)
        row.m = g.m
        row.spanner_edges = len(s.edges)
        row.stretch_ok = verify_stretch(g, s).ok
        row.edge_path_ok = verify_edge_path_property(s).ok
        row.mst_weight = mst(g).weight
        row.spanner_weight = s.weight
        if row.mst_weight > 0:
            row.lightness = row.spanner_weight / row.mst_weight
            if row.lightness_bound is not None:
                row.lightness_ok = row.lightness <= row.lightness_bound
    except LightspanError as exc:
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def run(config: ExperimentConfig, *, write: bool = True) -> list[ResultRow]:
    """Rows in configuration order; the CSV is written to ``config.output``."""
    items = config.work_items()
    if config.workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            rows = list(pool.map(_run_item, items))
    else:
        rows = [_run_item(it) for it in items]
    if write:
        try:
            Path(config.output).write_text(rows_to_csv(rows))
        except OSError as exc:
            raise InputError(f"{config.output}: {exc.strerror}") from None
    return rows


def rows_to_csv(rows: list[ResultRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow(r.cells())
    return buf.getvalue()


# --- summaries ---------------------------------------------------------------


@dataclass
class SummaryRow:
    family: str
    pw: str
    eps: Fraction
    rows: int
    max_lightness: Fraction | None
    mean_lightness: Fraction | None
    max_tree_charge: int | None
    charge_bound: int | None
    failed: int


def _cell(text: str, conv, lineno: int, col: str):
    if text == "":
        return None
    try:
        return conv(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"line {lineno}: bad value {text!r} in column {col!r}") from None


def sweep_report(text: str) -> list[SummaryRow]:
    """Group rows by (family, pw, eps) and summarise lightness and charges."""
    lines = list(csv.reader(io.StringIO(text)))
    if not lines:
        return []
    header = lines[0]
    missing = [c for c in ("family", "pw", "eps", "lightness", "max_tree_charge", "charge_bound", "status") if c not in header]
    if missing:
        raise InputError(f"line 1: header lacks columns {', '.join(missing)}")
    col = {c: i for i, c in enumerate(header)}
    groups: dict[tuple, list] = {}
    for lineno, rec in enumerate(lines[1:], 2):
        if not rec:
            continue
        if len(rec) != len(header):
            raise InputError(f"line {lineno}: expected {len(header)} fields, got {len(rec)}")
        eps = _cell(rec[col["eps"]], Fraction, lineno, "eps")
        if eps is None:
            raise InputError(f"line {lineno}: empty eps")
        key = (rec[col["family"]], rec[col["pw"]], eps)
        groups.setdefault(key, []).append(
            (
                _cell(rec[col["lightness"]], Fraction, lineno, "lightness"),
                _cell(rec[col["max_tree_charge"]], int, lineno, "max_tree_charge"),
                _cell(rec[col["charge_bound"]], int, lineno, "charge_bound"),
                rec[col["status"]] != "ok",
            )
        )
    out = []
    for (family, pw, eps), vals in sorted(groups.items(), key=lambda kv: (kv[0][0], kv[0][1].zfill(6), kv[0][2])):
        lights = [v[0] for v in vals if v[0] is not None]
        charges = [v[1] for v in vals if v[1] is not None]
        bounds = [v[2] for v in vals if v[2] is not None]
        out.append(
            SummaryRow(
                family=family,
                pw=pw,
                eps=eps,
                rows=len(vals),
                max_lightness=max(lights) if lights else None,
                mean_lightness=mean(lights) if lights else None,
                max_tree_charge=max(charges) if charges else None,
                charge_bound=max(bounds) if bounds else None,
                failed=sum(v[3] for v in vals),
            )
        )
    return out


def format_summary(summary: list[SummaryRow]) -> str:
    head = ("family", "pw", "eps", "rows", "max_lightness", "mean_lightness", "max_charge", "bound", "failed")
    body = []
    for s in summary:
        body.append(
            (
                s.family,
                s.pw or "-",
                str(s.eps),
                str(s.rows),
                "-" if s.max_lightness is None else f"{float(s.max_lightness):.4f}",
                "-" if s.mean_lightness is None else f"{float(s.mean_lightness):.4f}",
                "-" if s.max_tree_charge is None else str(s.max_tree_charge),
                "-" if s.charge_bound is None else str(s.charge_bound),
                str(s.failed),
            )
        )
    widths = [max(len(r[i]) for r in [head, *body]) for i in range(len(head))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in [head, *body])


__all__ = [
    "COLUMNS",
    "ExperimentConfig",
    "ResultRow",
    "SummaryRow",
    "charge_bound",
    "format_summary",
    "rows_to_csv",
    "run",
    "sweep_report",
]

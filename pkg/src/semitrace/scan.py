"""Bulk scans over the genus tree with newline-delimited JSON output.

One record per semigroup, written in (genus, generators) order as soon as
it is ready, so an interrupted scan leaves a valid prefix behind and can
be resumed.
"""

from __future__ import annotations

import json
import os
import random
import time
from collections import Counter
from dataclasses import asdict, dataclass, field
from multiprocessing import Pool
from typing import Iterable, Iterator, Optional

from .errors import BatteryDisagreement, CertificateNotFound, SemitraceError
from .homology import delta1, ext_i, question12_check, theorem38_battery, tor1_self
from .ideals import canonical_ideal, classify, ideal_from_degrees, maximal_ideal
from .semigroup import NumericalSemigroup, enumerate_semigroups, new_semigroup

CHECKS = ("classify", "battery", "question12")


@dataclass
class ScanConfig:
    max_genus: Optional[int] = None
    max_frobenius: Optional[int] = None
    checks: tuple = ("classify",)
    prime: int = 101
    workers: int = 1
    ext_depth: int = 3
    random_ideals: int = 5
    # filters
    minimal_multiplicity_only: bool = False
    multiplicity: Optional[int] = None
    embedding_dimension: Optional[int] = None

    def __post_init__(self):
        bad = set(self.checks) - set(CHECKS)
        if bad:
            raise ValueError(f"unknown checks {sorted(bad)}; choose from {CHECKS}")
        self.checks = tuple(c for c in CHECKS if c in self.checks)

    def accepts(self, S: NumericalSemigroup) -> bool:
        if self.minimal_multiplicity_only and not S.has_minimal_multiplicity():
            return False
        if self.multiplicity is not None and S.multiplicity != self.multiplicity:
            return False
        if self.embedding_dimension is not None and S.embedding_dimension != self.embedding_dimension:
            return False
        return True


@dataclass
class ScanRecord:
    generators: list
    invariants: dict
    classification: Optional[dict] = None
    battery: Optional[dict] = None
    question12: Optional[dict] = None
    errors: list = field(default_factory=list)
    elapsed: float = 0.0

    def to_json(self) -> dict:
        return asdict(self)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def random_ideals(S: NumericalSemigroup, k: int, attempts: int = 60) -> list:
    """Up to k distinct nonprincipal m-primary monomial ideals, seeded by S.

    Each is generated by 2 to 4 members of S drawn from [1, c + e).
    """
    rng = random.Random("ideals:" + ",".join(map(str, S.generators)))
    pool = [s for s in range(1, S.conductor + S.multiplicity) if S.contains(s)]
    out, seen = [], set()
    for _ in range(attempts):
        if len(out) == k or not pool:
            break
        size = min(len(pool), rng.randint(2, 4))
        I = ideal_from_degrees(S, rng.sample(pool, size))
        if I.is_principal() or I.min_gens in seen:
            continue
        seen.add(I.min_gens)
        out.append(I)
    return out


def battery_ideals(S: NumericalSemigroup, k: int) -> list:
    """m, the canonical ideal and k random ideals, nonprincipal ones only."""
    out = [("m", maximal_ideal(S))]
    w = canonical_ideal(S)
    if not w.is_principal():
        out.append(("canonical", w))
    out += [("random", I) for I in random_ideals(S, k)]
    return out


def _battery_entry(kind, I, config) -> dict:
    b = theorem38_battery(I, config.prime, config.ext_depth)
    ext1, tor = b.evidence["ext1_dual"], b.evidence["tor1"]
    matlis = all(ext1[key] == tor[key] for key in ("total", "killed_by_y", "killed_by_m"))
    return {
        "kind": kind,
        "ideal": list(I.min_gens),
        "agreement": b.agreement,
        "value": b.value,
        "matlis": matlis,
        "conditions": {str(k): v for k, v in sorted(b.conditions.items())},
        "evidence": b.evidence if not b.agreement else None,
    }


def dimension_formulas(S: NumericalSemigroup, prime: int = 101) -> dict:
    """Lengths of Ext^1(w, R), delta_1(w) and Tor_1(w, R/w) against type r."""
    w = canonical_ideal(S)
    r, mu = S.type, w.mu
    ext1 = ext_i(w, "R", 1, prime, method="dual", stabilize=False)
    d1 = delta1(w, prime, stabilize=False)
    tor = tor1_self(w, prime, method="koszul", stabilize=False)
    out = {
        "type": r,
        "mu": mu,
        "ext1_total": ext1.total,
        "delta1_total": d1.total,
        "tor1_total": tor.total,
        "tor1_killed_by_m": tor.killed_by_m,
        "ext1_ok": ext1.total == r * r - r - 1,
        "delta1_ok": d1.total == r * (r - 1) // 2 - 1,
        "tor1_ok": (not tor.killed_by_m) or tor.total == mu * (mu - 1) // 2 + d1.total,
    }
    out["holds"] = out["ext1_ok"] and out["delta1_ok"] and out["tor1_ok"]
    return out


def process(S: NumericalSemigroup, config: ScanConfig) -> ScanRecord:
    t0 = time.perf_counter()
    rec = ScanRecord(
        list(S.generators),
        {"e": S.multiplicity, "n": S.embedding_dimension, "F": S.frobenius, "r": S.type, "genus": S.genus},
    )
    mm = S.has_minimal_multiplicity()
    rec.invariants["minimal_multiplicity"] = mm
    nearly = None
    if S.is_dvr:
        rec.classification = {"category": "dvr"}
    else:
        c = classify(S)
        nearly = c.nearly
        if "classify" in config.checks:
            rec.classification = c.as_dict()
    if "battery" in config.checks and mm and not S.is_dvr:
        entries = []
        for kind, I in battery_ideals(S, config.random_ideals):
            try:
                entries.append(_battery_entry(kind, I, config))
            except SemitraceError as exc:
                rec.errors.append(f"battery {kind} {list(I.min_gens)}: {type(exc).__name__}: {exc}")
        rec.battery = {
            "agreement": all(e["agreement"] for e in entries),
            "matlis": all(e["matlis"] for e in entries),
            "ideals": entries,
        }
        if nearly and S.type >= 2:
            rec.battery["formulas"] = dimension_formulas(S, config.prime)
    if "question12" in config.checks and not S.is_dvr:
        try:
            # under minimal multiplicity the first syzygy suffices for Ext;
            # direct checks past Ext^1 add nothing once a certificate is found
            method = "dual" if mm else "resolution"
            v = question12_check(S, config.ext_depth, config.prime, method=method, direct_depth=1)
            rec.question12 = v.to_json()
        except CertificateNotFound as exc:
            rec.question12 = {"inconclusive": True, "reason": str(exc)}
        except SemitraceError as exc:
            rec.errors.append(f"question12: {type(exc).__name__}: {exc}")
    rec.elapsed = round(time.perf_counter() - t0, 4)
    return rec


def _work(args) -> ScanRecord:
    gens, config = args
    return process(new_semigroup(gens), config)


def semigroups_for(config: ScanConfig) -> Iterator[NumericalSemigroup]:
    return enumerate_semigroups(config.max_frobenius, config.max_genus, predicate=config.accepts)


def _done_generators(path) -> set:
    done = set()
    if path and os.path.exists(path):
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    done.add(tuple(json.loads(line)["generators"]))
                except (ValueError, KeyError):
                    # a torn last line from an interrupted run
                    break
    return done


def run_scan(config: ScanConfig, out: Optional[str] = None, resume: bool = False) -> Iterator[ScanRecord]:
    """Yield records in canonical order, appending each to ``out`` as it comes.

    A battery disagreement raises BatteryDisagreement after its record is
    written.
    """
    done = _done_generators(out) if resume else set()
    if out and not resume and os.path.exists(out):
        os.remove(out)
    todo = [S.generators for S in semigroups_for(config) if S.generators not in done]
    fh = open(out, "a") if out else None
    try:
        if config.workers > 1:
            pool = Pool(config.workers)
            stream: Iterable = pool.imap(_work, [(g, config) for g in todo], chunksize=4)
        else:
            pool = None
            stream = (_work((g, config)) for g in todo)
        try:
            for rec in stream:
                if fh:
                    fh.write(rec.dumps() + "\n")
                    fh.flush()
                if rec.battery is not None and not rec.battery["agreement"]:
                    raise BatteryDisagreement(f"conditions disagree over {rec.generators}", rec.to_json())
                yield rec
        finally:
            if pool is not None:
                pool.terminate()
    finally:
        if fh:
            fh.close()


@dataclass
class ScanSummary:
    records: int = 0
    categories: Counter = field(default_factory=Counter)
    battery_semigroups: int = 0
    battery_ideals: int = 0
    disagreements: list = field(default_factory=list)
    matlis_failures: list = field(default_factory=list)
    formula_failures: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)
    errors: list = field(default_factory=list)

    def add(self, rec: ScanRecord):
        self.records += 1
        if rec.classification:
            self.categories[rec.classification["category"]] += 1
        if rec.battery is not None:
            self.battery_semigroups += 1
            self.battery_ideals += len(rec.battery["ideals"])
            if not rec.battery["agreement"]:
                self.disagreements.append(rec.generators)
            if not rec.battery["matlis"]:
                self.matlis_failures.append(rec.generators)
            f = rec.battery.get("formulas")
            if f is not None and not f["holds"]:
                self.formula_failures.append(rec.generators)
        if rec.question12:
            if rec.question12.get("is_counterexample"):
                self.counterexamples.append(rec.generators)
            if rec.question12.get("inconclusive"):
                self.inconclusive.append(rec.generators)
        if rec.errors:
            self.errors.append((rec.generators, rec.errors))

    def table(self) -> str:
        lines = [f"records                {self.records}"]
        for cat, n in sorted(self.categories.items()):
            lines.append(f"  {cat:<22}{n}")
        if self.battery_semigroups:
            lines.append(f"battery semigroups     {self.battery_semigroups} ({self.battery_ideals} ideals)")
            lines.append(f"battery disagreements  {len(self.disagreements)}")
            lines.append(f"matlis failures        {len(self.matlis_failures)}")
            lines.append(f"formula failures       {len(self.formula_failures)}")
        lines.append(f"counterexamples        {len(self.counterexamples)}")
        for g in self.counterexamples:
            lines.append(f"  *** {tuple(g)}")
        if self.inconclusive:
            lines.append(f"inconclusive           {len(self.inconclusive)}")
        if self.errors:
            lines.append(f"records with errors    {len(self.errors)}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "records": self.records,
            "categories": dict(sorted(self.categories.items())),
            "battery_semigroups": self.battery_semigroups,
            "battery_ideals": self.battery_ideals,
            "disagreements": self.disagreements,
            "matlis_failures": self.matlis_failures,
            "formula_failures": self.formula_failures,
            "counterexamples": self.counterexamples,
            "inconclusive": self.inconclusive,
            "errors": self.errors,
        }


def summarize(records: Iterable[ScanRecord]) -> ScanSummary:
    s = ScanSummary()
    for rec in records:
        s.add(rec)
    return s

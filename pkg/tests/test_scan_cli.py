import json

import pytest

from semitrace.cli import main
from semitrace.ideals import classify
from semitrace.scan import ScanConfig, process, random_ideals, run_scan, summarize
from semitrace.semigroup import enumerate_semigroups, new_semigroup


def _strip(line):
    doc = json.loads(line)
    doc.pop("elapsed")
    return doc


def test_scan_completeness_against_brute_force():
    from semitrace.semigroup import count_by_brute_force

    recs = list(run_scan(ScanConfig(max_genus=7)))
    assert len(recs) == sum(count_by_brute_force(7))
    assert len({tuple(r.generators) for r in recs}) == len(recs)


def test_scan_order_is_canonical():
    recs = list(run_scan(ScanConfig(max_frobenius=11)))
    keys = [(r.invariants["genus"], r.generators) for r in recs]
    assert keys == sorted(keys)


def test_scan_is_deterministic(tmp_path):
    cfg = ScanConfig(max_frobenius=8, checks=("classify", "battery", "question12"))
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    list(run_scan(cfg, str(a)))
    list(run_scan(cfg, str(b)))
    la, lb = a.read_text().splitlines(), b.read_text().splitlines()
    assert [_strip(x) for x in la] == [_strip(x) for x in lb]


def test_scan_workers_match_serial():
    cfg = ScanConfig(max_frobenius=8, checks=("classify", "battery"))
    serial = [r.to_json() for r in run_scan(cfg)]
    cfg.workers = 2
    parallel = [r.to_json() for r in run_scan(cfg)]
    for doc in serial + parallel:
        doc.pop("elapsed")
    assert serial == parallel


def test_scan_resume(tmp_path):
    cfg = ScanConfig(max_genus=6)
    out = tmp_path / "s.jsonl"
    full = [r.dumps() for r in run_scan(cfg)]
    lines = full[:20]
    # a torn tail as left by an interrupted run
    out.write_text("\n".join(lines) + "\n" + full[20][:15])
    fresh = list(run_scan(cfg, str(out), resume=True))
    assert len(fresh) == len(full) - 20
    done = out.read_text().splitlines()
    assert len([l for l in done if l.endswith("}")]) >= len(full)


def test_scan_filters():
    cfg = ScanConfig(max_frobenius=12, multiplicity=5, embedding_dimension=4)
    recs = list(run_scan(cfg))
    assert recs and all(r.invariants["e"] == 5 and r.invariants["n"] == 4 for r in recs)
    cfg = ScanConfig(max_frobenius=12, minimal_multiplicity_only=True)
    assert all(r.invariants["minimal_multiplicity"] for r in run_scan(cfg))
    with pytest.raises(ValueError):
        ScanConfig(max_genus=3, checks=("bogus",))


def test_question12_small_frobenius():
    recs = list(run_scan(ScanConfig(max_frobenius=9, checks=("question12",))))
    s = summarize(recs)
    assert s.counterexamples == [[5, 6, 13, 14]]
    assert not s.inconclusive
    mm = [r for r in recs if r.invariants["minimal_multiplicity"] and r.question12]
    assert mm and not any(r.question12.get("is_counterexample") for r in mm)


def test_minimal_multiplicity_classify_sweep():
    # conditions (1) and (2) of the battery agree on every minimal multiplicity semigroup
    from semitrace.ideals import theorem38_semigroup_report, maximal_ideal, canonical_ideal

    for S in enumerate_semigroups(max_genus=12, predicate=lambda s: s.has_minimal_multiplicity()):
        if S.is_dvr:
            continue
        for I in (maximal_ideal(S), canonical_ideal(S)):
            if not I.is_principal():
                r = theorem38_semigroup_report(I)
                assert r.c1_colon_is_m == r.c2_trace_is_m


def test_far_flung_members_found_by_scan():
    recs = list(run_scan(ScanConfig(max_genus=10, checks=("classify",))))
    by_gens = {tuple(r.generators): r for r in recs}
    for e in (3, 4, 5):
        for l in (2, 3):
            gens = tuple([e] + list(range(l * e + 1, l * e + e)))
            S = new_semigroup(gens)
            if S.genus <= 10:
                assert by_gens[S.generators].classification["category"] == "far_flung"


def test_random_ideals_are_seeded():
    S = new_semigroup([4, 9, 14, 15])
    a = [I.min_gens for I in random_ideals(S, 5)]
    b = [I.min_gens for I in random_ideals(S, 5)]
    assert a == b and len(a) == 5
    assert all(len(g) >= 2 for g in a)


def test_process_record_fields():
    rec = process(new_semigroup([4, 9, 14, 15]), ScanConfig(max_genus=1, checks=("classify", "battery")))
    assert rec.battery["agreement"] and rec.battery["matlis"]
    assert rec.classification["category"] == classify(new_semigroup([4, 9, 14, 15])).category
    assert rec.invariants["r"] == 3


# -- CLI ------------------------------------------------------------------------

def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_cli_report_battery(capsys):
    code, out = run_cli(capsys, "report", "4", "9", "14", "15", "--canonical", "--battery", "--field", "2")
    doc = json.loads(out.out)
    assert code == 0
    assert doc["battery"]["agreement"] and set(doc["battery"]["conditions"].values()) == {False}


def test_cli_report_gorenstein(capsys):
    code, out = run_cli(capsys, "report", "2", "3")
    assert code == 0 and json.loads(out.out)["classification"]["gorenstein"] is True


def test_cli_report_question12(capsys):
    code, out = run_cli(capsys, "report", "5", "6", "13", "14", "--question12")
    assert code == 0 and json.loads(out.out)["question12"]["is_counterexample"] is True


def test_cli_info_and_ideal(capsys):
    code, out = run_cli(capsys, "info", "5", "6", "13", "14", "--json")
    doc = json.loads(out.out)
    assert code == 0 and doc["frobenius"] == 9 and doc["type"] == 3
    code, out = run_cli(capsys, "ideal", "5", "6", "13", "14", "--canonical", "--json")
    assert code == 0 and json.loads(out.out)["min_gens"] == [10, 11, 12]
    code, out = run_cli(capsys, "classify", "3", "7", "8", "--json")
    assert code == 0 and json.loads(out.out)["category"] == "far_flung"


def test_cli_homology(capsys):
    code, out = run_cli(capsys, "report", "5", "6", "13", "14", "--canonical", "--homology")
    doc = json.loads(out.out)
    assert code == 0
    assert doc["homology"]["ext1_R"]["dims"] == {"-11": 1, "-4": 1, "-3": 2, "-2": 1}


def test_cli_verify(capsys):
    code, out = run_cli(capsys, "verify", "all")
    assert code == 0 and "FAIL" not in out.out
    code, out = run_cli(capsys, "verify", "example-4-12", "--field", "2", "--json")
    assert code == 0 and json.loads(out.out)[0]["passed"]


def test_cli_scan(capsys, tmp_path):
    out_file = tmp_path / "scan.jsonl"
    code, out = run_cli(capsys, "scan", "--max-genus", "6", "--out", str(out_file), "--json")
    assert code == 0 and json.loads(out.out)["records"] == 50
    assert len(out_file.read_text().splitlines()) == 50


@pytest.mark.parametrize(
    "argv",
    [
        ["info", "2", "4"],
        ["bogus"],
        ["info", "3", "5", "--field", "4"],
        ["verify", "nope"],
        ["scan"],
        ["info"],
    ],
)
def test_cli_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 3

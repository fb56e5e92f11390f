import csv
import io
import json
from itertools import combinations

import numpy as np
import pytest

from spectral_turan.errors import EmptyScan, ParseError, SinkFailure, SourceUnavailable
from spectral_turan.graph import gen_named, gen_turan, graph_from_code, graph_stats
from spectral_turan.inequalities import Tolerances
from spectral_turan.scan import (
    CSV_COLUMNS,
    Check,
    Filters,
    ScanConfig,
    ScanReport,
    Source,
    emit_report,
    find_extremal,
    format_real,
    report_text,
    scan,
)
from oracles import dense, naive_clique_number

BN = (Check.BOLLOBAS_NIKIFOROV,)


def brute_bn_tight(g):
    """Tightness of the indicator form, computed with LAPACK and the naive clique oracle."""
    if g.n == 0:
        return True
    mu = np.sort(np.linalg.eigvalsh(dense(g)))[::-1]
    w = naive_clique_number(g)
    lhs = mu[0] ** 2 + (mu[1] ** 2 if len(mu) > 1 and mu[1] >= 0 else 0)
    bound = 2 * (w - 1) * g.m / w
    return abs(bound - lhs) <= 1e-6 * max(1, bound)


def test_enumerate_four():
    report = scan(ScanConfig(Source.enumerate(4), BN))
    assert len(report.rows) == 64
    assert [r.index for r in report.rows] == list(range(64))
    want = sum(brute_bn_tight(graph_from_code(4, c)) for c in range(64))
    assert report.summary["tight"] == want
    assert report.summary["violations"] == 0 and report.summary["errors"] == 0


def test_enumerate_five_regular():
    report = scan(ScanConfig(Source.enumerate(5), BN, Filters(regular_only=True)))
    want = [c for c in range(1024) if graph_stats(graph_from_code(5, c)).regular_degree is not None]
    assert [r.index for r in report.rows] == want
    assert report.summary["violations"] == 0
    assert all("regular" in r.flags for r in report.rows)


def test_filters():
    rep = scan(ScanConfig(Source.enumerate(4), BN, Filters(connected_only=True, non_complete_only=True)))
    for row in rep.rows:
        s = graph_stats(graph_from_code(4, row.index))
        assert s.connected and not s.is_complete
    assert len(rep.rows) == 38 - 1  # 38 connected labeled graphs on 4 vertices, minus K4


def test_graph6_file(tmp_path):
    p = tmp_path / "k3.g6"
    p.write_text("Bw\n")
    rep = scan(ScanConfig(Source.graph6_file(p), (Check.SPECTRAL_TURAN,)))
    assert len(rep.rows) == 1
    res = rep.rows[0].result("SpectralTuran")
    assert abs(res.slack) < 1e-12 and res.tight
    lines = report_text(rep).splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert lines[1].split(",")[10] == "0.000000000000"


def test_two_checks_per_graph(tmp_path):
    p = tmp_path / "g.g6"
    p.write_text(">>graph6<<Bw\nDhc\n")
    rep = scan(ScanConfig(Source.graph6_file(p), (Check.SPECTRAL_TURAN, Check.BOLLOBAS_NIKIFOROV)))
    assert len(report_text(rep).splitlines()) == 1 + 4


def test_file_errors(tmp_path):
    with pytest.raises(SourceUnavailable):
        scan(ScanConfig(Source.graph6_file(tmp_path / "missing.g6"), BN))
    p = tmp_path / "bad.g6"
    p.write_text("Bw\nDhc\nBww\n")
    with pytest.raises(ParseError) as exc:
        scan(ScanConfig(Source.graph6_file(p), BN))
    assert exc.value.line == 3 and "line 3" in str(exc.value)


def test_per_row_errors_are_captured():
    big = gen_named("empty", 70)
    rep = scan(ScanConfig(Source.graphs([gen_named("cycle", 5), big]), (Check.ANDO_LIN_CHI,)))
    assert rep.summary["errors"] == 1 and rep.rows[1].error.startswith("TooLarge")
    assert rep.rows[0].error is None
    assert "error: TooLarge" in report_text(rep).splitlines()[2]


def test_find_extremal():
    row = find_extremal(ScanConfig(Source.enumerate(5), BN), "min_slack", Check.BOLLOBAS_NIKIFOROV)
    assert abs(row.result(Check.BOLLOBAS_NIKIFOROV).slack) < 1e-9
    row = find_extremal(ScanConfig(Source.graphs([gen_named("cycle", 5)]), BN), "max_slack", "BollobasNikiforov")
    assert row.result(Check.BOLLOBAS_NIKIFOROV).slack == pytest.approx(0.618034, abs=1e-6)
    row = find_extremal(ScanConfig(Source.random_regular(10, 3, 100, 5), BN), "min_slack", Check.BOLLOBAS_NIKIFOROV)
    assert row.result(Check.BOLLOBAS_NIKIFOROV).slack >= -1e-8
    with pytest.raises(EmptyScan):
        find_extremal(ScanConfig(Source.graphs([]), BN), "min_slack", Check.BOLLOBAS_NIKIFOROV)


def test_find_extremal_ties_smallest_index():
    k3 = gen_named("complete", 3)
    row = find_extremal(ScanConfig(Source.graphs([gen_named("cycle", 5), k3, k3]), BN), "min_slack", Check.BOLLOBAS_NIKIFOROV)
    assert row.index == 1


def test_empty_report_header_only():
    rep = scan(ScanConfig(Source.graphs([]), BN))
    assert report_text(rep) == ",".join(CSV_COLUMNS) + "\r\n"


def test_json_round_trip():
    rep = scan(ScanConfig(Source.gnp(9, 0.5, 12, 3), (Check.SPECTRAL_TURAN, Check.BOLLOBAS_NIKIFOROV)))
    doc = json.loads(report_text(rep, "json"))
    assert set(doc) == {"config", "rows", "summary"}
    rows = list(csv.DictReader(io.StringIO(report_text(rep))))
    assert len(rows) == len(doc["rows"])
    for a, b in zip(rows, doc["rows"]):
        for col in CSV_COLUMNS:
            if col in ("mu1", "mu2", "lhs", "bound", "slack"):
                assert float(a[col]) == pytest.approx(b[col], rel=1e-11, abs=1e-12)
            elif col in ("tight", "violated"):
                assert a[col] == str(b[col]).lower()
            else:
                assert a[col] == str(b[col])
    assert doc["summary"]["rows"] == 12


def test_summary_tallies():
    rep = scan(ScanConfig(Source.enumerate(4), (Check.SPECTRAL_TURAN, Check.BOLLOBAS_NIKIFOROV)))
    s = rep.summary
    assert s["tight"] == sum(c.tight for r in rep.rows for c in r.checks)
    assert s["violations"] == sum(c.violated for r in rep.rows for c in r.checks)
    mins = s["checks"]["BollobasNikiforov"]["min_slack"]
    assert mins["slack"] == min(r.result(Check.BOLLOBAS_NIKIFOROV).slack for r in rep.rows)


def test_violation_does_not_stop_scan():
    # a negative violation tolerance flags every non-tight row; the scan still finishes
    tol = Tolerances(tight=1e-6, violation=-10.0)
    graphs = [gen_named("cycle", 5), gen_turan(6, 3), gen_named("petersen")]
    rep = scan(ScanConfig(Source.graphs(graphs), BN, tolerances=tol))
    assert len(rep.rows) == 3 and rep.summary["violations"] == 2
    assert [r.checks[0].violated for r in rep.rows] == [True, False, True]
    assert not any(c.tight and c.violated for r in rep.rows for c in r.checks)


def test_certify_check():
    rep = scan(ScanConfig(Source.graphs([gen_named("cycle", 5), gen_named("complete", 4)]), (Check.CERTIFY,)))
    assert [r.result("Certify").equality_class for r in rep.rows] == ["certified", "certified"]
    assert rep.summary["certificate_failures"] == 0


def test_determinism_and_workers():
    cfg = ScanConfig(Source.random_regular(12, 4, 50, 7), BN)
    a = report_text(scan(cfg))
    assert a == report_text(scan(cfg))
    b = report_text(scan(ScanConfig(cfg.source, BN, workers=4)))
    assert a == b


def test_config_validation():
    with pytest.raises(ValueError):
        ScanConfig(Source.enumerate(3), ())
    with pytest.raises(ValueError):
        ScanConfig(Source.gnp(3, 0.5, 0, 1), BN)


def test_sink_failure():
    class Broken(io.StringIO):
        def write(self, s):
            raise OSError("disk full")

    rep = scan(ScanConfig(Source.graphs([gen_named("cycle", 5)]), BN))
    with pytest.raises(SinkFailure):
        emit_report(rep, "csv", Broken())


@pytest.mark.parametrize(
    "x,out",
    [(0.0, "0.000000000000"), (-1e-17, "0.000000000000"), (5.0, "5.00000000000"), (64.0, "64.0000000000"),
     (0.6180339887498949, "0.618033988750"), (9.99999999999999, "10.0000000000"), (None, "")],
)
def test_format_real(x, out):
    assert format_real(x) == out

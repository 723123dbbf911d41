import io
import logging

import pytest

from mtdchain.chain import WDL
from mtdchain.chart import ChartData, read_chart_csv, render_svg, slug, write_chart_csv
from mtdchain.errors import InputError, MalformedRow, UnknownTeam
from mtdchain.ledger import (
    LEDGER_COLUMNS,
    ingest_ledger,
    is_ledger,
    ledger_teams,
    read_ledger,
    write_ledger,
)
from mtdchain.samples import KBO_2018, synthetic_ledger


@pytest.fixture(scope="module")
def ledger_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("ledger") / "kbo.csv"
    write_ledger(synthetic_ledger(), path)
    return path


def test_synthetic_ledger_matches_standings(ledger_path):
    records = read_ledger(ledger_path)
    assert ledger_teams(records) == list(KBO_2018)
    for team, (games, w, d, l) in KBO_2018.items():
        results = [r.result for r in records if r.team == team]
        assert len(results) == games
        assert (results.count("W"), results.count("D"), results.count("L")) == (w, d, l)


def test_table_winning_rates():
    for team, (games, w, d, l) in KBO_2018.items():
        assert games == w + d + l


def test_is_ledger(ledger_path, tmp_path):
    assert is_ledger(ledger_path)
    other = tmp_path / "seq.txt"
    other.write_text("WWL\n")
    assert not is_ledger(other)


def test_ingest_last_100(ledger_path):
    records = [r for r in read_ledger(ledger_path) if r.team == "Doosan Bears"]
    seq = ingest_ledger(ledger_path, "Doosan Bears", last=100)
    assert len(seq) == 100
    assert seq.labels() == [r.result for r in sorted(records, key=lambda r: r.date)][-100:]


def test_ingest_sorts_by_date(tmp_path):
    path = tmp_path / "l.csv"
    path.write_text(
        "date,team,opponent,result\n"
        "2018-04-03,A,B,L\n"
        "2018-04-01,A,B,W\n"
        "2018-04-02,A,C,D\n"
        "2018-04-01,B,A,L\n"
    )
    assert ingest_ledger(path, "A").labels() == ["W", "D", "L"]


def test_ingest_last_exceeds_rows_warns(ledger_path, caplog):
    with caplog.at_level(logging.WARNING):
        seq = ingest_ledger(ledger_path, "KIA Tigers", last=500)
    assert len(seq) == 110
    assert "only 110" in caplog.text


def test_unknown_team(ledger_path):
    with pytest.raises(UnknownTeam):
        ingest_ledger(ledger_path, "Haitai Tigers")


@pytest.mark.parametrize("row, line", [
    ("2018-04-02,A,B,X", 3),
    ("2018-04-02,A,B", 3),
    ("yesterday,A,B,W", 3),
    ("2018-04-01,A,C,W", 3),  # same team twice on one date
])
def test_malformed_rows(tmp_path, row, line):
    path = tmp_path / "l.csv"
    path.write_text("date,team,opponent,result\n2018-04-01,A,B,W\n" + row + "\n")
    with pytest.raises(MalformedRow) as exc:
        ingest_ledger(path, "A")
    assert exc.value.line == line


def test_bad_header(tmp_path):
    path = tmp_path / "l.csv"
    path.write_text("when,who,result\n")
    with pytest.raises(MalformedRow) as exc:
        read_ledger(path)
    assert exc.value.line == 1


def test_ledger_columns():
    assert LEDGER_COLUMNS == ("date", "team", "opponent", "result")


def test_chart_validation():
    with pytest.raises(InputError):
        ChartData("T", ((2, 0.1), (1, 0.2)))
    with pytest.raises(InputError):
        ChartData("T", ((1, 1.2),))


def test_chart_csv_round_trip_and_svg_pure():
    chart = ChartData("SK Wyverns", tuple((k, (k % 7) / 10) for k in range(1, 14)))
    buf = io.StringIO()
    write_chart_csv(chart, buf)
    back = read_chart_csv(io.StringIO(buf.getvalue()))
    assert back == chart
    svg = render_svg(chart)
    assert render_svg(back) == svg
    assert svg.count("<rect") == 1 + 13
    assert "k=13" in svg and "SK Wyverns" in svg


def test_slug():
    assert slug("Doosan Bears") == "doosan_bears"
    assert slug("KT Wiz") == "kt_wiz"

import json

import numpy as np
import pytest

from mtdchain.chain import WDL, parse_sequence
from mtdchain.chart import read_chart_csv, render_svg
from mtdchain.cli import main
from mtdchain.ledger import write_ledger
from mtdchain.model import fit, load_model, predict_distribution
from mtdchain.rng import make_rng
from mtdchain.samples import synthetic_ledger


@pytest.fixture
def seqfile(tmp_path):
    def make(text, name="seq.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return make


@pytest.fixture
def alt_model(tmp_path, seqfile):
    out = tmp_path / "alt.json"
    assert main(["fit", seqfile("WL" * 60), "--order", "2", "--out", str(out), "--quiet"]) == 0
    return str(out)


def test_fit_short(tmp_path, seqfile, capsys):
    out = tmp_path / "m.json"
    assert main(["fit", seqfile("WWLWL"), "-k", "2", "-o", str(out)]) == 0
    text = capsys.readouterr().out
    assert "lambda:" in text and "lp_residual:" in text and "x_hat:" in text
    model = load_model(out)
    direct = fit(parse_sequence("WWLWL", WDL), 2)
    assert model.weights.tolist() == direct.weights.tolist()
    assert model.lp_residual == direct.lp_residual


def test_fit_order_zero(tmp_path, seqfile, capsys):
    code = main(["fit", seqfile("WWLWL"), "-k", "0", "-o", str(tmp_path / "m.json")])
    assert code == 3
    assert "order must be ≥ 1" in capsys.readouterr().err


def test_fit_too_short_is_computation_error(tmp_path, seqfile):
    assert main(["fit", seqfile("WWL"), "-k", "3", "-o", str(tmp_path / "m.json")]) == 3


def test_fit_unknown_token(tmp_path, seqfile, capsys):
    code = main(["fit", seqfile("W W L\nX W"), "-k", "1", "-o", str(tmp_path / "m.json")])
    assert code == 2
    err = capsys.readouterr().err
    assert "'X'" in err and "position 4" in err


def test_fit_missing_file(tmp_path):
    assert main(["fit", str(tmp_path / "nope.txt"), "-k", "1", "-o", str(tmp_path / "m.json")]) == 2


def test_states_header_and_flag(tmp_path, seqfile):
    path = seqfile("# states: H T\nHTTHHTHT\n")
    out = tmp_path / "m.json"
    assert main(["fit", path, "-k", "1", "-o", str(out), "--quiet"]) == 0
    assert load_model(out).space.labels == ("H", "T")
    assert main(["--states", "H,T", "fit", path, "-k", "1", "-o", str(out), "--quiet"]) == 0
    assert main(["fit", path, "-k", "1", "-o", str(out), "--states", "W,D,L"]) == 2


def test_predict_alternating(alt_model, capsys):
    assert main(["predict", alt_model, "--history", "W,L", "--digits", "3"]) == 0
    assert capsys.readouterr().out.strip() == "W 0.000 D 0.000 L 1.000"
    assert main(["predict", alt_model, "--history", "W,L"]) == 0
    assert capsys.readouterr().out.strip() == "W 0.0 D 0.0 L 1.0"


def test_predict_wrong_length(alt_model, capsys):
    assert main(["predict", alt_model, "--history", "W"]) == 2
    assert main(["predict", alt_model, "--history", "W,Q"]) == 2


def test_predict_order_one(tmp_path, seqfile, capsys):
    out = tmp_path / "k1.json"
    main(["fit", seqfile("WWLWL"), "-k", "1", "-o", str(out), "--quiet"])
    capsys.readouterr()
    assert main(["predict", str(out), "--history", "W"]) == 0
    vals = capsys.readouterr().out.split()
    assert vals[0::2] == ["W", "D", "L"]
    np.testing.assert_array_equal([float(v) for v in vals[1::2]], [1 / 3, 0.0, 2 / 3])


def test_fit_then_predict_equals_library(tmp_path, seqfile, capsys):
    seq = "".join("WDL"[i] for i in make_rng(8).choice(3, 100, p=[0.5, 0.1, 0.4]))
    out = tmp_path / "m.json"
    main(["fit", seqfile(seq), "-k", "3", "-o", str(out), "--quiet"])
    direct = fit(parse_sequence(seq, WDL), 3)
    capsys.readouterr()
    main(["predict", str(out), "--history", "L W W"])
    vals = [float(v) for v in capsys.readouterr().out.split()[1::2]]
    assert vals == predict_distribution(direct, (2, 0, 0)).probs.tolist()


def test_simulate(alt_model, capsys):
    assert main(["simulate", alt_model, "--init", "W,L", "--steps", "4"]) == 0
    assert capsys.readouterr().out.strip() == "LWLW"
    assert main(["simulate", alt_model, "--init", "W,L", "--steps", "0"]) == 0
    assert capsys.readouterr().out.strip() == ""
    assert main(["simulate", alt_model, "--init", "W", "--steps", "3"]) == 2


def test_simulate_seeded(tmp_path, seqfile, capsys):
    seq = "".join("WDL"[i] for i in make_rng(3).choice(3, 100))
    out = tmp_path / "m.json"
    main(["fit", seqfile(seq), "-k", "2", "-o", str(out), "--quiet"])
    runs = []
    for _ in range(2):
        main(["--seed", "11", "simulate", str(out), "--init", "W,D", "--steps", "50"])
        runs.append(capsys.readouterr().out)
    assert runs[0] == runs[1]
    assert len(runs[0].strip()) == 50
    main(["simulate", str(out), "--init", "W,D", "--steps", "50", "--seed", "12"])
    assert capsys.readouterr().out != runs[0]


def test_assess_sequence_file(tmp_path, seqfile, capsys):
    seq = "".join("WDL"[i] for i in make_rng(1).choice(3, 120, p=[0.5, 0.05, 0.45]))
    path = seqfile(seq, "doosan.txt")
    outputs = []
    for run in range(2):
        report = tmp_path / f"r{run}.csv"
        assert main(["assess", path, "--seed", "7", "--report", str(report)]) == 0
        outputs.append((capsys.readouterr().out, report.read_bytes()))
    assert outputs[0] == outputs[1]
    table = outputs[0][0].splitlines()
    rows = [line for line in table if line[:2].strip().isdigit()]
    assert [int(r.split()[0]) for r in rows] == list(range(1, 14))
    csv_lines = outputs[0][1].decode().splitlines()
    assert csv_lines[0] == "team,k,repetition,accuracy,seed"
    assert len(csv_lines) == 14
    assert all(line.startswith("doosan,") and line.endswith(",7") for line in csv_lines[1:])


def test_assess_k_max(seqfile, capsys):
    path = seqfile("WL" * 50)
    assert main(["assess", path, "--k-max", "4"]) == 0
    out = capsys.readouterr().out
    assert "1  1.0000" in out
    assert "5  " not in out


def test_assess_config_errors(seqfile):
    assert main(["assess", seqfile("WL" * 20)]) == 3
    assert main(["assess", seqfile("WL" * 50), "--k-max", "0"]) == 3
    assert main(["assess", seqfile("WL" * 50), "--seed", "-1"]) == 2


def test_assess_ledger_charts(tmp_path, capsys):
    ledger = tmp_path / "kbo.csv"
    write_ledger(synthetic_ledger(), ledger)
    chart = tmp_path / "charts" / "fig.csv"
    chart.parent.mkdir()
    trace = tmp_path / "trace.csv"
    code = main(["assess", str(ledger), "--seed", "3", "--chart", str(chart), "--svg",
                 "--trace", str(trace), "--quiet"])
    assert code == 0
    csvs = sorted(chart.parent.glob("*.csv"))
    svgs = sorted(chart.parent.glob("*.svg"))
    assert len(csvs) == 10 and len(svgs) == 10
    doosan = chart.parent / "fig_doosan_bears.csv"
    with open(doosan) as fh:
        data = read_chart_csv(fh)
    assert data.team == "Doosan Bears"
    assert [k for k, _ in data.rows] == list(range(1, 14))
    assert render_svg(data) == doosan.with_suffix(".svg").read_text()
    assert len(trace.read_text().splitlines()) == 1 + 10 * 13 * 10


def test_assess_ledger_team_filter(tmp_path, capsys):
    ledger = tmp_path / "kbo.csv"
    write_ledger(synthetic_ledger(), ledger)
    chart = tmp_path / "one.csv"
    assert main(["assess", str(ledger), "--team", "KT Wiz", "--chart", str(chart), "--quiet"]) == 0
    assert chart.exists()
    assert main(["assess", str(ledger), "--team", "Haitai Tigers"]) == 2


def test_fit_ledger_needs_team(tmp_path):
    ledger = tmp_path / "kbo.csv"
    write_ledger(synthetic_ledger(), ledger)
    out = tmp_path / "m.json"
    assert main(["fit", str(ledger), "-k", "2", "-o", str(out)]) == 2
    assert main(["fit", str(ledger), "-k", "2", "-o", str(out), "--team", "NC Dinos", "--quiet"]) == 0
    assert json.loads(out.read_text())["order"] == 2

"""
Testes da varredura, do orquestrador e da linha de comando.
"""

import io
import json
import math
import asyncio

import numpy as np
import pandas as pd
import pytest

from config import carregar_configuracao
from erros import ConfiguracaoInvalida, UnsupportedCaseError
from sweep_cli import (COLUMNS, format_csv, format_json, format_report, main, print_spectrum,
                       report_point, run_sweep, spectrum_table, write_output)
from sweep_orchestrator import SweepConfig, SweepOrchestrator, temperature_grid

T_E = 3 / (2 * math.log(4))
HEADER = "T,ppt_min_eigenvalue,negativity,entanglement_hs,T_E"


@pytest.fixture(autouse=True)
def ambiente_limpo(monkeypatch):
    for nome in ("EMARANHAMENTO_KB", "EMARANHAMENTO_WORKERS", "EMARANHAMENTO_FORMATO",
                 "EMARANHAMENTO_DIGITOS"):
        monkeypatch.delenv(nome, raising=False)


def test_temperature_grid():
    grid = temperature_grid(SweepConfig(J=-1.0, t_min=0.0, t_max=2.0, n_points=201))
    assert len(grid) == 201 and grid[0] == 0.0 and grid[-1] == 2.0
    assert grid[100] == pytest.approx(1.0)
    grid = temperature_grid(SweepConfig(J=-1.0, t_min=1e-3, t_max=10.0, n_points=5, scale="log"))
    assert grid[0] == 1e-3 and grid[-1] == 10.0
    assert grid[2] == pytest.approx(0.1)
    assert np.all(np.diff(grid) > 0)


@pytest.mark.parametrize("kwargs", [
    dict(t_min=1.0, t_max=1.0, n_points=10),
    dict(t_min=-1.0, t_max=1.0, n_points=10),
    dict(t_min=0.0, t_max=1.0, n_points=1),
    dict(t_min=0.0, t_max=1.0, n_points=10, scale="log"),
    dict(t_min=0.0, t_max=1.0, n_points=10, scale="cubic"),
    dict(t_min=0.0, t_max=1.0, n_points=10, output_format="xml"),
    dict(t_min=0.0, t_max=1.0, n_points=10, workers=0),
    dict(t_min=0.0, t_max=float("inf"), n_points=10),
    dict(t_min=0.0, t_max=1.0, n_points=10, kB=0.0),
    dict(t_min=0.0, t_max=1.0, n_points=10, kB=float("nan")),
    dict(t_min=0.0, t_max=1.0, n_points=10, J=float("nan")),
])
def test_invalid_sweep_config(kwargs):
    with pytest.raises(ConfiguracaoInvalida):
        SweepConfig(**{"J": -1.0, **kwargs})


def test_figure_sweep():
    reports = run_sweep(SweepConfig(J=-1.0, t_min=0.0, t_max=2.0, n_points=201))
    assert len(reports) == 201
    assert [r.T for r in reports] == sorted(r.T for r in reports)
    assert reports[0].entanglement_hs == pytest.approx(0.288675, abs=1e-6)
    values = [r.entanglement_hs for r in reports]
    assert all(b - a <= 1e-12 for a, b in zip(values, values[1:]))
    for r in reports:
        if r.T >= 1.082021 + 1e-6:
            assert r.entanglement_hs == 0.0
        if r.T < T_E - 1e-6:
            assert r.entanglement_hs > 0.0
        assert r.T_E == pytest.approx(T_E)


def test_ferromagnetic_sweep_has_no_entanglement():
    reports = run_sweep(SweepConfig(J=1.0, t_min=0.0, t_max=5.0, n_points=26))
    assert all(r.entanglement_hs == 0.0 and r.negativity == 0.0 for r in reports)
    assert all(r.T_E is None for r in reports)


def test_two_point_sweep():
    reports = run_sweep(SweepConfig(J=-1.0, t_min=0.5, t_max=1.0, n_points=2))
    assert [r.T for r in reports] == [0.5, 1.0]


def test_orchestrator_report():
    orquestrador = SweepOrchestrator(SweepConfig(J=-1.0, t_min=0.0, t_max=2.0, n_points=11, workers=3))
    relatorio = asyncio.run(orquestrador.executar())
    assert relatorio["status"] == "completed"
    assert [s["step"] for s in relatorio["steps"]] == [
        "temperature_grid", "critical_temperature", "evaluate_points"]
    assert relatorio["errors"] == []
    assert len(relatorio["log"]) == 3
    assert all(m.startswith("✅") for m in relatorio["log"])
    assert len(relatorio["reports"]) == 11


def test_orchestrator_error_path():
    cfg = SweepConfig(J=-1.0, s2=1.5, t_min=0.0, t_max=2.0, n_points=5, method="closed_form")
    orquestrador = SweepOrchestrator(cfg)
    relatorio = asyncio.run(orquestrador.executar())
    assert relatorio["status"] == "error"
    assert relatorio["steps"][-1]["step"] == "critical_temperature"
    assert relatorio["log"][-1].startswith("❌")
    assert isinstance(orquestrador.falha, UnsupportedCaseError)
    with pytest.raises(UnsupportedCaseError):
        run_sweep(cfg)


def test_csv_schema_and_determinism():
    cfg = SweepConfig(J=-1.0, t_min=0.0, t_max=2.0, n_points=21)
    first = format_csv(run_sweep(cfg))
    second = format_csv(run_sweep(cfg))
    assert first == second
    lines = first.splitlines()
    assert lines[0] == HEADER
    assert first.count(HEADER) == 1
    assert len(lines) == 22
    assert first.endswith("\n")
    frame = pd.read_csv(io.StringIO(first))
    assert list(frame.columns) == COLUMNS
    assert frame["T_E"].iloc[0] == pytest.approx(T_E, rel=1e-8)


def test_csv_leaves_missing_critical_temperature_empty():
    text = format_csv(run_sweep(SweepConfig(J=1.0, t_min=0.0, t_max=1.0, n_points=3)))
    for line in text.splitlines()[1:]:
        assert line.split(",")[-1] == ""


def test_json_round_trip():
    reports = run_sweep(SweepConfig(J=-1.0, t_min=0.0, t_max=2.0, n_points=5, output_format="json"))
    text = format_json(reports)
    parsed = json.loads(text)
    assert parsed == [r.to_dict() for r in reports]
    assert json.dumps(parsed, indent=2) + "\n" == text


def test_write_output(tmp_path):
    destino = tmp_path / "saida.csv"
    write_output("a,b\n1,2\n", str(destino))
    assert destino.read_text(encoding="utf-8") == "a,b\n1,2\n"
    buffer = io.StringIO()
    write_output("x\n", "-", buffer)
    assert buffer.getvalue() == "x\n"


def test_spectrum_tables():
    table = spectrum_table(-1.0)
    assert table["autovalor"].tolist() == [-1.0, 0.5]
    assert table["degenerescencia"].tolist() == [2, 4]
    assert table["rotulos"].tolist() == ["λ3,λ4", "λ1,λ2,λ5,λ6"]
    zero = spectrum_table(0.0)
    assert zero["autovalor"].tolist() == [0.0]
    assert zero["degenerescencia"].tolist() == [6]
    larger = spectrum_table(-1.0, s2=1.5)
    assert larger["degenerescencia"].sum() == 8
    assert sorted(larger["degenerescencia"].tolist()) == [3, 5]
    assert "rotulos" not in larger.columns


def test_print_spectrum_writes_table():
    buffer = io.StringIO()
    texto = print_spectrum(-1.0, stream=buffer)
    assert buffer.getvalue() == texto
    assert "λ3,λ4" in texto and "degenerescencia" in texto


def test_report_point_examples():
    near = report_point(-1.0, 1.082021)
    assert abs(near.ppt_min_eigenvalue) < 1e-6
    assert near.entanglement_hs < 1e-6
    cold = report_point(-1.0, 1e-3)
    assert cold.entanglement_hs == pytest.approx(0.288675, abs=1e-6)
    assert report_point(-1.0, 10.0).negativity == 0.0
    payload = json.loads(format_report(cold, "json"))
    assert list(payload) == COLUMNS
    assert "entanglement_hs" in format_report(cold)


def test_main_sweep_to_stdout(capsys):
    assert main(["sweep", "--J", "-1", "--t-min", "0", "--t-max", "2", "--n", "11"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == HEADER
    assert len(out.splitlines()) == 12


def test_main_sweep_json_file_and_verbose(tmp_path, capsys):
    destino = tmp_path / "sweep.json"
    code = main(["sweep", "--n", "4", "--format", "json", "--out", str(destino), "--verbose"])
    assert code == 0
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "✅" in captured.err
    assert len(json.loads(destino.read_text(encoding="utf-8"))) == 4


def test_main_exit_codes(tmp_path, capsys):
    assert main(["sweep", "--n", "1"]) == 2
    assert main(["sweep", "--scale", "log", "--t-min", "0"]) == 2
    assert main(["nada"]) == 2
    assert main(["spectrum", "--s2", "1/3"]) == 2
    assert main(["point"]) == 2
    assert main(["sweep", "--kB", "-1", "--n", "3"]) == 2
    assert main(["sweep", "--J", "inf", "--n", "3"]) == 2
    assert main(["point", "--J", "nan", "--T", "1"]) == 2
    assert main(["spectrum", "--kB", "0"]) == 2
    assert main(["critical-temp", "--kB", "-2"]) == 2
    assert main(["point", "--T", "-1"]) == 1
    assert main(["critical-temp", "--s2", "3/2", "--method", "closed_form"]) == 1
    assert main(["sweep", "--n", "3", "--out", str(tmp_path / "nao_existe" / "x.csv")]) == 1
    capsys.readouterr()


def test_main_other_commands(capsys):
    assert main(["spectrum", "--J", "-1"]) == 0
    assert "λ1,λ2,λ5,λ6" in capsys.readouterr().out
    assert main(["point", "--J", "-1", "--T", "0.5", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["T"] == 0.5
    assert main(["critical-temp", "--J", "-1"]) == 0
    out = capsys.readouterr().out
    assert "T_E = 1.08202128" in out
    assert "0.910239" in out
    assert "sim" in out


def test_configuration_from_environment(monkeypatch, capsys):
    assert carregar_configuracao() == {"kB": 1.0, "workers": 4, "formato": "csv", "digitos": 9}
    monkeypatch.setenv("EMARANHAMENTO_FORMATO", "json")
    monkeypatch.setenv("EMARANHAMENTO_WORKERS", "2")
    assert carregar_configuracao()["formato"] == "json"
    assert main(["sweep", "--n", "2"]) == 0
    assert isinstance(json.loads(capsys.readouterr().out), list)
    monkeypatch.setenv("EMARANHAMENTO_KB", "abc")
    with pytest.raises(ConfiguracaoInvalida):
        carregar_configuracao()
    assert main(["spectrum"]) == 2
    monkeypatch.setenv("EMARANHAMENTO_KB", "-1")
    with pytest.raises(ConfiguracaoInvalida):
        carregar_configuracao()

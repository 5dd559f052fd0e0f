"""
Linha de comando da calculadora de emaranhamento térmico.

Subcomandos:
    sweep          varredura em temperatura (CSV ou JSON)
    spectrum       autovalores do hamiltoniano com degenerescências
    point          um único ponto (texto ou JSON)
    critical-temp  temperatura crítica T_E e comparação com dois qubits
"""

import sys
import json
import asyncio
import argparse
from typing import Iterable, List, Optional, TextIO

import numpy as np
import pandas as pd

from config import carregar_configuracao
from erros import ConfiguracaoInvalida, DomainError, ErroEmaranhamento
from entanglement import (EntanglementReport, critical_temperature, entanglement_report,
                          xxx_qubit_critical_temperature)
from linalg_core import hermitian_eigendecompose
from model import SpinSystem, analytic_spectrum_2x3, build_hamiltonian
from spin_algebra import parse_spin
from sweep_orchestrator import SweepConfig, SweepOrchestrator

COLUMNS = ["T", "ppt_min_eigenvalue", "negativity", "entanglement_hs", "T_E"]


def run_sweep(cfg: SweepConfig, log: Optional[List[str]] = None) -> List[EntanglementReport]:
    """Executa a varredura; os relatórios saem em ordem crescente de T."""
    orquestrador = SweepOrchestrator(cfg)
    relatorio = asyncio.run(orquestrador.executar())
    if log is not None:
        log.extend(relatorio["log"])
    if relatorio["status"] == "error":
        raise orquestrador.falha
    return relatorio["reports"]


def reports_to_frame(reports: Iterable[EntanglementReport]) -> pd.DataFrame:
    return pd.DataFrame([r.to_dict() for r in reports], columns=COLUMNS)


def format_csv(reports: Iterable[EntanglementReport], digits: int = 9) -> str:
    return reports_to_frame(reports).to_csv(
        index=False, float_format=f"%.{digits}g", lineterminator="\n", na_rep="")


def format_json(reports: Iterable[EntanglementReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"


def write_output(text: str, output_path: Optional[str], stream: Optional[TextIO] = None) -> None:
    if output_path in (None, "", "-"):
        (stream or sys.stdout).write(text)
        return
    with open(output_path, "w", encoding="utf-8", newline="") as f:
        f.write(text)


def spectrum_table(J: float, s2: float = 1.0, kB: float = 1.0, s1: float = 0.5) -> pd.DataFrame:
    """
    Autovalores distintos do hamiltoniano com suas degenerescências.

    Returns:
        DataFrame com colunas autovalor, degenerescencia e, no caso 2⊗3,
        rotulos (λ1...λ6 do espectro analítico).
    """
    sys_ = SpinSystem(s1=s1, s2=s2, J=J, kB=kB)
    spectrum = hermitian_eigendecompose(build_hamiltonian(sys_))
    linhas = [{"autovalor": round(value, 12) + 0.0, "degenerescencia": count}
              for value, count in spectrum.degeneracies()]

    if sys_.is_qubit_qutrit:
        analytic = analytic_spectrum_2x3(sys_)
        for linha in linhas:
            tol = 1e-9 * max(1.0, abs(linha["autovalor"]))
            rotulos = [label for label, lam in zip(analytic.labels, analytic.eigenvalues)
                       if abs(lam - linha["autovalor"]) <= tol]
            linha["rotulos"] = ",".join(sorted(rotulos))
    return pd.DataFrame(linhas)


def print_spectrum(J: float, s2: float = 1.0, kB: float = 1.0, s1: float = 0.5,
                   stream: Optional[TextIO] = None) -> str:
    texto = spectrum_table(J, s2, kB, s1).to_string(index=False) + "\n"
    (stream or sys.stdout).write(texto)
    return texto


def report_point(J: float, T: float, s2: float = 1.0, kB: float = 1.0, s1: float = 0.5,
                 method: str = "auto") -> EntanglementReport:
    sys_ = SpinSystem(s1=s1, s2=s2, J=J, kB=kB)
    return entanglement_report(sys_, T, critical_temperature(sys_, method=method))


def format_report(report: EntanglementReport, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2) + "\n"
    linhas = []
    for chave, valor in report.to_dict().items():
        linhas.append(f"{chave:<20} {'-' if valor is None else format(valor, '.9g')}")
    return "\n".join(linhas) + "\n"


def _spin_arg(texto: str) -> float:
    try:
        return parse_spin(texto)
    except DomainError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def _comum(parser: argparse.ArgumentParser, padroes: dict) -> None:
    parser.add_argument("--J", type=float, default=-1.0, help="constante de troca (padrão -1)")
    parser.add_argument("--s1", type=_spin_arg, default=0.5, help="spin do primeiro sítio (padrão 1/2)")
    parser.add_argument("--s2", type=_spin_arg, default=1.0, help="spin do segundo sítio (padrão 1)")
    parser.add_argument("--kB", type=float, default=padroes["kB"], help="constante de Boltzmann")


def build_parser(padroes: dict) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emaranhamento",
        description="Emaranhamento térmico de uma célula de Heisenberg spin-1/2 ⊗ spin-S.")
    sub = parser.add_subparsers(dest="comando", required=True)

    sweep = sub.add_parser("sweep", help="varredura em temperatura")
    _comum(sweep, padroes)
    sweep.add_argument("--t-min", type=float, default=0.0)
    sweep.add_argument("--t-max", type=float, default=2.0)
    sweep.add_argument("--n", type=int, default=201)
    sweep.add_argument("--scale", choices=["linear", "log"], default="linear")
    sweep.add_argument("--format", choices=["csv", "json"], default=padroes["formato"])
    sweep.add_argument("--out", default=None, help="arquivo de saída (padrão: saída padrão)")
    sweep.add_argument("--workers", type=int, default=padroes["workers"])
    sweep.add_argument("--method", choices=["auto", "closed_form", "bisection"], default="auto")
    sweep.add_argument("--verbose", action="store_true", help="log da varredura em stderr")
    sweep.set_defaults(handler=_cmd_sweep)

    spectrum = sub.add_parser("spectrum", help="autovalores e degenerescências")
    _comum(spectrum, padroes)
    spectrum.set_defaults(handler=_cmd_spectrum)

    point = sub.add_parser("point", help="avaliação de um único ponto")
    _comum(point, padroes)
    point.add_argument("--T", type=float, required=True)
    point.add_argument("--format", choices=["text", "json"], default="text")
    point.add_argument("--method", choices=["auto", "closed_form", "bisection"], default="auto")
    point.set_defaults(handler=_cmd_point)

    critical = sub.add_parser("critical-temp", help="temperatura crítica de emaranhamento")
    _comum(critical, padroes)
    critical.add_argument("--method", choices=["auto", "closed_form", "bisection"], default="auto")
    critical.set_defaults(handler=_cmd_critical)

    return parser


def _sistema(args) -> SpinSystem:
    """SpinSystem a partir das flags; parâmetro físico inválido é erro de uso."""
    try:
        return SpinSystem(s1=args.s1, s2=args.s2, J=args.J, kB=args.kB)
    except DomainError as e:
        raise ConfiguracaoInvalida(str(e)) from e


def _cmd_sweep(args, padroes: dict) -> int:
    cfg = SweepConfig(
        J=args.J, s1=args.s1, s2=args.s2, kB=args.kB,
        t_min=args.t_min, t_max=args.t_max, n_points=args.n, scale=args.scale,
        output_format=args.format, output_path=args.out,
        workers=args.workers, method=args.method,
    )
    log: List[str] = []
    try:
        reports = run_sweep(cfg, log)
    finally:
        if args.verbose:
            for mensagem in log:
                print(mensagem, file=sys.stderr)
    texto = format_csv(reports, padroes["digitos"]) if cfg.output_format == "csv" else format_json(reports)
    write_output(texto, cfg.output_path)
    return 0


def _cmd_spectrum(args, padroes: dict) -> int:
    sys_ = _sistema(args)
    print_spectrum(sys_.J, sys_.s2, sys_.kB, sys_.s1)
    return 0


def _cmd_point(args, padroes: dict) -> int:
    sys_ = _sistema(args)
    report = report_point(sys_.J, args.T, sys_.s2, sys_.kB, sys_.s1, args.method)
    sys.stdout.write(format_report(report, args.format))
    return 0


def _cmd_critical(args, padroes: dict) -> int:
    sys_ = _sistema(args)
    T_E = critical_temperature(sys_, method=args.method)
    print(f"T_E = {'-' if T_E is None else format(T_E, '.9g')}")
    if args.J != 0:
        T_qubits = xxx_qubit_critical_temperature(args.J, args.kB)
        print(f"T_E(1/2 ⊗ 1/2) = {T_qubits:.9g}")
        if T_E is not None:
            print(f"T_E(1/2 ⊗ 1/2) < T_E: {'sim' if T_qubits < T_E else 'não'}")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    try:
        padroes = carregar_configuracao()
    except ConfiguracaoInvalida as e:
        print(f"❌ Configuração inválida: {e}", file=sys.stderr)
        return 2

    parser = build_parser(padroes)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code is None else int(e.code)

    try:
        return args.handler(args, padroes)
    except ConfiguracaoInvalida as e:
        print(f"❌ Uso inválido: {e}", file=sys.stderr)
        return 2
    except (ErroEmaranhamento, np.linalg.LinAlgError) as e:
        print(f"❌ Erro de cálculo: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"❌ Erro de E/S: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

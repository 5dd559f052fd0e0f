import math
import asyncio
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Optional

import numpy as np

from erros import ConfiguracaoInvalida
from entanglement import EntanglementReport, critical_temperature, entanglement_report
from linalg_core import hermitian_eigendecompose
from model import SpinSystem, build_hamiltonian


@dataclass(frozen=True)
class SweepConfig:
    """
    Parâmetros de uma varredura em temperatura.

    output_path None (ou "-") significa saída padrão.
    """
    J: float
    t_min: float
    t_max: float
    n_points: int
    s2: float = 1.0
    s1: float = 0.5
    kB: float = 1.0
    scale: str = "linear"
    output_format: str = "csv"
    output_path: Optional[str] = None
    workers: int = 4
    method: str = "auto"

    def __post_init__(self):
        if not math.isfinite(self.J):
            raise ConfiguracaoInvalida(f"J deve ser finito, recebido {self.J}")
        if not (math.isfinite(self.kB) and self.kB > 0):
            raise ConfiguracaoInvalida(f"kB deve ser positivo e finito, recebido {self.kB}")
        if not (math.isfinite(self.t_min) and math.isfinite(self.t_max)):
            raise ConfiguracaoInvalida("t_min e t_max devem ser finitos")
        if not 0 <= self.t_min < self.t_max:
            raise ConfiguracaoInvalida(
                f"É preciso 0 <= t_min < t_max (recebido {self.t_min}, {self.t_max})")
        if self.n_points < 2:
            raise ConfiguracaoInvalida(f"n_points deve ser >= 2, recebido {self.n_points}")
        if self.scale not in ("linear", "log"):
            raise ConfiguracaoInvalida(f"Escala desconhecida: {self.scale!r}")
        if self.scale == "log" and self.t_min <= 0:
            raise ConfiguracaoInvalida("Escala log exige t_min > 0")
        if self.output_format not in ("csv", "json"):
            raise ConfiguracaoInvalida(f"Formato desconhecido: {self.output_format!r}")
        if self.workers < 1:
            raise ConfiguracaoInvalida(f"workers deve ser >= 1, recebido {self.workers}")
        if self.method not in ("auto", "closed_form", "bisection"):
            raise ConfiguracaoInvalida(f"Método desconhecido: {self.method!r}")

    @property
    def to_stdout(self) -> bool:
        return self.output_path in (None, "", "-")


def temperature_grid(cfg: SweepConfig) -> np.ndarray:
    """Grade crescente de n_points temperaturas, linear ou logarítmica, com extremos exatos."""
    if cfg.scale == "log":
        grid = np.geomspace(cfg.t_min, cfg.t_max, cfg.n_points)
    else:
        grid = np.linspace(cfg.t_min, cfg.t_max, cfg.n_points)
    grid[0], grid[-1] = cfg.t_min, cfg.t_max
    return grid


class SweepOrchestrator:
    """
    Orquestrador da varredura: monta a grade de temperaturas, calcula T_E
    uma única vez e avalia os pontos em paralelo, mantendo a ordem da grade.
    """

    def __init__(self, cfg: SweepConfig):
        self.cfg = cfg
        self.system = SpinSystem(s1=cfg.s1, s2=cfg.s2, J=cfg.J, kB=cfg.kB)
        self.grid: Optional[np.ndarray] = None
        self.T_E: Optional[float] = None
        self.reports: List[EntanglementReport] = []
        self.log: List[str] = []
        self.falha: Optional[BaseException] = None

    async def executar(self) -> Dict[str, Any]:
        """
        Sequência da varredura:
        1. Grade de temperaturas
        2. Temperatura crítica
        3. Avaliação dos pontos
        """
        relatorio = {
            "status": "running",
            "steps": [],
            "errors": [],
            "log": self.log,
            "reports": [],
        }

        for passo in (self._montar_grade, self._temperatura_critica, self._avaliar_pontos):
            resultado = await passo()
            relatorio["steps"].append(resultado)
            if resultado["status"] == "error":
                relatorio["status"] = "error"
                relatorio["errors"].append(resultado["error"])
                return relatorio

        relatorio["reports"] = self.reports
        relatorio["status"] = "completed"
        return relatorio

    def _falhou(self, step: str, rotulo: str, e: BaseException) -> Dict[str, Any]:
        self.falha = e
        self.log.append(f"❌ **{rotulo}**: {e}")
        return {"step": step, "status": "error", "error": str(e)}

    async def _montar_grade(self) -> Dict[str, Any]:
        try:
            self.grid = temperature_grid(self.cfg)
        except Exception as e:
            return self._falhou("temperature_grid", "Grade", e)

        self.log.append(
            f"✅ **Grade**: {len(self.grid)} temperaturas ({self.cfg.scale}) "
            f"entre {self.cfg.t_min:g} e {self.cfg.t_max:g}.")
        return {
            "step": "temperature_grid",
            "status": "completed",
            "details": {"n_points": len(self.grid), "scale": self.cfg.scale},
        }

    async def _temperatura_critica(self) -> Dict[str, Any]:
        try:
            self.T_E = critical_temperature(self.system, method=self.cfg.method)
        except Exception as e:
            return self._falhou("critical_temperature", "Temperatura crítica", e)

        if self.T_E is None:
            self.log.append("⚠️ **Temperatura crítica**: nenhum emaranhamento em temperatura alguma.")
        else:
            self.log.append(f"✅ **Temperatura crítica**: T_E = {self.T_E:.9g}.")
        return {
            "step": "critical_temperature",
            "status": "completed",
            "details": {"T_E": self.T_E, "method": self.cfg.method},
        }

    async def _avaliar_pontos(self) -> Dict[str, Any]:
        try:
            spectrum = hermitian_eigendecompose(build_hamiltonian(self.system))
            loop = asyncio.get_running_loop()
            with ThreadPoolExecutor(max_workers=self.cfg.workers) as pool:
                tarefas = [
                    loop.run_in_executor(pool, entanglement_report, self.system, float(T), self.T_E, spectrum)
                    for T in self.grid
                ]
                # gather devolve na ordem das tarefas, não na de conclusão
                self.reports = list(await asyncio.gather(*tarefas))
        except Exception as e:
            return self._falhou("evaluate_points", "Avaliação", e)

        emaranhados = sum(1 for r in self.reports if r.entanglement_hs > 0)
        self.log.append(
            f"✅ **Avaliação**: {len(self.reports)} pontos, {emaranhados} emaranhados "
            f"({self.cfg.workers} workers).")
        return {
            "step": "evaluate_points",
            "status": "completed",
            "details": {"n_reports": len(self.reports), "entangled": emaranhados},
        }

"""
Transposta parcial, critério PPT, temperatura crítica de emaranhamento,
medida de emaranhamento pela distância de Hilbert-Schmidt e negatividade.
"""

import math
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import bisect

from erros import DimensionError, DomainError, NotHermitianError, UnsupportedCaseError
from linalg_core import (ComplexMatrix, SpectralDecomposition, as_complex_matrix,
                         hermitian_eigendecompose, hs_norm_distance)
from model import (SpinSystem, build_hamiltonian, closed_form_entries,
                   gibbs_from_spectrum)
from spin_algebra import twice_spin

PPT_TOL = 1e-14
PT_HERMITIAN_TOL = 1e-10
SCAN_POINTS = 200
SCAN_BRACKET = (1e-6, 50.0)
BISECTION_XTOL = 1e-11

# Marca "T_E ainda não calculada"; None já significa "sem emaranhamento"
_NAO_CALCULADA = object()


@dataclass(frozen=True)
class EntanglementReport:
    T: float
    ppt_min_eigenvalue: float
    negativity: float
    entanglement_hs: float
    T_E: Optional[float]

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class BoundaryScan:
    """Resultado detalhado da busca de força bruta pelo estado separável mais próximo."""
    distance: float
    thermal_distance: float
    thermal_minimizer_T: Optional[float]
    matrix_distance: float
    matrix_minimizer: Optional[tuple[float, float, float, float]]


def partial_transpose(rho, dimA: int, dimB: int, subsystem: str = "A") -> ComplexMatrix:
    """
    Transposta parcial de uma matriz bipartida.

    Args:
        rho: matriz (dimA·dimB)×(dimA·dimB), hermitiana dentro de 1e-10.
        dimA: dimensão do primeiro subsistema (índice lento).
        dimB: dimensão do segundo subsistema (índice rápido).
        subsystem: "A" ou "B", o fator que é transposto.

    Returns:
        A matriz com ((i,k),(j,l)) ↦ ((j,k),(i,l)) quando subsystem = "A".
    """
    M = as_complex_matrix(rho)
    if dimA < 1 or dimB < 1 or M.shape[0] != dimA * dimB:
        raise DimensionError(f"Matriz {M.shape} não fatora como {dimA}⊗{dimB}")
    deviation = float(np.max(np.abs(M - M.conj().T)))
    if deviation >= PT_HERMITIAN_TOL:
        raise NotHermitianError(f"Desvio de hermiticidade {deviation:.3e} na transposta parcial")
    if subsystem not in ("A", "B"):
        raise DomainError(f"Subsistema deve ser 'A' ou 'B', recebido {subsystem!r}")

    axes = (2, 1, 0, 3) if subsystem == "A" else (0, 3, 2, 1)
    tensor = M.reshape(dimA, dimB, dimA, dimB).transpose(axes)
    return tensor.reshape(dimA * dimB, dimA * dimB).copy()


def ppt_eigenvalues(rho, dimA: int, dimB: int) -> np.ndarray:
    """Autovalores (crescentes) da transposta parcial."""
    return hermitian_eigendecompose(partial_transpose(rho, dimA, dimB)).eigenvalues


def _negativity_from_eigenvalues(eigenvalues: Sequence[float]) -> float:
    return float(sum(-lam for lam in eigenvalues if lam < -PPT_TOL))


def negativity(rho, dimA: int, dimB: int) -> float:
    """Soma dos módulos dos autovalores negativos da transposta parcial (sem fator 2)."""
    return _negativity_from_eigenvalues(ppt_eigenvalues(rho, dimA, dimB))


def ppt_spectrum_closed_form(state) -> np.ndarray:
    """
    Autovalores da transposta parcial no caso 2⊗3, na ordem λ1...λ6:
    ½(v+x∓√((v-x)²+4w²)) duas vezes cada, e y duas vezes.
    """
    if state.closed_form is None:
        raise UnsupportedCaseError("Estado sem forma fechada (só existe para 2⊗3)")
    v, x, y, w = state.closed_form.normalized()
    root = math.sqrt((v - x) ** 2 + 4 * w ** 2)
    low = 0.5 * (v + x - root)
    high = 0.5 * (v + x + root)
    return np.array([low, low, high, high, y, y])


def separability_margin(entries: tuple[float, float, float, float]) -> float:
    """v·x - w² das entradas normalizadas; negativo se e só se o estado é emaranhado."""
    v, x, _, w = entries
    return v * x - w * w


def xxx_qubit_critical_temperature(J: float, kB: float = 1.0) -> float:
    """T_E de dois qubits XXX: |J| / (kB ln 3)."""
    if J == 0:
        raise DomainError("J = 0 não tem temperatura crítica")
    if kB <= 0:
        raise DomainError(f"kB deve ser positivo, recebido {kB}")
    return abs(J) / (kB * math.log(3.0))


def critical_temperature_half_spin(S: float, J: float, kB: float = 1.0) -> Optional[float]:
    """
    T_E de spin-1/2 ⊗ spin-S: (2S+1)|J| / (2 kB ln(2S+2)).
    S = 1 reproduz 3|J|/(2 kB ln 4); S = 1/2 reproduz |J|/(kB ln 3).
    """
    S = twice_spin(S) / 2.0
    if J >= 0:
        return None
    return (2 * S + 1) * abs(J) / (2 * kB * math.log(2 * S + 2))


def _min_ppt_eigenvalue(sys: SpinSystem, spectrum: SpectralDecomposition, T: float) -> float:
    dimA, dimB = sys.dims
    rho = gibbs_from_spectrum(sys, spectrum, T).rho
    return float(ppt_eigenvalues(rho, dimA, dimB)[0])


def _bisect_critical_temperature(sys: SpinSystem, spectrum: SpectralDecomposition) -> Optional[float]:
    scale = abs(sys.J) / sys.kB
    f = lambda T: _min_ppt_eigenvalue(sys, spectrum, T)

    grid = np.linspace(SCAN_BRACKET[0] * scale, SCAN_BRACKET[1] * scale, SCAN_POINTS)
    previous = float(grid[0])
    if f(previous) >= -PPT_TOL:
        return None
    for T in grid[1:]:
        T = float(T)
        value = f(T)
        if value >= 0:
            if value == 0:
                return T
            return float(bisect(f, previous, T, xtol=BISECTION_XTOL * scale, maxiter=200))
        previous = T
    return None


def critical_temperature(sys: SpinSystem, method: str = "auto") -> Optional[float]:
    """
    Temperatura acima da qual o estado térmico tem transposta parcial positiva.

    Args:
        sys: o sistema de spins.
        method: "closed_form" (3|J|/(2 kB ln 4), só 2⊗3), "bisection"
            (raiz do menor autovalor PPT em [1e-6, 50]·|J|/kB) ou "auto".

    Returns:
        T_E, ou None quando não há emaranhamento em nenhuma temperatura.
    """
    if method not in ("auto", "closed_form", "bisection"):
        raise ValueError(f"Método desconhecido: {method}")
    if sys.J == 0:
        return None
    if method == "closed_form" or (method == "auto" and sys.is_qubit_qutrit):
        if not sys.is_qubit_qutrit:
            raise UnsupportedCaseError("Forma fechada de T_E só existe para 2⊗3")
        if sys.J > 0:
            return None
        return 3 * abs(sys.J) / (2 * sys.kB * math.log(4.0))

    spectrum = hermitian_eigendecompose(build_hamiltonian(sys))
    return _bisect_critical_temperature(sys, spectrum)


def entry_distance(a: Sequence[float], b: Sequence[float]) -> float:
    """√(2Δv² + 2Δx² + 2Δy² + 4Δw²) entre entradas normalizadas do padrão 2⊗3."""
    dv, dx, dy, dw = (float(p) - float(q) for p, q in zip(a, b))
    return math.sqrt(2 * dv * dv + 2 * dx * dx + 2 * dy * dy + 4 * dw * dw)


def _resolve_critical(sys: SpinSystem, T_E) -> Optional[float]:
    return critical_temperature(sys) if T_E is _NAO_CALCULADA else T_E


def _hs_from_spectrum(sys: SpinSystem, spectrum: SpectralDecomposition, T: float,
                      T_E: Optional[float]) -> float:
    if T_E is None or T >= T_E:
        return 0.0
    if sys.is_qubit_qutrit:
        current = closed_form_entries(sys, T).normalized()
        boundary = closed_form_entries(sys, T_E).normalized()
        return entry_distance(current, boundary)
    return hs_norm_distance(gibbs_from_spectrum(sys, spectrum, T).rho,
                            gibbs_from_spectrum(sys, spectrum, T_E).rho)


def hs_entanglement(sys: SpinSystem, T: float, T_E=_NAO_CALCULADA) -> float:
    """
    E(ρ) = D(ρ(T), ρ(T_E)): distância de Hilbert-Schmidt até o estado térmico
    separável na fronteira. Zero para T >= T_E ou J >= 0.

    No caso 2⊗3 usa as entradas fechadas; para outros spins, estados de
    Gibbs numéricos e T_E por bissecção.
    """
    if T < 0:
        raise DomainError(f"Temperatura negativa: {T}")
    T_E = _resolve_critical(sys, T_E)
    if T_E is None or T >= T_E:
        return 0.0
    spectrum = None if sys.is_qubit_qutrit else hermitian_eigendecompose(build_hamiltonian(sys))
    return _hs_from_spectrum(sys, spectrum, T, T_E)


def entanglement_report(sys: SpinSystem, T: float, T_E=_NAO_CALCULADA,
                        spectrum: Optional[SpectralDecomposition] = None) -> EntanglementReport:
    """Avalia um ponto: menor autovalor PPT, negatividade, E(ρ) e T_E."""
    if T < 0:
        raise DomainError(f"Temperatura negativa: {T}")
    T_E = _resolve_critical(sys, T_E)
    if spectrum is None:
        spectrum = hermitian_eigendecompose(build_hamiltonian(sys))

    dimA, dimB = sys.dims
    state = gibbs_from_spectrum(sys, spectrum, T)
    eigenvalues = ppt_eigenvalues(state.rho, dimA, dimB)
    return EntanglementReport(
        T=float(T),
        ppt_min_eigenvalue=float(eigenvalues[0]),
        negativity=_negativity_from_eigenvalues(eigenvalues),
        entanglement_hs=_hs_from_spectrum(sys, spectrum, T, T_E),
        T_E=T_E,
    )


def _thermal_family_entries(sys: SpinSystem, temperatures: np.ndarray) -> np.ndarray:
    beta = 1.0 / (sys.kB * temperatures)
    half = np.exp(beta * sys.J / 2)
    full = np.exp(-beta * sys.J)
    Z = 4 * half + 2 * full
    v = half
    x = (full + 2 * half) / 3
    y = (2 * full + half) / 3
    w = math.sqrt(2.0) / 3 * (half - full)
    return np.stack([v, x, y, w]) / Z


def _scan_matrix_family(current: np.ndarray, grid_n: int, chunk_rows: int):
    cv, cx, cy, cw = current
    axis = np.linspace(0.0, 0.5, grid_n)
    x = axis[None, :]
    best = (math.inf, None)
    for start in range(0, grid_n, chunk_rows):
        v = axis[start:start + chunk_rows, None]
        y = 0.5 - v - x
        # ρ_s ≥ 0 com w² = v·x exige y ≥ v
        valid = y >= v - 1e-15
        base = 2 * (v - cv) ** 2 + 2 * (x - cx) ** 2 + 2 * (y - cy) ** 2
        magnitude = np.sqrt(v * x)
        for sign in (-1.0, 1.0):
            d2 = np.where(valid, base + 4 * (sign * magnitude - cw) ** 2, np.inf)
            i, j = np.unravel_index(np.argmin(d2), d2.shape)
            if d2[i, j] < best[0]:
                entries = (float(v[i, 0]), float(x[0, j]), float(y[i, j]),
                           float(sign * magnitude[i, j]))
                best = (float(d2[i, j]), entries)
    return math.sqrt(best[0]), best[1]


def boundary_distance_scan(sys: SpinSystem, T: float, grid_n: int,
                           families: Sequence[str] = ("thermal", "matrix"),
                           chunk_rows: int = 256) -> BoundaryScan:
    """
    Busca de força bruta pelo estado separável mais próximo de ρ(T), em duas
    famílias: estados térmicos com T_s em [T_E, 100·T_E] e matrizes do padrão
    2⊗3 sobre a fronteira v·x = w², com traço um e positivas.
    """
    if not sys.is_qubit_qutrit:
        raise UnsupportedCaseError("A busca na fronteira só existe para 2⊗3")
    if grid_n < 100:
        raise DomainError(f"grid_n deve ser >= 100, recebido {grid_n}")
    unknown = set(families) - {"thermal", "matrix"}
    if unknown or not families:
        raise DomainError(f"Famílias inválidas: {sorted(unknown) or 'nenhuma'}")
    T_E = critical_temperature(sys)
    if T_E is None or T >= T_E:
        raise DomainError(f"A busca exige T < T_E (T={T}, T_E={T_E})")
    if T < 0:
        raise DomainError(f"Temperatura negativa: {T}")

    current = np.array(closed_form_entries(sys, T).normalized())

    thermal_distance, thermal_T = math.inf, None
    if "thermal" in families:
        temperatures = np.linspace(T_E, 100 * T_E, grid_n)
        entries = _thermal_family_entries(sys, temperatures)
        diff = entries - current[:, None]
        weights = np.array([2.0, 2.0, 2.0, 4.0])[:, None]
        distances = np.sqrt(np.sum(weights * diff ** 2, axis=0))
        k = int(np.argmin(distances))
        thermal_distance, thermal_T = float(distances[k]), float(temperatures[k])

    matrix_distance, matrix_entries = math.inf, None
    if "matrix" in families:
        matrix_distance, matrix_entries = _scan_matrix_family(current, grid_n, chunk_rows)

    return BoundaryScan(
        distance=min(thermal_distance, matrix_distance),
        thermal_distance=thermal_distance,
        thermal_minimizer_T=thermal_T,
        matrix_distance=matrix_distance,
        matrix_minimizer=matrix_entries,
    )


def boundary_distance_oracle(sys: SpinSystem, T: float, grid_n: int,
                             families: Sequence[str] = ("thermal", "matrix")) -> float:
    """Menor distância encontrada por boundary_distance_scan."""
    return boundary_distance_scan(sys, T, grid_n, families).distance

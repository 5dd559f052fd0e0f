"""
Hamiltoniano de Heisenberg de uma célula spin-s1 ⊗ spin-s2, espectro,
função de partição e estado de Gibbs.

Base do produto: índice do primeiro spin lento, do segundo rápido, ambos com
projeção Sz decrescente. Para 2⊗3: (α1, α0, α-1, β1, β0, β-1).
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import logsumexp

from erros import DomainError, UnsupportedCaseError
from linalg_core import (ComplexMatrix, SpectralDecomposition,
                         hermitian_eigendecompose, kron)
from spin_algebra import twice_spin, make_spin_operators

# Acima disso e^{β|J|} se aproxima do overflow em double; usa-se o estado fundamental
BETA_J_MAX = 700.0
GROUND_TOL = 1e-8
SQRT2 = math.sqrt(2.0)
LOG_FLOAT_MAX = math.log(np.finfo(np.float64).max)


@dataclass(frozen=True)
class SpinSystem:
    s1: float = 0.5
    s2: float = 1.0
    J: float = -1.0
    kB: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "s1", twice_spin(self.s1) / 2.0)
        object.__setattr__(self, "s2", twice_spin(self.s2) / 2.0)
        if not math.isfinite(self.J):
            raise DomainError(f"J deve ser finito, recebido {self.J}")
        if not (self.kB > 0 and math.isfinite(self.kB)):
            raise DomainError(f"kB deve ser positivo, recebido {self.kB}")

    @property
    def dims(self) -> tuple[int, int]:
        return int(round(2 * self.s1)) + 1, int(round(2 * self.s2)) + 1

    @property
    def is_qubit_qutrit(self) -> bool:
        return self.s1 == 0.5 and self.s2 == 1.0

    def beta(self, T: float) -> float:
        return math.inf if T == 0 else 1.0 / (self.kB * T)


@dataclass(frozen=True)
class ClosedFormEntries:
    """
    Entradas v, x, y, w de ρ(T) sem normalização, com Z = 2v + 2x + 2y.
    No limite T = 0 guarda os valores já normalizados e Z = 1.
    """
    v: float
    x: float
    y: float
    w: float
    Z: float

    def normalized(self) -> tuple[float, float, float, float]:
        return self.v / self.Z, self.x / self.Z, self.y / self.Z, self.w / self.Z


@dataclass(frozen=True)
class ThermalState:
    """
    Estado térmico ρ = e^{-βH}/Z. Em T = 0, rho é o projetor do espaço
    fundamental dividido pela degenerescência, e Z guarda essa degenerescência.
    Z vale inf quando não cabe em double; log_Z é sempre finito.
    """
    system: SpinSystem
    T: float
    beta: float
    Z: float
    log_Z: float
    ground_energy: float
    rho: ComplexMatrix
    closed_form: Optional[ClosedFormEntries] = None


def _require_qubit_qutrit(sys: SpinSystem) -> None:
    if not sys.is_qubit_qutrit:
        raise UnsupportedCaseError(
            f"Forma fechada só existe para s1=1/2, s2=1 (recebido s1={sys.s1}, s2={sys.s2})")


def build_hamiltonian(sys: SpinSystem) -> ComplexMatrix:
    """H = -J (sx⊗Sx + sy⊗Sy + sz⊗Sz) para uma única ligação."""
    a = make_spin_operators(sys.s1)
    b = make_spin_operators(sys.s2)
    coupling = sum(kron(sa, sb) for sa, sb in zip(a.vector, b.vector))
    H = -sys.J * coupling
    return 0.5 * (H + H.conj().T)


def analytic_spectrum_2x3(sys: SpinSystem) -> SpectralDecomposition:
    """
    Espectro fechado do caso 2⊗3: -J/2 (×4) e J (×2), com os autovetores
    |φ1>...|φ6>, ordenados por energia crescente.
    """
    _require_qubit_qutrit(sys)
    J = sys.J

    def ket(**amplitudes) -> np.ndarray:
        index = {"a1": 0, "a0": 1, "am1": 2, "b1": 3, "b0": 4, "bm1": 5}
        vec = np.zeros(6, dtype=np.complex128)
        for name, amp in amplitudes.items():
            vec[index[name]] = amp
        return vec

    phis = [
        ("λ1", -J / 2, ket(bm1=1.0)),
        ("λ2", -J / 2, ket(a1=1.0)),
        ("λ3", J, ket(am1=-SQRT2, b0=1.0) / math.sqrt(3.0)),
        ("λ4", J, math.sqrt(2.0 / 3.0) * ket(a0=-SQRT2 / 2, b1=1.0)),
        ("λ5", -J / 2, math.sqrt(2.0 / 3.0) * ket(am1=SQRT2 / 2, b0=1.0)),
        ("λ6", -J / 2, ket(a0=SQRT2, b1=1.0) / math.sqrt(3.0)),
    ]
    phis.sort(key=lambda item: item[1])
    return SpectralDecomposition(
        eigenvalues=np.array([lam for _, lam, _ in phis]),
        eigenvectors=np.column_stack([vec for _, _, vec in phis]),
        labels=tuple(label for label, _, _ in phis),
    )


def closed_form_entries(sys: SpinSystem, T: float) -> ClosedFormEntries:
    """v, x, y, w e Z do caso 2⊗3; em T = 0 ou β|J| > 700, o limite normalizado."""
    _require_qubit_qutrit(sys)
    if T < 0:
        raise DomainError(f"Temperatura negativa: {T}")
    beta = sys.beta(T)
    J = sys.J
    if T == 0 or beta * abs(J) > BETA_J_MAX:
        if J < 0:
            return ClosedFormEntries(0.0, 1 / 6, 1 / 3, -SQRT2 / 6, 1.0)
        if J > 0:
            return ClosedFormEntries(1 / 4, 1 / 6, 1 / 12, SQRT2 / 12, 1.0)
        return ClosedFormEntries(1 / 6, 1 / 6, 1 / 6, 0.0, 1.0)

    half = math.exp(beta * J / 2)
    full = math.exp(-beta * J)
    v = half
    x = (full + 2 * half) / 3
    y = (2 * full + half) / 3
    w = SQRT2 / 3 * (-full + half)
    return ClosedFormEntries(v, x, y, w, 4 * half + 2 * full)


def closed_form_density_matrix(entries: ClosedFormEntries) -> ComplexMatrix:
    """Monta a matriz 6×6 normalizada com o padrão de ρ(T)."""
    v, x, y, w = entries.normalized()
    rho = np.diag([v, x, y, y, x, v]).astype(np.complex128)
    for i, j in ((1, 3), (2, 4)):
        rho[i, j] = w
        rho[j, i] = w
    return rho


def _log_partition_from_spectrum(spectrum: SpectralDecomposition, beta: float) -> float:
    return float(logsumexp(-beta * spectrum.eigenvalues))


def log_partition_function(sys: SpinSystem, T: float) -> float:
    """ln Z sem overflow, via logsumexp do espectro numérico."""
    if T <= 0:
        raise DomainError(f"Função de partição exige T > 0, recebido {T}")
    spectrum = hermitian_eigendecompose(build_hamiltonian(sys))
    return _log_partition_from_spectrum(spectrum, sys.beta(T))


def partition_function(sys: SpinSystem, T: float, method: str = "auto") -> float:
    """
    Z = Tr e^{-βH}.

    Args:
        sys: o sistema de spins.
        T: temperatura (> 0).
        method: "closed_form" (4e^{βJ/2} + 2e^{-βJ}, só 2⊗3), "spectral"
            (traço da exponencial hermitiana) ou "auto".

    Raises:
        DomainError: T <= 0, ou Z não cabe em double (β|E₀| acima de ~709);
            nesse caso use log_partition_function.
    """
    if T <= 0:
        raise DomainError(f"Função de partição exige T > 0, recebido {T}")
    if method not in ("auto", "closed_form", "spectral"):
        raise ValueError(f"Método desconhecido: {method}")
    beta = sys.beta(T)
    if method == "closed_form" or (method == "auto" and sys.is_qubit_qutrit):
        _require_qubit_qutrit(sys)
        log_Z = float(np.logaddexp(math.log(4.0) + beta * sys.J / 2, math.log(2.0) - beta * sys.J))
        return _exp_finito(log_Z, T)

    spectrum = hermitian_eigendecompose(build_hamiltonian(sys))
    E0 = float(spectrum.eigenvalues[0])
    shifted = spectrum.apply(lambda lam: math.exp(-beta * (lam - E0)))
    return _exp_finito(-beta * E0 + math.log(float(np.real(np.trace(shifted)))), T)


def _exp_finito(log_Z: float, T: float) -> float:
    try:
        if log_Z > LOG_FLOAT_MAX:
            raise OverflowError
        return math.exp(log_Z)
    except OverflowError:
        raise DomainError(
            f"Z estoura em double para T={T} (ln Z = {log_Z:.6g}); use log_partition_function") from None


def _ground_state(sys: SpinSystem, spectrum: SpectralDecomposition, T: float) -> ThermalState:
    E0 = float(spectrum.eigenvalues[0])
    width = max(1.0, float(np.max(np.abs(spectrum.eigenvalues))))
    in_ground = spectrum.eigenvalues - E0 <= GROUND_TOL * width
    g = int(np.count_nonzero(in_ground))
    rho = spectrum.apply(lambda lam: 1.0 / g if lam - E0 <= GROUND_TOL * width else 0.0)
    closed = closed_form_entries(sys, T) if sys.is_qubit_qutrit else None
    return ThermalState(
        system=sys, T=T, beta=sys.beta(T), Z=float(g), log_Z=math.log(g),
        ground_energy=E0, rho=rho, closed_form=closed,
    )


def gibbs_from_spectrum(sys: SpinSystem, spectrum: SpectralDecomposition, T: float) -> ThermalState:
    """Estado de Gibbs a partir de um espectro já calculado de H."""
    if T < 0:
        raise DomainError(f"Temperatura negativa: {T}")
    beta = sys.beta(T)
    if T == 0 or beta * abs(sys.J) > BETA_J_MAX:
        return _ground_state(sys, spectrum, T)

    E0 = float(spectrum.eigenvalues[0])
    shifted = spectrum.apply(lambda lam: math.exp(-beta * (lam - E0)))
    weight = float(np.real(np.trace(shifted)))
    rho = shifted / weight
    rho = 0.5 * (rho + rho.conj().T)

    log_Z = _log_partition_from_spectrum(spectrum, beta)
    Z = math.exp(log_Z) if log_Z < LOG_FLOAT_MAX else math.inf
    closed = closed_form_entries(sys, T) if sys.is_qubit_qutrit else None
    return ThermalState(
        system=sys, T=T, beta=beta, Z=Z, log_Z=log_Z,
        ground_energy=E0, rho=rho, closed_form=closed,
    )


def gibbs_state(sys: SpinSystem, T: float) -> ThermalState:
    """ρ = e^{-βH}/Z; em T = 0, a mistura uniforme do espaço fundamental."""
    if T < 0:
        raise DomainError(f"Temperatura negativa: {T}")
    spectrum = hermitian_eigendecompose(build_hamiltonian(sys))
    return gibbs_from_spectrum(sys, spectrum, T)

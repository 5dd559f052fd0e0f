"""
Spin operators for an arbitrary spin quantum number s, in the Sz eigenbasis
ordered |s>, |s-1>, ..., |-s> (descending projection).
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from erros import DomainError
from linalg_core import ComplexMatrix

SpinValue = Union[float, int, Fraction]


def twice_spin(s: SpinValue) -> int:
    try:
        twice = 2 * float(s)
    except (TypeError, ValueError) as e:
        raise DomainError(f"Spin inválido s = {s!r}") from e
    rounded = int(round(twice))
    if abs(twice - rounded) > 1e-12 or rounded < 1:
        raise DomainError(f"Spin inválido s = {s!r}: 2s deve ser um inteiro positivo")
    return rounded


def parse_spin(text: str) -> float:
    """Reads '1/2', '3/2', '1' or '0.5' into a half-integer spin."""
    try:
        value = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise DomainError(f"Spin inválido {text!r}") from e
    twice = twice_spin(value)
    return twice / 2.0


@dataclass(frozen=True)
class SpinOperators:
    s: float
    sx: ComplexMatrix
    sy: ComplexMatrix
    sz: ComplexMatrix
    splus: ComplexMatrix
    sminus: ComplexMatrix

    @property
    def dim(self) -> int:
        return self.sz.shape[0]

    @property
    def vector(self):
        return (self.sx, self.sy, self.sz)

    def casimir(self) -> ComplexMatrix:
        return self.sx @ self.sx + self.sy @ self.sy + self.sz @ self.sz


def make_spin_operators(s: SpinValue) -> SpinOperators:
    """
    Builds (Sx, Sy, Sz) from the ladder operators,
    S+|m> = sqrt(s(s+1) - m(m+1)) |m+1>.
    """
    twice = twice_spin(s)
    spin = twice / 2.0
    m = spin - np.arange(twice + 1)

    # In descending order |m+1> sits one row above |m>, so S+ is upper bidiagonal
    ladder = np.sqrt(spin * (spin + 1) - m[1:] * (m[1:] + 1))
    splus = np.diag(ladder, k=1).astype(np.complex128)
    sminus = splus.conj().T.copy()

    sx = 0.5 * (splus + sminus)
    sy = (splus - sminus) / 2j
    sz = np.diag(m).astype(np.complex128)
    return SpinOperators(s=spin, sx=sx, sy=sy, sz=sz, splus=splus, sminus=sminus)

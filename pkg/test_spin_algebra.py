import numpy as np
import pytest

from erros import DomainError
from spin_algebra import make_spin_operators, parse_spin, twice_spin

SPINS = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5]


def _comm(A, B):
    return A @ B - B @ A


@pytest.mark.parametrize("s", SPINS)
def test_commutation_relations(s):
    ops = make_spin_operators(s)
    assert np.max(np.abs(_comm(ops.sx, ops.sy) - 1j * ops.sz)) < 1e-10
    assert np.max(np.abs(_comm(ops.sy, ops.sz) - 1j * ops.sx)) < 1e-10
    assert np.max(np.abs(_comm(ops.sz, ops.sx) - 1j * ops.sy)) < 1e-10


@pytest.mark.parametrize("s", SPINS)
def test_casimir_and_hermiticity(s):
    ops = make_spin_operators(s)
    assert ops.dim == int(2 * s) + 1
    assert np.max(np.abs(ops.casimir() - s * (s + 1) * np.eye(ops.dim))) < 1e-10
    for op in ops.vector:
        assert np.max(np.abs(op - op.conj().T)) < 1e-14
        assert abs(np.trace(op)) < 1e-12
    assert np.max(np.abs(ops.sminus - ops.splus.conj().T)) == 0.0


def test_projection_along_random_axis_has_m_spectrum():
    rng = np.random.default_rng(11)
    for _ in range(120):
        s = SPINS[int(rng.integers(len(SPINS)))]
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        ops = make_spin_operators(s)
        Sn = n[0] * ops.sx + n[1] * ops.sy + n[2] * ops.sz
        expected = np.arange(-s, s + 0.5, 1.0)
        assert np.max(np.abs(np.linalg.eigvalsh(Sn) - expected)) < 1e-10


def test_spin_one_matrices():
    ops = make_spin_operators(1)
    r = 1 / np.sqrt(2)
    assert np.allclose(ops.sx, r * np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]]), atol=1e-15)
    assert np.allclose(ops.sy, r * np.array([[0, -1j, 0], [1j, 0, -1j], [0, 1j, 0]]), atol=1e-15)
    assert np.allclose(ops.sz, np.diag([1, 0, -1]), atol=0)


def test_spin_half_descending_basis():
    ops = make_spin_operators(0.5)
    assert np.allclose(ops.sz, np.diag([0.5, -0.5]))
    assert np.allclose(ops.splus, [[0, 1], [0, 0]])


def test_parse_spin():
    assert parse_spin("1/2") == 0.5
    assert parse_spin("3/2") == 1.5
    assert parse_spin("1") == 1.0
    assert parse_spin("0.5") == 0.5
    for texto in ("1/3", "0", "-1/2", "abc", "1/0"):
        with pytest.raises(DomainError, match="Spin inválido"):
            parse_spin(texto)


def test_twice_spin_rejects_invalid():
    assert twice_spin(1.5) == 3
    for s in (0, 0.3, -1, "x", None):
        with pytest.raises(DomainError, match="Spin inválido"):
            twice_spin(s)

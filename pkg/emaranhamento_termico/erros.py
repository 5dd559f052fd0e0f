"""Exceções usadas pela calculadora de emaranhamento térmico."""


class ErroEmaranhamento(ValueError):
    """Base de todos os erros de domínio da biblioteca."""


class DimensionError(ErroEmaranhamento):
    """Matriz não quadrada, dimensões incompatíveis ou fatoração errada."""


class NotHermitianError(ErroEmaranhamento):
    """Entrada que deveria ser hermitiana e não é."""


class DomainError(ErroEmaranhamento):
    """Parâmetro físico fora do domínio (spin, temperatura, J, kB)."""


class UnsupportedCaseError(ErroEmaranhamento):
    """Operação só existe para o caso 2⊗3 (spin-1/2 com spin-1)."""


class ConfiguracaoInvalida(ErroEmaranhamento):
    """Valor inválido no .env ou na linha de comando."""

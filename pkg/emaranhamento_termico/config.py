import os
from dotenv import load_dotenv

from erros import ConfiguracaoInvalida

# Define o caminho para o arquivo .env na pasta pai
dotenv_path = os.path.join(os.path.dirname(__file__), '..', '.env')

# Carrega as variáveis de ambiente do arquivo especificado
load_dotenv(dotenv_path=dotenv_path)


def _ler_float(nome: str, padrao: float) -> float:
    valor = os.getenv(nome)
    if valor is None or valor.strip() == "":
        return padrao
    try:
        return float(valor)
    except ValueError as e:
        raise ConfiguracaoInvalida(f"{nome}={valor!r} não é um número: {e}") from e


def _ler_int(nome: str, padrao: int) -> int:
    valor = os.getenv(nome)
    if valor is None or valor.strip() == "":
        return padrao
    try:
        return int(valor)
    except ValueError as e:
        raise ConfiguracaoInvalida(f"{nome}={valor!r} não é um inteiro: {e}") from e


def carregar_configuracao() -> dict:
    """
    Lê os padrões da calculadora a partir do ambiente (.env incluído).

    Returns:
        Um dicionário com kB, workers, formato e dígitos significativos.
    """
    kB = _ler_float("EMARANHAMENTO_KB", 1.0)
    workers = _ler_int("EMARANHAMENTO_WORKERS", 4)
    formato = os.getenv("EMARANHAMENTO_FORMATO", "csv").strip().lower()
    digitos = _ler_int("EMARANHAMENTO_DIGITOS", 9)

    if kB <= 0:
        raise ConfiguracaoInvalida(f"EMARANHAMENTO_KB deve ser positivo, recebido {kB}")
    if workers < 1:
        raise ConfiguracaoInvalida(f"EMARANHAMENTO_WORKERS deve ser >= 1, recebido {workers}")
    if formato not in ("csv", "json"):
        raise ConfiguracaoInvalida(f"EMARANHAMENTO_FORMATO deve ser csv ou json, recebido {formato!r}")
    if digitos < 1:
        raise ConfiguracaoInvalida(f"EMARANHAMENTO_DIGITOS deve ser >= 1, recebido {digitos}")

    return {
        "kB": kB,
        "workers": workers,
        "formato": formato,
        "digitos": digitos,
    }

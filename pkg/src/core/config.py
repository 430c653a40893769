"""Configuração do cadeia-hopf (variáveis de ambiente + logging)."""
from __future__ import annotations

import json
import logging
import os
from functools import lru_cache

from pydantic import BaseModel, ValidationError, field_validator

# ============================================
# LEITURA DE PARÂMETROS
# ============================================

_NIVEIS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


@lru_cache(maxsize=1)
def _arquivo_config() -> dict:
    caminho = os.getenv("HOPF_CONFIG")
    if not caminho:
        return {}
    try:
        with open(caminho, encoding="utf-8") as fh:
            dados = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise RuntimeError(f"HOPF_CONFIG ilegível: {caminho} ({e})") from e
    if not isinstance(dados, dict):
        raise RuntimeError("HOPF_CONFIG deve conter um objeto JSON.")
    return dados


def _get_setting(name: str) -> str | None:
    """Ambiente primeiro; o arquivo HOPF_CONFIG serve de fallback."""
    valor = os.getenv(name)
    if valor is not None and valor != "":
        return valor
    valor = _arquivo_config().get(name)
    return None if valor is None else str(valor)


class Configuracao(BaseModel):
    kmax: int | None = None
    semente: int = 0
    nivel_log: str = "WARNING"
    tentativas: int = 20

    @field_validator("kmax")
    @classmethod
    def _kmax_positivo(cls, v: int | None) -> int | None:
        if v is not None and v < 1:
            raise ValueError("kmax deve ser >= 1")
        return v

    @field_validator("tentativas")
    @classmethod
    def _tentativas_positivas(cls, v: int) -> int:
        if v < 1:
            raise ValueError("tentativas deve ser >= 1")
        return v

    @field_validator("nivel_log")
    @classmethod
    def _nivel_valido(cls, v: str) -> str:
        v = v.upper()
        if v not in _NIVEIS:
            raise ValueError(f"nível de log desconhecido: {v}")
        return v


_MAPA_AMBIENTE = {
    "kmax": "HOPF_KMAX",
    "semente": "HOPF_SEED",
    "nivel_log": "HOPF_LOG_LEVEL",
    "tentativas": "HOPF_TRIALS",
}


def carregar_configuracao(**sobrescritas) -> Configuracao:
    """Monta a configuração; argumentos explícitos (flags da CLI) têm prioridade."""
    valores: dict = {}
    for campo, variavel in _MAPA_AMBIENTE.items():
        bruto = _get_setting(variavel)
        if bruto is not None:
            valores[campo] = bruto
    for campo, valor in sobrescritas.items():
        if valor is not None:
            valores[campo] = valor
    try:
        return Configuracao(**valores)
    except ValidationError as e:
        campos = ", ".join(_MAPA_AMBIENTE.get(str(err["loc"][0]), str(err["loc"][0])) for err in e.errors())
        raise RuntimeError(f"Configuração inválida em {campos}: {e.errors()[0]['msg']}") from e


# ============================================
# LOGGING
# ============================================

def configurar_logging(nivel: str = "WARNING") -> None:
    """Um único handler em stderr; stdout fica reservado aos relatórios."""
    raiz = logging.getLogger("src")
    raiz.setLevel(getattr(logging, nivel.upper(), logging.WARNING))
    if not any(getattr(h, "_hopf", False) for h in raiz.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        handler._hopf = True  # type: ignore[attr-defined]
        raiz.addHandler(handler)
    raiz.propagate = False

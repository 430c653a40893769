import json
import random
import sys
from pathlib import Path

import pytest

RAIZ = Path(__file__).resolve().parents[1]
if str(RAIZ) not in sys.path:
    sys.path.insert(0, str(RAIZ))

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def escrever_json(tmp_path):
    """Grava um dicionário como JSON e devolve o caminho."""

    def _escrever(nome: str, dados) -> Path:
        caminho = tmp_path / nome
        caminho.write_text(json.dumps(dados), encoding="utf-8")
        return caminho

    return _escrever


@pytest.fixture(autouse=True)
def _ambiente_limpo(monkeypatch):
    for var in ("HOPF_CONFIG", "HOPF_KMAX", "HOPF_SEED", "HOPF_LOG_LEVEL", "HOPF_TRIALS"):
        monkeypatch.delenv(var, raising=False)
    from src.core.config import _arquivo_config

    _arquivo_config.cache_clear()
    yield
    _arquivo_config.cache_clear()

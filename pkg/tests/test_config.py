import json
import logging

import pytest

from src.core.config import Configuracao, carregar_configuracao, configurar_logging


def test_padroes():
    config = carregar_configuracao()
    assert config == Configuracao()
    assert config.kmax is None
    assert config.nivel_log == "WARNING"


def test_ambiente(monkeypatch):
    monkeypatch.setenv("HOPF_KMAX", "4")
    monkeypatch.setenv("HOPF_SEED", "7")
    monkeypatch.setenv("HOPF_LOG_LEVEL", "debug")
    config = carregar_configuracao()
    assert (config.kmax, config.semente, config.nivel_log) == (4, 7, "DEBUG")


def test_flags_tem_prioridade(monkeypatch):
    monkeypatch.setenv("HOPF_SEED", "7")
    assert carregar_configuracao(semente=3).semente == 3
    assert carregar_configuracao(semente=None).semente == 7


def test_arquivo_de_fallback(monkeypatch, tmp_path):
    caminho = tmp_path / "hopf.json"
    caminho.write_text(json.dumps({"HOPF_TRIALS": 5, "HOPF_SEED": 1}), encoding="utf-8")
    monkeypatch.setenv("HOPF_CONFIG", str(caminho))
    monkeypatch.setenv("HOPF_SEED", "2")
    config = carregar_configuracao()
    assert config.tentativas == 5
    assert config.semente == 2


@pytest.mark.parametrize("variavel, valor", [("HOPF_KMAX", "0"), ("HOPF_TRIALS", "abc"), ("HOPF_LOG_LEVEL", "ALTO")])
def test_valor_invalido(monkeypatch, variavel, valor):
    monkeypatch.setenv(variavel, valor)
    with pytest.raises(RuntimeError, match=variavel):
        carregar_configuracao()


def test_arquivo_ilegivel(monkeypatch, tmp_path):
    caminho = tmp_path / "ruim.json"
    caminho.write_text("{", encoding="utf-8")
    monkeypatch.setenv("HOPF_CONFIG", str(caminho))
    with pytest.raises(RuntimeError):
        carregar_configuracao()


def test_logging_um_handler():
    configurar_logging("INFO")
    configurar_logging("DEBUG")
    raiz = logging.getLogger("src")
    assert raiz.level == logging.DEBUG
    assert sum(getattr(h, "_hopf", False) for h in raiz.handlers) == 1

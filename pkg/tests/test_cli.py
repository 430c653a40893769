import json
from pathlib import Path

import pandas as pd
import pytest

from src.core.config import Configuracao
from src.core.errors import FalhaVerificacao
from src.core.models import RelatorioDoc
from src.ui.cli import criar_parser, exibir_verificacao
from src.ui.router import main

DADOS = Path(__file__).resolve().parents[1] / "dados"
FIXTURES = Path(__file__).parent / "fixtures"


def _rodar(capsys, *argv):
    codigo = main([str(a) for a in argv])
    saida = capsys.readouterr()
    return codigo, saida.out, saida.err


def test_homologia_da_esfera(capsys):
    codigo, out, _ = _rodar(capsys, "homology", DADOS / "s2.json")
    assert codigo == 0
    assert "H_0 = Z, H_1 = 0, H_2 = Z" in out
    assert out.startswith("$ hopf-chain homology")


def test_homologia_builtin(capsys):
    codigo, out, _ = _rodar(capsys, "homology", "--builtin", "RP2")
    assert codigo == 0
    assert "H_1 = Z/2" in out


def test_complexo_vazio(capsys):
    codigo, out, _ = _rodar(capsys, "homology", FIXTURES / "vazio.json")
    assert codigo == 0
    assert "H_* = 0" in out


def test_json_malformado(capsys):
    codigo, out, err = _rodar(capsys, "homology", FIXTURES / "malformado.json")
    assert codigo == 2
    assert out == ""
    assert "linha 5" in err


def test_d_ao_quadrado(capsys):
    codigo, _, err = _rodar(capsys, "homology", FIXTURES / "nao_complexo.json")
    assert codigo == 3
    assert err.startswith("erro:")


@pytest.mark.parametrize(
    "argumentos, esperado",
    [
        (["--kind", "quad", "--n", "4", "--k", "3"], "Q_4[0,2] = Z"),
        (["--kind", "sym", "--n", "4", "--j", "0"], "Q^4[0,0] = Z"),
    ],
)
def test_qgroup(capsys, argumentos, esperado):
    codigo, out, _ = _rodar(capsys, "qgroup", DADOS / "esfera2.json", *argumentos)
    assert codigo == 0
    assert esperado in out


def test_qgroup_zero(capsys):
    codigo, out, _ = _rodar(capsys, "qgroup", FIXTURES / "vazio.json", "--kind", "sym", "--n", "0", "--j", "0")
    assert codigo == 0
    assert "= 0" in out


def test_sq_no_plano_projetivo(capsys):
    codigo, out, _ = _rodar(capsys, "sq", DADOS / "rp2.json", "--i", "1")
    assert codigo == 0
    assert "nonzero: Sq¹x = x²" in out


def test_sq_exige_triangulacao(capsys):
    codigo, _, _ = _rodar(capsys, "sq", DADOS / "moore2.json", "--i", "1")
    assert codigo == 2


def test_symmetric(capsys):
    codigo, out, _ = _rodar(capsys, "symmetric", DADOS / "s2.json", "--k", "2")
    assert codigo == 0
    assert "2/2 verificações ok" in out
    assert "classe de φ: (" in out


def test_witt_e8(capsys):
    codigo, out, _ = _rodar(capsys, "witt", DADOS / "e8.json", "--n", "4")
    assert codigo == 0
    assert "signature 8; σ* = 1 ∈ L_0(Z)" in out


def test_witt_arf(capsys):
    codigo, out, _ = _rodar(capsys, "witt", DADOS / "arf1.json", "--n", "2", "--json")
    assert codigo == 0
    doc = RelatorioDoc.model_validate_json(out)
    assert doc.values["obstruction"] == 1
    assert doc.values["l_group"] == "Z/2"


def test_wallmu(capsys):
    codigo, out, _ = _rodar(capsys, "wallmu", DADOS / "oito.json")
    assert codigo == 0
    assert "μ = 1 ∈ Z/2" in out


def test_quadratic(capsys):
    codigo, out, _ = _rodar(capsys, "quadratic", DADOS / "grau2.json")
    assert codigo == 0
    assert "k mínimo = 1" in out


def test_quadratic_spectral(capsys):
    codigo, out, _ = _rodar(capsys, "quadratic", DADOS / "cone2.json", "--spectral")
    assert codigo == 0
    assert "Q_4(C(f)) = Z/2" in out


def test_hopf(capsys):
    codigo, out, _ = _rodar(capsys, "hopf", "2")
    assert codigo == 0
    assert "h = 1" in out
    codigo, out, _ = _rodar(capsys, "hopf", "--bidegree", "-1", "1")
    assert "bi-grau = (-1, 1)" in out


def test_hopf_sem_argumentos(capsys):
    codigo, _, _ = _rodar(capsys, "hopf")
    assert codigo == 2


def test_check_determinista(capsys):
    codigo, primeira, _ = _rodar(capsys, "check", "witt", "--seed", "5", "--json")
    assert codigo == 0
    _, segunda, _ = _rodar(capsys, "check", "witt", "--seed", "5", "--json")
    assert primeira == segunda
    doc = RelatorioDoc.model_validate_json(primeira)
    assert doc.status == 0
    assert all(linha.ok for linha in doc.ledger)


def test_check_golden_corrompido(capsys):
    codigo, out, err = _rodar(capsys, "check", "witt", "--golden", FIXTURES / "golden_corrompido.json")
    assert codigo == 1
    assert "calculado 8, esperado 7" in out
    assert "1 verificação(ões) falharam (witt)" in err


def test_verificacao_levanta_falha_com_relatorio():
    args = criar_parser().parse_args(["check", "witt", "--golden", str(FIXTURES / "golden_corrompido.json")])
    with pytest.raises(FalhaVerificacao) as exc:
        exibir_verificacao(args, Configuracao())
    assert exc.value.codigo_saida == 1
    assert exc.value.relatorio.falhas == 1
    assert exc.value.relatorio.status == 1


def test_check_golden_malformado(capsys):
    codigo, _, _ = _rodar(capsys, "check", "witt", "--golden", FIXTURES / "malformado.json")
    assert codigo == 2


def test_tabela_csv(capsys, tmp_path):
    destino = tmp_path / "tabela.csv"
    codigo, _, _ = _rodar(capsys, "tabela", "--jmax", "2", "--kmax-tabela", "3", "--csv", destino)
    assert codigo == 0
    df = pd.read_csv(destino)
    assert list(df.columns) == ["j", "k", "i", "grau", "calculado", "esperado", "ok"]
    assert df["ok"].all()


def test_json_reparse(capsys):
    _, out, _ = _rodar(capsys, "homology", DADOS / "moore2.json", "--json")
    dados = json.loads(out)
    assert list(dados) == sorted(dados)
    doc = RelatorioDoc.model_validate(dados)
    assert doc.values["homology"] == {"0": "Z/2", "1": "0"}


def test_config_invalida(capsys, monkeypatch):
    monkeypatch.setenv("HOPF_TRIALS", "0")
    codigo, _, err = _rodar(capsys, "hopf", "2")
    assert codigo == 2
    assert "HOPF_TRIALS" in err


@pytest.mark.parametrize("suite", ["qgroups", "steenrod", "quadratic", "witt", "all"])
def test_check_suites_passam(capsys, suite):
    codigo, out, _ = _rodar(capsys, "check", suite, "--seed", "0", "--json")
    doc = RelatorioDoc.model_validate_json(out)
    falhas = [linha.item for linha in doc.ledger if not linha.ok]
    assert codigo == 0, falhas
    assert doc.status == 0
    assert doc.ledger

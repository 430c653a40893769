from pathlib import Path

import pytest

from src.core.errors import ErroEntrada, ErroMatematico
from src.core.models import ComplexoDoc, FormaDoc, RelatorioDoc
from src.repositories import documentos
from src.services.complexos import ChainComplex
from src.services.quadratica import obstruction_theta, problema_grau
from src.services.simplicial import SimplicialComplex

DADOS = Path(__file__).resolve().parents[1] / "dados"
FIXTURES = Path(__file__).parent / "fixtures"


def test_json_malformado_tem_linha_e_coluna():
    with pytest.raises(ErroEntrada) as exc:
        documentos.ler_json(FIXTURES / "malformado.json")
    assert exc.value.codigo_saida == 2
    assert "linha 5" in str(exc.value)


def test_arquivo_inexistente(tmp_path):
    with pytest.raises(ErroEntrada):
        documentos.ler_json(tmp_path / "nada.json")


def test_documento_nao_objeto(escrever_json):
    with pytest.raises(ErroEntrada):
        documentos.ler_json(escrever_json("lista.json", [1, 2]))


def test_esquema_invalido_aponta_caminho():
    with pytest.raises(ErroEntrada) as exc:
        documentos.validar(ComplexoDoc, {"lo": 0, "hi": 1, "ranks": [1, "x"]})
    assert exc.value.local == "$.ranks[1]"


def test_campo_extra_rejeitado():
    with pytest.raises(ErroEntrada):
        documentos.validar(ComplexoDoc, {"lo": 0, "hi": 0, "ranks": [1], "extra": 1})


def test_postos_incoerentes():
    with pytest.raises(ErroEntrada):
        documentos.validar(ComplexoDoc, {"lo": 0, "hi": 2, "ranks": [1]})


def test_complexo_de_arquivo():
    C = documentos.carregar_complexo(DADOS / "moore2.json")
    assert isinstance(C, ChainComplex)
    assert str(C.homology(0)) == "Z/2"


def test_matriz_com_forma_errada(escrever_json):
    caminho = escrever_json("c.json", {"lo": 0, "hi": 1, "ranks": [1, 1], "d": {"1": [[1, 2]]}})
    with pytest.raises(ErroEntrada) as exc:
        documentos.carregar_complexo(caminho)
    assert exc.value.local == "$.d.1"


def test_complexo_com_d_ao_quadrado_nao_nulo():
    with pytest.raises(ErroMatematico) as exc:
        documentos.carregar_complexo(FIXTURES / "nao_complexo.json")
    assert exc.value.codigo_saida == 3


def test_triangulacao_orientada():
    K, ciclo = documentos.carregar_triangulacao(DADOS / "s2.json")
    assert isinstance(K, SimplicialComplex)
    assert K.dim == 2
    assert ciclo is not None and all(abs(a) == 1 for a in ciclo)


def test_orientacao_que_nao_fecha(escrever_json):
    caminho = escrever_json("t.json", {
        "vertices": [0, 1, 2, 3],
        "facets": [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]],
        "orientation": [1, 1, 1, 1],
    })
    with pytest.raises(ErroMatematico):
        documentos.carregar_triangulacao(caminho)


def test_faceta_fora_do_intervalo(escrever_json):
    caminho = escrever_json("t.json", {"vertices": [0, 1], "facets": [[0, 2]]})
    with pytest.raises(ErroEntrada):
        documentos.carregar_triangulacao(caminho)


def test_forma_com_alias_lambda():
    forma = documentos.carregar_forma(DADOS / "e8.json")
    assert forma.posto == 8
    doc = documentos.validar(FormaDoc, {"lambda": [[1]]})
    assert doc.mu is None and doc.lam == [[1]]


def test_wallmu_e_grupo():
    grupo, pontos, m = documentos.carregar_wallmu(DADOS / "oito.json")
    assert grupo.ordem == 1
    assert pontos == [(0, 1)]
    assert m == 1


def test_grupo_sem_inverso(escrever_json):
    caminho = escrever_json("w.json", {
        "group": {"elements": ["e", "a"], "table": [[0, 1], [1, 1]], "identity": 0, "w": [1, 1]},
        "m": 0,
    })
    with pytest.raises(ErroMatematico):
        documentos.carregar_wallmu(caminho)


def test_problema_de_arquivo():
    problema = documentos.carregar_problema(DADOS / "grau2.json")
    assert problema.n == 0
    assert problema.f.at(0).to_list() == [[2]]


def test_problema_usa_phi_d_f_sem_recompor():
    problema = documentos.carregar_problema(DADOS / "grau2.json")
    assert problema.phi_D_f.phi[0] == [2]
    theta = obstruction_theta(problema)
    assert theta.phi[0] == [2]
    assert theta.phi[0] == obstruction_theta(problema_grau(2)).phi[0]



def test_problema_com_componente_fora(escrever_json):
    caminho = escrever_json("p.json", {
        "source": {"lo": 0, "hi": 0, "ranks": [1]},
        "target": {"lo": 0, "hi": 0, "ranks": [1]},
        "n": 0,
        "phi_C": {"3": [1]},
    })
    with pytest.raises(ErroEntrada):
        documentos.carregar_problema(caminho)


def test_relatorio_reparse():
    doc = RelatorioDoc(command="hopf-chain hopf 2", values={"h": 1})
    assert RelatorioDoc.model_validate_json(doc.model_dump_json()) == doc

import random

import pytest

from src.core.errors import ErroEntrada, ErroMatematico
from src.core.linalg import IntMatrix
from src.services.complexos import ChainComplex, RingSpec, TensorSquare, complexo_aleatorio
from src.services.grupos_q import (
    H_map,
    J_map,
    QuadraticClass,
    S_map,
    SymmetricClass,
    esperado_projetivo,
    hyperquadratic_Q,
    k_estavel,
    les1_check,
    les3_check,
    q_epsilon,
    quadratic_Q,
    reindex_check,
    suspension_iso_check,
    symmetric_Q,
    symmetrization,
    tabela_projetiva,
)


@pytest.mark.parametrize(
    "calculo, esperado",
    [
        (lambda: quadratic_Q(ChainComplex.esfera(2), 4, 0, 2), "Z"),
        (lambda: quadratic_Q(ChainComplex.esfera(3), 6, 0, 2), "Z/2"),
        (lambda: symmetric_Q(ChainComplex.esfera(3), 6, 0, 1), "0"),
        (lambda: symmetric_Q(ChainComplex.esfera(3), 5, 0, 1), "Z/2"),
        (lambda: symmetric_Q(ChainComplex.esfera(3), 6, 0, 0), "Z"),
        (lambda: hyperquadratic_Q(ChainComplex.esfera(3), 5), "Z/2"),
        (lambda: symmetric_Q(ChainComplex.zero(), 0, 0, 0), "0"),
    ],
)
def test_valores_em_esferas(calculo, esperado):
    assert str(calculo()) == esperado


def test_q_epsilon():
    assert str(q_epsilon(2)) == "Z"
    assert str(q_epsilon(1)) == "Z/2"


def test_faixa_vazia():
    with pytest.raises(ErroEntrada):
        symmetric_Q(ChainComplex.esfera(0), 0, 2, 1)


def test_truncamento_registrado():
    g = quadratic_Q(ChainComplex.esfera(2), 4)
    assert g.metadados["truncado"] is True
    assert g.faixa[0] == 0


def test_k_estavel_da_esfera():
    assert k_estavel(ChainComplex.esfera(3), 5) == 3
    assert k_estavel(ChainComplex.zero(), 0) == 1


def test_classe_simetrica_fechamento():
    X = TensorSquare(ChainComplex.esfera(1))
    SymmetricClass(X, 2, 0, 0, {0: [1]}).verificar()
    with pytest.raises(ErroEntrada):
        SymmetricClass(X, 2, 0, 0, {0: [1, 1]})


def test_classe_quadratica_coordenada():
    X = TensorSquare(ChainComplex.esfera(2))
    g = quadratic_Q(X, 4, 0, 0)
    psi = QuadraticClass(X, 4, 0, 0, {0: [3]})
    assert g.coordenadas(psi) in ((3,), (-3,))


def test_simetrizacao_dobra_em_grau_par():
    X = TensorSquare(ChainComplex.esfera(2))
    psi = QuadraticClass(X, 4, 0, 0, {0: [1]})
    phi = symmetrization(psi)
    assert phi.phi[0] == [2]


def test_j_e_h_compoem():
    X = TensorSquare(ChainComplex.esfera(1))
    phi = SymmetricClass(X, 2, 0, 0, {0: [1]})
    jphi = J_map(phi, 1)
    assert (jphi.i, jphi.j) == (-1, 0)
    psi = H_map(jphi)
    assert psi.n == 1
    assert psi.psi[0] == []


def test_suspensao_de_classe():
    X = TensorSquare(ChainComplex.esfera(0))
    phi = SymmetricClass(X, 0, 0, 0, {0: [1]})
    S = S_map(phi)
    assert (S.n, S.i, S.j) == (1, 1, 1)
    S.verificar()


def test_sequencias_em_esferas():
    C = ChainComplex.esfera(1)
    assert les1_check(C, 2, 0, 1, 2).ok
    assert les3_check(C, 2).ok
    assert suspension_iso_check(C, 2).ok
    assert reindex_check(C, 2, 0, 1).ok


@pytest.mark.parametrize("semente", range(20))
def test_sequencias_em_complexos_aleatorios(semente):
    rng = random.Random(semente)
    C = complexo_aleatorio(rng, max_posto=2, max_grau=2, max_total=4)
    n = rng.randint(0, 3)
    res = les3_check(C, n)
    assert res.ok, res.diagnostico
    assert les1_check(C, n, 0, 1, 2).ok
    assert suspension_iso_check(C, n).ok
    assert reindex_check(C, n, 0, 1).ok


def test_les1_exige_ordem():
    with pytest.raises(ErroEntrada):
        les1_check(ChainComplex.esfera(0), 0, 2, 1, 3)


def test_esperado_projetivo():
    assert esperado_projetivo(2, 2, 3) == "Z"
    assert esperado_projetivo(3, 3, 3) == "Z/2"
    assert esperado_projetivo(4, 2, 3) == "0"
    assert esperado_projetivo(1, 2, 3) == "0"


def test_tabela_projetiva_completa():
    df = tabela_projetiva(3, 4)
    assert list(df.columns) == ["j", "k", "i", "grau", "calculado", "esperado", "ok"]
    assert df["ok"].all(), df[~df["ok"]]


def test_classe_fora_da_faixa():
    X = TensorSquare(ChainComplex.esfera(0))
    with pytest.raises(ErroEntrada):
        SymmetricClass(X, 0, 0, 0, {3: [1]})


def test_verificar_rejeita_nao_ciclo():
    d = {1: IntMatrix.from_rows([[2]])}
    C = ChainComplex(RingSpec.inteiros(), 0, 1, {0: 1, 1: 1}, d)
    X = TensorSquare(C)
    v = [0] * X.posto(1)
    v[X.indice(0, 0, 0, m=1)] = 1
    with pytest.raises(ErroMatematico):
        SymmetricClass(X, 1, 0, 0, {0: v}).verificar()

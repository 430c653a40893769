import random

import pytest
from sympy import factorint

from src.core.errors import ErroEntrada, ErroMatematico, ErroNaoSuportado
from src.core.linalg import IntMatrix
from src.services.complexos import (
    ChainComplex,
    ChainHomotopy,
    ChainMap,
    GrupoFinito,
    RingSpec,
    TensorSquare,
    complexo_aleatorio,
    cone,
    desuspension,
    dual,
    hom,
    is_quasi_isomorphism,
    relative_difference,
    slant_map,
    suspension,
    tensor,
    tensor_maps,
    tensor_square_with_involution,
)
from src.services.grupos_q import MapaHomologia, TermoHomologia, build_W, verify_exact_sequence


@pytest.fixture
def moore():
    """Z --2--> Z nos graus 1 → 0."""
    return ChainComplex(RingSpec.inteiros(), 0, 1, {0: 1, 1: 1}, {1: IntMatrix.from_rows([[2]])})


def test_esfera_homologia():
    C = ChainComplex.esfera(3)
    assert str(C.homology(3)) == "Z"
    assert str(C.homology(2)) == "0"
    assert C.suporte() == (3, 3)


def test_d_ao_quadrado_rejeitado():
    d = {1: IntMatrix.from_rows([[1]]), 2: IntMatrix.from_rows([[1]])}
    with pytest.raises(ErroMatematico):
        ChainComplex(RingSpec.inteiros(), 0, 2, {0: 1, 1: 1, 2: 1}, d)


def test_forma_errada_rejeitada():
    with pytest.raises(ErroEntrada):
        ChainComplex(RingSpec.inteiros(), 0, 1, {0: 1, 1: 1}, {1: IntMatrix.from_rows([[1, 0]])})


def test_dual_troca_graus_e_sinal(moore):
    D = dual(moore, 1)
    assert (D.lo, D.hi) == (0, 1)
    assert D.diff(1).to_list() == [[-2]]
    assert str(D.homology(0)) == "Z/2"


def test_suspensao_desloca(moore):
    S = suspension(moore)
    assert (S.lo, S.hi) == (1, 2)
    assert str(S.homology(1)) == "Z/2"


def test_tensor_kunneth(moore):
    T = tensor(moore, moore)
    assert str(T.homology(0)) == "Z/2"
    assert str(T.homology(1)) == "Z/2"
    assert str(T.homology(2)) == "0"


def test_transposicao_involucao():
    X = TensorSquare(ChainComplex.esfera(1))
    X.verificar()
    assert X.T(2).to_list() == [[-1]]
    assert X.norma(2, 1).to_list() == [[0]]
    assert X.norma(2, -1).to_list() == [[2]]


def test_quase_isomorfismo(moore):
    assert is_quasi_isomorphism(ChainMap.identidade(moore))
    S0 = ChainComplex.esfera(0)
    assert not is_quasi_isomorphism(ChainMap.multiplicacao(S0, 2))
    assert not is_quasi_isomorphism(ChainMap.multiplicacao(moore, 0))


def test_cone_do_grau_dois():
    S0 = ChainComplex.esfera(0)
    Cf = cone(ChainMap.multiplicacao(S0, 2)).complexo
    assert str(Cf.homology(0)) == "Z/2"
    assert str(Cf.homology(1)) == "0"


def test_mapa_nao_de_cadeias(moore):
    with pytest.raises(ErroMatematico):
        ChainMap(moore, moore, {0: IntMatrix.from_rows([[1]]), 1: IntMatrix.from_rows([[0]])})


def test_hom_de_esferas():
    H = hom(ChainComplex.esfera(0), ChainComplex.esfera(2))
    assert (H.lo, H.hi) == (2, 2)
    assert str(H.homology(2)) == "Z"


def test_diferenca_relativa():
    C, D = ChainComplex.esfera(0), ChainComplex.esfera(1)
    f = ChainMap(C, D, {})
    h1 = ChainHomotopy(f, f, {0: IntMatrix.from_rows([[1]])})
    h2 = ChainHomotopy(f, f, {})
    dif = relative_difference(h1, h2)
    assert dif.at(1).to_list() == [[-1]]


def test_homotopia_invalida(moore):
    f = ChainMap.identidade(moore)
    with pytest.raises(ErroMatematico):
        ChainHomotopy(f, f, {0: IntMatrix.from_rows([[1]])})


def test_tensor_de_mapas():
    S0 = ChainComplex.esfera(0)
    F = tensor_maps(ChainMap.multiplicacao(S0, 2), ChainMap.multiplicacao(S0, 3))
    assert F[0].to_list() == [[6]]


def test_slant_da_classe_do_ponto():
    S0 = ChainComplex.esfera(0)
    mapa = slant_map(TensorSquare(S0), [1], 0)
    assert is_quasi_isomorphism(mapa)
    with pytest.raises(ErroEntrada):
        slant_map(TensorSquare(S0), [1, 0], 0)


@pytest.mark.parametrize("semente", range(5))
def test_complexos_aleatorios_sao_complexos(semente):
    C = complexo_aleatorio(random.Random(semente))
    for r in range(C.lo + 2, C.hi + 1):
        assert (C.diff(r - 1) @ C.diff(r)).is_zero()


def test_anel_de_grupo_exige_linearidade():
    anel = RingSpec.anel_de_grupo(GrupoFinito.ciclico(2))
    with pytest.raises(ErroEntrada):
        ChainComplex(anel, 0, 1, {0: 1, 1: 1}, {1: IntMatrix.from_rows([[1, 0], [0, 0]])})


def test_w_complexo():
    W = build_W(0, 1)
    assert W.d(1).to_list() == [[1, -1], [-1, 1]]
    assert str(W.complexo.homology(0)) == "Z"
    assert str(W.complexo.homology(1)) == "Z"
    with pytest.raises(ErroNaoSuportado):
        is_quasi_isomorphism(ChainMap.identidade(W.complexo))


@pytest.mark.parametrize("i, j", [(0, 0), (0, 3), (-2, 3), (-1, 1)])
def test_w_verificado(i, j):
    W = build_W(i, j)
    ok, detalhe = W.verificar()
    assert ok, detalhe
    assert W.complexo.rank(i) == 1
    assert W.complexo.zrank(i) == 2


def test_grupo_com_tabela_invalida():
    with pytest.raises(ErroMatematico):
        GrupoFinito(("e", "a"), ((0, 1), (1, 1)), 0, (1, 1))


@pytest.mark.parametrize("n, sinal", [(1, 1), (2, -1)])
def test_duplo_dual(moore, n, sinal):
    DD = dual(dual(moore, n), n)
    assert (DD.lo, DD.hi) == (moore.lo, moore.hi)
    assert DD.diff(1) == moore.diff(1).scale(sinal)


# ============================================
# INVARIANTES EM COMPLEXOS ALEATÓRIOS
# ============================================

def _primarias(G) -> tuple[int, list[int]]:
    """Posto livre e potências de primos da torção, para comparar grupos a menos de isomorfismo."""
    potencias = []
    for d in G.torsion:
        potencias.extend(p**e for p, e in factorint(d).items())
    return G.free_rank, sorted(potencias)


def _soma(*grupos) -> tuple[int, list[int]]:
    livre, torcao = 0, []
    for G in grupos:
        a, b = _primarias(G)
        livre += a
        torcao += b
    return livre, sorted(torcao)


def _termo(X: ChainComplex, r: int, rotulo: str) -> TermoHomologia:
    return TermoHomologia(X.diff(r + 1), X.diff(r), X.modulo, rotulo)


@pytest.mark.parametrize("semente", range(8))
def test_cone_do_mapa_nulo_soma_direta(semente):
    rng = random.Random(semente)
    C = complexo_aleatorio(rng, max_posto=2, max_grau=2, max_total=4)
    D = complexo_aleatorio(rng, max_posto=2, max_grau=2, max_total=4)
    Cf = cone(ChainMap(C, D, {})).complexo
    for r in range(min(C.lo, D.lo), max(C.hi + 1, D.hi) + 1):
        assert _primarias(Cf.homology(r)) == _soma(D.homology(r), C.homology(r - 1)), r


@pytest.mark.parametrize("semente", range(8))
def test_sequencia_exata_do_cone(semente):
    rng = random.Random(semente)
    C = complexo_aleatorio(rng, max_posto=2, max_grau=2, max_total=4)
    f = ChainMap.multiplicacao(C, rng.choice([0, 2, 3]))
    c = cone(f)
    Cf, SC = c.complexo, suspension(C)
    for r in range(C.lo, C.hi + 2):
        hD, hCf, hSC = _termo(C, r, "D_r"), _termo(Cf, r, "C(f)_r"), _termo(SC, r, "SC_r")
        hD1, hCf1 = _termo(C, r - 1, "D_{r−1}"), _termo(Cf, r - 1, "C(f)_{r−1}")
        g = MapaHomologia(hD, hCf, c.inclusao.at(r), "g")
        h = MapaHomologia(hCf, hSC, c.projecao.at(r), "h")
        conexao = MapaHomologia(hSC, hD1, f.at(r - 1), "f")
        g1 = MapaHomologia(hD1, hCf1, c.inclusao.at(r - 1), "g")
        for res in (verify_exact_sequence(g, h), verify_exact_sequence(h, conexao), verify_exact_sequence(conexao, g1)):
            assert res.ok, res.diagnostico


@pytest.mark.parametrize("semente", range(8))
def test_suspensao_e_dessuspensao_deslocam_homologia(semente):
    C = complexo_aleatorio(random.Random(semente))
    S = suspension(C)
    SS = suspension(S)
    volta = desuspension(SS, 2)
    for r in C.graus:
        assert str(S.homology(r + 1)) == str(C.homology(r))
        assert str(desuspension(C, 1).homology(r - 1)) == str(C.homology(r))
        assert str(volta.homology(r)) == str(C.homology(r))
    assert (volta.lo, volta.hi) == (C.lo, C.hi)


@pytest.mark.parametrize("semente", range(6))
def test_tensor_associativo(semente):
    rng = random.Random(semente)
    A, B, C = (complexo_aleatorio(rng, max_posto=2, max_grau=1, max_total=3) for _ in range(3))
    esquerda = tensor(tensor(A, B), C)
    direita = tensor(A, tensor(B, C))
    assert (esquerda.lo, esquerda.hi) == (direita.lo, direita.hi)
    for m in esquerda.graus:
        assert esquerda.rank(m) == direita.rank(m)
        assert _primarias(esquerda.homology(m)) == _primarias(direita.homology(m)), m


@pytest.mark.parametrize("semente", range(5))
def test_quadrado_tensorial_com_involucao(semente):
    C = complexo_aleatorio(random.Random(semente), max_posto=2, max_grau=2, max_total=4)
    X = tensor_square_with_involution(C)
    for m in range(X.lo, X.hi + 1):
        T = X.T(m)
        assert T @ T == IntMatrix.identity(X.posto(m))
    S1 = tensor_square_with_involution(ChainComplex.esfera(1, posto=2))
    assert S1.T(2) @ S1.T(2) == IntMatrix.identity(4)
    assert all(S1.T(2).data[S1.indice(1, j, i, m=2)][S1.indice(1, i, j, m=2)] == -1 for i in range(2) for j in range(2))

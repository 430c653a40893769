import itertools

import pytest

from src.core.errors import ErroEntrada, ErroMatematico
from src.core.linalg import IntMatrix
from src.repositories import triangulacoes
from src.services.complexos import GrupoFinito
from src.services.witt import (
    BiDegree,
    ElementoQ,
    GroupRingElement,
    QuadraticForm,
    arf,
    arf_democratico,
    arf_simpletico,
    bidegree_compose,
    bidegree_forget,
    bidegree_of,
    bidegree_reduzido,
    bidegree_relative,
    bidegree_smash,
    curvatura_integra,
    e8,
    hopf_composite,
    hopf_of_degree,
    hopf_sum,
    kunneth_mu_check,
    l_group,
    lambda_mu_chi_check,
    signature,
    surgery_obstruction,
    wall_mu_from_double_points,
    wall_mu_reduce,
)


def test_e8():
    E8 = e8()
    assert E8.determinante() == 1
    assert E8.e_par()
    assert signature(E8) == 8
    assert surgery_obstruction(E8, 4) == 1
    assert surgery_obstruction(E8.soma(E8), 8) == 2
    assert surgery_obstruction(E8.negativa(), 0) == -1


def test_hiperbolica():
    H = QuadraticForm.hiperbolica()
    assert signature(H) == 0
    assert surgery_obstruction(H, 4) == 0
    assert surgery_obstruction(H, 3) == 0


def test_forma_nao_par():
    forma = QuadraticForm(IntMatrix.diagonal([1, 1, -1]))
    assert signature(forma) == 1
    assert not forma.e_par()
    with pytest.raises(ErroMatematico):
        surgery_obstruction(forma, 4)


def test_forma_singular():
    forma = QuadraticForm(IntMatrix.from_rows([[2, 0], [0, 0]]), [1, 0])
    assert not forma.e_nao_singular()
    with pytest.raises(ErroMatematico):
        surgery_obstruction(forma, 0)


def test_validacao_da_forma():
    with pytest.raises(ErroMatematico):
        QuadraticForm(IntMatrix.from_rows([[0, 1], [0, 0]]))
    with pytest.raises(ErroMatematico):
        QuadraticForm(IntMatrix.from_rows([[2, 1], [1, 2]]), [0, 1])
    with pytest.raises(ErroEntrada):
        QuadraticForm(IntMatrix.from_rows([[2]]), [1], epsilon=2)


def test_assinatura_com_diagonal_nula():
    assert signature(IntMatrix.from_rows([[0, 1], [1, 0]])) == 0
    assert signature(IntMatrix.from_rows([[0, 2, 0], [2, 0, 0], [0, 0, -3]])) == -1


def test_arf_das_hiperbolicas():
    for mu, esperado in (((0, 0), 0), ((1, 0), 0), ((0, 1), 0), ((1, 1), 1)):
        H = QuadraticForm.hiperbolica(-1, 2, mu)
        assert arf(H) == esperado
        assert arf_democratico(H) == arf_simpletico(H) == esperado


def test_arf_aditivo_e_invariante():
    formas = [QuadraticForm.hiperbolica(-1, 2, mu) for mu in itertools.product((0, 1), repeat=2)]
    P = IntMatrix.from_rows([[1, 1, 0, 0], [0, 1, 0, 0], [0, 1, 1, 0], [1, 0, 0, 1]])
    for f, g in itertools.product(formas, repeat=2):
        soma = f.soma(g)
        assert arf(soma) == (arf(f) + arf(g)) % 2
        assert arf(soma.mudar_base(P)) == arf(soma)


def test_arf_em_l2():
    forma = QuadraticForm(IntMatrix.from_rows([[0, 1], [-1, 0]]), [1, 1], epsilon=-1)
    assert surgery_obstruction(forma, 2) == 1
    assert surgery_obstruction(forma, 6) == 1


def test_l_grupos():
    assert [l_group(n) for n in range(8)] == ["Z", "0", "Z/2", "0"] * 2


def test_elemento_q():
    assert str(ElementoQ(3, -1)) == "1 ∈ Z/2"
    assert str(ElementoQ(3, 1)) == "3 ∈ Z"


def test_mu_do_oito():
    classe = wall_mu_from_double_points(GrupoFinito.trivial(), [(0, 1)], 1)
    assert str(classe) == "1 ∈ Z/2"
    assert str(wall_mu_from_double_points(GrupoFinito.trivial(), [(0, 1), (0, 1)], 2)) == "2 ∈ Z"


def test_mu_em_z3():
    z3 = GrupoFinito.ciclico(3)
    assert wall_mu_from_double_points(z3, [(1, 1), (2, 1)], 1).e_zero()
    assert not wall_mu_from_double_points(z3, [(1, 1), (2, 1)], 0).e_zero()


def test_representante_canonico():
    z3 = GrupoFinito.ciclico(3)
    a = wall_mu_from_double_points(z3, [(2, 1)], 0)
    b = wall_mu_from_double_points(z3, [(1, 1)], 0)
    assert a.representante == b.representante
    assert a.representante.coef == (0, 1, 0)
    assert a.coordenadas == b.coordenadas
    z2 = GrupoFinito.ciclico(2)
    c = wall_mu_from_double_points(z2, [(0, 1), (0, 1), (0, 1), (1, -1)], 1)
    assert c.representante.coef == (1, 1)
    assert str(c.representante) == "e + t"
    assert wall_mu_reduce(c.representante, 1).coordenadas == c.coordenadas


@pytest.mark.parametrize("grupo", [GrupoFinito.ciclico(3), GrupoFinito.ciclico(4, (1, -1, 1, -1))])
@pytest.mark.parametrize("m", [0, 1])
def test_relacoes_de_wall(grupo, m):
    eps = (-1) ** m
    for g in range(grupo.ordem):
        x = GroupRingElement.de_pontos(grupo, [(g, 1)])
        relacao = x + GroupRingElement(grupo, tuple(-eps * a for a in x.conjugado().coef))
        assert wall_mu_reduce(relacao, m).e_zero()
        assert not any(wall_mu_reduce(relacao, m).representante.coef)


def test_pontos_duplos_invalidos():
    with pytest.raises(ErroEntrada):
        wall_mu_from_double_points(GrupoFinito.ciclico(2), [(5, 1)], 0)
    with pytest.raises(ErroEntrada):
        wall_mu_from_double_points(GrupoFinito.ciclico(2), [(1, 2)], 0)


def test_lambda_mu_chi():
    assert lambda_mu_chi_check(8, 3, 2, 2)
    assert not lambda_mu_chi_check(7, 3, 2, 2)
    assert lambda_mu_chi_check(3, 0, 1, 1)


def test_bigraus():
    assert str(bidegree_of(-1, 1)) == "(-1, 1)"
    assert str(bidegree_smash(3, 1, 2)) == "(2, 2)"
    with pytest.raises(ErroMatematico):
        bidegree_of(2, 1)
    p, q = bidegree_of(5, 1), bidegree_of(-2, 0)
    composto = bidegree_compose(p, q)
    assert bidegree_forget(composto) == bidegree_forget(p) * bidegree_forget(q)
    assert composto.b == p.b * q.b
    assert bidegree_relative(5, 1) == BiDegree(2, 0)
    assert bidegree_reduzido(BiDegree(3, 2), 1) == (1, 0)
    with pytest.raises(ErroMatematico):
        bidegree_reduzido(BiDegree(3, 2), 0)


@pytest.mark.parametrize("d, h", [(2, 1), (-1, 1), (0, 0), (1, 0), (3, 3), (-2, 3)])
def test_hopf_do_grau(d, h):
    assert hopf_of_degree(d) == h


def test_identidades_de_hopf():
    for a in range(-6, 7):
        for b in range(-6, 7):
            assert hopf_of_degree(a * b) == hopf_composite(a, b)
            assert hopf_of_degree(a + b) == hopf_sum(a, b)


def test_curvatura_integra():
    assert str(curvatura_integra(2, 2)) == "1 ∈ Z"
    assert curvatura_integra(3, 1, 1).valor == 0
    assert curvatura_integra(5, 1).valor == 1
    with pytest.raises(ErroMatematico):
        curvatura_integra(2, 3)
    with pytest.raises(ErroMatematico):
        curvatura_integra(5, 1, 1)


@pytest.mark.parametrize("nome, n", [("S1", 1), ("S3", 3), ("S1+S1", 1)])
def test_kunneth_semicaracteristica(nome, n):
    r = kunneth_mu_check(triangulacoes.obter(nome), n)
    assert r.ok
    assert bool(r)


def test_kunneth_exige_dimensao_impar():
    with pytest.raises(ErroEntrada):
        kunneth_mu_check(triangulacoes.obter("S2"), 2)

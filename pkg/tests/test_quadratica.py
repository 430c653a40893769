import pytest

from src.core.errors import ErroEntrada, ErroMatematico
from src.core.linalg import IntMatrix
from src.services import quadratica
from src.services.complexos import ChainComplex, ChainMap, RingSpec, TensorSquare
from src.services.grupos_q import QuadraticClass, SymmetricClass, symmetrization
from src.services.quadratica import (
    RefinementProblem,
    kernel_form,
    obstruction_theta,
    problema_grau,
    quadratic_from_certificate,
    refine,
    refine_theta,
    solve_null_homotopy,
    spectral_quadratic,
    ultraquadratic_pairing,
    valor_refinamento,
)
from src.services.witt import arf, hopf_composite, hopf_of_degree, signature


def _problema_esfera(m: int, grau: int) -> RefinementProblem:
    C = ChainComplex.esfera(m)
    X = TensorSquare(C)
    return RefinementProblem(
        ChainMap.multiplicacao(C, grau),
        SymmetricClass(X, 2 * m, 0, 0, {0: [1]}),
        SymmetricClass(X, 2 * m, 0, 0, {0: [grau]}),
    )


def _psi_meio(m: int, S: list[list[int]], ring: RingSpec | None = None) -> QuadraticClass:
    C = ChainComplex.esfera(m, ring, posto=len(S))
    X = TensorSquare(C)
    psi0 = [0] * X.posto(2 * m)
    for a, linha in enumerate(S):
        for b, valor in enumerate(linha):
            psi0[X.indice(m, a, b, m=2 * m)] = valor
    return QuadraticClass(X, 2 * m, 0, 0, {0: psi0})


@pytest.mark.parametrize("d", range(-3, 4))
def test_refinamento_do_grau(d):
    assert valor_refinamento(d) == hopf_of_degree(d)


def test_theta_do_grau():
    theta = obstruction_theta(problema_grau(3))
    assert theta.phi[0] == [6]


@pytest.mark.parametrize("d1, d2", [(2, 3), (-1, 2), (-2, -2), (0, 5)])
def test_composicao(d1, d2):
    assert valor_refinamento(d1 * d2) == hopf_composite(d1, d2)


def test_certificado_e_psi_consistentes():
    theta = obstruction_theta(problema_grau(2))
    cert = solve_null_homotopy(theta, 1)
    assert cert is not None and cert.verificar()
    psi = quadratic_from_certificate(cert)
    assert symmetrization(psi).phi[0] == theta.phi[0]
    assert cert.suspended().verificar()


def test_k_invalido():
    with pytest.raises(ErroEntrada):
        solve_null_homotopy(obstruction_theta(problema_grau(2)), 0)


@pytest.mark.parametrize("m", [1, 3])
def test_theta_obstruida(m):
    X = TensorSquare(ChainComplex.esfera(m))
    theta = SymmetricClass(X, 2 * m - 1, 0, 2, {1: [1]}).verificar()
    res = refine_theta(theta, kmax=8)
    assert not res.ok
    assert res.k is None
    assert str(res.obstrucao) == "Z/2"
    assert any(res.coordenadas)


def test_refinamento_em_s2():
    res = refine(_problema_esfera(2, 3))
    assert res.ok
    assert res.k == 1
    assert res.psi.psi[0] == [hopf_of_degree(3)]


def test_problema_incoerente():
    C, D = ChainComplex.esfera(0), ChainComplex.esfera(0)
    X = TensorSquare(C)
    f = ChainMap.multiplicacao(D, 2)
    with pytest.raises(ErroEntrada):
        RefinementProblem(f, SymmetricClass(X, 0, 0, 0, {0: [1]}), SymmetricClass(TensorSquare(D), 0, 0, 0, {0: [2]}))
    Y = TensorSquare(D)
    with pytest.raises(ErroEntrada):
        RefinementProblem(f, SymmetricClass(Y, 0, 0, 0, {0: [1]}), SymmetricClass(Y, 1, 0, 0, {}))


def test_cone_do_grau_dois():
    res = spectral_quadratic(_problema_esfera(2, 2))
    assert str(res.grupo) == "Z/2"
    assert any(res.coordenadas)


def test_cone_do_mapa_nulo_e_da_identidade():
    assert spectral_quadratic(_problema_esfera(2, 0)).psi.e_zero()
    assert not any(spectral_quadratic(_problema_esfera(2, 1)).coordenadas)


def test_pareamento_ultraquadratico():
    S = [[1, 2], [0, 3]]
    mapa = ultraquadratic_pairing(_psi_meio(2, S))
    assert mapa.at(2) == IntMatrix.from_rows(S).T


def test_pareamento_exige_faixa_zero():
    X = TensorSquare(ChainComplex.esfera(1))
    with pytest.raises(ErroEntrada):
        ultraquadratic_pairing(QuadraticClass(X, 2, 0, 1, {}))


def test_forma_de_nucleo_f2():
    forma = kernel_form(_psi_meio(1, [[1, 1], [0, 1]], RingSpec.f2()))
    assert forma.lam.to_list() == [[0, 1], [1, 0]]
    assert forma.mu == [1, 1]
    assert forma.epsilon == -1
    assert arf(forma) == 1


def test_forma_de_nucleo_inteira():
    forma = kernel_form(_psi_meio(2, [[1, 1], [0, 1]]))
    assert forma.lam.to_list() == [[2, 1], [1, 2]]
    assert forma.mu == [1, 1]
    assert signature(forma) == 2


def test_forma_de_nucleo_registra_torcao():
    C = ChainComplex(RingSpec.inteiros(), 1, 2, {1: 1, 2: 2}, {2: IntMatrix.from_rows([[2, 0]])})
    X = TensorSquare(C)
    psi0 = [0] * X.posto(4)
    psi0[X.indice(2, 1, 1, m=4)] = 1
    forma = kernel_form(QuadraticClass(X, 4, 0, 0, {0: psi0}))
    assert forma.torcao == (2,)
    assert forma.lam.to_list() == [[2]]
    assert forma.mu == [1]


def test_forma_de_nucleo_sem_torcao():
    assert kernel_form(_psi_meio(2, [[1, 1], [0, 1]])).torcao == ()



def test_forma_de_nucleo_dimensao_impar():
    X = TensorSquare(ChainComplex.esfera(1))
    with pytest.raises(ErroEntrada):
        kernel_form(QuadraticClass(X, 3, 0, 0, {}))


def test_valor_refinamento_sem_solucao(monkeypatch):
    monkeypatch.setattr(quadratica, "solve_null_homotopy", lambda theta, k: None)
    with pytest.raises(ErroMatematico):
        valor_refinamento(2)

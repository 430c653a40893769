import random

import pytest
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form as snf_sympy

from src.core.errors import ErroEntrada, ErroMatematico
from src.core.linalg import (
    IntMatrix,
    homology_at,
    kernel_basis,
    posto_f2,
    rank,
    smith_normal_form,
    solve_linear,
)


def _diagonal(D: IntMatrix) -> list[int]:
    return [abs(D.data[i][i]) for i in range(min(D.shape))]


def _matriz_aleatoria(rng: random.Random, linhas: int, colunas: int) -> IntMatrix:
    return IntMatrix.from_rows([[rng.randint(-4, 4) for _ in range(colunas)] for _ in range(linhas)], cols=colunas)


def test_snf_exemplo_classico():
    M = IntMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    U, D, V = smith_normal_form(M)
    assert _diagonal(D) == [2, 6, 12]
    assert U @ M @ V == D


@pytest.mark.parametrize("semente", range(8))
def test_snf_bate_com_sympy(semente):
    rng = random.Random(semente)
    M = _matriz_aleatoria(rng, rng.randint(1, 4), rng.randint(1, 4))
    U, D, V = smith_normal_form(M)
    assert U @ M @ V == D
    diag = [d for d in _diagonal(D) if d]
    ref = snf_sympy(Matrix(M.to_list()))
    esperado = [abs(int(ref[i, i])) for i in range(min(ref.shape)) if ref[i, i] != 0]
    assert sorted(diag) == sorted(esperado)
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0
    assert abs(Matrix(U.to_list()).det()) == 1
    assert abs(Matrix(V.to_list()).det()) == 1


def test_nucleo_e_posto():
    M = IntMatrix.from_rows([[1, 2, 3], [2, 4, 6]])
    K = kernel_basis(M)
    assert K.cols == 2
    assert (M @ K).is_zero()
    assert rank(M) == 1


def test_posto_f2_difere_de_z():
    M = IntMatrix.from_rows([[1, 1], [1, -1]])
    assert rank(M) == 2
    assert posto_f2(M) == 1
    assert rank(M, modulo=2) == 1


def test_solve_linear_inteiro():
    M = IntMatrix.from_rows([[2, 0], [0, 3]])
    assert solve_linear(M, [4, 9]) == [2, 3]
    assert solve_linear(M, [1, 0]) is None
    x = solve_linear(M, [0, 1], modulo=2)
    assert x is not None
    assert [a % 2 for a in M.apply(x)] == [0, 1]
    assert solve_linear(M, [1, 0], modulo=2) is None


def test_solve_linear_tamanho_errado():
    with pytest.raises(ErroEntrada):
        solve_linear(IntMatrix.identity(2), [1, 2, 3])


def test_homologia_com_torcao():
    # Z --2--> Z: H_0 = Z/2
    d1 = IntMatrix.from_rows([[2]])
    H0 = homology_at(d1, IntMatrix.zeros(0, 1))
    assert H0.free_rank == 0 and H0.torsion == (2,)
    assert str(H0) == "Z/2"
    assert H0.cycle_coordinates([1]) == (1,)
    assert H0.e_fronteira([2])


def test_homologia_rejeita_nao_complexo():
    d_in = IntMatrix.from_rows([[1], [0]])
    d_out = IntMatrix.from_rows([[1, 0]])
    with pytest.raises(ErroMatematico):
        homology_at(d_in, d_out)


def test_homologia_trivial():
    H = homology_at(IntMatrix.zeros(0, 0), IntMatrix.zeros(0, 0))
    assert H.e_trivial
    assert str(H) == "0"

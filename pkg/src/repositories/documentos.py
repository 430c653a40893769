"""Repositório de documentos JSON: leitura, validação e conversão para objetos."""
from __future__ import annotations

import json
from pathlib import Path
from typing import TypeVar

from pydantic import BaseModel, ValidationError

from src.core.errors import ErroEntrada, ErroMatematico
from src.core.linalg import IntMatrix
from src.core.models import (
    AnelGrupoDoc,
    ComplexoDoc,
    FormaDoc,
    GrupoDoc,
    ProblemaDoc,
    TriangulacaoDoc,
    WallMuDoc,
)
from src.services.complexos import ChainComplex, ChainMap, GrupoFinito, RingSpec, TensorSquare
from src.services.grupos_q import SymmetricClass
from src.services.quadratica import RefinementProblem
from src.services.simplicial import SimplicialComplex, boundary_matrix
from src.services.witt import QuadraticForm

Modelo = TypeVar("Modelo", bound=BaseModel)


# ============================================
# LEITURA
# ============================================

def ler_json(caminho: str | Path) -> dict:
    try:
        texto = Path(caminho).read_text(encoding="utf-8")
    except OSError as e:
        raise ErroEntrada(f"não foi possível ler {caminho}: {e.strerror}") from e
    try:
        dados = json.loads(texto)
    except json.JSONDecodeError as e:
        raise ErroEntrada(f"JSON malformado: {e.msg}", local=f"linha {e.lineno}, coluna {e.colno}") from e
    if not isinstance(dados, dict):
        raise ErroEntrada("documento deve ser um objeto JSON", local="$")
    return dados


def validar(modelo: type[Modelo], dados: dict) -> Modelo:
    try:
        return modelo.model_validate(dados)
    except ValidationError as e:
        erro = e.errors()[0]
        caminho = "$" + "".join(f"[{p}]" if isinstance(p, int) else f".{p}" for p in erro["loc"])
        raise ErroEntrada(f"esquema inválido: {erro['msg']}", local=caminho) from e


def e_triangulacao(dados: dict) -> bool:
    return "vertices" in dados and "facets" in dados


# ============================================
# CONVERSÕES
# ============================================

def grupo_de_doc(doc: GrupoDoc) -> GrupoFinito:
    return GrupoFinito(
        tuple(doc.elements),
        tuple(tuple(linha) for linha in doc.table),
        doc.identity,
        tuple(doc.w),
    )


def anel_de_doc(anel: str | AnelGrupoDoc) -> RingSpec:
    if isinstance(anel, AnelGrupoDoc):
        return RingSpec.anel_de_grupo(grupo_de_doc(anel.group))
    return RingSpec.f2() if anel == "F2" else RingSpec.inteiros()


def _matriz(linhas: list[list[int]], rows: int, cols: int, rotulo: str) -> IntMatrix:
    M = IntMatrix.from_rows(linhas, cols=cols if not linhas else None)
    if M.shape != (rows, cols):
        raise ErroEntrada(f"{rotulo} tem forma {M.shape}, esperado {(rows, cols)}", local=rotulo)
    return M


def complexo_de_doc(doc: ComplexoDoc) -> ChainComplex:
    """Sobre Z[π] as matrizes vêm na representação regular (blocos |π|×|π|)."""
    anel = anel_de_doc(doc.ring)
    ranks = {doc.lo + i: r for i, r in enumerate(doc.ranks)}
    t = anel.tamanho
    d = {}
    for chave, linhas in doc.d.items():
        r = int(chave)
        d[r] = _matriz(linhas, ranks.get(r - 1, 0) * t, ranks.get(r, 0) * t, f"$.d.{chave}")
    return ChainComplex(anel, doc.lo, doc.hi, ranks, d)


def _sinal_ordenacao(f: list[int]) -> int:
    sinal = 1
    for a in range(len(f)):
        for b in range(a + 1, len(f)):
            if f[a] > f[b]:
                sinal = -sinal
    return sinal


def triangulacao_de_doc(doc: TriangulacaoDoc) -> tuple[SimplicialComplex, list[int] | None]:
    """Complexo e, se houver orientação, o ciclo fundamental inteiro correspondente."""
    K = SimplicialComplex(tuple(doc.vertices), tuple(tuple(f) for f in doc.facets))
    if doc.orientation is None:
        return K, None
    n = K.dim
    ciclo = [0] * K.n_simplices(n)
    for f, s in zip(doc.facets, doc.orientation):
        if len(f) != n + 1:
            raise ErroEntrada("orientação só se aplica a complexos puros", local="$.orientation")
        ciclo[K.indice(sorted(f))] += s * _sinal_ordenacao(f)
    if any(boundary_matrix(K, n).apply(ciclo)):
        raise ErroMatematico("orientação dada não é um ciclo")
    return K, ciclo


def forma_de_doc(doc: FormaDoc) -> QuadraticForm:
    return QuadraticForm(
        IntMatrix.from_rows(doc.lam),
        list(doc.mu) if doc.mu is not None else None,
        doc.epsilon,
        2 if doc.ring == "F2" else 0,
    )


def wallmu_de_doc(doc: WallMuDoc) -> tuple[GrupoFinito, list[tuple[int, int]], int]:
    return grupo_de_doc(doc.group), [(p.g, p.sign) for p in doc.points], doc.m


def problema_de_doc(doc: ProblemaDoc) -> RefinementProblem:
    C = complexo_de_doc(doc.source)
    D = complexo_de_doc(doc.target)
    f = {}
    for chave, linhas in doc.f.items():
        r = int(chave)
        f[r] = _matriz(linhas, D.zrank(r), C.zrank(r), f"$.f.{chave}")
    XC, XD = TensorSquare(C), TensorSquare(D)
    phi_C = SymmetricClass(XC, doc.n, 0, doc.j, {int(s): v for s, v in doc.phi_C.items()})
    phi_D = SymmetricClass(XD, doc.n, 0, doc.j, {int(s): v for s, v in doc.phi_D_f.items()})
    return RefinementProblem(ChainMap(C, D, f), phi_C, phi_D)


# ============================================
# ATALHOS POR ARQUIVO
# ============================================

def carregar_complexo(caminho: str | Path) -> ChainComplex | SimplicialComplex:
    dados = ler_json(caminho)
    if e_triangulacao(dados):
        return triangulacao_de_doc(validar(TriangulacaoDoc, dados))[0]
    return complexo_de_doc(validar(ComplexoDoc, dados))


def carregar_triangulacao(caminho: str | Path) -> tuple[SimplicialComplex, list[int] | None]:
    return triangulacao_de_doc(validar(TriangulacaoDoc, ler_json(caminho)))


def carregar_forma(caminho: str | Path) -> QuadraticForm:
    return forma_de_doc(validar(FormaDoc, ler_json(caminho)))


def carregar_wallmu(caminho: str | Path) -> tuple[GrupoFinito, list[tuple[int, int]], int]:
    return wallmu_de_doc(validar(WallMuDoc, ler_json(caminho)))


def carregar_problema(caminho: str | Path) -> RefinementProblem:
    return problema_de_doc(validar(ProblemaDoc, ler_json(caminho)))


def carregar_golden(caminho: str | Path) -> dict:
    return ler_json(caminho)

"""Repositório de triangulações embutidas (catálogo por nome)."""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations, product

from src.core.errors import ErroEntrada
from src.services.simplicial import (
    Cocadeia,
    SimplicialComplex,
    disjoint_union,
    simplicial_suspension,
    staircase_product,
)

# facetas do RP² de 6 vértices, numeração a partir de 1
_RP2_6 = (
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
    (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4),
)

Face = tuple[tuple[int, int], ...]


def ponto() -> SimplicialComplex:
    return SimplicialComplex((0,), ((0,),))


def bordo_simplexo(n: int) -> SimplicialComplex:
    """∂Δ^n, uma triangulação de S^{n−1}."""
    if n < 1:
        raise ErroEntrada("∂Δ^n exige n ≥ 1")
    return SimplicialComplex(tuple(range(n + 1)), tuple(combinations(range(n + 1), n)))


def toro7() -> SimplicialComplex:
    facetas = []
    for i in range(7):
        facetas.append((i, (i + 1) % 7, (i + 3) % 7))
        facetas.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex(tuple(range(7)), tuple(facetas))


def rp2_minimo() -> SimplicialComplex:
    return SimplicialComplex(tuple(range(6)), tuple(tuple(v - 1 for v in f) for f in _RP2_6))


# ============================================
# RP^n = sd(∂ politopo cruzado) / ±
# ============================================

@dataclass(eq=False)
class ModeloProjetivo:
    """RP^n com cada vértice rotulado pela face (sinais canônicos) que representa."""

    n: int
    complexo: SimplicialComplex
    faces: list[Face]


def _canonica(face: Face) -> Face:
    face = tuple(sorted(face))
    if face[0][1] < 0:
        face = tuple((c, -s) for c, s in face)
    return face


def _rotulo(face: Face) -> str:
    return "".join(("+" if s > 0 else "-") + str(c) for c, s in face)


@lru_cache(maxsize=None)
def rp_cruzado(n: int) -> ModeloProjetivo:
    if n < 1:
        raise ErroEntrada("RP^n exige n ≥ 1")
    coords = n + 1
    faces: set[Face] = set()
    for tam in range(1, coords + 1):
        for sub in combinations(range(coords), tam):
            for sinais in product((1, -1), repeat=tam):
                faces.add(_canonica(tuple(zip(sub, sinais))))
    ordem = sorted(faces, key=lambda f: (len(f), f))
    indice = {f: i for i, f in enumerate(ordem)}
    facetas = set()
    for perm in permutations(range(coords)):
        for sinais in product((1, -1), repeat=coords):
            cadeia = tuple(
                indice[_canonica(tuple((perm[t], sinais[t]) for t in range(k + 1)))]
                for k in range(coords)
            )
            facetas.add(tuple(sorted(cadeia)))
    K = SimplicialComplex(tuple(_rotulo(f) for f in ordem), tuple(sorted(facetas)))
    return ModeloProjetivo(n, K, ordem)


def w1_projetivo(modelo: ModeloProjetivo) -> Cocadeia:
    """Cociclo de w_1: aresta vale 0 sse os representantes canônicos são comparáveis."""
    K = modelo.complexo
    valores = []
    for a, b in K.simplices[1]:
        fa, fb = set(modelo.faces[a]), set(modelo.faces[b])
        valores.append(0 if fa <= fb or fb <= fa else 1)
    return Cocadeia(1, valores, 2)


def esqueleto_projetivo(modelo: ModeloProjetivo, r: int) -> list[int]:
    """[RP^r] ⊂ RP^n: r-simplexos cujas faces usam só as coordenadas < r+1 (mod 2)."""
    K = modelo.complexo
    return [
        1 if all(c <= r for v in s for c, _ in modelo.faces[v]) else 0
        for s in K.simplices.get(r, ())
    ]


# ============================================
# CATÁLOGO
# ============================================

_SIMPLES = {
    "ponto": ponto,
    "point": ponto,
    "T2": toro7,
    "RP2": rp2_minimo,
}


@lru_cache(maxsize=None)
def obter(nome: str) -> SimplicialComplex:
    """Nomes: ponto, S<n>, T2, RP2, RP<n> (n ≥ 3), A+B, AxB, S(A)."""
    nome = nome.strip()
    if nome in _SIMPLES:
        return _SIMPLES[nome]()
    if nome.startswith("S(") and nome.endswith(")"):
        return simplicial_suspension(obter(nome[2:-1]))
    if "+" in nome:
        a, b = nome.split("+", 1)
        return disjoint_union(obter(a), obter(b))
    if "x" in nome:
        a, b = nome.split("x", 1)
        return staircase_product(obter(a), obter(b))
    m = re.fullmatch(r"S(\d+)", nome)
    if m:
        return bordo_simplexo(int(m.group(1)) + 1)
    m = re.fullmatch(r"RP(\d+)", nome)
    if m:
        return rp_cruzado(int(m.group(1))).complexo
    raise ErroEntrada(f"triangulação desconhecida: {nome}", local="--builtin")


def nomes() -> list[str]:
    return ["ponto", "S1", "S2", "S3", "T2", "RP2", "RP3", "RP4", "S1+S1", "S1xRP2", "S(RP2)"]

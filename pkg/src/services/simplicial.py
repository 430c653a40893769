"""
Complexos simpliciais ordenados e a construção simétrica em nível de cadeias.

φ_0 é a diagonal de Alexander–Whitney, φ_s (s ≥ 1) são homotopias cup-s
obtidas por modelos acíclicos no simplexo padrão Δ^n e transportadas para
cada simplexo pela ordem dos vértices. Relação verificada:

    d φ_s + (−1)^{s−1} φ_s ∂ + (−1)^{s−1} (1 + (−1)^s T) φ_{s−1} = 0
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Hashable, Iterable, Sequence

import pandas as pd

from src.core.errors import ErroEntrada, ErroMatematico, ErroNaoSuportado
from src.core.linalg import (
    AbelianGroupPresentation,
    BaseF2,
    bits,
    IntMatrix,
    homology_at,
    kernel_basis,
    reduzir,
)
from src.services.complexos import ChainComplex, ChainMap, RingSpec, TensorSquare, is_quasi_isomorphism, slant_map
from src.services.grupos_q import SymmetricClass

logger = logging.getLogger(__name__)

Simplexo = tuple[int, ...]
Tensor = dict[tuple[Simplexo, Simplexo], int]


# ============================================
# COMPLEXO SIMPLICIAL
# ============================================

@dataclass(eq=False)
class SimplicialComplex:
    """Vértices totalmente ordenados (pelo índice) e lista de facetas."""

    vertices: tuple[Hashable, ...]
    facets: tuple[Simplexo, ...]
    simplices: dict[int, list[Simplexo]] = field(init=False, repr=False)
    _indices: dict[Simplexo, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        nv = len(self.vertices)
        if nv == 0:
            raise ErroEntrada("complexo simplicial sem vértices")
        if len(set(self.vertices)) != nv:
            raise ErroEntrada("rótulos de vértices repetidos")
        facetas = []
        for f in self.facets:
            s = tuple(sorted(int(v) for v in f))
            if not s:
                raise ErroEntrada("faceta vazia")
            if len(set(s)) != len(s):
                raise ErroEntrada(f"faceta com vértice repetido: {f}")
            if s[0] < 0 or s[-1] >= nv:
                raise ErroEntrada(f"faceta com vértice inexistente: {f}")
            facetas.append(s)
        self.facets = tuple(sorted(set(facetas), key=lambda t: (len(t), t)))
        todos: set[Simplexo] = {(v,) for v in range(nv)}
        for f in self.facets:
            for r in range(1, len(f) + 1):
                todos.update(combinations(f, r))
        self.simplices = {}
        for s in todos:
            self.simplices.setdefault(len(s) - 1, []).append(s)
        self._indices = {}
        for r in self.simplices:
            self.simplices[r].sort()
            for i, s in enumerate(self.simplices[r]):
                self._indices[s] = i

    @property
    def dim(self) -> int:
        return max(self.simplices)

    def n_simplices(self, r: int) -> int:
        return len(self.simplices.get(r, ()))

    def f_vector(self) -> list[int]:
        return [self.n_simplices(r) for r in range(self.dim + 1)]

    def indice(self, simplexo: Sequence[int]) -> int:
        try:
            return self._indices[tuple(simplexo)]
        except KeyError as e:
            raise ErroEntrada(f"simplexo {tuple(simplexo)} não pertence ao complexo") from e

    def contem(self, simplexo: Sequence[int]) -> bool:
        return tuple(simplexo) in self._indices

    def faces_bits(self, r: int) -> list[int]:
        """Bordo mod 2 de cada r-simplexo como bitset sobre os (r−1)-simplexos."""
        res = []
        for s in self.simplices.get(r, ()):
            b = 0
            for i in range(len(s)):
                b ^= 1 << self._indices[s[:i] + s[i + 1:]]
            res.append(b)
        return res


def boundary_matrix(K: SimplicialComplex, r: int, modulo: int = 0) -> IntMatrix:
    linhas, colunas = K.n_simplices(r - 1), K.n_simplices(r)
    M = IntMatrix.zeros(linhas, colunas)
    if r <= 0:
        return M
    for j, s in enumerate(K.simplices.get(r, ())):
        for i in range(len(s)):
            M.data[K.indice(s[:i] + s[i + 1:])][j] += (-1) ** i
    return M.mod(modulo)


def chain_complex(K: SimplicialComplex, ring: RingSpec | None = None) -> ChainComplex:
    anel = ring or RingSpec.inteiros()
    if anel.e_grupo:
        raise ErroNaoSuportado("cadeias simpliciais só sobre Z ou F2")
    ranks = {r: K.n_simplices(r) for r in range(K.dim + 1)}
    d = {r: boundary_matrix(K, r, anel.modulo) for r in range(1, K.dim + 1)}
    return ChainComplex(anel, 0, K.dim, ranks, d)


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** r * n for r, n in enumerate(K.f_vector()))


def betti_f2(K: SimplicialComplex) -> list[int]:
    """Números de Betti mod 2 por eliminação em bitsets."""
    postos = [0] * (K.dim + 2)
    for r in range(1, K.dim + 1):
        base = BaseF2()
        for b in K.faces_bits(r):
            base.inserir(b)
        postos[r] = base.posto
    return [K.n_simplices(r) - postos[r] - postos[r + 1] for r in range(K.dim + 1)]


def semicharacteristic(K: SimplicialComplex, m: int) -> int:
    """χ_{1/2} = Σ_{i ≤ (m−1)/2} dim H_i(K; F2) mod 2."""
    if m % 2 == 0:
        raise ErroMatematico(f"semicaracterística exige dimensão ímpar (m = {m})")
    if K.dim != m:
        raise ErroMatematico(f"complexo de dimensão {K.dim}, esperado {m}")
    b = betti_f2(K)
    return sum(b[: (m - 1) // 2 + 1]) % 2


# ============================================
# OPERAÇÕES SOBRE COMPLEXOS
# ============================================

def disjoint_union(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    nk = len(K.vertices)
    vertices = tuple(("a", v) for v in K.vertices) + tuple(("b", v) for v in L.vertices)
    facetas = list(K.facets) + [tuple(v + nk for v in f) for f in L.facets]
    return SimplicialComplex(vertices, tuple(facetas))


def simplicial_suspension(K: SimplicialComplex) -> SimplicialComplex:
    """ΣK com dois ápices acrescentados ao fim da ordem."""
    n = len(K.vertices)
    vertices = tuple(K.vertices) + ("N", "S")
    facetas = [f + (n,) for f in K.facets] + [f + (n + 1,) for f in K.facets]
    return SimplicialComplex(vertices, tuple(facetas))


def suspender_cocadeia(K: SimplicialComplex, SK: SimplicialComplex, x: Cocadeia) -> Cocadeia:
    """Suspensão de uma cocadeia mod 2: σx(τ ∪ N) = x(τ), zero nos demais simplexos de ΣK."""
    apice = len(K.vertices)
    valores = []
    for s in SK.simplices.get(x.grau + 1, ()):
        valores.append(x.valores[K.indice(s[:-1])] % 2 if s[-1] == apice else 0)
    return Cocadeia(x.grau + 1, valores, 2)


def _caminhos(p: int, q: int) -> Iterable[list[tuple[int, int]]]:
    """Caminhos monótonos de (0,0) a (p,q)."""
    for passos in combinations(range(p + q), p):
        i = j = 0
        caminho = [(0, 0)]
        conjunto = set(passos)
        for t in range(p + q):
            if t in conjunto:
                i += 1
            else:
                j += 1
            caminho.append((i, j))
        yield caminho


def staircase_product(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Triangulação em escada de K × L; vértice (v, w) tem índice v·|L| + w."""
    nl = len(L.vertices)
    vertices = tuple((a, b) for a in K.vertices for b in L.vertices)
    facetas = []
    for f in K.facets:
        for g in L.facets:
            for caminho in _caminhos(len(f) - 1, len(g) - 1):
                facetas.append(tuple(f[i] * nl + g[j] for i, j in caminho))
    return SimplicialComplex(vertices, tuple(facetas))


def projecoes_produto(K: SimplicialComplex, L: SimplicialComplex) -> tuple[list[int], list[int]]:
    nl = len(L.vertices)
    total = len(K.vertices) * nl
    return [v // nl for v in range(total)], [v % nl for v in range(total)]


# ============================================
# COCADEIAS
# ============================================

@dataclass
class Cocadeia:
    grau: int
    valores: list[int]
    modulo: int = 0

    def __post_init__(self) -> None:
        self.valores = reduzir(self.valores, self.modulo)

    def __add__(self, outra: "Cocadeia") -> "Cocadeia":
        if self.grau != outra.grau or len(self.valores) != len(outra.valores):
            raise ErroEntrada("soma de cocadeias incompatíveis")
        return Cocadeia(self.grau, [a + b for a, b in zip(self.valores, outra.valores)], self.modulo)

    def e_zero(self) -> bool:
        return not any(self.valores)


def _checar(K: SimplicialComplex, x: Cocadeia) -> None:
    if len(x.valores) != K.n_simplices(x.grau):
        raise ErroEntrada(f"cocadeia de grau {x.grau} com {len(x.valores)} valores, esperado {K.n_simplices(x.grau)}")


def coboundary(K: SimplicialComplex, x: Cocadeia) -> Cocadeia:
    _checar(K, x)
    p = x.grau
    res = []
    for s in K.simplices.get(p + 1, ()):
        res.append(sum((-1) ** i * x.valores[K.indice(s[:i] + s[i + 1:])] for i in range(len(s))))
    return Cocadeia(p + 1, res, x.modulo)


def e_cociclo(K: SimplicialComplex, x: Cocadeia) -> bool:
    return coboundary(K, x).e_zero()


def cobordos_f2(K: SimplicialComplex, r: int) -> BaseF2:
    """Base (bitsets) de B^r(K; F2) = im δ_{r−1}."""
    base = BaseF2()
    if r <= 0:
        return base
    imagens: dict[int, int] = {}
    for j, s in enumerate(K.simplices.get(r, ())):
        for i in range(len(s)):
            f = K.indice(s[:i] + s[i + 1:])
            imagens[f] = imagens.get(f, 0) ^ (1 << j)
    for b in imagens.values():
        base.inserir(b)
    return base


def e_cobordo_f2(K: SimplicialComplex, x: Cocadeia, base: BaseF2 | None = None) -> bool:
    base = base or cobordos_f2(K, x.grau)
    return base.contem(bits(x.valores))


def cohomology(K: SimplicialComplex, r: int, ring: RingSpec | None = None) -> AbelianGroupPresentation:
    """H^r(K) pelas transpostas das matrizes de bordo (densas)."""
    anel = ring or RingSpec.inteiros()
    mod = anel.modulo
    d_in = boundary_matrix(K, r, mod).T
    d_out = boundary_matrix(K, r + 1, mod).T
    return homology_at(d_in, d_out, mod)


def cohomology_basis(K: SimplicialComplex, r: int, ring: RingSpec | None = None) -> list[Cocadeia]:
    anel = ring or RingSpec.inteiros()
    return [Cocadeia(r, g, anel.modulo) for g in cohomology(K, r, anel).geradores]


def evaluate(x: Cocadeia, ciclo: Sequence[int]) -> int:
    v = sum(a * b for a, b in zip(x.valores, ciclo))
    return v % x.modulo if x.modulo else v


def pullback(K: SimplicialComplex, L: SimplicialComplex, f: Sequence[int], x: Cocadeia) -> Cocadeia:
    """f*: C^p(L) → C^p(K) para f monótona nos vértices."""
    _checar(L, x)
    if len(f) != len(K.vertices):
        raise ErroEntrada("mapa de vértices com tamanho errado")
    res = []
    for s in K.simplices.get(x.grau, ()):
        imagem = tuple(f[v] for v in s)
        if any(imagem[i] > imagem[i + 1] for i in range(len(imagem) - 1)):
            raise ErroEntrada("mapa simplicial não preserva a ordem")
        if len(set(imagem)) < len(imagem):
            res.append(0)
        else:
            res.append(x.valores[L.indice(imagem)])
    return Cocadeia(x.grau, res, x.modulo)


def fundamental_cycle(K: SimplicialComplex, ring: RingSpec | None = None) -> list[int]:
    """Gerador de ker ∂_n; sobre F2, a soma de todos os n-simplexos."""
    anel = ring or RingSpec.inteiros()
    n = K.dim
    if anel.modulo == 2:
        ciclo = [1] * K.n_simplices(n)
        if any(boundary_matrix(K, n, 2).apply(ciclo)[i] % 2 for i in range(K.n_simplices(n - 1))):
            raise ErroMatematico("soma dos n-simplexos não é ciclo mod 2")
        return ciclo
    N = kernel_basis(boundary_matrix(K, n), 0)
    if N.cols != 1:
        raise ErroMatematico(f"ker ∂_{n} tem posto {N.cols}; ciclo fundamental ambíguo")
    ciclo = N.col(0)
    if ciclo and next(a for a in ciclo if a) < 0:
        ciclo = [-a for a in ciclo]
    return ciclo


# ============================================
# MODELOS NO SIMPLEXO PADRÃO
# ============================================

def _somar(destino: Tensor, chave: tuple[Simplexo, Simplexo], c: int) -> None:
    v = destino.get(chave, 0) + c
    if v:
        destino[chave] = v
    else:
        destino.pop(chave, None)


def _bordo(s: Simplexo) -> list[tuple[Simplexo, int]]:
    if len(s) == 1:
        return []
    return [(s[:i] + s[i + 1:], (-1) ** i) for i in range(len(s))]


def _d_tensor(t: Tensor) -> Tensor:
    """d(x⊗y) = x⊗∂y + (−1)^q ∂x⊗y."""
    res: Tensor = {}
    for (x, y), c in t.items():
        q = len(y) - 1
        for f, e in _bordo(y):
            _somar(res, (x, f), c * e)
        for f, e in _bordo(x):
            _somar(res, (f, y), c * e * (-1) ** q)
    return res


def _T(t: Tensor) -> Tensor:
    res: Tensor = {}
    for (x, y), c in t.items():
        _somar(res, (y, x), c * (-1) ** ((len(x) - 1) * (len(y) - 1)))
    return res


def _contracao(t: Tensor) -> Tensor:
    """H(x⊗y) = x⊗h(y) + h(x)⊗P(y), com h o cone a partir do vértice 0."""
    res: Tensor = {}
    for (x, y), c in t.items():
        if y[0] != 0:
            _somar(res, (x, (0,) + y), c)
        if len(y) == 1 and x[0] != 0:
            _somar(res, ((0,) + x, (0,)), c)
    return res


@lru_cache(maxsize=None)
def _modelo(s: int, n: int) -> tuple[tuple[tuple[Simplexo, Simplexo], int], ...]:
    """φ_s(ι_n) em C(Δ^n) ⊗ C(Δ^n)."""
    if s == 0:
        return tuple(
            ((tuple(range(p + 1)), tuple(range(p, n + 1))), (-1) ** (p * (n - p)))
            for p in range(n + 1)
        )
    b: Tensor = {}
    if n >= 1:
        anterior = _modelo(s, n - 1)
        for i in range(n + 1):
            face = [j if j < i else j + 1 for j in range(n)]
            for (x, y), c in anterior:
                _somar(b, (tuple(face[a] for a in x), tuple(face[a] for a in y)), c * (-1) ** i)
    prev = dict(_modelo(s - 1, n))
    for chave, c in prev.items():
        _somar(b, chave, c)
    for chave, c in _T(prev).items():
        _somar(b, chave, c * (-1) ** s)
    if s % 2:
        b = {k: -v for k, v in b.items()}
    if _d_tensor(b):
        raise ErroMatematico(f"modelo φ_{s}(Δ^{n}): termo a contrair não é ciclo")
    return tuple(sorted(_contracao(b).items()))


def _transportar(modelo, simplexo: Simplexo) -> Tensor:
    res: Tensor = {}
    for (x, y), c in modelo:
        _somar(res, (tuple(simplexo[a] for a in x), tuple(simplexo[a] for a in y)), c)
    return res


# ============================================
# CONSTRUÇÃO SIMÉTRICA
# ============================================

class IsovariantStructure:
    """φ_s: C(K) → (C(K)⊗C(K))_{*+s}, 0 ≤ s ≤ k−1."""

    def __init__(self, K: SimplicialComplex, k: int, ring: RingSpec | None = None) -> None:
        if k < 1:
            raise ErroEntrada("a construção simétrica exige k ≥ 1")
        self.K = K
        self.k = k
        self.ring = ring or RingSpec.inteiros()
        self._C: ChainComplex | None = None
        self._X: TensorSquare | None = None

    @property
    def C(self) -> ChainComplex:
        if self._C is None:
            self._C = chain_complex(self.K, self.ring)
        return self._C

    @property
    def X(self) -> TensorSquare:
        if self._X is None:
            self._X = TensorSquare(self.C)
        return self._X

    def phi(self, s: int, simplexo: Sequence[int]) -> Tensor:
        if not 0 <= s < self.k:
            raise ErroEntrada(f"φ_{s} fora de [0, {self.k - 1}]")
        simplexo = tuple(simplexo)
        return _transportar(_modelo(s, len(simplexo) - 1), simplexo)

    def phi_cadeia(self, s: int, cadeia: dict[Simplexo, int]) -> Tensor:
        res: Tensor = {}
        for simplexo, c in cadeia.items():
            if c:
                for chave, v in self.phi(s, simplexo).items():
                    _somar(res, chave, c * v)
        return res

    def vetor(self, t: Tensor, m: int) -> list[int]:
        """Coordenadas de um tensor esparso em (C⊗C)_m."""
        K, X = self.K, self.X
        v = [0] * X.posto(m)
        for (x, y), c in t.items():
            p = len(x) - 1
            v[X.indice(p, K.indice(x), K.indice(y), m=m)] += c
        return reduzir(v, self.ring.modulo)

    def matriz(self, s: int, r: int) -> IntMatrix:
        """φ_s em grau r: C_r → (C⊗C)_{r+s}."""
        colunas = [self.vetor(self.phi(s, sx), r + s) for sx in self.K.simplices.get(r, ())]
        return IntMatrix.from_columns(colunas, self.X.posto(r + s))

    def verificar(self) -> "IsovariantStructure":
        C, X, mod = self.C, self.X, self.ring.modulo
        for s in range(self.k):
            sinal = (-1) ** (s - 1)
            for r in range(C.lo, C.hi + 1):
                lado = X.diff(r + s) @ self.matriz(s, r)
                if r > C.lo:
                    lado = lado + (self.matriz(s, r - 1) @ C.diff(r)).scale(sinal)
                if s > 0:
                    N = X.norma(r + s - 1, (-1) ** s)
                    lado = lado + (N @ self.matriz(s - 1, r)).scale(sinal)
                if not lado.mod(mod).is_zero():
                    raise ErroMatematico(f"relação isovariante falha em s={s}, grau {r}")
        logger.debug("estrutura isovariante verificada até k=%d", self.k)
        return self


def symmetric_construction(K: SimplicialComplex, k: int, ring: RingSpec | None = None, verificar: bool = True) -> IsovariantStructure:
    est = IsovariantStructure(K, k, ring)
    return est.verificar() if verificar else est


# ============================================
# CUP, STEENROD E DUALIDADE
# ============================================

def cup_product(K: SimplicialComplex, x: Cocadeia, y: Cocadeia, verificar: bool = True) -> Cocadeia:
    """(x ∪ y)(σ) = ⟨x⊗y, φ_0σ⟩ = (−1)^{pq} x(frente) y(verso)."""
    _checar(K, x)
    _checar(K, y)
    if x.modulo != y.modulo:
        raise ErroEntrada("cocadeias com coeficientes diferentes")
    if verificar and not (e_cociclo(K, x) and e_cociclo(K, y)):
        raise ErroMatematico("cup product de cocadeia que não é cociclo")
    p, q = x.grau, y.grau
    sinal = (-1) ** (p * q)
    res = []
    for s in K.simplices.get(p + q, ()):
        res.append(sinal * x.valores[K.indice(s[: p + 1])] * y.valores[K.indice(s[p:])])
    return Cocadeia(p + q, res, x.modulo)


def steenrod_square(K: SimplicialComplex, i: int, x: Cocadeia, verificar: bool = True) -> Cocadeia:
    """Sq^i x (y) = ⟨x⊗x, φ_{r−i}(y)⟩ mod 2; zero para i > r."""
    _checar(K, x)
    if i < 0:
        raise ErroEntrada("Sq^i exige i ≥ 0")
    r = x.grau
    valores = reduzir(x.valores, 2)
    if i > r:
        return Cocadeia(r + i, [0] * K.n_simplices(r + i), 2)
    if verificar and not e_cociclo(K, Cocadeia(r, valores, 2)):
        raise ErroMatematico("Sq^i de cocadeia que não é cociclo")
    s = r - i
    res = []
    for y in K.simplices.get(r + i, ()):
        total = 0
        for (a, b), c in _transportar(_modelo(s, r + i), y).items():
            if len(a) == r + 1 and c % 2:
                total += valores[K.indice(a)] * valores[K.indice(b)]
        res.append(total % 2)
    return Cocadeia(r + i, res, 2)


def _cadeia(K: SimplicialComplex, ciclo: Sequence[int], n: int) -> dict[Simplexo, int]:
    if len(ciclo) != K.n_simplices(n):
        raise ErroEntrada(f"ciclo com {len(ciclo)} coeficientes, esperado {K.n_simplices(n)}")
    return {s: c for s, c in zip(K.simplices.get(n, ()), ciclo) if c}


def symmetric_poincare(
    K: SimplicialComplex, ciclo: Sequence[int], n: int, ring: RingSpec | None = None, k: int = 1
) -> tuple[ChainComplex, SymmetricClass]:
    """(C(K), φ') com φ'_s = (−1)^{ns} φ_s([K]) em Q^n_{[0,k−1]}."""
    est = IsovariantStructure(K, k, ring)
    mod = est.ring.modulo
    if any(reduzir(boundary_matrix(K, n, mod).apply(list(ciclo)), mod)):
        raise ErroMatematico("a classe fundamental dada não é ciclo")
    cadeia = _cadeia(K, ciclo, n)
    partes = {s: [(-1) ** (n * s) * a for a in est.vetor(est.phi_cadeia(s, cadeia), n + s)] for s in range(k)}
    classe = SymmetricClass(est.X, n, 0, k - 1, partes).verificar()
    return est.C, classe


def cap_map(classe: SymmetricClass) -> ChainMap:
    """φ_0 ∩ −: C^{n−*} → C, Φ_r = (bloco de φ_0 em C_{n−r}⊗C_r)ᵀ."""
    if classe.complexo.ring.e_grupo:
        raise ErroNaoSuportado("dualidade sobre Z[π] não implementada")
    return slant_map(classe.X, classe.phi[0], classe.n)


def verify_poincare_duality(classe: SymmetricClass) -> bool:
    return is_quasi_isomorphism(cap_map(classe))


def cohomology_ring_table(K: SimplicialComplex):
    """Tabela de produtos cup entre geradores de H^*(K; F2)."""
    f2 = RingSpec.f2()
    bases = {r: cohomology_basis(K, r, f2) for r in range(K.dim + 1)}
    grupos = {r: cohomology(K, r, f2) for r in range(K.dim + 1)}
    linhas = []
    for p in range(K.dim + 1):
        for q in range(p, K.dim + 1 - p):
            for a, x in enumerate(bases[p]):
                for b, y in enumerate(bases[q]):
                    produto = cup_product(K, x, y, verificar=False)
                    coords = grupos[p + q].cycle_coordinates(produto.valores)
                    linhas.append({"p": p, "q": q, "a": a, "b": b, "produto": list(coords)})
    return pd.DataFrame(linhas, columns=["p", "q", "a", "b", "produto"])

"""
Complexos de cadeias sobre anéis com involução.

Anéis: Z, F2 e Z[π] para π finito com caráter de orientação w. Sobre Z[π]
os módulos livres são guardados como Z-módulos pela representação regular
(índice j·|π| + g representa g·e_j) e as diferenciais como matrizes de
blocos inteiras.

Convenções de sinal:
  - dual:     d_{C^{n-*}, r} = (−1)^r d*_{n−r+1}
  - tensor:   d(x⊗y) = x⊗dy + (−1)^q dx⊗y   (y ∈ D_q)
  - T:        T(x⊗y) = (−1)^{pq} y⊗x
  - cone:     d_{C(f)} = (d_D, (−1)^r f; 0, d_C)
  - suspensão: (SC)_r = C_{r−1}, mesmas diferenciais
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Sequence

from src.core.errors import ErroEntrada, ErroMatematico, ErroNaoSuportado
from src.core.linalg import AbelianGroupPresentation, IntMatrix, homology_at

logger = logging.getLogger(__name__)


# ============================================
# GRUPOS FINITOS E ANÉIS
# ============================================

@dataclass(frozen=True)
class GrupoFinito:
    """Grupo dado por tabela de multiplicação e caráter de orientação."""

    elementos: tuple[str, ...]
    tabela: tuple[tuple[int, ...], ...]
    identidade: int
    w: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.elementos)
        if n == 0:
            raise ErroEntrada("grupo vazio")
        if len(self.tabela) != n or any(len(linha) != n for linha in self.tabela):
            raise ErroEntrada("tabela de multiplicação deve ser n×n")
        if any(not 0 <= x < n for linha in self.tabela for x in linha):
            raise ErroEntrada("tabela com índice inválido")
        if not 0 <= self.identidade < n:
            raise ErroEntrada("identidade fora do intervalo")
        e = self.identidade
        for a in range(n):
            if self.tabela[e][a] != a or self.tabela[a][e] != a:
                raise ErroMatematico("identidade não é neutra")
            if not any(self.tabela[a][b] == e for b in range(n)):
                raise ErroMatematico(f"elemento {self.elementos[a]} sem inverso")
        for a in range(n):
            for b in range(n):
                ab = self.tabela[a][b]
                for c in range(n):
                    if self.tabela[ab][c] != self.tabela[a][self.tabela[b][c]]:
                        raise ErroMatematico("tabela não é associativa")
        if len(self.w) != n or any(s not in (1, -1) for s in self.w):
            raise ErroEntrada("w deve ter um sinal ±1 por elemento")
        for a in range(n):
            for b in range(n):
                if self.w[self.tabela[a][b]] != self.w[a] * self.w[b]:
                    raise ErroMatematico("w não é homomorfismo")

    @property
    def ordem(self) -> int:
        return len(self.elementos)

    def mul(self, a: int, b: int) -> int:
        return self.tabela[a][b]

    def inv(self, a: int) -> int:
        e = self.identidade
        return next(b for b in range(self.ordem) if self.tabela[a][b] == e)

    @classmethod
    def trivial(cls) -> "GrupoFinito":
        return cls(("e",), ((0,),), 0, (1,))

    @classmethod
    def ciclico(cls, n: int, w: Sequence[int] | None = None) -> "GrupoFinito":
        elementos = tuple("e" if k == 0 else ("t" if k == 1 else f"t^{k}") for k in range(n))
        tabela = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
        return cls(elementos, tabela, 0, tuple(w) if w is not None else (1,) * n)


@dataclass(frozen=True)
class RingSpec:
    """INTEGERS, FIELD_F2 ou GROUP_RING(π, w)."""

    kind: str = "INTEGERS"
    grupo: GrupoFinito | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("INTEGERS", "FIELD_F2", "GROUP_RING"):
            raise ErroEntrada(f"anel desconhecido: {self.kind}")
        if (self.kind == "GROUP_RING") != (self.grupo is not None):
            raise ErroEntrada("GROUP_RING exige grupo (e só ele)")

    @classmethod
    def inteiros(cls) -> "RingSpec":
        return cls("INTEGERS")

    @classmethod
    def f2(cls) -> "RingSpec":
        return cls("FIELD_F2")

    @classmethod
    def anel_de_grupo(cls, grupo: GrupoFinito) -> "RingSpec":
        return cls("GROUP_RING", grupo)

    @property
    def modulo(self) -> int:
        return 2 if self.kind == "FIELD_F2" else 0

    @property
    def tamanho(self) -> int:
        """Posto sobre Z (ou F2) de um gerador livre."""
        return self.grupo.ordem if self.grupo is not None else 1

    @property
    def e_grupo(self) -> bool:
        return self.kind == "GROUP_RING"

    def _grupo(self) -> GrupoFinito:
        return self.grupo if self.grupo is not None else GrupoFinito.trivial()

    def nome(self) -> str:
        if self.kind == "INTEGERS":
            return "Z"
        if self.kind == "FIELD_F2":
            return "F2"
        return f"Z[π], |π|={self.grupo.ordem}"


Elemento = dict[int, int]


def _conjugado(a: Elemento, grupo: GrupoFinito) -> Elemento:
    """ā = Σ a(k) w(k) k^{-1}."""
    res: Elemento = {}
    for k, c in a.items():
        if c:
            kk = grupo.inv(k)
            res[kk] = res.get(kk, 0) + c * grupo.w[k]
    return res


def _entradas(M: IntMatrix, linhas: int, colunas: int, grupo: GrupoFinito) -> list[list[Elemento]]:
    """Entradas em Z[π] de uma matriz de blocos: a_ij = Σ_h M[(i,h),(j,e)]·h."""
    G, e = grupo.ordem, grupo.identidade
    res = []
    for i in range(linhas):
        linha = []
        for j in range(colunas):
            linha.append({h: M.data[i * G + h][j * G + e] for h in range(G) if M.data[i * G + h][j * G + e]})
        res.append(linha)
    return res


def _bloco(E: list[list[Elemento]], linhas: int, colunas: int, grupo: GrupoFinito) -> IntMatrix:
    """Matriz de blocos do mapa A-linear e_j ↦ Σ_i E[i][j] e_i (coluna (j,g) = g·a_ij)."""
    G = grupo.ordem
    M = IntMatrix.zeros(linhas * G, colunas * G)
    for i in range(linhas):
        for j in range(colunas):
            for y, c in E[i][j].items():
                for g in range(G):
                    M.data[i * G + grupo.mul(g, y)][j * G + g] += c
    return M


def transposta_conjugada(M: IntMatrix, anel: RingSpec) -> IntMatrix:
    """Dual de um mapa A-linear: transposta sobre Z/F2, transposta conjugada sobre Z[π]."""
    if not anel.e_grupo:
        return M.T
    G = anel.tamanho
    linhas, colunas = M.rows // G, M.cols // G
    E = _entradas(M, linhas, colunas, anel.grupo)
    Et = [[_conjugado(E[i][j], anel.grupo) for i in range(linhas)] for j in range(colunas)]
    return _bloco(Et, colunas, linhas, anel.grupo)


# ============================================
# COMPLEXOS, MAPAS E HOMOTOPIAS
# ============================================

@dataclass(eq=False)
class ChainComplex:
    """Complexo livre limitado; ``ranks`` são postos sobre o anel, ``d[r]``: grau r → r−1."""

    ring: RingSpec
    lo: int
    hi: int
    ranks: dict[int, int]
    d: dict[int, IntMatrix] = field(default_factory=dict)
    verificar: bool = field(default=True, repr=False)

    def __post_init__(self) -> None:
        G = self.ring.tamanho
        self.ranks = {r: int(self.ranks.get(r, 0)) for r in range(self.lo, self.hi + 1)}
        if any(v < 0 for v in self.ranks.values()):
            raise ErroEntrada("posto negativo")
        normalizado = {}
        for r in range(self.lo + 1, self.hi + 1):
            M = self.d.get(r)
            forma = (self.ranks[r - 1] * G, self.ranks[r] * G)
            if M is None:
                M = IntMatrix.zeros(*forma)
            if M.shape != forma:
                raise ErroEntrada(f"d_{r} tem forma {M.shape}, esperado {forma}")
            normalizado[r] = M.mod(self.ring.modulo)
        extras = set(self.d) - set(normalizado)
        if any(not self.d[r].is_zero() for r in extras if self.d[r].rows and self.d[r].cols):
            raise ErroEntrada(f"diferenciais fora do intervalo: {sorted(extras)}")
        self.d = normalizado
        if self.verificar:
            self._verificar()

    def _verificar(self) -> None:
        if self.ring.e_grupo:
            g = self.ring.grupo
            for r, M in self.d.items():
                E = _entradas(M, self.ranks[r - 1], self.ranks[r], g)
                if _bloco(E, self.ranks[r - 1], self.ranks[r], g) != M:
                    raise ErroEntrada(f"d_{r} não é Z[π]-linear")
        for r in range(self.lo + 2, self.hi + 1):
            if not (self.d[r - 1] @ self.d[r]).mod(self.ring.modulo).is_zero():
                raise ErroMatematico(f"d² ≠ 0 no grau {r}")

    # ---- construtores ----
    @classmethod
    def zero(cls, ring: RingSpec | None = None) -> "ChainComplex":
        return cls(ring or RingSpec.inteiros(), 0, -1, {})

    @classmethod
    def esfera(cls, m: int, ring: RingSpec | None = None, posto: int = 1) -> "ChainComplex":
        """S^m A: A^posto concentrado no grau m."""
        return cls(ring or RingSpec.inteiros(), m, m, {m: posto})

    # ---- acesso ----
    @property
    def graus(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def modulo(self) -> int:
        return self.ring.modulo

    def rank(self, r: int) -> int:
        return self.ranks.get(r, 0)

    def zrank(self, r: int) -> int:
        return self.rank(r) * self.ring.tamanho

    def diff(self, r: int) -> IntMatrix:
        M = self.d.get(r)
        if M is None:
            return IntMatrix.zeros(self.zrank(r - 1), self.zrank(r))
        return M

    def homology(self, r: int) -> AbelianGroupPresentation:
        return homology_at(self.diff(r + 1), self.diff(r), self.modulo)

    def e_zero(self) -> bool:
        return all(v == 0 for v in self.ranks.values())

    def suporte(self) -> tuple[int, int] | None:
        graus = [r for r in self.graus if self.rank(r)]
        return (min(graus), max(graus)) if graus else None

    def euler_characteristic(self) -> int:
        return sum((-1) ** r * self.rank(r) for r in self.graus)


@dataclass(eq=False)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    f: dict[int, IntMatrix]

    def __post_init__(self) -> None:
        if self.source.ring != self.target.ring:
            raise ErroEntrada("mapa entre anéis diferentes")
        graus = set(self.source.graus) | set(self.target.graus)
        normal = {}
        for r in graus:
            forma = (self.target.zrank(r), self.source.zrank(r))
            M = self.f.get(r)
            if M is None:
                M = IntMatrix.zeros(*forma)
            if M.shape != forma:
                raise ErroEntrada(f"f_{r} tem forma {M.shape}, esperado {forma}")
            normal[r] = M.mod(self.source.modulo)
        self.f = normal
        self._verificar()

    def at(self, r: int) -> IntMatrix:
        M = self.f.get(r)
        return M if M is not None else IntMatrix.zeros(self.target.zrank(r), self.source.zrank(r))

    def _verificar(self) -> None:
        mod = self.source.modulo
        for r in sorted(self.f):
            esquerda = self.target.diff(r) @ self.at(r)
            direita = self.at(r - 1) @ self.source.diff(r)
            if not (esquerda - direita).mod(mod).is_zero():
                raise ErroMatematico(f"f não é mapa de cadeias no grau {r}")

    @classmethod
    def identidade(cls, C: ChainComplex) -> "ChainMap":
        return cls(C, C, {r: IntMatrix.identity(C.zrank(r)) for r in C.graus})

    @classmethod
    def multiplicacao(cls, C: ChainComplex, c: int) -> "ChainMap":
        return cls(C, C, {r: IntMatrix.identity(C.zrank(r)).scale(c) for r in C.graus})


@dataclass(eq=False)
class ChainHomotopy:
    """h: f ≃ g com f − g = d h + h d; h_r: C_r → D_{r+1}."""

    f: ChainMap
    g: ChainMap
    h: dict[int, IntMatrix]

    def __post_init__(self) -> None:
        C, D = self.f.source, self.f.target
        if self.g.source is not C or self.g.target is not D:
            raise ErroEntrada("homotopia entre mapas com fonte/alvo distintos")
        for r in C.graus:
            forma = (D.zrank(r + 1), C.zrank(r))
            if self.h.get(r) is None:
                self.h[r] = IntMatrix.zeros(*forma)
            elif self.h[r].shape != forma:
                raise ErroEntrada(f"h_{r} tem forma {self.h[r].shape}, esperado {forma}")
        for r in C.graus:
            lado = D.diff(r + 1) @ self.at(r) + self.at(r - 1) @ C.diff(r)
            if not (self.f.at(r) - self.g.at(r) - lado).mod(C.modulo).is_zero():
                raise ErroMatematico(f"f − g ≠ dh + hd no grau {r}")

    def at(self, r: int) -> IntMatrix:
        M = self.h.get(r)
        if M is None:
            C, D = self.f.source, self.f.target
            return IntMatrix.zeros(D.zrank(r + 1), C.zrank(r))
        return M


# ============================================
# CONSTRUÇÕES ELEMENTARES
# ============================================

def dual(C: ChainComplex, n: int) -> ChainComplex:
    """C^{n−*}: grau r é C^{n−r}, d_r = (−1)^r d*_{n−r+1}."""
    if C.lo > C.hi:
        return ChainComplex.zero(C.ring)
    lo, hi = n - C.hi, n - C.lo
    ranks = {r: C.rank(n - r) for r in range(lo, hi + 1)}
    d = {}
    for r in range(lo + 1, hi + 1):
        M = transposta_conjugada(C.diff(n - r + 1), C.ring)
        d[r] = M.scale((-1) ** r)
    return ChainComplex(C.ring, lo, hi, ranks, d)


def suspension(C: ChainComplex) -> ChainComplex:
    if C.lo > C.hi:
        return ChainComplex.zero(C.ring)
    return ChainComplex(
        C.ring, C.lo + 1, C.hi + 1,
        {r + 1: C.rank(r) for r in C.graus},
        {r + 1: C.diff(r) for r in range(C.lo + 1, C.hi + 1)},
        verificar=False,
    )


def desuspension(C: ChainComplex, k: int) -> ChainComplex:
    """C_{*+k}."""
    if C.lo > C.hi:
        return ChainComplex.zero(C.ring)
    return ChainComplex(
        C.ring, C.lo - k, C.hi - k,
        {r - k: C.rank(r) for r in C.graus},
        {r - k: C.diff(r) for r in range(C.lo + 1, C.hi + 1)},
        verificar=False,
    )


@dataclass(eq=False)
class Cone:
    complexo: ChainComplex
    inclusao: ChainMap  # g = (1; 0): D → C(f)
    projecao: ChainMap  # h = (0 1): C(f) → SC


def cone(f: ChainMap) -> Cone:
    """C(f)_r = D_r ⊕ C_{r−1}, d = (d_D, (−1)^r f; 0, d_C)."""
    C, D = f.source, f.target
    graus = [r for r in list(D.graus) + [r + 1 for r in C.graus]]
    if not graus:
        Z = ChainComplex.zero(C.ring)
        return Cone(Z, ChainMap(D, Z, {}), ChainMap(Z, suspension(C), {}))
    lo, hi = min(graus), max(graus)
    ranks = {r: D.rank(r) + C.rank(r - 1) for r in range(lo, hi + 1)}
    d = {}
    for r in range(lo + 1, hi + 1):
        a, b = D.zrank(r - 1), C.zrank(r - 2)
        c1, c2 = D.zrank(r), C.zrank(r - 1)
        M = IntMatrix.zeros(a + b, c1 + c2)
        dD, dC, fr = D.diff(r), C.diff(r - 1), f.at(r - 1)
        s = (-1) ** r
        for i in range(a):
            M.data[i][:c1] = dD.data[i][:]
            M.data[i][c1:] = [s * x for x in fr.data[i]]
        for i in range(b):
            M.data[a + i][c1:] = dC.data[i][:]
        d[r] = M
    Cf = ChainComplex(C.ring, lo, hi, ranks, d)
    SC = suspension(C)
    g = {}
    h = {}
    for r in range(lo, hi + 1):
        nD, nC = D.zrank(r), C.zrank(r - 1)
        g[r] = IntMatrix(nD + nC, nD, [[1 if i == j else 0 for j in range(nD)] for i in range(nD + nC)])
        h[r] = IntMatrix(nC, nD + nC, [[1 if j == nD + i else 0 for j in range(nD + nC)] for i in range(nC)])
    return Cone(Cf, ChainMap(D, Cf, g), ChainMap(Cf, SC, h))


# ============================================
# PRODUTO TENSORIAL E INVOLUÇÃO
# ============================================

class _BaseTensorial:
    """Base lexicográfica (p, i, j, g) de (C ⊗_A D)_m."""

    def __init__(self, C: ChainComplex, D: ChainComplex) -> None:
        if C.ring != D.ring:
            raise ErroEntrada("tensor de complexos sobre anéis diferentes")
        self.C, self.D = C, D
        self.ring = C.ring
        self.G = C.ring.tamanho
        if C.lo > C.hi or D.lo > D.hi:
            self.lo, self.hi = 0, -1
        else:
            self.lo, self.hi = C.lo + D.lo, C.hi + D.hi
        self._offsets: dict[int, dict[int, int]] = {}
        self._postos: dict[int, int] = {}
        for m in range(self.lo, self.hi + 1):
            off, total = {}, 0
            for p in C.graus:
                q = m - p
                if D.lo <= q <= D.hi:
                    off[p] = total
                    total += C.rank(p) * D.rank(q) * self.G
            self._offsets[m] = off
            self._postos[m] = total

    def posto(self, m: int) -> int:
        return self._postos.get(m, 0)

    def indice(self, p: int, i: int, j: int, g: int = 0, m: int | None = None) -> int:
        """Índice de e_i ⊗ g·e_j (i ∈ C_p, j ∈ D_{m−p}) em (C⊗D)_m."""
        if m is None:
            raise ErroEntrada("grau total obrigatório")
        q = m - p
        return self._offsets[m][p] + (i * self.D.rank(q) + j) * self.G + g

    def termos(self, m: int):
        """Itera (p, q, i, j, g, índice) sobre a base de grau m."""
        for p, off in self._offsets.get(m, {}).items():
            q = m - p
            nD = self.D.rank(q)
            for i in range(self.C.rank(p)):
                for j in range(nD):
                    for g in range(self.G):
                        yield p, q, i, j, g, off + (i * nD + j) * self.G + g

    def diferencial(self, m: int) -> IntMatrix:
        C, D, G = self.C, self.D, self.G
        M = IntMatrix.zeros(self.posto(m - 1), self.posto(m))
        if not M.rows or not M.cols:
            return M
        grupo = C.ring._grupo()
        e = grupo.identidade
        for p, q, i, j, g, col in self.termos(m):
            # x ⊗ d(g e_j)
            if q - 1 >= D.lo and D.rank(q - 1):
                dD = D.diff(q)
                for linha in range(D.rank(q - 1) * G):
                    c = dD.data[linha][j * G + g]
                    if c:
                        l, h = divmod(linha, G)
                        M.data[self.indice(p, i, l, h, m - 1)][col] += c
            # (−1)^q Σ_l e_l ⊗ (conj(a_li) g) e_j
            if p - 1 >= C.lo and C.rank(p - 1):
                dC = C.diff(p)
                s = (-1) ** q
                for l in range(C.rank(p - 1)):
                    for k in range(G):
                        a = dC.data[l * G + k][i * G + e]
                        if a:
                            alvo = grupo.mul(grupo.inv(k), g)
                            M.data[self.indice(p - 1, l, j, alvo, m - 1)][col] += s * a * grupo.w[k]
        return M.mod(self.ring.modulo)


def tensor(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    """C ⊗_A D como complexo de Z-módulos (F2-módulos sobre F2)."""
    base = _BaseTensorial(C, D)
    anel = RingSpec.f2() if C.ring.kind == "FIELD_F2" else RingSpec.inteiros()
    if base.lo > base.hi:
        return ChainComplex.zero(anel)
    ranks = {m: base.posto(m) for m in range(base.lo, base.hi + 1)}
    d = {m: base.diferencial(m) for m in range(base.lo + 1, base.hi + 1)}
    return ChainComplex(anel, base.lo, base.hi, ranks, d)


class TensorSquare:
    """C ⊗_A C com a transposição com sinal T; blocos calculados sob demanda."""

    def __init__(self, C: ChainComplex) -> None:
        self.C = C
        self.base = _BaseTensorial(C, C)
        self.modulo = C.modulo
        self._d: dict[int, IntMatrix] = {}
        self._t: dict[int, IntMatrix] = {}

    @property
    def lo(self) -> int:
        return self.base.lo

    @property
    def hi(self) -> int:
        return self.base.hi

    def posto(self, m: int) -> int:
        return self.base.posto(m)

    def indice(self, p: int, i: int, j: int, g: int = 0, *, m: int) -> int:
        return self.base.indice(p, i, j, g, m)

    def diff(self, m: int) -> IntMatrix:
        if m not in self._d:
            self._d[m] = self.base.diferencial(m)
        return self._d[m]

    def T(self, m: int) -> IntMatrix:
        """T(e_i ⊗ g e_j) = (−1)^{pq} w(g) e_j ⊗ g^{-1} e_i."""
        if m not in self._t:
            grupo = self.C.ring._grupo()
            M = IntMatrix.zeros(self.posto(m), self.posto(m))
            for p, q, i, j, g, col in self.base.termos(m):
                linha = self.base.indice(q, j, i, grupo.inv(g), m)
                M.data[linha][col] = (-1) ** (p * q) * grupo.w[g]
            self._t[m] = M.mod(self.modulo)
        return self._t[m]

    def norma(self, m: int, eps: int) -> IntMatrix:
        """1 + eps·T em grau m."""
        return (IntMatrix.identity(self.posto(m)) + self.T(m).scale(eps)).mod(self.modulo)

    def como_complexo(self) -> ChainComplex:
        anel = RingSpec.f2() if self.modulo == 2 else RingSpec.inteiros()
        if self.lo > self.hi:
            return ChainComplex.zero(anel)
        ranks = {m: self.posto(m) for m in range(self.lo, self.hi + 1)}
        return ChainComplex(anel, self.lo, self.hi, ranks, {m: self.diff(m) for m in range(self.lo + 1, self.hi + 1)})

    def verificar(self) -> None:
        """T² = 1 e T·d = d·T em todos os graus."""
        mod = self.modulo
        for m in range(self.lo, self.hi + 1):
            T = self.T(m)
            if (T @ T).mod(mod) != IntMatrix.identity(self.posto(m)).mod(mod):
                raise ErroMatematico(f"T² ≠ 1 no grau {m}")
            if m > self.lo:
                if not (self.diff(m) @ T - self.T(m - 1) @ self.diff(m)).mod(mod).is_zero():
                    raise ErroMatematico(f"T não comuta com d no grau {m}")


def tensor_square_with_involution(C: ChainComplex) -> TensorSquare:
    X = TensorSquare(C)
    X.verificar()
    return X


def tensor_maps(f: ChainMap, g: ChainMap) -> dict[int, IntMatrix]:
    """(f⊗g)(x⊗y) = f(x)⊗g(y) entre (C⊗C')_m e (D⊗D')_m (sobre Z ou F2)."""
    if f.source.ring.e_grupo:
        raise ErroNaoSuportado("f⊗g sobre Z[π] não implementado")
    fonte = _BaseTensorial(f.source, g.source)
    alvo = _BaseTensorial(f.target, g.target)
    mod = f.source.modulo
    res = {}
    for m in range(min(fonte.lo, alvo.lo), max(fonte.hi, alvo.hi) + 1):
        M = IntMatrix.zeros(alvo.posto(m), fonte.posto(m))
        if M.rows and M.cols:
            for p, q, i, j, _g, col in fonte.termos(m):
                if p not in alvo._offsets.get(m, {}):
                    continue
                fp, gq = f.at(p), g.at(q)
                for a in range(fp.rows):
                    x = fp.data[a][i]
                    if not x:
                        continue
                    for b in range(gq.rows):
                        y = gq.data[b][j]
                        if y:
                            M.data[alvo.indice(p, a, b, 0, m)][col] += x * y
        res[m] = M.mod(mod)
    return res


# ============================================
# HOM, DIFERENÇA RELATIVA, QUASE-ISOMORFISMO
# ============================================

def hom(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    """Hom(C, D): grau r = ⊕_q Hom(C_q, D_{q+r}); d(φ) = d_D φ − (−1)^r φ d_C."""
    if C.ring.e_grupo:
        raise ErroNaoSuportado("Hom sobre Z[π] não implementado")
    if C.lo > C.hi or D.lo > D.hi:
        return ChainComplex.zero(C.ring)
    lo, hi = D.lo - C.hi, D.hi - C.lo

    def blocos(r: int) -> tuple[dict[int, int], int]:
        off, total = {}, 0
        for q in C.graus:
            off[q] = total
            total += D.rank(q + r) * C.rank(q)
        return off, total

    tabela = {r: blocos(r) for r in range(lo - 1, hi + 1)}
    offs = {r: tabela[r][0] for r in tabela}
    ranks = {r: tabela[r][1] for r in range(lo, hi + 1)}
    d = {}
    for r in range(lo + 1, hi + 1):
        M = IntMatrix.zeros(ranks[r - 1], ranks[r])
        sinal = -((-1) ** r)
        for q in C.graus:
            nb, na = C.rank(q), D.rank(q + r)
            for a in range(na):
                for b in range(nb):
                    col = offs[r][q] + a * nb + b
                    # d_D φ: e_b ↦ d(e_a) em D_{q+r−1}
                    dD = D.diff(q + r)
                    for a2 in range(D.rank(q + r - 1)):
                        c = dD.data[a2][a] if dD.rows else 0
                        if c:
                            M.data[offs[r - 1][q] + a2 * nb + b][col] += c
                    # −(−1)^r φ d_C: termo em Hom(C_{q+1}, D_{q+r})
                    if q + 1 <= C.hi:
                        dC = C.diff(q + 1)
                        nb2 = C.rank(q + 1)
                        for b2 in range(nb2):
                            c = dC.data[b][b2]
                            if c:
                                M.data[offs[r - 1][q + 1] + a * nb2 + b2][col] += sinal * c
        d[r] = M
    return ChainComplex(C.ring, lo, hi, ranks, d)


def relative_difference(h1: ChainHomotopy, h2: ChainHomotopy) -> ChainMap:
    """Diferença de duas homotopias f ≃ g: mapa SC → D, (−1)^r (h1 − h2)_{r−1}."""
    if h1.f is not h2.f or h1.g is not h2.g:
        raise ErroEntrada("homotopias entre pares de mapas distintos")
    C, D = h1.f.source, h1.f.target
    SC = suspension(C)
    mapas = {r: (h1.at(r - 1) - h2.at(r - 1)).scale((-1) ** r) for r in SC.graus}
    return ChainMap(SC, D, mapas)


def is_quasi_isomorphism(f: ChainMap) -> bool:
    """Verdadeiro sse o cone de f é acíclico (apenas Z e F2)."""
    if f.source.ring.e_grupo:
        raise ErroNaoSuportado("equivalência de cadeias sobre Z[π] não é decidida por homologia")
    Cf = cone(f).complexo
    for r in Cf.graus:
        if not Cf.homology(r).e_trivial:
            logger.debug("cone não acíclico no grau %d", r)
            return False
    return True


# ============================================
# COMPLEXOS ALEATÓRIOS (suítes de propriedades)
# ============================================

def complexo_aleatorio(
    rng: random.Random,
    max_posto: int = 3,
    max_grau: int = 3,
    max_total: int = 6,
    entradas: tuple[int, int] = (-2, 2),
) -> ChainComplex:
    """Complexo sobre Z com postos ≤ max_posto, graus em [0, max_grau], entradas no intervalo."""
    hi = rng.randint(1, max_grau)
    while True:
        ranks = {r: rng.randint(0, max_posto) for r in range(hi + 1)}
        if 0 < sum(ranks.values()) <= max_total:
            break
    d: dict[int, IntMatrix] = {}
    for r in range(1, hi + 1):
        linhas, colunas = ranks[r - 1], ranks[r]
        anterior = d.get(r - 1)
        cols = []
        for _ in range(colunas):
            col = [0] * linhas
            for _tentativa in range(12):
                cand = [rng.randint(*entradas) for _ in range(linhas)]
                if anterior is None or not any(anterior.apply(cand)):
                    col = cand
                    break
            cols.append(col)
        d[r] = IntMatrix.from_columns(cols, linhas)
    return ChainComplex(RingSpec.inteiros(), 0, hi, ranks, d)


def slant_map(X: TensorSquare, v: Sequence[int], n: int) -> ChainMap:
    """v ∈ (C⊗C)_n como mapa C^{n−*} → C: Φ_r = (bloco de v em C_{n−r}⊗C_r)ᵀ."""
    C = X.C
    if C.ring.e_grupo:
        raise ErroNaoSuportado("slant sobre Z[π] não implementado")
    if len(v) != X.posto(n):
        raise ErroEntrada(f"cadeia com {len(v)} coordenadas, esperado {X.posto(n)}")
    D = dual(C, n)
    mapas = {}
    for r in D.graus:
        q = n - r
        M = IntMatrix.zeros(C.rank(r), C.rank(q))
        for i in range(C.rank(q)):
            for j in range(C.rank(r)):
                M.data[j][i] = v[X.indice(q, i, j, m=n)]
        mapas[r] = M
    return ChainMap(D, C, mapas)

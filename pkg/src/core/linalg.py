"""
Álgebra linear inteira exata.

Forma normal de Smith (pivô de menor valor absoluto, inteiros de precisão
arbitrária), núcleos, resolução de sistemas e homologia de um termo
d_in → C → d_out. Tudo é denso e determinístico. O parâmetro ``modulo``
seleciona Z (0) ou F2 (2).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from src.core.errors import ErroEntrada, ErroMatematico
from src.utils.formatting import formatar_grupo

logger = logging.getLogger(__name__)

Vetor = list[int]


# ============================================
# MATRIZES
# ============================================

@dataclass(eq=False)
class IntMatrix:
    """Matriz inteira densa ``rows × cols`` guardada linha a linha."""

    rows: int
    cols: int
    data: list[list[int]]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ErroEntrada("dimensões negativas")
        if len(self.data) != self.rows or any(len(linha) != self.cols for linha in self.data):
            raise ErroEntrada(f"entradas incompatíveis com {self.rows}×{self.cols}")

    # ---- construtores ----
    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_rows(cls, linhas: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        dados = [[int(a) for a in linha] for linha in linhas]
        if cols is None:
            cols = len(dados[0]) if dados else 0
        return cls(len(dados), cols, dados)

    @classmethod
    def from_columns(cls, colunas: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        return cls(rows, len(colunas), [[int(c[i]) for c in colunas] for i in range(rows)])

    @classmethod
    def diagonal(cls, valores: Sequence[int]) -> "IntMatrix":
        n = len(valores)
        return cls(n, n, [[valores[i] if i == j else 0 for j in range(n)] for i in range(n)])

    # ---- acesso ----
    @property
    def entries(self) -> list[int]:
        return [a for linha in self.data for a in linha]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def col(self, j: int) -> Vetor:
        return [linha[j] for linha in self.data]

    def columns(self) -> list[Vetor]:
        return [self.col(j) for j in range(self.cols)]

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [linha[:] for linha in self.data])

    def to_list(self) -> list[list[int]]:
        return [linha[:] for linha in self.data]

    # ---- aritmética ----
    def __eq__(self, outro: object) -> bool:
        if not isinstance(outro, IntMatrix):
            return NotImplemented
        return self.shape == outro.shape and self.data == outro.data

    def __hash__(self) -> int:  # pragma: no cover - matrizes não vão para sets
        return hash((self.rows, self.cols, tuple(map(tuple, self.data))))

    def __matmul__(self, outro: "IntMatrix") -> "IntMatrix":
        if self.cols != outro.rows:
            raise ErroEntrada(f"produto {self.rows}×{self.cols} @ {outro.rows}×{outro.cols}")
        esparsas = [[(j, b) for j, b in enumerate(linha) if b] for linha in outro.data]
        res = []
        for linha in self.data:
            acc = [0] * outro.cols
            for k, a in enumerate(linha):
                if a:
                    for j, b in esparsas[k]:
                        acc[j] += a * b
            res.append(acc)
        return IntMatrix(self.rows, outro.cols, res)

    def apply(self, v: Sequence[int]) -> Vetor:
        if len(v) != self.cols:
            raise ErroEntrada(f"vetor de tamanho {len(v)} para matriz com {self.cols} colunas")
        nz = [(j, x) for j, x in enumerate(v) if x]
        return [sum(linha[j] * x for j, x in nz) for linha in self.data]

    def __add__(self, outro: "IntMatrix") -> "IntMatrix":
        self._mesma_forma(outro)
        return IntMatrix(self.rows, self.cols, [[a + b for a, b in zip(l1, l2)] for l1, l2 in zip(self.data, outro.data)])

    def __sub__(self, outro: "IntMatrix") -> "IntMatrix":
        self._mesma_forma(outro)
        return IntMatrix(self.rows, self.cols, [[a - b for a, b in zip(l1, l2)] for l1, l2 in zip(self.data, outro.data)])

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, [[c * a for a in linha] for linha in self.data])

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, [list(col) for col in zip(*self.data)] if self.rows else [[] for _ in range(self.cols)])

    def mod(self, modulo: int) -> "IntMatrix":
        if not modulo:
            return self
        return IntMatrix(self.rows, self.cols, [[a % modulo for a in linha] for linha in self.data])

    def is_zero(self) -> bool:
        return all(a == 0 for linha in self.data for a in linha)

    def select_columns(self, indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix(self.rows, len(indices), [[linha[j] for j in indices] for linha in self.data])

    def select_rows(self, indices: Sequence[int]) -> "IntMatrix":
        return IntMatrix(len(indices), self.cols, [self.data[i][:] for i in indices])

    def _mesma_forma(self, outro: "IntMatrix") -> None:
        if self.shape != outro.shape:
            raise ErroEntrada(f"formas diferentes: {self.shape} e {outro.shape}")


def hstack(*mats: IntMatrix, rows: int | None = None) -> IntMatrix:
    if not mats:
        return IntMatrix.zeros(rows or 0, 0)
    n = mats[0].rows
    if any(m.rows != n for m in mats):
        raise ErroEntrada("hstack com números de linhas diferentes")
    return IntMatrix(n, sum(m.cols for m in mats), [sum((m.data[i] for m in mats), []) for i in range(n)])


def vstack(*mats: IntMatrix, cols: int | None = None) -> IntMatrix:
    if not mats:
        return IntMatrix.zeros(0, cols or 0)
    c = mats[0].cols
    if any(m.cols != c for m in mats):
        raise ErroEntrada("vstack com números de colunas diferentes")
    return IntMatrix(sum(m.rows for m in mats), c, [linha[:] for m in mats for linha in m.data])


def reduzir(v: Iterable[int], modulo: int) -> Vetor:
    return [a % modulo for a in v] if modulo else list(v)


# ============================================
# FORMA NORMAL DE SMITH
# ============================================

@dataclass
class _FormaSmith:
    U: list[list[int]]
    D: list[list[int]]
    V: list[list[int]]
    U_inv: list[list[int]] | None
    V_inv: list[list[int]] | None
    rank: int
    diag: list[int]


def _identidade(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _forma_smith(M: IntMatrix, modulo: int = 0, inversas: bool = True) -> _FormaSmith:
    if modulo not in (0, 2):
        raise ErroEntrada(f"módulo não suportado: {modulo}")
    m, n = M.rows, M.cols
    A = [reduzir(linha, modulo) for linha in M.data]
    U, V = _identidade(m), _identidade(n)
    Ui = _identidade(m) if inversas else None
    Vi = _identidade(n) if inversas else None

    def _red(linha: list[int]) -> None:
        if modulo:
            for k in range(len(linha)):
                linha[k] %= modulo

    def troca_linhas(i: int, j: int) -> None:
        if i == j:
            return
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]
        if Ui is not None:
            for linha in Ui:
                linha[i], linha[j] = linha[j], linha[i]

    def troca_colunas(i: int, j: int) -> None:
        if i == j:
            return
        for linha in A:
            linha[i], linha[j] = linha[j], linha[i]
        for linha in V:
            linha[i], linha[j] = linha[j], linha[i]
        if Vi is not None:
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def soma_linha(dst: int, src: int, q: int) -> None:
        # linha dst += q · linha src
        a_d, a_s = A[dst], A[src]
        for k in range(n):
            if a_s[k]:
                a_d[k] += q * a_s[k]
        _red(a_d)
        u_d, u_s = U[dst], U[src]
        for k in range(m):
            if u_s[k]:
                u_d[k] += q * u_s[k]
        _red(u_d)
        if Ui is not None:
            for linha in Ui:
                if linha[dst]:
                    linha[src] -= q * linha[dst]
                    if modulo:
                        linha[src] %= modulo

    def soma_coluna(dst: int, src: int, q: int) -> None:
        # coluna dst += q · coluna src
        for linha in A:
            if linha[src]:
                linha[dst] += q * linha[src]
                if modulo:
                    linha[dst] %= modulo
        for linha in V:
            if linha[src]:
                linha[dst] += q * linha[src]
                if modulo:
                    linha[dst] %= modulo
        if Vi is not None:
            v_s, v_d = Vi[src], Vi[dst]
            for k in range(n):
                if v_d[k]:
                    v_s[k] -= q * v_d[k]
            _red(v_s)

    def nega_linha(i: int) -> None:
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]
        if Ui is not None:
            for linha in Ui:
                linha[i] = -linha[i]

    t = 0
    while t < min(m, n):
        pivo = None
        for i in range(t, m):
            linha = A[i]
            for j in range(t, n):
                a = linha[j]
                if a and (pivo is None or abs(a) < pivo[0]):
                    pivo = (abs(a), i, j)
                    if pivo[0] == 1:
                        break
            if pivo is not None and pivo[0] == 1:
                break
        if pivo is None:
            break
        troca_linhas(t, pivo[1])
        troca_colunas(t, pivo[2])
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                a = A[i][t]
                if a:
                    soma_linha(i, t, -(a // p))
            for j in range(t + 1, n):
                a = A[t][j]
                if a:
                    soma_coluna(j, t, -(a // p))
            # restos não nulos: traz o menor para o pivô e repete
            menor = None
            for i in range(t + 1, m):
                a = A[i][t]
                if a and (menor is None or abs(a) < menor[0]):
                    menor = (abs(a), i, None)
            for j in range(t + 1, n):
                a = A[t][j]
                if a and (menor is None or abs(a) < menor[0]):
                    menor = (abs(a), None, j)
            if menor is not None:
                if menor[1] is not None:
                    troca_linhas(t, menor[1])
                else:
                    troca_colunas(t, menor[2])
                continue
            if not modulo and abs(p) != 1:
                achou = None
                for i in range(t + 1, m):
                    if any(A[i][j] % p for j in range(t + 1, n)):
                        achou = i
                        break
                if achou is not None:
                    soma_linha(t, achou, 1)
                    continue
            break
        if A[t][t] < 0:
            nega_linha(t)
        t += 1

    diag = [A[i][i] for i in range(min(m, n))]
    return _FormaSmith(U=U, D=A, V=V, U_inv=Ui, V_inv=Vi, rank=t, diag=diag)


def smith_normal_form(M: IntMatrix, modulo: int = 0) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Devolve (U, D, V) com U·M·V = D diagonal, d_1 | d_2 | ..., U e V unimodulares."""
    logger.debug("SNF %dx%d (modulo=%d)", M.rows, M.cols, modulo)
    f = _forma_smith(M, modulo, inversas=False)
    return (
        IntMatrix(M.rows, M.rows, f.U),
        IntMatrix(M.rows, M.cols, f.D),
        IntMatrix(M.cols, M.cols, f.V),
    )


def kernel_basis(M: IntMatrix, modulo: int = 0) -> IntMatrix:
    """Base do núcleo (colunas de V a partir do posto)."""
    f = _forma_smith(M, modulo, inversas=False)
    indices = list(range(f.rank, M.cols))
    return IntMatrix(M.cols, len(indices), [[f.V[i][j] for j in indices] for i in range(M.cols)])


def rank(M: IntMatrix, modulo: int = 0) -> int:
    if modulo == 2:
        return posto_f2(M)
    return _forma_smith(M, modulo, inversas=False).rank


# ============================================
# SISTEMAS LINEARES
# ============================================

class SistemaLinear:
    """M·x = b sobre Z (ou F2), com a SNF de M calculada uma vez só."""

    def __init__(self, M: IntMatrix, modulo: int = 0) -> None:
        self.M = M
        self.modulo = modulo
        self._f = _forma_smith(M, modulo, inversas=False)

    def resolver(self, b: Sequence[int]) -> Vetor | None:
        if len(b) != self.M.rows:
            raise ErroEntrada(f"b tem tamanho {len(b)}, M tem {self.M.rows} linhas")
        f, mod = self._f, self.modulo
        c = [sum(u * x for u, x in zip(linha, b) if u) for linha in f.U]
        c = reduzir(c, mod)
        y = [0] * self.M.cols
        for i in range(f.rank):
            d = f.diag[i]
            if mod:
                y[i] = c[i] % mod
            else:
                if c[i] % d:
                    return None
                y[i] = c[i] // d
        if any(c[i] for i in range(f.rank, self.M.rows)):
            return None
        x = [sum(v * yy for v, yy in zip(linha, y) if yy) for linha in f.V]
        return reduzir(x, mod)

    def contem(self, b: Sequence[int]) -> bool:
        return self.resolver(b) is not None


def solve_linear(M: IntMatrix, b: Sequence[int], modulo: int = 0) -> Vetor | None:
    """Uma solução inteira de M·x = b (coordenadas de núcleo nulas), ou None."""
    return SistemaLinear(M, modulo).resolver(b)


# ============================================
# F2 COM BITSETS (complexos grandes)
# ============================================

class BaseF2:
    """Base escalonada de vetores de F2 guardados como inteiros (bitsets)."""

    def __init__(self) -> None:
        self._base: dict[int, int] = {}

    @property
    def posto(self) -> int:
        return len(self._base)

    def reduzir(self, v: int) -> int:
        while v:
            p = v.bit_length() - 1
            b = self._base.get(p)
            if b is None:
                return v
            v ^= b
        return 0

    def inserir(self, v: int) -> bool:
        v = self.reduzir(v)
        if v:
            self._base[v.bit_length() - 1] = v
            return True
        return False

    def contem(self, v: int) -> bool:
        return self.reduzir(v) == 0


def bits(v: Iterable[int]) -> int:
    x = 0
    for j, a in enumerate(v):
        if a & 1:
            x |= 1 << j
    return x


def posto_f2_bits(vetores: Iterable[int]) -> int:
    base = BaseF2()
    for v in vetores:
        base.inserir(v)
    return base.posto


def posto_f2(M: IntMatrix) -> int:
    return posto_f2_bits(bits(linha) for linha in M.data)


# ============================================
# HOMOLOGIA
# ============================================

@dataclass
class AbelianGroupPresentation:
    """Z^free_rank ⊕ ⊕ Z/d_i com o mapa de coordenadas de ciclos.

    As coordenadas saem na ordem (torção..., livre...). Sobre F2 o grupo
    aparece como torção (2, 2, ...).
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()
    modulo: int = 0
    geradores: list[Vetor] = field(default_factory=list)
    _d_saida: IntMatrix | None = field(default=None, repr=False)
    _projecao: IntMatrix | None = field(default=None, repr=False)
    _U: IntMatrix | None = field(default=None, repr=False)
    _indices: list[int] = field(default_factory=list, repr=False)
    _ordens: list[int] = field(default_factory=list, repr=False)

    @property
    def ordens(self) -> list[int]:
        """Ordem de cada coordenada (0 = livre)."""
        return list(self._ordens)

    @property
    def e_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def dimensao(self) -> int:
        return self.free_rank + len(self.torsion)

    def cycle_coordinates(self, z: Sequence[int]) -> tuple[int, ...]:
        if self._projecao is None:
            return ()
        if self._d_saida is not None and self._d_saida.rows:
            if any(reduzir(self._d_saida.apply(list(z)), self.modulo)):
                raise ErroMatematico("vetor não é ciclo")
        w = self._U.apply(self._projecao.apply(list(z)))
        coords = []
        for i, o in zip(self._indices, self._ordens):
            coords.append(w[i] % o if o else w[i])
        return tuple(coords)

    def e_fronteira(self, z: Sequence[int]) -> bool:
        return not any(self.cycle_coordinates(z))

    def __str__(self) -> str:
        return formatar_grupo(self)


def homology_at(d_in: IntMatrix, d_out: IntMatrix, modulo: int = 0) -> AbelianGroupPresentation:
    """Apresenta ker(d_out)/im(d_in)."""
    N = d_out.cols
    if d_in.rows != N:
        raise ErroEntrada(f"d_in chega em posto {d_in.rows}, d_out sai de posto {N}")
    if not (d_out @ d_in).mod(modulo).is_zero():
        raise ErroMatematico("not a complex: d_out·d_in ≠ 0")
    if N == 0:
        return AbelianGroupPresentation(modulo=modulo)
    logger.debug("homologia: d_in %s, d_out %s", d_in.shape, d_out.shape)
    f1 = _forma_smith(d_out, modulo)
    r = f1.rank
    k = N - r
    K = IntMatrix(N, k, [[f1.V[i][j] for j in range(r, N)] for i in range(N)])
    P = IntMatrix(k, N, [linha[:] for linha in f1.V_inv[r:]])
    B = (P @ d_in).mod(modulo)
    f2 = _forma_smith(B, modulo)
    t = f2.rank
    indices: list[int] = []
    ordens: list[int] = []
    torsao: list[int] = []
    livre = 0
    for i in range(k):
        if i < t:
            e = 1 if modulo else f2.diag[i]
            if e == 1:
                continue
            indices.append(i)
            ordens.append(e)
            torsao.append(e)
        else:
            indices.append(i)
            if modulo:
                ordens.append(modulo)
                torsao.append(modulo)
            else:
                ordens.append(0)
                livre += 1
    U2 = IntMatrix(k, k, f2.U)
    U2i = IntMatrix(k, k, f2.U_inv)
    geradores = [reduzir(K.apply(U2i.col(i)), modulo) for i in indices]
    return AbelianGroupPresentation(
        free_rank=livre,
        torsion=tuple(torsao),
        modulo=modulo,
        geradores=geradores,
        _d_saida=d_out,
        _projecao=P,
        _U=U2,
        _indices=indices,
        _ordens=ordens,
    )

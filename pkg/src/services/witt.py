"""
Invariantes de Witt, aritmética de Wall em Z[π], bi-graus e identidades de Hopf.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from sympy import Matrix

from src.core.errors import ErroEntrada, ErroMatematico
from src.core.linalg import AbelianGroupPresentation, IntMatrix, homology_at
from src.services.complexos import GrupoFinito, RingSpec
from src.services.simplicial import (
    SimplicialComplex,
    cohomology_basis,
    cup_product,
    evaluate,
    fundamental_cycle,
    semicharacteristic,
)
from src.utils.formatting import formatar_bigrau, formatar_q_epsilon

logger = logging.getLogger(__name__)


# ============================================
# Q_ε(Z)
# ============================================

@dataclass(frozen=True)
class ElementoQ:
    """Valor em Q_ε(Z): Z para ε = +1, Z/2 para ε = −1."""

    valor: int
    epsilon: int = 1

    def __post_init__(self) -> None:
        if self.epsilon not in (1, -1):
            raise ErroEntrada(f"ε deve ser ±1, recebido {self.epsilon}")
        if self.epsilon == -1:
            object.__setattr__(self, "valor", self.valor % 2)

    def __str__(self) -> str:
        return formatar_q_epsilon(self.valor, self.epsilon)


# ============================================
# FORMAS QUADRÁTICAS
# ============================================

@dataclass(eq=False)
class QuadraticForm:
    """(λ, μ) ε-quadrática sobre Z (modulo 0) ou F2 (modulo 2).

    μ = None descreve só a forma ε-simétrica λ. `torcao` guarda as ordens
    da torção descartada quando a forma vem de H^m de um complexo.
    """

    lam: IntMatrix
    mu: list[int] | None = None
    epsilon: int = 1
    modulo: int = 0
    torcao: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.epsilon not in (1, -1):
            raise ErroEntrada(f"ε deve ser ±1, recebido {self.epsilon}")
        if self.modulo not in (0, 2):
            raise ErroEntrada("anel da forma deve ser Z ou F2")
        if self.lam.rows != self.lam.cols:
            raise ErroEntrada(f"λ não é quadrada: {self.lam.shape}")
        self.lam = self.lam.mod(self.modulo)
        if not (self.lam - self.lam.T.scale(self.epsilon)).mod(self.modulo).is_zero():
            raise ErroMatematico("λ não é ε-simétrica")
        if self.mu is None:
            return
        if len(self.mu) != self.posto:
            raise ErroEntrada(f"μ com {len(self.mu)} valores, esperado {self.posto}")
        self.mu = [a % 2 if self.mod_mu == 2 else a for a in self.mu]
        for i, m in enumerate(self.mu):
            dif = self.lam.data[i][i] - (1 + self.epsilon) * m
            if (dif % self.modulo if self.modulo else dif) != 0:
                raise ErroMatematico(f"λ({i},{i}) ≠ (1+ε)μ({i})")

    @property
    def posto(self) -> int:
        return self.lam.rows

    @property
    def mod_mu(self) -> int:
        """Módulo de Q_ε: 2 para ε = −1 ou sobre F2, 0 (Z) caso contrário."""
        return 2 if (self.epsilon == -1 or self.modulo == 2) else 0

    def determinante(self) -> int:
        if not self.posto:
            return 1
        return int(Matrix(self.lam.to_list()).det())

    def e_nao_singular(self) -> bool:
        det = self.determinante()
        return det % 2 == 1 if self.modulo == 2 else det in (1, -1)

    def e_par(self) -> bool:
        return all(self.lam.data[i][i] % 2 == 0 for i in range(self.posto))

    def valor_mu(self, x: Sequence[int]) -> int:
        """μ(Σ x_i e_i) = Σ x_i² μ_i + Σ_{i<j} x_i x_j λ_ij em Q_ε."""
        if self.mu is None:
            raise ErroEntrada("forma sem refinamento quadrático μ")
        total = sum(x[i] * x[i] * self.mu[i] for i in range(self.posto))
        total += sum(
            x[i] * x[j] * self.lam.data[i][j]
            for i in range(self.posto) for j in range(i + 1, self.posto)
        )
        return total % self.mod_mu if self.mod_mu else total

    def soma(self, outra: "QuadraticForm") -> "QuadraticForm":
        """Soma ortogonal."""
        if (self.epsilon, self.modulo) != (outra.epsilon, outra.modulo):
            raise ErroEntrada("soma de formas com ε ou anel diferentes")
        r, s = self.posto, outra.posto
        L = IntMatrix.zeros(r + s, r + s)
        for i in range(r):
            L.data[i][:r] = list(self.lam.data[i])
        for i in range(s):
            L.data[r + i][r:] = list(outra.lam.data[i])
        mu = None if self.mu is None or outra.mu is None else self.mu + outra.mu
        return QuadraticForm(L, mu, self.epsilon, self.modulo)

    def negativa(self) -> "QuadraticForm":
        mu = None if self.mu is None else [-a for a in self.mu]
        return QuadraticForm(-self.lam, mu, self.epsilon, self.modulo)

    def mudar_base(self, P: IntMatrix) -> "QuadraticForm":
        """Forma nas colunas de P: λ' = Pᵀ λ P, μ'_i = μ(P e_i)."""
        L = P.T @ self.lam @ P
        mu = None if self.mu is None else [self.valor_mu(P.col(i)) for i in range(P.cols)]
        return QuadraticForm(L, mu, self.epsilon, self.modulo)

    @classmethod
    def hiperbolica(cls, epsilon: int = 1, modulo: int = 0, mu: Sequence[int] = (0, 0)) -> "QuadraticForm":
        return cls(IntMatrix.from_rows([[0, 1], [epsilon, 0]]), list(mu), epsilon, modulo)


def e8() -> QuadraticForm:
    """Forma E8 (positiva definida, par, unimodular)."""
    arestas = [(i, i + 1) for i in range(6)] + [(4, 7)]
    L = IntMatrix.identity(8).scale(2)
    for a, b in arestas:
        L.data[a][b] = L.data[b][a] = -1
    return QuadraticForm(L, [1] * 8, 1, 0)


# ============================================
# ASSINATURA, ARF, OBSTRUÇÃO
# ============================================

def signature(forma: QuadraticForm | IntMatrix) -> int:
    """Diagonalização racional por congruência (contagem de Sylvester)."""
    M = forma.lam if isinstance(forma, QuadraticForm) else forma
    if M.rows != M.cols or M != M.T:
        raise ErroEntrada("assinatura exige matriz simétrica")
    A = [[Fraction(a) for a in linha] for linha in M.data]
    r = M.rows
    positivos = negativos = 0
    for k in range(r):
        piv = next((i for i in range(k, r) if A[i][i] != 0), None)
        if piv is None:
            par = next(((i, j) for i in range(k, r) for j in range(i + 1, r) if A[i][j] != 0), None)
            if par is None:
                break
            i, j = par
            # e_i ← e_i + e_j deixa A_ii = 2A_ij ≠ 0
            for c in range(r):
                A[i][c] += A[j][c]
            for l in range(r):
                A[l][i] += A[l][j]
            piv = i
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            for linha in A:
                linha[k], linha[piv] = linha[piv], linha[k]
        p = A[k][k]
        for l in range(k + 1, r):
            c = A[l][k] / p
            if c:
                for t in range(k, r):
                    A[l][t] -= c * A[k][t]
                for t in range(k, r):
                    A[t][l] -= c * A[t][k]
        if p > 0:
            positivos += 1
        else:
            negativos += 1
    return positivos - negativos


def _reduzida_mod2(forma: QuadraticForm) -> QuadraticForm:
    if forma.mu is None:
        raise ErroEntrada("Arf exige μ")
    if forma.modulo != 2 and forma.epsilon != -1:
        raise ErroEntrada("Arf exige forma (−1)-quadrática ou sobre F2")
    return QuadraticForm(forma.lam.mod(2), [a % 2 for a in forma.mu], -1, 2)


def arf_democratico(forma: QuadraticForm) -> int:
    f = _reduzida_mod2(forma)
    uns = sum(f.valor_mu(x) for x in product((0, 1), repeat=f.posto))
    return 1 if 2 * uns > 2 ** f.posto else 0


def arf_simpletico(forma: QuadraticForm) -> int:
    """Arf = Σ μ(a_i)μ(b_i) numa base simplética {a_i, b_i}."""
    f = _reduzida_mod2(forma)

    def lam(x: list[int], y: list[int]) -> int:
        return sum(x[i] * f.lam.data[i][j] * y[j] for i in range(f.posto) for j in range(f.posto)) % 2

    vetores = [[1 if i == j else 0 for j in range(f.posto)] for i in range(f.posto)]
    total = 0
    while vetores:
        a = vetores.pop(0)
        idx = next((t for t, v in enumerate(vetores) if lam(a, v)), None)
        if idx is None:
            raise ErroMatematico("forma singular sobre F2")
        b = vetores.pop(idx)
        total += f.valor_mu(a) * f.valor_mu(b)
        novos = []
        for v in vetores:
            ca, cb = lam(v, b), lam(v, a)
            novos.append([(v[i] + ca * a[i] + cb * b[i]) % 2 for i in range(f.posto)])
        vetores = novos
    return total % 2


def arf(forma: QuadraticForm) -> int:
    f = _reduzida_mod2(forma)
    if not f.e_nao_singular():
        raise ErroMatematico("Arf de forma singular")
    if f.posto > 16:
        return arf_simpletico(f)
    valor = arf_democratico(f)
    if f.posto <= 6 and arf_simpletico(f) != valor:
        raise ErroMatematico("Arf democrático e simplético divergem")
    return valor


def l_group(n: int) -> str:
    """L_n(Z) = Z, 0, Z/2, 0 conforme n mod 4."""
    return ("Z", "0", "Z/2", "0")[n % 4]


def surgery_obstruction(forma: QuadraticForm, n: int) -> int:
    """σ* ∈ L_n(Z): assinatura/8 (n ≡ 0), Arf (n ≡ 2), 0 (n ímpar)."""
    if n % 2:
        return 0
    if not forma.e_nao_singular():
        raise ErroMatematico(f"forma singular (det {forma.determinante()})")
    if n % 4 == 0:
        if forma.modulo != 0 or forma.epsilon != 1:
            raise ErroEntrada("L_0(Z) exige forma simétrica sobre Z")
        if not forma.e_par():
            raise ErroMatematico("forma não par: sem classe em L_0(Z)")
        sig = signature(forma)
        if sig % 8:
            raise ErroMatematico(f"assinatura {sig} não divisível por 8")
        return sig // 8
    return arf(forma)


# ============================================
# AUTO-INTERSEÇÃO DE WALL
# ============================================

@dataclass(frozen=True)
class GroupRingElement:
    """Σ a_g g ∈ Z[π], coeficientes na ordem dos elementos do grupo."""

    grupo: GrupoFinito
    coef: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coef) != self.grupo.ordem:
            raise ErroEntrada(f"{len(self.coef)} coeficientes para grupo de ordem {self.grupo.ordem}")

    @classmethod
    def de_pontos(cls, grupo: GrupoFinito, pontos: Sequence[tuple[int, int]]) -> "GroupRingElement":
        coef = [0] * grupo.ordem
        for g, sinal in pontos:
            if not 0 <= g < grupo.ordem:
                raise ErroEntrada(f"índice de elemento inválido: {g}")
            if sinal not in (1, -1):
                raise ErroEntrada(f"sinal deve ser ±1, recebido {sinal}")
            coef[g] += sinal
        return cls(grupo, tuple(coef))

    def conjugado(self) -> "GroupRingElement":
        """x̄ = Σ a_g w(g) g⁻¹."""
        coef = [0] * self.grupo.ordem
        for g, a in enumerate(self.coef):
            coef[self.grupo.inv(g)] += self.grupo.w[g] * a
        return GroupRingElement(self.grupo, tuple(coef))

    def __add__(self, outro: "GroupRingElement") -> "GroupRingElement":
        return GroupRingElement(self.grupo, tuple(a + b for a, b in zip(self.coef, outro.coef)))

    def __str__(self) -> str:
        termos = []
        for g, a in enumerate(self.coef):
            if not a:
                continue
            nome = self.grupo.elementos[g]
            termos.append(nome if a == 1 else f"-{nome}" if a == -1 else f"{a}{nome}")
        return " + ".join(termos).replace("+ -", "- ") if termos else "0"


def _relacoes(grupo: GrupoFinito, epsilon: int) -> IntMatrix:
    """Colunas g − ε w(g) g⁻¹."""
    N = grupo.ordem
    M = IntMatrix.zeros(N, N)
    for g in range(N):
        M.data[g][g] += 1
        M.data[grupo.inv(g)][g] -= epsilon * grupo.w[g]
    return M


@dataclass(frozen=True)
class WallClass:
    grupo: GrupoFinito
    m: int
    coordenadas: tuple[int, ...]
    ordens: tuple[int, ...]
    representante: GroupRingElement

    @property
    def epsilon(self) -> int:
        return (-1) ** self.m

    def e_zero(self) -> bool:
        return not any(self.coordenadas)

    def valor_trivial(self) -> ElementoQ:
        """Redução em Q_ε(Z) quando π é trivial."""
        if self.grupo.ordem != 1:
            raise ErroEntrada("valor inteiro só para π trivial")
        return ElementoQ(self.coordenadas[0] if self.coordenadas else 0, self.epsilon)

    def __str__(self) -> str:
        if self.grupo.ordem == 1:
            return str(self.valor_trivial())
        return f"{self.representante} (coordenadas {self.coordenadas})"


def _quociente(grupo: GrupoFinito, m: int) -> AbelianGroupPresentation:
    return homology_at(_relacoes(grupo, (-1) ** m), IntMatrix.zeros(0, grupo.ordem))


def _forma_normal(x: GroupRingElement, m: int) -> GroupRingElement:
    """Menor levantamento na ordem lexicográfica dos índices.

    Em cada órbita {g, g⁻¹} com g ≠ g⁻¹ o coeficiente vai para o menor índice
    (g⁻¹ ≡ ε w(g) g); se g = g⁻¹ e ε w(g) = −1 o coeficiente fica em {0, 1}.
    """
    grupo, eps = x.grupo, (-1) ** m
    coef = list(x.coef)
    for g in range(grupo.ordem):
        h = grupo.inv(g)
        if h > g:
            coef[g] += eps * grupo.w[h] * coef[h]
            coef[h] = 0
        elif h == g and eps * grupo.w[g] == -1:
            coef[g] %= 2
    return GroupRingElement(grupo, tuple(coef))


def wall_mu_reduce(x: GroupRingElement, m: int) -> WallClass:
    """Classe de x em Z[π]/{y − (−1)^m ȳ}: coordenadas SNF e forma normal."""
    Q = _quociente(x.grupo, m)
    coords = Q.cycle_coordinates(list(x.coef))
    return WallClass(x.grupo, m, tuple(coords), tuple(Q.ordens), _forma_normal(x, m))


def wall_mu_from_double_points(grupo: GrupoFinito, pontos: Sequence[tuple[int, int]], m: int) -> WallClass:
    """μ(f) = Σ ±g_p sobre os pontos duplos (g, sinal)."""
    return wall_mu_reduce(GroupRingElement.de_pontos(grupo, pontos), m)


def lambda_mu_chi_check(lam: int, mu: WallClass | int, chi: int, m: int) -> bool:
    """λ(f,f) = (1+(−1)^m)μ(f) + χ(ν_f); para m ímpar confere só mod 2."""
    valor = mu.valor_trivial().valor if isinstance(mu, WallClass) else mu
    if m % 2 == 0:
        return lam == 2 * valor + chi
    return (lam - chi) % 2 == 0


# ============================================
# BI-GRAU
# ============================================

@dataclass(frozen=True)
class BiDegree:
    """(semigrau a, grau fixo b); o grau total é 2a + b."""

    a: int
    b: int

    def __str__(self) -> str:
        return formatar_bigrau(self.a, self.b)


def bidegree_of(dF: int, dG: int) -> BiDegree:
    if (dF - dG) % 2:
        raise ErroMatematico(f"deg(F) = {dF} e deg(G) = {dG} com paridades diferentes")
    return BiDegree((dF - dG) // 2, dG)


def bidegree_forget(p: BiDegree) -> int:
    return 2 * p.a + p.b


def bidegree_compose(p: BiDegree, q: BiDegree) -> BiDegree:
    return bidegree_of(bidegree_forget(p) * bidegree_forget(q), p.b * q.b)


def bidegree_smash(dF: int, bF: int, dG: int) -> BiDegree:
    """F equivariante (grau dF, grau fixo bF) smash G (grau dG)."""
    p = bidegree_of(dF, bF)
    return BiDegree(p.a * dG, bF * dG)


def bidegree_relative(dF1: int, dF2: int) -> BiDegree:
    """bi-grau(F1) − bi-grau(F2) quando ρ(F1) = ρ(F2)."""
    if (dF1 - dF2) % 2:
        raise ErroMatematico("graus com paridades diferentes")
    return BiDegree((dF1 - dF2) // 2, 0)


def bidegree_reduzido(p: BiDegree, dim_w: int) -> tuple[int, int]:
    """Imagem em Z/2 ⊕ Z/2 (dim W > 0) ou Z/2 × {0, 1} (W = 0)."""
    if dim_w > 0:
        return p.a % 2, p.b % 2
    if p.b not in (0, 1):
        raise ErroMatematico(f"com W = 0 o grau fixo é 0 ou 1, recebido {p.b}")
    return p.a % 2, p.b


# ============================================
# INVARIANTE DE HOPF
# ============================================

def hopf_of_degree(d: int) -> int:
    return d * (d - 1) // 2


def hopf_composite(dF: int, dG: int) -> int:
    """h(G∘F) = h(G)·d_F + d_G²·h(F)."""
    return hopf_of_degree(dG) * dF + dG * dG * hopf_of_degree(dF)


def hopf_sum(d1: int, d2: int) -> int:
    return hopf_of_degree(d1) + hopf_of_degree(d2) + d1 * d2


def curvatura_integra(m: int, valor: int, hopf: int = 0) -> ElementoQ:
    """χ/2 (m par) ou χ_{1/2} − Hopf (m ímpar)."""
    if m % 2 == 0:
        if valor % 2:
            raise ErroMatematico(f"χ = {valor} ímpar para m par")
        return ElementoQ(valor // 2, 1)
    if hopf % 2 and m not in (1, 3, 7):
        raise ErroMatematico(f"Hopf ≠ 0 só ocorre para m = 1, 3, 7 (m = {m})")
    return ElementoQ(valor - hopf, -1)


# ============================================
# SEMICARACTERÍSTICA VIA KÜNNETH
# ============================================

@dataclass
class ResultadoKunneth:
    mu: int
    semicaracteristica: int

    @property
    def ok(self) -> bool:
        return self.mu == self.semicaracteristica % 2

    def __bool__(self) -> bool:
        return self.ok


def kunneth_mu_check(K: SimplicialComplex, n: int) -> ResultadoKunneth:
    """μ([N]*) = Σ_{j<j'} λ(x_j, x_j')λ(y_j, y_j') contra χ_{1/2}(N)."""
    if n % 2 == 0:
        raise ErroEntrada(f"dimensão {n} par")
    f2 = RingSpec.f2()
    ciclo = fundamental_cycle(K, f2)
    base = [x for r in range(n + 1) for x in cohomology_basis(K, r, f2)]
    N = len(base)
    G = [[0] * N for _ in range(N)]
    for a, x in enumerate(base):
        for b, y in enumerate(base):
            if x.grau + y.grau == n:
                G[a][b] = evaluate(cup_product(K, x, y, verificar=False), ciclo) % 2
    gram = Matrix(G)
    if N == 0 or gram.det() % 2 == 0:
        raise ErroMatematico("pareamento de Poincaré singular: K não é variedade fechada sobre F2")
    inversa = gram.inv_mod(2)
    mu = sum(G[a][b] * int(inversa[a, b]) for a in range(N) for b in range(a + 1, N)) % 2
    logger.debug("Künneth: %d geradores, μ = %d", N, mu)
    return ResultadoKunneth(mu, semicharacteristic(K, n))

"""
Refinamento quadrático de estruturas simétricas.

Dado f: C → D com estruturas simétricas φ_C e φ_{D_f} (em [0, j]), a
obstrução θ = (f⊗f)φ_C − φ_{D_f} é um ciclo de Sym_n(D)[0, j]. Um
refinamento em ordem k é uma solução δ ∈ Sym_{n+1}(D)[−k, j] de
D δ = Jθ (θ estendida por zero). Daí sai ψ ∈ Quad_n(D)[0, k−1] com
ψ_t = (−1)^n δ_{−1−t}, e θ − (1+T)ψ = D(δ_{≥0}).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

from src.core.errors import ErroEntrada, ErroMatematico, ErroNaoSuportado
from src.core.linalg import IntMatrix, homology_at, reduzir, solve_linear
from src.services.complexos import ChainComplex, ChainMap, TensorSquare, cone, slant_map, tensor_maps
from src.services.grupos_q import (
    ComplexoTotal,
    GrupoQ,
    QuadraticClass,
    Suspensao,
    SymmetricClass,
    S_map,
    hyperquadratic_Q,
    k_estavel,
    quadratic_Q,
    symmetrization,
)
from src.services.witt import QuadraticForm

logger = logging.getLogger(__name__)


# ============================================
# PROBLEMA E OBSTRUÇÃO
# ============================================

@dataclass(eq=False)
class RefinementProblem:
    """f: C → D, φ_C em Sym_n(C)[0, j] e φ_{D_f} = φ_D·f em Sym_n(D)[0, j].

    φ_{D_f} entra pronta; a classe não calcula o produto φ_D·f.
    """

    f: ChainMap
    phi_C: SymmetricClass
    phi_D_f: SymmetricClass

    def __post_init__(self) -> None:
        if self.f.source.ring.e_grupo:
            raise ErroNaoSuportado("refinamento sobre Z[π] não implementado")
        if self.phi_C.complexo is not self.f.source or self.phi_D_f.complexo is not self.f.target:
            raise ErroEntrada("estruturas simétricas não vivem em C e D")
        if self.phi_C.n != self.phi_D_f.n:
            raise ErroEntrada(f"dimensões diferentes: {self.phi_C.n} e {self.phi_D_f.n}")
        faixa_c = (self.phi_C.i, self.phi_C.j)
        if faixa_c != (self.phi_D_f.i, self.phi_D_f.j) or faixa_c[0] != 0:
            raise ErroEntrada("φ_C e φ_{D_f} precisam da mesma faixa [0, j]")
        self.phi_C.verificar()
        self.phi_D_f.verificar()

    @property
    def n(self) -> int:
        return self.phi_C.n

    @property
    def j(self) -> int:
        return self.phi_C.j


def obstruction_theta(problema: RefinementProblem) -> SymmetricClass:
    """θ_s = (f⊗f)φ_{C,s} − φ_{D_f,s}."""
    f, n = problema.f, problema.n
    X_D = problema.phi_D_f.X
    F = tensor_maps(f, f)
    partes = {}
    for s in range(0, problema.j + 1):
        m = n + s
        imagem = F[m].apply(problema.phi_C.phi[s]) if m in F else [0] * X_D.posto(m)
        partes[s] = [a - b for a, b in zip(imagem, problema.phi_D_f.phi[s])]
    theta = SymmetricClass(X_D, n, 0, problema.j, partes)
    return theta.verificar()


# ============================================
# CERTIFICADO DE NULO-HOMOTOPIA
# ============================================

@dataclass(eq=False)
class CertificadoSuspenso:
    """S^kδ em Sym_{n+k+1}(S^kD)[0, j+k] com D(S^kδ) = S^kθ."""

    delta: SymmetricClass
    theta: SymmetricClass

    def verificar(self) -> bool:
        total = self.delta.total()
        esquerda = reduzir(total.diferencial(self.delta.n).apply(self.delta.vetor()), total.modulo)
        direita = total.empacotar(self.theta.n, self.theta.phi)
        return esquerda == reduzir(direita, total.modulo)


@dataclass(eq=False)
class NullHomotopyCertificate:
    """δ ∈ Sym_{n+1}(D)[−k, j] com D δ = Jθ."""

    theta: SymmetricClass
    k: int
    delta: dict[int, list[int]]

    def total(self) -> ComplexoTotal:
        return ComplexoTotal(self.theta.X, -self.k, self.theta.j, 1)

    def verificar(self) -> bool:
        T = self.total()
        n = self.theta.n
        esquerda = T.diferencial(n + 1).apply(T.empacotar(n + 1, self.delta))
        return reduzir(esquerda, T.modulo) == reduzir(T.empacotar(n, self.theta.phi), T.modulo)

    def suspended(self) -> CertificadoSuspenso:
        """Suspende k vezes: a nulo-homotopia vira d(S^kδ) = S^kθ em S^kD."""
        delta = SymmetricClass(self.theta.X, self.theta.n + 1, -self.k, self.theta.j, dict(self.delta))
        theta = SymmetricClass(self.theta.X, self.theta.n, 0, self.theta.j, dict(self.theta.phi))
        for _ in range(self.k):
            S = Suspensao(delta.X)
            delta = S_map(delta, S)
            theta = S_map(theta, S)
        return CertificadoSuspenso(delta, theta)


def solve_null_homotopy(theta: SymmetricClass, k: int) -> NullHomotopyCertificate | None:
    if k < 1:
        raise ErroEntrada(f"k deve ser ≥ 1, recebido {k}")
    if theta.i != 0:
        raise ErroEntrada("θ precisa estar na faixa [0, j]")
    T = ComplexoTotal(theta.X, -k, theta.j, 1)
    n = theta.n
    solucao = solve_linear(T.diferencial(n + 1), T.empacotar(n, theta.phi), T.modulo)
    if solucao is None:
        logger.debug("sem nulo-homotopia em ordem k=%d", k)
        return None
    cert = NullHomotopyCertificate(theta, k, T.desempacotar(n + 1, solucao))
    if not cert.verificar():
        raise ErroMatematico("solução do sistema não satisfaz D δ = Jθ")
    return cert


def quadratic_from_certificate(cert: NullHomotopyCertificate) -> QuadraticClass:
    """ψ_t = (−1)^n δ_{−1−t}; confere o fechamento e θ − (1+T)ψ = D(δ_{≥0})."""
    theta, k, n = cert.theta, cert.k, cert.theta.n
    X = theta.X
    sinal = (-1) ** n
    psi = QuadraticClass(X, n, 0, k - 1, {t: [sinal * a for a in cert.delta[-1 - t]] for t in range(k)})
    psi.verificar()

    sym = symmetrization(psi, theta.j)
    positivo = ComplexoTotal(X, 0, theta.j, 1)
    delta_pos = positivo.empacotar(n + 1, {s: cert.delta[s] for s in positivo.faixa})
    fronteira = positivo.diferencial(n + 1).apply(delta_pos)
    diferenca = [a - b for a, b in zip(theta.vetor(), sym.vetor())]
    if reduzir(fronteira, X.modulo) != reduzir(diferenca, X.modulo):
        raise ErroMatematico("(1+T)ψ não é homólogo a θ")
    return psi


# ============================================
# BUSCA EM k
# ============================================

@dataclass(eq=False)
class ResultadoRefinamento:
    theta: SymmetricClass
    k: int | None
    certificado: NullHomotopyCertificate | None = None
    psi: QuadraticClass | None = None
    obstrucao: GrupoQ | None = None
    coordenadas: tuple[int, ...] = ()

    @property
    def ok(self) -> bool:
        return self.psi is not None


def _obstrucao_hiperquadratica(theta: SymmetricClass) -> tuple[GrupoQ, tuple[int, ...]]:
    C = theta.complexo
    K = max(k_estavel(C, theta.n), theta.j + 1)
    grupo = hyperquadratic_Q(theta.X, theta.n, K)
    jtheta = SymmetricClass(theta.X, theta.n, -K, K - 1, dict(theta.phi))
    return grupo, grupo.coordenadas(jtheta)


def refine_theta(theta: SymmetricClass, kmax: int | None = None) -> ResultadoRefinamento:
    limite = kmax if kmax is not None else theta.n + 2
    if limite < 1:
        raise ErroEntrada(f"kmax deve ser ≥ 1, recebido {limite}")
    for k in range(1, limite + 1):
        cert = solve_null_homotopy(theta, k)
        if cert is not None:
            logger.info("refinamento encontrado com k=%d", k)
            return ResultadoRefinamento(theta, k, cert, quadratic_from_certificate(cert))
    grupo, coords = _obstrucao_hiperquadratica(theta)
    logger.warning("sem refinamento até k=%d; classe de Jθ em %s: %s", limite, grupo, coords)
    return ResultadoRefinamento(theta, None, obstrucao=grupo, coordenadas=coords)


def refine(problema: RefinementProblem, kmax: int | None = None) -> ResultadoRefinamento:
    return refine_theta(obstruction_theta(problema), kmax)


# ============================================
# EXEMPLOS EM S^0 Z (GRAU d)
# ============================================

def problema_grau(d: int) -> RefinementProblem:
    """f = d: S^0 Z → S^0 Z, φ_C = 1 e φ_{D_f} = d."""
    C = ChainComplex.esfera(0)
    X = TensorSquare(C)
    return RefinementProblem(
        ChainMap.multiplicacao(C, d),
        SymmetricClass(X, 0, 0, 0, {0: [1]}),
        SymmetricClass(X, 0, 0, 0, {0: [d]}),
    )


def valor_refinamento(d: int) -> int:
    """ψ_0 do refinamento de problema_grau(d) (k = 1)."""
    res = refine(problema_grau(d), kmax=1)
    if res.psi is None:
        raise ErroMatematico(f"grau {d} sem refinamento")
    return res.psi.psi[0][0]


# ============================================
# ESTRUTURA NO CONE
# ============================================

@dataclass(eq=False)
class ResultadoEspectral:
    psi: QuadraticClass
    grupo: GrupoQ
    coordenadas: tuple[int, ...]


def spectral_quadratic(problema: RefinementProblem, kmax: int | None = None) -> ResultadoEspectral:
    """ψ no cone de f: refina θ em D e empurra por g⊗g, g: D → C(f).

    O domínio de f já deve vir deslocado (C_{*+k}, ver desuspension).
    """
    res = refine(problema, kmax)
    if res.psi is None:
        raise ErroMatematico("θ não admite refinamento quadrático", local=f"k ≤ {kmax}")
    cn = cone(problema.f)
    g = cn.inclusao
    G = tensor_maps(g, g)
    Xc = TensorSquare(cn.complexo)
    n, k = problema.n, res.k
    K = max(k - 1, k_estavel(cn.complexo, n))

    def empurrar(m: int, v: list[int]) -> list[int]:
        return G[m].apply(v) if m in G else [0] * Xc.posto(m)

    psi = QuadraticClass(Xc, n, 0, K, {t: empurrar(n - t, res.psi.psi[t]) for t in range(k)}).verificar()

    theta_c = SymmetricClass(Xc, n, 0, res.theta.j, {s: empurrar(n + s, v) for s, v in res.theta.phi.items()})
    sym = symmetrization(psi, res.theta.j)
    diferenca = [a - b for a, b in zip(theta_c.vetor(), sym.vetor())]
    if not ComplexoTotal(Xc, 0, res.theta.j, 1).termo(n).e_fronteira(diferenca):
        raise ErroMatematico("(1+T)ψ no cone não restringe à estrutura simétrica empurrada")

    grupo = quadratic_Q(Xc, n, 0, K)
    return ResultadoEspectral(psi, grupo, grupo.coordenadas(psi))


# ============================================
# PAREAMENTOS E FORMAS
# ============================================

def ultraquadratic_pairing(psi: QuadraticClass) -> ChainMap:
    """ψ_0 (faixa [0, 0]) como mapa C^{n−*} → C."""
    if (psi.i, psi.j) != (0, 0):
        raise ErroEntrada("pareamento ultraquadrático exige ψ na faixa [0, 0]")
    if psi.complexo.ring.e_grupo:
        raise ErroNaoSuportado("pareamento sobre Z[π] não implementado")
    psi.verificar()
    return slant_map(psi.X, psi.psi[0], psi.n)


def _bloco_meio(X: TensorSquare, v: list[int], m: int) -> IntMatrix:
    """Bloco C_m⊗C_m de v ∈ (C⊗C)_{2m}, linhas no primeiro fator."""
    r = X.C.rank(m)
    return IntMatrix.from_rows([[v[X.indice(m, a, b, m=2 * m)] for b in range(r)] for a in range(r)]) if r else IntMatrix.zeros(0, 0)


def _base_cohomologia(C: ChainComplex, m: int) -> tuple[list[list[int]], tuple[int, ...]]:
    """Geradores de H^m (módulo torção sobre Z) e as ordens da torção."""
    grupo = homology_at(C.diff(m).T, C.diff(m + 1).T, C.modulo)
    if C.modulo == 2:
        return [list(g) for g in grupo.geradores], ()
    livres = [list(g) for g, o in zip(grupo.geradores, grupo.ordens) if o == 0]
    return livres, tuple(grupo.torsion)


def kernel_form(psi: QuadraticClass) -> QuadraticForm:
    """(λ, μ) em H^m: λ(x, y) = ⟨(1+T)ψ_0, x⊗y⟩ e μ(x) = ⟨ψ_0, x⊗x⟩ ∈ Q_ε, n = 2m."""
    C, n = psi.complexo, psi.n
    if C.ring.e_grupo:
        raise ErroNaoSuportado("forma sobre Z[π] não implementada")
    if n % 2:
        raise ErroEntrada(f"forma de núcleo exige dimensão par, recebido {n}")
    if psi.i != 0:
        raise ErroEntrada("ψ precisa começar em 0")
    psi.verificar()
    m = n // 2
    eps = (-1) ** m
    X = psi.X
    base, torcao = _base_cohomologia(C, m)
    if torcao:
        logger.warning("H^%d tem torção %s; forma tomada módulo torção", m, torcao)
    S = _bloco_meio(X, psi.psi[0], m)
    L = _bloco_meio(X, reduzir(X.norma(n, 1).apply(psi.psi[0]), X.modulo), m)

    def par(M: IntMatrix, x: list[int], y: list[int]) -> int:
        return sum(x[a] * M.data[a][b] * y[b] for a in range(M.rows) for b in range(M.cols) if M.data[a][b])

    r = len(base)
    lam = IntMatrix.from_rows([[par(L, x, y) for y in base] for x in base]) if r else IntMatrix.zeros(0, 0)
    mu = [par(S, x, x) for x in base]
    modulo = C.modulo
    for a in range(r):
        if reduzir([lam.data[a][a] - (1 + eps) * mu[a]], modulo) != [0]:
            raise ErroMatematico(f"λ(x, x) ≠ (1+ε)μ(x) no gerador {a}")
    forma = QuadraticForm(lam.mod(modulo), mu, eps, modulo, torcao)

    mod_mu = 2 if (eps == -1 or modulo == 2) else 0
    for a in range(r):
        for b in range(r):
            soma = [x + y for x, y in zip(base[a], base[b])]
            esperado = mu[a] + mu[b] + lam.data[a][b]
            if reduzir([par(S, soma, soma) - esperado], mod_mu) != [0]:
                raise ErroMatematico(f"μ(x+y) ≠ μ(x) + μ(y) + λ(x, y) para geradores {a}, {b}")
    return forma

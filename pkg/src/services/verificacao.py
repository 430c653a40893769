"""
Suítes de verificação (qgroups, steenrod, quadratic, witt).

Cada suíte registra linhas (suite, item, ok, detail) num ledger. Itens com
valor esperado comparam a forma impressa do resultado com ESPERADOS, que um
arquivo golden pode sobrescrever.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from math import comb
from typing import Callable

import pandas as pd

from src.core.errors import ErroEntrada, ErroHopf
from src.core.linalg import IntMatrix, posto_f2
from src.repositories import triangulacoes
from src.services.complexos import ChainComplex, ChainMap, GrupoFinito, RingSpec, TensorSquare, complexo_aleatorio
from src.services.grupos_q import (
    QuadraticClass,
    SymmetricClass,
    build_W,
    hyperquadratic_Q,
    les1_check,
    les3_check,
    quadratic_Q,
    reindex_check,
    suspension_iso_check,
    symmetric_Q,
    tabela_projetiva,
)
from src.services.quadratica import (
    RefinementProblem,
    kernel_form,
    problema_grau,
    refine,
    refine_theta,
    solve_null_homotopy,
    obstruction_theta,
    spectral_quadratic,
    ultraquadratic_pairing,
    valor_refinamento,
)
from src.services.simplicial import (
    Cocadeia,
    SimplicialComplex,
    cohomology_basis,
    cup_product,
    e_cobordo_f2,
    evaluate,
    fundamental_cycle,
    projecoes_produto,
    pullback,
    steenrod_square,
    suspender_cocadeia,
    symmetric_poincare,
    verify_poincare_duality,
)
from src.services.witt import (
    GroupRingElement,
    QuadraticForm,
    arf,
    bidegree_compose,
    bidegree_forget,
    bidegree_of,
    bidegree_smash,
    curvatura_integra,
    e8,
    hopf_composite,
    hopf_of_degree,
    hopf_sum,
    kunneth_mu_check,
    lambda_mu_chi_check,
    signature,
    surgery_obstruction,
    wall_mu_from_double_points,
    wall_mu_reduce,
)

logger = logging.getLogger(__name__)

COLUNAS = ["suite", "item", "ok", "detail"]

ESPERADOS: dict[str, str] = {
    "Q_4[0,2](S2)": "Z",
    "Q_6[0,2](S3)": "Z/2",
    "Q^6[0,1](S3)": "0",
    "Q^5[0,1](S3)": "Z/2",
    "Q^6[0,0](S3)": "Z",
    "Qhat^5(S3)": "Z/2",
    "Q^0(0)": "0",
    "Sq1 RP2": "nonzero",
    "E8 signature": "8",
    "E8 obstruction": "1",
    "figure-eight mu": "1 ∈ Z/2",
    "Z/3 t+t^2": "0",
    "reflection bidegree": "(-1, 1)",
    "smash bidegree": "(2, 2)",
    "h(2)": "1",
    "h(-1)": "1",
    "curvatura S2": "1 ∈ Z",
    "Q_4(cone 2 on S2)": "Z/2",
}

SUITES = ("qgroups", "steenrod", "quadratic", "witt")


@dataclass
class Verificador:
    rng: random.Random
    tentativas: int = 20
    esperados: dict[str, str] = field(default_factory=lambda: dict(ESPERADOS))
    linhas: list[dict] = field(default_factory=list)
    suite: str = ""

    def registrar(self, item: str, ok: bool, detalhe: str = "") -> bool:
        self.linhas.append({"suite": self.suite, "item": item, "ok": bool(ok), "detail": detalhe})
        if not ok:
            logger.info("falha em %s/%s: %s", self.suite, item, detalhe)
        return bool(ok)

    def comparar(self, item: str, calculado: object) -> bool:
        esperado = self.esperados.get(item)
        texto = str(calculado)
        if esperado is None:
            return self.registrar(item, False, f"sem valor esperado (calculado {texto})")
        return self.registrar(item, texto == esperado, f"calculado {texto}, esperado {esperado}")

    def executar(self, item: str, teste: Callable[[], bool | tuple[bool, str]]) -> bool:
        try:
            res = teste()
        except ErroHopf as e:
            return self.registrar(item, False, f"{type(e).__name__}: {e}")
        if isinstance(res, tuple):
            return self.registrar(item, res[0], res[1])
        return self.registrar(item, bool(res))

    def valor(self, item: str, calcular: Callable[[], object]) -> bool:
        try:
            calculado = calcular()
        except ErroHopf as e:
            return self.registrar(item, False, f"{type(e).__name__}: {e}")
        return self.comparar(item, calculado)

    def ledger(self) -> pd.DataFrame:
        return pd.DataFrame(self.linhas, columns=COLUNAS)


# ============================================
# QGROUPS
# ============================================

def _suite_qgroups(v: Verificador) -> None:
    tabela = tabela_projetiva(4, 5)
    divergencias = tabela[~tabela["ok"]]
    v.registrar("tabela projetiva", divergencias.empty, f"{len(divergencias)} divergências em {len(tabela)} entradas")

    S2, S3 = ChainComplex.esfera(2), ChainComplex.esfera(3)
    v.valor("Q_4[0,2](S2)", lambda: quadratic_Q(S2, 4, 0, 2))
    v.valor("Q_6[0,2](S3)", lambda: quadratic_Q(S3, 6, 0, 2))
    v.valor("Q^6[0,1](S3)", lambda: symmetric_Q(S3, 6, 0, 1))
    v.valor("Q^5[0,1](S3)", lambda: symmetric_Q(S3, 5, 0, 1))
    v.valor("Q^6[0,0](S3)", lambda: symmetric_Q(S3, 6, 0, 0))
    v.valor("Qhat^5(S3)", lambda: hyperquadratic_Q(S3, 5))
    v.valor("Q^0(0)", lambda: symmetric_Q(ChainComplex.zero(), 0))
    v.executar("W[-2,3] é complexo", lambda: build_W(-2, 3).verificar())

    for t in range(v.tentativas):
        C = complexo_aleatorio(v.rng)
        n = v.rng.randint(0, 2 * C.hi + 1)
        i = v.rng.randint(-1, 1)
        j = i + v.rng.randint(0, 2)
        k = j + v.rng.randint(0, 2)
        rotulo = f"aleatório {t} (n={n})"
        logger.debug("%s: postos %s", rotulo, C.ranks)

        def exato(resultado) -> tuple[bool, str]:
            return resultado.ok, "; ".join(resultado.diagnostico)

        v.executar(f"{rotulo}: les1 [{i},{j},{k}]", lambda: exato(les1_check(C, n, i, j, k)))
        v.executar(f"{rotulo}: les3", lambda: exato(les3_check(C, n)))
        v.executar(f"{rotulo}: suspensão", lambda: exato(suspension_iso_check(C, n)))
        v.executar(f"{rotulo}: reindexação [{i},{j}]", lambda: exato(reindex_check(C, n, i, j)))


# ============================================
# STEENROD E DUALIDADE
# ============================================

def _classe_nula(K: SimplicialComplex, *termos: Cocadeia) -> bool:
    soma = termos[0]
    for t in termos[1:]:
        soma = soma + t
    return e_cobordo_f2(K, Cocadeia(soma.grau, soma.valores, 2))


def _suite_steenrod(v: Verificador) -> None:
    f2 = RingSpec.f2()
    RP2 = triangulacoes.obter("RP2")
    x = cohomology_basis(RP2, 1, f2)[0]

    def sq1_rp2() -> str:
        sq = steenrod_square(RP2, 1, x)
        if _classe_nula(RP2, sq):
            return "zero"
        return "nonzero" if _classe_nula(RP2, sq, cup_product(RP2, x, x)) else "≠ x²"

    v.valor("Sq1 RP2", sq1_rp2)

    modelo = triangulacoes.rp_cruzado(4)
    K4 = modelo.complexo
    w = triangulacoes.w1_projetivo(modelo)
    potencias = {1: w}
    for r in range(2, 5):
        potencias[r] = cup_product(K4, potencias[r - 1], w, verificar=False)
    for r in range(1, 5):
        v.executar(f"RP4: ⟨x^{r}, [RP^{r}]⟩ = 1",
                   lambda r=r: evaluate(potencias[r], triangulacoes.esqueleto_projetivo(modelo, r)) % 2 == 1)
    for j in range(1, 5):
        for i in range(0, 5 - j):
            def binomial(i=i, j=j) -> tuple[bool, str]:
                sq = steenrod_square(K4, i, potencias[j], verificar=False)
                valor = evaluate(sq, triangulacoes.esqueleto_projetivo(modelo, i + j)) % 2
                return valor == comb(j, i) % 2, f"Sq^{i}(x^{j}) = {valor}·x^{i + j}"
            v.executar(f"RP4: Sq^{i}(x^{j}) = C({j},{i}) x^{i + j}", binomial)

    S1 = triangulacoes.obter("S1")
    P = triangulacoes.obter("S1xRP2")
    p1, p2 = projecoes_produto(S1, RP2)
    a = pullback(P, S1, p1, cohomology_basis(S1, 1, f2)[0])
    b = pullback(P, RP2, p2, x)

    def cartan() -> bool:
        ab = cup_product(P, a, b)
        return _classe_nula(
            P,
            steenrod_square(P, 1, ab),
            cup_product(P, steenrod_square(P, 1, a), b),
            cup_product(P, a, steenrod_square(P, 1, b)),
        )

    v.executar("Cartan Sq¹(ab) em S1xRP2", cartan)

    SK = triangulacoes.obter("S(RP2)")

    def suspensao() -> tuple[bool, str]:
        sx = suspender_cocadeia(RP2, SK, x)
        comuta = _classe_nula(SK, steenrod_square(SK, 1, sx), suspender_cocadeia(RP2, SK, steenrod_square(RP2, 1, x)))
        nao_nula = not _classe_nula(SK, steenrod_square(SK, 1, sx))
        return comuta and nao_nula, f"comuta={comuta}, Sq¹σx≠0={nao_nula}"

    v.executar("Sq¹ comuta com suspensão em S(RP2)", suspensao)

    T2 = triangulacoes.obter("T2")
    for y in cohomology_basis(T2, 1, f2):
        v.executar("Sq⁰ = id em H¹(T2)", lambda y=y: _classe_nula(T2, steenrod_square(T2, 0, y), y))

    for nome, anel in (("S2", RingSpec.inteiros()), ("T2", RingSpec.inteiros()), ("RP2", f2)):
        def dualidade(nome=nome, anel=anel) -> bool:
            K = triangulacoes.obter(nome)
            _C, classe = symmetric_poincare(K, fundamental_cycle(K, anel), K.dim, anel)
            return verify_poincare_duality(classe)
        v.executar(f"dualidade de Poincaré {nome} ({anel.nome()})", dualidade)


# ============================================
# QUADRATIC
# ============================================

def _theta_obstruida(m: int) -> SymmetricClass:
    X = TensorSquare(ChainComplex.esfera(m))
    return SymmetricClass(X, 2 * m - 1, 0, 2, {1: [1]}).verificar()


def _problema_esfera(m: int, grau: int) -> RefinementProblem:
    C = ChainComplex.esfera(m)
    X = TensorSquare(C)
    return RefinementProblem(
        ChainMap.multiplicacao(C, grau),
        SymmetricClass(X, 2 * m, 0, 0, {0: [1]}),
        SymmetricClass(X, 2 * m, 0, 0, {0: [grau]}),
    )


def _forma_f2(S: list[list[int]]) -> QuadraticForm:
    C = ChainComplex.esfera(1, RingSpec.f2(), posto=2)
    X = TensorSquare(C)
    psi0 = [0] * X.posto(2)
    for a in range(2):
        for b in range(2):
            psi0[X.indice(1, a, b, m=2)] = S[a][b]
    return kernel_form(QuadraticClass(X, 2, 0, 0, {0: psi0}))


def _suite_quadratic(v: Verificador) -> None:
    for d in range(-3, 4):
        v.executar(f"refinamento de grau {d} = d(d−1)/2",
                   lambda d=d: (valor_refinamento(d) == hopf_of_degree(d), f"ψ_0 = {valor_refinamento(d)}"))
    for d1 in range(-2, 3):
        for d2 in range(-2, 3):
            v.executar(f"composição {d2}∘{d1}",
                       lambda d1=d1, d2=d2: valor_refinamento(d1 * d2) == hopf_composite(d1, d2))

    for m in (1, 3):
        def obstruida(m=m) -> tuple[bool, str]:
            res = refine_theta(_theta_obstruida(m), kmax=8)
            return (not res.ok) and any(res.coordenadas), f"classe em {res.obstrucao}: {res.coordenadas}"
        v.executar(f"θ obstruída em S^{m}Z", obstruida)

    def suspenso() -> bool:
        cert = solve_null_homotopy(obstruction_theta(problema_grau(3)), 1)
        return cert is not None and cert.suspended().verificar()

    v.executar("certificado suspenso d(S^kδ) = S^kθ", suspenso)
    v.executar("refinamento em S²Z, f = 3", lambda: refine(_problema_esfera(2, 3)).ok)

    v.valor("Q_4(cone 2 on S2)", lambda: spectral_quadratic(_problema_esfera(2, 2)).grupo)
    v.executar("classe no cone de 2 não nula", lambda: any(spectral_quadratic(_problema_esfera(2, 2)).coordenadas))
    v.executar("f = 0 dá ψ = 0", lambda: spectral_quadratic(_problema_esfera(2, 0)).psi.e_zero())
    v.executar("f = id dá classe nula", lambda: not any(spectral_quadratic(_problema_esfera(2, 1)).coordenadas))

    def forma_kernel() -> tuple[bool, str]:
        f = _forma_f2([[1, 1], [0, 1]])
        return f.mu == [1, 1] and f.lam.to_list() == [[0, 1], [1, 0]] and arf(f) == 1, f"λ={f.lam.to_list()}, μ={f.mu}"

    v.executar("forma de núcleo F2 com Arf 1", forma_kernel)

    def forma_com_torcao() -> tuple[bool, str]:
        C = ChainComplex(RingSpec.inteiros(), 1, 2, {1: 1, 2: 2}, {2: IntMatrix.from_rows([[2, 0]])})
        X = TensorSquare(C)
        psi0 = [0] * X.posto(4)
        psi0[X.indice(2, 1, 1, m=4)] = 1
        f = kernel_form(QuadraticClass(X, 4, 0, 0, {0: psi0}))
        return f.torcao == (2,) and f.lam.to_list() == [[2]] and f.mu == [1], f"torção {f.torcao}, λ={f.lam.to_list()}"

    v.executar("forma de núcleo descarta torção Z/2 de H²", forma_com_torcao)


    def pareamento() -> bool:
        C = ChainComplex.esfera(2, posto=2)
        X = TensorSquare(C)
        S = [[1, 2], [0, 3]]
        psi0 = [0] * X.posto(4)
        for a in range(2):
            for b in range(2):
                psi0[X.indice(2, a, b, m=4)] = S[a][b]
        mapa = ultraquadratic_pairing(QuadraticClass(X, 4, 0, 0, {0: psi0}))
        return mapa.at(2).to_list() == IntMatrix.from_rows(S).T.to_list()

    v.executar("pareamento ultraquadrático em S²Z²", pareamento)


# ============================================
# WITT, WALL, HOPF
# ============================================

def _forma_par_aleatoria(rng: random.Random, posto: int) -> IntMatrix:
    L = IntMatrix.zeros(posto, posto)
    for a in range(posto):
        L.data[a][a] = 2 * rng.randint(-2, 2)
        for b in range(a + 1, posto):
            L.data[a][b] = L.data[b][a] = rng.randint(-3, 3)
    return L


def _inversivel_f2(rng: random.Random, n: int) -> IntMatrix:
    while True:
        P = IntMatrix.from_rows([[rng.randint(0, 1) for _ in range(n)] for _ in range(n)])
        if posto_f2(P) == n:
            return P


def _forma_f2_aleatoria(rng: random.Random) -> QuadraticForm:
    forma = None
    for _ in range(rng.randint(1, 3)):
        bloco = QuadraticForm.hiperbolica(-1, 2, (rng.randint(0, 1), rng.randint(0, 1)))
        forma = bloco if forma is None else forma.soma(bloco)
    return forma


def _suite_witt(v: Verificador) -> None:
    E8 = e8()
    v.valor("E8 signature", lambda: signature(E8))
    v.valor("E8 obstruction", lambda: surgery_obstruction(E8, 4))
    v.executar("hiperbólica tem assinatura 0", lambda: signature(QuadraticForm.hiperbolica()) == 0)
    v.executar("diag(1,1,−1): assinatura 1, não par",
               lambda: signature(IntMatrix.diagonal([1, 1, -1])) == 1
               and not QuadraticForm(IntMatrix.diagonal([1, 1, -1])).e_par())

    for t in range(v.tentativas):
        A = _forma_par_aleatoria(v.rng, v.rng.randint(1, 3))
        B = _forma_par_aleatoria(v.rng, v.rng.randint(1, 3))
        fa, fb = QuadraticForm(A), QuadraticForm(B)
        v.executar(f"assinatura aditiva {t}", lambda: signature(fa.soma(fb)) == signature(A) + signature(B))
        v.executar(f"assinatura de −forma {t}", lambda: signature(fa.negativa()) == -signature(A))

    for t in range(50):
        f, g = _forma_f2_aleatoria(v.rng), _forma_f2_aleatoria(v.rng)
        P = _inversivel_f2(v.rng, f.posto)
        v.executar(f"Arf aditivo {t}", lambda: arf(f.soma(g)) == (arf(f) + arf(g)) % 2)
        v.executar(f"Arf invariante por mudança de base {t}", lambda: arf(f.mudar_base(P)) == arf(f))

    trivial = GrupoFinito.trivial()
    z3 = GrupoFinito.ciclico(3)
    v.valor("figure-eight mu", lambda: wall_mu_from_double_points(trivial, [(0, 1)], 1))
    v.valor("Z/3 t+t^2", lambda: "0" if wall_mu_from_double_points(z3, [(1, 1), (2, 1)], 1).e_zero() else "≠ 0")
    for grupo, nome in ((z3, "Z/3"), (GrupoFinito.ciclico(4, (1, -1, 1, -1)), "Z/4 w≠1")):
        for m in (0, 1):
            def relacoes(grupo=grupo, m=m) -> bool:
                eps = (-1) ** m
                for g in range(grupo.ordem):
                    x = GroupRingElement.de_pontos(grupo, [(g, 1)])
                    r = x + GroupRingElement(grupo, tuple(-eps * a for a in x.conjugado().coef))
                    if not wall_mu_reduce(r, m).e_zero():
                        return False
                return True
            v.executar(f"relações de {nome} (m={m}) vão a zero", relacoes)

    v.valor("reflection bidegree", lambda: bidegree_of(-1, 1))
    v.valor("smash bidegree", lambda: bidegree_smash(3, 1, 2))
    for t in range(v.tentativas):
        p = bidegree_of(*_par_mesma_paridade(v.rng))
        q = bidegree_of(*_par_mesma_paridade(v.rng))
        v.executar(f"bi-grau: esquecer(composição) {t}",
                   lambda: bidegree_forget(bidegree_compose(p, q)) == bidegree_forget(p) * bidegree_forget(q)
                   and bidegree_compose(p, q).b == p.b * q.b)

    v.valor("h(2)", lambda: hopf_of_degree(2))
    v.valor("h(-1)", lambda: hopf_of_degree(-1))
    v.executar("identidades de Hopf |d| ≤ 10", lambda: all(
        hopf_of_degree(a * b) == hopf_composite(a, b) and hopf_of_degree(a + b) == hopf_sum(a, b)
        for a in range(-10, 11) for b in range(-10, 11)
    ))
    v.valor("curvatura S2", lambda: curvatura_integra(2, 2))
    v.executar("curvatura m ímpar", lambda: curvatura_integra(3, 1, 0).valor == 1 and curvatura_integra(3, 1, 1).valor == 0)
    v.executar("λ = 2μ + χ (m par)", lambda: lambda_mu_chi_check(8, 3, 2, 2) and not lambda_mu_chi_check(7, 3, 2, 2))

    for nome, n in (("S1", 1), ("S3", 3), ("S1+S1", 1)):
        def kunneth(nome=nome, n=n) -> tuple[bool, str]:
            r = kunneth_mu_check(triangulacoes.obter(nome), n)
            return r.ok, f"μ = {r.mu}, χ½ = {r.semicaracteristica}"
        v.executar(f"Künneth μ = χ½ em {nome}", kunneth)


def _par_mesma_paridade(rng: random.Random) -> tuple[int, int]:
    dG = rng.randint(-4, 4)
    return dG + 2 * rng.randint(-3, 3), dG


# ============================================
# EXECUÇÃO
# ============================================

_FUNCOES = {
    "qgroups": _suite_qgroups,
    "steenrod": _suite_steenrod,
    "quadratic": _suite_quadratic,
    "witt": _suite_witt,
}


def run_suite(
    suite: str,
    semente: int = 0,
    tentativas: int = 20,
    golden: dict[str, str] | None = None,
) -> pd.DataFrame:
    """Executa uma suíte (ou 'all') e devolve o ledger."""
    nomes = SUITES if suite == "all" else (suite,)
    if any(n not in _FUNCOES for n in nomes):
        raise ErroEntrada(f"suíte desconhecida: {suite}", local="check")
    esperados = dict(ESPERADOS)
    if golden:
        esperados.update({str(k): str(val) for k, val in golden.items()})
    v = Verificador(random.Random(semente), tentativas, esperados)
    for nome in nomes:
        logger.debug("suíte %s (semente %d)", nome, semente)
        v.suite = nome
        _FUNCOES[nome](v)
    return v.ledger()

"""
Comandos da linha de comando.

Cada `exibir_*` recebe os argumentos já interpretados e a configuração, e
devolve um Relatorio; a impressão e o código de saída ficam com o router.
"""
from __future__ import annotations

import argparse
import logging
import shlex
from dataclasses import dataclass

from src.core.config import Configuracao
from src.core.errors import ErroEntrada, ErroMatematico, FalhaVerificacao
from src.core.models import ComplexoDoc, TriangulacaoDoc
from src.repositories import documentos, triangulacoes
from src.services.complexos import ChainComplex, RingSpec
from src.services.grupos_q import hyperquadratic_Q, quadratic_Q, symmetric_Q, tabela_projetiva
from src.services.quadratica import refine, spectral_quadratic
from src.services.simplicial import (
    Cocadeia,
    SimplicialComplex,
    chain_complex,
    cohomology_basis,
    cup_product,
    e_cobordo_f2,
    fundamental_cycle,
    steenrod_square,
    symmetric_construction,
    symmetric_poincare,
    verify_poincare_duality,
)
from src.services.verificacao import SUITES, run_suite
from src.services.witt import (
    bidegree_of,
    curvatura_integra,
    hopf_composite,
    hopf_of_degree,
    hopf_sum,
    l_group,
    signature,
    surgery_obstruction,
    wall_mu_from_double_points,
)
from src.ui.relatorio import Relatorio
from src.utils.formatting import formatar_grupo, formatar_matriz, formatar_vetor, sobrescrito

logger = logging.getLogger(__name__)


# ============================================
# PARSER
# ============================================

def _comum() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="saída JSON (RelatorioDoc)")
    p.add_argument("--seed", type=int, default=None, help="semente das suítes aleatórias")
    p.add_argument("--kmax", type=int, default=None, help="limite de k no refinamento")
    p.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING...")
    p.add_argument("--csv", default=None, metavar="ARQUIVO", help="grava ledger/tabela em CSV")
    return p


def _entrada(p: argparse.ArgumentParser) -> None:
    p.add_argument("arquivo", nargs="?", help="documento JSON (complexo ou triangulação)")
    p.add_argument("--builtin", default=None, metavar="NOME", help="triangulação do catálogo")
    p.add_argument("--ring", choices=("Z", "F2"), default="Z")


def criar_parser() -> argparse.ArgumentParser:
    comum = _comum()
    parser = argparse.ArgumentParser(prog="hopf-chain", description="Álgebra em cadeias do invariante de Hopf geométrico.")
    sub = parser.add_subparsers(dest="comando", required=True)

    p = sub.add_parser("homology", parents=[comum], help="homologia por grau")
    _entrada(p)
    p.add_argument("--degree", type=int, default=None)

    p = sub.add_parser("qgroup", parents=[comum], help="Q-grupos simétricos, quadráticos e hiperquadráticos")
    _entrada(p)
    p.add_argument("--kind", choices=("sym", "quad", "hyper"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, default=0)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--k", type=int, default=None)

    p = sub.add_parser("sq", parents=[comum], help="quadrado de Steenrod Sq^i")
    _entrada(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--degree", type=int, default=1, help="grau da classe x")
    p.add_argument("--generator", type=int, default=0, help="índice do gerador de H^p(K; F2)")
    p.add_argument("--cocycle", default=None, help="valores da cocadeia, separados por vírgula")

    p = sub.add_parser("symmetric", parents=[comum], help="estrutura simétrica de Poincaré")
    _entrada(p)
    p.add_argument("--k", type=int, default=1)

    p = sub.add_parser("quadratic", parents=[comum], help="refinamento quadrático de um problema")
    p.add_argument("arquivo")
    p.add_argument("--spectral", action="store_true", help="empurra ψ para o cone de f")

    p = sub.add_parser("witt", parents=[comum], help="assinatura, Arf e obstrução de cirurgia")
    p.add_argument("arquivo")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("wallmu", parents=[comum], help="auto-interseção de Wall")
    p.add_argument("arquivo")

    p = sub.add_parser("hopf", parents=[comum], help="invariante de Hopf e bi-graus")
    p.add_argument("grau", type=int, nargs="?")
    p.add_argument("--compose", type=int, nargs=2, metavar=("dF", "dG"))
    p.add_argument("--sum", type=int, nargs=2, metavar=("d1", "d2"))
    p.add_argument("--bidegree", type=int, nargs=2, metavar=("dF", "dG"))
    p.add_argument("--curvatura", type=int, nargs="+", metavar="M VALOR [HOPF]")

    p = sub.add_parser("check", parents=[comum], help="suítes de verificação")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--golden", default=None, metavar="ARQUIVO")

    p = sub.add_parser("tabela", parents=[comum], help="tabela do espaço projetivo truncado")
    p.add_argument("--jmax", type=int, default=4)
    p.add_argument("--kmax-tabela", type=int, default=5)
    return parser


# ============================================
# ENTRADAS
# ============================================

@dataclass
class Entrada:
    complexo: ChainComplex
    triangulacao: SimplicialComplex | None = None
    ciclo: list[int] | None = None


def _anel(args) -> RingSpec:
    return RingSpec.f2() if args.ring == "F2" else RingSpec.inteiros()


def _carregar(args) -> Entrada:
    if args.builtin:
        K = triangulacoes.obter(args.builtin)
        return Entrada(chain_complex(K, _anel(args)), K)
    if not args.arquivo:
        raise ErroEntrada("informe um arquivo ou --builtin")
    dados = documentos.ler_json(args.arquivo)
    if documentos.e_triangulacao(dados):
        K, ciclo = documentos.triangulacao_de_doc(documentos.validar(TriangulacaoDoc, dados))
        return Entrada(chain_complex(K, _anel(args)), K, ciclo)
    return Entrada(documentos.complexo_de_doc(documentos.validar(ComplexoDoc, dados)))


def _triangulacao(args) -> Entrada:
    e = _carregar(args)
    if e.triangulacao is None:
        raise ErroEntrada("comando exige uma triangulação")
    return e


def _eco(args) -> str:
    return " ".join(shlex.quote(a) for a in getattr(args, "_argv", [args.comando]))


# ============================================
# COMANDOS
# ============================================

def exibir_homologia(args, config: Configuracao) -> Relatorio:
    rel = Relatorio(_eco(args))
    C = _carregar(args).complexo
    graus = [args.degree] if args.degree is not None else list(C.graus)
    grupos = {r: formatar_grupo(C.homology(r)) for r in graus}
    rel.adicionar("ring", C.ring.nome())
    rel.adicionar("homology", {str(r): g for r, g in grupos.items()})
    if grupos:
        rel.escrever(", ".join(f"H_{r} = {g}" for r, g in grupos.items()))
    else:
        rel.escrever("H_* = 0")
    return rel


def exibir_qgrupo(args, config: Configuracao) -> Relatorio:
    rel = Relatorio(_eco(args))
    C = _carregar(args).complexo
    if args.kind == "hyper":
        grupo = hyperquadratic_Q(C, args.n, args.k)
        nome = f"Q̂^{args.n}"
    else:
        j = args.j if args.j is not None else (args.k - 1 if args.k is not None else None)
        calc = symmetric_Q if args.kind == "sym" else quadratic_Q
        grupo = calc(C, args.n, args.i, j)
        nome = f"Q^{args.n}" if args.kind == "sym" else f"Q_{args.n}"
    a, b = grupo.faixa
    rel.adicionar("kind", args.kind)
    rel.adicionar("n", args.n)
    rel.adicionar("range", [a, b], f"truncamento [{a}, {b}]")
    rel.adicionar("group", str(grupo), f"{nome}[{a},{b}] = {grupo}")
    if grupo.metadados:
        rel.adicionar("meta", dict(grupo.metadados))
    return rel


def _classe_sq(K: SimplicialComplex, args) -> Cocadeia:
    if args.cocycle is not None:
        try:
            valores = [int(v) for v in args.cocycle.split(",") if v.strip()]
        except ValueError as e:
            raise ErroEntrada("cocadeia deve ser lista de inteiros", local="--cocycle") from e
        return Cocadeia(args.degree, valores, 2)
    base = cohomology_basis(K, args.degree, RingSpec.f2())
    if not 0 <= args.generator < len(base):
        raise ErroEntrada(f"H^{args.degree}(K; F2) tem {len(base)} geradores", local="--generator")
    return base[args.generator]


def exibir_sq(args, config: Configuracao) -> Relatorio:
    rel = Relatorio(_eco(args))
    K = _triangulacao(args).triangulacao
    x = _classe_sq(K, args)
    sq = steenrod_square(K, args.i, x)
    nome = f"Sq{sobrescrito(args.i)}x"
    nula = e_cobordo_f2(K, sq)
    rel.adicionar("cocycle", sq.valores)
    if nula:
        rel.adicionar("class", "zero", f"zero: {nome} = 0")
    elif args.i == x.grau:
        quadrado = cup_product(K, x, x)
        igual = e_cobordo_f2(K, sq + Cocadeia(quadrado.grau, quadrado.valores, 2))
        rel.adicionar("class", "nonzero", f"nonzero: {nome} = x²" if igual else f"nonzero: {nome} ≠ x²")
        rel.registrar("steenrod", "Sq^p x = x²", igual)
    else:
        rel.adicionar("class", "nonzero", f"nonzero: {nome}")
    return rel


def exibir_simetrica(args, config: Configuracao) -> Relatorio:
    rel = Relatorio(_eco(args))
    e = _triangulacao(args)
    K, anel = e.triangulacao, _anel(args)
    ciclo = e.ciclo if e.ciclo is not None else fundamental_cycle(K, anel)
    C, classe = symmetric_poincare(K, ciclo, K.dim, anel, args.k)
    grupo = symmetric_Q(C, K.dim, 0, args.k - 1)
    coords = grupo.coordenadas(classe)
    rel.adicionar("n", K.dim)
    rel.adicionar("group", str(grupo), f"Q^{K.dim}[0,{args.k - 1}](C(K)) = {grupo}")
    rel.adicionar("coordinates", list(coords), f"classe de φ: {formatar_vetor(coords)}")
    rel.registrar("symmetric", "φ_0: C^{n−*} → C quase-isomorfismo", verify_poincare_duality(classe))
    try:
        symmetric_construction(K, args.k, anel)
        isovariante, detalhe = True, f"s = 0..{args.k - 1}"
    except ErroMatematico as erro:
        isovariante, detalhe = False, str(erro)
    rel.registrar("symmetric", "dφ_s ± φ_s∂ ± (1 ± T)φ_{s−1} = 0", isovariante, detalhe)
    return rel


def exibir_quadratica(args, config: Configuracao) -> Relatorio:
    rel = Relatorio(_eco(args))
    problema = documentos.carregar_problema(args.arquivo)
    if args.spectral:
        res = spectral_quadratic(problema, config.kmax)
        rel.adicionar("group", str(res.grupo), f"Q_{problema.n}(C(f)) = {res.grupo}")
        rel.adicionar("coordinates", list(res.coordenadas), f"classe: {formatar_vetor(res.coordenadas)}")
        return rel
    res = refine(problema, config.kmax)
    if res.ok:
        rel.adicionar("k", res.k, f"k mínimo = {res.k}")
        rel.adicionar("psi", {str(t): v for t, v in res.psi.psi.items()})
        rel.registrar("quadratic", "certificado suspenso", res.certificado.suspended().verificar())
    else:
        rel.adicionar("k", None, "obstructed (hyperquadratic class nonzero)")
        rel.adicionar("obstruction", {"group": str(res.obstrucao), "coordinates": list(res.coordenadas)},
                      f"classe de Jθ em Q̂^{problema.n} = {res.obstrucao}: {formatar_vetor(res.coordenadas)}")
    return rel


def exibir_witt(args, config: Configuracao) -> Relatorio:
    rel = Relatorio(_eco(args))
    forma = documentos.carregar_forma(args.arquivo)
    n = args.n
    L = f"L_{n % 4}(Z)"
    rel.adicionar("lambda", forma.lam.to_list())
    partes = []
    if forma.modulo == 0 and forma.epsilon == 1:
        sig = signature(forma)
        rel.adicionar("signature", sig)
        partes.append(f"signature {sig}")
    if n % 4 == 0 and not forma.e_par():
        rel.adicionar("obstruction", None)
        partes.append(f"forma não par: sem classe em {L}")
    else:
        obs = surgery_obstruction(forma, n)
        rel.adicionar("obstruction", obs)
        rel.adicionar("l_group", l_group(n))
        partes.append(f"σ* = {obs} ∈ {L}")
    rel.escrever("; ".join(partes))
    logger.debug("forma %s", formatar_matriz(forma.lam.to_list()))
    return rel


def exibir_wallmu(args, config: Configuracao) -> Relatorio:
    rel = Relatorio(_eco(args))
    grupo, pontos, m = documentos.carregar_wallmu(args.arquivo)
    classe = wall_mu_from_double_points(grupo, pontos, m)
    rel.adicionar("coordinates", list(classe.coordenadas))
    rel.adicionar("orders", list(classe.ordens))
    rel.adicionar("mu", str(classe), f"μ = {classe}")
    return rel


def exibir_hopf(args, config: Configuracao) -> Relatorio:
    rel = Relatorio(_eco(args))
    if args.grau is not None:
        rel.adicionar("h", hopf_of_degree(args.grau), f"h = {hopf_of_degree(args.grau)}")
    if args.compose:
        dF, dG = args.compose
        rel.adicionar("h_composite", hopf_composite(dF, dG), f"h(G∘F) = {hopf_composite(dF, dG)}")
    if args.sum:
        d1, d2 = args.sum
        rel.adicionar("h_sum", hopf_sum(d1, d2), f"h(d1+d2) = {hopf_sum(d1, d2)}")
    if args.bidegree:
        p = bidegree_of(*args.bidegree)
        rel.adicionar("bidegree", [p.a, p.b], f"bi-grau = {p}")
    if args.curvatura:
        if len(args.curvatura) not in (2, 3):
            raise ErroEntrada("--curvatura espera M VALOR [HOPF]", local="--curvatura")
        valor = curvatura_integra(*args.curvatura)
        rel.adicionar("curvatura", valor.valor, f"curvatura integra = {valor}")
    if not rel.valores:
        raise ErroEntrada("nada a calcular: informe um grau ou uma opção", local="hopf")
    return rel


def exibir_verificacao(args, config: Configuracao) -> Relatorio:
    rel = Relatorio(_eco(args))
    golden = documentos.carregar_golden(args.golden) if args.golden else None
    ledger = run_suite(args.suite, config.semente, config.tentativas, golden)
    rel.adicionar("suite", args.suite)
    rel.adicionar("seed", config.semente)
    rel.usar_ledger(ledger)
    if rel.falhas:
        raise FalhaVerificacao(f"{rel.falhas} verificação(ões) falharam", relatorio=rel, local=args.suite)
    return rel


def exibir_tabela(args, config: Configuracao) -> Relatorio:
    rel = Relatorio(_eco(args))
    df = tabela_projetiva(args.jmax, args.kmax_tabela)
    rel.tabela = df
    rel.adicionar("rows", len(df))
    rel.registrar("qgroups", "tabela projetiva", bool(df["ok"].all()), f"{int((~df['ok']).sum())} divergências")
    return rel

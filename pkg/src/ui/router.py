"""Roteamento: comando → função exibir_*, impressão e código de saída."""
from __future__ import annotations

import logging
import sys
from typing import Callable, Sequence

from src.core.config import Configuracao, carregar_configuracao, configurar_logging
from src.core.errors import ErroHopf, FalhaVerificacao
from src.ui import cli
from src.ui.relatorio import Relatorio

logger = logging.getLogger(__name__)

Handler = Callable[..., Relatorio]

COMANDOS: dict[str, Handler] = {
    "homology": cli.exibir_homologia,
    "qgroup": cli.exibir_qgrupo,
    "sq": cli.exibir_sq,
    "symmetric": cli.exibir_simetrica,
    "quadratic": cli.exibir_quadratica,
    "witt": cli.exibir_witt,
    "wallmu": cli.exibir_wallmu,
    "hopf": cli.exibir_hopf,
    "check": cli.exibir_verificacao,
    "tabela": cli.exibir_tabela,
}


def despachar(args, config: Configuracao) -> Relatorio:
    return COMANDOS[args.comando](args, config)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = cli.criar_parser().parse_args(argv)
    args._argv = ["hopf-chain", *argv]
    try:
        config = carregar_configuracao(kmax=args.kmax, semente=args.seed, nivel_log=args.log_level)
    except RuntimeError as e:
        print(f"erro: {e}", file=sys.stderr)
        return 2
    configurar_logging(config.nivel_log)

    codigo = None
    try:
        rel = despachar(args, config)
    except FalhaVerificacao as e:
        print(f"erro: {e}", file=sys.stderr)
        rel, codigo = e.relatorio, e.codigo_saida
    except ErroHopf as e:
        logger.debug("falha em %s", args.comando, exc_info=True)
        print(f"erro: {e}", file=sys.stderr)
        return e.codigo_saida

    sys.stdout.write(rel.json() if args.json else rel.texto())
    if args.csv:
        rel.exportar_csv(args.csv)
    return rel.status if codigo is None else codigo

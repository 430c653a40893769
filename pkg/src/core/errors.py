"""Hierarquia de erros do cadeia-hopf.

Cada erro carrega o código de saída que a CLI devolve ao shell:
0 sucesso, 1 falha de verificação, 2 erro de leitura/esquema,
3 violação de pré-condição matemática.
"""
from __future__ import annotations

from typing import Any


class ErroHopf(Exception):
    """Base de todos os erros do projeto."""

    codigo_saida: int = 1

    def __init__(self, mensagem: str, *, local: str | None = None) -> None:
        super().__init__(mensagem)
        self.mensagem = mensagem
        self.local = local

    def __str__(self) -> str:
        if self.local:
            return f"{self.mensagem} ({self.local})"
        return self.mensagem


class ErroEntrada(ErroHopf, ValueError):
    """Documento malformado, esquema inválido ou dimensões incompatíveis."""

    codigo_saida = 2


class ErroMatematico(ErroHopf):
    """Pré-condição matemática violada (d² ≠ 0, forma singular, paridade...)."""

    codigo_saida = 3


class ErroNaoSuportado(ErroMatematico):
    """Pedido fora do escopo implementado (ex.: quase-isomorfismo sobre Z[π])."""


class FalhaVerificacao(ErroHopf):
    """Alguma verificação do ledger falhou; carrega o relatório para impressão."""

    codigo_saida = 1

    def __init__(self, mensagem: str, *, relatorio: Any, local: str | None = None) -> None:
        super().__init__(mensagem, local=local)
        self.relatorio = relatorio

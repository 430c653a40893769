"""Relatório de um comando: eco, valores, ledger de verificações e status."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import pandas as pd

from src.core.models import LinhaLedger, RelatorioDoc

COLUNAS_LEDGER = ["suite", "item", "ok", "detail"]


def _to_csv_bytes(df: pd.DataFrame) -> bytes:
    return df.to_csv(index=False, lineterminator="\n").encode("utf-8")


@dataclass
class Relatorio:
    comando: str
    valores: dict[str, Any] = field(default_factory=dict)
    linhas: list[str] = field(default_factory=list)
    ledger: pd.DataFrame = field(default_factory=lambda: pd.DataFrame(columns=COLUNAS_LEDGER))
    tabela: pd.DataFrame | None = None
    status: int = 0

    def adicionar(self, chave: str, valor: Any, texto: str | None = None) -> None:
        self.valores[chave] = valor
        if texto is not None:
            self.linhas.append(texto)

    def escrever(self, texto: str) -> None:
        self.linhas.append(texto)

    def registrar(self, suite: str, item: str, ok: bool, detalhe: str = "") -> None:
        linha = pd.DataFrame([{"suite": suite, "item": item, "ok": bool(ok), "detail": detalhe}], columns=COLUNAS_LEDGER)
        self.ledger = linha if self.ledger.empty else pd.concat([self.ledger, linha], ignore_index=True)
        if not ok:
            self.status = max(self.status, 1)

    def usar_ledger(self, df: pd.DataFrame) -> None:
        self.ledger = df.reset_index(drop=True)
        if not df.empty and not df["ok"].all():
            self.status = max(self.status, 1)

    @property
    def falhas(self) -> int:
        return 0 if self.ledger.empty else int((~self.ledger["ok"].astype(bool)).sum())

    # ---- saídas ----
    def texto(self) -> str:
        partes = [f"$ {self.comando}"]
        partes.extend(self.linhas)
        if self.tabela is not None and not self.tabela.empty:
            partes.append(self.tabela.to_string(index=False))
        if not self.ledger.empty:
            partes.append(self.ledger.to_string(index=False))
            total = len(self.ledger)
            partes.append(f"{total - self.falhas}/{total} verificações ok")
        return "\n".join(partes) + "\n"

    def documento(self) -> RelatorioDoc:
        linhas = [
            LinhaLedger(suite=str(r["suite"]), item=str(r["item"]), ok=bool(r["ok"]), detail=str(r["detail"]))
            for r in self.ledger.to_dict("records")
        ]
        return RelatorioDoc(command=self.comando, values=self.valores, ledger=linhas, status=self.status)

    def json(self) -> str:
        return json.dumps(self.documento().model_dump(mode="json"), sort_keys=True, ensure_ascii=False, indent=2) + "\n"

    def exportar_csv(self, caminho: str | Path) -> None:
        df = self.tabela if self.tabela is not None else self.ledger
        Path(caminho).write_bytes(_to_csv_bytes(df))

"""Esquemas pydantic dos documentos de entrada e do relatório JSON."""
from __future__ import annotations

from typing import Any, Literal, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Matriz = list[list[int]]


def _retangular(m: Matriz) -> Matriz:
    if m and any(len(linha) != len(m[0]) for linha in m):
        raise ValueError("matriz com linhas de tamanhos diferentes")
    return m


class _Doc(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


# ============================================
# ANÉIS E GRUPOS
# ============================================

class GrupoDoc(_Doc):
    elements: list[str]
    table: Matriz
    identity: int
    w: list[int]

    @model_validator(mode="after")
    def _formas(self) -> "GrupoDoc":
        n = len(self.elements)
        if n == 0:
            raise ValueError("grupo sem elementos")
        if len(self.table) != n or any(len(linha) != n for linha in self.table):
            raise ValueError(f"tabela deve ser {n}x{n}")
        if len(self.w) != n or any(s not in (1, -1) for s in self.w):
            raise ValueError("w deve ter um ±1 por elemento")
        if not 0 <= self.identity < n:
            raise ValueError("identidade fora do intervalo")
        return self


class AnelGrupoDoc(_Doc):
    group: GrupoDoc


Anel = Union[Literal["Z", "F2"], AnelGrupoDoc]


# ============================================
# DOCUMENTOS DE ENTRADA
# ============================================

class ComplexoDoc(_Doc):
    """{"ring", "lo", "hi", "ranks": [posto de C_lo, ...], "d": {"r": matriz}}."""

    ring: Anel = "Z"
    lo: int
    hi: int
    ranks: list[int]
    d: dict[str, Matriz] = Field(default_factory=dict)

    @field_validator("ranks")
    @classmethod
    def _postos(cls, v: list[int]) -> list[int]:
        if any(r < 0 for r in v):
            raise ValueError("postos negativos")
        return v

    @field_validator("d")
    @classmethod
    def _diferenciais(cls, v: dict[str, Matriz]) -> dict[str, Matriz]:
        for chave, m in v.items():
            int(chave)
            _retangular(m)
        return v

    @model_validator(mode="after")
    def _faixa(self) -> "ComplexoDoc":
        if len(self.ranks) != max(0, self.hi - self.lo + 1):
            raise ValueError(f"ranks deve ter {max(0, self.hi - self.lo + 1)} entradas")
        return self


class TriangulacaoDoc(_Doc):
    vertices: list[Union[int, str]]
    facets: list[list[int]]
    orientation: list[int] | None = None

    @model_validator(mode="after")
    def _indices(self) -> "TriangulacaoDoc":
        n = len(self.vertices)
        for f in self.facets:
            if not f or any(not 0 <= v < n for v in f):
                raise ValueError("faceta com índice de vértice inválido")
        if self.orientation is not None:
            if len(self.orientation) != len(self.facets) or any(s not in (1, -1) for s in self.orientation):
                raise ValueError("orientation deve ter um ±1 por faceta")
        return self


class FormaDoc(_Doc):
    ring: Literal["Z", "F2"] = "Z"
    epsilon: Literal[1, -1] = 1
    lam: Matriz = Field(alias="lambda")
    mu: list[int] | None = None

    @field_validator("lam")
    @classmethod
    def _quadrada(cls, v: Matriz) -> Matriz:
        _retangular(v)
        if v and len(v) != len(v[0]):
            raise ValueError("lambda deve ser quadrada")
        return v


class PontoDuploDoc(_Doc):
    g: int
    sign: Literal[1, -1]


class WallMuDoc(_Doc):
    group: GrupoDoc
    m: int
    points: list[PontoDuploDoc] = Field(default_factory=list)


class ProblemaDoc(_Doc):
    """f: C → D com φ_C e φ_{D_f} dados por componente {"s": vetor}.

    `phi_D_f` é a estrutura já transportada por f (o produto φ_D·f), em
    coordenadas de W%(D); não é recomposta a partir de φ_D. A obstrução
    lida é θ = (f⊗f)φ_C − phi_D_f. Para o grau d em S^0: phi_C = 1 e
    phi_D_f = d.
    """

    source: ComplexoDoc
    target: ComplexoDoc
    f: dict[str, Matriz] = Field(default_factory=dict)
    n: int
    j: int = 0
    phi_C: dict[str, list[int]] = Field(default_factory=dict)
    phi_D_f: dict[str, list[int]] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _faixa(self) -> "ProblemaDoc":
        if self.j < 0:
            raise ValueError("j deve ser ≥ 0")
        for nome in ("phi_C", "phi_D_f"):
            for chave in getattr(self, nome):
                if not 0 <= int(chave) <= self.j:
                    raise ValueError(f"{nome}: componente {chave} fora de [0, {self.j}]")
        return self


# ============================================
# RELATÓRIO
# ============================================

class LinhaLedger(_Doc):
    suite: str
    item: str
    ok: bool
    detail: str = ""


class RelatorioDoc(_Doc):
    command: str
    values: dict[str, Any] = Field(default_factory=dict)
    ledger: list[LinhaLedger] = Field(default_factory=list)
    status: int = 0

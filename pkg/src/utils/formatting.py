"""Utilitários de formatação (grupos, matrizes, expoentes)."""
from __future__ import annotations

_SOBRESCRITOS = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def sobrescrito(n: int) -> str:
    return str(n).translate(_SOBRESCRITOS)


def formatar_grupo(grupo) -> str:
    """'Z^r ⊕ Z/d₁ ⊕ …' com torção em ordem crescente; '0' se trivial."""
    try:
        partes = []
        if grupo.free_rank == 1:
            partes.append("Z")
        elif grupo.free_rank > 1:
            partes.append(f"Z^{grupo.free_rank}")
        partes.extend(f"Z/{d}" for d in sorted(grupo.torsion))
        return " ⊕ ".join(partes) if partes else "0"
    except AttributeError:
        return "?"


def formatar_matriz(linhas) -> str:
    if not linhas:
        return "[]"
    return "[" + ", ".join("[" + ", ".join(str(a) for a in linha) + "]" for linha in linhas) + "]"


def formatar_vetor(v) -> str:
    return "(" + ", ".join(str(a) for a in v) + ")"


def formatar_bigrau(a: int, b: int) -> str:
    return f"({a}, {b})"


def formatar_q_epsilon(valor: int, epsilon: int) -> str:
    """Valor em Q_ε(Z): Z para ε = +1, Z/2 para ε = −1."""
    if epsilon == 1:
        return f"{valor} ∈ Z"
    return f"{valor % 2} ∈ Z/2"

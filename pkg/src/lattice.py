"""
Retículos enteros
Forma de Hermite por filas con matriz de transformación y pertenencia
con coeficientes. Aritmética exacta con enteros de Python.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

logger = logging.getLogger('cyclic-covers.lattice')

Matrix = List[List[int]]


@dataclass(frozen=True)
class EchelonForm:
    """
    Forma de Hermite por filas: U·A = H.

    rows: filas no nulas de H (pivotes positivos, entradas sobre el pivote en [0, pivote))
    transform: U completa (las filas posteriores a rank generan el núcleo izquierdo)
    """
    rows: Tuple[Tuple[int, ...], ...]
    pivots: Tuple[int, ...]
    transform: Tuple[Tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def as_matrix(self) -> Matrix:
        return [list(r) for r in self.rows]


def _axpy(target: List[int], q: int, source: Sequence[int]) -> None:
    """target -= q·source"""
    for k, v in enumerate(source):
        if v:
            target[k] -= q * v


def hermite_form(rows: Sequence[Sequence[int]]) -> EchelonForm:
    """
    Calcula la forma de Hermite por filas de una matriz entera.

    Args:
        rows: Matriz m x n de enteros

    Returns:
        EchelonForm única para el Z-módulo generado por las filas
    """
    a = [list(int(v) for v in row) for row in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    pivots: List[int] = []
    r = 0

    for c in range(n):
        if r == m:
            break
        while True:
            nonzero = [i for i in range(r, m) if a[i][c] != 0]
            if not nonzero:
                break
            best = min(nonzero, key=lambda i: (abs(a[i][c]), i))
            a[r], a[best] = a[best], a[r]
            u[r], u[best] = u[best], u[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    _axpy(a[i], q, a[r])
                    _axpy(u[i], q, u[r])
                    if a[i][c]:
                        done = False
            if done:
                break
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-v for v in a[r]]
            u[r] = [-v for v in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                _axpy(a[i], q, a[r])
                _axpy(u[i], q, u[r])
        pivots.append(c)
        r += 1

    return EchelonForm(
        rows=tuple(tuple(row) for row in a[:r]),
        pivots=tuple(pivots),
        transform=tuple(tuple(row) for row in u),
    )


def lattice_membership(form: EchelonForm, target: Sequence[int]) -> Optional[List[int]]:
    """
    Expresa target como combinación entera de las filas originales.

    Returns:
        Coeficientes sobre las filas originales, o None si no pertenece
    """
    t = [int(v) for v in target]
    coefficients = [0] * form.rank
    for k, (row, c) in enumerate(zip(form.rows, form.pivots)):
        if t[c] % row[c]:
            return None
        q = t[c] // row[c]
        coefficients[k] = q
        _axpy(t, q, row)
    if any(t):
        return None

    m = len(form.transform)
    combination = [0] * m
    for k, q in enumerate(coefficients):
        if q:
            for j in range(m):
                combination[j] += q * form.transform[k][j]
    return combination


def determinant_index(form: EchelonForm, dimension: int) -> int:
    """|det| de un retículo de rango completo (producto de pivotes)"""
    if form.rank != dimension:
        raise ValueError(f"Retículo de rango {form.rank}, se esperaba {dimension}")
    index = 1
    for row, c in zip(form.rows, form.pivots):
        index *= row[c]
    return index

"""
Anillos finitos enumerables
Construcción desde especificaciones, unidades, idempotentes, radical de Jacobson,
anillos cociente, regularidad de Von Neumann y levantamiento de idempotentes.
Incluye el backend testigo para Z.
"""

import logging
import random
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .report import Verdict
from .utils import (
    Limits,
    current_limits,
    AxiomViolation,
    NotTwoSided,
    PreconditionFailed,
    SizeExceeded,
    SpecSyntaxError,
    TrivialRing,
)

logger = logging.getLogger('cyclic-covers.rings')

RING_KINDS = ('zmod', 'matrix', 'triangular', 'product', 'structure-constants', 'quotient', 'table', 'int')


# ---------------------------------------------------------------------------
# Especificaciones
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RingSpec:
    """Especificación declarativa de un anillo"""
    kind: str
    modulus: Optional[int] = None
    dimension: Optional[int] = None
    base: Optional['RingSpec'] = None
    factors: Tuple['RingSpec', ...] = ()
    path: Optional[str] = None

    @property
    def text(self) -> str:
        """Forma canónica en la mini-gramática"""
        if self.kind == 'zmod':
            return f"zmod:{self.modulus}"
        if self.kind == 'matrix':
            return f"mat:{self.dimension}:{self.base.text}"
        if self.kind == 'triangular':
            return f"tri:{self.dimension}:{self.base.text}"
        if self.kind == 'product':
            return f"prod:{self.factors[0].text},{self.factors[1].text}"
        if self.kind == 'structure-constants':
            return f"sc:{self.path}"
        return self.kind


def _read_int(text: str, pos: int) -> Tuple[int, int]:
    end = pos
    while end < len(text) and text[end].isdigit():
        end += 1
    if end == pos:
        raise SpecSyntaxError(f"Se esperaba un entero en la posición {pos} de '{text}'")
    return int(text[pos:end]), end


def _expect(text: str, pos: int, char: str) -> int:
    if pos >= len(text) or text[pos] != char:
        raise SpecSyntaxError(f"Se esperaba '{char}' en la posición {pos} de '{text}'")
    return pos + 1


def _parse_spec(text: str, pos: int) -> Tuple[RingSpec, int]:
    end = pos
    while end < len(text) and text[end] not in ':,':
        end += 1
    word = text[pos:end]
    pos = end

    if word == 'int':
        return RingSpec('int'), pos
    if word == 'zmod':
        modulus, pos = _read_int(text, _expect(text, pos, ':'))
        if modulus < 2:
            raise SpecSyntaxError(f"El módulo debe ser >= 2: zmod:{modulus}")
        return RingSpec('zmod', modulus=modulus), pos
    if word in ('mat', 'tri'):
        dimension, pos = _read_int(text, _expect(text, pos, ':'))
        if dimension < 1:
            raise SpecSyntaxError(f"La dimensión debe ser >= 1: {word}:{dimension}")
        base, pos = _parse_spec(text, _expect(text, pos, ':'))
        kind = 'matrix' if word == 'mat' else 'triangular'
        return RingSpec(kind, dimension=dimension, base=base), pos
    if word == 'prod':
        left, pos = _parse_spec(text, _expect(text, pos, ':'))
        right, pos = _parse_spec(text, _expect(text, pos, ','))
        return RingSpec('product', factors=(left, right)), pos
    if word == 'sc':
        pos = _expect(text, pos, ':')
        end = text.find(',', pos)
        end = len(text) if end < 0 else end
        if end == pos:
            raise SpecSyntaxError("sc: requiere una ruta de archivo")
        return RingSpec('structure-constants', path=text[pos:end]), end

    raise SpecSyntaxError(f"Tipo de anillo desconocido: '{word}'")


def parse_ring_spec(text: str) -> RingSpec:
    """
    Parsea la mini-gramática de anillos.

    zmod:<n> | mat:<k>:<spec> | tri:<k>:<spec> | prod:<spec>,<spec> | sc:<file> | int

    Args:
        text: Especificación en texto ASCII

    Returns:
        RingSpec validada sintácticamente

    Raises:
        SpecSyntaxError: Si el texto no pertenece a la gramática
    """
    text = text.strip()
    spec, pos = _parse_spec(text, 0)
    if pos != len(text):
        raise SpecSyntaxError(f"Texto sobrante en '{text}' desde la posición {pos}")
    return spec


def load_structure_constants(path: str) -> Tuple[np.ndarray, int]:
    """
    Lee un archivo de constantes de estructura.

    Primera línea: dimensión n y módulo; luego n^2 líneas con el vector de
    coordenadas de e_i * e_j (i mayor, j menor).

    Returns:
        Tensor (n, n, n) de constantes y el módulo
    """
    file_path = Path(path)
    if not file_path.exists():
        raise SpecSyntaxError(f"No existe el archivo de constantes: {path}")

    rows = [line.split() for line in file_path.read_text(encoding='ascii').splitlines() if line.strip()]
    try:
        dimension, modulus = int(rows[0][0]), int(rows[0][1])
        constants = np.array([[int(v) for v in row] for row in rows[1:]], dtype=np.int64)
    except (IndexError, ValueError) as e:
        raise SpecSyntaxError(f"Archivo de constantes mal formado {path}: {e}")

    if modulus < 2 or constants.shape != (dimension * dimension, dimension):
        raise SpecSyntaxError(
            f"Se esperaban {dimension * dimension} líneas de {dimension} enteros en {path}"
        )
    return constants.reshape(dimension, dimension, dimension) % modulus, modulus


# ---------------------------------------------------------------------------
# Anillos
# ---------------------------------------------------------------------------

class FiniteRing:
    """
    Anillo finito con elementos indexados 0..n-1 (0 es el cero, 1 es la unidad).

    La aritmética se evalúa de forma vectorizada sobre arreglos de índices;
    para órdenes pequeños se cachean las tablas completas al construir.
    Los valores son inmutables una vez construidos.
    """

    kind = 'abstract'

    def __init__(self, size: int, spec_text: str, limits: Optional[Limits] = None):
        self.limits = limits or current_limits()
        if size > self.limits.ring_size_cap:
            raise SizeExceeded(f"Anillo {spec_text}", size, self.limits.ring_size_cap)
        if size < 2:
            raise TrivialRing(f"El anillo {spec_text} tiene 1 = 0")
        self.size = size
        self.spec_text = spec_text
        self._all = np.arange(size, dtype=np.int64)
        self._mul_table: Optional[np.ndarray] = None
        self._add_table: Optional[np.ndarray] = None
        # R_R, lo construye modules.regular_module
        self.regular_module = None

    # -- a implementar por las subclases --------------------------------
    def _compute_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _compute_add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _compute_neg(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def label(self, index: int) -> str:
        raise NotImplementedError

    def additive_generators(self) -> List[int]:
        raise NotImplementedError

    # -- construcción ---------------------------------------------------
    def _finish_construction(self) -> None:
        """Tablas (si el orden lo permite), opuestos e inversos"""
        if self.size <= self.limits.table_cache_limit:
            left = np.repeat(self._all, self.size)
            right = np.tile(self._all, self.size)
            self._mul_table = self._compute_mul(left, right).reshape(self.size, self.size)
            self._add_table = self._compute_add(left, right).reshape(self.size, self.size)
        self._neg = self._compute_neg(self._all)
        self._inverse = self._find_inverses()
        logger.debug(f"Anillo {self.spec_text} construido: {self.size} elementos, "
                     f"{int((self._inverse >= 0).sum())} unidades")

    def _find_inverses(self) -> np.ndarray:
        inverse = np.full(self.size, -1, dtype=np.int64)
        if self._mul_table is not None:
            hits = self._mul_table == 1
            has = hits.any(axis=1)
            inverse[has] = hits.argmax(axis=1)[has]
        else:
            for a in range(1, self.size):
                if inverse[a] >= 0:
                    continue
                found = np.flatnonzero(self.mul_many(a, self._all) == 1)
                if found.size:
                    b = int(found[0])
                    inverse[a] = b
                    inverse[b] = a
        for a in np.flatnonzero(inverse >= 0):
            if self.mul(int(inverse[a]), int(a)) != 1:
                raise AxiomViolation('inverso bilátero', (int(a), int(inverse[a])))
        return inverse

    # -- aritmética vectorizada ---------------------------------------------
    def mul_many(self, a, b) -> np.ndarray:
        """Producto elemento a elemento de arreglos de índices (con broadcasting)"""
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if self._mul_table is not None:
            return self._mul_table[a, b]
        shape = a.shape
        return self._compute_mul(a.ravel(), b.ravel()).reshape(shape)

    def add_many(self, a, b) -> np.ndarray:
        """Suma elemento a elemento de arreglos de índices (con broadcasting)"""
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        if self._add_table is not None:
            return self._add_table[a, b]
        shape = a.shape
        return self._compute_add(a.ravel(), b.ravel()).reshape(shape)

    def neg_many(self, a) -> np.ndarray:
        return self._neg[np.asarray(a, dtype=np.int64)]

    def sub_many(self, a, b) -> np.ndarray:
        return self.add_many(a, self.neg_many(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return int(self._mul_table[a, b])
        return int(self.mul_many(a, b))

    def add(self, a: int, b: int) -> int:
        if self._add_table is not None:
            return int(self._add_table[a, b])
        return int(self.add_many(a, b))

    def neg(self, a: int) -> int:
        return int(self._neg[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def elements(self) -> np.ndarray:
        return self._all

    def left_multiples(self, a: int) -> np.ndarray:
        """a·r para todo r"""
        return self.mul_many(a, self._all)

    def right_multiples(self, a: int) -> np.ndarray:
        """r·a para todo r"""
        return self.mul_many(self._all, a)

    def power(self, a: int, k: int) -> int:
        result = 1
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def inverse(self, a: int) -> Optional[int]:
        inv = int(self._inverse[a])
        return inv if inv >= 0 else None

    @property
    def unit_mask(self) -> np.ndarray:
        return self._inverse >= 0

    @cached_property
    def radical_mask(self) -> np.ndarray:
        """Elementos cuasi-regulares: 1 - x r es unidad para todo r"""
        unit_mask = self.unit_mask
        mask = np.zeros(self.size, dtype=bool)
        for x in range(self.size):
            if not unit_mask[self.sub(1, x)]:
                continue
            mask[x] = bool(unit_mask[self.sub_many(1, self.left_multiples(x))].all())
        return mask

    @cached_property
    def radical_members(self) -> np.ndarray:
        return np.asarray(jacobson_radical(self).members, dtype=np.int64)

    @cached_property
    def cover_candidates(self) -> List[Tuple[int, 'RightIdealSet', np.ndarray]]:
        """(e, eR, máscara de eJ) para cada idempotente, en orden de índice"""
        radical = self.radical_members
        candidates = []
        for e in idempotents(self):
            e_radical = np.zeros(self.size, dtype=bool)
            e_radical[self.mul_many(e, radical)] = True
            candidates.append((e, right_ideal(self, [e]), e_radical))
        return candidates

    def labels(self) -> List[str]:
        return [self.label(i) for i in range(self.size)]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.spec_text}, n={self.size})"


class CoordinateRing(FiniteRing):
    """
    Anillo cuyo grupo aditivo es un producto de Z/m_i (coordenadas).

    Índices: 0 = cero, 1 = uno, el resto en orden lexicográfico de coordenadas.
    """

    def __init__(self, radices: Sequence[int], spec_text: str, limits: Optional[Limits] = None):
        limits = limits or current_limits()
        self.radices = np.asarray(radices, dtype=np.int64)
        size = 1
        for r in radices:
            size *= int(r)
        if size > limits.ring_size_cap:
            raise SizeExceeded(f"Anillo {spec_text}", size, limits.ring_size_cap)

        dim = len(radices)
        weights = np.ones(dim, dtype=np.int64)
        for i in range(dim - 2, -1, -1):
            weights[i] = weights[i + 1] * self.radices[i + 1]
        self._weights = weights
        ranks = np.arange(size, dtype=np.int64)
        lex = (ranks[:, None] // weights[None, :]) % self.radices[None, :]
        self._lex_coords = lex

        one_rank = int((np.asarray(self._one_coords(), dtype=np.int64) * weights).sum())
        if one_rank == 0:
            raise TrivialRing(f"El anillo {spec_text} tiene 1 = 0")
        order = np.concatenate(([0, one_rank], ranks[1:one_rank], ranks[one_rank + 1:]))
        self._coords = lex[order]
        self._index_of_rank = np.empty(size, dtype=np.int64)
        self._index_of_rank[order] = ranks

        super().__init__(size, spec_text, limits)
        self._finish_construction()

    @property
    def dimension(self) -> int:
        return len(self.radices)

    def _one_coords(self) -> Sequence[int]:
        raise NotImplementedError

    def _mul_coords(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _format(self, coords: Sequence[int]) -> str:
        raise NotImplementedError

    def _add_coords(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return (x + y) % self.radices

    def encode(self, coords: np.ndarray) -> np.ndarray:
        """Coordenadas (..., d) -> índices"""
        coords = np.asarray(coords, dtype=np.int64) % self.radices
        return self._index_of_rank[(coords * self._weights).sum(axis=-1)]

    def coords(self, index: int) -> Tuple[int, ...]:
        return tuple(int(c) for c in self._coords[index])

    def from_coords(self, coords: Sequence[int]) -> int:
        return int(self.encode(np.asarray(coords, dtype=np.int64)))

    def _compute_mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.encode(self._mul_coords(self._coords[a], self._coords[b]))

    def _compute_add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.encode(self._coords[a] + self._coords[b])

    def _compute_neg(self, a: np.ndarray) -> np.ndarray:
        return self.encode(-self._coords[a])

    def label(self, index: int) -> str:
        return self._format(self._coords[index])

    def additive_generators(self) -> List[int]:
        basis = np.eye(self.dimension, dtype=np.int64)
        return [int(i) for i in self.encode(basis)]


class ZmodRing(CoordinateRing):
    """Z/mZ"""

    kind = 'zmod'

    def __init__(self, modulus: int, limits: Optional[Limits] = None):
        self.modulus = modulus
        super().__init__([modulus], f"zmod:{modulus}", limits)

    def _one_coords(self):
        return [1]

    def _mul_coords(self, x, y):
        return (x * y) % self.modulus

    def _format(self, coords):
        return str(int(coords[0]))


def _matmul_coords(base: CoordinateRing, x: np.ndarray, y: np.ndarray, k: int) -> np.ndarray:
    """Producto de matrices k x k con entradas en coordenadas de base; x, y de forma (N, k, k, d)"""
    out = np.zeros_like(x)
    for i in range(k):
        for j in range(k):
            acc = np.zeros_like(x[:, 0, 0])
            for l in range(k):
                acc = base._add_coords(acc, base._mul_coords(x[:, i, l], y[:, l, j]))
            out[:, i, j] = acc
    return out


class MatrixRing(CoordinateRing):
    """M_k(S), entradas en orden por filas"""

    kind = 'matrix'

    def __init__(self, k: int, base: CoordinateRing, limits: Optional[Limits] = None):
        self.k = k
        self.base = base
        super().__init__(np.tile(base.radices, k * k), f"mat:{k}:{base.spec_text}", limits)

    def _one_coords(self):
        d = self.base.dimension
        one = np.zeros((self.k, self.k, d), dtype=np.int64)
        for i in range(self.k):
            one[i, i] = self.base.coords(1)
        return one.ravel()

    def _mul_coords(self, x, y):
        d = self.base.dimension
        shape = (x.shape[0], self.k, self.k, d)
        return _matmul_coords(self.base, x.reshape(shape), y.reshape(shape), self.k).reshape(x.shape)

    def _format(self, coords):
        d = self.base.dimension
        entries = np.asarray(coords).reshape(self.k, self.k, d)
        rows = [','.join(self.base._format(entries[i, j]) for j in range(self.k)) for i in range(self.k)]
        return '[' + ','.join(f'[{r}]' for r in rows) + ']'

    def from_matrix(self, rows: Sequence[Sequence[int]]) -> int:
        """Índice de una matriz con entradas en Z/m (base zmod)"""
        return self.from_coords([int(v) for row in rows for v in row])


class TriangularRing(CoordinateRing):
    """T_k(S): matrices triangulares superiores, coordenadas = entradas i <= j por filas"""

    kind = 'triangular'

    def __init__(self, k: int, base: CoordinateRing, limits: Optional[Limits] = None):
        self.k = k
        self.base = base
        self.positions = [(i, j) for i in range(k) for j in range(i, k)]
        super().__init__(np.tile(base.radices, len(self.positions)), f"tri:{k}:{base.spec_text}", limits)

    def _expand(self, x: np.ndarray) -> np.ndarray:
        d = self.base.dimension
        full = np.zeros((x.shape[0], self.k, self.k, d), dtype=np.int64)
        parts = x.reshape(x.shape[0], len(self.positions), d)
        for p, (i, j) in enumerate(self.positions):
            full[:, i, j] = parts[:, p]
        return full

    def _compress(self, full: np.ndarray) -> np.ndarray:
        return np.stack([full[:, i, j] for (i, j) in self.positions], axis=1).reshape(full.shape[0], -1)

    def _one_coords(self):
        d = self.base.dimension
        one = np.zeros((len(self.positions), d), dtype=np.int64)
        for p, (i, j) in enumerate(self.positions):
            if i == j:
                one[p] = self.base.coords(1)
        return one.ravel()

    def _mul_coords(self, x, y):
        return self._compress(_matmul_coords(self.base, self._expand(x), self._expand(y), self.k))

    def _format(self, coords):
        full = self._expand(np.asarray(coords, dtype=np.int64)[None, :])[0]
        rows = [','.join(self.base._format(full[i, j]) for j in range(self.k)) for i in range(self.k)]
        return '[' + ','.join(f'[{r}]' for r in rows) + ']'

    def from_matrix(self, rows: Sequence[Sequence[int]]) -> int:
        return self.from_coords([int(rows[i][j]) for (i, j) in self.positions])


class ProductRing(CoordinateRing):
    """S x T con operaciones por componentes"""

    kind = 'product'

    def __init__(self, left: CoordinateRing, right: CoordinateRing, limits: Optional[Limits] = None):
        self.left = left
        self.right = right
        self._split = left.dimension
        radices = np.concatenate((left.radices, right.radices))
        super().__init__(radices, f"prod:{left.spec_text},{right.spec_text}", limits)

    def _one_coords(self):
        return list(self.left.coords(1)) + list(self.right.coords(1))

    def _mul_coords(self, x, y):
        s = self._split
        return np.concatenate((self.left._mul_coords(x[:, :s], y[:, :s]),
                               self.right._mul_coords(x[:, s:], y[:, s:])), axis=1)

    def _format(self, coords):
        s = self._split
        return f"({self.left._format(coords[:s])},{self.right._format(coords[s:])})"


class StructureConstantRing(CoordinateRing):
    """Álgebra libre sobre Z/m con base e_1..e_d y e_i e_j = sum_k c_ijk e_k"""

    kind = 'structure-constants'

    def __init__(self, constants: np.ndarray, modulus: int, spec_text: str,
                 limits: Optional[Limits] = None):
        self.constants = np.asarray(constants, dtype=np.int64) % modulus
        self.modulus = modulus
        d = self.constants.shape[0]
        super().__init__([modulus] * d, spec_text, limits)

    def _one_coords(self):
        lex = self._lex_coords
        d = lex.shape[1]
        candidates = np.ones(lex.shape[0], dtype=bool)
        for j in range(d):
            basis = np.zeros_like(lex)
            basis[:, j] = 1
            candidates &= (self._mul_coords(lex, basis) == basis).all(axis=1)
            candidates &= (self._mul_coords(basis, lex) == basis).all(axis=1)
        found = np.flatnonzero(candidates)
        if not found.size:
            raise AxiomViolation('identidad', ())
        return lex[found[0]]

    def _mul_coords(self, x, y):
        return np.einsum('ni,nj,ijk->nk', x, y, self.constants) % self.modulus

    def _format(self, coords):
        return '[' + ','.join(str(int(c)) for c in coords) + ']'


class QuotientRing(FiniteRing):
    """R/I para un ideal bilátero I; los índices siguen el menor representante"""

    kind = 'quotient'

    def __init__(self, parent: FiniteRing, ideal: 'RightIdealSet', ideal_label: str = 'I'):
        ok, witness = is_two_sided(ideal)
        if not ok:
            raise NotTwoSided(witness)
        if ideal.contains(1):
            raise TrivialRing(f"{parent.spec_text}/{ideal_label} es el anillo cero")

        self.parent = parent
        self.ideal = ideal
        self.ideal_label = ideal_label
        coset_of = np.full(parent.size, -1, dtype=np.int64)
        reps: List[int] = []
        members = np.asarray(ideal.members, dtype=np.int64)
        for r in range(parent.size):
            if coset_of[r] < 0:
                coset_of[parent.add_many(members, r)] = len(reps)
                reps.append(r)
        self.projection = coset_of
        self.representatives = np.asarray(reps, dtype=np.int64)
        if len(reps) * ideal.size != parent.size:
            raise AxiomViolation('índice de cociente', (len(reps), ideal.size, parent.size))

        super().__init__(len(reps), f"{parent.spec_text}/{ideal_label}", parent.limits)
        self._finish_construction()

    def _compute_mul(self, a, b):
        reps = self.representatives
        return self.projection[self.parent.mul_many(reps[a], reps[b])]

    def _compute_add(self, a, b):
        reps = self.representatives
        return self.projection[self.parent.add_many(reps[a], reps[b])]

    def _compute_neg(self, a):
        return self.projection[self.parent.neg_many(self.representatives[a])]

    def label(self, index: int) -> str:
        return f"{self.parent.label(int(self.representatives[index]))}+{self.ideal_label}"

    def additive_generators(self) -> List[int]:
        images = {int(self.projection[g]) for g in self.parent.additive_generators()}
        images.discard(0)
        return sorted(images)


class TableRing(FiniteRing):
    """Anillo dado por tablas explícitas (anillos de endomorfismos)"""

    kind = 'table'

    def __init__(self, add_table: np.ndarray, mul_table: np.ndarray, labels: Sequence[str],
                 spec_text: str, limits: Optional[Limits] = None):
        self._given_add = np.asarray(add_table, dtype=np.int64)
        self._given_mul = np.asarray(mul_table, dtype=np.int64)
        self._labels = list(labels)
        super().__init__(len(self._labels), spec_text, limits)
        self._finish_construction()

    def _compute_mul(self, a, b):
        return self._given_mul[a, b]

    def _compute_add(self, a, b):
        return self._given_add[a, b]

    def _compute_neg(self, a):
        return np.argmax(self._given_add[a] == 0, axis=-1)

    def label(self, index: int) -> str:
        return self._labels[index]

    @cached_property
    def _additive_basis(self) -> List[int]:
        gens: List[int] = []
        mask = np.zeros(self.size, dtype=bool)
        mask[0] = True
        members = [0]
        for candidate in range(1, self.size):
            if mask[candidate]:
                continue
            gens.append(candidate)
            members = _sweep_additive(self.add_many, mask, members, candidate)
        return gens

    def additive_generators(self) -> List[int]:
        return list(self._additive_basis)


def _sweep_additive(add_many, mask: np.ndarray, members: List[int], h: int) -> List[int]:
    """
    Extiende el subgrupo aditivo (mask/members) con h recorriendo sus coclases.

    Devuelve la lista de miembros actualizada; mask se modifica en sitio.
    """
    base = np.asarray(members, dtype=np.int64)
    shift = h
    added: List[int] = []
    while not mask[shift]:
        coset = add_many(base, shift)
        mask[coset] = True
        added.extend(int(c) for c in coset)
        shift = int(add_many(shift, h))
    return members + added


# ---------------------------------------------------------------------------
# Construcción
# ---------------------------------------------------------------------------

def _construct(spec: RingSpec, limits: Limits) -> FiniteRing:
    if spec.kind == 'zmod':
        return ZmodRing(spec.modulus, limits)
    if spec.kind in ('matrix', 'triangular'):
        base = _construct(spec.base, limits)
        if not isinstance(base, CoordinateRing):
            raise SpecSyntaxError(f"Base no soportada para matrices: {spec.base.text}")
        cls = MatrixRing if spec.kind == 'matrix' else TriangularRing
        return cls(spec.dimension, base, limits)
    if spec.kind == 'product':
        left = _construct(spec.factors[0], limits)
        right = _construct(spec.factors[1], limits)
        return ProductRing(left, right, limits)
    if spec.kind == 'structure-constants':
        constants, modulus = load_structure_constants(spec.path)
        return StructureConstantRing(constants, modulus, spec.text, limits)
    if spec.kind == 'int':
        raise PreconditionFailed("'int' no es un anillo finito; use resolve_ring")
    raise SpecSyntaxError(f"Tipo de anillo desconocido: {spec.kind}")


def build_ring(spec: Union[RingSpec, str], limits: Optional[Limits] = None) -> FiniteRing:
    """
    Construye un anillo finito y verifica sus axiomas.

    Args:
        spec: RingSpec o texto de la mini-gramática
        limits: Cotas opcionales

    Returns:
        Anillo con indexado determinista

    Raises:
        SizeExceeded: Si el orden supera ring_size_cap
        AxiomViolation: Si las tablas no definen un anillo asociativo unitario
    """
    if isinstance(spec, str):
        spec = parse_ring_spec(spec)
    limits = limits or current_limits()
    ring = _construct(spec, limits)
    verify_ring_axioms(ring)
    logger.info(f"Anillo construido: {ring.spec_text} ({ring.size} elementos)")
    return ring


def verify_ring_axioms(ring: FiniteRing) -> bool:
    """
    Verifica asociatividad, distributividad e identidad.

    Exhaustivo hasta axiom_exhaustive_limit elementos; por encima, ternas
    muestreadas con semilla fija.

    Raises:
        AxiomViolation: Con la terna que falla
    """
    n = ring.size
    limits = ring.limits
    all_idx = ring.elements()

    if n <= limits.axiom_exhaustive_limit:
        if ring._mul_table is not None:
            mul_t, add_t = ring._mul_table, ring._add_table
        else:
            mul_t = np.stack([ring.mul_many(a, all_idx) for a in range(n)])
            add_t = np.stack([ring.add_many(a, all_idx) for a in range(n)])

        if not (mul_t[1] == all_idx).all() or not (mul_t[:, 1] == all_idx).all():
            bad = int(np.flatnonzero((mul_t[1] != all_idx) | (mul_t[:, 1] != all_idx))[0])
            raise AxiomViolation('identidad', (1, bad))
        for a in range(n):
            row = mul_t[a]
            checks = (
                ('asociatividad', mul_t[row] == row[mul_t]),
                ('distributividad izquierda', row[add_t] == add_t[row[:, None], row[None, :]]),
            )
            col = mul_t[:, a]
            checks += (('distributividad derecha', col[add_t] == add_t[col[:, None], col[None, :]]),)
            for axiom, ok in checks:
                if not ok.all():
                    b, c = np.argwhere(~ok)[0]
                    raise AxiomViolation(axiom, (a, int(b), int(c)))
        return True

    rng = random.Random(limits.random_seed)
    samples = limits.axiom_samples
    a = np.array([rng.randrange(n) for _ in range(samples)], dtype=np.int64)
    b = np.array([rng.randrange(n) for _ in range(samples)], dtype=np.int64)
    c = np.array([rng.randrange(n) for _ in range(samples)], dtype=np.int64)
    conditions = (
        ('asociatividad', ring.mul_many(ring.mul_many(a, b), c) == ring.mul_many(a, ring.mul_many(b, c))),
        ('distributividad izquierda',
         ring.mul_many(a, ring.add_many(b, c)) == ring.add_many(ring.mul_many(a, b), ring.mul_many(a, c))),
        ('distributividad derecha',
         ring.mul_many(ring.add_many(b, c), a) == ring.add_many(ring.mul_many(b, a), ring.mul_many(c, a))),
        ('identidad', (ring.mul_many(1, a) == a) & (ring.mul_many(a, 1) == a)),
    )
    for axiom, ok in conditions:
        if not ok.all():
            k = int(np.flatnonzero(~ok)[0])
            raise AxiomViolation(axiom, (int(a[k]), int(b[k]), int(c[k])))
    logger.warning(f"Axiomas de {ring.spec_text} verificados por muestreo ({samples} ternas)")
    return True


# ---------------------------------------------------------------------------
# Ideales derechos
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RightIdealSet:
    """Ideal derecho como conjunto de índices más generadores testigo"""
    ring: FiniteRing
    members: Tuple[int, ...]
    generators: Tuple[int, ...] = field(default=(), compare=False)

    @property
    def size(self) -> int:
        return len(self.members)

    @cached_property
    def mask(self) -> np.ndarray:
        mask = np.zeros(self.ring.size, dtype=bool)
        mask[list(self.members)] = True
        return mask

    def contains(self, element: int) -> bool:
        return bool(self.mask[element])

    def issubset(self, other: 'RightIdealSet') -> bool:
        return bool(other.mask[list(self.members)].all())

    def labels(self) -> List[str]:
        return [self.ring.label(m) for m in self.members]


def additive_closure(ring: FiniteRing, seeds: Iterable[int],
                     base: Optional[Sequence[int]] = None) -> Tuple[int, ...]:
    """Subgrupo aditivo generado por seeds (y el subgrupo base, si se da)"""
    mask = np.zeros(ring.size, dtype=bool)
    members = list(base) if base is not None else [0]
    mask[members] = True
    for h in seeds:
        if not mask[h]:
            members = _sweep_additive(ring.add_many, mask, members, int(h))
    return tuple(sorted(members))


def right_ideal(ring: FiniteRing, gens: Iterable[int]) -> RightIdealSet:
    """
    Menor ideal derecho que contiene a gens.

    Es el subgrupo aditivo generado por los productos g·r.
    """
    gens = tuple(int(g) for g in gens)
    products = set()
    for g in gens:
        products.update(int(v) for v in np.unique(ring.left_multiples(g)))
    return RightIdealSet(ring, additive_closure(ring, sorted(products)), gens)


def ideal_from_members(ring: FiniteRing, members: Iterable[int]) -> RightIdealSet:
    """Envuelve un conjunto ya cerrado; elige generadores de forma voraz"""
    members = tuple(sorted(int(m) for m in members))
    mask = np.zeros(ring.size, dtype=bool)
    mask[0] = True
    gens: List[int] = []
    for m in members:
        if not mask[m]:
            gens.append(m)
            mask[list(right_ideal(ring, gens).members)] = True
    return RightIdealSet(ring, members, tuple(gens))


def ideal_sum(left: RightIdealSet, right: RightIdealSet) -> RightIdealSet:
    members = additive_closure(left.ring, right.members, base=left.members)
    return RightIdealSet(left.ring, members, left.generators + right.generators)


def ideal_intersection(left: RightIdealSet, right: RightIdealSet) -> RightIdealSet:
    members = [m for m in left.members if right.mask[m]]
    return ideal_from_members(left.ring, members)


def is_two_sided(ideal: RightIdealSet) -> Tuple[bool, Optional[Tuple[int, int]]]:
    """
    Verifica r·I ⊆ I (basta con generadores aditivos r).

    Returns:
        (True, None) o (False, (r, i)) con r·i fuera de I
    """
    ring = ideal.ring
    members = np.asarray(ideal.members, dtype=np.int64)
    for r in ring.additive_generators():
        images = ring.mul_many(r, members)
        outside = ~ideal.mask[images]
        if outside.any():
            return False, (r, int(members[np.argmax(outside)]))
    return True, None


# ---------------------------------------------------------------------------
# Estructura
# ---------------------------------------------------------------------------

def units(ring: FiniteRing) -> Tuple[int, ...]:
    """Elementos invertibles (con inverso bilátero registrado)"""
    return tuple(int(u) for u in np.flatnonzero(ring.unit_mask))


def unit_inverse(ring: FiniteRing, a: int) -> Optional[int]:
    return ring.inverse(a)


def idempotents(ring: FiniteRing) -> Tuple[int, ...]:
    """Todos los e con e·e = e, en orden de índice"""
    all_idx = ring.elements()
    return tuple(int(e) for e in np.flatnonzero(ring.mul_many(all_idx, all_idx) == all_idx))


def jacobson_radical(ring: FiniteRing) -> RightIdealSet:
    """
    Radical de Jacobson por cuasi-regularidad.

    Verifica que resulte bilátero y que R/J tenga radical nulo.
    """
    members = tuple(int(x) for x in np.flatnonzero(ring.radical_mask))
    radical = ideal_from_members(ring, members)
    ok, witness = is_two_sided(radical)
    if not ok:
        raise NotTwoSided(witness)
    if radical.size > 1:
        quotient = QuotientRing(ring, radical, 'J')
        if int(quotient.radical_mask.sum()) != 1:
            raise AxiomViolation('radical de R/J', (ring.spec_text,))
    logger.debug(f"J({ring.spec_text}) tiene {radical.size} elementos")
    return radical


def quotient_ring(ring: FiniteRing, ideal: RightIdealSet,
                  ideal_label: str = 'I') -> Tuple[FiniteRing, np.ndarray]:
    """
    Anillo cociente y su proyección canónica.

    Returns:
        (R/I, arreglo proyección índice de R -> índice de R/I); si I = 0 devuelve R
        con la identidad

    Raises:
        NotTwoSided: Si I no es bilátero
    """
    if ideal.size == 1:
        return ring, ring.elements().copy()
    quotient = QuotientRing(ring, ideal, ideal_label)
    return quotient, quotient.projection


def is_left_cancellative(ring: FiniteRing, a: int) -> Tuple[bool, Optional[int]]:
    """
    a es cancelativo a izquierda si a ≠ 0 y a·b ≠ 0 para todo b ≠ 0.

    Returns:
        (resultado, testigo b con a·b = 0 cuando es falso)
    """
    if a == 0:
        return False, 1
    zeros = np.flatnonzero(ring.left_multiples(a) == 0)
    zeros = zeros[zeros != 0]
    if zeros.size:
        return False, int(zeros[0])
    return True, None


def is_right_cancellative(ring: FiniteRing, a: int) -> Tuple[bool, Optional[int]]:
    if a == 0:
        return False, 1
    zeros = np.flatnonzero(ring.right_multiples(a) == 0)
    zeros = zeros[zeros != 0]
    if zeros.size:
        return False, int(zeros[0])
    return True, None


def is_nilpotent(ring: FiniteRing, a: int) -> bool:
    power = a
    for _ in range(ring.size):
        if power == 0:
            return True
        power = ring.mul(power, a)
    return power == 0


def is_local(ring: FiniteRing) -> bool:
    """Local: las no unidades coinciden con J(R)"""
    return bool(((~ring.unit_mask) == ring.radical_mask).all())


def is_domain(ring: FiniteRing) -> bool:
    """Sin divisores de cero; en el caso finito equivale a anillo de división"""
    return all(is_left_cancellative(ring, a)[0] for a in range(1, ring.size))


@dataclass(frozen=True)
class IntegerRing:
    """
    Backend testigo para Z.

    Solo expone operaciones con veredicto: cada refutación lleva un
    certificado que se puede volver a comprobar.
    """
    bound: int = 64
    spec_text: str = 'int'
    kind: str = 'int'

    @staticmethod
    def is_unit(a: int) -> bool:
        return a in (1, -1)


def recheck_regularity_refutation(a: int) -> bool:
    """True si a·x·a = a no tiene solución entera (a ≠ 0 y a^2 no divide a a)"""
    return a != 0 and a % (a * a) != 0


def resolve_ring(spec: Union[RingSpec, str], limits: Optional[Limits] = None):
    """Devuelve IntegerRing para 'int' y un anillo finito en otro caso"""
    if isinstance(spec, str):
        spec = parse_ring_spec(spec)
    limits = limits or current_limits()
    if spec.kind == 'int':
        return IntegerRing(bound=limits.integer_search_bound)
    return build_ring(spec, limits)


def is_vnr(ring) -> Verdict:
    """
    Regularidad de Von Neumann: para todo a existe x con a·x·a = a.

    Exhaustivo en anillos finitos; en Z, búsqueda acotada con certificado
    de divisibilidad.
    """
    if isinstance(ring, IntegerRing):
        for a in range(ring.bound + 1):
            if recheck_regularity_refutation(a):
                certificate = f"{a}*x*{a} = {a} exige que {a * a} divida a {a}"
                logger.info(f"Z no es regular: testigo a={a}")
                return Verdict.falsified({'a': a}, certificate)
        return Verdict.unknown(ring.bound)

    for a in range(ring.size):
        axa = ring.mul_many(ring.left_multiples(a), a)
        if not (axa == a).any():
            logger.info(f"{ring.spec_text} no es regular: testigo {ring.label(a)}")
            return Verdict.falsified({'a': a, 'label': ring.label(a)})
    return Verdict.verified()


def integer_radical_certificate() -> str:
    return "x != 0: 1 - 3x no es +-1, luego x no es cuasi-regular; J(Z) = 0"


def idempotents_lift(ring, ideal: Optional[RightIdealSet] = None) -> Verdict:
    """
    Todo idempotente de R/I es imagen de un idempotente de R.

    Raises:
        NotTwoSided: Si I no es bilátero
    """
    if isinstance(ring, IntegerRing):
        return Verdict.verified(certificate="J(Z) = 0: R/J = R y todo idempotente se levanta a sí mismo")

    if ideal is None:
        ideal = jacobson_radical(ring)
    quotient, projection = quotient_ring(ring, ideal, 'I')
    lifted = {int(projection[e]) for e in idempotents(ring)}
    for target in idempotents(quotient):
        if target not in lifted:
            return Verdict.falsified({'coset': target, 'label': quotient.label(target)})
    return Verdict.verified()

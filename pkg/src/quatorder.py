"""
Orden maximal en el álgebra de cuaterniones (-1, -11 / Q)
Retículos de ideales derechos en forma de Hermite, norma reducida,
principalidad por enumeración de normas, reducción módulo 3 y la
dependencia de la pi-exactitud respecto de la presentación.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import isqrt
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix, Rational, floor

from .lattice import EchelonForm, determinant_index, hermite_form, lattice_membership
from .modules import regular_module, submodules
from .report import Report, Verdict, verdict_of
from .rings import (
    RightIdealSet,
    StructureConstantRing,
    additive_closure,
    right_ideal,
    units,
    verify_ring_axioms,
)
from .utils import (
    Limits,
    current_limits,
    AxiomViolation,
    BoundExceeded,
    IntegralityViolation,
    PreconditionFailed,
    SpecSyntaxError,
)

logger = logging.getLogger('cyclic-covers.quatorder')

OrderElement = Tuple[int, int, int, int]

ALGEBRA_PARAMETERS = (-1, -11)
REDUCTION_PRIME = 3

_HALF = Rational(1, 2)

# Base del orden en coordenadas (1, i, j, k)
ORDER_BASIS = (
    (1, 0, 0, 0),
    (0, 1, 0, 0),
    (0, _HALF, _HALF, 0),
    (_HALF, 0, 0, _HALF),
)

# Generadores de I y J en coordenadas (1, i, j, k)
I_GENERATORS = (
    (_HALF, 0, 0, Rational(5, 2)),
    (0, _HALF, Rational(5, 2), 0),
    (0, 0, 3, 0),
    (0, 0, 0, 3),
)
J_GENERATORS = (
    (_HALF, 0, 1, Rational(3, 2)),
    (0, _HALF, Rational(3, 2), 2),
    (0, 0, 3, 0),
    (0, 0, 0, 3),
)


def quaternion_product(x: Sequence, y: Sequence, a: int, b: int) -> List:
    """Producto en (a, b / Q) con i^2 = a, j^2 = b, k = ij = -ji"""
    x0, x1, x2, x3 = x
    y0, y1, y2, y3 = y
    return [
        x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
        x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
        x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
        x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
    ]


def _integral(values, what: str) -> List[int]:
    result = []
    for v in values:
        v = Rational(v)
        if v.q != 1:
            raise IntegralityViolation(f"{what}: {v} no es entero")
        result.append(int(v))
    return result


@dataclass(frozen=True, eq=False)
class OrderContext:
    """
    Orden R = Z<e1, e2, e3, e4> con constantes de estructura enteras.

    constants[i, j] son las coordenadas de e_i·e_j; gram es la matriz de Gram
    duplicada de la norma reducida (nrd(x) = x·G·x / 2).
    """
    a: int
    b: int
    constants: np.ndarray = field(repr=False)
    gram: np.ndarray = field(repr=False)
    conjugation: np.ndarray = field(repr=False)
    basis: Matrix = field(repr=False)

    def mul(self, x: Sequence[int], y: Sequence[int]) -> OrderElement:
        product = np.einsum('i,j,ijk->k', np.asarray(x, dtype=np.int64),
                            np.asarray(y, dtype=np.int64), self.constants)
        return tuple(int(v) for v in product)

    def conj(self, x: Sequence[int]) -> OrderElement:
        return tuple(int(v) for v in np.asarray(x, dtype=np.int64) @ self.conjugation)

    def nrd(self, x: Sequence[int]) -> int:
        """
        Norma reducida x·conj(x).

        Raises:
            IntegralityViolation: Si el producto no es un entero racional
        """
        product = self.mul(x, self.conj(x))
        if any(product[1:]):
            raise IntegralityViolation(f"x·conj(x) = {product} no es escalar")
        return product[0]

    def quadratic_form(self, x: Sequence[int]) -> int:
        v = np.asarray(x, dtype=np.int64)
        return int(v @ self.gram @ v) // 2

    def from_quaternion(self, q: Sequence) -> OrderElement:
        """
        Coordenadas en la base del orden de un cuaternión racional.

        Raises:
            IntegralityViolation: Si q no pertenece al orden
        """
        coords = Matrix([[Rational(v) for v in q]]) * self.basis.inv()
        return tuple(_integral(coords, f"cuaternión {tuple(q)}"))

    def to_quaternion(self, x: Sequence[int]) -> Tuple:
        return tuple(Matrix([list(x)]) * self.basis)

    def unit_vector(self, i: int) -> OrderElement:
        return tuple(1 if k == i else 0 for k in range(4))


@lru_cache(maxsize=1)
def build_order() -> OrderContext:
    """
    Calcula las constantes de estructura por expansión simbólica y las verifica.

    Raises:
        IntegralityViolation: Si alguna constante o la forma de Gram no es entera
        AxiomViolation: Si falla la asociatividad o la positividad de la norma
    """
    a, b = ALGEBRA_PARAMETERS
    basis = Matrix([[Rational(v) for v in row] for row in ORDER_BASIS])
    inverse = basis.inv()

    constants = np.zeros((4, 4, 4), dtype=np.int64)
    for i in range(4):
        for j in range(4):
            product = quaternion_product(list(basis.row(i)), list(basis.row(j)), a, b)
            constants[i, j] = _integral(Matrix([product]) * inverse, f"e{i + 1}·e{j + 1}")

    left = np.einsum('ijm,mkn->ijkn', constants, constants)
    right = np.einsum('jkm,imn->ijkn', constants, constants)
    if not (left == right).all():
        i, j, k, _ = np.argwhere(left != right)[0]
        raise AxiomViolation('asociatividad en el orden', (int(i), int(j), int(k)))

    norm_diagonal = Matrix.diag(1, -a, -b, a * b)
    gram_rational = 2 * basis * norm_diagonal * basis.T
    gram = np.asarray(_integral(list(gram_rational), 'matriz de Gram'), dtype=np.int64).reshape(4, 4)
    if not all(gram_rational[:k, :k].det() > 0 for k in range(1, 5)):
        raise AxiomViolation('norma definida positiva', tuple(gram.flatten().tolist()))

    conjugation_rational = basis * Matrix.diag(1, -1, -1, -1) * inverse
    conjugation = np.asarray(_integral(list(conjugation_rational), 'conjugación'),
                             dtype=np.int64).reshape(4, 4)

    context = OrderContext(a, b, constants, gram, conjugation, basis)
    for i in range(4):
        e = context.unit_vector(i)
        if context.nrd(e) != context.quadratic_form(e):
            raise AxiomViolation('norma reducida', (i,))
    logger.debug(f"Orden construido: Gram duplicada {gram.tolist()}")
    return context


def nrd(x: Sequence[int], context: Optional[OrderContext] = None) -> int:
    return (context or build_order()).nrd(x)


# ---------------------------------------------------------------------------
# Retículos
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrderLattice:
    """Retículo de rango 4 en coordenadas del orden, en forma de Hermite canónica"""
    rows: Tuple[Tuple[int, ...], ...]
    form: EchelonForm = field(compare=False, repr=False)
    name: str = field(default='', compare=False)

    @classmethod
    def from_generators(cls, generators: Sequence[Sequence[int]], name: str = '') -> 'OrderLattice':
        """
        Raises:
            PreconditionFailed: Si los generadores no tienen rango 4
        """
        form = hermite_form([list(g) for g in generators])
        if form.rank != 4:
            raise PreconditionFailed(f"Retículo {name or ''} de rango {form.rank}, se requiere 4")
        return cls(form.rows, form, name)

    @property
    def index(self) -> int:
        return determinant_index(self.form, 4)

    def contains(self, x: Sequence[int]) -> bool:
        return lattice_membership(self.form, x) is not None

    def contains_lattice(self, other: 'OrderLattice') -> bool:
        return all(self.contains(row) for row in other.rows)

    def scaled(self, m: int) -> 'OrderLattice':
        return OrderLattice.from_generators([[m * v for v in row] for row in self.rows],
                                            f"{m}{self.name}")

    def to_text(self) -> str:
        return '\n'.join(' '.join(str(v) for v in row) for row in self.rows)


def parse_lattice(text: str, name: str = '') -> OrderLattice:
    """
    Cuatro filas de cuatro enteros (coordenadas del orden).

    Raises:
        SpecSyntaxError: Si el formato no es válido
    """
    try:
        rows = [[int(v) for v in line.split()] for line in text.splitlines() if line.strip()]
    except ValueError as e:
        raise SpecSyntaxError(f"Retículo mal formado: {e}")
    if len(rows) != 4 or any(len(r) != 4 for r in rows):
        raise SpecSyntaxError("Se esperaban cuatro filas de cuatro enteros")
    return OrderLattice.from_generators(rows, name)


def load_lattice(path: str, name: str = '') -> OrderLattice:
    file_path = Path(path)
    if not file_path.exists():
        raise SpecSyntaxError(f"No existe el archivo de retículo: {path}")
    return parse_lattice(file_path.read_text(encoding='ascii'), name)


def whole_order() -> OrderLattice:
    return OrderLattice.from_generators(np.eye(4, dtype=np.int64).tolist(), 'R')


def lattice_from_quaternions(generators: Sequence[Sequence], name: str,
                             context: Optional[OrderContext] = None) -> OrderLattice:
    context = context or build_order()
    return OrderLattice.from_generators([context.from_quaternion(q) for q in generators], name)


def lattice_index(lattice: OrderLattice) -> int:
    """[R : L] = |det|"""
    return lattice.index


def principal_right_ideal(g: Sequence[int], context: Optional[OrderContext] = None) -> OrderLattice:
    """gR generado por g·e_1, ..., g·e_4"""
    context = context or build_order()
    return OrderLattice.from_generators([context.mul(g, context.unit_vector(j)) for j in range(4)],
                                        f"({','.join(str(v) for v in g)})R")


def is_right_ideal(lattice: OrderLattice, context: Optional[OrderContext] = None) -> bool:
    """L·e_j ⊆ L para los cuatro elementos de la base"""
    context = context or build_order()
    return all(lattice.contains(context.mul(row, context.unit_vector(j)))
               for row in lattice.rows for j in range(4))


def _norm_box(context: OrderContext, n: int) -> List[int]:
    """|x_i| <= sqrt(2n (G^-1)_ii) para x·G·x = 2n"""
    inverse = Matrix(context.gram.tolist()).inv()
    return [isqrt(int(floor(2 * n * inverse[i, i]))) for i in range(4)]


def elements_of_norm(lattice: OrderLattice, n: int, context: Optional[OrderContext] = None,
                     limits: Optional[Limits] = None) -> List[OrderElement]:
    """
    Todos los x en L con nrd(x) = n, por enumeración en caja.

    Raises:
        PreconditionFailed: Si n < 1
        BoundExceeded: Si n supera norm_cap
    """
    context = context or build_order()
    limits = limits or current_limits()
    if n < 1:
        raise PreconditionFailed(f"Norma {n} < 1")
    if n > limits.norm_cap:
        raise BoundExceeded(f"Norma {n} supera la cota {limits.norm_cap}")

    bounds = _norm_box(context, n)
    ranges = [np.arange(-k, k + 1, dtype=np.int64) for k in bounds[1:]]
    rest = np.stack(np.meshgrid(*ranges, indexing='ij'), axis=-1).reshape(-1, 3)
    found: List[OrderElement] = []
    # Rebanadas por la primera coordenada
    for x0 in range(-bounds[0], bounds[0] + 1):
        candidates = np.concatenate([np.full((len(rest), 1), x0, dtype=np.int64), rest], axis=1)
        doubled = np.einsum('ni,ij,nj->n', candidates, context.gram, candidates)
        for x in candidates[doubled == 2 * n]:
            x = tuple(int(v) for v in x)
            if lattice.contains(x):
                found.append(x)
    return sorted(found)


def is_principal_right_ideal(lattice: OrderLattice, context: Optional[OrderContext] = None,
                             limits: Optional[Limits] = None) -> Verdict:
    """
    Busca g con nrd(g) = sqrt([R:L]) y gR = L.

    Raises:
        PreconditionFailed: Si L no es ideal derecho o su índice no es un cuadrado
    """
    context = context or build_order()
    if not is_right_ideal(lattice, context):
        raise PreconditionFailed(f"{lattice.name or 'L'} no es ideal derecho")
    m = isqrt(lattice.index)
    if m * m != lattice.index:
        raise PreconditionFailed(f"Índice {lattice.index} no es un cuadrado")

    candidates = elements_of_norm(lattice, m, context, limits)
    for g in candidates:
        if principal_right_ideal(g, context) == lattice:
            logger.info(f"{lattice.name or 'L'} = gR con g = {g}")
            return Verdict.verified({'generator': list(g), 'nrd': m})
    return Verdict.falsified({'norm': m, 'candidates': len(candidates)},
                             f"ningún elemento de norma {m} genera el ideal (búsqueda completa)")


# ---------------------------------------------------------------------------
# Reducción módulo p
# ---------------------------------------------------------------------------

@dataclass
class ModPReduction:
    """R/pR como anillo finito con las correspondencias retículo <-> ideal derecho"""
    context: OrderContext
    prime: int
    ring: StructureConstantRing

    def index_of(self, x: Sequence[int]) -> int:
        return self.ring.from_coords([v % self.prime for v in x])

    def image(self, lattice: OrderLattice) -> RightIdealSet:
        """
        L/pR como ideal derecho de R/pR.

        Raises:
            PreconditionFailed: Si L no contiene pR o no es ideal derecho
        """
        if not lattice.contains_lattice(whole_order().scaled(self.prime)):
            raise PreconditionFailed(f"{lattice.name or 'L'} no contiene {self.prime}R")
        members = additive_closure(self.ring, [self.index_of(row) for row in lattice.rows])
        if right_ideal(self.ring, members).members != members:
            raise PreconditionFailed(f"{lattice.name or 'L'}/{self.prime}R no es ideal derecho")
        return RightIdealSet(self.ring, members, tuple(self.index_of(row) for row in lattice.rows))

    def preimage(self, members: Sequence[int], name: str = '') -> OrderLattice:
        """Retículo generado por levantamientos de members y pR"""
        rows = [list(self.ring.coords(int(m))) for m in members]
        rows += [[self.prime if i == j else 0 for j in range(4)] for i in range(4)]
        return OrderLattice.from_generators(rows, name)


@lru_cache(maxsize=4)
def mod_p_reduction(prime: int = REDUCTION_PRIME) -> ModPReduction:
    """
    R/pR con las constantes de estructura módulo p.

    Raises:
        PreconditionFailed: Para primos distintos de 3
    """
    if prime != REDUCTION_PRIME:
        raise PreconditionFailed(f"Solo se soporta p = {REDUCTION_PRIME}")
    context = build_order()
    ring = StructureConstantRing(context.constants, prime, f"quat:R/{prime}R")
    verify_ring_axioms(ring)
    return ModPReduction(context, prime, ring)


def find_unit_carrying(reduction: ModPReduction, source: RightIdealSet,
                       target: RightIdealSet) -> Optional[int]:
    """Menor unidad u de R/pR con u·source = target"""
    ring = reduction.ring
    wanted = set(target.members)
    members = np.asarray(source.members, dtype=np.int64)
    for u in units(ring):
        if set(int(v) for v in ring.mul_many(u, members)) == wanted:
            return u
    return None


def composition_series_check(reduction: ModPReduction, sub: RightIdealSet) -> Verdict:
    """0 ⊊ sub ⊊ R/pR con factores simples"""
    ring = reduction.ring
    subs = submodules(regular_module(ring), ring.limits)
    inner = [s for s in subs if s.size not in (1, sub.size) and set(s.members) < set(sub.members)]
    outer = [s for s in subs if s.size not in (sub.size, ring.size) and set(sub.members) < set(s.members)]
    proper = 1 < sub.size < ring.size
    if not proper or inner or outer:
        return Verdict.falsified({'proper': proper, 'inner': len(inner), 'outer': len(outer)})
    return Verdict.verified({'lengths': [1, sub.size, ring.size]})


def verify_example36(i_lattice: Optional[OrderLattice] = None, j_lattice: Optional[OrderLattice] = None,
                     limits: Optional[Limits] = None) -> Report:
    """
    Un submódulo de R/3R que es pi-exacto para la presentación canónica y no
    para la presentación torcida por una unidad.

    Las bases de I y J se vuelven a verificar antes de usarse.
    """
    limits = limits or current_limits()
    context = build_order()
    p = REDUCTION_PRIME
    i_lattice = i_lattice or lattice_from_quaternions(I_GENERATORS, 'I', context)
    j_lattice = j_lattice or lattice_from_quaternions(J_GENERATORS, 'J', context)
    p_lattice = whole_order().scaled(p)
    report = Report(command='quat example36', input_spec=f"({context.a},{context.b}/Q) p={p}")

    for lattice in (i_lattice, j_lattice):
        report.lines.append(f"{lattice.name}:")
        report.lines.extend('  ' + line for line in lattice.to_text().splitlines())

    with report.timed() as t:
        shape = {}
        for lattice in (i_lattice, j_lattice):
            shape[lattice.name] = {
                'right_ideal': is_right_ideal(lattice, context),
                'index': lattice.index,
                'contains_pR': lattice.contains_lattice(p_lattice),
            }
        ok = all(s['right_ideal'] and s['index'] == p * p and s['contains_pR'] for s in shape.values())
    report.add('right_ideals_of_index_9', verdict_of(ok, shape), details=shape, elapsed_ms=t['elapsed_ms'])

    with report.timed() as t:
        i_principal = is_principal_right_ideal(i_lattice, context, limits)
        j_principal = is_principal_right_ideal(j_lattice, context, limits)
    report.add('I_principal', i_principal, elapsed_ms=t['elapsed_ms'])
    report.add('J_non_principal', verdict_of(not j_principal.holds, {'generator': j_principal.witness}),
               details={'search': j_principal.witness, 'certificate': j_principal.certificate})

    reduction = mod_p_reduction(p)
    ring = reduction.ring
    i_image = reduction.image(i_lattice)
    j_image = reduction.image(j_lattice)
    report.lines.append(f"R/{p}R: {ring.size} elementos, {len(units(ring))} unidades")
    report.lines.append(f"I/P: {i_image.labels()}")
    report.lines.append(f"J/P: {j_image.labels()}")

    with report.timed() as t:
        unit = find_unit_carrying(reduction, j_image, i_image)
        reverse = find_unit_carrying(reduction, i_image, j_image)
    report.add('unit_J_to_I', verdict_of(unit is not None, {'searched': len(units(ring))}),
               details={'u': None if unit is None else ring.label(unit)}, elapsed_ms=t['elapsed_ms'])
    report.add('unit_I_to_J', verdict_of(reverse is not None, {'searched': len(units(ring))}),
               details={'u': None if reverse is None else ring.label(reverse)})

    canonical_preimage = reduction.preimage(i_image.members, 'pi^-1(I/P)')
    report.add('pi_exact_canonical',
               verdict_of(canonical_preimage == i_lattice and i_principal.holds,
                          {'preimage': canonical_preimage.to_text()}),
               details={'preimage_equals_I': canonical_preimage == i_lattice})

    if unit is not None:
        twisted = ring.mul_many(unit, ring.elements())
        bijective = len(set(int(v) for v in twisted)) == ring.size
        pulled = [m for m in range(ring.size) if i_image.contains(int(twisted[m]))]
        twisted_preimage = reduction.preimage(pulled, "pi'^-1(I/P)")
        report.add('not_pi_exact_twisted',
                   verdict_of(bijective and twisted_preimage == j_lattice and not j_principal.holds,
                              {'preimage': twisted_preimage.to_text()}),
                   details={'preimage_equals_J': twisted_preimage == j_lattice})

    report.add('composition_series', composition_series_check(reduction, i_image))
    return report

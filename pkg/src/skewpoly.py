"""
Anillos de polinomios torcidos F_q[x; sigma]
Aritmética euclídea, factorizaciones módulo inserción de unidades,
cadenas de ideales principales, posets de submódulos pi-exactos,
clausura por sumas y el contraejemplo en Z[x].
"""

import json
import logging
import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Poly, Symbol, divisors, factorint, isprime, resultant
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p, gf_mul, gf_rem

from .lattice import hermite_form, lattice_membership
from .modules import FiniteModule, Submodule, submodule_closure, submodule_sum, submodules
from .report import Report, Status, Verdict, verdict_of
from .utils import (
    Limits,
    current_limits,
    AxiomViolation,
    DivisionByZero,
    NotDivisible,
    PreconditionFailed,
    SizeExceeded,
    SpecSyntaxError,
)

logger = logging.getLogger('cyclic-covers.skewpoly')

MAX_CHARACTERISTIC = 13
MAX_DEGREE = 3
MAX_FIELD_ORDER = 729
MAX_POSET_DEGREE = 4
FIELD_AXIOM_LIMIT = 81


# ---------------------------------------------------------------------------
# Cuerpos finitos
# ---------------------------------------------------------------------------

class GaloisField:
    """
    F_{p^n} = F_p[t]/(m(t)) con m el menor mónico irreducible de grado n.

    El elemento sum a_k t^k se codifica como el entero sum a_k p^k.
    """

    def __init__(self, p: int, n: int):
        if not isprime(p) or p > MAX_CHARACTERISTIC:
            raise SpecSyntaxError(f"Característica no soportada: {p}")
        if not 1 <= n <= MAX_DEGREE or p ** n > MAX_FIELD_ORDER:
            raise SpecSyntaxError(f"Grado no soportado: {p}^{n}")
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = self._smallest_irreducible()

        ranks = np.arange(self.q, dtype=np.int64)
        self._weights = p ** np.arange(n, dtype=np.int64)
        self.digits = (ranks[:, None] // self._weights[None, :]) % p
        self.add_table = self._encode((self.digits[:, None, :] + self.digits[None, :, :]) % p)
        self.neg = self._encode((-self.digits) % p)

        self.exp, self.log = self._discrete_logs()
        self.mul_table = self._build_mul_table()
        self.inv = np.zeros(self.q, dtype=np.int64)
        self.inv[1:] = self.exp[(-self.log[1:]) % (self.q - 1)]
        if self.q <= FIELD_AXIOM_LIMIT:
            self._verify_axioms()
        logger.debug(f"F_{self.q} construido con polinomio {self.modulus}")

    @property
    def name(self) -> str:
        return f"{self.p}^{self.n}"

    def _encode(self, digits: np.ndarray) -> np.ndarray:
        return (np.asarray(digits, dtype=np.int64) * self._weights).sum(axis=-1)

    def _smallest_irreducible(self) -> List[int]:
        """Coeficientes de menor a mayor grado del menor mónico irreducible"""
        for k in range(self.p ** self.n):
            low = [(k // self.p ** i) % self.p for i in range(self.n)]
            poly = low + [1]
            if gf_irreducible_p([ZZ(c) for c in reversed(poly)], self.p, ZZ):
                return poly
        raise AxiomViolation('polinomio irreducible', (self.p, self.n))

    def _to_gf(self, a: int) -> List[int]:
        digits = [ZZ(int(d)) for d in reversed(self.digits[a])]
        while digits and digits[0] == 0:
            digits.pop(0)
        return digits

    def _from_gf(self, poly: Sequence[int]) -> int:
        return sum(int(c) * self.p ** i for i, c in enumerate(reversed(poly)))

    def _poly_mul(self, a: int, b: int) -> int:
        modulus = [ZZ(c) for c in reversed(self.modulus)]
        return self._from_gf(gf_rem(gf_mul(self._to_gf(a), self._to_gf(b), self.p, ZZ),
                                    modulus, self.p, ZZ))

    def _discrete_logs(self) -> Tuple[np.ndarray, np.ndarray]:
        order = self.q - 1
        for g in range(1, self.q):
            powers = [1]
            current = g
            while current != 1:
                powers.append(current)
                current = self._poly_mul(current, g)
            if len(powers) == order:
                exp = np.asarray(powers, dtype=np.int64)
                log = np.zeros(self.q, dtype=np.int64)
                log[exp] = np.arange(order)
                return exp, log
        raise AxiomViolation('elemento primitivo', (self.q,))

    def _build_mul_table(self) -> np.ndarray:
        order = self.q - 1
        logs = self.log[1:]
        table = np.zeros((self.q, self.q), dtype=np.int64)
        table[1:, 1:] = self.exp[(logs[:, None] + logs[None, :]) % order]
        return table

    def _verify_axioms(self) -> None:
        add, mul = self.add_table, self.mul_table
        for a in range(self.q):
            row = mul[a]
            if not (mul[row] == row[mul]).all():
                raise AxiomViolation('asociatividad en F_q', (a,))
            if not (row[add] == add[row[:, None], row[None, :]]).all():
                raise AxiomViolation('distributividad en F_q', (a,))

    def power_map(self, exponent: int) -> np.ndarray:
        """a -> a^exponent (0 -> 0 para exponente positivo)"""
        result = np.zeros(self.q, dtype=np.int64)
        result[1:] = self.exp[(self.log[1:] * exponent) % (self.q - 1)]
        return result

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("División por cero en F_q")
        return int(self.mul_table[a, self.inv[b]])

    def element(self, vector: Sequence[int]) -> int:
        vector = list(vector) + [0] * (self.n - len(vector))
        if len(vector) != self.n:
            raise SpecSyntaxError(f"Vector de longitud {len(vector)} para F_{self.q}")
        return int(sum((int(c) % self.p) * self.p ** i for i, c in enumerate(vector)))

    def vector(self, a: int) -> List[int]:
        return [int(d) for d in self.digits[a]]

    def basis(self) -> List[int]:
        """Base de F_q sobre F_p: 1, t, ..., t^(n-1)"""
        return [self.p ** k for k in range(self.n)]


@lru_cache(maxsize=32)
def galois_field(p: int, n: int) -> GaloisField:
    return GaloisField(p, n)


# ---------------------------------------------------------------------------
# Polinomios torcidos
# ---------------------------------------------------------------------------

class SkewPolyRing:
    """F_q[x; sigma] con sigma = Frobenius^i y la regla x·a = sigma(a)·x"""

    def __init__(self, field_: GaloisField, frobenius_power: int = 1):
        self.field = field_
        self.frobenius_power = frobenius_power % field_.n
        self._sigma_cache: Dict[int, np.ndarray] = {}

    @property
    def is_commutative(self) -> bool:
        return self.frobenius_power == 0

    @property
    def spec_text(self) -> str:
        return f"field={self.field.name};sigma=frob^{self.frobenius_power}"

    def sigma_power(self, k: int) -> np.ndarray:
        """sigma^k como arreglo (k puede ser negativo)"""
        key = (self.frobenius_power * k) % self.field.n
        if key not in self._sigma_cache:
            self._sigma_cache[key] = self.field.power_map(self.field.p ** key)
        return self._sigma_cache[key]

    def sigma(self, a: int, k: int = 1) -> int:
        return int(self.sigma_power(k)[a])

    def poly(self, coeffs: Sequence[int]) -> 'SkewPoly':
        return SkewPoly(self, tuple(int(c) for c in coeffs))

    def const(self, c: int) -> 'SkewPoly':
        return self.poly([c])

    @cached_property
    def zero(self) -> 'SkewPoly':
        return self.poly([])

    @cached_property
    def one(self) -> 'SkewPoly':
        return self.poly([1])

    @cached_property
    def x(self) -> 'SkewPoly':
        return self.poly([0, 1])

    def units(self) -> List[int]:
        return list(range(1, self.field.q))

    def monic(self, lower: Sequence[int]) -> 'SkewPoly':
        return self.poly(list(lower) + [1])

    def random_poly(self, rng: random.Random, degree: int, monic: bool = False) -> 'SkewPoly':
        q = self.field.q
        lower = [rng.randrange(q) for _ in range(degree)]
        lead = 1 if monic else rng.randrange(1, q)
        return self.poly(lower + [lead])

    def __eq__(self, other) -> bool:
        return (isinstance(other, SkewPolyRing) and self.field is other.field
                and self.frobenius_power == other.frobenius_power)

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.n, self.frobenius_power))

    def __repr__(self) -> str:
        return f"SkewPolyRing({self.spec_text})"


@dataclass(frozen=True)
class SkewPoly:
    """Polinomio torcido con coeficientes de menor a mayor grado (sin ceros finales)"""
    ring: SkewPolyRing = field(compare=False, repr=False)
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        coeffs = list(self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    @property
    def is_unit(self) -> bool:
        return self.degree == 0

    def __add__(self, other: 'SkewPoly') -> 'SkewPoly':
        f = self.ring.field
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return SkewPoly(self.ring, tuple(f.add(x, y) for x, y in zip(a, b)))

    def __neg__(self) -> 'SkewPoly':
        neg = self.ring.field.neg
        return SkewPoly(self.ring, tuple(int(neg[c]) for c in self.coeffs))

    def __sub__(self, other: 'SkewPoly') -> 'SkewPoly':
        return self + (-other)

    def __mul__(self, other: 'SkewPoly') -> 'SkewPoly':
        if self.is_zero or other.is_zero:
            return self.ring.zero
        f = self.ring.field
        b = np.asarray(other.coeffs, dtype=np.int64)
        result = np.zeros(len(self.coeffs) + len(b) - 1, dtype=np.int64)
        for i, a in enumerate(self.coeffs):
            if a:
                terms = f.mul_table[a, self.ring.sigma_power(i)[b]]
                window = result[i:i + len(b)]
                result[i:i + len(b)] = f.add_table[window, terms]
        return SkewPoly(self.ring, tuple(int(c) for c in result))

    def scale_right(self, unit: int) -> 'SkewPoly':
        """f·u = sum a_k sigma^k(u) x^k"""
        f = self.ring.field
        return SkewPoly(self.ring, tuple(f.mul(a, self.ring.sigma(unit, k)) for k, a in enumerate(self.coeffs)))

    def scale_left(self, unit: int) -> 'SkewPoly':
        f = self.ring.field
        return SkewPoly(self.ring, tuple(f.mul(unit, a) for a in self.coeffs))

    def right_monic(self) -> Tuple['SkewPoly', int]:
        """
        Normaliza por la derecha: devuelve (g, u) con g = f·u mónico.

        Raises:
            DivisionByZero: Para el polinomio cero
        """
        if self.is_zero:
            raise DivisionByZero("El polinomio cero no tiene forma mónica")
        f = self.ring.field
        unit = self.ring.sigma(int(f.inv[self.leading]), -self.degree)
        return self.scale_right(unit), unit

    def to_text(self) -> str:
        """field=p^n;sigma=frob^i;coeffs=[[a0,...],...]"""
        vectors = ','.join('[' + ','.join(str(v) for v in self.ring.field.vector(c)) + ']'
                           for c in self.coeffs)
        return f"{self.ring.spec_text};coeffs=[{vectors}]"

    def __str__(self) -> str:
        if self.is_zero:
            return '0'
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            coef = str(c) if self.ring.field.n == 1 else 'a' + str(c)
            if k == 0:
                terms.append(coef)
            else:
                monomial = 'x' if k == 1 else f'x^{k}'
                terms.append(monomial if c == 1 else f"{coef}*{monomial}")
        return ' + '.join(reversed(terms))


def parse_field(text: str) -> GaloisField:
    """'p^n' o 'p'"""
    try:
        if '^' in text:
            p, n = text.split('^')
            return galois_field(int(p), int(n))
        return galois_field(int(text), 1)
    except ValueError:
        raise SpecSyntaxError(f"Cuerpo mal formado: {text}")


def parse_sigma(text: str) -> int:
    """'frob^i', 'frob' o 'id'"""
    if text in ('id', 'frob^0'):
        return 0
    if text == 'frob':
        return 1
    if text.startswith('frob^'):
        try:
            return int(text[5:])
        except ValueError:
            pass
    raise SpecSyntaxError(f"Automorfismo mal formado: {text}")


def parse_coefficients(ring: SkewPolyRing, text: str) -> SkewPoly:
    """Lista JSON de coeficientes: vectores sobre F_p o enteros codificados"""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecSyntaxError(f"Coeficientes mal formados '{text}': {e}")
    if not isinstance(raw, list):
        raise SpecSyntaxError(f"Se esperaba una lista de coeficientes: {text}")
    coeffs = []
    for item in raw:
        if isinstance(item, list):
            coeffs.append(ring.field.element(item))
        elif isinstance(item, int) and 0 <= item < ring.field.q:
            coeffs.append(item)
        else:
            raise SpecSyntaxError(f"Coeficiente inválido: {item!r}")
    return ring.poly(coeffs)


def parse_skew_poly(text: str) -> SkewPoly:
    """
    Parsea 'field=p^n;sigma=frob^i;coeffs=[c0,c1,...]'.

    Raises:
        SpecSyntaxError: Si falta un campo o un valor es inválido
    """
    parts: Dict[str, str] = {}
    for chunk in text.strip().split(';'):
        if '=' not in chunk:
            raise SpecSyntaxError(f"Campo sin '=' en '{text}'")
        key, value = chunk.split('=', 1)
        parts[key.strip()] = value.strip()
    missing = {'field', 'sigma', 'coeffs'} - parts.keys()
    if missing:
        raise SpecSyntaxError(f"Faltan campos {sorted(missing)} en '{text}'")
    ring = SkewPolyRing(parse_field(parts['field']), parse_sigma(parts['sigma']))
    return parse_coefficients(ring, parts['coeffs'])


# ---------------------------------------------------------------------------
# División
# ---------------------------------------------------------------------------

def _term(ring: SkewPolyRing, coeff: int, degree: int) -> SkewPoly:
    return ring.poly([0] * degree + [coeff])


def right_divmod(a: SkewPoly, b: SkewPoly) -> Tuple[SkewPoly, SkewPoly]:
    """
    a = q·b + r con deg r < deg b.

    Raises:
        DivisionByZero: Si b = 0
    """
    if b.is_zero:
        raise DivisionByZero("División por el polinomio cero")
    ring = a.ring
    f = ring.field
    quotient = ring.zero
    remainder = a
    while not remainder.is_zero and remainder.degree >= b.degree:
        shift = remainder.degree - b.degree
        gamma = f.div(remainder.leading, ring.sigma(b.leading, shift))
        term = _term(ring, gamma, shift)
        quotient = quotient + term
        remainder = remainder - term * b
    return quotient, remainder


def left_divmod(a: SkewPoly, b: SkewPoly) -> Tuple[SkewPoly, SkewPoly]:
    """
    a = b·q + r con deg r < deg b (división de ideales derechos).

    Raises:
        DivisionByZero: Si b = 0
    """
    if b.is_zero:
        raise DivisionByZero("División por el polinomio cero")
    ring = a.ring
    f = ring.field
    quotient = ring.zero
    remainder = a
    while not remainder.is_zero and remainder.degree >= b.degree:
        shift = remainder.degree - b.degree
        gamma = ring.sigma(f.div(remainder.leading, b.leading), -b.degree)
        term = _term(ring, gamma, shift)
        quotient = quotient + term
        remainder = remainder - b * term
    return quotient, remainder


def in_right_ideal(a: SkewPoly, generator: SkewPoly) -> bool:
    """a ∈ generator·R"""
    if generator.is_zero:
        return a.is_zero
    return left_divmod(a, generator)[1].is_zero


def extended_right_gcd(a: SkewPoly, b: SkewPoly) -> Tuple[SkewPoly, SkewPoly, SkewPoly, SkewPoly]:
    """
    Euclides con división por la izquierda.

    Returns:
        (d, u, v, m): d = a·u + b·v genera aR + bR, y m = a·u' genera aR ∩ bR
        (m es cero si a o b es cero)
    """
    ring = a.ring
    r_prev, r_curr = a, b
    u_prev, u_curr = ring.one, ring.zero
    v_prev, v_curr = ring.zero, ring.one
    while not r_curr.is_zero:
        q, r_next = left_divmod(r_prev, r_curr)
        r_prev, r_curr = r_curr, r_next
        u_prev, u_curr = u_curr, u_prev - u_curr * q
        v_prev, v_curr = v_curr, v_prev - v_curr * q
    return r_prev, u_prev, v_prev, a * u_curr


def right_gcd_sum(a: SkewPoly, b: SkewPoly) -> SkewPoly:
    """
    Generador mónico d de aR + bR.

    Raises:
        PreconditionFailed: Si ambos son cero
    """
    if a.is_zero and b.is_zero:
        raise PreconditionFailed("aR + bR con a = b = 0")
    d, _, _, _ = extended_right_gcd(a, b)
    return d.right_monic()[0]


def left_lcm_intersection(a: SkewPoly, b: SkewPoly) -> SkewPoly:
    """
    Generador mónico m de aR ∩ bR, con deg m = deg a + deg b - deg(aR + bR).

    Raises:
        PreconditionFailed: Si a o b es cero
    """
    if a.is_zero or b.is_zero:
        raise PreconditionFailed("aR ∩ bR requiere a, b no nulos")
    d, _, _, m = extended_right_gcd(a, b)
    m_monic = m.right_monic()[0]
    if m_monic.degree != a.degree + b.degree - d.degree:
        raise AxiomViolation('grado de mcm', (str(a), str(b)))
    return m_monic


# ---------------------------------------------------------------------------
# Divisores y factorizaciones
# ---------------------------------------------------------------------------

def _monic_candidates(ring: SkewPolyRing, degree: int, limits: Limits):
    q = ring.field.q
    count = q ** degree
    if count > limits.divisor_candidate_cap:
        raise SizeExceeded(f"Divisores de grado {degree} sobre F_{q}", count, limits.divisor_candidate_cap)
    for lower in product(range(q), repeat=degree):
        yield ring.monic(lower)


def monic_right_divisors(f: SkewPoly, degree: int, limits: Optional[Limits] = None) -> List[SkewPoly]:
    """Mónicos g de grado dado con f = q·g (barrido exhaustivo de q^d candidatos)"""
    if not 0 <= degree <= f.degree:
        raise PreconditionFailed(f"Grado {degree} fuera de [0, {f.degree}]")
    limits = limits or current_limits()
    return [g for g in _monic_candidates(f.ring, degree, limits) if right_divmod(f, g)[1].is_zero]


def monic_left_divisors(f: SkewPoly, degree: int, limits: Optional[Limits] = None) -> List[SkewPoly]:
    """Mónicos g de grado dado con f = g·q, es decir fR ⊆ gR"""
    if not 0 <= degree <= f.degree:
        raise PreconditionFailed(f"Grado {degree} fuera de [0, {f.degree}]")
    limits = limits or current_limits()
    return [g for g in _monic_candidates(f.ring, degree, limits) if left_divmod(f, g)[1].is_zero]


def is_irreducible(f: SkewPoly, limits: Optional[Limits] = None) -> bool:
    """Sin factorización f = g·h con ambos factores de grado positivo"""
    if f.degree < 1:
        return False
    return not any(monic_left_divisors(f, d, limits) for d in range(1, f.degree))


@dataclass(frozen=True)
class Factorization:
    """f = x_1 ··· x_n · unit con x_i mónicos de grado >= 1"""
    factors: Tuple[SkewPoly, ...]
    unit: int
    base: SkewPoly

    def product(self) -> SkewPoly:
        result = self.base.ring.one
        for factor in self.factors:
            result = result * factor
        return result.scale_right(self.unit)

    @property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(x.degree for x in self.factors)

    def key(self) -> Tuple:
        return tuple((x.degree, x.coeffs) for x in self.factors)

    def labels(self) -> List[str]:
        return [f"({x})" for x in self.factors]


@dataclass(frozen=True)
class IdealChain:
    """1 = y_0, y_1, ..., y_n con y_n R = base R y grados estrictamente crecientes"""
    generators: Tuple[SkewPoly, ...]
    base: SkewPoly

    def labels(self) -> List[str]:
        return [str(y) for y in self.generators]


def _monic_factorizations(g: SkewPoly, limits: Limits,
                          memo: Dict[Tuple[int, ...], List[Tuple[SkewPoly, ...]]]) -> List[Tuple[SkewPoly, ...]]:
    if g.coeffs in memo:
        return memo[g.coeffs]
    result: List[Tuple[SkewPoly, ...]] = [(g,)]
    for degree in range(1, g.degree):
        for head in monic_left_divisors(g, degree, limits):
            tail, _ = left_divmod(g, head)
            for rest in _monic_factorizations(tail, limits, memo):
                result.append((head,) + rest)
    memo[g.coeffs] = result
    return result


def enumerate_factorizations(f: SkewPoly, limits: Optional[Limits] = None) -> List[Factorization]:
    """
    Todas las factorizaciones de f módulo inserción de unidades (factores mónicos).

    Los factores no tienen que ser irreducibles. Orden determinista por
    (grados, coeficientes).

    Raises:
        PreconditionFailed: Si deg f < 1
    """
    if f.degree < 1:
        raise PreconditionFailed("Se requiere deg f >= 1")
    limits = limits or current_limits()
    monic, eta = f.right_monic()
    unit = int(f.ring.field.inv[eta])
    seen: Dict[Tuple, Factorization] = {}
    for factors in _monic_factorizations(monic, limits, {}):
        factorization = Factorization(factors, unit, f)
        seen.setdefault(factorization.key(), factorization)
    result = sorted(seen.values(), key=lambda F: (len(F.factors), F.key()))
    logger.debug(f"{f}: {len(result)} factorizaciones")
    return result


def maximal_factorizations(f: SkewPoly, limits: Optional[Limits] = None) -> List[Factorization]:
    """Factorizaciones en irreducibles (cadenas maximales)"""
    return [F for F in enumerate_factorizations(f, limits)
            if all(is_irreducible(x, limits) for x in F.factors)]


def count_maximal_factorizations_right(f: SkewPoly, limits: Optional[Limits] = None) -> int:
    """Conteo independiente pelando divisores derechos irreducibles"""
    limits = limits or current_limits()
    memo: Dict[Tuple[int, ...], int] = {}

    def irreducible_right(g: SkewPoly) -> bool:
        return g.degree >= 1 and not any(monic_right_divisors(g, d, limits) for d in range(1, g.degree))

    def count(g: SkewPoly) -> int:
        if g.degree == 0:
            return 1
        if g.coeffs not in memo:
            total = 0
            for degree in range(1, g.degree + 1):
                for tail in monic_right_divisors(g, degree, limits):
                    if irreducible_right(tail):
                        head, _ = right_divmod(g, tail)
                        total += count(head)
            memo[g.coeffs] = total
        return memo[g.coeffs]

    return count(f.right_monic()[0])


def chain_from_factorization(factorization: Factorization) -> IdealChain:
    """y_i = x_1 ··· x_i"""
    ring = factorization.base.ring
    generators = [ring.one]
    for factor in factorization.factors:
        generators.append(generators[-1] * factor)
    return IdealChain(tuple(generators), factorization.base)


def factorization_from_chain(chain: IdealChain) -> Factorization:
    """
    x_i = cociente de y_i por y_(i-1); se normaliza cada y_i a su forma mónica.

    Raises:
        NotDivisible: Si la cadena no es una cadena estricta de divisores
    """
    generators = chain.generators
    if not generators or generators[0].is_zero or generators[0].degree != 0:
        raise NotDivisible("La cadena debe empezar en una unidad")
    base_monic, eta = chain.base.right_monic()
    monic = [y.right_monic()[0] for y in generators]
    if monic[-1] != base_monic:
        raise NotDivisible("La cadena no termina en base·R")
    factors = []
    for previous, current in zip(monic, monic[1:]):
        if current.degree <= previous.degree:
            raise NotDivisible(f"Inclusión no estricta: {previous} -> {current}")
        quotient, remainder = left_divmod(current, previous)
        if not remainder.is_zero:
            raise NotDivisible(f"{current} no pertenece a ({previous})R")
        factors.append(quotient)
    unit = int(chain.base.ring.field.inv[eta])
    return Factorization(tuple(factors), unit, chain.base)


def insert_units(factorization: Factorization, units: Sequence[int]) -> List[SkewPoly]:
    """(x_1 e_1)(e_1^-1 x_2 e_2)···(e_(n-1)^-1 x_n)"""
    field_ = factorization.base.ring.field
    raw = []
    previous_inverse = 1
    for i, factor in enumerate(factorization.factors):
        scaled = factor.scale_left(previous_inverse)
        if i < len(factorization.factors) - 1:
            scaled = scaled.scale_right(units[i])
            previous_inverse = int(field_.inv[units[i]])
        raw.append(scaled)
    return raw


def canonicalize_factors(factors: Sequence[SkewPoly], base: SkewPoly) -> Factorization:
    """Forma canónica de una sucesión arbitraria de factores de base"""
    ring = base.ring
    generators = [ring.one]
    for factor in factors:
        generators.append(generators[-1] * factor)
    return factorization_from_chain(IdealChain(tuple(generators), base))


# ---------------------------------------------------------------------------
# El módulo R/fR
# ---------------------------------------------------------------------------

class SkewCyclicModule(FiniteModule):
    """
    R/fR como módulo derecho finito: los elementos son los restos de grado < deg f.

    operators(): x y la base 1, t, ..., t^(n-1) de F_q sobre F_p.
    """

    def __init__(self, f: SkewPoly, limits: Optional[Limits] = None):
        if f.is_zero:
            raise PreconditionFailed("R/0R no es finito")
        self.f, _ = f.right_monic()
        self.skew_ring = f.ring
        q = f.ring.field.q
        m = self.f.degree
        size = q ** m
        limits = limits or current_limits()
        if size > limits.module_size_cap:
            raise SizeExceeded(f"R/fR para f = {f}", size, limits.module_size_cap)
        super().__init__(f.ring, size, f"R/({self.f})R", limits)

        self._weights = q ** np.arange(m, dtype=np.int64)
        self.coefficients = (np.arange(size, dtype=np.int64)[:, None] // self._weights[None, :]) % q
        self._ops = [f.ring.x] + [f.ring.const(b) for b in f.ring.field.basis()]
        self._act_tables: Dict[int, np.ndarray] = {}

    def _encode(self, coefficients: np.ndarray) -> np.ndarray:
        return (coefficients * self._weights).sum(axis=-1)

    def element(self, index: int) -> SkewPoly:
        return self.skew_ring.poly(self.coefficients[index])

    def coset(self, poly: SkewPoly) -> int:
        """Índice de poly + fR"""
        _, remainder = left_divmod(poly, self.f)
        padded = list(remainder.coeffs) + [0] * (self.f.degree - len(remainder.coeffs))
        return int(self._encode(np.asarray(padded, dtype=np.int64))) if padded else 0

    def add_many(self, a, b):
        table = self.skew_ring.field.add_table
        return self._encode(table[self.coefficients[np.asarray(a)], self.coefficients[np.asarray(b)]])

    def neg_many(self, a):
        return self._encode(self.skew_ring.field.neg[self.coefficients[np.asarray(a)]])

    def act_table(self, op: int) -> np.ndarray:
        if op not in self._act_tables:
            poly = self._ops[op]
            self._act_tables[op] = np.asarray(
                [self.coset(self.element(i) * poly) for i in range(self.size)], dtype=np.int64)
        return self._act_tables[op]

    def act_many(self, a, op):
        return self.act_table(op)[np.asarray(a)]

    def act_poly(self, index: int, poly: SkewPoly) -> int:
        return self.coset(self.element(index) * poly)

    def operators(self):
        return list(range(len(self._ops)))

    def label(self, index):
        return str(self.element(index))


# ---------------------------------------------------------------------------
# Reportes
# ---------------------------------------------------------------------------

def _all_monic_left_divisors(f: SkewPoly, limits: Limits) -> List[SkewPoly]:
    monic = f.right_monic()[0]
    result = []
    for degree in range(0, monic.degree + 1):
        result.extend(monic_left_divisors(monic, degree, limits))
    return result


def _count_maximal_chains(subs) -> int:
    """Cadenas maximales 0 ⊂ ... ⊂ M en el retículo de submódulos"""
    covers: Dict[Tuple[int, ...], List] = {}
    for low in subs:
        above = [s for s in subs if s.size > low.size and low.issubset(s)]
        covers[low.members] = [s for s in above
                               if not any(t.size > low.size and t.size < s.size and low.issubset(t)
                                          and t.issubset(s) for t in above)]
    counts: Dict[Tuple[int, ...], int] = {}
    for sub in sorted(subs, key=lambda s: -s.size):
        counts[sub.members] = 1 if sub.is_full else sum(counts[c.members] for c in covers[sub.members])
    return counts[subs[0].members]


def factor_report(f: SkewPoly, include_all: bool = False, limits: Optional[Limits] = None) -> Report:
    """Factorizaciones (maximales por defecto) con el conteo de control por divisores derechos"""
    report = Report(command='skew factor', input_spec=f.to_text())
    with report.timed() as t:
        factorizations = enumerate_factorizations(f, limits)
        maximal = [F for F in factorizations if all(is_irreducible(x, limits) for x in F.factors)]
        oracle = count_maximal_factorizations_right(f, limits)
    listed = factorizations if include_all else maximal
    for F in listed:
        report.lines.append(' '.join(F.labels()) + (f" * {F.unit}" if F.unit != 1 else ''))
    report.add('maximal_count_matches_right_oracle',
               verdict_of(len(maximal) == oracle, {'left': len(maximal), 'right': oracle}),
               details={'maximal': len(maximal), 'all': len(factorizations)},
               elapsed_ms=t['elapsed_ms'])
    products_ok = all(F.product() == f for F in factorizations)
    report.add('products_reconstruct_f', verdict_of(products_ok))
    return report


def chains_report(f: SkewPoly, limits: Optional[Limits] = None, seed: Optional[int] = None) -> Report:
    """Cadenas de ideales, ida y vuelta e invariancia por inserción de unidades"""
    limits = limits or current_limits()
    rng = random.Random(limits.random_seed if seed is None else seed)
    report = Report(command='skew chains', input_spec=f.to_text())
    round_trip_failure = None
    rescale_failure = None
    units = f.ring.units()
    for F in enumerate_factorizations(f, limits):
        chain = chain_from_factorization(F)
        report.lines.append(' > '.join(f"({y})R" for y in reversed(chain.generators)))
        if factorization_from_chain(chain) != F and round_trip_failure is None:
            round_trip_failure = F.labels()
        rescaled = insert_units(F, [rng.choice(units) for _ in F.factors])
        if canonicalize_factors(rescaled, f) != F and rescale_failure is None:
            rescale_failure = F.labels()
    report.add('round_trip', verdict_of(round_trip_failure is None, round_trip_failure))
    report.add('unit_insertion_invariance', verdict_of(rescale_failure is None, rescale_failure))
    return report


def _multiplication_iso(module: SkewCyclicModule, sub: Submodule, g: SkewPoly,
                        limits: Limits) -> Tuple[bool, SkewPoly]:
    """
    g·: R/kR -> gR/fR con f = g·k es biyectiva y R-lineal.

    Returns:
        (resultado, k)
    """
    k, remainder = left_divmod(module.f, g)
    if not remainder.is_zero:
        return False, k
    if k.degree == 0:
        return sub.is_zero, k
    presented = SkewCyclicModule(k, limits)
    mapping = np.asarray([module.coset(g * presented.element(i)) for i in range(presented.size)])
    equivariant = all((mapping[presented.act_many(presented.elements(), op)]
                       == module.act_many(mapping, op)).all() for op in presented.operators())
    image = set(mapping.tolist())
    return len(image) == presented.size and image == set(sub.members) and equivariant, k


def pi_exactness_witness(module: SkewCyclicModule, sub: Submodule, g: SkewPoly,
                      limits: Limits) -> Optional[Dict[str, str]]:
    """
    Testigo de fallo de pi-exactitud de N = gR/fR, o None.

    La preimagen de N por R -> R/fR es gR si los restos de N son exactamente
    los de gR; gR ≅ R_R vía r -> g·r cuando g != 0 y g· induce R/kR ≅ N.
    """
    if g.is_zero:
        return {'g': '0'}
    members = set(sub.members)
    for i in range(module.size):
        residue = module.element(i)
        if (i in members) != in_right_ideal(residue, g):
            return {'g': str(g), 'residue': str(residue)}
    iso, k = _multiplication_iso(module, sub, g, limits)
    if not iso:
        return {'g': str(g), 'k': str(k)}
    return None


def pi_exact_poset(f: SkewPoly, limits: Optional[Limits] = None) -> Report:
    """
    Submódulos de R/fR frente a divisores mónicos g con fR ⊆ gR.

    Verifica la biyección, el isomorfismo de órdenes, que todo submódulo es
    pi-exacto y que las cadenas maximales coinciden con las factorizaciones maximales.

    Raises:
        SizeExceeded: Si deg f > 4 o el módulo supera la cota
    """
    limits = limits or current_limits()
    if f.degree > MAX_POSET_DEGREE:
        raise SizeExceeded(f"Grado de f = {f}", f.degree, MAX_POSET_DEGREE)
    report = Report(command='skew poset', input_spec=f.to_text())
    module = SkewCyclicModule(f, limits)

    with report.timed() as t:
        subs = submodules(module, limits)
        divisors_ = _all_monic_left_divisors(f, limits)
        image = {g.coeffs: submodule_closure(module, [module.coset(g)]) for g in divisors_}
    distinct = {s.members for s in image.values()}
    all_subs = {s.members for s in subs}
    report.add('bijection', verdict_of(len(distinct) == len(divisors_) and distinct == all_subs,
                                       {'divisors': len(divisors_), 'submodules': len(subs)}),
               elapsed_ms=t['elapsed_ms'])

    order_failure = None
    for g in divisors_:
        for h in divisors_:
            contained = image[g.coeffs].issubset(image[h.coeffs])
            if contained != in_right_ideal(g, h):
                order_failure = {'g': str(g), 'h': str(h)}
    report.add('order_isomorphism', verdict_of(order_failure is None, order_failure))
    pi_failure = None
    for g in divisors_:
        pi_failure = pi_exactness_witness(module, image[g.coeffs], g, limits)
        if pi_failure is not None:
            break
    report.add('all_pi_exact', verdict_of(pi_failure is None, pi_failure),
               details={'divisors': len(divisors_)})

    chains = _count_maximal_chains(subs)
    maximal = len(maximal_factorizations(f, limits))
    report.add('maximal_chain_count', verdict_of(chains == maximal, {'chains': chains, 'factorizations': maximal}))

    for g in sorted(divisors_, key=lambda p: (p.degree, p.coeffs)):
        report.lines.append(f"({g})R/fR: {image[g.coeffs].size} elementos")
    return report


def sum_closure_check(a: SkewPoly, b: SkewPoly, c: Optional[SkewPoly] = None,
                      limits: Optional[Limits] = None) -> Report:
    """
    aR + bR = dR y, en M = R/cR, aR/cR + bR/cR = dR/cR con dR/cR ≅ R/kR (c = d·k).

    Raises:
        PreconditionFailed: Si c = 0 o c no está en aR ∩ bR
    """
    limits = limits or current_limits()
    if c is None:
        c = left_lcm_intersection(a, b)
    if c.is_zero or not (in_right_ideal(c, a) and in_right_ideal(c, b)):
        raise PreconditionFailed("Se requiere 0 != c ∈ aR ∩ bR")
    report = Report(command='skew closure', input_spec=f"a={a.to_text()} b={b} c={c}")

    with report.timed() as t:
        d_raw, u, v, _ = extended_right_gcd(a, b)
        d, unit = d_raw.right_monic()
        u, v = u.scale_right(unit), v.scale_right(unit)
        principal = in_right_ideal(a, d) and in_right_ideal(b, d) and (a * u + b * v) == d
    report.add('principal_sum', verdict_of(principal, {'d': str(d)}),
               details={'d': str(d), 'u': str(u), 'v': str(v)}, elapsed_ms=t['elapsed_ms'])

    module = SkewCyclicModule(c, limits)
    sub_a = submodule_closure(module, [module.coset(a)])
    sub_b = submodule_closure(module, [module.coset(b)])
    sub_d = submodule_closure(module, [module.coset(d)])
    report.add('module_sum', verdict_of(submodule_sum(sub_a, sub_b).members == sub_d.members,
                                        {'d': str(d)}))
    pi_failure = pi_exactness_witness(module, sub_d, d, limits)
    report.add('pi_exact', verdict_of(pi_failure is None, pi_failure), details={'preimage': f"({d})R"})

    iso, k = _multiplication_iso(module, sub_d, d, limits)
    report.add('cyclically_presented', verdict_of(iso, {'k': str(k)}), details={'k': str(k)})
    return report


def random_sum_closure_harness(ring: SkewPolyRing, samples: int, max_degree: int = 3,
                               seed: Optional[int] = None, limits: Optional[Limits] = None) -> Report:
    """
    Ternas aleatorias (a, b, c = mcm·r) con semilla fija.

    deg r se sortea en [0, max_degree] sin que R/cR supere module_size_cap.
    """
    limits = limits or current_limits()
    rng = random.Random(limits.random_seed if seed is None else seed)
    report = Report(command='skew closure', input_spec=f"{ring.spec_text};samples={samples}")
    cap_degree = 0
    while ring.field.q ** (cap_degree + 1) <= limits.module_size_cap:
        cap_degree += 1
    failures = []
    strict = 0
    for _ in range(samples):
        a = ring.random_poly(rng, rng.randint(1, max_degree))
        b = ring.random_poly(rng, rng.randint(1, max_degree))
        m = left_lcm_intersection(a, b)
        c = m * ring.random_poly(rng, rng.randint(0, max(0, min(max_degree, cap_degree - m.degree))))
        strict += c.degree > m.degree
        sub_report = sum_closure_check(a, b, c, limits)
        if sub_report.status is not Status.VERIFIED:
            failures.append({'a': str(a), 'b': str(b), 'c': str(c)})
    report.add('random_triples', verdict_of(not failures, failures[:5]),
               details={'samples': samples, 'strict_c': strict})
    return report


def kernel_principal_check(f: SkewPoly, limits: Optional[Limits] = None) -> Verdict:
    """
    Para cada epimorfismo R -> R/fR con 1 -> u + fR (u unidad), el núcleo
    es u^-1 f R: principal con generador no nulo.
    """
    limits = limits or current_limits()
    module = SkewCyclicModule(f, limits)
    ring = f.ring
    for u in ring.units():
        generator = f.scale_left(int(ring.field.inv[u]))
        images = {module.act_poly(module.coset(ring.const(u)), module.element(i)) for i in range(module.size)}
        if generator.is_zero or not in_right_ideal(ring.const(u) * generator, module.f) \
                or len(images) != module.size:
            return Verdict.falsified({'unit': u, 'generator': str(generator)})
    return Verdict.verified({'units': len(ring.units())})


# ---------------------------------------------------------------------------
# Z[x]
# ---------------------------------------------------------------------------

X = Symbol('x')


def zx_poly(coeffs: Sequence[int]) -> Poly:
    """Polinomio entero desde coeficientes de menor a mayor grado"""
    return Poly(list(reversed([int(c) for c in coeffs])) or [0], X, domain='ZZ')


def parse_zx(text: str) -> Poly:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecSyntaxError(f"Polinomio entero mal formado '{text}': {e}")
    if not isinstance(raw, list) or not all(isinstance(c, int) for c in raw):
        raise SpecSyntaxError(f"Se esperaba una lista de enteros: {text}")
    return zx_poly(raw)


def _zx_divisors(g: Poly) -> List[Poly]:
    """Divisores de g en Z[x] con coeficiente principal positivo"""
    content, factors = g.factor_list()
    result = [Poly(c, X, domain='ZZ') for c in divisors(abs(int(content)))]
    for factor, multiplicity in factors:
        if factor.LC() < 0:
            factor = -factor
        result = [d * factor ** k for d in result for k in range(multiplicity + 1)]
    return sorted(result, key=lambda d: (-d.degree(), str(d.as_expr())))


def _mod_p_obstruction(a: Poly, b: Poly, p: int) -> Optional[Dict[str, Any]]:
    a_p = Poly(a.as_expr(), X, modulus=p)
    b_p = Poly(b.as_expr(), X, modulus=p)
    common = a_p.gcd(b_p)
    if common.is_zero or common.degree() >= 1:
        return {'prime': p, 'gcd_mod_p': str(common.as_expr())}
    return None


def zx_obstruction(a: Poly, b: Poly) -> Optional[Dict[str, Any]]:
    """
    Obstrucción a 1 ∈ aZ[x] + bZ[x]: factor común sobre Q, o primo p con
    mcd(a mod p, b mod p) no constante. None si el ideal es total.
    """
    if a.degree() >= 1 and b.degree() >= 1:
        common = a.gcd(b)
        if common.degree() >= 1:
            return {'common_factor': str(common.as_expr())}
        primes = factorint(abs(int(resultant(a.as_expr(), b.as_expr(), X))))
    else:
        constant = a if a.degree() <= 0 else b
        primes = factorint(abs(int(constant.LC())))
    for p in sorted(primes):
        obstruction = _mod_p_obstruction(a, b, p)
        if obstruction is not None:
            return obstruction
    return None


def recheck_zx_obstruction(a: Poly, b: Poly, obstruction: Dict[str, Any]) -> bool:
    """Vuelve a comprobar una obstrucción de forma independiente"""
    if 'prime' in obstruction:
        return _mod_p_obstruction(a, b, int(obstruction['prime'])) is not None
    return a.gcd(b).degree() >= 1


def _bezout_certificate(a: Poly, b: Poly, max_degree: int) -> Optional[Tuple[Poly, Poly]]:
    """u, v con a·u + b·v = 1 y grados <= max_degree, por pertenencia en un retículo"""
    da, db = max(a.degree(), 0), max(b.degree(), 0)
    a_low = list(reversed(a.all_coeffs()))
    b_low = list(reversed(b.all_coeffs()))
    for bound in range(max_degree + 1):
        width = max(da, db) + bound + 1
        rows = []
        for shift in range(bound + 1):
            rows.append(([0] * shift + [int(c) for c in a_low] + [0] * width)[:width])
        for shift in range(bound + 1):
            rows.append(([0] * shift + [int(c) for c in b_low] + [0] * width)[:width])
        coefficients = lattice_membership(hermite_form(rows), [1] + [0] * (width - 1))
        if coefficients is not None:
            u = zx_poly(coefficients[:bound + 1])
            v = zx_poly(coefficients[bound + 1:])
            return u, v
    return None


def zx_sum_principal(a: Poly, b: Poly, limits: Optional[Limits] = None) -> Verdict:
    """
    ¿Es aZ[x] + bZ[x] principal?

    Los candidatos d son los divisores de mcd(a, b); para cada uno se decide
    si 1 ∈ (a/d)Z[x] + (b/d)Z[x]. Verified exige un certificado a·u + b·v = d
    dentro de la cota de grado; Falsified lleva la obstrucción de cada candidato.
    """
    limits = limits or current_limits()
    if a.is_zero or b.is_zero:
        raise PreconditionFailed("zx_sum_principal requiere a, b no nulos")
    height = max(abs(int(c)) for c in a.all_coeffs() + b.all_coeffs())
    if max(a.degree(), b.degree()) > limits.zx_max_degree or height > limits.zx_max_coefficient:
        logger.warning(f"Entrada fuera de cota en Z[x]: grado o altura {height}")
        return Verdict.unknown(limits.zx_max_degree, 'entrada fuera de la cota de grado/altura')

    obstructions = []
    unobstructed = False
    for d in _zx_divisors(a.gcd(b)):
        a_reduced, b_reduced = a.exquo(d), b.exquo(d)
        obstruction = zx_obstruction(a_reduced, b_reduced)
        if obstruction is not None:
            obstructions.append({'d': str(d.as_expr()), 'obstruction': obstruction})
            continue
        unobstructed = True
        certificate = _bezout_certificate(a_reduced, b_reduced, limits.zx_max_degree)
        if certificate is not None:
            u, v = certificate
            if a * u + b * v == d:
                return Verdict.verified({'d': str(d.as_expr())},
                                        f"a*({u.as_expr()}) + b*({v.as_expr()}) = {d.as_expr()}")
    if unobstructed:
        return Verdict.unknown(limits.zx_max_degree, 'sin certificado dentro de la cota')
    logger.info(f"aZ[x] + bZ[x] no es principal: {obstructions}")
    return Verdict.falsified(obstructions, 'cada divisor común d tiene una obstrucción')


def zx_report(a: Poly, b: Poly, limits: Optional[Limits] = None) -> Report:
    report = Report(command='skew closure', input_spec=f"zx a={a.as_expr()} b={b.as_expr()}")
    with report.timed() as t:
        verdict = zx_sum_principal(a, b, limits)
    report.add('zx_sum_principal', verdict, elapsed_ms=t['elapsed_ms'])
    return report

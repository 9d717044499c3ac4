"""
Tests unitarios para el módulo skewpoly
"""

import random

import pytest

from src.modules import submodule_closure
from src.report import Status
from src.skewpoly import (
    GaloisField,
    SkewCyclicModule,
    SkewPolyRing,
    canonicalize_factors,
    chain_from_factorization,
    chains_report,
    count_maximal_factorizations_right,
    enumerate_factorizations,
    factor_report,
    factorization_from_chain,
    galois_field,
    in_right_ideal,
    insert_units,
    is_irreducible,
    kernel_principal_check,
    left_divmod,
    left_lcm_intersection,
    maximal_factorizations,
    monic_right_divisors,
    parse_coefficients,
    parse_field,
    parse_sigma,
    parse_skew_poly,
    parse_zx,
    pi_exact_poset,
    pi_exactness_witness,
    random_sum_closure_harness,
    recheck_zx_obstruction,
    right_divmod,
    right_gcd_sum,
    sum_closure_check,
    zx_sum_principal,
)
from src.utils import DivisionByZero, PreconditionFailed, SpecSyntaxError, current_limits


@pytest.fixture
def f4():
    """F_4 = F_2[t]/(t^2 + t + 1)"""
    return galois_field(2, 2)


@pytest.fixture
def skew(f4):
    """F_4[x; Frobenius]"""
    return SkewPolyRing(f4, 1)


@pytest.fixture
def commutative(f4):
    """F_4[x]"""
    return SkewPolyRing(f4, 0)


class TestGaloisField:
    """Tests para cuerpos finitos"""

    def test_f4_tables(self, f4):
        """t·t = t + 1 y t·(t + 1) = 1"""
        assert f4.q == 4
        assert f4.modulus == [1, 1, 1]
        assert f4.mul(2, 2) == 3
        assert int(f4.inv[2]) == 3

    @pytest.mark.parametrize('p,n', [(2, 3), (3, 2), (5, 1), (7, 2)])
    def test_inverses(self, p, n):
        """Todo elemento no nulo es invertible"""
        field_ = galois_field(p, n)
        for a in range(1, field_.q):
            assert field_.mul(a, int(field_.inv[a])) == 1

    @pytest.mark.parametrize('p,n', [(4, 1), (2, 4), (17, 1)])
    def test_unsupported(self, p, n):
        """Característica no prima o cuerpo fuera de rango"""
        with pytest.raises(SpecSyntaxError):
            GaloisField(p, n)

    def test_division_by_zero(self, f4):
        """No se divide por cero"""
        with pytest.raises(DivisionByZero):
            f4.div(1, 0)


class TestArithmetic:
    """Tests para la aritmética torcida"""

    def test_commutation_rule(self, skew):
        """x·a = sigma(a)·x"""
        assert skew.sigma(2) == 3
        assert skew.x * skew.const(2) == skew.poly([0, 3])
        assert skew.const(3) * skew.x == skew.poly([0, 3])

    def test_commutative_case(self, commutative):
        """Con sigma = id los monomios conmutan"""
        assert commutative.x * commutative.const(2) == commutative.const(2) * commutative.x

    def test_right_monic(self, skew):
        """2x + 1 se normaliza por la derecha"""
        f = skew.poly([1, 2])
        g, unit = f.right_monic()
        assert g.is_monic
        assert f.scale_right(unit) == g

    def test_divmod(self, skew):
        """a = q·b + r y a = b·q' + r' con grados menores"""
        rng = random.Random(7)
        for _ in range(50):
            a = skew.random_poly(rng, rng.randint(0, 5))
            b = skew.random_poly(rng, rng.randint(0, 3))
            q, r = right_divmod(a, b)
            assert q * b + r == a
            assert r.is_zero or r.degree < b.degree
            q, r = left_divmod(a, b)
            assert b * q + r == a
            assert r.is_zero or r.degree < b.degree

    def test_divide_by_zero_poly(self, skew):
        """Dividir por el polinomio cero"""
        with pytest.raises(DivisionByZero):
            left_divmod(skew.x, skew.zero)

    def test_gcd_and_lcm(self, skew):
        """dR = aR + bR contiene a y b; mR = aR ∩ bR está en ambos"""
        rng = random.Random(11)
        for _ in range(50):
            a = skew.random_poly(rng, rng.randint(1, 3))
            b = skew.random_poly(rng, rng.randint(1, 3))
            d = right_gcd_sum(a, b)
            assert in_right_ideal(a, d) and in_right_ideal(b, d)
            m = left_lcm_intersection(a, b)
            assert in_right_ideal(m, a) and in_right_ideal(m, b)

    def test_lcm_requires_nonzero(self, skew):
        """aR ∩ 0 no tiene generador mónico"""
        with pytest.raises(PreconditionFailed):
            left_lcm_intersection(skew.x, skew.zero)


class TestFactorizations:
    """Tests para factorizaciones módulo unidades"""

    def test_x_squared(self, skew):
        """x^2 tiene una sola factorización maximal"""
        f = skew.poly([0, 0, 1])
        assert len(maximal_factorizations(f)) == 1
        assert count_maximal_factorizations_right(f) == 1

    def test_x_squared_minus_one(self, skew):
        """x^2 - 1 = (x + b^2)(x + b) para las tres unidades b"""
        f = skew.poly([1, 0, 1])
        assert len(maximal_factorizations(f)) == 3
        assert count_maximal_factorizations_right(f) == 3
        assert len(enumerate_factorizations(f)) == 4

    def test_commutative_count(self, commutative):
        """En F_4[x]: x^2 - 1 = (x + 1)^2"""
        f = commutative.poly([1, 0, 1])
        assert len(maximal_factorizations(f)) == 1

    def test_right_divisors(self, skew):
        """x^2 - 1 tiene tres divisores derechos mónicos de grado uno"""
        f = skew.poly([1, 0, 1])
        divisors = monic_right_divisors(f, 1)
        assert len(divisors) == 3
        assert all(right_divmod(f, g)[1].is_zero for g in divisors)
        with pytest.raises(PreconditionFailed):
            monic_right_divisors(f, 3)

    def test_linear_is_irreducible(self, skew):
        """Grado uno es irreducible"""
        assert is_irreducible(skew.poly([2, 1]))
        assert not is_irreducible(skew.poly([1, 0, 1]))

    def test_constant_has_no_factorization(self, skew):
        """Se requiere grado positivo"""
        with pytest.raises(PreconditionFailed):
            enumerate_factorizations(skew.one)

    def test_sampled_round_trip(self, skew):
        """Factorización -> cadena -> factorización e inserción de unidades"""
        rng = random.Random(2024)
        units = skew.units()
        for _ in range(500):
            f = skew.random_poly(rng, rng.randint(1, 4))
            for F in enumerate_factorizations(f):
                assert F.product() == f
                assert factorization_from_chain(chain_from_factorization(F)) == F
                rescaled = insert_units(F, [rng.choice(units) for _ in F.factors])
                assert canonicalize_factors(rescaled, f) == F

    def test_chains_report(self, skew):
        """Ida y vuelta e invariancia para x^2 - 1"""
        report = chains_report(skew.poly([1, 0, 1]), seed=3)
        assert report.status is Status.VERIFIED
        assert len(report.lines) == 4

    def test_factor_report(self, skew):
        """Por defecto se listan solo las maximales"""
        f = skew.poly([1, 0, 1])
        assert len(factor_report(f).lines) == 3
        report = factor_report(f, include_all=True)
        assert len(report.lines) == 4
        assert report.status is Status.VERIFIED


class TestModules:
    """Tests para R/fR y sus submódulos"""

    @pytest.mark.parametrize('coeffs', [[1, 0, 1], [0, 0, 1], [2, 3, 1], [1, 1, 0, 1]])
    def test_poset(self, skew, coeffs):
        """Submódulos de R/fR y divisores mónicos se corresponden"""
        report = pi_exact_poset(skew.poly(coeffs))
        assert report.status is Status.VERIFIED
        assert [c.name for c in report.checks] == [
            'bijection', 'order_isomorphism', 'all_pi_exact', 'maximal_chain_count',
        ]

    def test_poset_x_squared_minus_one(self, skew):
        """Cinco submódulos: 0, tres de orden 4 y el total"""
        report = pi_exact_poset(skew.poly([1, 0, 1]))
        assert len(report.lines) == 5

    def test_poset_pi_exact_per_divisor(self, skew):
        """La pi-exactitud se decide divisor a divisor"""
        report = pi_exact_poset(skew.poly([1, 0, 1]))
        check = report.checks[2]
        assert check.name == 'all_pi_exact'
        assert check.details == {'divisors': 5}

    def test_pi_exactness_witness(self, skew):
        """(x + 1)R/fR tiene preimagen (x + 1)R ≅ R; con g = 1 o g = 0 falla"""
        limits = current_limits()
        module = SkewCyclicModule(skew.poly([1, 0, 1]), limits)
        g = skew.poly([1, 1])
        sub = submodule_closure(module, [module.coset(g)])
        assert pi_exactness_witness(module, sub, g, limits) is None
        assert 'residue' in pi_exactness_witness(module, sub, skew.one, limits)
        assert pi_exactness_witness(module, sub, skew.zero, limits) == {'g': '0'}

    def test_sum_closure(self, skew):
        """(x + 1)R + (x + t)R es principal y cerrado en R/cR"""
        report = sum_closure_check(skew.poly([1, 1]), skew.poly([2, 1]))
        assert report.status is Status.VERIFIED

    def test_sum_closure_requires_common_multiple(self, skew):
        """c debe estar en aR ∩ bR"""
        with pytest.raises(PreconditionFailed):
            sum_closure_check(skew.poly([1, 1]), skew.poly([2, 1]), skew.poly([0, 1]))

    def test_sum_closure_strict_multiple(self, skew):
        """Con c = mcm·r y deg r = 1 la suma sigue cerrada en R/cR"""
        a, b = skew.poly([1, 1]), skew.poly([2, 1])
        lcm = left_lcm_intersection(a, b)
        c = lcm * skew.poly([3, 1])
        assert c.degree == lcm.degree + 1
        report = sum_closure_check(a, b, c)
        assert report.status is Status.VERIFIED
        assert [check.name for check in report.checks] == [
            'principal_sum', 'module_sum', 'pi_exact', 'cyclically_presented']

    def test_random_harness(self, skew):
        """Cien ternas aleatorias con semilla fija"""
        report = random_sum_closure_harness(skew, 100, max_degree=2, seed=5)
        assert report.status is Status.VERIFIED
        assert report.checks[0].details['samples'] == 100
        assert report.checks[0].details['strict_c'] > 0

    def test_kernel_principal(self, skew):
        """El núcleo de cada epimorfismo R -> R/fR es principal"""
        assert kernel_principal_check(skew.poly([1, 0, 1])).holds


class TestIntegerPolynomials:
    """Tests para sumas de ideales principales en Z[x]"""

    def test_two_and_x(self):
        """(2, x) no es principal: obstrucción módulo 2"""
        a, b = parse_zx('[2]'), parse_zx('[0, 1]')
        verdict = zx_sum_principal(a, b)
        assert verdict.status is Status.FALSIFIED
        obstruction = verdict.witness[0]['obstruction']
        assert obstruction['prime'] == 2
        assert recheck_zx_obstruction(a, b, obstruction)

    def test_coprime(self):
        """xZ[x] + (x + 1)Z[x] = Z[x]"""
        verdict = zx_sum_principal(parse_zx('[0, 1]'), parse_zx('[1, 1]'))
        assert verdict.status is Status.VERIFIED
        assert verdict.witness == {'d': '1'}

    def test_common_divisor(self):
        """xZ[x] + 2xZ[x] = xZ[x]"""
        verdict = zx_sum_principal(parse_zx('[0, 1]'), parse_zx('[0, 2]'))
        assert verdict.status is Status.VERIFIED
        assert verdict.witness == {'d': 'x'}

    def test_out_of_bounds(self):
        """Coeficientes demasiado grandes dan Unknown"""
        verdict = zx_sum_principal(parse_zx('[1000]'), parse_zx('[0, 1]'))
        assert verdict.status is Status.UNKNOWN

    def test_zero_rejected(self):
        """a y b deben ser no nulos"""
        with pytest.raises(PreconditionFailed):
            zx_sum_principal(parse_zx('[0]'), parse_zx('[1]'))


class TestParsing:
    """Tests para la sintaxis de polinomios torcidos"""

    def test_parse_field(self):
        """'2^2' y '5'"""
        assert parse_field('2^2').q == 4
        assert parse_field('5').q == 5

    @pytest.mark.parametrize('text', ['4', 'a^b', '2^9'])
    def test_bad_field(self, text):
        """Cuerpos mal formados"""
        with pytest.raises(SpecSyntaxError):
            parse_field(text)

    def test_parse_sigma(self):
        """frob, frob^k e id"""
        assert parse_sigma('frob') == 1
        assert parse_sigma('frob^2') == 2
        assert parse_sigma('id') == 0
        with pytest.raises(SpecSyntaxError):
            parse_sigma('rot')

    def test_parse_coefficients(self, skew):
        """Vectores sobre F_p o enteros codificados"""
        assert parse_coefficients(skew, '[[1,1],0,1]') == skew.poly([3, 0, 1])
        with pytest.raises(SpecSyntaxError):
            parse_coefficients(skew, '[5]')
        with pytest.raises(SpecSyntaxError):
            parse_coefficients(skew, '{"a": 1}')

    def test_parse_skew_poly(self, skew):
        """Texto canónico completo"""
        f = parse_skew_poly('field=2^2;sigma=frob;coeffs=[1,0,1]')
        assert f == skew.poly([1, 0, 1])
        assert f.to_text() == 'field=2^2;sigma=frob^1;coeffs=[[1,0],[0,0],[1,0]]'

    def test_missing_field(self):
        """Faltan campos"""
        with pytest.raises(SpecSyntaxError):
            parse_skew_poly('field=2^2;coeffs=[1]')


@pytest.fixture(autouse=True)
def setup_logging():
    """Configura logging para tests"""
    import logging
    logging.basicConfig(level=logging.DEBUG)

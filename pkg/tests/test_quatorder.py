"""
Tests unitarios para el módulo quatorder
"""

import pytest
from sympy import Rational

from src.quatorder import (
    I_GENERATORS,
    J_GENERATORS,
    build_order,
    elements_of_norm,
    is_principal_right_ideal,
    is_right_ideal,
    lattice_index,
    lattice_from_quaternions,
    load_lattice,
    mod_p_reduction,
    nrd,
    parse_lattice,
    principal_right_ideal,
    verify_example36,
    whole_order,
)
from src.report import Status
from src.rings import jacobson_radical, units
from src.utils import BoundExceeded, IntegralityViolation, Limits, PreconditionFailed, SpecSyntaxError


@pytest.fixture
def context():
    return build_order()


@pytest.fixture
def ideals(context):
    """Los ideales derechos I y J de índice 9"""
    return (lattice_from_quaternions(I_GENERATORS, 'I', context),
            lattice_from_quaternions(J_GENERATORS, 'J', context))


class TestOrder:
    """Tests para las constantes de estructura del orden"""

    @pytest.mark.parametrize('x,norm', [
        ((1, 0, 0, 0), 1), ((0, 1, 0, 0), 1), ((0, 0, 1, 0), 3), ((0, 0, 0, 1), 3),
        ((1, 1, 1, 1), 10), ((-1, 0, 0, 1), 3),
    ])
    def test_reduced_norm(self, context, x, norm):
        """nrd = c1^2 + c2^2 + 3c3^2 + 3c4^2 + c1c4 + c2c3"""
        assert nrd(x, context) == norm
        assert context.quadratic_form(x) == norm

    def test_norm_is_multiplicative(self, context):
        """nrd(xy) = nrd(x)·nrd(y)"""
        xs = [(1, 2, 0, -1), (0, 1, 1, 0), (2, 0, -1, 3)]
        for x in xs:
            for y in xs:
                assert nrd(context.mul(x, y)) == nrd(x) * nrd(y)

    def test_identity(self, context):
        """e1 es la identidad"""
        x = (3, -1, 2, 5)
        assert context.mul((1, 0, 0, 0), x) == x
        assert context.mul(x, (1, 0, 0, 0)) == x

    def test_outside_order(self, context):
        """k/2 no pertenece al orden"""
        with pytest.raises(IntegralityViolation):
            context.from_quaternion((0, 0, 0, Rational(1, 2)))


class TestLattices:
    """Tests para retículos e ideales derechos"""

    def test_whole_order(self):
        """[R : R] = 1"""
        assert lattice_index(whole_order()) == 1

    def test_ideals_shape(self, ideals):
        """I y J son ideales derechos de índice 9 que contienen 3R"""
        three = whole_order().scaled(3)
        for lattice in ideals:
            assert is_right_ideal(lattice)
            assert lattice_index(lattice) == 9
            assert lattice.contains_lattice(three)

    def test_principal_index(self):
        """[R : gR] = nrd(g)^2"""
        assert lattice_index(principal_right_ideal((-1, 0, 0, 1))) == 9
        assert principal_right_ideal((1, 1, 0, 0)).index == 4

    def test_parse_lattice(self, ideals, tmp_path):
        """El texto de un retículo se vuelve a leer igual"""
        lattice_i, _ = ideals
        path = tmp_path / 'I.txt'
        path.write_text(lattice_i.to_text(), encoding='ascii')
        assert load_lattice(str(path), 'I') == lattice_i

    @pytest.mark.parametrize('text', ['1 0 0 0\n0 1 0 0', '1 0 0 x\n0 1 0 0\n0 0 1 0\n0 0 0 1'])
    def test_bad_lattice(self, text):
        """Forma incorrecta"""
        with pytest.raises(SpecSyntaxError):
            parse_lattice(text)

    def test_rank_deficient(self):
        """Cuatro filas de rango 3"""
        with pytest.raises(PreconditionFailed):
            parse_lattice('1 0 0 0\n0 1 0 0\n0 0 1 0\n1 1 1 0')

    def test_missing_file(self, tmp_path):
        with pytest.raises(SpecSyntaxError):
            load_lattice(str(tmp_path / 'nada.txt'))


class TestNorms:
    """Tests para la enumeración por normas"""

    def test_units(self):
        """El orden tiene cuatro unidades"""
        assert len(elements_of_norm(whole_order(), 1)) == 4

    def test_norm_three(self):
        """Ocho elementos de norma 3"""
        elements = elements_of_norm(whole_order(), 3)
        assert len(elements) == 8
        assert (-1, 0, 0, 1) in elements

    def test_norm_bounds(self):
        """n < 1 y n sobre la cota"""
        with pytest.raises(PreconditionFailed):
            elements_of_norm(whole_order(), 0)
        with pytest.raises(BoundExceeded):
            elements_of_norm(whole_order(), 3, limits=Limits(norm_cap=2))

    def test_i_principal(self, ideals):
        """I = gR con nrd(g) = 3"""
        verdict = is_principal_right_ideal(ideals[0])
        assert verdict.holds
        assert verdict.witness['nrd'] == 3

    def test_j_not_principal(self, ideals):
        """J no contiene elementos de norma 3"""
        verdict = is_principal_right_ideal(ideals[1])
        assert verdict.status is Status.FALSIFIED
        assert verdict.witness['candidates'] == 0


class TestReduction:
    """Tests para R/3R"""

    def test_reduction_ring(self):
        """R/3R ≅ M_2(F_3): 81 elementos, 48 unidades, radical nulo"""
        ring = mod_p_reduction(3).ring
        assert ring.size == 81
        assert len(units(ring)) == 48
        assert jacobson_radical(ring).size == 1

    def test_only_three(self):
        with pytest.raises(PreconditionFailed):
            mod_p_reduction(5)

    def test_images_are_minimal(self, ideals):
        """I/3R y J/3R tienen 9 elementos"""
        reduction = mod_p_reduction(3)
        for lattice in ideals:
            assert reduction.image(lattice).size == 9

    def test_preimage(self, ideals):
        """La preimagen de I/3R es I"""
        reduction = mod_p_reduction(3)
        lattice_i, _ = ideals
        assert reduction.preimage(reduction.image(lattice_i).members) == lattice_i


class TestExample:
    """Tests para el submódulo pi-exacto que deja de serlo tras torcer"""

    def test_verified(self):
        """Todos los chequeos valen"""
        report = verify_example36()
        assert report.status is Status.VERIFIED
        names = [c.name for c in report.checks]
        assert 'not_pi_exact_twisted' in names
        assert 'R/3R: 81 elementos, 48 unidades' in report.lines

    def test_swapped_lattices(self, ideals):
        """Con I y J intercambiados I deja de ser principal"""
        lattice_i, lattice_j = ideals
        report = verify_example36(lattice_j, lattice_i)
        assert report.status is Status.FALSIFIED


@pytest.fixture(autouse=True)
def setup_logging():
    """Configura logging para tests"""
    import logging
    logging.basicConfig(level=logging.DEBUG)

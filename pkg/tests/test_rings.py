"""
Tests unitarios para el módulo rings
"""

import pytest

from src.rings import (
    IntegerRing,
    QuotientRing,
    build_ring,
    idempotents,
    idempotents_lift,
    ideal_intersection,
    ideal_sum,
    is_domain,
    is_left_cancellative,
    is_local,
    is_two_sided,
    is_vnr,
    jacobson_radical,
    parse_ring_spec,
    quotient_ring,
    resolve_ring,
    right_ideal,
    unit_inverse,
    units,
    verify_ring_axioms,
)
from src.report import Status
from src.utils import AxiomViolation, Limits, NotTwoSided, SizeExceeded, SpecSyntaxError


@pytest.fixture
def triangular():
    """T_2(Z/2), el anillo de matrices triangulares superiores 2x2"""
    return build_ring('tri:2:zmod:2')


class TestRingSpec:
    """Tests para la mini-gramática de anillos"""

    @pytest.mark.parametrize('text', [
        'zmod:12', 'mat:2:zmod:3', 'tri:3:zmod:2', 'prod:zmod:2,mat:2:zmod:2', 'int',
    ])
    def test_canonical_text(self, text):
        """El texto canónico coincide con la entrada"""
        assert parse_ring_spec(text).text == text

    @pytest.mark.parametrize('text', ['zmod:1', 'foo:3', 'zmod:4x', 'mat:0:zmod:2', 'prod:zmod:2', 'sc:'])
    def test_invalid_spec(self, text):
        """Especificaciones fuera de la gramática"""
        with pytest.raises(SpecSyntaxError):
            parse_ring_spec(text)


class TestIndexing:
    """Tests para el indexado determinista"""

    def test_zero_and_one(self, triangular):
        """0 es el cero y 1 la identidad"""
        assert triangular.from_matrix([[0, 0], [0, 0]]) == 0
        assert triangular.from_matrix([[1, 0], [0, 1]]) == 1

    def test_lexicographic_order(self, triangular):
        """El resto de elementos sigue el orden lexicográfico de coordenadas"""
        assert triangular.from_matrix([[0, 0], [0, 1]]) == 2
        assert triangular.from_matrix([[0, 1], [0, 0]]) == 3
        assert triangular.from_matrix([[1, 0], [0, 0]]) == 5
        assert triangular.from_matrix([[1, 1], [0, 1]]) == 7

    def test_labels_are_matrices(self, triangular):
        """Las etiquetas muestran la matriz"""
        assert triangular.label(3) == '[[0,1],[0,0]]'

    def test_zmod_labels(self):
        """En Z/n la etiqueta es el representante"""
        ring = build_ring('zmod:6')
        assert ring.labels() == ['0', '1', '2', '3', '4', '5']


class TestConstruction:
    """Tests para construcción y axiomas"""

    @pytest.mark.parametrize('spec,size', [
        ('zmod:4', 4), ('mat:2:zmod:2', 16), ('tri:2:zmod:2', 8),
        ('prod:zmod:2,zmod:3', 6), ('tri:3:zmod:2', 64),
    ])
    def test_sizes(self, spec, size):
        """Orden de los anillos del corpus"""
        ring = build_ring(spec)
        assert ring.size == size
        assert verify_ring_axioms(ring)

    def test_size_cap(self):
        """Un anillo demasiado grande se rechaza antes de construirse"""
        with pytest.raises(SizeExceeded):
            build_ring('mat:3:zmod:5', Limits(ring_size_cap=1000))

    def test_structure_constants_file(self, tmp_path):
        """Z/3 x Z/3 dado por idempotentes ortogonales"""
        path = tmp_path / 'split.txt'
        path.write_text("2 3\n1 0\n0 0\n0 0\n0 1\n", encoding='ascii')
        ring = build_ring(f"sc:{path}")
        assert ring.size == 9
        assert len(idempotents(ring)) == 4

    def test_structure_constants_without_identity(self, tmp_path):
        """Sin identidad no hay anillo"""
        path = tmp_path / 'zero.txt'
        path.write_text("2 2\n0 0\n0 0\n0 0\n0 0\n", encoding='ascii')
        with pytest.raises(AxiomViolation):
            build_ring(f"sc:{path}")

    def test_missing_constants_file(self, tmp_path):
        """Archivo inexistente"""
        with pytest.raises(SpecSyntaxError):
            build_ring(f"sc:{tmp_path / 'nada.txt'}")


class TestStructure:
    """Tests para unidades, idempotentes y radical"""

    def test_triangular_units(self, triangular):
        """Las unidades de T_2(Z/2) son I e I + E12"""
        assert units(triangular) == (1, 7)

    def test_unit_inverse(self, triangular):
        """I + E12 es su propio inverso; E11 no tiene inverso"""
        assert unit_inverse(triangular, 7) == 7
        assert unit_inverse(triangular, 1) == 1
        assert unit_inverse(triangular, 5) is None

    def test_triangular_idempotents(self, triangular):
        """Seis idempotentes: 0, 1, E22, E12+E22, E11, E11+E12"""
        assert idempotents(triangular) == (0, 1, 2, 4, 5, 6)

    def test_triangular_radical(self, triangular):
        """J(T_2(Z/2)) son las estrictamente triangulares"""
        assert jacobson_radical(triangular).members == (0, 3)

    def test_matrix_ring(self):
        """M_2(F_2): 6 unidades, 8 idempotentes, radical nulo"""
        ring = build_ring('mat:2:zmod:2')
        assert len(units(ring)) == 6
        assert len(idempotents(ring)) == 8
        assert jacobson_radical(ring).size == 1

    def test_zmod_radical(self):
        """J(Z/8) = 2Z/8Z"""
        ring = build_ring('zmod:8')
        assert jacobson_radical(ring).labels() == ['0', '2', '4', '6']

    def test_left_cancellative(self, triangular):
        """E11·E22 = 0; en Z/5 todo no nulo cancela"""
        assert is_left_cancellative(triangular, 5) == (False, 2)
        assert is_left_cancellative(triangular, 0) == (False, 1)
        assert is_left_cancellative(build_ring('zmod:5'), 2) == (True, None)

    def test_local_and_domain(self):
        """Z/4 es local, Z/6 no; Z/5 es dominio"""
        assert is_local(build_ring('zmod:4'))
        assert not is_local(build_ring('zmod:6'))
        assert is_domain(build_ring('zmod:5'))
        assert not is_domain(build_ring('zmod:6'))


class TestIdeals:
    """Tests para ideales derechos"""

    def test_principal_ideals(self, triangular):
        """E11·R tiene 4 elementos y E12·R tiene 2"""
        assert right_ideal(triangular, [5]).size == 4
        assert right_ideal(triangular, [3]).members == (0, 3)

    def test_two_sided(self, triangular):
        """E11·R es bilátero; E22·R no lo es"""
        assert is_two_sided(right_ideal(triangular, [5]))[0]
        ok, witness = is_two_sided(right_ideal(triangular, [2]))
        assert not ok
        assert witness is not None

    def test_sum_and_intersection(self, triangular):
        """E11·R + E22·R = R y E11·R ∩ E12·R = E12·R"""
        assert ideal_sum(right_ideal(triangular, [5]), right_ideal(triangular, [2])).size == 8
        meet = ideal_intersection(right_ideal(triangular, [5]), right_ideal(triangular, [3]))
        assert meet.members == (0, 3)

    def test_quotient_requires_two_sided(self, triangular):
        """No hay cociente por un ideal derecho no bilátero"""
        with pytest.raises(NotTwoSided):
            QuotientRing(triangular, right_ideal(triangular, [2]))

    def test_quotient_by_radical(self, triangular):
        """T_2(Z/2)/J tiene cuatro elementos"""
        quotient, projection = quotient_ring(triangular, jacobson_radical(triangular), 'J')
        assert quotient.size == 4
        assert int(projection[3]) == 0


class TestRegularity:
    """Tests para regularidad de Von Neumann y levantamiento"""

    def test_vnr(self):
        """Z/6 es regular, Z/4 no (testigo 2)"""
        assert is_vnr(build_ring('zmod:6')).status is Status.VERIFIED
        verdict = is_vnr(build_ring('zmod:4'))
        assert verdict.status is Status.FALSIFIED
        assert verdict.witness['a'] == 2

    def test_lifting(self, triangular):
        """Los idempotentes se levantan módulo J"""
        assert idempotents_lift(triangular, jacobson_radical(triangular)).holds
        assert idempotents_lift(build_ring('zmod:12')).holds


class TestIntegerBackend:
    """Tests para el backend testigo de Z"""

    def test_resolve(self):
        """'int' se resuelve al backend de Z"""
        assert isinstance(resolve_ring('int'), IntegerRing)

    def test_integers_not_regular(self):
        """Z no es regular: testigo 2"""
        verdict = is_vnr(IntegerRing())
        assert verdict.status is Status.FALSIFIED
        assert verdict.witness == {'a': 2}

    def test_integers_lift(self):
        """J(Z) = 0, el levantamiento es trivial"""
        assert idempotents_lift(IntegerRing()).holds


@pytest.fixture(autouse=True)
def setup_logging():
    """Configura logging para tests"""
    import logging
    logging.basicConfig(level=logging.DEBUG)

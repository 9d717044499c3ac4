"""
Tests unitarios para el módulo reproductions
"""

import pytest

from src.report import Status
from src.reproductions import REPRODUCTIONS, reproduce, reproduce_matrix_dvr, reproduce_triangular
from src.utils import UsageError


class TestTriangular:
    """Tests para el ejemplo en T_2(Z/2)"""

    @pytest.fixture(scope='class')
    def report(self):
        return reproduce_triangular()

    def test_verified(self, report):
        """Todas las afirmaciones se reproducen"""
        assert report.status is Status.VERIFIED
        assert report.command == 'examples reproduce 46'

    def test_checks(self, report):
        assert [c.name for c in report.checks] == [
            'principal_ideals', 'N_exact_in_M', 'N_isomorphic_to_E22R', 'annihilator_M_mod_N',
            'annihilator_R_mod_M', 'quotient_not_cyclically_presented', 'all_cyclic_covers',
        ]

    def test_listing(self, report):
        """Ocho ideales principales con sus alias"""
        ideals = [line for line in report.lines if line.split(' = ')[0].endswith('R')
                  and not line.startswith(('M_R', 'ann'))]
        assert len(ideals) == 8
        assert ideals[1].endswith('= N_R')
        assert ideals[2].endswith('= M_R')

    def test_m_presented_note(self, report):
        """M_R sí es cíclicamente presentado"""
        assert any('x = [[0,0],[0,1]]' in note for note in report.notes)

    def test_exactness_details(self, report):
        """El diagrama usa e_N = E22"""
        details = report.checks[1].details
        assert details['e_N'] == '[[0,0],[0,1]]'


class TestMatrixDVR:
    """Tests para el ejemplo en M_2(Z/9)"""

    def test_verified(self):
        """Cubierta con e = E22 y núcleo eJ(R)"""
        report = reproduce_matrix_dvr()
        assert report.status is Status.VERIFIED
        assert '|xR| = 729, |eR| = 81, |R| = 6561' in report.lines
        assert '|ker| = 9, |eJ(R)| = 9' in report.lines


class TestRegistry:
    """Tests para el registro de reproducciones"""

    def test_names(self):
        assert sorted(REPRODUCTIONS) == ['36', '45', '46']

    def test_quaternion(self):
        """La reproducción 36 reutiliza el chequeo del orden"""
        report = reproduce('36')
        assert report.status is Status.VERIFIED
        assert report.command == 'examples reproduce 36'

    def test_unknown(self):
        with pytest.raises(UsageError):
            reproduce('47')


@pytest.fixture(autouse=True)
def setup_logging():
    """Configura logging para tests"""
    import logging
    logging.basicConfig(level=logging.DEBUG)

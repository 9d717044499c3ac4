"""
Tests unitarios para el módulo lattice
"""

import pytest

from src.lattice import determinant_index, hermite_form, lattice_membership


def _combine(coefficients, rows):
    width = len(rows[0])
    return [sum(c * row[k] for c, row in zip(coefficients, rows)) for k in range(width)]


class TestHermiteForm:
    """Tests para la forma de Hermite por filas"""

    def test_diagonal(self):
        """Una matriz diagonal ya está en forma de Hermite"""
        form = hermite_form([[2, 0], [0, 3]])
        assert form.rows == ((2, 0), (0, 3))
        assert form.pivots == (0, 1)
        assert form.rank == 2

    def test_reduction(self):
        """[[2, 4], [3, 5]] genera el retículo de [[1, 1], [0, 2]]"""
        form = hermite_form([[2, 4], [3, 5]])
        assert form.as_matrix() == [[1, 1], [0, 2]]

    def test_transform(self):
        """U·A = H fila a fila"""
        rows = [[4, 6, 2], [6, 9, 3], [2, 1, 7]]
        form = hermite_form(rows)
        for k, row in enumerate(form.rows):
            assert _combine(form.transform[k], rows) == list(row)

    def test_left_kernel(self):
        """Las filas de U tras el rango anulan a A"""
        rows = [[1, 2], [2, 4], [3, 6]]
        form = hermite_form(rows)
        assert form.rank == 1
        for k in range(form.rank, len(rows)):
            assert _combine(form.transform[k], rows) == [0, 0]

    def test_negative_pivot(self):
        """Los pivotes son positivos"""
        form = hermite_form([[-3, 1]])
        assert form.rows == ((3, -1),)


class TestMembership:
    """Tests para pertenencia con coeficientes"""

    def test_member(self):
        """(3, 5) es la segunda fila original"""
        rows = [[2, 4], [3, 5]]
        coefficients = lattice_membership(hermite_form(rows), [3, 5])
        assert _combine(coefficients, rows) == [3, 5]

    def test_non_member(self):
        """(1, 0) no está en el retículo de índice 2"""
        assert lattice_membership(hermite_form([[2, 4], [3, 5]]), [1, 0]) is None

    def test_bezout(self):
        """1 = 3·(-1) + 2·2 en Z"""
        coefficients = lattice_membership(hermite_form([[3], [2]]), [1])
        assert 3 * coefficients[0] + 2 * coefficients[1] == 1


class TestDeterminant:
    """Tests para el índice de un retículo"""

    def test_index(self):
        """El índice es el valor absoluto del determinante"""
        assert determinant_index(hermite_form([[2, 4], [3, 5]]), 2) == 2
        assert determinant_index(hermite_form([[2, 0], [0, 3]]), 2) == 6

    def test_rank_deficient(self):
        """Un retículo sin rango completo no tiene índice"""
        with pytest.raises(ValueError):
            determinant_index(hermite_form([[1, 2], [2, 4]]), 2)


@pytest.fixture(autouse=True)
def setup_logging():
    """Configura logging para tests"""
    import logging
    logging.basicConfig(level=logging.DEBUG)

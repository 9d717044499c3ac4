"""
Tests de integración para el CLI
"""

import json

import pytest

from src.main import build_parser, main
from src.rings import build_ring
from src.utils import UsageError, current_limits


@pytest.fixture(autouse=True)
def fresh_limits(monkeypatch):
    """Cotas recalculadas en cada test"""
    monkeypatch.delenv('MF_SIZE_CAP', raising=False)
    current_limits.cache_clear()
    yield
    current_limits.cache_clear()


def run(capsysbinary, *argv):
    """Ejecuta el CLI y devuelve (código, stdout)"""
    code = main(list(argv))
    return code, capsysbinary.readouterr().out


class TestParser:
    """Tests para el parser de argumentos"""

    def test_usage_errors_raise(self):
        """Los errores de argparse se convierten en UsageError"""
        with pytest.raises(UsageError):
            build_parser().parse_args(['ring', 'bogus', 'zmod:4'])

    def test_flags_after_verb(self):
        args = build_parser().parse_args(['ring', 'show', 'zmod:4', '--format', 'text', '--no-timing'])
        assert args.format == 'text'
        assert args.no_timing

    @pytest.mark.parametrize('argv', [
        [],
        ['ring'],
        ['ring', 'bogus', 'zmod:4'],
        ['examples', 'reproduce', '99'],
        ['endo', 'suite', 'zmod:6', '--idempotent', '1', '--quotient', '2'],
    ])
    def test_exit_usage(self, capsysbinary, argv):
        """Código 4 para uso inválido"""
        code, out = run(capsysbinary, *argv)
        assert code == 4
        assert out == b''


class TestRingVerb:
    """Tests para el verbo ring"""

    def test_show(self, capsysbinary):
        """Resumen de T_2(Z/2) en texto"""
        code, out = run(capsysbinary, 'ring', 'show', 'tri:2:zmod:2', '--format', 'text', '--no-timing')
        assert code == 0
        assert b'order: 8' in out

    def test_integers_falsified(self, capsysbinary):
        """Sobre Z el chequeo se refuta: código 1"""
        code, out = run(capsysbinary, 'ring', 'theorem41', 'int', '--no-timing')
        assert code == 1
        data = json.loads(out)
        assert data['status'] == 'Falsified'
        assert data['command'] == 'ring theorem41'

    def test_bad_spec(self, capsysbinary):
        code, _ = run(capsysbinary, 'ring', 'show', 'zmod:1')
        assert code == 4

    def test_size_cap_env(self, capsysbinary, monkeypatch):
        """MF_SIZE_CAP rechaza anillos grandes"""
        monkeypatch.setenv('MF_SIZE_CAP', '10')
        current_limits.cache_clear()
        code, _ = run(capsysbinary, 'ring', 'show', 'zmod:12')
        assert code == 4


class TestSkewVerb:
    """Tests para el verbo skew"""

    def test_factor(self, capsysbinary):
        """x^2 - 1 en F_4[x; frob]"""
        code, out = run(capsysbinary, 'skew', 'factor', '--poly', '[1,0,1]', '--no-timing')
        assert code == 0
        data = json.loads(out)
        assert len(data['lines']) == 3
        assert [c['name'] for c in data['checks']][-1] == 'kernel_principal'

    def test_missing_poly(self, capsysbinary):
        code, _ = run(capsysbinary, 'skew', 'factor')
        assert code == 4

    def test_zx_counterexample(self, capsysbinary):
        """(2, x) no es principal en Z[x]"""
        code, out = run(capsysbinary, 'skew', 'closure', '--zx', '--a', '[2]', '--b', '[0,1]', '--no-timing')
        assert code == 1
        assert json.loads(out)['witnesses'][0]['check'] == 'zx_sum_principal'

    def test_zx_out_of_bounds(self, capsysbinary):
        """Fuera de cota: Unknown"""
        code, _ = run(capsysbinary, 'skew', 'closure', '--zx', '--a', '[1000]', '--b', '[0,1]')
        assert code == 2


class TestOtherVerbs:
    """Tests para quat, endo y examples"""

    def test_endo_idempotent(self, capsysbinary):
        """M = E11·R sobre M_2(F_2)"""
        e11 = build_ring('mat:2:zmod:2').from_matrix([[1, 0], [0, 0]])
        code, out = run(capsysbinary, 'endo', 'suite', 'mat:2:zmod:2', '--idempotent', str(e11), '--no-timing')
        assert code == 0
        assert json.loads(out)['command'] == 'endo suite'

    def test_endo_index_out_of_range(self, capsysbinary):
        code, _ = run(capsysbinary, 'endo', 'minimal', 'zmod:6', '--quotient', '6')
        assert code == 4

    def test_endo_bad_endomorphism(self, capsysbinary):
        code, _ = run(capsysbinary, 'endo', 'suite', 'zmod:6', '--endomorphism', '99')
        assert code == 4

    def test_quat_missing_lattice(self, capsysbinary, tmp_path):
        code, _ = run(capsysbinary, 'quat', 'example36', '--i-lattice', str(tmp_path / 'I.txt'))
        assert code == 4

    def test_reproduce_text(self, capsysbinary):
        """Listado de ideales de T_2(Z/2)"""
        code, out = run(capsysbinary, 'examples', 'reproduce', '46', '--format', 'text', '--no-timing')
        assert code == 0
        text = out.decode('ascii')
        assert 'command: examples reproduce 46' in text
        assert 'ann(M_R/N_R) = ' in text
        assert '[Verified] quotient_not_cyclically_presented' in text

    def test_deterministic_output(self, capsysbinary):
        """Con --no-timing dos ejecuciones dan los mismos bytes"""
        _, first = run(capsysbinary, 'ring', 'covers', 'zmod:12', '--no-timing')
        _, second = run(capsysbinary, 'ring', 'covers', 'zmod:12', '--no-timing')
        assert first == second

    def test_output_file(self, capsysbinary, tmp_path):
        """--output guarda los mismos bytes que stdout"""
        path = tmp_path / 'reporte.json'
        code, out = run(capsysbinary, 'ring', 'show', 'zmod:4', '--no-timing', '-o', str(path))
        assert code == 0
        assert path.read_bytes() == out

    def test_missing_schema(self, capsysbinary, monkeypatch):
        """Sin esquema instalado el reporte no se emite: código 3"""
        monkeypatch.setattr('src.report.REPORT_SCHEMA', 'config/no_existe.json')
        code, out = run(capsysbinary, 'ring', 'show', 'zmod:4', '--no-timing')
        assert code == 3
        assert out == b''

    def test_unwritable_output(self, capsysbinary, tmp_path):
        path = tmp_path / 'no_existe' / 'reporte.json'
        code, out = run(capsysbinary, 'ring', 'show', 'zmod:4', '--no-timing', '-o', str(path))
        assert code == 3
        assert out == b''


@pytest.fixture(autouse=True)
def setup_logging():
    """Configura logging para tests"""
    import logging
    logging.basicConfig(level=logging.DEBUG)

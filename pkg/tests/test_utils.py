"""
Tests unitarios para el módulo utils
"""

import pytest

from src.utils import (
    DEFAULT_CONFIG,
    AxiomViolation,
    Limits,
    SizeExceeded,
    WorkbenchError,
    current_limits,
    load_config,
    load_package_json,
)


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    """Sin MF_SIZE_CAP heredado ni cotas en caché"""
    monkeypatch.delenv('MF_SIZE_CAP', raising=False)
    current_limits.cache_clear()
    yield
    current_limits.cache_clear()


class TestConfig:
    """Tests para la carga de configuración"""

    def test_defaults(self, tmp_path):
        """Sin archivo se usan los valores por defecto"""
        config = load_config(str(tmp_path / 'no_existe.yaml'))
        assert config == DEFAULT_CONFIG

    def test_yaml_override(self, tmp_path):
        """El YAML sobreescribe solo las claves presentes"""
        path = tmp_path / 'config.yaml'
        path.write_text("limits:\n  norm_cap: 50\n", encoding='utf-8')
        config = load_config(str(path))
        assert config['limits']['norm_cap'] == 50
        assert config['limits']['ring_size_cap'] == 100000
        assert config['report']['format'] == 'json'

    def test_size_cap_env(self, monkeypatch, tmp_path):
        """MF_SIZE_CAP fija las cotas de anillos y módulos"""
        monkeypatch.setenv('MF_SIZE_CAP', '500')
        config = load_config(str(tmp_path / 'no_existe.yaml'))
        assert config['limits']['ring_size_cap'] == 500
        assert config['limits']['module_size_cap'] == 500

    @pytest.mark.parametrize('value', ['abc', '0', '-3'])
    def test_invalid_size_cap(self, monkeypatch, tmp_path, value):
        """Un valor inválido se ignora"""
        monkeypatch.setenv('MF_SIZE_CAP', value)
        config = load_config(str(tmp_path / 'no_existe.yaml'))
        assert config['limits']['ring_size_cap'] == 100000

    def test_current_limits(self, monkeypatch):
        """Las cotas vigentes respetan MF_SIZE_CAP"""
        monkeypatch.setenv('MF_SIZE_CAP', '123')
        limits = current_limits()
        assert limits.ring_size_cap == 123
        assert limits.module_size_cap == 123


class TestLimits:
    """Tests para las cotas de enumeración"""

    def test_from_config(self):
        """Las claves desconocidas se ignoran"""
        limits = Limits.from_config({'limits': {'norm_cap': '10', 'otra': 1}})
        assert limits.norm_cap == 10
        assert limits.ring_size_cap == 100000

    def test_empty_config(self):
        assert Limits.from_config({}) == Limits()


class TestFiles:
    """Tests para I/O de archivos"""

    def test_load_package_json(self):
        """El esquema de reportes viaja dentro del paquete"""
        schema = load_package_json('config/report_schema.json')
        assert schema['title'] == 'cyclic-covers report'
        assert 'status' in schema['required']

    def test_missing_package_json(self):
        with pytest.raises(FileNotFoundError):
            load_package_json('config/no_existe.json')


class TestExceptions:
    """Tests para la jerarquía de excepciones"""

    def test_hierarchy(self):
        """Todas derivan de WorkbenchError"""
        assert issubclass(SizeExceeded, WorkbenchError)
        assert issubclass(AxiomViolation, WorkbenchError)

    def test_size_exceeded_message(self):
        error = SizeExceeded('R', 200, 100)
        assert error.size == 200
        assert error.cap == 100
        assert 'supera la cota 100' in str(error)


@pytest.fixture(autouse=True)
def setup_logging():
    """Configura logging para tests"""
    import logging
    logging.basicConfig(level=logging.DEBUG)

"""
Utilidades comunes del banco de verificación
Funciones helper para logging, configuración, file I/O y excepciones
"""

import logging
import os
import sys
from dataclasses import dataclass, fields
from functools import lru_cache
from importlib.resources import files
from pathlib import Path
from typing import Any, Dict, Optional
import json

import yaml
from dotenv import load_dotenv

logger = logging.getLogger('cyclic-covers.utils')

CONFIG_FILE = Path(__file__).parent.parent / 'config.yaml'

DEFAULT_CONFIG: Dict[str, Any] = {
    'app': {
        'name': 'cyclic-covers',
        'version': '1.0.0',
    },
    'limits': {
        'ring_size_cap': 100000,
        'module_size_cap': 4096,
        'table_cache_limit': 256,
        'axiom_exhaustive_limit': 512,
        'axiom_samples': 2000,
        'end_ring_module_cap': 256,
        'divisor_candidate_cap': 1000000,
        'zx_max_degree': 8,
        'zx_max_coefficient': 64,
        'norm_cap': 10000,
        'integer_search_bound': 64,
        'random_seed': 20240607,
    },
    'report': {
        'format': 'json',
        'timing': True,
    },
    'logging': {
        'level': 'INFO',
        'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        'date_format': '%Y-%m-%d %H:%M:%S',
    },
}


def setup_logging(verbose: bool = False, log_file: Optional[str] = None) -> logging.Logger:
    """
    Configura el sistema de logging para la aplicación.

    Args:
        verbose: Si True, activa nivel DEBUG. Si False, usa el nivel de config.yaml
        log_file: Ruta opcional al archivo de log

    Returns:
        Logger configurado
    """
    log_config = load_config().get('logging', {})
    configured_level = getattr(logging, str(log_config.get('level', 'INFO')).upper(), logging.INFO)
    log_level = logging.DEBUG if verbose else configured_level

    # Formato del log
    log_format = log_config.get('format', DEFAULT_CONFIG['logging']['format'])
    date_format = log_config.get('date_format', DEFAULT_CONFIG['logging']['date_format'])

    # Los reportes salen por stdout; el log va a stderr
    handlers = [logging.StreamHandler(sys.stderr)]

    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding='utf-8'))

    logging.basicConfig(
        level=log_level,
        format=log_format,
        datefmt=date_format,
        handlers=handlers
    )

    root_logger = logging.getLogger('cyclic-covers')
    root_logger.setLevel(log_level)

    return root_logger


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Mezcla recursiva de diccionarios (override gana)"""
    merged = dict(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(config_path: Optional[str] = None) -> Dict[str, Any]:
    """
    Carga config.yaml y aplica las variables de entorno (.env incluido).

    Args:
        config_path: Ruta opcional a un archivo YAML alternativo

    Returns:
        Diccionario de configuración completo
    """
    path = Path(config_path) if config_path else CONFIG_FILE
    config = DEFAULT_CONFIG

    if path.exists():
        with open(path, 'r', encoding='utf-8') as f:
            config = _merge(DEFAULT_CONFIG, yaml.safe_load(f) or {})
    else:
        logger.warning(f"No se encontró {path}. Usando configuración por defecto.")

    load_dotenv()
    size_cap = os.getenv('MF_SIZE_CAP')
    if size_cap:
        try:
            cap = int(size_cap)
            if cap < 1:
                raise ValueError(size_cap)
            config = _merge(config, {'limits': {'ring_size_cap': cap, 'module_size_cap': cap}})
            logger.debug(f"MF_SIZE_CAP aplicado: {cap}")
        except ValueError:
            logger.warning(f"MF_SIZE_CAP inválido ignorado: {size_cap!r}")

    return config


@dataclass(frozen=True)
class Limits:
    """Cotas de enumeración y búsqueda"""
    ring_size_cap: int = 100000
    module_size_cap: int = 4096
    table_cache_limit: int = 256
    axiom_exhaustive_limit: int = 512
    axiom_samples: int = 2000
    end_ring_module_cap: int = 256
    divisor_candidate_cap: int = 1000000
    zx_max_degree: int = 8
    zx_max_coefficient: int = 64
    norm_cap: int = 10000
    integer_search_bound: int = 64
    random_seed: int = 20240607

    @classmethod
    def from_config(cls, config: Dict[str, Any]) -> 'Limits':
        """Construye las cotas a partir de la sección 'limits'"""
        section = config.get('limits', {})
        known = {f.name for f in fields(cls)}
        return cls(**{k: int(v) for k, v in section.items() if k in known})


@lru_cache(maxsize=1)
def current_limits() -> Limits:
    """Cotas por defecto (config.yaml + MF_SIZE_CAP), cargadas una sola vez"""
    return Limits.from_config(load_config())


def load_package_json(resource: str) -> Dict[str, Any]:
    """
    Carga un JSON instalado junto al paquete.

    Args:
        resource: Ruta relativa al paquete (p.ej. 'config/report_schema.json')

    Returns:
        Diccionario con los datos cargados
    """
    return json.loads(files(__package__).joinpath(resource).read_text(encoding='utf-8'))


def print_banner() -> None:
    """Imprime el banner de la aplicación en stderr"""
    banner = """
===============================================================
  cyclic-covers v1.0
  Banco de verificación exacta: anillos finitos, módulos
  cíclicamente presentados y cubiertas proyectivas

  - Radical de Jacobson, regularidad y levantamiento de idempotentes
  - Submódulos pi-exactos y exactos
  - Factorizaciones en F_q[x; sigma] y contraejemplo en Z[x]
  - Ideales del orden maximal de (-1,-11 / Q)
===============================================================
    """
    print(banner, file=sys.stderr)


class WorkbenchError(Exception):
    """Excepción base del banco de verificación"""
    pass


class SpecSyntaxError(WorkbenchError):
    """Excepción para especificaciones de anillo, polinomio o retículo mal formadas"""
    pass


class UsageError(WorkbenchError):
    """Excepción para comandos de CLI inválidos"""
    pass


class SizeExceeded(WorkbenchError):
    """Excepción cuando una enumeración supera la cota configurada"""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what}: tamaño {size} supera la cota {cap}")
        self.size = size
        self.cap = cap


class AxiomViolation(WorkbenchError):
    """Excepción cuando las tablas no definen un anillo o módulo"""

    def __init__(self, axiom: str, triple: tuple):
        super().__init__(f"Falla el axioma '{axiom}' en {triple}")
        self.axiom = axiom
        self.triple = triple


class TrivialRing(WorkbenchError):
    """Excepción cuando se obtendría un anillo con 1 = 0"""
    pass


class NotTwoSided(WorkbenchError):
    """Excepción cuando un ideal derecho no es bilátero"""

    def __init__(self, witness: tuple):
        super().__init__(f"El ideal no es bilátero: testigo {witness}")
        self.witness = witness


class NotCyclic(WorkbenchError):
    """Excepción cuando un módulo no es cíclico"""
    pass


class HypothesisViolated(WorkbenchError):
    """Excepción cuando no se cumple una hipótesis de un chequeo"""

    def __init__(self, which: str):
        super().__init__(f"Hipótesis no satisfecha: {which}")
        self.which = which


class EquivalenceViolation(WorkbenchError):
    """Excepción cuando dos lados de una equivalencia probada difieren (error de implementación)"""

    def __init__(self, name: str, left: Any, right: Any, witness: Any = None):
        super().__init__(f"Equivalencia '{name}' violada: {left} != {right} (testigo {witness})")
        self.name = name
        self.left = left
        self.right = right
        self.witness = witness


class PreconditionFailed(WorkbenchError):
    """Excepción cuando la entrada no cumple la precondición de la operación"""
    pass


class NotDivisible(WorkbenchError):
    """Excepción cuando una cadena de ideales no es una cadena de divisores"""
    pass


class DivisionByZero(WorkbenchError):
    """Excepción para divisiones por el polinomio cero"""
    pass


class IntegralityViolation(WorkbenchError):
    """Excepción cuando las constantes de estructura del orden no son enteras"""
    pass


class BoundExceeded(WorkbenchError):
    """Excepción cuando una búsqueda acotada excede su cota"""
    pass


class NoCover(WorkbenchError):
    """Excepción cuando no se encuentra cubierta proyectiva"""
    pass

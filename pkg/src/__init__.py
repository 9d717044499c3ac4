"""
cyclic-covers
Banco de verificación exacta para módulos cíclicamente presentados
"""

__version__ = "1.0.0"
__author__ = "Equipo cyclic-covers"
__license__ = "MIT"

# Exportar las entradas principales para uso como biblioteca
from .rings import build_ring, resolve_ring
from .modules import projective_cover_cyclic, is_exact_submodule, is_cyclically_presented
from .covers import theorem41_crosscheck
from .skewpoly import SkewPolyRing, galois_field, enumerate_factorizations
from .quatorder import verify_example36
from .endo import end_ring
from .report import Report, Verdict, emit_report

__all__ = [
    'build_ring',
    'resolve_ring',
    'projective_cover_cyclic',
    'is_exact_submodule',
    'is_cyclically_presented',
    'theorem41_crosscheck',
    'SkewPolyRing',
    'galois_field',
    'enumerate_factorizations',
    'verify_example36',
    'end_ring',
    'Report',
    'Verdict',
    'emit_report',
]

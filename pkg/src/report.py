"""
Veredictos y reportes de verificación
Serializa cada chequeo a JSON (validado con jsonschema) o a texto
"""

import json
import logging
import time
import unicodedata
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional

from jsonschema import validate, ValidationError as JsonSchemaValidationError

from .utils import load_package_json, EquivalenceViolation

logger = logging.getLogger('cyclic-covers.report')

TOOL_VERSION = "1.0.0"
REPORT_SCHEMA = 'config/report_schema.json'


class Status(str, Enum):
    """Resultado trivalente de un chequeo"""
    VERIFIED = 'Verified'
    FALSIFIED = 'Falsified'
    UNKNOWN = 'Unknown'


EXIT_CODES = {
    Status.VERIFIED: 0,
    Status.FALSIFIED: 1,
    Status.UNKNOWN: 2,
}
EXIT_EQUIVALENCE_VIOLATION = 3
EXIT_USAGE = 4


@dataclass(frozen=True)
class Verdict:
    """
    Veredicto de un chequeo.

    Falsified siempre lleva testigo; Unknown siempre lleva la cota alcanzada.
    """
    status: Status
    witness: Any = None
    bound: Optional[int] = None
    certificate: Optional[str] = None

    def __post_init__(self):
        if self.status is Status.FALSIFIED and self.witness is None:
            raise ValueError("Un veredicto Falsified requiere testigo")
        if self.status is Status.UNKNOWN and self.bound is None:
            raise ValueError("Un veredicto Unknown requiere cota")

    @classmethod
    def verified(cls, witness: Any = None, certificate: Optional[str] = None) -> 'Verdict':
        return cls(Status.VERIFIED, witness=witness, certificate=certificate)

    @classmethod
    def falsified(cls, witness: Any, certificate: Optional[str] = None) -> 'Verdict':
        return cls(Status.FALSIFIED, witness=witness, certificate=certificate)

    @classmethod
    def unknown(cls, bound: int, certificate: Optional[str] = None) -> 'Verdict':
        return cls(Status.UNKNOWN, bound=bound, certificate=certificate)

    @property
    def holds(self) -> bool:
        return self.status is Status.VERIFIED

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'status': self.status.value}
        if self.witness is not None:
            data['witness'] = to_jsonable(self.witness)
        if self.bound is not None:
            data['bound'] = self.bound
        if self.certificate is not None:
            data['certificate'] = self.certificate
        return data


def verdict_of(condition: bool, witness: Any = None, certificate: Optional[str] = None) -> Verdict:
    """Convierte un booleano decidido exhaustivamente en veredicto"""
    if condition:
        return Verdict.verified(certificate=certificate)
    return Verdict.falsified(witness if witness is not None else 'exhaustivo', certificate)


def to_jsonable(value: Any) -> Any:
    """Normaliza tuplas, conjuntos, enteros numpy y veredictos para JSON"""
    if isinstance(value, Verdict):
        return value.to_dict()
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted(to_jsonable(v) for v in value)
    if hasattr(value, 'item') and callable(value.item):
        return value.item()
    return value


@dataclass
class CheckRecord:
    """Registro de un chequeo individual"""
    name: str
    status: Status
    witnesses: List[Any] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'status': self.status.value,
            'witnesses': to_jsonable(self.witnesses),
            'details': to_jsonable(self.details),
            'elapsed_ms': self.elapsed_ms,
        }


@dataclass
class Report:
    """
    Reporte de una ejecución: eco del comando, chequeos y estado global.
    """
    command: str
    input_spec: str = ''
    checks: List[CheckRecord] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    lines: List[str] = field(default_factory=list)
    elapsed_ms: float = 0.0
    version: str = TOOL_VERSION

    def add(self, name: str, verdict: Verdict, details: Optional[Dict[str, Any]] = None,
            elapsed_ms: float = 0.0) -> CheckRecord:
        """
        Agrega un chequeo a partir de un veredicto.

        Args:
            name: Nombre estable del chequeo
            verdict: Veredicto obtenido
            details: Datos adicionales serializables
            elapsed_ms: Tiempo empleado

        Returns:
            El registro agregado
        """
        witnesses = [] if verdict.witness is None else [verdict.witness]
        record_details = dict(details or {})
        if verdict.bound is not None:
            record_details['bound'] = verdict.bound
        if verdict.certificate is not None:
            record_details['certificate'] = verdict.certificate
        record = CheckRecord(name, verdict.status, witnesses, record_details, round(elapsed_ms, 3))
        self.checks.append(record)
        logger.debug(f"Chequeo {name}: {verdict.status.value}")
        return record

    def extend(self, other: 'Report', prefix: str = '') -> None:
        """Incorpora los chequeos de otro reporte"""
        for record in other.checks:
            self.checks.append(CheckRecord(prefix + record.name, record.status,
                                           list(record.witnesses), dict(record.details),
                                           record.elapsed_ms))
        self.notes.extend(other.notes)
        self.lines.extend(other.lines)

    @contextmanager
    def timed(self) -> Iterator[Dict[str, float]]:
        """Mide un bloque; el tiempo queda en el dict entregado"""
        box = {'elapsed_ms': 0.0}
        start = time.perf_counter()
        try:
            yield box
        finally:
            box['elapsed_ms'] = (time.perf_counter() - start) * 1000.0

    @property
    def status(self) -> Status:
        """Verified si todos los chequeos lo son; si no, Falsified si alguno lo es"""
        statuses = [c.status for c in self.checks]
        if all(s is Status.VERIFIED for s in statuses):
            return Status.VERIFIED
        if any(s is Status.FALSIFIED for s in statuses):
            return Status.FALSIFIED
        return Status.UNKNOWN

    @property
    def witnesses(self) -> List[Any]:
        collected = []
        for check in self.checks:
            if check.status is not Status.VERIFIED:
                collected.extend({'check': check.name, 'witness': w} for w in check.witnesses)
        return collected

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def strip_timing(self) -> None:
        """Anula los tiempos para obtener salidas byte a byte reproducibles"""
        self.elapsed_ms = 0.0
        for check in self.checks:
            check.elapsed_ms = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'command': self.command,
            'input': self.input_spec,
            'version': self.version,
            'status': self.status.value,
            'checks': [c.to_dict() for c in self.checks],
            'witnesses': to_jsonable(self.witnesses),
            'notes': list(self.notes),
            'lines': list(self.lines),
            'elapsed_ms': round(self.elapsed_ms, 3),
        }


def require_equivalence(name: str, left: bool, right: bool, witness: Any = None) -> None:
    """Lanza EquivalenceViolation si los dos lados de una equivalencia difieren"""
    if bool(left) != bool(right):
        logger.error(f"Equivalencia violada en {name}: {left} vs {right} ({witness})")
        raise EquivalenceViolation(name, left, right, witness)


def load_report_schema() -> Dict[str, Any]:
    """Carga el esquema JSON de reportes instalado con el paquete"""
    return load_package_json(REPORT_SCHEMA)


def validate_report(data: Dict[str, Any], schema: Optional[Dict[str, Any]] = None) -> bool:
    """
    Valida un reporte serializado contra el esquema.

    Args:
        data: Reporte como diccionario
        schema: Esquema opcional (por defecto el instalado con el paquete)

    Returns:
        True si es válido, False en caso contrario
    """
    try:
        validate(instance=data, schema=schema or load_report_schema())
        return True
    except JsonSchemaValidationError as e:
        logger.error(f"Reporte no cumple el esquema: {e.message}")
        return False


def _text_lines(report: Report) -> List[str]:
    lines = [f"command: {report.command}"]
    if report.input_spec:
        lines.append(f"input: {report.input_spec}")
    lines.append(f"status: {report.status.value}")
    for check in report.checks:
        lines.append(f"[{check.status.value}] {check.name}")
        for witness in check.witnesses:
            lines.append(f"    witness: {json.dumps(to_jsonable(witness), sort_keys=True)}")
    for line in report.lines:
        lines.append(line)
    for note in report.notes:
        lines.append(f"note: {note}")
    lines.append(f"elapsed_ms: {round(report.elapsed_ms, 3)}")
    return lines


def emit_report(report: Report, fmt: str = 'json') -> bytes:
    """
    Serializa un reporte.

    Args:
        report: Reporte a emitir
        fmt: 'json' o 'text'

    Returns:
        Bytes ASCII deterministas para entradas fijas

    Raises:
        ValueError: Si el formato es desconocido o el JSON no cumple el esquema
    """
    if fmt == 'json':
        data = report.to_dict()
        if not validate_report(data):
            raise ValueError("El reporte generado no cumple el esquema de reportes")
        return (json.dumps(data, indent=2, sort_keys=True, ensure_ascii=True) + '\n').encode('ascii')
    if fmt == 'text':
        text = unicodedata.normalize('NFKD', '\n'.join(_text_lines(report)) + '\n')
        return text.encode('ascii', errors='ignore')
    raise ValueError(f"Formato de reporte desconocido: {fmt}")

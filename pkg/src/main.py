"""
cyclic-covers
CLI principal del banco de verificación
"""

import sys
import argparse
import time
from pathlib import Path
from typing import List, Optional
import json
import logging

from rich.console import Console
from rich.table import Table

from .covers import covers_report, ring_structure_report, theorem41_crosscheck
from .endo import endo_suite, minimal_report
from .modules import FiniteModule, RestrictedModule, cyclic_module, regular_module
from .quatorder import load_lattice, verify_example36
from .report import EXIT_EQUIVALENCE_VIOLATION, EXIT_USAGE, Report, emit_report
from .reproductions import REPRODUCTIONS, reproduce
from .rings import build_ring, resolve_ring, right_ideal
from .skewpoly import (
    SkewPolyRing,
    chains_report,
    factor_report,
    kernel_principal_check,
    parse_coefficients,
    parse_field,
    parse_sigma,
    parse_zx,
    pi_exact_poset,
    random_sum_closure_harness,
    sum_closure_check,
    zx_report,
)
from .utils import (
    EquivalenceViolation,
    IntegralityViolation,
    NoCover,
    UsageError,
    WorkbenchError,
    current_limits,
    load_config,
    print_banner,
    setup_logging,
)

# Los reportes van a stdout; la consola solo a stderr
console = Console(stderr=True, legacy_windows=False)
logger = logging.getLogger('cyclic-covers')

INTERNAL_ERRORS = (EquivalenceViolation, IntegralityViolation, NoCover)


class WorkbenchArgumentParser(argparse.ArgumentParser):
    """ArgumentParser que reporta errores de uso como UsageError (código 4)"""

    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    """
    Construye el parser de línea de comandos.

    Returns:
        Parser con los verbos ring, skew, quat, endo y examples
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=['json', 'text'], default=None,
                        help='Formato del reporte (default: config.yaml, json)')
    common.add_argument('-o', '--output', type=str, default=None,
                        help='Archivo donde guardar el reporte además de stdout')
    common.add_argument('-v', '--verbose', action='store_true',
                        help='Activa modo verbose para debugging')
    common.add_argument('--log-file', type=str, default=None,
                        help='Archivo para guardar logs (opcional)')
    common.add_argument('--no-timing', action='store_true',
                        help='Pone a cero los tiempos para obtener salidas reproducibles')

    parser = WorkbenchArgumentParser(
        prog='cyclic-covers',
        description='Banco de verificación exacta de módulos cíclicamente presentados',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Ejemplos:
  # Resumen de un anillo finito
  %(prog)s ring show tri:2:zmod:2

  # Cubiertas frente a regularidad + levantamiento
  %(prog)s ring theorem41 mat:2:zmod:3

  # Factorizaciones de x^2 - 1 en F_4[x; frob]
  %(prog)s skew factor --field 2^2 --sigma frob --poly [1,0,1]

  # Suma de ideales en Z[x]
  %(prog)s skew closure --zx --a [2] --b [0,1]

  # Reproducción de los ejemplos de referencia
  %(prog)s examples reproduce 46 --format text

Códigos de salida: 0 Verified, 1 Falsified, 2 Unknown,
3 violación de equivalencia (error interno), 4 uso o entrada inválida.
Variable de entorno MF_SIZE_CAP: cota de tamaño de anillos y módulos.
        """
    )
    parser.add_argument('--version', action='version', version='%(prog)s 1.0.0')
    verbs = parser.add_subparsers(dest='verb', metavar='VERB', parser_class=WorkbenchArgumentParser)
    verbs.required = True

    ring = verbs.add_parser('ring', parents=[common], help='Anillos finitos y Z')
    ring.add_argument('action', choices=['show', 'theorem41', 'covers'])
    ring.add_argument('spec', help='zmod:<n> | mat:<k>:<spec> | tri:<k>:<spec> | prod:<a>,<b> | sc:<file> | int')

    skew = verbs.add_parser('skew', parents=[common], help='Polinomios torcidos F_q[x; sigma] y Z[x]')
    skew.add_argument('action', choices=['factor', 'chains', 'poset', 'closure'])
    skew.add_argument('--field', default='2^2', help="Cuerpo 'p^n' (default: 2^2)")
    skew.add_argument('--sigma', default='frob', help="'frob^i', 'frob' o 'id' (default: frob)")
    skew.add_argument('--poly', default=None, help='Coeficientes JSON de menor a mayor grado')
    skew.add_argument('--a', dest='a', default=None, help='Primer polinomio (closure)')
    skew.add_argument('--b', dest='b', default=None, help='Segundo polinomio (closure)')
    skew.add_argument('--c', dest='c', default=None, help='Polinomio c en aR y bR (closure, opcional)')
    skew.add_argument('--samples', type=int, default=None, help='Ternas aleatorias (closure)')
    skew.add_argument('--seed', type=int, default=None, help='Semilla (default: config.yaml)')
    skew.add_argument('--zx', action='store_true', help='Interpreta --a y --b como polinomios de Z[x]')
    skew.add_argument('--all', action='store_true', help='Lista todas las factorizaciones, no solo las maximales')

    quat = verbs.add_parser('quat', parents=[common], help='Orden maximal del álgebra de cuaterniones')
    quat.add_argument('action', choices=['example36'])
    quat.add_argument('--i-lattice', default=None, help='Archivo con la base de I (4 filas)')
    quat.add_argument('--j-lattice', default=None, help='Archivo con la base de J (4 filas)')

    endo = verbs.add_parser('endo', parents=[common], help='Anillos de endomorfismos')
    endo.add_argument('action', choices=['suite', 'minimal'])
    endo.add_argument('spec', help='Especificación del anillo R')
    selector = endo.add_mutually_exclusive_group()
    selector.add_argument('--idempotent', type=int, default=None, help='Índice de e: M = eR')
    selector.add_argument('--quotient', type=int, default=None, help='Índice de x: M = R/xR')
    endo.add_argument('--endomorphism', type=int, default=None,
                      help='Índice de s en End(M) (default: todos)')

    examples = verbs.add_parser('examples', parents=[common], help='Reproducción de ejemplos')
    examples.add_argument('action', choices=['reproduce'])
    examples.add_argument('name', choices=sorted(REPRODUCTIONS))

    return parser


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """
    Parsea argumentos de línea de comandos.

    Raises:
        UsageError: Si los argumentos no son válidos
    """
    return build_parser().parse_args(argv)


def _skew_ring(args: argparse.Namespace) -> SkewPolyRing:
    return SkewPolyRing(parse_field(args.field), parse_sigma(args.sigma))


def _require(value: Optional[str], flag: str) -> str:
    if value is None:
        raise UsageError(f"Falta {flag}")
    return value


def endo_module(args: argparse.Namespace) -> FiniteModule:
    """M = eR, R/xR o R_R según los selectores"""
    limits = current_limits()
    ring = build_ring(args.spec, limits)
    if args.quotient is not None:
        _check_index(ring, args.quotient)
        module, _ = cyclic_module(ring, args.quotient)
        return module
    if args.idempotent is not None:
        _check_index(ring, args.idempotent)
        ideal = right_ideal(ring, [args.idempotent])
        return RestrictedModule(regular_module(ring), ideal.members,
                                f"{ring.spec_text}:{ring.label(args.idempotent)}R")
    return regular_module(ring)


def _check_index(ring, index: int) -> None:
    if not 0 <= index < ring.size:
        raise UsageError(f"Índice {index} fuera de rango para {ring.spec_text} (orden {ring.size})")


def run_command(args: argparse.Namespace) -> Report:
    """
    Ejecuta un comando ya parseado.

    Returns:
        Reporte del comando
    """
    limits = current_limits()

    if args.verb == 'ring':
        ring = resolve_ring(args.spec, limits)
        runners = {'show': ring_structure_report, 'theorem41': theorem41_crosscheck, 'covers': covers_report}
        return runners[args.action](ring)

    if args.verb == 'skew':
        if args.action == 'closure' and args.zx:
            return zx_report(parse_zx(_require(args.a, '--a')), parse_zx(_require(args.b, '--b')), limits)
        skew_ring = _skew_ring(args)
        if args.action == 'closure':
            if args.samples is not None:
                return random_sum_closure_harness(skew_ring, args.samples, seed=args.seed, limits=limits)
            a = parse_coefficients(skew_ring, _require(args.a, '--a'))
            b = parse_coefficients(skew_ring, _require(args.b, '--b'))
            c = parse_coefficients(skew_ring, args.c) if args.c else None
            return sum_closure_check(a, b, c, limits)
        f = parse_coefficients(skew_ring, _require(args.poly, '--poly'))
        if args.action == 'factor':
            report = factor_report(f, include_all=args.all, limits=limits)
            report.add('kernel_principal', kernel_principal_check(f, limits))
            return report
        if args.action == 'chains':
            return chains_report(f, limits, seed=args.seed)
        return pi_exact_poset(f, limits)

    if args.verb == 'quat':
        i_lattice = load_lattice(args.i_lattice, 'I') if args.i_lattice else None
        j_lattice = load_lattice(args.j_lattice, 'J') if args.j_lattice else None
        return verify_example36(i_lattice, j_lattice, limits)

    if args.verb == 'endo':
        module = endo_module(args)
        if args.action == 'suite':
            return endo_suite(module, args.endomorphism, limits)
        return minimal_report(module, args.endomorphism, limits)

    return reproduce(args.name, limits)


def display_summary(report: Report) -> None:
    """
    Muestra la tabla de chequeos en stderr.

    Args:
        report: Reporte ya calculado
    """
    table = Table(title=f"{report.command} [{report.input_spec}]")
    table.add_column('Chequeo', style='cyan')
    table.add_column('Estado')
    table.add_column('Testigo', overflow='fold')
    colors = {'Verified': 'green', 'Falsified': 'red', 'Unknown': 'yellow'}
    for check in report.checks:
        status = check.status.value
        witness = json.dumps(check.witnesses[0], default=str) if check.witnesses else ''
        table.add_row(check.name, f"[{colors[status]}]{status}[/{colors[status]}]", witness[:80])
    console.print(table)
    console.print(f"Estado global: [bold]{report.status.value}[/bold]")


def main(argv: Optional[List[str]] = None) -> int:
    """
    Función principal del CLI.

    Returns:
        Código de salida (0 Verified, 1 Falsified, 2 Unknown, 3 error interno, 4 uso)
    """
    try:
        args = parse_arguments(argv)
    except UsageError as e:
        console.print(f"[red][ERROR][/red] Uso inválido: {e}")
        return EXIT_USAGE

    setup_logging(verbose=args.verbose, log_file=args.log_file)
    if args.verbose:
        print_banner()
    config = load_config()
    fmt = args.format or config.get('report', {}).get('format', 'json')
    timing = config.get('report', {}).get('timing', True) and not args.no_timing

    logger.info(f"=== cyclic-covers: {' '.join(argv if argv is not None else sys.argv[1:])} ===")

    start = time.perf_counter()
    try:
        report = run_command(args)
    except INTERNAL_ERRORS as e:
        console.print(f"[red][ERROR][/red] Error interno: {e}")
        logger.error(f"Error interno: {e}")
        return EXIT_EQUIVALENCE_VIOLATION
    except WorkbenchError as e:
        console.print(f"[red][ERROR][/red] {e}")
        logger.error(f"Entrada inválida: {e}")
        return EXIT_USAGE
    except Exception as e:
        console.print(f"[red][ERROR][/red] Error inesperado: {e}")
        logger.exception("Error inesperado durante la verificación")
        return EXIT_EQUIVALENCE_VIOLATION
    report.elapsed_ms = (time.perf_counter() - start) * 1000.0
    if not timing:
        report.strip_timing()

    try:
        payload = emit_report(report, fmt)
        if args.output:
            Path(args.output).write_bytes(payload)
            logger.info(f"Reporte guardado en {args.output}")
    except (ValueError, OSError) as e:
        console.print(f"[red][ERROR][/red] No se pudo emitir el reporte: {e}")
        logger.error(f"Error al emitir el reporte: {e}")
        return EXIT_EQUIVALENCE_VIOLATION
    sys.stdout.buffer.write(payload)
    sys.stdout.flush()

    display_summary(report)
    logger.info(f"=== Estado {report.status.value}, código {report.exit_code} ===")
    return report.exit_code


if __name__ == '__main__':
    sys.exit(main())

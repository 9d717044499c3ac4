"""
Reproducción de los ejemplos de referencia
Cada función recalcula desde cero los datos de referencia y devuelve un Report
con un chequeo por afirmación.
"""

import logging
from typing import Dict, List, Optional, Tuple

import numpy as np

from .covers import has_all_cyclic_covers
from .modules import (
    QuotientModule,
    annihilator,
    cyclic_module,
    ideal_submodule,
    is_cyclically_presented,
    is_exact_submodule,
    is_isomorphic,
    projective_cover_cyclic,
    regular_module,
    restrict_submodule,
)
from .quatorder import verify_example36
from .report import Report, verdict_of
from .rings import build_ring, ideal_intersection, jacobson_radical, right_ideal
from .utils import Limits, UsageError, current_limits

logger = logging.getLogger('cyclic-covers.reproductions')

# Generadores de los ideales principales de T_2(Z/2) en el orden de listado
TRIANGULAR_GENERATORS: List[Tuple[str, List[List[int]], str]] = [
    ('0', [[0, 0], [0, 0]], '0'),
    ('E12', [[0, 1], [0, 0]], 'N_R'),
    ('E11', [[1, 0], [0, 0]], 'M_R'),
    ('E11+E12', [[1, 1], [0, 0]], 'M_R'),
    ('E22', [[0, 0], [0, 1]], ''),
    ('E12+E22', [[0, 1], [0, 1]], ''),
    ('1', [[1, 0], [0, 1]], 'R'),
    ('E11+E12+E22', [[1, 1], [0, 1]], 'R'),
]

# Tamaños esperados de cada ideal principal, en el mismo orden
TRIANGULAR_IDEAL_SIZES = [1, 2, 4, 4, 2, 2, 8, 8]


def reproduce_triangular(limits: Optional[Limits] = None) -> Report:
    """
    T_2(Z/2): N_R ⊂ M_R exacto pero M_R/N_R no cíclicamente presentado.

    Lista los ocho ideales principales, calcula los anuladores de M/N y de
    R/M y decide la presentación cíclica de M/N por barrido exhaustivo.
    """
    limits = limits or current_limits()
    ring = build_ring('tri:2:zmod:2', limits)
    report = Report(command='examples reproduce 46', input_spec=ring.spec_text)
    index = {name: ring.from_matrix(rows) for name, rows, _ in TRIANGULAR_GENERATORS}

    with report.timed() as t:
        sizes = []
        for name, _, alias in TRIANGULAR_GENERATORS:
            ideal = right_ideal(ring, [index[name]])
            sizes.append(ideal.size)
            suffix = f" = {alias}" if alias else ''
            report.lines.append(f"{name}R = {{{', '.join(ideal.labels())}}}{suffix}")
    report.add('principal_ideals', verdict_of(sizes == TRIANGULAR_IDEAL_SIZES, {'sizes': sizes}),
               elapsed_ms=t['elapsed_ms'])

    m_sub = ideal_submodule(right_ideal(ring, [index['E11']]))
    n_sub = ideal_submodule(right_ideal(ring, [index['E12']]))
    n_in_m = restrict_submodule(n_sub, m_sub)
    m_module = m_sub.as_module

    with report.timed() as t:
        exact, witness = is_exact_submodule(n_in_m, m_module)
    report.add('N_exact_in_M',
               verdict_of(exact, {'lam': ring.label(witness.lam_of_idempotent)}),
               details={'lam': ring.label(witness.lam_of_idempotent),
                        'e_N': ring.label(witness.cover_n.idempotent),
                        'e_M': ring.label(witness.cover_m.idempotent)},
               elapsed_ms=t['elapsed_ms'])

    e22_sub = ideal_submodule(right_ideal(ring, [index['E22']]))
    same, _ = is_isomorphic(n_sub.as_module, e22_sub.as_module, limits)
    report.add('N_isomorphic_to_E22R', verdict_of(same))

    quotient = QuotientModule(m_module, n_in_m, 'M_R/N_R')
    report.lines.append(f"M_R/N_R = {{{', '.join(quotient.labels())}}}")
    with report.timed() as t:
        ann = annihilator(quotient)
    expected_ann = sorted(index[name] for name in ('0', 'E12', 'E22', 'E12+E22'))
    report.lines.append(f"ann(M_R/N_R) = {{{', '.join(ann.labels())}}}")
    report.add('annihilator_M_mod_N', verdict_of(list(ann.members) == expected_ann, ann.labels()),
               elapsed_ms=t['elapsed_ms'])

    r_mod_m, _ = cyclic_module(ring, index['E11'])
    ann_r = annihilator(r_mod_m)
    report.lines.append(f"ann(R/M_R) = {{{', '.join(ann_r.labels())}}}")
    report.add('annihilator_R_mod_M', verdict_of(ann_r.members == m_sub.members, ann_r.labels()))

    with report.timed() as t:
        presented, x = is_cyclically_presented(quotient, limits)
    report.add('quotient_not_cyclically_presented',
               verdict_of(not presented, {'x': None if x is None else ring.label(x)}),
               elapsed_ms=t['elapsed_ms'])

    report.add('all_cyclic_covers', has_all_cyclic_covers(ring))

    m_presented, m_x = is_cyclically_presented(m_module, limits)
    if m_presented:
        report.notes.append(f"M_R es cíclicamente presentado: M_R isomorfo a R/xR con x = {ring.label(m_x)}")
    logger.info(f"Ejemplo triangular reproducido: {report.status.value}")
    return report


def reproduce_matrix_dvr(limits: Optional[Limits] = None) -> Report:
    """
    M_2(Z/9) con x = diag(1, 3): cubierta eR -> R/xR con e = E22,
    núcleo eJ(R) y eR no isomorfo a R.
    """
    limits = limits or current_limits()
    ring = build_ring('mat:2:zmod:9', limits)
    report = Report(command='examples reproduce 45', input_spec=ring.spec_text)
    x = ring.from_matrix([[1, 0], [0, 3]])
    e22 = ring.from_matrix([[0, 0], [0, 1]])

    x_ideal = right_ideal(ring, [x])
    e_ideal = right_ideal(ring, [e22])
    report.lines.append(f"|xR| = {x_ideal.size}, |eR| = {e_ideal.size}, |R| = {ring.size}")
    x_shape = all(ring.coords(m)[2] % 3 == 0 and ring.coords(m)[3] % 3 == 0 for m in x_ideal.members)
    report.add('xR_second_row_in_pi_D', verdict_of(x_shape and x_ideal.size == 729, {'size': x_ideal.size}))

    with report.timed() as t:
        cover = projective_cover_cyclic(ring, x)
    report.lines.append(f"e = {ring.label(cover.idempotent)}")
    report.add('cover_idempotent_E22',
               verdict_of(cover.idempotent == e22, {'e': ring.label(cover.idempotent)}),
               elapsed_ms=t['elapsed_ms'])

    radical = jacobson_radical(ring)
    e_radical = set(int(v) for v in ring.mul_many(e22, np.asarray(radical.members)))
    kernel = set(cover.kernel_ring_members)
    meet = set(ideal_intersection(x_ideal, e_ideal).members)
    report.lines.append(f"|ker| = {len(kernel)}, |eJ(R)| = {len(e_radical)}")
    report.add('kernel_equals_eJ', verdict_of(kernel == e_radical == meet,
                                              {'kernel': len(kernel), 'eJ': len(e_radical)}))

    with report.timed() as t:
        same, _ = is_isomorphic(cover.domain.as_module, regular_module(ring), limits)
    report.add('eR_not_isomorphic_to_R', verdict_of(not same, {'sizes': [e_ideal.size, ring.size]}),
               elapsed_ms=t['elapsed_ms'])
    logger.info(f"Ejemplo M_2(Z/9) reproducido: {report.status.value}")
    return report


def reproduce_quaternion(limits: Optional[Limits] = None) -> Report:
    """Ideales I, J del orden maximal y sus reducciones módulo 3"""
    report = verify_example36(limits=limits)
    report.command = 'examples reproduce 36'
    return report


REPRODUCTIONS: Dict[str, object] = {
    '36': reproduce_quaternion,
    '45': reproduce_matrix_dvr,
    '46': reproduce_triangular,
}


def reproduce(name: str, limits: Optional[Limits] = None) -> Report:
    """
    Ejecuta una reproducción por nombre.

    Raises:
        UsageError: Si el nombre no corresponde a ninguna reproducción
    """
    runner = REPRODUCTIONS.get(name)
    if runner is None:
        raise UsageError(f"Reproducción desconocida: {name} (opciones: {', '.join(sorted(REPRODUCTIONS))})")
    logger.info(f"Reproduciendo ejemplo {name}")
    return runner(limits)

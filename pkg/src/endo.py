"""
Anillos de endomorfismos de módulos finitos
Cuasi-proyectividad, epimorfismos escindidos frente a sumas de ideales,
sumandos mínimos y transferencia de cubiertas entre M y End(M).
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .modules import (
    FiniteModule,
    ModuleHom,
    QuotientModule,
    Submodule,
    hom_set,
    ideal_submodule,
    is_isomorphic,
    is_superfluous,
    regular_module,
    restrict_submodule,
    submodule_image,
    submodule_intersection,
    submodule_sum,
    submodules,
)
from .report import Report, Verdict, require_equivalence, verdict_of
from .rings import (
    FiniteRing,
    RightIdealSet,
    TableRing,
    idempotents,
    right_ideal,
    verify_ring_axioms,
)
from .utils import HypothesisViolated, Limits, PreconditionFailed, SizeExceeded, TrivialRing, current_limits

logger = logging.getLogger('cyclic-covers.endo')


class EndoRing:
    """
    E = End(M) materializado como anillo finito.

    Índice 0: el cero, índice 1: la identidad; el producto es la composición
    (fg)(m) = f(g(m)), de modo que E actúa por la izquierda sobre M.
    """

    def __init__(self, module: FiniteModule, limits: Optional[Limits] = None):
        limits = limits or current_limits()
        if module.size > limits.end_ring_module_cap:
            raise SizeExceeded(f"End({module.name})", module.size, limits.end_ring_module_cap)
        if module.size == 1:
            raise TrivialRing(f"End({module.name}) es el anillo cero")
        self.module = module

        homs = hom_set(module, module, limits)
        zero = tuple([0] * module.size)
        identity = tuple(range(module.size))
        rest = sorted(h.mapping for h in homs if h.mapping not in (zero, identity))
        self.maps = np.asarray([zero, identity] + rest, dtype=np.int64)
        self._index: Dict[Tuple[int, ...], int] = {tuple(int(v) for v in row): k
                                                   for k, row in enumerate(self.maps)}
        n = len(self.maps)
        if n > limits.ring_size_cap:
            raise SizeExceeded(f"End({module.name})", n, limits.ring_size_cap)

        add_table = np.empty((n, n), dtype=np.int64)
        mul_table = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                add_table[i, j] = self._index[tuple(int(v) for v in module.add_many(self.maps[i], self.maps[j]))]
                mul_table[i, j] = self._index[tuple(int(v) for v in self.maps[i][self.maps[j]])]
        labels = ['0', '1'] + [f"phi{k}" for k in range(2, n)]
        self.ring = TableRing(add_table, mul_table, labels, f"End({module.name})", limits)
        verify_ring_axioms(self.ring)
        logger.info(f"End({module.name}): {n} endomorfismos")

    @property
    def size(self) -> int:
        return self.ring.size

    def index_of(self, mapping: Sequence[int]) -> int:
        return self._index[tuple(int(v) for v in mapping)]

    def hom(self, k: int) -> ModuleHom:
        return ModuleHom(self.module, self.module, tuple(int(v) for v in self.maps[k]))

    def image(self, k: int) -> Submodule:
        return submodule_image(self.module, self.maps[k])

    def complement(self, e: int) -> int:
        return self.ring.sub(1, e)

    @cached_property
    def idempotents(self) -> Tuple[int, ...]:
        return idempotents(self.ring)

    @cached_property
    def regular(self) -> FiniteModule:
        return regular_module(self.ring)

    def right_ideal(self, gens: Sequence[int]) -> RightIdealSet:
        return right_ideal(self.ring, gens)


def end_ring(module: FiniteModule, limits: Optional[Limits] = None) -> EndoRing:
    """
    Raises:
        SizeExceeded: Si |M| o |End(M)| superan las cotas
        TrivialRing: Si M = 0
    """
    return EndoRing(module, limits)


@dataclass(frozen=True)
class DecompPair:
    """M = M1 ⊕ M2 con M1 = e(M) y M2 = (1-e)(M)"""
    idempotent: int
    first: Submodule
    second: Submodule


def decomposition(endo: EndoRing, e: int) -> DecompPair:
    first = endo.image(e)
    second = endo.image(endo.complement(e))
    if not (submodule_sum(first, second).is_full and submodule_intersection(first, second).is_zero):
        raise HypothesisViolated(f"{endo.ring.label(e)} no define una descomposición")
    return DecompPair(e, first, second)


def _summand_pairs(module: FiniteModule) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    subs = submodules(module)
    return [(a.members, b.members) for a in subs for b in subs
            if a.size * b.size == module.size and submodule_intersection(a, b).is_zero
            and submodule_sum(a, b).is_full]


def decomposition_correspondence(endo: EndoRing) -> Verdict:
    """Idempotentes de End(M) <-> pares ordenados (M1, M2) con M = M1 ⊕ M2"""
    from_idempotents = {}
    for e in endo.idempotents:
        pair = decomposition(endo, e)
        from_idempotents.setdefault((pair.first.members, pair.second.members), []).append(e)
    collisions = [v for v in from_idempotents.values() if len(v) > 1]
    pairs = set(_summand_pairs(endo.module))
    if collisions or pairs != set(from_idempotents):
        return Verdict.falsified({'collisions': collisions, 'pairs': len(pairs),
                                  'idempotents': len(endo.idempotents)})
    return Verdict.verified({'pairs': len(pairs)})


def quasi_projectivity_witness(module: FiniteModule, endo: Optional[EndoRing] = None,
                               limits: Optional[Limits] = None) -> Optional[Dict[str, List[int]]]:
    """
    Busca K ≤ M y g: M -> M/K sin levantamiento h con pi∘h = g.

    Returns:
        None si M es cuasi-proyectivo, o el par (K, g) que falla
    """
    endo = endo or end_ring(module, limits)
    for sub in submodules(module, limits):
        quotient = QuotientModule(module, sub, f"{module.name}/K")
        pi = quotient.projection
        lifted = {tuple(int(v) for v in pi.array[row]) for row in endo.maps}
        for g in hom_set(module, quotient, limits):
            if g.mapping not in lifted:
                logger.debug(f"{module.name} no es cuasi-proyectivo: K = {sub.members}")
                return {'K': list(sub.members), 'g': list(g.mapping)}
    return None


def is_quasi_projective(module: FiniteModule, endo: Optional[EndoRing] = None,
                        limits: Optional[Limits] = None) -> bool:
    """Todo g: M -> M/K se levanta a un endomorfismo de M (exhaustivo)"""
    return quasi_projectivity_witness(module, endo, limits) is None


# ---------------------------------------------------------------------------
# Epimorfismos escindidos
# ---------------------------------------------------------------------------

def is_split_epi_onto_complement(endo: EndoRing, e: int, s: int) -> bool:
    """pi_2·s: M -> (1-e)(M) admite una sección"""
    complement = endo.complement(e)
    t = endo.maps[endo.ring.mul(complement, s)]
    second = endo.image(complement)
    target = np.asarray(second.members, dtype=np.int64)
    if not set(int(v) for v in t) == set(second.members):
        return False
    for section in hom_set(second.as_module, endo.module):
        if (t[section.array] == target).all():
            return True
    return False


def split_epi_sides(endo: EndoRing, e: int, s: int) -> Tuple[bool, bool]:
    """(pi_2·s escindido, eE + sE = E), decididos por separado"""
    left = is_split_epi_onto_complement(endo, e, s)
    right = endo.right_ideal([e, s]).size == endo.size
    return left, right


def split_epi_equivalence(endo: EndoRing, e: int, s: int) -> Report:
    """
    Raises:
        HypothesisViolated: Si e no es idempotente
        EquivalenceViolation: Si los lados difieren
    """
    if endo.ring.mul(e, e) != e:
        raise HypothesisViolated(f"{endo.ring.label(e)} no es idempotente")
    report = Report(command='endo split', input_spec=f"{endo.ring.spec_text} e={e} s={s}")
    with report.timed() as t:
        left, right = split_epi_sides(endo, e, s)
    require_equivalence('escindido <-> eE + sE = E', left, right, {'e': e, 's': s})
    report.add('split_epi_iff_surjective', Verdict.verified(),
               details={'e': endo.ring.label(e), 's': endo.ring.label(s), 'holds': left},
               elapsed_ms=t['elapsed_ms'])
    return report


def split_epi_sweep(endo: EndoRing) -> Verdict:
    """Todos los pares (e, s) con e idempotente"""
    pairs = 0
    for e in endo.idempotents:
        for s in range(endo.size):
            left, right = split_epi_sides(endo, e, s)
            require_equivalence('escindido <-> eE + sE = E', left, right, {'e': e, 's': s})
            pairs += 1
    return Verdict.verified({'pairs': pairs})


# ---------------------------------------------------------------------------
# Sumandos mínimos
# ---------------------------------------------------------------------------

def _minimal(family: List[Submodule]) -> List[Submodule]:
    return [a for a in family if not any(b.size < a.size and b.issubset(a) for b in family)]


def _pairwise_isomorphic(family: List[Submodule]) -> bool:
    first = family[0].as_module
    return all(is_isomorphic(first, other.as_module)[0] for other in family[1:])


def minimal_summands(endo: EndoRing, s: int, quasi_projective: Optional[bool] = None) -> Report:
    """
    F = {e(M) : pi_2·s escindido}; cE = {N : N + s(M) = M}; cE_⊕ = sumandos en cE.

    Verifica que F tiene mínimos isomorfos entre sí y, si M es cuasi-proyectivo,
    que F = cE_⊕ y que los mínimos de cE_⊕ son mínimos en cE.
    """
    module = endo.module
    report = Report(command='endo minimal', input_spec=f"{endo.ring.spec_text} s={endo.ring.label(s)}")

    with report.timed() as t:
        family = {}
        for e in endo.idempotents:
            if is_split_epi_onto_complement(endo, e, s):
                image = endo.image(e)
                family.setdefault(image.members, image)
        members = list(family.values())
        minima = _minimal(members)
    report.add('F_minima_exist', verdict_of(bool(minima), {'F': len(members)}),
               details={'F': len(members), 'minima': [list(m.members) for m in minima]},
               elapsed_ms=t['elapsed_ms'])
    report.add('F_minima_isomorphic', verdict_of(bool(minima) and _pairwise_isomorphic(minima),
                                                 [list(m.members) for m in minima]))
    report.lines.append(f"minimos de F: {[m.labels() for m in minima]}")

    if quasi_projective is None:
        quasi_projective = is_quasi_projective(module, endo)
    if not quasi_projective:
        report.notes.append('M no es cuasi-proyectivo: se omite la comparación con cE')
        return report

    s_image = endo.image(s)
    subs = submodules(module)
    onto = [n for n in subs if submodule_sum(n, s_image).is_full]
    summands = {endo.image(e).members for e in endo.idempotents}
    onto_summands = [n for n in onto if n.members in summands]
    report.add('F_equals_E_oplus', verdict_of({n.members for n in onto_summands} == set(family),
                                              {'E_oplus': len(onto_summands), 'F': len(family)}))
    minima_oplus = _minimal(onto_summands)
    minima_all = {n.members for n in _minimal(onto)}
    report.add('E_oplus_minima_minimal_in_E',
               verdict_of(all(n.members in minima_all for n in minima_oplus),
                          [list(n.members) for n in minima_oplus]))
    return report


# ---------------------------------------------------------------------------
# Transferencia M <-> End(M)
# ---------------------------------------------------------------------------

@dataclass
class CokernelData:
    """pi: M -> M/s(M) y phi: E -> E/sE"""
    s: int
    s_image: Submodule
    pi: ModuleHom
    s_ideal: Submodule
    phi: ModuleHom


def cokernel_data(endo: EndoRing, s: int) -> CokernelData:
    s_image = endo.image(s)
    pi = QuotientModule(endo.module, s_image, f"{endo.module.name}/s(M)").projection
    s_ideal = ideal_submodule(endo.right_ideal([s]))
    phi = QuotientModule(endo.regular, s_ideal, f"{endo.ring.spec_text}/sE").projection
    return CokernelData(s, s_image, pi, s_ideal, phi)


def _surjective_on(hom: ModuleHom, sub: Submodule) -> bool:
    return len(set(int(v) for v in hom.array[list(sub.members)])) == hom.target.size


def _kernel_superfluous_on(hom: ModuleHom, sub: Submodule) -> bool:
    kernel_members = [m for m in sub.members if hom(m) == 0]
    kernel = Submodule(hom.source, tuple(kernel_members))
    local = restrict_submodule(kernel, sub)
    return is_superfluous(local, sub.as_module)


def _has_complement(sub: Submodule, subs: List[Submodule]) -> bool:
    return any(submodule_intersection(sub, c).is_zero and submodule_sum(sub, c).is_full for c in subs)


def lemma_endo_suite(endo: EndoRing, s: int, quasi_projective: Optional[bool] = None) -> Report:
    """
    Para M cuasi-proyectivo decide por separado ambos lados de:
    (1) pi|g(M) sobre <-> phi|gE sobre; (2) gE sumando <-> g(M) sumando;
    (3) e(M) ≅ e'(M) <-> eE ≅ e'E; (4) ker pi|e(M) superfluo <-> ker phi|eE superfluo.

    Raises:
        HypothesisViolated: Si M no es cuasi-proyectivo
        EquivalenceViolation: Si algún par de lados difiere
    """
    module = endo.module
    if quasi_projective is None:
        quasi_projective = is_quasi_projective(module, endo)
    if not quasi_projective:
        raise HypothesisViolated(f"{module.name} no es cuasi-proyectivo")
    data = cokernel_data(endo, s)
    report = Report(command='endo suite', input_spec=f"{endo.ring.spec_text} s={endo.ring.label(s)}")
    module_subs = submodules(module)
    idempotent_ideals = {endo.right_ideal([f]).members for f in endo.idempotents}

    with report.timed() as t:
        for g in range(endo.size):
            image = endo.image(g)
            ideal = ideal_submodule(endo.right_ideal([g]))
            require_equivalence('pi|g(M) sobre <-> phi|gE sobre',
                                _surjective_on(data.pi, image), _surjective_on(data.phi, ideal), {'g': g})
    report.add('surjectivity_transfer', Verdict.verified({'endomorphisms': endo.size}),
               elapsed_ms=t['elapsed_ms'])

    with report.timed() as t:
        for g in range(endo.size):
            image = endo.image(g)
            ring_side = endo.right_ideal([g]).members in idempotent_ideals
            require_equivalence('gE sumando <-> g(M) sumando',
                                ring_side, _has_complement(image, module_subs), {'g': g})
    report.add('summand_transfer', Verdict.verified({'endomorphisms': endo.size}),
               elapsed_ms=t['elapsed_ms'])

    with report.timed() as t:
        pairs = 0
        for e in endo.idempotents:
            for f in endo.idempotents:
                module_side, _ = is_isomorphic(endo.image(e).as_module, endo.image(f).as_module)
                ring_side, _ = is_isomorphic(ideal_submodule(endo.right_ideal([e])).as_module,
                                             ideal_submodule(endo.right_ideal([f])).as_module)
                require_equivalence('e(M) ≅ f(M) <-> eE ≅ fE', module_side, ring_side, {'e': e, 'f': f})
                pairs += 1
    report.add('isomorphism_transfer', Verdict.verified({'pairs': pairs}), elapsed_ms=t['elapsed_ms'])

    with report.timed() as t:
        for e in endo.idempotents:
            image = endo.image(e)
            ideal = ideal_submodule(endo.right_ideal([e]))
            require_equivalence('ker pi|e(M) superfluo <-> ker phi|eE superfluo',
                                _kernel_superfluous_on(data.pi, image),
                                _kernel_superfluous_on(data.phi, ideal), {'e': e})
    report.add('superfluity_transfer', Verdict.verified({'idempotents': len(endo.idempotents)}),
               elapsed_ms=t['elapsed_ms'])
    return report


def is_cyclic_projective(module: FiniteModule, ring: FiniteRing) -> Optional[int]:
    """Idempotente f de R con M ≅ fR, o None"""
    for f in idempotents(ring):
        candidate = ideal_submodule(right_ideal(ring, [f]))
        if candidate.size == module.size and is_isomorphic(module, candidate.as_module)[0]:
            return f
    return None


def cover_transfer_check(endo: EndoRing, s: int) -> Report:
    """
    M proyectivo: pi|e(M) cubierta de M/s(M) <-> phi|eE cubierta de E/sE.

    Raises:
        HypothesisViolated: Si M no es isomorfo a fR con f idempotente
        EquivalenceViolation: Si los lados difieren
    """
    module = endo.module
    if is_cyclic_projective(module, module.ring) is None:
        raise HypothesisViolated(f"{module.name} no es proyectivo de la forma fR")
    data = cokernel_data(endo, s)
    report = Report(command='endo suite', input_spec=f"{endo.ring.spec_text} s={endo.ring.label(s)}")
    covers = []
    with report.timed() as t:
        for e in endo.idempotents:
            image = endo.image(e)
            ideal = ideal_submodule(endo.right_ideal([e]))
            module_side = _surjective_on(data.pi, image) and _kernel_superfluous_on(data.pi, image)
            ring_side = _surjective_on(data.phi, ideal) and _kernel_superfluous_on(data.phi, ideal)
            require_equivalence('cubierta en M <-> cubierta en E', module_side, ring_side, {'e': e})
            if module_side:
                covers.append(endo.ring.label(e))
    report.add('cover_transfer', Verdict.verified({'covers': covers}), elapsed_ms=t['elapsed_ms'])
    return report


def _check_endomorphism(endo: EndoRing, s: Optional[int]) -> None:
    if s is not None and not 0 <= s < endo.size:
        raise PreconditionFailed(f"Endomorfismo {s} fuera de rango: |End(M)| = {endo.size}")


def endo_suite(module: FiniteModule, s: Optional[int] = None, limits: Optional[Limits] = None) -> Report:
    """Suite completa sobre M: correspondencia, escisión y, si aplica, transferencias"""
    endo = end_ring(module, limits)
    _check_endomorphism(endo, s)
    report = Report(command='endo suite', input_spec=module.name)
    report.lines.append(f"|End(M)| = {endo.size}, idempotentes: {[endo.ring.label(e) for e in endo.idempotents]}")
    report.add('decomposition_correspondence', decomposition_correspondence(endo))
    with report.timed() as t:
        sweep = split_epi_sweep(endo)
    report.add('split_epi_sweep', sweep, elapsed_ms=t['elapsed_ms'])

    witness = quasi_projectivity_witness(module, endo, limits)
    report.lines.append(f"cuasi-proyectivo: {witness is None}")
    endomorphisms = range(endo.size) if s is None else [s]
    if witness is None:
        for k in endomorphisms:
            report.extend(lemma_endo_suite(endo, k, True), prefix=f"s={endo.ring.label(k)}:")
    else:
        report.notes.append(f"M no es cuasi-proyectivo (testigo {witness}); se omite la suite de transferencia")
    if is_cyclic_projective(module, module.ring) is not None:
        for k in endomorphisms:
            report.extend(cover_transfer_check(endo, k), prefix=f"s={endo.ring.label(k)}:")
    return report


def minimal_report(module: FiniteModule, s: Optional[int] = None, limits: Optional[Limits] = None) -> Report:
    endo = end_ring(module, limits)
    _check_endomorphism(endo, s)
    quasi_projective = is_quasi_projective(module, endo, limits)
    report = Report(command='endo minimal', input_spec=module.name)
    for k in (range(endo.size) if s is None else [s]):
        report.extend(minimal_summands(endo, k, quasi_projective), prefix=f"s={endo.ring.label(k)}:")
    return report

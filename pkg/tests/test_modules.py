"""
Tests unitarios para el módulo modules
"""

import gc
import weakref

import pytest

from src.modules import (
    QuotientModule,
    annihilator,
    check_square,
    cyclic_module,
    direct_sum,
    element_annihilator,
    exact_quotient_is_cyclically_presented,
    exactness_transitivity,
    hom_set,
    ideal_submodule,
    induced_square,
    is_cyclically_presented,
    is_exact_submodule,
    is_isomorphic,
    is_module_hom,
    is_pi_exact,
    is_superfluous,
    left_multiplication,
    local_domain_exactness_check,
    pi_exact_quotient_check,
    pi_exactness_transitivity,
    presentation,
    presentation_independence_check,
    presentation_invariance_check,
    presentations,
    projective_cover_cyclic,
    regular_module,
    restrict_submodule,
    schanuel_check,
    submodule_closure,
    submodules,
    verify_module_axioms,
)
from src.rings import build_ring, right_ideal
from src.utils import HypothesisViolated, NotCyclic

E22, E12, E12_E22, E11 = 2, 3, 4, 5


@pytest.fixture
def triangular():
    """T_2(Z/2)"""
    return build_ring('tri:2:zmod:2')


@pytest.fixture
def m_and_n(triangular):
    """M_R = E11·R y N_R = E12·R ⊂ M_R como submódulo de M_R"""
    m_sub = ideal_submodule(right_ideal(triangular, [E11]))
    n_sub = ideal_submodule(right_ideal(triangular, [E12]))
    return m_sub, restrict_submodule(n_sub, m_sub)


class TestModules:
    """Tests para módulos regulares, cocientes y sumas directas"""

    def test_regular_module_is_unique(self, triangular):
        """Una sola instancia de R_R por anillo"""
        assert regular_module(triangular) is regular_module(triangular)
        assert regular_module(triangular).size == 8

    def test_cyclic_module(self, triangular):
        """R/E11·R tiene dos elementos"""
        module, pi = cyclic_module(triangular, E11)
        assert module.size == 2
        assert pi.is_surjective()
        assert verify_module_axioms(module)

    def test_direct_sum(self, triangular):
        """|M ⊕ N| = |M|·|N|"""
        module, _ = cyclic_module(triangular, E11)
        total = direct_sum(regular_module(triangular), module)
        assert total.size == 16
        assert verify_module_axioms(total)

    def test_direct_sum_other_ring(self, triangular):
        """Los sumandos deben compartir anillo"""
        other = regular_module(build_ring('zmod:2'))
        with pytest.raises(HypothesisViolated):
            direct_sum(regular_module(triangular), other)


class TestSubmodules:
    """Tests para el retículo de submódulos"""

    def test_submodules_of_m(self, m_and_n):
        """M_R tiene exactamente tres submódulos: 0, N_R y M_R"""
        m_sub, _ = m_and_n
        subs = submodules(m_sub.as_module)
        assert [s.size for s in subs] == [1, 2, 4]

    def test_submodules_of_zmod12(self):
        """Los ideales de Z/12 corresponden a los divisores de 12"""
        assert len(submodules(regular_module(build_ring('zmod:12')))) == 6

    def test_closure(self, triangular):
        """La clausura de E11 es E11·R"""
        sub = submodule_closure(regular_module(triangular), [E11])
        assert sub.members == right_ideal(triangular, [E11]).members


class TestHomomorphisms:
    """Tests para homomorfismos e isomorfismos"""

    def test_left_multiplication(self, triangular):
        """r -> a·r es un endomorfismo de R_R"""
        for a in range(triangular.size):
            hom = left_multiplication(triangular, a)
            assert is_module_hom(hom.source, hom.target, hom.mapping)

    def test_hom_set_size(self):
        """End(Z/6) tiene 6 elementos"""
        module = regular_module(build_ring('zmod:6'))
        assert len(hom_set(module, module)) == 6

    def test_n_isomorphic_to_e22r(self, triangular):
        """N_R ≅ E22·R aunque no son iguales"""
        n_sub = ideal_submodule(right_ideal(triangular, [E12]))
        e_sub = ideal_submodule(right_ideal(triangular, [E22]))
        same, hom = is_isomorphic(n_sub.as_module, e_sub.as_module)
        assert same
        assert hom.is_injective()

    def test_er_not_isomorphic_to_r(self):
        """E11·M_2(F_2) no es isomorfo a R"""
        ring = build_ring('mat:2:zmod:2')
        e11 = ring.from_matrix([[1, 0], [0, 0]])
        sub = ideal_submodule(right_ideal(ring, [e11]))
        assert not is_isomorphic(sub.as_module, regular_module(ring))[0]

    def test_presentation_requires_generator(self, triangular):
        """Un elemento que no genera no da presentación"""
        module, _ = cyclic_module(triangular, E11)
        with pytest.raises(NotCyclic):
            presentation(module, 0)

    def test_presentations_count(self):
        """Z/6 -> Z/6: una presentación por unidad"""
        module = regular_module(build_ring('zmod:6'))
        assert len(presentations(module)) == 2


class TestAnnihilators:
    """Tests para anuladores"""

    def test_annihilator_of_quotient(self, m_and_n):
        """ann(M_R/N_R) = {0, E22, E12, E12 + E22}"""
        m_sub, n_in_m = m_and_n
        quotient = QuotientModule(m_sub.as_module, n_in_m)
        assert annihilator(quotient).members == (0, E22, E12, E12_E22)

    def test_annihilator_of_cyclic(self, triangular):
        """ann(R/M_R) = M_R"""
        module, _ = cyclic_module(triangular, E11)
        assert annihilator(module).members == right_ideal(triangular, [E11]).members

    def test_element_annihilator(self):
        """ann(2) en Z/4 es 2Z/4Z"""
        module = regular_module(build_ring('zmod:4'))
        assert element_annihilator(module, 2).members == (0, 2)


class TestSquare:
    """Tests para las tres condiciones equivalentes del cuadrado"""

    @pytest.mark.parametrize('spec', [
        'zmod:12', 'zmod:16', 'zmod:18', 'zmod:9', 'tri:2:zmod:2', 'mat:2:zmod:2', 'prod:zmod:2,zmod:3',
    ])
    def test_induced_squares(self, spec):
        """Las condiciones coinciden en todo cuadrado inducido"""
        ring = build_ring(spec)
        for a in range(ring.size):
            for x in range(ring.size):
                results = check_square(induced_square(ring, a, x))
                assert len(set(results)) == 1

    def test_identity_square(self, triangular):
        """Con lam = 1 todas las condiciones valen"""
        assert check_square(induced_square(triangular, 1, E11)) == (True, True, True)


class TestCovers:
    """Tests para superfluidad y cubiertas proyectivas"""

    def test_superfluous_radical(self):
        """2Z/4Z es superfluo en Z/4; 3Z/6Z no lo es en Z/6"""
        z4 = build_ring('zmod:4')
        assert is_superfluous(ideal_submodule(right_ideal(z4, [2])))
        z6 = build_ring('zmod:6')
        assert not is_superfluous(ideal_submodule(right_ideal(z6, [3])))

    def test_cover_of_r_mod_m(self, triangular):
        """La cubierta de R/E11·R es E22·R con núcleo nulo"""
        cover = projective_cover_cyclic(triangular, E11)
        assert cover.idempotent == E22
        assert cover.domain.size == 2
        assert cover.kernel.is_zero

    @pytest.mark.parametrize('x,e', [(2, 1), (1, 0), (3, 0), (0, 1)])
    def test_cover_zmod4(self, x, e):
        """En Z/4: x = 2 da e = 1, una unidad da e = 0"""
        assert projective_cover_cyclic(build_ring('zmod:4'), x).idempotent == e

    def test_semisimple_covers(self):
        """M_2(F_2) es semisimple: núcleos nulos"""
        ring = build_ring('mat:2:zmod:2')
        for x in range(ring.size):
            cover = projective_cover_cyclic(ring, x)
            assert cover.kernel.is_zero

    def test_cover_caches_released(self):
        """Las cachés de cubiertas viven en el anillo y se liberan con él"""
        ring = build_ring('zmod:12')
        assert projective_cover_cyclic(ring, 2).idempotent == 9
        assert ring.cover_candidates is ring.cover_candidates
        assert ring.regular_module is regular_module(ring)
        ref = weakref.ref(ring)
        del ring
        gc.collect()
        assert ref() is None


class TestExactness:
    """Tests para submódulos pi-exactos y exactos"""

    def test_n_exact_in_m(self, m_and_n):
        """N_R es exacto en M_R"""
        m_sub, n_in_m = m_and_n
        exact, witness = is_exact_submodule(n_in_m, m_sub.as_module)
        assert exact
        assert witness.lam_kernel == witness.kernel_m

    def test_m_cyclically_presented(self, m_and_n):
        """M_R ≅ R/E22·R"""
        m_sub, _ = m_and_n
        presented, x = is_cyclically_presented(m_sub.as_module)
        assert presented
        assert x == E22

    def test_quotient_not_cyclically_presented(self, m_and_n):
        """M_R/N_R no es cíclicamente presentado"""
        m_sub, n_in_m = m_and_n
        presented, x = is_cyclically_presented(QuotientModule(m_sub.as_module, n_in_m))
        assert not presented
        assert x is None

    def test_pi_exact_in_regular(self):
        """En Z/4 con pi = identidad: R es pi-exacto, 2R no"""
        ring = build_ring('zmod:4')
        module, pi = cyclic_module(ring, 0)
        subs = submodules(module)
        assert is_pi_exact(subs[-1], pi)
        assert not is_pi_exact(subs[1], pi)

    @pytest.mark.parametrize('spec', ['tri:2:zmod:2', 'zmod:12', 'zmod:8'])
    def test_corollary_checks(self, spec):
        """Los chequeos derivados valen para todo submódulo de todo R/xR"""
        ring = build_ring(spec)
        seen = set()
        for x in range(ring.size):
            ideal = right_ideal(ring, [x])
            if ideal.members in seen:
                continue
            seen.add(ideal.members)
            module, pi = cyclic_module(ring, x)
            subs = submodules(module)
            for sub in subs:
                assert presentation_invariance_check(sub, pi).holds
                assert presentation_independence_check(sub).holds
                assert pi_exact_quotient_check(sub, pi).holds
                for middle in subs:
                    if sub.issubset(middle):
                        assert pi_exactness_transitivity(sub, middle, pi).holds

    def test_exactness_transitivity(self):
        """0 ⊂ 2Z/8 ⊂ Z/8"""
        ring = build_ring('zmod:8')
        module = regular_module(ring)
        subs = submodules(module)
        for inner in subs:
            for middle in subs:
                if inner.issubset(middle) and not inner.is_zero:
                    assert exactness_transitivity(inner, middle).holds
            if not inner.is_zero:
                assert exact_quotient_is_cyclically_presented(inner).holds

    def test_schanuel(self):
        """Dos presentaciones de Z/9 / 3: núcleos estables isomorfos"""
        module, _ = cyclic_module(build_ring('zmod:9'), 3)
        assert schanuel_check(module, 1, 2).holds

    @pytest.mark.parametrize('spec', ['zmod:5', 'zmod:7', 'zmod:4'])
    def test_local_domain(self, spec):
        """Sobre cuerpos exacto y pi-exacto coinciden; fuera la hipótesis es vacía"""
        assert local_domain_exactness_check(build_ring(spec)).holds


@pytest.fixture(autouse=True)
def setup_logging():
    """Configura logging para tests"""
    import logging
    logging.basicConfig(level=logging.DEBUG)

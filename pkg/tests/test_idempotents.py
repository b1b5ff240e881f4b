from itertools import product

import numpy as np
import pytest

from qgwalk.algebra import AlgebraElement, AlgebraShape, haar_integral, unit
from qgwalk.idempotents import (
    HaarSpec,
    HGammaLSpec,
    HGammaLTauSpec,
    HGammaSpec,
    InvalidSpecError,
    build_idempotent,
    enumerate_central_idempotents,
    has_reflection_symmetry,
    idempotent_profile,
    is_central_functional,
    is_idempotent_state,
    is_subgroup,
    subgroup_from_generators,
    subgroups_znxzn,
    valid_sign_vectors,
)
from qgwalk.sekine import central_to_element, fourier_profile
from conftest import random_central


def all_specs(n):
    specs = [HaarSpec()] + [HGammaSpec(m) for m in subgroups_znxzn(n)]
    for q in range(2, n + 1):
        if n % q == 0:
            specs += [HGammaLSpec(q, l) for l in range(q)]
    for q in range(1, n):
        if n % q == 0 and n // q > 1:
            for tau in valid_sign_vectors(n // q):
                specs += [HGammaLTauSpec(n // q, q, l, tau) for l in range(q)]
    return specs


class TestSubgroups:
    def test_against_two_generator_closure(self):
        for n in (2, 3, 4, 5, 6):
            pairs = list(product(range(n), repeat=2))
            brute = {
                subgroup_from_generators(n, [g1, g2]) for g1 in pairs for g2 in pairs
            }
            hnf = subgroups_znxzn(n)
            assert len(hnf) == len(set(hnf))
            assert set(hnf) == brute

    def test_all_are_subgroups(self):
        for n in (4, 6, 9):
            for members in subgroups_znxzn(n):
                assert is_subgroup(n, members)
                assert n * n % len(members) == 0


class TestSignVectors:
    def test_constant_always_valid(self):
        for p in (2, 3, 5, 8):
            assert tuple([1] * p) in valid_sign_vectors(p)

    def test_alternating_for_even_length(self):
        assert (1, -1) in valid_sign_vectors(2)
        assert (1, -1, 1, -1) in valid_sign_vectors(4)
        assert len(valid_sign_vectors(3)) == 1

    def test_exhaustive_small(self):
        # brute-force filter over all sign vectors agrees
        from qgwalk.idempotents import sign_vector_dft

        for p in (2, 3, 4, 5, 6):
            brute = []
            for bits in product((1, -1), repeat=p):
                d = sign_vector_dft(bits, p)
                if np.abs(d.imag).max() < 1e-9 and d.real.min() > -1e-9:
                    brute.append(bits)
            assert sorted(brute) == sorted(valid_sign_vectors(p))


class TestBuildIdempotent:
    def test_haar_is_unit(self):
        x = build_idempotent(HaarSpec(), 5)
        assert x.allclose(unit(AlgebraShape.sekine(5)))

    def test_full_group(self):
        n = 4
        full = frozenset(product(range(n), repeat=2))
        x = build_idempotent(HGammaSpec(full), n)
        assert np.allclose(x.abelian, 2.0)
        assert np.allclose(x.matrix, 0.0)
        assert haar_integral(x) == pytest.approx(1.0)

    def test_type4_with_q1(self):
        # q = 1, l = 0, constant tau: full matrix of ones
        n = 5
        spec = HGammaLTauSpec(n, 1, 0, tuple([1] * n))
        x = build_idempotent(spec, n)
        ab = x.abelian.reshape(n, n)
        assert np.allclose(ab[0, :], n) and np.allclose(ab[1:, :], 0.0)
        assert np.allclose(x.matrix, 1.0)

    def test_invalid_specs_rejected(self):
        with pytest.raises(InvalidSpecError):
            build_idempotent(HGammaLSpec(2, 0), 5)  # 2 does not divide 5
        with pytest.raises(InvalidSpecError):
            build_idempotent(HGammaSpec(frozenset({(0, 0), (1, 0)})), 3)  # not closed
        with pytest.raises(InvalidSpecError):
            build_idempotent(HGammaLTauSpec(3, 1, 0, (1, -1, -1)), 3)  # negative DFT

    def test_all_specs_are_idempotent_states(self):
        for n in (2, 3, 4, 5, 6, 7, 8):
            for spec in all_specs(n):
                x = build_idempotent(spec, n)
                assert haar_integral(x) == pytest.approx(1.0)
                assert is_idempotent_state(x, 1e-10), (n, spec)

    def test_unit_scaled_not_idempotent(self):
        assert not is_idempotent_state(2.0 * unit(AlgebraShape.sekine(3)), 1e-10)


class TestIdempotentProfile:
    def test_element_profile_matches_closed_form(self):
        for n in (2, 3, 4, 5, 6, 8, 9):
            for spec in all_specs(n):
                if not isinstance(spec, (HGammaLSpec, HGammaLTauSpec)):
                    continue
                got = fourier_profile(build_idempotent(spec, n))
                assert got.allclose(idempotent_profile(spec, n), 1e-10), (n, spec)

    def test_q2_l0_block(self):
        n = 6
        b = idempotent_profile(HGammaLSpec(2, 0), n).block(0, n // 2)
        assert np.allclose(b, 0.5 * np.ones((2, 2)))

    def test_q2_l1_block(self):
        n = 6
        b = idempotent_profile(HGammaLSpec(2, 1), n).block(0, n // 2)
        assert np.allclose(b, 0.5 * np.array([[1, -1], [-1, 1]]))

    def test_tau_blocks_vanish_off_lattice(self):
        n = 6
        spec = HGammaLTauSpec(3, 2, 0, (1, 1, 1))
        prof = idempotent_profile(spec, n)
        for u in range(n):
            for v in range(n // 2 + 1):
                if u % 2 != 0:
                    assert np.allclose(prof.block(u, v), 0.0)


class TestCentrality:
    def test_central_element_functionals_are_central(self, rng):
        for n in (3, 4):
            a = central_to_element(random_central(n, rng))
            assert is_central_functional(a, trials=10, rng=rng)

    def test_point_mass_off_identity_not_central(self):
        n = 4
        ab = np.zeros(n * n)
        ab[1] = 2 * n * n  # e_(0,1)
        x = AlgebraElement(AlgebraShape.sekine(n), ab, np.zeros((n, n)))
        assert not is_central_functional(x, trials=20)

    def test_q1_constant_tau_central(self):
        n = 5
        x = build_idempotent(HGammaLTauSpec(n, 1, 0, tuple([1] * n)), n)
        assert is_central_functional(x, trials=20)

    def test_h_gamma_centrality_matches_reflection_symmetry(self):
        for n in (3, 4, 6):
            for members in subgroups_znxzn(n):
                x = build_idempotent(HGammaSpec(members), n)
                assert is_central_functional(x, trials=10) == has_reflection_symmetry(
                    n, members
                ), (n, sorted(members))

    def test_h_ql_central_iff_q_is_two(self):
        for n in (4, 6, 8, 9):
            for q in (q for q in range(2, n + 1) if n % q == 0):
                x = build_idempotent(HGammaLSpec(q, 0), n)
                assert is_central_functional(x, trials=10) == (q == 2), (n, q)


class TestEnumeration:
    def test_n2_contents(self):
        specs = enumerate_central_idempotents(2)
        gammas = [s for s in specs if isinstance(s, HGammaSpec)]
        qls = [s for s in specs if isinstance(s, HGammaLSpec)]
        taus = [s for s in specs if isinstance(s, HGammaLTauSpec)]
        haars = [s for s in specs if isinstance(s, HaarSpec)]
        assert len(haars) == 1
        assert len(gammas) == 5  # every subgroup of Z_2 x Z_2 is reflection symmetric
        assert sorted((s.q, s.l) for s in qls) == [(2, 0), (2, 1)]
        assert sorted(s.tau for s in taus) == [(1, -1), (1, 1)]  # q = 1 only; q = 2 needs p > 1

    def test_no_even_divisor_families_for_odd_n(self):
        specs = enumerate_central_idempotents(3)
        assert not any(isinstance(s, HGammaLSpec) for s in specs)
        taus = [s for s in specs if isinstance(s, HGammaLTauSpec)]
        assert all(s.q == 1 and s.tau == (1, 1, 1) for s in taus)

    def test_all_enumerated_pass_checks(self):
        for n in (2, 3, 4, 5, 6):
            for spec in enumerate_central_idempotents(n):
                x = build_idempotent(spec, n)
                assert is_idempotent_state(x, 1e-10)
                assert is_central_functional(x, trials=10)

    def test_no_duplicates(self):
        for n in (2, 4, 6):
            specs = enumerate_central_idempotents(n)
            keys = set()
            for spec in specs:
                x = build_idempotent(spec, n)
                key = np.round(np.concatenate([x.abelian, x.matrix.reshape(-1)]), 8).tobytes()
                assert key not in keys
                keys.add(key)

    def test_cap(self):
        with pytest.raises(ValueError):
            enumerate_central_idempotents(25)

    def test_every_central_idempotent_is_its_own_limit(self):
        # closing the loop with the walk classifier: driving the walk by a
        # central idempotent returns that very idempotent
        from qgwalk.sekine import element_to_central
        from qgwalk.walks import classify_limit

        for n in (2, 3, 4, 6):
            for spec in enumerate_central_idempotents(n):
                a = element_to_central(build_idempotent(spec, n))
                c = classify_limit(a)
                if isinstance(spec, HaarSpec):
                    assert c.kind == "haar"
                else:
                    assert c.kind == "idempotent"
                    rebuilt = build_idempotent(c.spec, n)
                    assert rebuilt.allclose(build_idempotent(spec, n), 1e-9), (n, spec, c.spec)

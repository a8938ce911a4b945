import cmath
import math

import pytest
from hypothesis import given, settings, strategies as st

from ucpscatter import (
    UcpSpec,
    barrier_matrix,
    bloch_sequence,
    gamma1,
    gamma2,
    segment_length,
    transmission_spp,
    transmission_ucp,
    ucp_super_periods,
)


def single_barrier_transmission(k, V, width):
    """Independent textbook single-barrier formula (tunneling or propagating)."""
    d = k * k - V
    if d > 0:
        kap = math.sqrt(d)
        em = (k / kap - kap / k) / 2
        return 1.0 / (1.0 + em * em * math.sin(kap * width) ** 2)
    kap = math.sqrt(-d)
    em = (k * k + kap * kap) / (2 * k * kap)  # |eps_-| on imaginary kappa
    return 1.0 / (1.0 + em * em * math.sinh(kap * width) ** 2)


class TestBarrierMatrix:
    def test_zero_height_is_identity(self):
        # amplitudes are referenced locally at each boundary, so a region of
        # vanished potential contributes no mixing and no extra phase
        m = barrier_matrix(2.0, 0.0, 1.5)
        assert m.m12 == 0
        assert m.m11 == pytest.approx(1.0, abs=1e-14)
        assert m.m22 == pytest.approx(1.0, abs=1e-14)

    def test_kappa_zero_limit(self):
        # at E = V the off-diagonal magnitude tends to k*w/2
        m = barrier_matrix(5.0, 25.0, 1.0)
        assert abs(m.m12) == pytest.approx(2.5, rel=1e-12)

    def test_tunneling_single_barrier(self):
        m = barrier_matrix(3.0, 25.0, 0.5)
        t = 1.0 / abs(m.m22) ** 2
        assert t == pytest.approx(single_barrier_transmission(3.0, 25.0, 0.5), rel=1e-12)

    def test_symmetry_structure(self):
        m = barrier_matrix(1.7, 6.0, 0.9)
        assert m.m22 == pytest.approx(m.m11.conjugate(), abs=1e-12)
        assert m.m21 == pytest.approx(m.m12.conjugate(), abs=1e-12)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            barrier_matrix(0.0, 5.0, 1.0)
        with pytest.raises(ValueError):
            barrier_matrix(1.0, 5.0, 0.0)

    @given(
        st.floats(0.05, 30),
        st.floats(-50, 50),
        st.floats(0.001, 5),
    )
    def test_unimodular(self, k, V, width):
        m = barrier_matrix(k, V, width)
        scale = max(1.0, abs(m.m22) ** 2)
        assert abs(m.det() - 1.0) <= 1e-10 * scale


class TestBlochSequence:
    def test_stage_zero_empty(self):
        spec = UcpSpec(L=1, V=10, rho=3, alpha=1, beta=0, G=0)
        assert len(bloch_sequence(spec, 2.0)) == 0

    def test_stage_one_matches_hand_formula(self):
        spec = UcpSpec(L=1, V=10, rho=3, alpha=1, beta=0, G=1)
        k = 2.7
        cell = barrier_matrix(k, spec.V, segment_length(spec, 1))
        theta = cmath.phase(cell.m22)
        expected = abs(cell.m22) * math.cos(theta - k * gamma1(spec, 1))
        seq = bloch_sequence(spec, k)
        assert seq.omegas[0] == pytest.approx(expected, rel=1e-13)

    def test_stage_two_matches_hand_expansion(self):
        spec = UcpSpec(L=2, V=15, rho=2.5, alpha=0.5, beta=1, G=2)
        k = 3.1
        cell = barrier_matrix(k, spec.V, segment_length(spec, 2))
        amp, theta = abs(cell.m22), cmath.phase(cell.m22)
        w1 = amp * math.cos(theta - k * gamma1(spec, 1))
        w2 = 2 * amp * math.cos(theta - k * gamma1(spec, 2)) * w1 - math.cos(
            k * gamma2(spec, 2, 1)
        )
        seq = bloch_sequence(spec, k)
        assert seq.omegas[0] == pytest.approx(w1, rel=1e-13)
        assert seq.omegas[1] == pytest.approx(w2, rel=1e-12)

    def test_prefix_products(self):
        spec = UcpSpec(L=10, V=25, rho=3, alpha=1, beta=0, G=5)
        seq = bloch_sequence(spec, 4.0)
        prod = 1.0
        for omega, cached in zip(seq.omegas, seq.prefix_products):
            prod *= omega
            assert cached == prod

    def test_reality_against_complex_path(self):
        # re-derive each Omega keeping m22 complex; imaginary residue must vanish
        spec = UcpSpec(L=10, V=25, rho=3, alpha=1, beta=0, G=6)
        k = 4.0
        cell = barrier_matrix(k, spec.V, segment_length(spec, spec.G))
        m22 = cell.m22
        omegas = []
        for q in range(1, spec.G + 1):
            lead = (
                2.0 ** (q - 1)
                * (m22 * cmath.exp(-1j * k * gamma1(spec, q))).real
                * math.prod(omegas[: q - 1], start=1.0)
            )
            z = (
                2.0 ** (q - 1)
                * m22
                * cmath.exp(-1j * k * gamma1(spec, q))
                * math.prod(omegas[: q - 1], start=1.0)
            )
            # the Hermitian combination (z + conj(z))/2 is what the real path uses
            assert abs((z + z.conjugate()).imag) <= 1e-10 * max(1.0, abs(z))
            acc = 0.0
            for r in range(1, q):
                acc += (
                    2.0 ** (q - r - 1)
                    * math.cos(k * gamma2(spec, q, r))
                    * math.prod(omegas[r:q - 1], start=1.0)
                )
            omegas.append(lead - acc)
        seq = bloch_sequence(spec, k)
        for mine, theirs in zip(omegas, seq.omegas):
            assert theirs == pytest.approx(mine, rel=1e-10, abs=1e-10)


class TestTransmissionUcp:
    def test_zero_height_transmits_fully(self):
        spec = UcpSpec(L=7, V=0, rho=2.5, alpha=0.5, beta=1, G=3)
        res = transmission_ucp(spec, 1.3)
        assert res.transmission == 1.0
        assert res.reflection == 0.0
        assert res.log10_transmission == 0.0

    def test_stage_zero_single_barrier(self):
        spec = UcpSpec(L=1, V=10, rho=3, alpha=1, beta=0, G=0)
        res = transmission_ucp(spec, 2.0)
        assert res.transmission == pytest.approx(
            single_barrier_transmission(2.0, 10.0, 1.0), rel=1e-12
        )

    def test_unitarity(self):
        spec = UcpSpec(L=10, V=25, rho=2.5, alpha=0.5, beta=1, G=4)
        for k in (0.5, 1.0, 3.3, 4.9999, 5.0001, 12.0):
            res = transmission_ucp(spec, k)
            assert res.transmission + res.reflection == pytest.approx(1.0, abs=1e-12)
            assert 0.0 < res.transmission <= 1.0
            assert 0.0 <= res.reflection <= 1.0

    def test_continuity_at_barrier_top(self):
        spec = UcpSpec(L=5, V=25, rho=2.5, alpha=0.5, beta=1, G=4)
        t_at = transmission_ucp(spec, 5.0).transmission
        t_lo = transmission_ucp(spec, 5.0 * (1 - 1e-6)).transmission
        t_hi = transmission_ucp(spec, 5.0 * (1 + 1e-6)).transmission
        assert abs(t_lo - t_at) <= 1e-6
        assert abs(t_hi - t_at) <= 1e-6

    def test_rejects_nonpositive_k(self):
        spec = UcpSpec(L=1, V=10, rho=3, alpha=1, beta=0, G=1)
        with pytest.raises(ValueError):
            transmission_ucp(spec, 0.0)

    def test_log_domain_agrees_with_direct_product(self):
        # boundary case where the direct product still fits in doubles
        spec = UcpSpec(L=10, V=25, rho=2.5, alpha=0.5, beta=2, G=10)
        k = 0.5
        cell = barrier_matrix(k, spec.V, segment_length(spec, spec.G))
        seq = bloch_sequence(spec, k)
        x = 4.0**spec.G * abs(cell.m12) ** 2
        for w in seq.omegas:
            x *= w * w
        direct_log10_t = -math.log10(1.0 + x)
        res = transmission_ucp(spec, k)
        assert res.log10_transmission == pytest.approx(direct_log10_t, abs=1e-8)


class TestTransmissionSpp:
    def test_order_zero_single_cell(self):
        unit = barrier_matrix(2.0, 10.0, 1.0)
        res = transmission_spp(unit, [], [], 2.0)
        assert res.transmission == pytest.approx(1.0 / (1.0 + abs(unit.m12) ** 2), rel=1e-13)

    @given(
        st.floats(0.1, 20),
        st.floats(-20, 40),
        st.floats(0.01, 3),
    )
    @settings(max_examples=200)
    def test_n1_is_no_repetition(self, k, V, width):
        unit = barrier_matrix(k, V, width)
        base = transmission_spp(unit, [], [], k)
        once = transmission_spp(unit, [1], [0.7], k)
        assert once.transmission == pytest.approx(base.transmission, rel=1e-12, abs=1e-300)

    def test_doubling_reproduces_closed_form(self):
        spec = UcpSpec(L=10, V=25, rho=3, alpha=1, beta=0, G=4)
        for k in (0.7, 2.1, 4.4, 9.0):
            unit = barrier_matrix(k, spec.V, segment_length(spec, spec.G))
            spp = transmission_spp(unit, [2] * spec.G, ucp_super_periods(spec), k)
            ucp = transmission_ucp(spec, k)
            assert spp.log10_transmission == pytest.approx(
                ucp.log10_transmission, rel=1e-10, abs=1e-12
            )

    def test_cantor_super_period_closed_form_drives_same_result(self):
        # standard-Cantor super-periods in closed form (s_f = 2L/3^{G+1-f}),
        # fed through the generic engine instead of ucp_super_periods
        spec = UcpSpec(L=1, V=25, rho=3, alpha=1, beta=0, G=3)
        k = 3.7
        unit = barrier_matrix(k, spec.V, segment_length(spec, spec.G))
        ss = [2.0 * spec.L / 3.0 ** (spec.G + 1 - f) for f in range(1, spec.G + 1)]
        spp = transmission_spp(unit, [2] * spec.G, ss, k)
        ucp = transmission_ucp(spec, k)
        assert spp.transmission == pytest.approx(ucp.transmission, rel=1e-10)

    def test_svc_super_period_closed_form_drives_same_result(self):
        spec = UcpSpec(L=1, V=25, rho=4, alpha=0, beta=1, G=3)
        k = 2.9
        unit = barrier_matrix(k, spec.V, segment_length(spec, spec.G))
        G = spec.G

        def lg(g):
            return spec.L / 2.0**g * math.prod(1 - 4.0**-j for j in range(1, g + 1))

        # s_f = l_{G+1-f} + l_{G-f} * 4^{-(G+1-f)}
        ss = [lg(G + 1 - f) + lg(G - f) * 4.0 ** -(G + 1 - f) for f in range(1, G + 1)]
        spp = transmission_spp(unit, [2] * G, ss, k)
        ucp = transmission_ucp(spec, k)
        assert spp.transmission == pytest.approx(ucp.transmission, rel=1e-10)

    def test_dimension_mismatch(self):
        unit = barrier_matrix(1.0, 5.0, 1.0)
        with pytest.raises(ValueError):
            transmission_spp(unit, [2, 2], [1.0], 1.0)
        with pytest.raises(ValueError):
            transmission_spp(unit, [0], [1.0], 1.0)

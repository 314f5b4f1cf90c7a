import math

import pyccgf


def single_bath():
    p = pyccgf.AimParams()
    p.n_bath = 1
    p.u_c = 8.0
    p.eps = [4.0, 0.0]
    p.v = [1.0]
    return p


def test_reference_filling():
    ref = pyccgf.reference_state(single_bath())
    assert ref.bitstring() == "0110"
    assert ref.occupation == 6


def test_ground_state_energy():
    amps = pyccgf.solve(single_bath())
    assert abs(amps.e_cc - 4.0) < 1e-9
    assert amps.t_residual < 1e-9
    assert amps.e_cc == amps.e_ref + amps.e_corr


def test_site_series_matches_diagonalization():
    p = single_bath()
    amps = pyccgf.solve(p)
    grid = [0.0, 0.3, 0.9, 1.5]
    hybrid = pyccgf.site_greens(p, amps, grid)
    exact = pyccgf.site_exact(p, grid)
    assert abs(hybrid.total[0] - 1.0) < 1e-10
    dev = max(abs(a - b) for a, b in zip(hybrid.total, exact.total))
    assert dev < 1e-6


def test_expansion_terms():
    amps = pyccgf.solve(single_bath())
    ket, bra = pyccgf.lesser_terms(2, 2, amps)
    assert ket and bra
    for coeff, tier, modes, label in ket:
        assert tier == len(modes) // 2
        # labels look like "+ZZXI" or "-iZZYI": a phase head then one
        # letter per qubit
        body = label.lstrip("+-i")
        assert len(body) == 4
        assert set(body) <= set("XYZI")


def test_spectral_weight():
    p = single_bath()
    amps = pyccgf.solve(p)
    grid = [0.03 * i for i in range(1667)]
    s = pyccgf.spectral(pyccgf.site_greens(p, amps, grid), 0.1)
    assert len(s.omega) == len(s.a)
    assert abs(pyccgf.spectral_weight(s) - 1.0) < 0.03


def test_cost_model():
    p = single_bath()
    assert pyccgf.upsilon(p) == 10.0 / 3.0
    r = pyccgf.tgate_estimate("taylor", p, t=1.0)
    assert r.queries is not None
    assert r.alpha_norm == 12.0
    assert math.isfinite(r.gates)

import math

import numpy as np
import pytest

import qmdc


def test_gellmann_d2_is_pauli():
    mats = qmdc.gellmann_matrices(2)
    assert len(mats) == 3
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    y = np.array([[0, -1j], [1j, 0]], dtype=complex)
    z = np.array([[1, 0], [0, -1]], dtype=complex)
    for got, want in zip(mats, [x, y, z]):
        assert np.allclose(got, want, atol=1e-14)


def test_bloch_roundtrip():
    rho = np.diag([0.5, 0.3, 0.2]).astype(complex)
    coords = qmdc.bloch_encode(rho, "insphere")
    back = qmdc.bloch_decode(coords, 3, "insphere")
    assert np.allclose(back, rho, atol=1e-12)
    assert qmdc.purity(rho, 3) == pytest.approx(0.38, abs=1e-12)


def test_exact_values():
    g = qmdc.complete_graph(3, 3)
    value, vec = qmdc.exact_value(g)
    assert value == pytest.approx(1.0, abs=1e-8)
    assert len(vec) == 27
    psi = qmdc.antisymmetric_state(3)
    assert np.linalg.norm(psi) == pytest.approx(1.0, abs=1e-12)

    edge = qmdc.Instance(5, 2, [(0, 1, 1.0)])
    assert qmdc.exact_value(edge)[0] == pytest.approx(1.0, abs=1e-8)


def test_instance_text_roundtrip():
    g = qmdc.gnp_graph(2, 6, 0.5, 7)
    text = g.to_text()
    back = qmdc.Instance.from_text(text)
    assert back.n == 6
    assert len(back.edges) == len(g.edges)


def test_ratios_table():
    row = qmdc.ratio_row(3)
    assert row["alpha"] == pytest.approx(0.372996, abs=1e-5)
    assert row["gamma_star"] == pytest.approx(-0.5, abs=1e-12)
    assert row["beta"] == pytest.approx(2 * row["alpha"], abs=1e-8)
    assert qmdc.alpha(2)["alpha"] == pytest.approx(0.498767, abs=1e-5)
    assert qmdc.beta(2) == pytest.approx(0.956337, abs=1e-5)
    assert qmdc.fstar(1, 0.5) == pytest.approx(2 / math.pi * math.asin(0.5), abs=1e-12)


def test_sdp_and_rounding_pipeline():
    g = qmdc.complete_graph(3, 2)
    ncsos = qmdc.solve_sdp(g, mode="ncsos2")
    assert ncsos.objective == pytest.approx(5 / 3, abs=1e-4)

    sol = qmdc.solve_sdp(g, mode="basic", tol=1e-7)
    assert sol.objective == pytest.approx(1.0, abs=1e-4)
    report = qmdc.verify_solution(g, sol, tol=1e-4)
    assert report["ok"], report["violations"]

    vectors = sol.rounding_vectors()
    assert len(vectors) == 2
    est = qmdc.estimate_energy(g, vectors, samples=2000, seed=3)
    closed = qmdc.rounded_energy_closed_form(g, vectors)
    assert abs(est["mean"] - closed) <= 4 * est["stderr"]

    again = qmdc.estimate_energy(g, vectors, samples=2000, seed=3)
    assert again["mean"] == est["mean"]


def test_rounded_states_are_insphere():
    vecs = [np.array([1.0, 0.0]), np.array([-0.5, math.sqrt(0.75)])]
    states = qmdc.rounded_states(3, vecs, seed=11)
    for rho in states:
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
        assert qmdc.purity(rho, 3) == pytest.approx(0.5, abs=1e-10)

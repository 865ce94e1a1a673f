"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import snmono


def test_space_forms():
    sp = snmono.product_space(1)
    assert sp.dim == 2
    assert snmono.validate_sn(sp)["ok"]
    b = np.array([1.0, 2.0])
    assert snmono.q_form(sp, b) == pytest.approx(2.0)
    assert snmono.r_form(sp, b) == pytest.approx(0.5 * 5.0 + 2.0)


def test_s_function_duality_product():
    sp = snmono.product_space(2)
    bs = np.array([1.0, -0.5, 0.25, 2.0])
    out = snmono.s_function(sp, bs)
    assert out["verdict"] == "finite"
    assert out["value"] == pytest.approx(1.0 * 0.25 + (-0.5) * 2.0, abs=1e-8)


def test_validation_catches_expansive_maps():
    sp = snmono.SnSpace(2, "euclidean", 2.0 * np.eye(2))
    out = snmono.validate_sn(sp)
    assert not out["ok"]
    assert out["violation"] == "nonexpansive"


def test_convex_fn_prox_and_conjugate():
    f = snmono.abs_fn(1.0)
    assert f(np.array([-2.0])) == pytest.approx(2.0)
    assert f.conjugate(np.array([0.5])) == pytest.approx(0.0)
    assert math.isinf(f.conjugate(np.array([1.5])))
    assert f.prox(np.array([3.0]))[0] == pytest.approx(2.0)


def test_identity_graph_quasidensity_and_phi():
    A = snmono.operator_graph_set(np.eye(1))
    gap = snmono.density_gap(A, np.array([1.0, -1.0]))
    assert gap["gap"] == pytest.approx(0.0, abs=1e-12)
    assert gap["minimizer"] == pytest.approx([0.0, 0.0], abs=1e-10)
    assert snmono.phi(A, np.array([1.0, 2.0])) == pytest.approx(2.25)

    probes = [np.array([x, y]) for x in (-1.0, 0.0, 1.0) for y in (-1.0, 0.0, 1.0)]
    cert = snmono.certify_quasidense(A, probes)
    assert cert["verdict"] == "quasidense-on-grid"


def test_tail_sequence_ops():
    x = np.zeros(8)
    x[0] = 1.0
    t = snmono.tail_apply(x)
    assert t[0] == 1.0 and t[1] == 0.0
    h = snmono.head_apply(x)
    assert h.tolist() == [1.0] * 8


def test_alignment_tau_identity():
    S = snmono.identity_map(1)
    out = snmono.alignment_tau(S, np.array([1.0]), np.array([-1.0]))
    assert out["tau"] == pytest.approx(1.0, abs=1e-8)
    assert out["spread"] <= 1e-10


def test_linear_relation_routes_agree():
    rel = snmono.graph_relation(np.eye(2))
    bb = snmono.brezis_browder_check(rel)
    assert bb["consistent"]
    assert bb["quasidense"]
    polar = snmono.polar(rel)
    assert polar.basis.shape == (4, 2)


def test_resolvent_oracle_matches_gap():
    S = snmono.subdiff_map(snmono.half_sq_fn(1))
    out = snmono.resolvent_gap(S, np.array([2.0]), np.array([0.0]))
    assert out["gap"] == pytest.approx(0.0, abs=1e-12)
    assert out["s"][0] == pytest.approx(1.0)

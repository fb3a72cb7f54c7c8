"""Acceptance suite: one test per criterion, each at its stated tolerance.

Run with ``pytest -v tests/test_acceptance.py`` for one pass/fail line per
criterion (the prints appear with ``-s``).
"""

import json
import subprocess
import sys
import time
import warnings

import numpy as np

from triple_lab import (
    Element,
    Q_operator,
    build_factor,
    canonical_tripotents,
    check_IAP_finite,
    check_complex_linearity,
    check_jordan_identity,
    check_peirce_arithmetic,
    cube_root,
    derivation_space,
    direct_sum,
    exp_flow_check,
    is_derivation,
    local_derivation_residual,
    peirce,
    rank_one_local_witness,
)
from triple_lab.derivations import default_point_set
from triple_lab.factors import coords_to_representation, representation_to_coords
from triple_lab.repro import counterexample_map, load_suite
from triple_lab.structure import offblock_leakage

SEED = 0xA11CE
SUITE = load_suite()["factors"]


def _built(label):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return build_factor(label)


def _seeded_members(space, count, seed):
    rng = np.random.default_rng(seed)
    members = []
    for _ in range(count):
        weights = rng.standard_normal(space.dim)
        weights /= max(np.linalg.norm(weights), 1e-300)
        members.append(space.member(weights))
    return members


def _announce(number, text):
    print(f"[criterion {number}] PASS - {text}")


def test_criterion_1_counterexample_exact():
    started = time.perf_counter()
    system = build_factor("I_C(2,1)")
    t = counterexample_map(system)

    e = np.eye(4)
    product = system.product_arrays(e[0], e[1], e[0])
    applied = t.entries @ product
    assert np.linalg.norm(applied) <= 1e-12  # T{(1,0),(i,0),(1,0)} = (0,0)
    leibniz = (
        2.0 * system.product_arrays(t.entries @ e[0], e[1], e[0])
        + system.product_arrays(e[0], t.entries @ e[1], e[0])
    )
    assert np.linalg.norm(leibniz - np.array([0.0, 0.0, 0.0, 1.0])) <= 1e-12  # (0, i)

    assert is_derivation(t, "symmetrized", tol=1e-10).status == "pass"

    space = derivation_space(system, "triple")
    points = default_point_set(system, samples=256, seed=SEED)
    local = local_derivation_residual(t, points, space=space)
    assert local.status == "pass"
    assert local.residuals["max_residual"] <= 1e-8

    triple = is_derivation(t, "triple", tol=1e-10)
    assert triple.status == "fail"
    assert triple.residuals["max_residual"] >= 0.9
    assert triple.witnesses["basis_triple"] == [0, 1, 0]

    elapsed = time.perf_counter() - started
    assert elapsed < 1.0
    _announce(1, f"counterexample reproduced exactly in {elapsed:.2f}s")


def test_criterion_2_skew_characterization():
    started = time.perf_counter()
    for n in (2, 3, 4, 5):
        for template in ("I_R({n},1)", "SPIN_R({n},0)"):
            system = _built(template.format(n=n))
            space = derivation_space(system, "triple")
            assert space.dim == n * (n - 1) // 2
            worst = max(
                (float(np.linalg.norm(b.entries + b.entries.T)) for b in space.basis),
                default=0.0,
            )
            assert worst <= 1e-9
    elapsed = time.perf_counter() - started
    assert elapsed < 5.0
    _announce(2, f"skew characterization for n in 2..5 in {elapsed:.2f}s")


def test_criterion_3_complex_linearity():
    for label in ("I_C(2,1)", "I_C(2,2)", "SPIN_C(3)"):
        system = build_factor(label)
        report = check_complex_linearity(derivation_space(system, "triple"))
        assert report.status == "pass"
        assert report.residuals["max_commutator"] <= 1e-8
    sym = derivation_space(build_factor("I_C(2,1)"), "symmetrized")
    report = check_complex_linearity(sym)
    assert report.residuals["max_commutator"] >= 0.5
    _announce(3, "triple derivations commute with J, symmetrized space does not")


def test_criterion_4_tripotent_identities():
    for label in SUITE:
        system = _built(label)
        sym = derivation_space(system, "symmetrized")
        der = derivation_space(system, "triple")
        points = default_point_set(system, samples=64, seed=SEED)
        tripotents = canonical_tripotents(system)
        peirce_data = [(e, peirce(e), Q_operator(e).entries) for e in tripotents]
        for member in _seeded_members(sym, 64, SEED):
            local = local_derivation_residual(member, points, space=der)
            assert local.status == "pass", label
            for e, ps, q in peirce_data:
                te = member.entries @ e.coords
                assert np.linalg.norm(ps.p0.entries @ te) <= 1e-8
                assert np.linalg.norm(ps.p2.entries @ te + q @ te) <= 1e-8
    _announce(4, "P0(e)T(e) = 0 and P2(e)T(e) = -Q(e)T(e) on all suite tripotents")


def test_criterion_5_rank_one_witness_formula():
    rng = np.random.default_rng(SEED)
    for label in ("SPIN_R(4,0)", "I_R(4,1)", "I_C(2,1)"):
        system = build_factor(label)
        sym = derivation_space(system, "symmetrized")
        for _ in range(64):
            member = sym.member(rng.standard_normal(sym.dim))
            coords = rng.standard_normal(system.dim)
            x = Element(system, coords)
            delta = rank_one_local_witness(member, x)
            err = float(np.linalg.norm(delta.entries @ coords - member.entries @ coords))
            assert err <= 1e-8 * x.norm()
    _announce(5, "inner-derivation witness reproduces T(x) on 64 seeded pairs per factor")


def test_criterion_6_theorem_surrogate():
    config = load_suite()
    for labels in config["sums_equal"]:
        system = direct_sum([_built(lab) for lab in labels])
        sym = derivation_space(system, "symmetrized")
        der = derivation_space(system, "triple")
        assert sym.dim == der.dim, labels
        leak = max((offblock_leakage(b) for b in sym.basis), default=0.0)
        assert leak <= 1e-8
    for labels in config["sums_gap"]:
        system = direct_sum([_built(lab) for lab in labels])
        sym = derivation_space(system, "symmetrized")
        der = derivation_space(system, "triple")
        assert sym.dim - der.dim >= 1, labels
        leak = max((offblock_leakage(b) for b in sym.basis), default=0.0)
        assert leak <= 1e-8
    _announce(6, "dimension equality without forbidden summands, strict gap with them")


def test_criterion_7_flows():
    grid = [1.0, -1.0, 0.5, -0.5]
    for label in SUITE:
        system = _built(label)
        space = derivation_space(system, "triple")
        for member in _seeded_members(space, 16, SEED):
            report = exp_flow_check(member, "triple", grid, tol=1e-7)
            assert report.status == "pass", label
    t = counterexample_map(build_factor("I_C(2,1)"))
    broken = exp_flow_check(t, "triple", [1.0], tol=1e-7)
    assert broken.status == "fail"
    assert broken.residuals["t=1"] >= 0.1
    _announce(7, "derivation flows are automorphisms; the counterexample flow is not")


def test_criterion_8_structure_suite():
    rng = np.random.default_rng(SEED)
    for label in SUITE:
        system = _built(label)
        jordan = check_jordan_identity(system, tol=1e-10)
        assert jordan.status == "pass", label
        for e in canonical_tripotents(system):
            arithmetic = check_peirce_arithmetic(e, tol=1e-9)
            assert arithmetic.status == "pass", label

        coords = rng.standard_normal(system.dim)
        root = cube_root(Element(system, coords), tol=1e-8)
        cube = system.product_arrays(root.coords, root.coords, root.coords)
        assert np.linalg.norm(cube - coords) <= 1e-8 * np.linalg.norm(coords)
        if label.startswith(("I_", "II_", "III_")):
            # SVD-oracle agreement through the matrix representation
            from triple_lab.factors import (
                complex_matrix_to_quaternion,
                quaternion_matrix_to_complex,
            )

            field, rep = coords_to_representation(label, coords)
            if field == "H":
                rep = quaternion_matrix_to_complex(rep)
            u, s, vt = np.linalg.svd(rep, full_matrices=False)
            oracle = (u * np.cbrt(s)) @ vt
            if field == "H":
                oracle = complex_matrix_to_quaternion(oracle)
            expected = representation_to_coords(label, oracle)
            assert np.max(np.abs(root.coords - expected)) <= 1e-8

        iap = check_IAP_finite(system)
        assert iap.status == "pass", label
        assert iap.residuals["triple_dim"] == iap.residuals["inner_dim"]
    _announce(8, "Jordan, Peirce, cube roots with SVD oracle, and IAP equality")


def test_criterion_9_determinism_and_budget(tmp_path):
    started = time.perf_counter()
    first = subprocess.run(
        [sys.executable, "-m", "triple_lab", "repro", "all",
         "--seed", hex(SEED), "--out", "r1.json"],
        cwd=tmp_path, stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True,
    )
    single_run = time.perf_counter() - started
    assert first.returncode == 0, first.stderr
    assert single_run < 120.0
    second = subprocess.run(
        [sys.executable, "-m", "triple_lab", "repro", "all",
         "--seed", hex(SEED), "--out", "r2.json"],
        cwd=tmp_path, stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True,
    )
    assert second.returncode == 0, second.stderr
    bytes1 = (tmp_path / "r1.json").read_bytes()
    bytes2 = (tmp_path / "r2.json").read_bytes()
    assert bytes1 == bytes2
    payload = json.loads(bytes1)
    assert payload["status"] == "pass"
    _announce(9, f"byte-identical reports, full suite in {single_run:.1f}s (< 120s)")

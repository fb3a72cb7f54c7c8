import json

import numpy as np
import pytest

from triple_lab import (
    L_operator,
    Q_operator,
    TripleSystem,
    build_factor,
    check_jordan_identity,
    check_norm_axiom,
    element_norm,
    symmetrized_product,
    triple_product,
)
from triple_lab.errors import InvalidInput, SystemMismatch, Unsupported
from triple_lab.triple_core import (
    check_complex_structure,
    check_hermitian_surrogate,
    linear_map_from_json,
    linear_map_to_json,
    system_from_json,
    system_to_json,
)

SUITE = [
    "I_R(2,2)", "I_R(3,1)", "I_C(2,1)", "I_H(2,1)", "II_R(4)",
    "III_R(3)", "SPIN_R(3,0)", "SPIN_R(3,1)", "SPIN_C(3)",
]


def complex_pair(coords):
    coords = np.asarray(coords)
    return coords[0::2] + 1j * coords[1::2]


def to_coords(z):
    out = np.empty(2 * len(z))
    out[0::2] = np.real(z)
    out[1::2] = np.imag(z)
    return out


def test_matrix_unit_is_tripotent():
    system = build_factor("I_R(2,2)")
    e = system.basis_element(0)
    cube = triple_product(e, e, e)
    assert np.allclose(cube.coords, e.coords, atol=1e-14)


def test_realified_c2_product_matches_complex_arithmetic():
    system = build_factor("I_C(2,1)")
    x = system.element([1.0, 0.0, 0.0, 0.0])   # (1, 0)
    y = system.element([0.0, 1.0, 0.0, 0.0])   # (i, 0)
    out = triple_product(x, y, x)
    # oracle: (<x|y> z + <z|y> x) / 2 in plain complex arithmetic
    xc, yc = complex_pair(x.coords), complex_pair(y.coords)
    inner = np.vdot(yc, xc)
    expected = to_coords(0.5 * (inner * xc + inner * xc))
    assert np.allclose(out.coords, expected, atol=1e-14)
    assert np.allclose(out.coords, [0.0, -1.0, 0.0, 0.0], atol=1e-14)  # (-i, 0)


def test_spin_unit_vector_is_tripotent():
    system = build_factor("SPIN_R(4,0)")
    rng = np.random.default_rng(0)
    u = rng.standard_normal(4)
    u /= np.linalg.norm(u)
    cube = system.product_arrays(u, u, u)
    assert np.allclose(cube, u, atol=1e-12)


def test_symmetrized_product_properties():
    system = build_factor("I_C(2,1)")
    rng = np.random.default_rng(1)
    a, b, c = (system.element(rng.standard_normal(4)) for _ in range(3))
    sym = symmetrized_product(a, b, c)
    # full symmetry under every permutation
    for perm in [(a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)]:
        assert np.allclose(symmetrized_product(*perm).coords, sym.coords, atol=1e-12)
    # equal arguments give the cube
    cube = triple_product(a, a, a)
    assert np.allclose(symmetrized_product(a, a, a).coords, cube.coords, atol=1e-13)
    # complex-arithmetic oracle for the average of the three cyclic products
    ac, bc, cc = (complex_pair(v.coords) for v in (a, b, c))

    def prod(x, y, z):
        return 0.5 * (np.vdot(y, x) * z + np.vdot(y, z) * x)

    expected = (prod(ac, bc, cc) + prod(cc, ac, bc) + prod(bc, cc, ac)) / 3.0
    assert np.allclose(sym.coords, to_coords(expected), atol=1e-13)


def test_L_operator_spectrum_on_tripotent():
    system = build_factor("I_R(2,2)")
    e = system.basis_element(0)
    eigs = np.linalg.eigvals(L_operator(e, e).entries)
    for value in eigs:
        assert min(abs(value - t) for t in (0.0, 0.5, 1.0)) < 1e-12


def test_L_operator_of_orthogonal_pair_vanishes():
    system = build_factor("I_R(2,2)")
    e11 = system.basis_element(0)
    e22 = system.basis_element(3)
    assert np.max(np.abs(L_operator(e11, e22).entries)) < 1e-14
    zero = system.zero()
    assert np.max(np.abs(L_operator(zero, e11).entries)) == 0.0


def test_Q_operator_basics():
    system = build_factor("I_R(2,2)")
    e = system.basis_element(0)
    assert np.allclose(Q_operator(e)(e).coords, e.coords, atol=1e-14)
    assert np.max(np.abs(Q_operator(system.zero()).entries)) == 0.0


def test_Q_squared_is_peirce2_projection_on_unitary_tripotent():
    # diag(1,1,1) in the symmetric 3x3 factor acts as a unitary tripotent
    system = build_factor("III_R(3)")
    from triple_lab.factors import representation_to_coords

    coords = representation_to_coords("III_R(3)", np.eye(3))
    e = system.element(coords)
    q = Q_operator(e).entries
    from triple_lab.structure import peirce

    p2 = peirce(e).p2.entries
    assert np.max(np.abs(q @ q - p2)) < 1e-12


def test_system_mismatch_raises():
    a = build_factor("I_R(2,2)")
    b = build_factor("SPIN_R(3,1)")
    with pytest.raises(SystemMismatch):
        triple_product(a.basis_element(0), a.basis_element(1), b.basis_element(0))


def test_outer_symmetry_is_bit_exact():
    for label in SUITE:
        tensor = build_factor(label).tensor
        assert np.array_equal(tensor, tensor.transpose(2, 1, 0, 3))


@pytest.mark.parametrize("label", SUITE)
def test_jordan_identity_on_suite(label):
    report = check_jordan_identity(build_factor(label), tol=1e-10)
    assert report.status == "pass"
    assert report.residuals["max_residual"] <= 1e-10


def test_jordan_identity_detects_corruption():
    system = build_factor("I_R(2,2)")
    tensor = np.array(system.tensor)
    tensor[0, 0, 0, 0] += 0.1
    broken = TripleSystem("broken", tensor, norm_kind="operator", factor_kind="I_R(2,2)")
    report = check_jordan_identity(broken, tol=1e-10)
    assert report.status == "fail"
    assert report.residuals["max_residual"] > 0.01
    assert report.witnesses  # a witness 5-tuple is recorded


def test_jordan_identity_vacuous_on_empty_system():
    empty = TripleSystem("empty", np.zeros((0, 0, 0, 0)))
    report = check_jordan_identity(empty)
    assert report.status == "pass"


def test_jordan_randomized_path_used_above_dim_8():
    system = build_factor("I_C(2,1)")
    big = build_factor("I_H(2,1)")
    from triple_lab.factors import complexify, as_real_form

    doubled = complexify(as_real_form(system))  # dim 8, still exhaustive
    assert check_jordan_identity(doubled).seed is None
    bigger = complexify(big)  # dim 16, randomized
    report = check_jordan_identity(bigger, samples=1000, seed=5)
    assert report.status == "pass"
    assert report.seed == 5


def test_norm_axiom_examples():
    system = build_factor("I_R(2,2)")
    e = system.basis_element(0)
    cube = system.product_arrays(e.coords, e.coords, e.coords)
    assert abs(element_norm(system, cube) - 1.0) < 1e-14
    # cubic homogeneity
    t = 1.7
    assert abs(element_norm(system, t * e.coords) - t) < 1e-12
    cube_scaled = system.product_arrays(t * e.coords, t * e.coords, t * e.coords)
    assert abs(element_norm(system, cube_scaled) - t**3) < 1e-10


@pytest.mark.parametrize("label", SUITE)
def test_norm_axiom_on_suite(label):
    report = check_norm_axiom(build_factor(label), samples=48, seed=3)
    assert report.status == "pass"
    assert report.residuals["max_relative_residual"] <= 1e-8


def test_spin_norm_matches_formula_oracle():
    # the l1 interpretation must agree with the generic spin-norm formula
    system = build_factor("SPIN_R(3,1)")
    rng = np.random.default_rng(7)
    for _ in range(50):
        x = rng.standard_normal(4)
        quad = float(x @ x)
        conj = x.copy()
        conj[3:] *= -1.0
        bilin = abs(float(x @ conj))
        oracle = np.sqrt(quad + np.sqrt(max(quad**2 - bilin**2, 0.0)))
        assert abs(element_norm(system, x) - oracle) < 1e-10


def test_norm_unsupported_for_unrecognized_kind():
    system = TripleSystem("custom", np.zeros((1, 1, 1, 1)), norm_kind="product")
    with pytest.raises(Unsupported):
        check_norm_axiom(system, samples=4)


def test_complex_structure_compatibility():
    for label in ("I_C(2,1)", "I_C(2,2)", "SPIN_C(3)"):
        report = check_complex_structure(build_factor(label))
        assert report.status == "pass"
        assert max(report.residuals.values()) < 1e-12
    with pytest.raises(Unsupported):
        check_complex_structure(build_factor("I_R(2,2)"))


def test_hermitian_surrogate_is_advisory_and_clean():
    for label in SUITE:
        report = check_hermitian_surrogate(build_factor(label))
        assert report.status == "advisory"
        assert report.residuals["max_asymmetry"] < 1e-12
        assert report.residuals["min_eigenvalue"] > -1e-12


def test_system_json_schema_and_roundtrip(tmp_path):
    system = build_factor("I_C(2,1)")
    payload = system_to_json(system)
    assert sorted(payload.keys()) == [
        "complex_structure", "dim", "factor_kind", "name", "norm_kind", "rank_hint", "tensor",
    ]
    assert len(payload["tensor"]) == system.dim**4
    assert len(payload["complex_structure"]) == system.dim**2
    loaded = system_from_json(json.loads(json.dumps(payload)))
    assert loaded == system
    assert loaded.rank_hint == system.rank_hint
    assert loaded.norm_kind == system.norm_kind


def test_system_json_validates_symmetry():
    system = build_factor("I_R(2,2)")
    payload = system_to_json(system)
    tensor = np.asarray(payload["tensor"]).reshape((4,) * 4)
    tensor[0, 0, 1, 0] += 0.5  # break {x,y,z} = {z,y,x}
    payload["tensor"] = [float(v) for v in tensor.reshape(-1)]
    with pytest.raises(InvalidInput):
        system_from_json(payload)


def test_linear_map_json_roundtrip():
    system = build_factor("I_R(2,2)")
    t = system.linear_map(np.arange(16.0).reshape(4, 4))
    payload = linear_map_to_json(t)
    assert sorted(payload.keys()) == ["dim", "entries"]
    back = linear_map_from_json(payload, system)
    assert np.array_equal(back.entries, t.entries)


def test_element_validation():
    system = build_factor("I_R(2,2)")
    with pytest.raises(InvalidInput):
        system.element([1.0, 2.0])
    with pytest.raises(InvalidInput):
        system.element([np.inf, 0.0, 0.0, 0.0])
    e = system.element([1.0, 0.0, 0.0, 1.0])
    assert abs((2.0 * e - e).norm() - e.norm()) < 1e-14


def test_dimension_cap():
    with pytest.raises(InvalidInput):
        TripleSystem("too-big", np.zeros((65,) * 4))

"""Skeletal category layer: ring axioms, coherence validation, modular data,
and the JSON interchange format."""

import json

import numpy as np
import pytest

from mtc import get_category, modular_datum, validate_category, verlinde_fusion
from mtc.builtins import BUILTIN_NAMES
from mtc.category import (CategorySpec, FusionRing, ToleranceConfig,
                          dump_category, load_category, modular_group_relations,
                          spec_from_dict, spec_to_dict)
from mtc.errors import (CategoryFileError, NotModular, RingAxiomError,
                        SnapFailure)

from conftest import MODULAR

PHI = (1 + np.sqrt(5)) / 2


# ---------------------------------------------------------------------------
# fusion rings


def test_ring_axioms_all_builtins(spec_of):
    """Every builtin fusion ring satisfies unit, duality, associativity."""
    for name in BUILTIN_NAMES:
        spec_of(name).ring.check_axioms()


def test_word_dims_matches_tree_enumeration(spec_of):
    """Iterated fusion dimension vectors have the right unit behaviour."""
    spec = spec_of("ising")
    ring = spec.ring
    assert ring.word_dims(()).tolist() == [1, 0, 0]
    assert ring.word_dims((1,)).tolist() == [0, 1, 0]
    # sigma x sigma = 1 + psi
    assert ring.word_dims((1, 1)).tolist() == [1, 0, 1]
    # sigma x sigma x sigma = 2 sigma
    assert ring.word_dims((1, 1, 1)).tolist() == [0, 2, 0]


def test_broken_unit_rejected():
    """A fusion tensor whose unit row is not the identity is refused."""
    N = np.zeros((2, 2, 2), dtype=np.int64)
    N[0, 0, 0] = 1
    N[0, 1, 1] = 1
    N[1, 0, 0] = 1  # wrong: 1 x 0 should be 1
    N[1, 1, 0] = 1
    with pytest.raises(RingAxiomError):
        FusionRing(N, [0, 1]).check_axioms()


def test_bad_dual_rejected():
    """The dual map must be an involutive permutation fixing the unit."""
    N = np.zeros((2, 2, 2), dtype=np.int64)
    eye = np.eye(2, dtype=np.int64)
    N[0] = eye
    N[:, 0, :] = eye
    N[1, 1, 0] = 1
    with pytest.raises(RingAxiomError):
        FusionRing(N, [1, 0]).check_axioms()


# ---------------------------------------------------------------------------
# coherence validation


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_builtin_coherence(spec_of, name):
    """Pentagon, both hexagons, ribbon compatibility pass below 1e-9."""
    rep = validate_category(spec_of(name))
    assert rep.passed, rep.summary()
    assert rep.max_deviation < 1e-9


def test_perturbed_braiding_fails_hexagon_only(spec_of):
    """Multiplying one R-symbol by a small phase breaks the hexagon at the
    size of the perturbation while the pentagon stays exact."""
    fib = spec_of("fibonacci")
    R = dict(fib.R)
    R[(1, 1, 1)] = R[(1, 1, 1)] * np.exp(1e-3j)
    bad = CategorySpec("fibonacci-detuned", fib.ring, fib.dims, fib.theta,
                       dict(fib.F), R)
    rep = validate_category(bad)
    by_name = {c.name: c for c in rep.checks}
    assert by_name["pentagon"].status == "pass"
    assert by_name["hexagon_braiding"].status == "fail"
    assert 1e-4 < by_name["hexagon_braiding"].max_deviation < 1e-2


def test_tolerance_config_ordering():
    """atol must sit strictly below the integer snap distance."""
    with pytest.raises(ValueError):
        ToleranceConfig(atol=1e-3, integer_snap=1e-6)


# ---------------------------------------------------------------------------
# modular data, exact values


def test_semion_modular_data(spec_of):
    md = modular_datum(spec_of("semion"))
    want = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    assert np.max(np.abs(md.S - want)) < 1e-12
    assert np.max(np.abs(np.diag(md.T) - [1, 1j])) < 1e-12
    assert md.is_modular


def test_fibonacci_modular_data(spec_of):
    md = modular_datum(spec_of("fibonacci"))
    want = np.array([[1, PHI], [PHI, -1]]) / np.sqrt(2 + PHI)
    assert np.max(np.abs(md.S - want)) < 1e-12
    assert abs(md.T[1, 1] - np.exp(4j * np.pi / 5)) < 1e-12
    assert abs(md.global_dim - (2 + PHI)) < 1e-12


def test_ising_modular_data(spec_of):
    md = modular_datum(spec_of("ising"))
    s2 = np.sqrt(2)
    want = np.array([[1, s2, 1], [s2, 0, -s2], [1, -s2, 1]]) / 2
    assert np.max(np.abs(md.S - want)) < 1e-12
    assert np.max(np.abs(np.diag(md.T)
                         - [1, np.exp(1j * np.pi / 8), -1])) < 1e-12


def test_symmetric_builtin_not_modular(spec_of):
    """rep_z2_symmetric has the rank-one projector S and must be flagged."""
    md = modular_datum(spec_of("rep_z2_symmetric"))
    assert not md.is_modular
    assert np.max(np.abs(md.S - 1 / np.sqrt(2))) < 1e-12
    with pytest.raises(NotModular):
        verlinde_fusion(md)


@pytest.mark.parametrize("name", MODULAR)
def test_verlinde_round_trip(spec_of, name):
    """Fusion multiplicities recovered from S equal the stored tensor."""
    spec = spec_of(name)
    N = verlinde_fusion(modular_datum(spec))
    assert np.array_equal(N, spec.ring.N)


def test_verlinde_snap_failure(spec_of):
    """A detuned S-matrix stays invertible but snaps to nothing integral."""
    md = modular_datum(spec_of("semion"))
    md.S = md.S + np.array([[1e-3, 0], [0, 0]])
    with pytest.raises(SnapFailure):
        verlinde_fusion(md)


@pytest.mark.parametrize("name,gamma_want", [
    ("trivial", 1.0),
    ("semion", np.exp(1j * np.pi / 4)),
    ("fibonacci", np.exp(7j * np.pi / 10)),
    ("ising", np.exp(1j * np.pi / 8)),
    ("z_3(1)", np.exp(1j * np.pi / 2)),
])
def test_modular_group_relations(spec_of, name, gamma_want):
    """Both defining relations hold and the anomaly phase is the known one."""
    gamma, rep = modular_group_relations(modular_datum(spec_of(name)))
    assert rep.passed, rep.summary()
    assert rep.max_deviation < 1e-9
    assert abs(abs(gamma) - 1) < 1e-9
    assert abs(gamma - gamma_want) < 1e-9


def test_cyclic_series():
    """z_n(k) is modular iff the pairing jl k is nondegenerate mod n."""
    assert modular_datum(get_category("z_5(2)")).is_modular
    assert not modular_datum(get_category("z_4(2)")).is_modular
    rep = validate_category(get_category("z_5(2)"))
    assert rep.passed and rep.max_deviation < 1e-9


# ---------------------------------------------------------------------------
# file format


def test_json_round_trip_byte_identical(spec_of, tmp_path):
    """dump -> load -> dump reproduces the serialized text exactly."""
    for name in ("semion", "ising"):
        spec = spec_of(name)
        text = dump_category(spec)
        path = tmp_path / f"{name}.json"
        path.write_text(text, encoding="utf-8")
        again = dump_category(load_category(path))
        assert again == text


def test_dims_derived_from_f_data(spec_of):
    """Omitting dims recovers them from the vacuum F-symbols."""
    data = spec_to_dict(spec_of("fibonacci"))
    del data["dims"]
    spec = spec_from_dict(data)
    assert np.max(np.abs(spec.dims - spec_of("fibonacci").dims)) < 1e-12


def test_file_errors_carry_locations(tmp_path):
    """Malformed files report what failed and where."""
    data = spec_to_dict(get_category("semion"))
    missing = {k: v for k, v in data.items() if k != "theta"}
    with pytest.raises(CategoryFileError, match="theta"):
        spec_from_dict(missing, origin="unit")

    bad_fusion = json.loads(json.dumps(data))
    bad_fusion["fusion"][0] = [0, 0, 9, 1]
    with pytest.raises(CategoryFileError, match=r"fusion\[0\]"):
        spec_from_dict(bad_fusion, origin="unit")

    bad_f = json.loads(json.dumps(data))
    bad_f["F"].append([1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1.0, 0.0])
    with pytest.raises(CategoryFileError, match="violates fusion"):
        spec_from_dict(bad_f, origin="unit")

    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(CategoryFileError, match="invalid JSON"):
        load_category(path)


def test_label_resolution(spec_of):
    """Labels resolve by index or by name, case-sensitively."""
    spec = spec_of("ising")
    assert spec.resolve_label("sigma") == 1
    assert spec.resolve_label("2") == 2
    assert spec.label_name(2) == "psi"
    with pytest.raises(KeyError):
        spec.resolve_label("nope")

import math

import numpy as np
import pytest

from lunmeb import (
    apply_local,
    build_all_classes,
    build_class,
    build_subspace_basis,
    check_class_family,
    combine,
    cross_class_orthogonality,
    extendability_check,
    fourier_unextendibility,
    general_class_vector,
    gram_matrix,
    make_schmidt_state,
    subspace_max_entangled,
    to_vector,
    weyl,
)
from lunmeb.bases import (
    certificate_from_json,
    class_matrix_closed_form,
    extension_system_matrix,
    flatten_classes,
)

from conftest import random_full_rank_state


@pytest.fixture
def qubit_state():
    return make_schmidt_state(2, [math.sqrt(0.3), math.sqrt(0.7)])


class TestBuildClass:
    def test_qubit_class_zero(self, qubit_state):
        c0, c1 = qubit_state.coeffs
        cls = build_class(qubit_state, 0)
        assert np.allclose(cls.vectors[0], [c0, 0, 0, c1], atol=1e-12)
        assert np.allclose(cls.vectors[1], [0, c1, c0, 0], atol=1e-12)

    def test_qubit_class_one(self, qubit_state):
        c0, c1 = qubit_state.coeffs
        cls = build_class(qubit_state, 1)
        assert np.allclose(cls.vectors[0], [c0, 0, 0, -c1], atol=1e-12)
        assert np.allclose(cls.vectors[1], [0, -c1, c0, 0], atol=1e-12)

    def test_gram_is_identity(self, rng):
        for d in range(2, 7):
            state = random_full_rank_state(rng, d)
            for n in range(d):
                gram = gram_matrix(build_class(state, n).vectors)
                assert np.abs(gram - np.eye(d)).max() <= 1e-10

    def test_label_out_of_range(self, qubit_state):
        with pytest.raises(ValueError):
            build_class(qubit_state, 2)


class TestBuildAllClasses:
    def test_counts(self, rng):
        for d in range(2, 7):
            classes = build_all_classes(random_full_rank_state(rng, d))
            assert len(classes) == d
            assert sum(len(cls.vectors) for cls in classes) == d * d

    def test_nine_vectors_at_three_levels(self, rng):
        labels, vectors = flatten_classes(build_all_classes(random_full_rank_state(rng, 3)))
        assert len(vectors) == 9
        assert labels == [(n, m) for n in range(3) for m in range(3)]


class TestCrossClassOrthogonality:
    def test_generic_pattern_is_shift_disagreement(self, qubit_state):
        table = cross_class_orthogonality(qubit_state)
        labels = [(n, m) for n in range(2) for m in range(2)]
        for i, (ni, mi) in enumerate(labels):
            for j, (nj, mj) in enumerate(labels):
                if i == j:
                    assert not table[i, j]
                else:
                    assert table[i, j] == (mi != mj)

    def test_same_shift_overlap_value(self, qubit_state):
        classes = build_all_classes(qubit_state)
        overlap = np.vdot(classes[0].vectors[0], classes[1].vectors[0])
        assert overlap == pytest.approx(0.3 - 0.7)

    def test_maximally_entangled_all_orthogonal(self):
        state = make_schmidt_state(2, [1 / math.sqrt(2)] * 2)
        table = cross_class_orthogonality(state)
        assert np.array_equal(table, ~np.eye(4, dtype=bool))

    def test_one_per_class_with_distinct_shifts(self, rng):
        for d in (3, 4, 5):
            state = random_full_rank_state(rng, d)
            classes = build_all_classes(state)
            picks = [classes[int(rng.integers(0, d))].vectors[m] for m in range(d)]
            gram = gram_matrix(picks)
            assert np.abs(gram - np.eye(d)).max() <= 1e-12


class TestExtendabilityCheck:
    def test_full_family_trivial_kernel(self, rng):
        for d in range(2, 5):
            state = random_full_rank_state(rng, d)
            _, vectors = flatten_classes(build_all_classes(state))
            cert = extendability_check(vectors, state)
            assert cert.nullspace_dim == 0
            assert cert.max_orthogonal_norm == 0.0
            assert cert.witness is None

    def test_single_class_admits_nonunitary_extensions(self, qubit_state):
        # one class does not span, so the system has kernel d^2 - d and the
        # produced vectors are genuinely orthogonal to the class
        cls = build_class(qubit_state, 0)
        cert = extendability_check(list(cls.vectors), qubit_state)
        assert cert.nullspace_dim == 2
        assert cert.max_orthogonal_norm > 0.1
        produced = apply_local(combine(cert.witness), to_vector(qubit_state), "A")
        for vec in cls.vectors:
            assert abs(np.vdot(vec, produced)) <= 1e-10

    def test_degenerate_seed_produces_only_zero(self):
        state = make_schmidt_state(2, [1.0, 0.0])
        cls = build_class(state, 0)
        cert = extendability_check(list(cls.vectors), state)
        assert cert.nullspace_dim == 2
        assert cert.max_orthogonal_norm <= 1e-12
        assert cert.witness is None

    def test_rank_deficient_three_level_witness(self):
        state = make_schmidt_state(3, [1 / math.sqrt(2), 1 / math.sqrt(2), 0.0])
        cls = build_class(state, 0)
        cert = extendability_check(list(cls.vectors), state)
        assert cert.nullspace_dim > 0
        assert cert.max_orthogonal_norm >= 1.0 - 1e-9

        produced = apply_local(combine(cert.witness), to_vector(state), "A")
        assert np.linalg.norm(produced) == pytest.approx(cert.max_orthogonal_norm, abs=1e-10)
        for vec in cls.vectors:
            assert abs(np.vdot(vec, produced)) <= 1e-10

    def test_hand_derived_witness_lies_in_kernel(self):
        # the unitary |2><0| - |0><1| + |1><2| sends the seed to
        # (|20> - |01>)/sqrt(2), orthogonal to the whole class
        state = make_schmidt_state(3, [1 / math.sqrt(2), 1 / math.sqrt(2), 0.0])
        cls = build_class(state, 0)
        hand = np.zeros((3, 3), dtype=complex)
        hand[2, 0] = 1.0
        hand[0, 1] = -1.0
        hand[1, 2] = 1.0
        produced = (np.kron(hand, np.eye(3)) @ to_vector(state)).reshape(-1)
        expected = np.zeros(9, dtype=complex)
        expected[6] = 1 / math.sqrt(2)   # |20>
        expected[1] = -1 / math.sqrt(2)  # |01>
        assert np.allclose(produced, expected, atol=1e-12)
        for vec in cls.vectors:
            assert abs(np.vdot(vec, produced)) <= 1e-12
        # its coefficient vector solves the extension system
        f = weyl_coefficients(hand)
        system = extension_system_matrix(list(cls.vectors), state)
        assert np.linalg.norm(system @ f.reshape(-1)) <= 1e-12

    def test_certificate_json_round_trip(self):
        state = make_schmidt_state(3, [1 / math.sqrt(2), 1 / math.sqrt(2), 0.0])
        cls = build_class(state, 0)
        cert = extendability_check(list(cls.vectors), state)
        again = certificate_from_json(cert.to_json())
        assert again.nullspace_dim == cert.nullspace_dim
        assert again.max_orthogonal_norm == pytest.approx(cert.max_orthogonal_norm)
        assert np.allclose(again.witness.f, cert.witness.f)

    def test_trivial_certificate_json_round_trip(self):
        state = make_schmidt_state(2, [0.6, 0.8])
        _, vectors = flatten_classes(build_all_classes(state))
        trivial = extendability_check(vectors, state)
        again = certificate_from_json(trivial.to_json())
        assert again.nullspace_dim == 0
        assert again.witness is None


def weyl_coefficients(matrix):
    """Expansion coefficients of a 3x3 matrix over the phase-shift family."""
    d = matrix.shape[0]
    out = np.zeros((d, d), dtype=complex)
    for p in range(d):
        for q in range(d):
            out[p, q] = np.sum(weyl(p, q, d).matrix.conj() * matrix) / d
    return out


class TestClosedFormSystem:
    def test_matches_numeric_inner_products(self, rng):
        for d in (2, 3, 4):
            state = random_full_rank_state(rng, d)
            labels, vectors = flatten_classes(build_all_classes(state))
            numeric = extension_system_matrix(vectors, state)
            closed = class_matrix_closed_form(state, labels)
            assert np.abs(numeric - closed).max() <= 1e-12

    def test_matches_for_single_class(self, rng):
        state = random_full_rank_state(rng, 3)
        cls = build_class(state, 1)
        labels = [(1, m) for m in range(3)]
        numeric = extension_system_matrix(list(cls.vectors), state)
        closed = class_matrix_closed_form(state, labels)
        assert np.abs(numeric - closed).max() <= 1e-12

    def test_subspace_variant(self):
        d = 4
        seed = subspace_max_entangled(d)
        basis = build_subspace_basis(d)
        labels = [(n, m) for n in range(d - 1) for m in range(d - 1)]
        numeric = extension_system_matrix(basis.vectors, seed, "subspace_weyl")
        closed = class_matrix_closed_form(seed, labels, "subspace_weyl")
        assert np.abs(numeric - closed).max() <= 1e-12


class TestFourierCriterion:
    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
    def test_kernel_and_determinant_agree(self, d):
        dim, magnitude = fourier_unextendibility(d)
        assert dim == 0
        assert magnitude == pytest.approx(d ** (d / 2), rel=1e-9)
        assert (dim == 0) == (magnitude > 0)


class TestSubspaceBasis:
    def test_counts(self):
        assert len(build_subspace_basis(3).vectors) == 4
        assert len(build_subspace_basis(4).vectors) == 9

    @pytest.mark.parametrize("d", [3, 4, 5, 6])
    def test_orthonormal(self, d):
        basis = build_subspace_basis(d)
        gram = gram_matrix(basis.vectors)
        assert np.abs(gram - np.eye((d - 1) ** 2)).max() <= 1e-10

    @pytest.mark.parametrize("d", [3, 4, 5])
    def test_unextendible_inside_subspace_span(self, d):
        basis = build_subspace_basis(d)
        seed = subspace_max_entangled(d)
        cert = extendability_check(basis.vectors, seed, "subspace_weyl")
        assert cert.max_orthogonal_norm <= 1e-9

    def test_full_span_certificate_is_reported(self):
        # whether the family extends under the full one-qudit span is left
        # open; the certificate must exist and be finite, nothing more
        basis = build_subspace_basis(3)
        seed = subspace_max_entangled(3)
        cert = extendability_check(basis.vectors, seed, "weyl")
        assert cert.nullspace_dim >= 0
        assert math.isfinite(cert.max_orthogonal_norm)

    def test_rejects_small_dimension(self):
        with pytest.raises(ValueError):
            build_subspace_basis(2)


class TestCheckClassFamily:
    def test_weyl_family_of_maximal_seed(self):
        d = 3
        amp = np.full(d, 1 / math.sqrt(d))
        members = [
            general_class_vector(n, m, amp * np.exp(2j * np.pi * n * np.arange(d) / d))
            for n in range(d)
            for m in range(d)
        ]
        assert check_class_family(members)

    def test_duplicate_members_fail(self):
        members = [
            general_class_vector(0, 0, [1.0, 0.0]),
            general_class_vector(1, 0, [1.0, 0.0]),
        ]
        assert not check_class_family(members)

    def test_weyl_family_of_generic_seed_fails(self):
        d = 3
        amp = np.sqrt([0.2, 0.3, 0.5])
        members = [
            general_class_vector(n, 0, amp * np.exp(2j * np.pi * n * np.arange(d) / d))
            for n in range(d)
        ]
        assert not check_class_family(members)

    def test_dimension_mismatch(self):
        members = [
            general_class_vector(0, 0, [1.0, 0.0]),
            general_class_vector(0, 0, [1.0, 0.0, 0.0]),
        ]
        with pytest.raises(ValueError):
            check_class_family(members)

"""Spec construction, the dense matrix, the commutator oracle, JSON codecs."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from toepnorm.scalar import GaussianRational, SpecFormatError, as_complex
from toepnorm.toeplitz import (
    ToeplitzSpec,
    commutator,
    commutator_norm,
    from_diagonals,
    materialize,
    spec_from_json,
    spec_to_json,
)

small_fractions = st.fractions(min_value=-8, max_value=8, max_denominator=4)


def exact_diags(n):
    count = 2 * n + 1
    return st.lists(
        st.builds(GaussianRational, small_fractions, small_fractions),
        min_size=count,
        max_size=count,
    )


class TestConstruction:
    def test_int_entries_become_fractions(self):
        spec = from_diagonals([2, 0, 1])
        assert spec.n == 1
        assert spec.diag == (Fraction(2), Fraction(0), Fraction(1))
        assert spec.is_exact and spec.is_real

    def test_any_float_forces_approx(self):
        spec = from_diagonals([2, 0.0, 1])
        assert spec.diag == (2 + 0j, 0j, 1 + 0j)
        assert not spec.is_exact

    def test_mixed_int_gaussian_promotes(self):
        spec = from_diagonals([GaussianRational(0, 1), 0, 2])
        assert all(isinstance(z, GaussianRational) for z in spec.diag)
        assert spec.is_exact and not spec.is_real

    def test_real_gaussians_demote_to_fractions(self):
        spec = from_diagonals([GaussianRational(2), GaussianRational(0), 1])
        assert spec.diag == (Fraction(2), Fraction(0), Fraction(1))
        assert spec.is_real

    @pytest.mark.parametrize("bad", [[], [1], [1, 2], [1, 2, 3, 4]])
    def test_bad_lengths(self, bad):
        with pytest.raises(SpecFormatError):
            from_diagonals(bad)

    @pytest.mark.parametrize("entry", [True, "1/2", None, [1]])
    def test_bad_entries(self, entry):
        with pytest.raises(SpecFormatError):
            from_diagonals([1, entry, 1])

    def test_direct_dataclass_validation(self):
        with pytest.raises(ValueError):
            ToeplitzSpec(0, (Fraction(0),))
        with pytest.raises(ValueError):
            ToeplitzSpec(2, (Fraction(0),) * 3)


class TestAccessors:
    def test_entry_and_views(self, type1_spec):
        s = type1_spec
        assert s.dim == 3
        assert s.a0 == 0
        assert s.entry(2) == 2
        assert s.entry(-2) == GaussianRational(0, 2)
        assert s.lower == (GaussianRational(1), GaussianRational(2))
        assert s.upper == (GaussianRational(0, 1), GaussianRational(0, 2))
        with pytest.raises(ValueError):
            s.entry(3)

    def test_max_abs_skips_a0(self):
        spec = from_diagonals([1, 100, 2])
        assert spec.max_abs() == 2.0

    def test_as_approx(self, fraction_spec):
        twin = fraction_spec.as_approx()
        assert not twin.is_exact
        assert twin.diag == (2 + 0j, 0j, 1 + 0j)

    def test_materialize_includes_stored_a0(self):
        m = materialize(from_diagonals([2, 5, 1]))
        assert m == [[Fraction(5), Fraction(2)], [Fraction(1), Fraction(5)]]


class TestCommutator:
    def test_known_commutator(self, fraction_spec):
        assert commutator(fraction_spec) == [
            [Fraction(3), Fraction(0)],
            [Fraction(0), Fraction(-3)],
        ]

    def test_known_norm_exact(self, fraction_spec):
        norm = commutator_norm(fraction_spec)
        assert norm.value == Fraction(18)
        assert norm.squared

    def test_known_norm_approx(self, fraction_spec_approx):
        norm = commutator_norm(fraction_spec_approx)
        assert not norm.squared
        assert norm.value == pytest.approx(18**0.5)

    def test_normal_spec_commutes(self, type1_spec):
        c = commutator(type1_spec)
        assert all(z == 0 for row in c for z in row)
        assert commutator_norm(type1_spec).value == 0

    def test_stored_a0_does_not_matter(self):
        base = commutator(from_diagonals([2, 0, 1]))
        shifted = commutator(from_diagonals([2, 7, 1]))
        assert base == shifted

    @given(exact_diags(2))
    @settings(max_examples=40, deadline=None)
    def test_exact_matches_dense_float(self, diag):
        spec = from_diagonals(diag)
        got = np.array(
            [[as_complex(z) for z in row] for row in commutator(spec)]
        )
        want = np.array(
            [[as_complex(z) for z in row] for row in commutator(spec.as_approx())]
        )
        assert np.allclose(got, want, atol=1e-9)

    @given(exact_diags(3), small_fractions, small_fractions)
    @settings(max_examples=25, deadline=None)
    def test_a0_invariance(self, diag, a, b):
        spec_a = from_diagonals(diag[:3] + [GaussianRational(a, b)] + diag[4:])
        spec_b = from_diagonals(diag[:3] + [GaussianRational(b, a)] + diag[4:])
        assert commutator(spec_a) == commutator(spec_b)


class TestJson:
    def test_exact_round_trip(self, type1_spec):
        doc = spec_to_json(type1_spec)
        assert doc["n"] == 2
        assert doc["diag"][0] == {"re": "0", "im": "2"}
        back = spec_from_json(doc)
        assert back.n == type1_spec.n and back.diag == type1_spec.diag

    def test_approx_round_trip(self):
        spec = from_diagonals([2.0, 0.5j, 1.0])
        back = spec_from_json(spec_to_json(spec))
        assert back.diag == spec.diag

    def test_real_exact_round_trip(self, fraction_spec):
        back = spec_from_json(spec_to_json(fraction_spec))
        assert back.diag == fraction_spec.diag
        assert back.is_real

    @pytest.mark.parametrize(
        "doc",
        [
            {"diag": []},
            {"n": 1},
            {"n": 1, "diag": [], "extra": 1},
            {"n": 2, "diag": [{"re": "1", "im": "0"}] * 3},
            {"n": 1, "diag": [{"re": "1", "im": "0"}, {"re": 0.0, "im": 0.0}, {"re": "1", "im": "0"}]},
            {"n": 1, "diag": "nope"},
            17,
        ],
    )
    def test_malformed_documents(self, doc):
        with pytest.raises(SpecFormatError):
            spec_from_json(doc)

"""Tests for exact fields and subspaces."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from linalg.field import FieldError, PrimeField, RationalField, make_field
from linalg.subspace import Subspace, image_space, kernel_basis, quotient_with_projection, sum_is_direct, \
    sum_of


def small_matrices(rows: int = 4, cols: int = 4):
    return st.lists(st.lists(st.integers(-5, 5), min_size=cols, max_size=cols), min_size=rows, max_size=rows)


class TestFields:
    def test_non_prime_characteristic_rejected(self):
        for n in (0, 1, 91, 2 ** 61 + 1):
            with pytest.raises(FieldError):
                PrimeField(n)

    def test_large_prime_uses_object_arrays(self):
        f = PrimeField(2 ** 61 - 1)
        assert f.dtype is object
        assert PrimeField(2).name == "F_2"

    def test_make_field_caches_and_parses(self):
        assert make_field(101) is make_field("101")
        assert make_field("rational").name == "Q"
        assert make_field(7).name == "F_7"
        assert make_field(None).name == "F_101"

    def test_prime_field_reduces_and_inverts(self):
        f = make_field(7)
        m = f.array([[8, -1], [14, 3]])
        assert f.to_lists(m) == [[1, 6], [0, 3]]
        assert f.inv(3) * 3 % 7 == 1
        with pytest.raises(FieldError):
            f.inv(0)

    def test_fraction_entries_map_into_prime_field(self):
        f = make_field(7)
        assert f.scalar(Fraction(1, 2)) == 4
        with pytest.raises(FieldError):
            f.scalar(Fraction(1, 7))

    def test_rational_field_exports_fractions(self):
        f = RationalField()
        m = f.array([[Fraction(1, 2), 3]])
        assert f.to_lists(m) == [["1/2", 3]]

    def test_rank_kernel_solve(self):
        for f in (make_field(101), make_field("rational")):
            m = f.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
            assert f.rank(m) == 2
            k = f.kernel(m)
            assert k.shape == (3, 1)
            assert f.is_zero(f.matmul(m, k))
            x = f.solve(m, f.vector([1, 2, 1]))
            assert f.equal(f.matmul(m, x).reshape(-1), f.vector([1, 2, 1]))
            assert f.solve(m, f.vector([1, 0, 0])) is None

    def test_empty_shapes(self):
        f = make_field(101)
        assert f.is_zero(f.zeros(0, 3))
        assert f.rank(f.zeros(0, 0)) == 0
        assert f.kernel(f.zeros(0, 2)).shape == (2, 2)
        assert f.hstack([], 3).shape == (3, 0)
        assert f.vstack([], 2).shape == (0, 2)

    def test_block_diag(self):
        f = make_field(101)
        out = f.block_diag([f.eye(1), f.array([[2, 3]])])
        assert f.to_lists(out) == [[1, 0, 0], [0, 2, 3]]

    @settings(max_examples=40, deadline=None)
    @given(small_matrices())
    def test_rank_nullity(self, rows):
        for f in (make_field(101), make_field("rational")):
            m = f.array(rows)
            assert f.rank(m) + f.kernel(m).shape[1] == m.shape[1]

    @settings(max_examples=30, deadline=None)
    @given(small_matrices(3, 3))
    def test_prime_rank_bounded_by_rational_rank(self, rows):
        # Rank over Q bounds the rank over F_p from above
        q, p = make_field("rational"), make_field(101)
        assert p.rank(p.array(rows)) <= q.rank(q.array(rows))


class TestSubspaces:
    def setup_method(self):
        self.f = make_field(101)

    def test_canonical_form_makes_equal_spans_equal(self):
        f = self.f
        a = Subspace.span(f, f.array([[1, 1], [0, 1], [0, 0]]))
        b = Subspace.span(f, f.array([[1, 0], [0, 1], [0, 0]]))
        assert a == b
        assert a.dim == 2
        assert a != Subspace.full(f, 3)

    def test_intersection_and_containment(self):
        f = self.f
        xy = Subspace.span(f, f.array([[1, 0], [0, 1], [0, 0]]))
        yz = Subspace.span(f, f.array([[0, 0], [1, 0], [0, 1]]))
        meet = xy.intersection(yz)
        assert meet.dim == 1
        assert xy.contains(f.vector([0, 1, 0]))
        assert xy.contains_subspace(meet)
        assert not xy.contains(f.vector([0, 0, 1]))

    def test_sum_is_direct_with_witness(self):
        f = self.f
        x = Subspace.span(f, f.array([[1], [0], [0]]))
        y = Subspace.span(f, f.array([[0], [1], [0]]))
        xy = Subspace.span(f, f.array([[1], [1], [0]]))
        assert sum_is_direct([x, y])
        check = sum_is_direct([x, y, xy])
        assert not check
        total = check.witness[0]
        for w in check.witness[1:]:
            total = f.add(total, w)
        assert f.is_zero(total)
        assert sum(1 for w in check.witness if not f.is_zero(w)) >= 2

    def test_empty_sum_is_direct(self):
        assert sum_is_direct([])
        assert sum_of(self.f, [], 3) == Subspace.zero(self.f, 3)

    def test_image_and_kernel(self):
        f = self.f
        m = f.array([[1, 0, 1], [0, 1, 1]])
        assert image_space(f, m).dim == 2
        assert kernel_basis(f, m).dim == 1

    def test_quotient_projection_kills_exactly_the_subspace(self):
        f = self.f
        s = Subspace.span(f, f.array([[1], [1], [0]]))
        q = quotient_with_projection(f, 3, s)
        assert q.dim == 2
        assert f.is_zero(f.matmul(q.projection, s.columns))
        assert f.equal(f.matmul(q.projection, q.section), f.eye(2))

    def test_quotient_rejects_wrong_ambient(self):
        with pytest.raises(ValueError):
            quotient_with_projection(self.f, 4, Subspace.zero(self.f, 3))

    def test_vector_outside(self):
        f = self.f
        big = Subspace.full(f, 2)
        line = Subspace.span(f, f.array([[1], [0]]))
        v = line.vector_outside(big)
        assert v is not None and not line.contains(v)
        assert big.vector_outside(line) is None

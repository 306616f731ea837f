from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from monadquiver.linalg import (
    GF,
    QQ,
    DimensionError,
    FieldSpec,
    LinearMap,
    Subspace,
    all_vectors,
    kronecker,
    rref_solve,
    solve,
    subspace_calculus,
)

F2, F3 = GF(2), GF(3)


def matrices(field, max_rows=4, max_cols=4, rows=None, cols=None):
    if field.is_finite:
        scalar = st.integers(0, field.characteristic - 1)
    else:
        scalar = st.fractions(min_value=-3, max_value=3, max_denominator=3)

    @st.composite
    def build(draw):
        r = rows if rows is not None else draw(st.integers(0, max_rows))
        c = cols if cols is not None else draw(st.integers(0, max_cols))
        entries = [[draw(scalar) for _ in range(c)] for _ in range(r)]
        return LinearMap.from_rows(field, entries, c)

    return build()


fields = st.sampled_from([F2, F3, GF(5), QQ])


# -- fields and scalars


def test_fieldspec_rejects_composite_characteristic():
    with pytest.raises(ValueError):
        FieldSpec("prime", 4)
    with pytest.raises(ValueError):
        FieldSpec("rationals", 3)


def test_scalar_serialization():
    assert QQ.format_scalar(Fraction(-2, 4)) == "-1/2"
    assert QQ.format_scalar(3) == "3/1"
    assert QQ.parse_scalar("6/4") == Fraction(3, 2)
    assert F3.format_scalar(-1) == 2
    assert F3.parse_scalar("5") == 2


def test_entries_are_reduced():
    m = LinearMap.from_rows(F3, [[4, -1]], 2)
    assert m.entries == ((1, 2),)
    q = LinearMap.from_rows(QQ, [[Fraction(2, 4)]], 1)
    assert q.entries[0][0].denominator == 2


def test_entry_count_checked():
    with pytest.raises(DimensionError):
        LinearMap(F2, 2, 2, ((1, 0),))


# -- rref_solve


def test_rref_identity():
    res = rref_solve(LinearMap.identity(QQ, 2), (1, 0))
    assert res.rank == 2 and res.solution == (1, 0)


def test_rref_inconsistent():
    res = rref_solve(LinearMap.zero(QQ, 2, 2), (1, 0))
    assert res.rank == 0 and res.solution is None


def test_rref_f2_rank_one():
    res = rref_solve(LinearMap.from_rows(F2, [[1, 1], [1, 1]]), (0, 0))
    assert res.rank == 1 and res.solution == (0, 0)
    assert res.echelon.entries == ((1, 1), (0, 0))


def test_rref_rhs_length_checked():
    with pytest.raises(DimensionError):
        rref_solve(LinearMap.identity(F2, 2), (1,))


def test_free_variables_are_zero():
    m = LinearMap.from_rows(QQ, [[1, 2, 0], [0, 0, 1]])
    res = rref_solve(m, (3, 4))
    assert res.pivots == (0, 2)
    assert res.solution == (3, 0, 4)


@given(fields.flatmap(lambda f: matrices(f)))
def test_rref_is_idempotent_and_solution_checks(m):
    res = rref_solve(m)
    again = rref_solve(res.echelon)
    assert again.echelon == res.echelon
    rhs = m.apply(tuple(1 for _ in range(m.cols)))
    sol = rref_solve(m, rhs).solution
    assert sol is not None and m.apply(sol) == rhs


# -- subspaces


def test_kernel_example():
    assert LinearMap.from_rows(QQ, [[1, 0]]).kernel() == Subspace.span(QQ, 2, [(0, 1)])


def test_intersection_example():
    a = Subspace.span(QQ, 2, [(1, 0)])
    b = Subspace.span(QQ, 2, [(0, 1)])
    assert a.intersect(b) == Subspace.zero(QQ, 2)


def test_image_example():
    img = subspace_calculus("image", LinearMap.from_rows(F2, [[1], [1]]))
    assert img.basis == ((1, 1),)


def test_ambient_mismatch():
    with pytest.raises(DimensionError):
        Subspace.zero(F2, 2) + Subspace.zero(F2, 3)


@given(fields.flatmap(lambda f: matrices(f)))
def test_rank_nullity(m):
    assert m.image().dim + m.kernel().dim == m.cols


@given(fields.flatmap(lambda f: st.tuples(matrices(f, rows=3), matrices(f, rows=3), matrices(f, rows=3))))
def test_sum_and_intersect_are_canonical(maps):
    a, b, c = (x.image() for x in maps)
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a + a == a
    assert a.intersect(b) == b.intersect(a)
    assert a.intersect(b).intersect(c) == a.intersect(b.intersect(c))
    assert a.intersect(a) == a
    assert a.intersect(b) <= a <= a + b
    assert (a + b).dim + a.intersect(b).dim == a.dim + b.dim


@given(fields.flatmap(lambda f: matrices(f, rows=4)))
def test_quotient_projection(m):
    s = m.image()
    q = subspace_calculus("quotient_projection", s)
    assert (q @ s.basis_matrix()).is_zero()
    assert q.rank() == s.ambient_dim - s.dim
    assert q @ s.quotient_section() == LinearMap.identity(m.field, q.rows)
    assert q.kernel() == s


def test_equal_spans_have_identical_bases():
    a = Subspace.span(F3, 3, [(1, 1, 0), (0, 1, 1)])
    b = Subspace.span(F3, 3, [(1, 2, 1), (2, 2, 0)])
    assert a == b and a.basis == b.basis


def test_quotient_basis_is_non_pivot_coordinates():
    s = Subspace.span(QQ, 3, [(0, 1, 1)])
    assert s.complement_coordinates() == (0, 2)
    assert s.quotient_projection().apply((0, 1, 0)) == (0, -1)


# -- kronecker


def test_kronecker_identities():
    assert kronecker(LinearMap.identity(QQ, 2), LinearMap.identity(QQ, 3)) == LinearMap.identity(QQ, 6)
    a = LinearMap.from_rows(QQ, [[1, 2], [3, 4]])
    assert kronecker(a, LinearMap.zero(QQ, 1, 1)).is_zero()


def test_kronecker_nilpotent_block():
    n = LinearMap.from_rows(F2, [[0, 1], [0, 0]])
    k = kronecker(n, LinearMap.identity(F2, 2))
    for i, j in ((0, 0), (0, 1), (1, 0), (1, 1)):
        for r, s in ((0, 0), (0, 1), (1, 0), (1, 1)):
            assert k.entries[i * 2 + r][j * 2 + s] == n.entries[i][j] * (r == s)
    assert (k @ k).is_zero()


def test_kronecker_field_mismatch():
    with pytest.raises(DimensionError):
        kronecker(LinearMap.identity(F2, 1), LinearMap.identity(F3, 1))


@given(fields.flatmap(lambda f: st.tuples(matrices(f, 3, 3, rows=2, cols=3), matrices(f, 3, 3, rows=3, cols=2),
                                          matrices(f, 3, 3, rows=2, cols=2), matrices(f, 3, 3, rows=2, cols=1))))
def test_kronecker_mixed_product(ms):
    a, c, b, d = ms
    assert kronecker(a, b) @ kronecker(c, d) == kronecker(a @ c, b @ d)


@given(fields.flatmap(lambda f: st.tuples(matrices(f, rows=2, cols=2), matrices(f, rows=2, cols=2),
                                          matrices(f, rows=1, cols=3))))
def test_kronecker_bilinear(ms):
    a, a2, b = ms
    assert kronecker(a + a2, b) == kronecker(a, b) + kronecker(a2, b)
    assert kronecker(a.scale(2), b) == kronecker(a, b).scale(2)


# -- solving and inversion


@given(fields.flatmap(lambda f: matrices(f, rows=3, cols=3)))
def test_inverse_when_invertible(m):
    if m.is_invertible():
        assert m @ m.inverse() == LinearMap.identity(m.field, 3)
    else:
        assert m.rank() < 3


def test_solve_matrix_equation():
    a = LinearMap.from_rows(F3, [[1, 2], [0, 1]])
    b = LinearMap.from_rows(F3, [[1, 0], [2, 1]])
    x = solve(a, b)
    assert a @ x == b


def test_empty_maps():
    z = LinearMap.zero(QQ, 0, 3)
    assert z.rank() == 0 and z.kernel().dim == 3
    assert (LinearMap.zero(QQ, 2, 0) @ LinearMap.zero(QQ, 0, 4)).is_zero()


def test_enumerate_small_space():
    assert len(list(all_vectors(F3, 2))) == 9
    assert len(list(Subspace.span(F2, 3, [(1, 0, 1)]).elements())) == 2

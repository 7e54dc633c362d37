import pytest
from hypothesis import given, strategies as st

from sekit.errors import DimensionMismatch, NotSquare
from sekit.matrix import (
    CorrMatrix,
    InflationSquare,
    bipartite_inflation,
    classify,
    col_support,
    direct_sum,
    identity,
    inflation_power,
    permutation_matrix,
    power,
    tensor,
)

from conftest import composable_pairs, matrices, naive_product

C = CorrMatrix
GOLDEN = C([[1, 1], [1, 0]])


def test_rejects_negative_and_ragged():
    with pytest.raises(ValueError):
        C([[1, -1]])
    with pytest.raises(ValueError):
        C([[1, 2], [3]])
    with pytest.raises(ValueError):
        C([])


def test_tensor_examples():
    assert tensor(C([[1, 1], [1, 1]]), identity(2)) == C([[1, 1], [1, 1]])
    assert tensor(C([[1], [1]]), C([[1, 1]])) == C([[1, 1], [1, 1]])
    assert tensor(C([[1, 1]]), C([[1], [1]])) == C([[2]])


def test_tensor_matches_schoolbook_product():
    x, y = C([[1, 2, 0], [3, 0, 4]]), C([[5, 1], [0, 2], [7, 3]])
    assert tensor(x, y).to_lists() == naive_product(x.to_lists(), y.to_lists())


def test_tensor_checks_shapes_and_labels():
    with pytest.raises(DimensionMismatch):
        tensor(C([[1, 1]]), C([[1, 1]]))
    with pytest.raises(DimensionMismatch):
        tensor(C([[1]], "A", "B"), C([[1]], "C", "A"))
    out = tensor(C([[1]], "A", "B"), C([[2]], "B", "C"))
    assert (out.row_label, out.col_label) == ("A", "C")


def test_big_entries_stay_exact():
    big = C([[2**70]])
    assert power(big, 3) == C([[2**210]])


def test_inflation_block_product():
    r, s = C([[1, 2], [0, 1], [3, 0]]), C([[1, 0, 2], [2, 1, 1]])
    x = bipartite_inflation(r, s).materialize()
    rs, sr = tensor(r, s), tensor(s, r)
    assert tensor(x, x) == direct_sum(rs, sr)


@pytest.mark.parametrize("k, expected", [
    (0, [[1, 0], [0, 1]]),
    (2, [[2, 1], [1, 1]]),
])
def test_power_golden_mean(k, expected):
    assert power(GOLDEN, k) == C(expected)


def test_power_scalar_and_not_square():
    assert power(C([[2]]), 3) == C([[8]])
    with pytest.raises(NotSquare):
        power(C([[1, 1]]), 2)


def test_direct_sum_examples():
    assert direct_sum(C([[2]]), C([[3]])) == C([[2, 0], [0, 3]])
    assert direct_sum(identity(1), identity(1)) == identity(2)
    out = direct_sum(C([[1, 1]]), C([[1], [1]]))
    assert out == C([[1, 1, 0], [0, 0, 1], [0, 0, 1]])


def test_direct_sum_labels_concatenate():
    out = direct_sum(C([[1]], "A", "A"), C([[1]], "B", "B"))
    assert (out.row_label, out.col_label) == ("A+B", "A+B")


def test_bipartite_inflation_examples():
    x = bipartite_inflation(C([[1], [1]]), C([[1, 1]]))
    assert x.materialize() == C([[0, 0, 1], [0, 0, 1], [1, 1, 0]])
    swap = bipartite_inflation(identity(2), identity(2)).materialize()
    assert swap == permutation_matrix([2, 3, 0, 1])
    assert bipartite_inflation(C([[2]]), C([[3]])).materialize() == C([[0, 2], [3, 0]])


def test_bipartite_inflation_shape_errors():
    with pytest.raises(DimensionMismatch):
        bipartite_inflation(C([[1, 1]]), C([[1, 1]]))
    with pytest.raises(DimensionMismatch):
        InflationSquare(C([[1]], "A", "B"), C([[1]], "A", "B"))


def test_inflation_power_examples():
    x = bipartite_inflation(C([[1], [1]]), C([[1, 1]]))
    assert inflation_power(x, 2) == C([[1, 1, 0], [1, 1, 0], [0, 0, 2]])
    assert inflation_power(x, 1) == x.materialize()
    y = bipartite_inflation(C([[2]]), C([[3]]))
    assert inflation_power(y, 3) == C([[0, 12], [18, 0]])


@given(composable_pairs(max_dim=3, max_entry=4), st.integers(1, 6))
def test_inflation_power_law(pair, n):
    x = bipartite_inflation(*pair)
    assert inflation_power(x, n) == power(x.materialize(), n)


@given(st.data())
def test_tensor_associative(data):
    dims = [data.draw(st.integers(1, 5)) for _ in range(4)]
    x, y, z = (data.draw(matrices(rows=dims[i], cols=dims[i + 1], max_entry=9)) for i in range(3))
    assert tensor(tensor(x, y), z) == tensor(x, tensor(y, z))


@given(composable_pairs(max_dim=4, max_entry=3), st.integers(0, 4))
def test_right_unit_identity(pair, k):
    # F^(k+1) = S E^k R for E = RS, F = SR; the column support claim follows
    r, s = pair
    e, f = tensor(r, s), tensor(s, r)
    lhs = power(f, k + 1)
    assert lhs == tensor(tensor(s, power(e, k)), r)
    assert col_support(lhs) <= col_support(tensor(power(e, k), r))


@pytest.mark.parametrize("m, flags", [
    ([[1, 1], [1, 0]], (True, True, True)),
    ([[1, 0], [1, 0]], (False, False, True)),
    ([[0]], (False, False, False)),
    ([[0, 0], [1, 1]], (False, True, False)),
])
def test_classify(m, flags):
    got = classify(C(m))
    assert (got.regular, got.full, got.nondegenerate) == flags


@given(matrices(max_dim=4, square=True, max_entry=2), matrices(max_dim=4, square=True, max_entry=2))
def test_classify_direct_sum(x, y):
    assert classify(direct_sum(x, y)).regular == (classify(x).regular and classify(y).regular)


@pytest.mark.parametrize("m, support", [
    ([[0, 1], [0, 2]], {1}),
    ([[1, 1], [1, 0]], {0, 1}),
    ([[0, 0], [0, 0]], set()),
])
def test_col_support(m, support):
    assert col_support(C(m)) == support


def test_transpose_swaps_labels():
    m = C([[1, 2, 3]], "A", "B")
    assert m.T == C([[1], [2], [3]], "B", "A")

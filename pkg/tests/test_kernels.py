import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from coxhilbert import kernels
from coxhilbert.linalg import dense_exact_rank

needs_numba = pytest.mark.skipif(kernels.numba_impl is None, reason="numba not installed")
P = 2147483629  # prime below 2**31

impls = [kernels.numpy_impl] + ([kernels.numba_impl] if kernels.numba_impl else [])


@pytest.mark.parametrize("impl", impls, ids=lambda i: i.name)
def test_compositions_order_and_count(impl):
    out = impl.compositions(3, 3)
    assert out.shape == (10, 3)
    assert out.tolist()[:3] == [[3, 0, 0], [2, 1, 0], [2, 0, 1]]
    assert out.tolist()[-1] == [0, 0, 3]
    assert impl.compositions(0, 4).tolist() == [[0, 0, 0, 0]]
    assert impl.compositions(5, 1).tolist() == [[5]]


@needs_numba
@settings(max_examples=40, deadline=None)
@given(st.integers(0, 8), st.integers(1, 5))
def test_compositions_agree(total, parts):
    a = kernels.numpy_impl.compositions(total, parts)
    b = kernels.numba_impl.compositions(total, parts)
    assert np.array_equal(a, b)


exp_rows = lambda n: hnp.arrays(np.int64, st.tuples(st.integers(0, 12), st.just(n)), elements=st.integers(0, 3))


@needs_numba
@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(exp_rows(n), exp_rows(n))))
def test_divisibility_kernels_agree(pair):
    mons, gens = pair
    a = kernels.numpy_impl.divisor_matrix(mons, gens)
    b = kernels.numba_impl.divisor_matrix(mons, gens)
    assert np.array_equal(a, b)
    assert np.array_equal(
        kernels.numpy_impl.divisible_mask(mons, gens), kernels.numba_impl.divisible_mask(mons, gens)
    )
    assert np.array_equal(a.any(axis=1) if gens.shape[0] else np.zeros(len(mons), bool),
                          kernels.numba_impl.divisible_mask(mons, gens))


@pytest.mark.parametrize("impl", impls, ids=lambda i: i.name)
@settings(max_examples=40, deadline=None)
@given(mat=hnp.arrays(np.int64, st.tuples(st.integers(1, 7), st.integers(1, 7)), elements=st.integers(-4, 4)))
def test_rank_mod_large_prime_matches_exact_on_small_entries(impl, mat):
    # small integer matrices: a prime this large cannot divide any nonzero minor
    assert impl.rank_mod_p(mat, P) == dense_exact_rank(mat.tolist())


@pytest.mark.parametrize("impl", impls, ids=lambda i: i.name)
def test_rank_mod_small_prime_drops(impl):
    mat = np.array([[1, 1], [1, 3]], dtype=np.int64)  # det 2
    assert impl.rank_mod_p(mat, 2) == 1
    assert impl.rank_mod_p(mat, 3) == 2


def test_public_wrappers_handle_empty():
    empty = np.zeros((0, 3), dtype=np.int64)
    assert kernels.divisible_mask(empty, np.ones((2, 3), dtype=np.int64)).shape == (0,)
    assert kernels.divisible_mask(np.ones((2, 3), dtype=np.int64), empty).tolist() == [False, False]
    assert kernels.rank_mod_p(np.zeros((0, 0), dtype=np.int64), P) == 0
    with pytest.raises(ValueError):
        kernels.rank_mod_p(np.ones((1, 1), dtype=np.int64), 2**31 + 11)

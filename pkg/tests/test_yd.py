import itertools

import numpy as np
import pytest

from quiverhopf import (
    BudgetError,
    YDModule,
    braiding,
    build_bimodule,
    coinvariant_yd,
    make_rsr,
    nichols_dims,
    nichols_dims_multiprime,
    parse_group,
    parse_ramification,
    verify_yd,
    yd_from_rsr,
)
from quiverhopf import linalg
from quiverhopf.yd import (
    braid_operators,
    bubble_word,
    insertion_word,
    quantum_symmetrizer,
    word_operator,
    word_permutation,
)


@pytest.fixture(scope="module")
def sgn_module(s3):
    ram = parse_ramification(s3, "(0 1):1")
    return yd_from_rsr(make_rsr(s3, ram, None, {1: (1,)}))


@pytest.fixture(scope="module")
def c2_module():
    g = parse_group("C2")
    ram = parse_ramification(g, "(0 1):1")
    return yd_from_rsr(make_rsr(g, ram, None, {1: (1,)}))


def test_dimension_counts(sgn_module, s3):
    assert sgn_module.dim == 3                     # r_C * |C| = 3
    assert all(a.x == 0 for a in sgn_module.basis)


def test_zero_module(s3):
    rsr = make_rsr(s3, parse_ramification(s3, ""), None, {})
    v = yd_from_rsr(rsr)
    assert v.dim == 0
    assert verify_yd(v).passed
    assert nichols_dims(v, 3) == [1, 0, 0, 0]


def test_c2_sign_action(c2_module):
    v = c2_module
    assert v.dim == 1
    # the nontrivial element acts by -1
    assert v.action[1].tolist() == [[v.p - 1]]


def test_verify_yd_passes(sgn_module):
    report = verify_yd(sgn_module)
    assert report.passed, report.to_json()


def test_verify_yd_catches_grading_mutation(sgn_module):
    v = sgn_module
    broken = YDModule(v.group, v.p, v.basis,
                      [v.grading[1], v.grading[0]] + list(v.grading[2:]),
                      v.action)
    assert not verify_yd(broken).passed
    failed = [c.name for c in verify_yd(broken).checks if not c.ok]
    assert "grading-equivariance" in failed


def test_verify_yd_catches_action_mutation(sgn_module):
    v = sgn_module
    action = {g: m.copy() for g, m in v.action.items()}
    action[1][0, 0] = (action[1][0, 0] + 1) % v.p
    broken = YDModule(v.group, v.p, v.basis, v.grading, action)
    assert not verify_yd(broken).passed


def test_braiding_c2(c2_module):
    c = braiding(c2_module)
    assert c.matrix.tolist() == [[c.p - 1]]
    assert c.verify().passed


def test_braiding_trivial_is_flip():
    # trivial grading and trivial action: c(a (x) b) = b (x) a
    g = parse_group("C2")
    p = 5
    d = 3
    action = {0: np.eye(d, dtype=np.int64), 1: np.eye(d, dtype=np.int64)}
    v = YDModule(g, p, [("v", i) for i in range(d)], [0] * d, action)
    c = braiding(v)
    flip = np.zeros((d * d, d * d), dtype=np.int64)
    for a in range(d):
        for b in range(d):
            flip[b * d + a, a * d + b] = 1
    assert (c.matrix == flip).all()


def test_braiding_matches_entrywise_formula(sgn_module):
    # oracle: apply the defining formula through the action maps directly
    v = sgn_module
    c = braiding(v)
    assert c.matrix.shape == (9, 9)
    for a in range(v.dim):
        for b in range(v.dim):
            col = np.zeros(v.dim, dtype=np.int64)
            col[b] = 1
            image = v.act(v.grading[a], col)
            expected = np.zeros(81 // 9 * 9, dtype=np.int64)[:81 // 9]
            got = c.matrix[:, a * v.dim + b]
            for bp in range(v.dim):
                assert got[bp * v.dim + a] == image[bp]
            # nothing outside the (.,a) stripe
            mask = np.ones(9, dtype=bool)
            for bp in range(v.dim):
                mask[bp * v.dim + a] = False
            assert not got[mask].any()


def test_braid_relation_and_invertibility(sgn_module, s4):
    assert braiding(sgn_module).verify().passed
    ram = parse_ramification(s4, "(0 1)(2 3):1")
    v = yd_from_rsr(make_rsr(s4, ram, None, {3: (1,)}))
    assert braiding(v).verify().passed


def test_word_functions():
    for n in (2, 3, 4):
        for sigma in itertools.permutations(range(n)):
            bw = bubble_word(sigma)
            iw = insertion_word(sigma)
            inv = sum(1 for i in range(n) for j in range(i + 1, n)
                      if sigma[i] > sigma[j])
            assert len(bw) == len(iw) == inv
            assert word_permutation(bw, n) == sigma
            assert word_permutation(iw, n) == sigma


def test_word_independence(sgn_module):
    # T_sigma does not depend on the reduced word (all sigma of length <= 4)
    c = braiding(sgn_module)
    for n in (3, 4):
        ops = braid_operators(c, n)
        total = c.dim ** n
        for sigma in itertools.permutations(range(n)):
            bw = bubble_word(sigma)
            if len(bw) > 4:
                continue
            iw = insertion_word(sigma)
            t1 = word_operator(bw, ops, total, c.p)
            t2 = word_operator(iw, ops, total, c.p)
            assert (t1 == t2).all()


def test_symmetrizer_word_choice_irrelevant(sgn_module):
    c = braiding(sgn_module)
    for n in (2, 3):
        s1 = quantum_symmetrizer(c, n, bubble_word)
        s2 = quantum_symmetrizer(c, n, insertion_word)
        assert (s1 == s2).all()


def test_nichols_dims_c2(c2_module):
    assert nichols_dims(c2_module, 4) == [1, 1, 0, 0, 0]


def test_nichols_dims_s3_transposition(sgn_module):
    # frozen from the independent coset-factorization oracle below
    assert nichols_dims(sgn_module, 5) == [1, 3, 4, 3, 1, 0]


def oracle_dims(v, max_deg):
    """Independent symmetrizer: the length-additive coset factorization
    S_n = (S_{n-1} (x) 1) . (1 + c_{n-1} + c_{n-1}c_{n-2} + ...)."""
    c = braiding(v)
    d, p = c.dim, c.p
    dims = [1, linalg.rank(np.eye(d, dtype=np.int64), p)]
    s_prev = np.eye(d, dtype=np.int64)
    for n in range(2, max_deg + 1):
        ops = braid_operators(c, n)
        total = d ** n
        gamma = np.zeros((total, total), dtype=np.int64)
        for k in range(n):
            word = list(range(n - 2, k - 1, -1))
            gamma = (gamma + word_operator(word, ops, total, p)) % p
        s_n = linalg.matmul(np.kron(s_prev, np.eye(d, dtype=np.int64)) % p,
                            gamma, p)
        dims.append(linalg.rank(s_n, p))
        s_prev = s_n
    return dims


def test_nichols_dims_against_oracle(sgn_module, c2_module):
    assert oracle_dims(sgn_module, 5) == nichols_dims(sgn_module, 5)
    assert oracle_dims(c2_module, 4) == nichols_dims(c2_module, 4)


def test_nichols_dims_invariants(s3):
    ram = parse_ramification(s3, "(0 1 2):1")
    for idx in range(3):
        v = yd_from_rsr(make_rsr(s3, ram, None, {2: (idx,)}))
        dims = nichols_dims(v, 3)
        assert dims[0] == 1 and dims[1] == v.dim
        assert all(dims[n] <= v.dim ** n for n in range(len(dims)))


def test_budget_error(sgn_module):
    with pytest.raises(BudgetError):
        nichols_dims(sgn_module, 5, space_cap=100)


def test_multiprime(s3):
    ram = parse_ramification(s3, "(0 1):1")
    rsr = make_rsr(s3, ram, None, {1: (1,)})
    res = nichols_dims_multiprime(rsr, 4, nprimes=3)
    assert res["dims"] == [1, 3, 4, 3, 1]
    assert len(res["primes"]) == 3 and len(set(res["primes"])) == 3
    assert res["agreed"] is True
    assert res["primes"][0] == 13


def test_coinvariant_matches_bimodule(sgn_module, s3):
    # the action is g . a . g^-1 computed through the bimodule maps
    ram = parse_ramification(s3, "(0 1):1")
    rsr = make_rsr(s3, ram, None, {1: (1,)})
    m = build_bimodule(rsr)
    v = coinvariant_yd(m)
    for h in range(s3.order):
        for j, a in enumerate(v.basis):
            shifted = m.left_action(h, a)
            expanded = m.right_action(shifted, s3.inv(h))
            col = np.zeros(v.dim, dtype=np.int64)
            for b, coeff in expanded:
                col[v.index[b]] = coeff
            assert (v.action[h][:, j] == col).all()


def test_same_type_pairs_share_dims(s3):
    # representatives presenting the same type give identical dimensions
    from quiverhopf import make_rsr as mk
    ram = parse_ramification(s3, "e:2")
    a = mk(s3, ram, None, {0: (0, 1)})
    b = mk(s3, ram, None, {0: (1, 0)})
    assert nichols_dims(yd_from_rsr(a), 3) == nichols_dims(yd_from_rsr(b), 3)


def test_dim_cap(s4):
    # a 12-dimensional module trips the default module-dimension cap
    ram = parse_ramification(s4, "(0 1):2")
    rsr = make_rsr(s4, ram, None, {1: (0, 1)})
    v = yd_from_rsr(rsr)
    assert v.dim == 12
    with pytest.raises(BudgetError):
        nichols_dims(v, 2)
    assert nichols_dims(v, 2, dim_cap=12)[1] == 12


def test_trivially_braided_module_gives_symmetric_algebra(s4):
    # loops at the identity vertex have group-like degree e, so the braiding
    # is the flip and the Nichols algebra is the symmetric algebra:
    # dimensions C(n + d - 1, d - 1)
    from math import comb
    ram = parse_ramification(s4, "e:2")
    rsr = make_rsr(s4, ram, None, {0: (2,)})   # the 2-dim representation
    v = yd_from_rsr(rsr)
    assert v.dim == 2
    assert all(d == 0 for d in v.grading)
    dims = nichols_dims(v, 4)
    assert dims == [comb(n + 1, 1) for n in range(5)]

import itertools
import json
import random

import pytest

from quiverhopf import (
    InputError,
    Permutation,
    centralizer_subgroup,
    choose_prime,
    conjugacy_classes,
    count_classes,
    enumerate_types,
    isomorphic,
    make_rsr,
    normalize_u,
    parse_group,
    parse_ramification,
    rsr_from_json,
    rsr_from_type,
    rsr_type,
    twist_rsr,
)
from quiverhopf.modrep import group_table


def brute_force_tau(degrees, r):
    """Oracle: count multisets of character indices with total degree r."""
    count = 0
    for size in range(r + 1):
        for combo in itertools.combinations_with_replacement(
                range(len(degrees)), size):
            if sum(degrees[i] for i in combo) == r:
                count += 1
    return count


def test_make_rsr_examples(s3):
    ram = parse_ramification(s3, "e:2")
    make_rsr(s3, ram, None, {0: (2,)})        # the 2-dim rep, degree 2
    make_rsr(s3, ram, None, {0: (0, 1)})      # eps + sgn
    with pytest.raises(InputError):
        make_rsr(s3, ram, None, {0: (0,)})    # degree 1 != 2
    with pytest.raises(InputError):
        make_rsr(s3, ram, None, {})           # missing class data
    with pytest.raises(InputError):
        make_rsr(s3, ram, None, {0: (7,)})    # bad character index


def test_make_rsr_u_validation(s3):
    ram = parse_ramification(s3, "(0 1):1")
    t12 = s3.find(Permutation((0, 2, 1)))
    make_rsr(s3, ram, {1: t12}, {1: (1,)})
    with pytest.raises(InputError):
        make_rsr(s3, ram, {1: 0}, {1: (1,)})  # identity not in the class


def test_normalize_u_fixed_point(s3):
    ram = parse_ramification(s3, "e:2")
    rsr = make_rsr(s3, ram, None, {0: (0, 1)})
    assert normalize_u(rsr) is rsr


def test_normalize_u_transposition_example(s3):
    # u({transpositions}) = (0 2) with the sign character normalizes to
    # u0 = (0 1) with the sign character of Z_{(0 1)}
    ram = parse_ramification(s3, "(0 1):1")
    u02 = s3.find(Permutation((2, 1, 0)))
    rsr = make_rsr(s3, ram, {1: u02}, {1: (1,)})
    norm = normalize_u(rsr)
    assert norm.u[1] == conjugacy_classes(s3)[1].rep
    assert norm.irreps[1] == (1,)
    # idempotent
    assert rsr_type(normalize_u(norm)) == rsr_type(norm)


def test_normalize_u_identity_class_unchanged(s3):
    ram = parse_ramification(s3, "e:2")
    rsr = make_rsr(s3, ram, {0: 0}, {0: (2,)})
    assert normalize_u(rsr).u[0] == 0


def test_rsr_type_example(s3):
    ram = parse_ramification(s3, "e:2")
    assert rsr_type(make_rsr(s3, ram, None, {0: (2,)})).entries == ((0, (0, 0, 1)),)
    assert rsr_type(make_rsr(s3, ram, None, {0: (0, 1)})) == \
        rsr_type(make_rsr(s3, ram, None, {0: (1, 0)}))


def test_rsr_type_zero_ramification(s3):
    rsr = make_rsr(s3, parse_ramification(s3, ""), None, {})
    assert rsr_type(rsr).entries == ()


def test_isomorphic_example(s3):
    ram = parse_ramification(s3, "e:2")
    a = make_rsr(s3, ram, None, {0: (0, 1)})
    b = make_rsr(s3, ram, None, {0: (1, 0)})
    c = make_rsr(s3, ram, None, {0: (0, 0)})
    d = make_rsr(s3, ram, None, {0: (1, 1)})
    for mode in ("assume-inner", "search-aut"):
        assert isomorphic(a, b, mode)
        assert not isomorphic(c, d, mode)
        assert isomorphic(a, a, mode)


def test_isomorphic_is_equivalence(s3):
    ram = parse_ramification(s3, "e:2,(0 1):1")
    reps = [rsr_from_type(s3, ram, t) for t in enumerate_types(s3, ram)]
    # add u-twisted copies of a few representatives
    rng = random.Random(0)
    twisted = [twist_rsr(r, {1: rng.randrange(s3.order)}) for r in reps[:3]]
    pool = reps + twisted
    rel = {(i, j): isomorphic(x, y, "search-aut")
           for i, x in enumerate(pool) for j, y in enumerate(pool)}
    n = len(pool)
    for i in range(n):
        assert rel[(i, i)]
        for j in range(n):
            assert rel[(i, j)] == rel[(j, i)]
            for k in range(n):
                if rel[(i, j)] and rel[(j, k)]:
                    assert rel[(i, k)]


def test_isomorphic_mode_errors(s3):
    ram = parse_ramification(s3, "e:2")
    a = make_rsr(s3, ram, None, {0: (2,)})
    v4 = parse_group("C2xC2")
    b = make_rsr(v4, parse_ramification(v4, ""), None, {})
    with pytest.raises(InputError):
        isomorphic(a, b)
    with pytest.raises(InputError):
        isomorphic(b, b, "assume-inner")   # Aut != Inn for the Klein group
    with pytest.raises(InputError):
        isomorphic(a, a, "no-such-mode")


def test_count_classes_examples(s3):
    assert count_classes(s3, parse_ramification(s3, "e:2")) == 4
    assert count_classes(s3, parse_ramification(s3, "")) == 1
    assert count_classes(s3, parse_ramification(s3, "e:2,(0 1):1")) == 8


def test_count_against_brute_force():
    # DP equals multiset enumeration for r <= 4 over small tables
    for spec in ("S3", "S4", "D4", "Q8"):
        g = parse_group(spec)
        f = choose_prime(g)
        for ctx in conjugacy_classes(g):
            degrees = group_table(centralizer_subgroup(g, ctx), f).degrees
            if len(degrees) > 6:
                continue
            for r in range(5):
                ram_like = [(ctx.class_index, r)] if r else []
                from quiverhopf.rsr import _tau
                assert _tau(degrees, r) == brute_force_tau(degrees, r)


def test_enumerate_types_example(s3):
    ram = parse_ramification(s3, "e:2")
    types = enumerate_types(s3, ram)
    assert [t.entries[0][1] for t in types] == \
        [(2, 0, 0), (1, 1, 0), (0, 2, 0), (0, 0, 1)]


def test_enumerate_types_zero(s3):
    types = enumerate_types(s3, parse_ramification(s3, ""))
    assert len(types) == 1 and types[0].entries == ()


def test_enumerate_types_three_cycles(s3):
    # centralizer C3 has degrees (1,1,1): three types for r = 1
    types = enumerate_types(s3, parse_ramification(s3, "(0 1 2):1"))
    assert len(types) == 3


@pytest.mark.parametrize("spec,ram_spec", [
    ("S3", "e:2"), ("S3", "(0 1):2,(0 1 2):1"), ("S4", "(0 1):2"),
    ("D4", "e:3"), ("Q8", "(0 2 1 3)(4 6 5 7):2"),
])
def test_count_equals_enumeration(spec, ram_spec):
    g = parse_group(spec)
    ram = parse_ramification(g, ram_spec)
    assert count_classes(g, ram) == len(enumerate_types(g, ram))


def test_type_invariant_under_twist(s3, s4):
    rng = random.Random(42)
    for g in (s3, s4):
        classes = conjugacy_classes(g)
        for _ in range(5):
            cls = rng.randrange(len(classes))
            f = choose_prime(g)
            z = centralizer_subgroup(g, classes[cls])
            degrees = group_table(z, f).degrees
            idx = rng.randrange(len(degrees))
            r = degrees[idx]
            ram = parse_ramification(
                g, f"{g.element_name(classes[cls].rep)}:{r}")
            rsr = make_rsr(g, ram, None, {cls: (idx,)}, field=f)
            h = rng.randrange(g.order)
            assert rsr_type(twist_rsr(rsr, {cls: h})) == rsr_type(rsr)


def test_json_round_trip(s3):
    ram = parse_ramification(s3, "e:2,(0 1):1")
    rsr = make_rsr(s3, ram, None, {0: (0, 1), 1: (0,)}, seed=3)
    doc = rsr.to_json()
    assert set(doc) == {"group", "prime", "seed", "u", "rho"}
    back = rsr_from_json(json.loads(json.dumps(doc)))
    assert rsr_type(back) == rsr_type(rsr)
    assert back.seed == 3


def test_json_with_noncanonical_u(s3):
    ram = parse_ramification(s3, "(0 1):1")
    u02 = s3.find(Permutation((2, 1, 0)))
    rsr = make_rsr(s3, ram, {1: u02}, {1: (1,)})
    back = rsr_from_json(rsr.to_json())
    assert back.u[1] == u02
    assert rsr_type(back) == rsr_type(rsr)


def test_json_errors(s3):
    with pytest.raises(InputError):
        rsr_from_json({"group": "S3", "prime": 13})          # no rho
    with pytest.raises(InputError):
        rsr_from_json({"group": "S3", "prime": 12,
                       "rho": [{"class": 0, "irreps": [0]}]})
    with pytest.raises(InputError):
        rsr_from_json({"group": "S3", "prime": 13,
                       "rho": [{"class": 9, "irreps": [0]}]})
    with pytest.raises(InputError):
        rsr_from_json({"group": "S3", "prime": 13,
                       "u": [{"class": 1, "rep": "(0 1 2)"}],
                       "rho": [{"class": 1, "irreps": [0]}]})


def test_a4_outer_automorphism_fusion():
    # A4 has Aut != Inn; the two classes of 3-cycles are fused by an outer
    # automorphism, so RSRs carried by them can be isomorphic while their
    # types differ: the type criterion is complete only for inner-only groups
    a4 = parse_group("A4")
    classes = conjugacy_classes(a4)
    assert [c.size for c in classes] == [1, 4, 4, 3]
    ram1 = parse_ramification(a4, f"{a4.element_name(classes[1].rep)}:1")
    ram2 = parse_ramification(a4, f"{a4.element_name(classes[2].rep)}:1")
    x = make_rsr(a4, ram1, None, {1: (0,)})
    y = make_rsr(a4, ram2, None, {2: (0,)})
    assert isomorphic(x, y, "search-aut")
    assert rsr_type(x) != rsr_type(y)
    # nontrivial characters of the cyclic centralizer: the outer map matches
    # each to exactly one of the two conjugates on the fused class
    x1 = make_rsr(a4, ram1, None, {1: (1,)})
    y1 = make_rsr(a4, ram2, None, {2: (1,)})
    y2 = make_rsr(a4, ram2, None, {2: (2,)})
    assert isomorphic(x1, y1, "search-aut") != isomorphic(x1, y2, "search-aut")
    assert not isomorphic(x, x1, "search-aut")

import random

import pytest
from hypothesis import given, settings, strategies as st

from wreath_hurwitz.partitions import ColoredPartition, gen_colored_partitions
from wreath_hurwitz.wreath import (
    BigPermutation,
    BudgetExceeded,
    WreathElement,
    all_reflections,
    beta_type,
    check_class_sizes,
    class_size,
    colored_type,
    conjugacy_class,
    embed,
    enumerate_group,
    group_order,
    normalizer_of_tau,
    perm_cycles,
    random_element,
    reflection_class,
    reflection_class_type,
    representative,
    tau,
    unembed,
)

W = WreathElement
CP = ColoredPartition.parse


def test_product_rule_example():
    a = W(2, (2, 1), (1, 0))
    b = W(2, (2, 1), (0, 0))
    assert a * b == W(2, (1, 2), (0, 1))
    # the same product computed inside S_4
    assert embed(a) * embed(b) == embed(W(2, (1, 2), (0, 1)))


def test_tau_examples():
    assert perm_cycles(tau(2, 2).images) == [(1, 3), (2, 4)]
    assert perm_cycles(tau(3, 1).images) == [(1, 2, 3)]
    assert tau(1, 4).images == (1, 2, 3, 4)


def moved(p: BigPermutation) -> list[tuple[int, ...]]:
    return [c for c in perm_cycles(p.images) if len(c) > 1]


def test_embed_examples():
    assert embed(W.identity(2, 2)).images == (1, 2, 3, 4)
    assert moved(embed(W(2, (1, 2), (1, 0)))) == [(1, 3)]
    assert perm_cycles(embed(W(2, (2, 1), (0, 0))).images) == [(1, 2), (3, 4)]


def test_colored_type_examples():
    assert colored_type(W.identity(3, 2)) == CP("1,1|-|-")
    assert colored_type(W(2, (1, 2), (1, 0))) == CP("1|1")
    assert colored_type(W(2, (2, 1), (1, 0))) == CP("-|2")


def test_beta_type_examples():
    assert beta_type(BigPermutation((1, 2, 3, 4)), 2, 2) == CP("1,1|-")
    assert beta_type(embed(W(2, (2, 1), (0, 0))), 2, 2) == CP("2|-")
    assert beta_type(embed(W(2, (1, 2), (1, 0))), 2, 2) == CP("1|1")


def test_beta_type_rejects_non_commuting():
    with pytest.raises(ValueError):
        beta_type(BigPermutation((2, 1, 3, 4)), 2, 2)


@pytest.mark.parametrize("m,n,r,l", [(1, 3, 3, 0), (2, 2, 2, 2), (3, 2, 3, 4)])
def test_reflection_counts(m, n, r, l):
    assert len(reflection_class(m, n, 0)) == r
    assert sum(len(reflection_class(m, n, k)) for k in range(1, m)) == l
    assert len(all_reflections(m, n)) == r + l


def test_reflection_class_types():
    for m in range(1, 4):
        for n in range(2, 4):
            for k in range(m):
                want = reflection_class_type(m, n, k)
                assert {colored_type(x) for x in reflection_class(m, n, k)} == {want}


@pytest.mark.parametrize("m,n,size", [(1, 3, 6), (2, 2, 8), (3, 2, 18)])
def test_group_order(m, n, size):
    assert group_order(m, n) == size
    assert len(set(enumerate_group(m, n))) == size


def test_class_size_examples():
    assert class_size(CP("2|-")) == 2
    assert class_size(CP("1|1")) == 2
    assert class_size(CP("1,1|-")) == 1
    assert [class_size(cp) for cp in gen_colored_partitions(3, 1)] == [1, 1, 1]


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 4) for n in range(1, 4)])
def test_class_sizes_by_exhaustive_count(m, n):
    counts = {}
    for x in enumerate_group(m, n):
        counts[colored_type(x)] = counts.get(colored_type(x), 0) + 1
    assert counts == {cp: class_size(cp) for cp in gen_colored_partitions(m, n)}
    assert check_class_sizes(m, n)


def test_representatives_and_classes():
    for cp in gen_colored_partitions(2, 3):
        rep = representative(cp)
        assert colored_type(rep) == cp
        cls = conjugacy_class(rep)
        assert len(cls) == class_size(cp)
        assert {colored_type(x) for x in cls} == {cp}


def test_normalizer_small():
    found = normalizer_of_tau(2, 2)
    assert len(found) == 8
    assert set(found) == {embed(x) for x in enumerate_group(2, 2)}
    with pytest.raises(BudgetExceeded):
        normalizer_of_tau(3, 4, budget=1000)


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        list(enumerate_group(3, 4, budget=100))


elements = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.tuples(
            st.just(m),
            st.permutations(list(range(1, n + 1))),
            st.lists(st.integers(0, m - 1), min_size=n, max_size=n),
            st.permutations(list(range(1, n + 1))),
            st.lists(st.integers(0, m - 1), min_size=n, max_size=n),
        )
    )
)


@settings(max_examples=200)
@given(elements)
def test_group_laws_and_embedding(data):
    m, u, g, v, b = data
    x, y = W(m, tuple(u), tuple(g)), W(m, tuple(v), tuple(b))
    n = x.n
    assert embed(x * y) == embed(x) * embed(y)
    assert (x * y) * y.inverse() == x
    assert (x * x.inverse()).is_identity()
    assert embed(x).commutes_with(tau(m, n))
    assert unembed(embed(x), m, n) == x
    assert beta_type(embed(x), m, n) == colored_type(x)
    # conjugation preserves the class
    assert colored_type(x.conjugate_by(y)) == colored_type(x)


def test_random_element_deterministic():
    a = random_element(3, 4, random.Random(7))
    b = random_element(3, 4, random.Random(7))
    assert a == b


def test_invalid_elements():
    with pytest.raises(ValueError):
        W(2, (1, 1), (0, 0))
    with pytest.raises(ValueError):
        W(2, (1, 2), (0,))
    with pytest.raises(ValueError):
        W(2, (1, 2), (0, 0)) * W(2, (1,), (0,))


def test_json_round_trip():
    x = W(3, (2, 3, 1), (1, 2, 0))
    assert W.from_json(3, x.to_json()) == x

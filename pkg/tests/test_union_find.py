from app.services.lie_processing.union_find import UnionFind


def test_starts_as_singletons():
    uf = UnionFind(4)
    assert len(uf) == 4
    assert [uf.find(i) for i in range(4)] == [0, 1, 2, 3]


def test_union_merges_and_counts():
    uf = UnionFind(6)
    assert uf.union(0, 1)
    assert uf.union(2, 3)
    assert uf.union(1, 3)
    assert not uf.union(0, 2)
    assert len(uf) == 3
    assert uf.find(0) == uf.find(3)
    assert uf.size[uf.find(0)] == 4


def test_groups_are_sorted_by_member():
    uf = UnionFind(5)
    uf.union(4, 1)
    uf.union(3, 0)
    groups = sorted(uf.groups().values())
    assert groups == [[0, 3], [1, 4], [2]]


def test_long_chain_compresses():
    uf = UnionFind(1000)
    for i in range(999):
        uf.union(i, i + 1)
    root = uf.find(999)
    assert all(uf.find(i) == root for i in range(1000))
    assert len(uf) == 1

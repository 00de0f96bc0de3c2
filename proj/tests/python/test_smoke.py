"""Smoke tests for the augmap python module."""

import random

import pytest

import augmap


def test_sum_map_basics():
    m = augmap.SumMap.build([(1, 10), (2, 20), (3, 30)])
    assert len(m) == 3
    assert m.aug_val() == 60
    assert m.find(2) == 20
    assert m.find(99) is None
    assert m.aug_left(2) == 30
    assert m.aug_range(2, 3) == 50
    assert m.rank(3) == 2
    assert m.select(0) == (1, 10)
    assert m.entries() == [(1, 10), (2, 20), (3, 30)]


def test_sum_map_is_persistent():
    m = augmap.SumMap.build([(i, i) for i in range(100)])
    m2 = m.insert(1000, 5)
    m3 = m.erase(50)
    assert len(m) == 100
    assert len(m2) == 101
    assert len(m3) == 99
    assert m.find(50) == 50
    assert m3.find(50) is None
    assert m2.aug_val() == m.aug_val() + 5


def test_set_algebra_against_python():
    rng = random.Random(7)
    a = {rng.randrange(500): rng.randrange(100) for _ in range(300)}
    b = {rng.randrange(500): rng.randrange(100) for _ in range(300)}
    ma = augmap.SumMap.build(sorted(a.items()))
    mb = augmap.SumMap.build(sorted(b.items()))

    u = augmap.SumMap.union_(ma, mb)
    merged = dict(a)
    merged.update(b)  # second argument wins, matching the default combine
    assert u.entries() == sorted(merged.items())

    i = augmap.SumMap.intersect(ma, mb)
    assert [k for k, _ in i.entries()] == sorted(a.keys() & b.keys())

    d = augmap.SumMap.difference(ma, mb)
    assert [k for k, _ in d.entries()] == sorted(a.keys() - b.keys())


def test_range_queries_against_python():
    rng = random.Random(11)
    entries = {rng.randrange(10_000): rng.randrange(1000) for _ in range(2000)}
    m = augmap.SumMap.build(sorted(entries.items()))
    for _ in range(100):
        lo = rng.randrange(10_000)
        hi = rng.randrange(lo, 10_000)
        expect = sum(v for k, v in entries.items() if lo <= k <= hi)
        assert m.aug_range(lo, hi) == expect
        assert len(m.range(lo, hi)) == sum(1 for k in entries if lo <= k <= hi)


def test_interval_map():
    iv = augmap.IntervalMap.build([(1, 5), (3, 4), (7, 9)])
    assert iv.stab(2)
    assert not iv.stab(6)
    assert iv.stab(9)
    assert iv.report_all(3) == [(1, 5), (3, 4)]
    assert not augmap.IntervalMap().stab(0)
    with pytest.raises(ValueError):
        augmap.IntervalMap.build([(5, 1)])


def test_range_map_against_python():
    rng = random.Random(13)
    pts = {}
    while len(pts) < 500:
        pts[(rng.randrange(1000), rng.randrange(1000))] = rng.randrange(50)
    triples = [(x, y, w) for (x, y), w in pts.items()]
    rm = augmap.RangeMap.build(triples)
    assert len(rm) == 500
    for _ in range(50):
        xl = rng.randrange(1000)
        xr = rng.randrange(xl, 1000)
        yl = rng.randrange(1000)
        yr = rng.randrange(yl, 1000)
        expect = sum(w for (x, y), w in pts.items() if xl <= x <= xr and yl <= y <= yr)
        assert rm.sum(xl, xr, yl, yr) == expect
        got = sorted((x, y) for x, y, _ in rm.report(xl, xr, yl, yr))
        want = sorted((x, y) for (x, y) in pts if xl <= x <= xr and yl <= y <= yr)
        assert got == want


def test_inverted_index_top_k():
    idx = augmap.InvertedIndex.build(
        [("a", 1, 0.5), ("a", 2, 0.7), ("b", 1, 0.2), ("b", 3, 0.9)]
    )
    assert idx.term_count() == 2
    both = augmap.InvertedIndex.q_and(idx.get("a"), idx.get("b"))
    assert both.entries() == [(1, pytest.approx(0.7))]
    either = augmap.InvertedIndex.q_or(idx.get("a"), idx.get("b"))
    assert len(either) == 3
    top = augmap.InvertedIndex.top_k(either, 2)
    assert top[0] == (3, pytest.approx(0.9))
    # docs 1 (0.5 + 0.2) and 2 (0.7) tie at 0.7; lower doc id wins
    assert top[1] == (1, pytest.approx(0.7))


def test_lis_count():
    assert augmap.lis_count([]) == (0, 1)
    assert augmap.lis_count([2, 1, 3]) == (2, 2)
    assert augmap.lis_count([1, 2, 3]) == (3, 1)

    rng = random.Random(17)
    for _ in range(30):
        seq = [rng.randrange(30) for _ in range(rng.randrange(60))]
        length, count = augmap.lis_count(seq)
        # quadratic reference
        if not seq:
            assert (length, count) == (0, 1)
            continue
        lc = []
        for i, x in enumerate(seq):
            best, cnt = 0, 1
            for j in range(i):
                if seq[j] < x:
                    if lc[j][0] > best:
                        best, cnt = lc[j]
                    elif lc[j][0] == best and best > 0:
                        cnt += lc[j][1]
            lc.append((best + 1, cnt))
        expect_len = max(l for l, _ in lc)
        expect_cnt = sum(c for l, c in lc if l == expect_len)
        assert (length, count) == (expect_len, expect_cnt)


def test_parallel_workers_settable():
    augmap.set_workers(2)
    m = augmap.SumMap.build([(i, 1) for i in range(50_000)])
    assert m.aug_val() == 50_000
    augmap.set_workers(1)

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gmpkit.registry import ENV_VAR, BkpEntry, BkpStore, RegistryError, Verdict
from gmpkit.regression import case_names, load_case, run_case

BUNDLED = {
    (2, 20, 6): 8, (4, 30, 3): 22, (3, 12, 9): 3, (5, 12, 5): 6,
    (9, 12, 6): 6, (9, 18, 4): 13, (2, 49, 6): 24, (5, 18, 6): 10,
}


def test_bundled_store_holds_exactly_the_reference_tuples():
    store = BkpStore.bundled()
    assert len(store) == len(BUNDLED)
    assert {(e.q, e.n, e.k): e.d_best for e in store.entries()} == BUNDLED
    assert all(e.source for e in store.entries())


@pytest.mark.parametrize("qnk,d", [((2, 20, 6), 8), ((9, 18, 4), 13), ((2, 49, 6), 24)])
def test_lookup(qnk, d):
    assert BkpStore.bundled().lookup(*qnk).d_best == d


def test_lookup_missing_is_none():
    assert BkpStore.bundled().lookup(2, 7, 4) is None


def test_classify_examples():
    store = BkpStore.bundled()
    v = store.classify(5, 12, 5, 6)
    assert (v.status, str(v), v.gap) == ("best-known", "best-known", 0)
    v = store.classify(2, 20, 6, 7)
    assert (v.status, str(v), v.gap, v.d_best) == ("suboptimal", "suboptimal(1)", 1, 8)
    v = store.classify(3, 12, 9, 4)
    assert (v.status, str(v)) == ("exceeds-reference", "exceeds-reference")
    v = store.classify(2, 7, 4, 3)
    assert (v.status, v.d_best, v.gap) == ("unknown", None, None)


def test_entry_validation():
    with pytest.raises(RegistryError):
        BkpEntry(2, 5, 6, 1)
    with pytest.raises(RegistryError):
        BkpEntry(2, 5, 0, 1)
    with pytest.raises(RegistryError):
        BkpEntry(2, 5, 2, 0)


def test_save_load_round_trip(tmp_path):
    store = BkpStore.bundled()
    path = tmp_path / "bkp.csv"
    store.save(path)
    assert BkpStore.load(path) == store
    assert path.read_text().splitlines()[0] == "q,n,k,d_best,source"


@given(st.lists(st.tuples(st.sampled_from([2, 3, 4, 5, 7, 8, 9]), st.integers(1, 60), st.integers(1, 60),
                          st.integers(1, 60), st.sampled_from(["", "local", "x y"])), max_size=12))
def test_round_trip_property(tmp_path_factory, rows):
    entries = [BkpEntry(q, n, min(k, n), d, src) for q, n, k, d, src in rows]
    store = BkpStore(entries)
    path = tmp_path_factory.mktemp("bkp") / "s.csv"
    store.save(path)
    assert BkpStore.load(path) == store


def test_malformed_files(tmp_path):
    bad_header = tmp_path / "h.csv"
    bad_header.write_text("q,n,k,d\n2,3,1,3\n")
    with pytest.raises(RegistryError, match="header"):
        BkpStore.load(bad_header)
    bad_line = tmp_path / "l.csv"
    bad_line.write_text("q,n,k,d_best,source\n2,3,1,3,ok\n2,three,1,3,x\n")
    with pytest.raises(RegistryError, match="line 3"):
        BkpStore.load(bad_line)
    bad_range = tmp_path / "r.csv"
    bad_range.write_text("q,n,k,d_best,source\n2,3,4,1,x\n")
    with pytest.raises(RegistryError, match="line 2"):
        BkpStore.load(bad_range)
    with pytest.raises(RegistryError):
        BkpStore.load(tmp_path / "missing.csv")


def test_default_resolution_order(tmp_path, monkeypatch):
    own = tmp_path / "own.csv"
    BkpStore([BkpEntry(2, 7, 4, 3, "hamming")]).save(own)
    other = tmp_path / "other.csv"
    BkpStore([BkpEntry(2, 3, 1, 3, "repetition")]).save(other)
    monkeypatch.delenv(ENV_VAR, raising=False)
    assert BkpStore.default() == BkpStore.bundled()
    monkeypatch.setenv(ENV_VAR, str(own))
    assert BkpStore.default().lookup(2, 7, 4).d_best == 3
    assert BkpStore.default(other).lookup(2, 7, 4) is None


def test_every_bundled_code_is_best_known():
    store = BkpStore.bundled()
    seen = 0
    for name in case_names():
        case = load_case(name)
        if "bkp" not in case["expect"]:
            continue
        res = run_case(case, store=store)
        assert res.passed, [c.describe() for c in res.failures()]
        assert [c.got for c in res.checks if c.label == "bkp"] == ["best-known"]
        seen += 1
    assert seen == len(BUNDLED)


def test_verdict_str():
    assert str(Verdict("suboptimal", 3, 6)) == "suboptimal(3)"
    assert str(Verdict("unknown", 3)) == "unknown"

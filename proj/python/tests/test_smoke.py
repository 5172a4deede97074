import pytest

import rxe


def test_parse_counts():
    info = rxe.parse("ac|a*b")
    assert info["nodes"] == 8
    assert info["states"] == 16
    assert rxe.parse("a*")["back_transitions"] == 1


def test_bad_pattern():
    with pytest.raises(rxe.PatternError):
        rxe.parse("*a")
    with pytest.raises(ValueError):
        rxe.match("(", "a")


@pytest.mark.parametrize("backend", ["auto", "naive", "simple", "separator", "decomposed"])
def test_match_all_backends(backend):
    assert rxe.match("ac|a*b", "aab", backend=backend)
    assert not rxe.match("ac|a*b", "ca", backend=backend)


def test_matcher_reuse():
    m = rxe.Matcher("(ab|c)*d", backend="decomposed", cluster_size=6)
    assert m.backend == "decomposed"
    assert m.states == 16
    assert [m.match(s) for s in ["abcd", "abc", "d", b"ccd"]] == [True, False, True, True]


def test_select_backend():
    assert rxe.select_backend(6)["backend"] == "simple"
    assert rxe.select_backend(40)["backend"] == "separator"
    big = rxe.select_backend(500)
    assert big == {"backend": "decomposed", "inner": "separator", "x": 64}
    assert "note" in rxe.select_backend(20, backend="simple")


def test_explain():
    report = rxe.explain("a*")
    assert report["states"] == "4"
    assert report["backend"] == "simple"
    with pytest.raises(ValueError):
        rxe.explain("a", word_size=12)

import pytest

crnf = pytest.importorskip("crnf")

QUARTIC = {
    "n_vars": 1,
    "degree": 4,
    "terms": [
        {"m": 3, "n": 0, "monomials": [{"dz": [3], "dzb": [0], "re": "1", "im": "0"}]},
        {"m": 0, "n": 3, "monomials": [{"dz": [0], "dzb": [3], "re": "1", "im": "0"}]},
        {"m": 4, "n": 0, "monomials": [{"dz": [4], "dzb": [0], "re": "1", "im": "0"}]},
        {"m": 0, "n": 4, "monomials": [{"dz": [0], "dzb": [4], "re": "1", "im": "0"}]},
    ],
}


def pure_part(manifold, m, n):
    for term in manifold["terms"]:
        if (term["m"], term["n"]) == (m, n):
            return term["monomials"]
    return []


def test_report_keys():
    report = crnf.full_normalize(QUARTIC)
    assert list(report) == ["status", "invariants", "map", "manifold", "residuals", "solver_log"]
    assert report["status"] == "normalized"


def test_quartic_term_is_removed():
    report = crnf.full_normalize(QUARTIC)
    assert pure_part(report["manifold"], 4, 0) == []
    assert pure_part(report["manifold"], 3, 0) == QUARTIC["terms"][0]["monomials"]
    assert [e["degree"] for e in report["solver_log"]] == [4]


def test_normalize_then_verify():
    m = crnf.random_manifold(seed=11, n_vars=2, degree=6)
    normal = crnf.full_normalize(m)["manifold"]
    report = crnf.verify(normal)
    assert report["status"] == "normal form verified"
    assert all(r["zero"] for r in report["residuals"])


def test_push_forward_of_map_is_undone():
    m = crnf.random_manifold(seed=5, n_vars=1, degree=7)
    moser = crnf.extended_moser(m)
    assert moser["status"] == "partial normal form"
    image = crnf.push_forward(m, moser["map"])
    assert image == moser["manifold"]


def test_random_is_deterministic():
    assert crnf.random_manifold(3, 2, 6) == crnf.random_manifold(3, 2, 6)


def test_nondegeneracy():
    assert crnf.is_nondegenerate(QUARTIC)
    single = {
        "n_vars": 2,
        "degree": 3,
        "terms": [
            {"m": 3, "n": 0, "monomials": [{"dz": [3, 0], "dzb": [0, 0], "re": "1", "im": "0"}]},
            {"m": 0, "n": 3, "monomials": [{"dz": [0, 0], "dzb": [3, 0], "re": "1", "im": "0"}]},
        ],
    }
    assert not crnf.is_nondegenerate(single)
    with pytest.raises(crnf.DomainError):
        crnf.full_normalize(single)


def test_parse_errors():
    with pytest.raises(crnf.ParseError):
        crnf.verify("{not json")
    bad = dict(QUARTIC, terms=[{"m": 3, "n": 0, "monomials": [{"dz": [3], "dzb": [0], "re": "1/0", "im": "0"}]}])
    with pytest.raises(crnf.ParseError, match="re"):
        crnf.verify(bad)

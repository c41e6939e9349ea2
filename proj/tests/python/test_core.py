import itertools
from fractions import Fraction

import pytest

ekrlab = pytest.importorskip("ekrlab")


def brute_q(n, k):
    sets = list(itertools.combinations(range(n), k))
    meet = sum(1 for a in sets for b in sets if set(a) & set(b))
    return Fraction(meet, len(sets) ** 2)


@pytest.mark.parametrize("n,k", [(5, 2), (7, 3), (9, 2), (9, 4)])
def test_exact_q(n, k):
    assert Fraction(ekrlab.intersection_probability_exact(n, k)) == brute_q(n, k)
    assert ekrlab.intersection_probability(n, k) == pytest.approx(float(brute_q(n, k)))


def test_triangle_fails_ekr():
    H = ekrlab.Hypergraph(5, 2, [[1, 2], [1, 3], [2, 3]])
    assert len(H) == 3
    v = ekrlab.verify_ekr(H)
    assert v == ekrlab.brute_force_ekr(H)
    assert (v["holds"], v["omega"], v["delta"]) == (False, 3, 2)
    w = ekrlab.find_hilton_milner(H, 2)
    assert w is not None and len(w["petals"]) == 2


def test_complete_family_holds():
    H = ekrlab.Hypergraph(7, 3, [list(c) for c in itertools.combinations(range(1, 8), 3)])
    v = ekrlab.verify_ekr(H)
    assert v["holds"] and v["omega"] == 15


def test_lambda_identities():
    assert ekrlab.lambda_t(4.5, 0.3, 0) == 1.0
    assert ekrlab.lambda_t(4.5, 0.3, 1) == pytest.approx(4.5)
    assert ekrlab.lambda_prime_t(4.5, 0.3, 2) == 0.0


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        ekrlab.calc_report(4, 2, phi=1.0)
    with pytest.raises(ValueError):
        ekrlab.parse_hypergraph("3 2 1\n1 9\n")


def test_calc_report_and_trials():
    r = ekrlab.calc_report(7, 3, phi=1.0)
    assert r["q_exact"] == "31/35"
    assert r["lambda_t"][0] == 1.0
    a = ekrlab.run_trials(12, 3, phi=2.0, trials=20, seed=3, workers=1)
    b = ekrlab.run_trials(12, 3, phi=2.0, trials=20, seed=3, workers=4)
    assert a == b
    assert all(t["omega"] >= t["delta"] for t in a)


def test_sweep_and_wilson():
    s = ekrlab.estimate_ekr_curve(7, 3, [0.0, 15.0], 5, 1)
    assert s["schema"] == 1
    assert [row["f_hat"]["estimate"] for row in s["rows"]] == [1.0, 1.0]
    est, lo, hi = ekrlab.wilson_interval(3, 10)
    assert lo < est < hi

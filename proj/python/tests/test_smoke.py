import math

import pytest

import menages

B = [
    [1, 0, 0, 1, 1],
    [0, 0, 1, 1, 0],
    [1, 0, 1, 1, 0],
    [0, 1, 1, 0, 1],
    [1, 0, 0, 1, 1],
]


def test_rook_polynomial():
    assert menages.rook_polynomial(B) == [1, 14, 63, 105, 56, 6]
    assert menages.rook_polynomial(B, "first-row") == [1, 14, 63, 105, 56, 6]
    with pytest.raises(menages.MenagesError):
        menages.rook_polynomial([[1, 0]])


def test_counts():
    assert menages.permanent([[0, 1, 1, 0, 0], [1, 1, 0, 0, 1], [0, 1, 0, 0, 1], [1, 0, 0, 1, 0], [0, 1, 1, 0, 0]]) == 2
    assert menages.seq([0], 6) == [0, 1, 2, 9, 44, 265]
    assert menages.seq([0, 1], 7, "circular")[-1] == 579
    assert menages.count([], 25) == math.factorial(25)
    assert menages.count_allowed([-1, 0, 1], 10) == 89
    assert menages.touchard(30) == menages.count([0, 1], 30, "circular")
    with pytest.raises(ValueError):
        menages.touchard(2)


def test_recurrences():
    rec = menages.rookrec({0, 1})
    assert rec["order"] == 2
    assert rec["coeffs"] == [["1", "2"], ["0", "0", "-1"]]
    assert menages.rookrec([0], max_order=0) is None

    d = menages.info([0], max_complexity=4)
    assert d["terms"][:5] == [0, 1, 2, 9, 44]
    assert d["a_L2"] == menages.count([0], 50)

    assert menages.gfbaltic([-2, -1, 1, 2]) == ([1, -1], [1, -1, -1, -1, -1, 1])
    assert menages.verify([0, 1], "circular")


def test_text_output_matches_cli():
    status, out = menages._menages.rookrec([0, 1])
    assert status == 0
    assert out == "[[1 + t, 1 + 3*t + t^2], [1 + 2*t, -t^2]]\n"
    status, out = menages._menages.gfbaltic([-2, -1, 0, 1, 2])
    assert out == "(1 - t)/(1 - 2*t - 2*t^3 + t^5)\n"

"""Exact counts, rook polynomials and guessed recurrences for permutations
with restricted displacements.

Sets are given as iterables of ints. Modes are "straight", "circular" and
"allowed". Every count is an exact Python int.
"""

import json as _json

from . import _menages
from ._menages import (
    MenagesError,
    count,
    count_allowed,
    permanent,
    rook_polynomial,
    seq,
    touchard,
)

__all__ = [
    "MenagesError",
    "count",
    "count_allowed",
    "gfbaltic",
    "info",
    "permanent",
    "rook_polynomial",
    "rookrec",
    "seq",
    "touchard",
    "verify",
]


def _sorted(s):
    return sorted(set(int(x) for x in s))


def rookrec(s, mode="straight", max_order=12, max_tdeg=12, held_out=10):
    """C-finite recurrence of the rook polynomials as a dict, or None."""
    _, out = _menages.rookrec(_sorted(s), mode, max_order, max_tdeg, held_out, True)
    return _json.loads(out)["recurrence"]


def info(s, mode="straight", l1=20, l2=50, max_complexity=10, max_degree=-1, held_out=10):
    """First l1 terms, the holonomic recurrence (None on FAIL) and a(l2)."""
    _, out = _menages.info(_sorted(s), mode, l1, l2, max_complexity, max_degree, held_out, True)
    d = _json.loads(out)
    d["terms"] = [int(a) for a in d["terms"]]
    if d.get("a_L2") is not None:
        d["a_L2"] = int(d["a_L2"])
    return d


def gfbaltic(s, n=0, max_order=12, held_out=10):
    """Rational generating function of the allowed-mode counts, or None."""
    _, out = _menages.gfbaltic(_sorted(s), n, max_order, held_out, True)
    gf = _json.loads(out)["gf"]
    if gf is None:
        return None
    return tuple([int(c) for c in gf[k]] for k in ("numerator", "denominator"))


def verify(s, mode="straight", n_max=8):
    """True when every count for n = 1..n_max matches the permanent."""
    _, out = _menages.verify(_sorted(s), mode, n_max, True)
    return _json.loads(out)["pass"]


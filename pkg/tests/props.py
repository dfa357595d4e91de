"""Random inputs shared by the property suites and the acceptance run."""
import itertools
import random

from quarticstrata.poly import PolyRing
from quarticstrata.resolution import BettiTable

P = 32003
S = PolyRing(["x0", "x1", "x2", "x3"])


def random_ideal_gens(seed, max_gens=4, max_deg=3, max_terms=3):
    r = random.Random(seed)
    gens = []
    for _ in range(r.randint(1, max_gens)):
        d = r.randint(1, max_deg)
        mons = S.monomials_of_degree(d)
        picks = r.sample(mons, r.randint(1, min(max_terms, len(mons))))
        gens.append(S.from_terms([(m, r.randrange(1, P)) for m in picks]))
    return gens


def koszul_table(degrees, nvars=4):
    """Betti table of a complete intersection with the given generator degrees."""
    e = {}
    for k in range(len(degrees) + 1):
        for sub in itertools.combinations(degrees, k):
            key = (k, sum(sub))
            e[key] = e.get(key, 0) + 1
    return BettiTable(e, nvars)

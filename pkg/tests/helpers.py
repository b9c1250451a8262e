"""Small constructors shared by the test modules."""

from fusioncensus.catalog import build_pointed_cyclic
from fusioncensus.cyclo import Cyclo


def z2(F=-1, R=None, d2=None):
    """Z2 data with [F_2^{222}]_1^1 = F (+-1), optional R_1^{22} and p_2."""
    base = build_pointed_cyclic(2, 1 if F == -1 else 0)
    Rs = None
    if R is not None:
        Rs = {(1, 1, 1): 1, (1, 2, 2): 1, (2, 1, 2): 1, (2, 2, 1): Cyclo(R)}
    P = None
    if d2 is not None:
        # d_2 = p_2 / [F_2^{222}]_1^1
        P = {1: 1, 2: Cyclo(d2) * F}
    return base.replace(R=Rs, P=P)

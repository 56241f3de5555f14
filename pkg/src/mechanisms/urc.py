"""Uniform rule with constraints (URC)"""

from src.mechanisms.base import PartialFill, TwoPhaseMechanism
from src.model import classify_objects
from src.uniform_rule import PeakVector, uniform_rule


def urc_phase1(c):
    """Uniform rule on every excess-demand column, peaks everywhere else"""
    rows = [list(lottery.shares) for lottery in c]
    for a in sorted(classify_objects(c).ed):
        for i, share in enumerate(uniform_rule(PeakVector(c.column(a)))):
            rows[i][a] = share
    return PartialFill.from_rows(rows)


class URCMechanism(TwoPhaseMechanism):
    """URC^{alpha,beta}: efficient, strategy proof, envy free and anonymous"""

    tag = 'urc'
    name = 'URC'

    def phase1(self, c):
        return urc_phase1(c)


def urc(c, alpha=None, beta=None):
    return URCMechanism(alpha, beta).allocate(c)

"""Proportional division of chances (PDC)"""

from src.mechanisms.base import PartialFill, TwoPhaseMechanism
from src.model import classify_objects


def pdc_phase1(c):
    """Excess-demand columns are split in proportion to the peaks"""
    rows = [list(lottery.shares) for lottery in c]
    for a in sorted(classify_objects(c).ed):
        total = c.column_sum(a)
        for i in range(c.n):
            rows[i][a] = c[i][a] / total
    return PartialFill.from_rows(rows)


class PDCMechanism(TwoPhaseMechanism):
    tag = 'pdc'
    name = 'PDC'

    def phase1(self, c):
        return pdc_phase1(c)


def pdc(c, alpha=None, beta=None):
    return PDCMechanism(alpha, beta).allocate(c)

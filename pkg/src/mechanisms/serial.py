"""Serial dictatorship for chances (SDC)"""

from src.mechanisms.base import PartialFill, TwoPhaseMechanism
from src.model import ONE, ZERO


def serial_fill(c, agents, rows, remaining):
    """Let each agent in turn take min(remaining supply, peak) of every object.

    ``rows`` and ``remaining`` are updated in place.
    """
    for i in agents:
        for a in range(c.n):
            taken = min(remaining[a], c[i][a])
            rows[i][a] = taken
            remaining[a] -= taken


def sdc_phase1(c, alpha):
    rows = [[ZERO] * c.n for _ in range(c.n)]
    remaining = [ONE] * c.n
    serial_fill(c, alpha, rows, remaining)
    return PartialFill.from_rows(rows)


class SDCMechanism(TwoPhaseMechanism):
    """SDC^{alpha,beta}: agents earlier in alpha are served their peak first"""

    tag = 'sdc'
    name = 'SDC'

    def phase1(self, c):
        alpha, _ = self.orders(c.n)
        return sdc_phase1(c, alpha)


def sdc(c, alpha=None, beta=None):
    return SDCMechanism(alpha, beta).allocate(c)

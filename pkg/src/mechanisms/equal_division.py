"""Equal division: every agent gets 1/n of every object"""

from src.mechanisms.base import MechanismBase
from src.model import RandomMatching


class EqualDivisionMechanism(MechanismBase):
    tag = 'equal'
    name = 'Equal-Division'

    def allocate(self, c):
        return RandomMatching.constant(c.n)


def equal_division(c):
    return EqualDivisionMechanism().allocate(c)

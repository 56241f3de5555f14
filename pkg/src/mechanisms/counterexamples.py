"""
Three-agent mechanisms that each fail exactly one property of URC.

- Except: gives agent 1 its peak, then serves agents 2 and 3 in an order
  that depends on agent 1's report (not replacement monotonic).
- ME: a fixed permutation matrix chosen by the excess-demand set (bossy).
- MEU: URC everywhere except one hand-set profile (manipulable).
"""

import logging
from fractions import Fraction

from src.mechanisms.base import MechanismBase, Ordering, PartialFill, phase2_fill
from src.mechanisms.serial import serial_fill
from src.mechanisms.urc import urc
from src.model import ONE, ZERO, RandomMatching, classify_objects

logger = logging.getLogger(__name__)

THIRD = Fraction(1, 3)
UNIFORM_PEAK = (THIRD, THIRD, THIRD)

# The special profile on which MEU departs from URC
PROFILE_E = (
    (Fraction(2, 3), Fraction(1, 3), ZERO),
    (Fraction(1, 3), Fraction(2, 3), ZERO),
    (THIRD, THIRD, THIRD),
)
MEU_AT_E = (
    (Fraction(2, 3), ZERO, THIRD),
    (ZERO, Fraction(2, 3), THIRD),
    (THIRD, THIRD, THIRD),
)


class ExceptMechanism(MechanismBase):
    tag = 'except'
    name = 'Except'
    supported_n = 3

    @staticmethod
    def service_order(c):
        """Agents 2 and 3 (0-based 1, 2) in the order they are served"""
        return (1, 2) if c[0].shares == UNIFORM_PEAK else (2, 1)

    def phase1(self, c):
        rows = [[ZERO] * 3 for _ in range(3)]
        rows[0] = list(c[0].shares)
        remaining = [ONE - share for share in c[0].shares]
        serial_fill(c, self.service_order(c), rows, remaining)
        return PartialFill.from_rows(rows)

    def allocate(self, c):
        self.check_supported(c)
        alpha = Ordering((0,) + self.service_order(c))
        return phase2_fill(self.phase1(c), alpha, Ordering.identity(3))


class MEMechanism(MechanismBase):
    tag = 'me'
    name = 'ME'
    supported_n = 3

    def allocate(self, c):
        self.check_supported(c)
        if classify_objects(c).ed == frozenset({0}):
            targets = (0, 1, 2)
        else:
            targets = (1, 0, 2)
        return RandomMatching(tuple(
            tuple(ONE if a == targets[i] else ZERO for a in range(3)) for i in range(3)
        ))


class MEUMechanism(MechanismBase):
    tag = 'meu'
    name = 'MEU'
    supported_n = 3

    def allocate(self, c):
        self.check_supported(c)
        if c.rows == PROFILE_E:
            logger.debug("MEU hand-set outcome at the special profile")
            return RandomMatching(MEU_AT_E)
        return urc(c)


def except_mech(c):
    return ExceptMechanism().allocate(c)


def me_mech(c):
    return MEMechanism().allocate(c)


def meu_mech(c):
    return MEUMechanism().allocate(c)

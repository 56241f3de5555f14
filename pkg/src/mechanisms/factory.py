"""Factory function for creating mechanisms"""

import logging

from src.errors import InstanceError
from .urc import URCMechanism
from .serial import SDCMechanism
from .proportional import PDCMechanism
from .equal_division import EqualDivisionMechanism
from .counterexamples import ExceptMechanism, MEMechanism, MEUMechanism

logger = logging.getLogger(__name__)

MECHANISM_TAGS = ('urc', 'sdc', 'pdc', 'equal', 'except', 'me', 'meu')


def create_mechanism(tag, alpha=None, beta=None):
    """Factory function to create the mechanism for a tag

    Args:
        tag (str): One of 'urc', 'sdc', 'pdc', 'equal', 'except', 'me' or 'meu'
        alpha: Agent sequence for phase 2 (and SDC's serial order); identity if None
        beta: Object sequence for phase 2; identity if None

    Returns:
        MechanismBase: An instance of the matching mechanism class
    """
    key = tag.strip().lower()
    if key == 'urc':
        return URCMechanism(alpha, beta)
    elif key == 'sdc':
        return SDCMechanism(alpha, beta)
    elif key == 'pdc':
        return PDCMechanism(alpha, beta)

    fixed = {
        'equal': EqualDivisionMechanism,
        'except': ExceptMechanism,
        'me': MEMechanism,
        'meu': MEUMechanism,
    }
    if key not in fixed:
        raise InstanceError(f"unknown mechanism {tag!r}; expected one of {', '.join(MECHANISM_TAGS)}")
    if alpha is not None or beta is not None:
        logger.warning("%s uses fixed sequences; ignoring alpha/beta", key)
    return fixed[key]()

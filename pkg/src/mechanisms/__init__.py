"""
Mechanisms for dividing chances.

This package contains one class per mechanism:
- URC (uniform rule with constraints)
- SDC (serial dictatorship for chances)
- PDC (proportional division of chances)
- Equal-Division
- Except, ME and MEU (three-agent counterexamples)
"""

from .base import (
    MechanismBase,
    MechanismId,
    Ordering,
    PartialFill,
    TwoPhaseMechanism,
    phase2_fill,
)
from .urc import URCMechanism, urc, urc_phase1
from .serial import SDCMechanism, sdc, sdc_phase1
from .proportional import PDCMechanism, pdc, pdc_phase1
from .equal_division import EqualDivisionMechanism, equal_division
from .counterexamples import (
    ExceptMechanism,
    MEMechanism,
    MEUMechanism,
    except_mech,
    me_mech,
    meu_mech,
)
from .factory import MECHANISM_TAGS, create_mechanism

__all__ = [
    'MechanismBase',
    'MechanismId',
    'Ordering',
    'PartialFill',
    'TwoPhaseMechanism',
    'phase2_fill',
    'URCMechanism',
    'urc',
    'urc_phase1',
    'SDCMechanism',
    'sdc',
    'sdc_phase1',
    'PDCMechanism',
    'pdc',
    'pdc_phase1',
    'EqualDivisionMechanism',
    'equal_division',
    'ExceptMechanism',
    'MEMechanism',
    'MEUMechanism',
    'except_mech',
    'me_mech',
    'meu_mech',
    'MECHANISM_TAGS',
    'create_mechanism',
]

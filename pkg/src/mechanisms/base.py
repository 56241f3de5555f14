"""Base classes for division-of-chances mechanisms and the shared phase-2 fill"""

import logging
from dataclasses import dataclass

from src.errors import InstanceError, PreconditionError, UnsupportedInstanceError
from src.model import ONE, ZERO, RandomMatching, format_rational, to_fraction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Ordering:
    """A sequence of all agents (alpha) or of all objects (beta), 0-based"""
    order: tuple

    def __post_init__(self):
        order = tuple(int(x) for x in self.order)
        if sorted(order) != list(range(len(order))):
            raise InstanceError(f"sequence must list each of 0..{len(order) - 1} once, got {list(order)}")
        object.__setattr__(self, 'order', order)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def parse(cls, text):
        """Parse a comma-separated index list such as "2,0,1" """
        try:
            return cls(tuple(int(part) for part in text.split(',') if part.strip() != ''))
        except ValueError:
            raise InstanceError(f"invalid sequence {text!r}; expected comma-separated indices")

    @property
    def n(self):
        return len(self.order)

    def __iter__(self):
        return iter(self.order)

    def __getitem__(self, t):
        return self.order[t]

    def reversed(self):
        return Ordering(tuple(reversed(self.order)))


def as_ordering(value):
    """Accept an Ordering, a sequence of ints, a "0,1,2" string or None"""
    if value is None or isinstance(value, Ordering):
        return value
    if isinstance(value, str):
        return Ordering.parse(value)
    return Ordering(tuple(value))


@dataclass(frozen=True)
class PartialFill:
    """Phase-1 state: w[i][a] is the amount of object a already in agent i's bucket"""
    w: tuple

    def __post_init__(self):
        w = tuple(tuple(to_fraction(x) for x in row) for row in self.w)
        n = len(w)
        for i, row in enumerate(w):
            if len(row) != n:
                raise InstanceError(f"bucket {i} has {len(row)} entries, expected {n}")
            if any(x < 0 for x in row):
                raise InstanceError(f"bucket {i} holds a negative amount")
        object.__setattr__(self, 'w', w)

    @classmethod
    def from_rows(cls, rows):
        return cls(tuple(tuple(row) for row in rows))

    @property
    def n(self):
        return len(self.w)

    @property
    def tank_remaining(self):
        return tuple(ONE - sum((row[a] for row in self.w), ZERO) for a in range(self.n))

    @property
    def bucket_free(self):
        return tuple(ONE - sum(row, ZERO) for row in self.w)


def phase2_fill(state, alpha, beta):
    """Pour the remaining supply into the free bucket capacity.

    Agents are visited in alpha order and tanks in beta order; each step moves
    min(free capacity, remaining liquid) and advances past whichever side is
    exhausted. Entries only grow, so any same-sidedness on excess-supply
    objects is preserved.
    """
    n = state.n
    alpha = as_ordering(alpha) or Ordering.identity(n)
    beta = as_ordering(beta) or Ordering.identity(n)
    if alpha.n != n or beta.n != n:
        raise InstanceError(f"sequences must have length {n}")

    tank = list(state.tank_remaining)
    free = list(state.bucket_free)
    for a, left in enumerate(tank):
        if left < 0:
            raise PreconditionError(f"object {a} is over-allocated by {format_rational(-left)}")
    for i, left in enumerate(free):
        if left < 0:
            raise PreconditionError(f"bucket {i} is over-full by {format_rational(-left)}")

    w = [list(row) for row in state.w]
    t = s = 0
    while t < n and s < n:
        i, a = alpha[t], beta[s]
        if free[i] == 0:
            t += 1
            continue
        if tank[a] == 0:
            s += 1
            continue
        amount = min(free[i], tank[a])
        w[i][a] += amount
        free[i] -= amount
        tank[a] -= amount

    leftover = sum(tank, ZERO)
    if leftover != 0 or any(free):
        raise PreconditionError(f"slack imbalance: {format_rational(leftover)} of supply left after filling")
    return RandomMatching(tuple(tuple(row) for row in w))


@dataclass(frozen=True)
class MechanismId:
    """A mechanism tag with its sequence parameters"""
    tag: str
    alpha: tuple = None
    beta: tuple = None

    @classmethod
    def parse(cls, tag, alpha=None, beta=None):
        """Normalize CLI-style input: sequences may be "0,1,2" strings"""
        alpha = as_ordering(alpha)
        beta = as_ordering(beta)
        return cls(
            tag.strip().lower(),
            alpha.order if alpha is not None else None,
            beta.order if beta is not None else None,
        )

    def build(self):
        from src.mechanisms.factory import create_mechanism
        return create_mechanism(self.tag, self.alpha, self.beta)

    def label(self):
        parts = []
        if self.alpha is not None:
            parts.append('alpha=' + ','.join(str(x) for x in self.alpha))
        if self.beta is not None:
            parts.append('beta=' + ','.join(str(x) for x in self.beta))
        return f"{self.tag}[{';'.join(parts)}]" if parts else self.tag

    def to_dict(self):
        return {
            'tag': self.tag,
            'alpha': list(self.alpha) if self.alpha is not None else None,
            'beta': list(self.beta) if self.beta is not None else None,
        }

    @classmethod
    def from_dict(cls, data):
        alpha = data.get('alpha')
        beta = data.get('beta')
        return cls(
            data['tag'],
            tuple(alpha) if alpha is not None else None,
            tuple(beta) if beta is not None else None,
        )


class MechanismBase:
    """Base class for mechanisms mapping a profile to a random matching"""

    tag = None
    name = None
    # None means any number of agents
    supported_n = None

    def __init__(self, alpha=None, beta=None):
        self.alpha = as_ordering(alpha)
        self.beta = as_ordering(beta)

    @property
    def identifier(self):
        return MechanismId(
            self.tag,
            self.alpha.order if self.alpha is not None else None,
            self.beta.order if self.beta is not None else None,
        )

    def orders(self, n):
        """The (alpha, beta) pair to use for n agents, identity by default"""
        alpha = self.alpha or Ordering.identity(n)
        beta = self.beta or Ordering.identity(n)
        if alpha.n != n:
            raise InstanceError(f"alpha lists {alpha.n} agents but the profile has {n}")
        if beta.n != n:
            raise InstanceError(f"beta lists {beta.n} objects but the profile has {n}")
        return alpha, beta

    def check_supported(self, c):
        if self.supported_n is not None and c.n != self.supported_n:
            raise UnsupportedInstanceError(
                f"{self.name} is only defined for n = {self.supported_n}, got n = {c.n}"
            )

    def allocate(self, c):
        """Compute the random matching for profile c - to be implemented by subclasses"""
        raise NotImplementedError("Subclasses must implement allocate()")

    def __call__(self, c):
        return self.allocate(c)

    def __repr__(self):
        return f"{type(self).__name__}({self.identifier.label()})"


class TwoPhaseMechanism(MechanismBase):
    """Mechanisms that build a partial fill and then run phase2_fill"""

    def phase1(self, c):
        """Build the phase-1 partial fill - to be implemented by subclasses"""
        raise NotImplementedError("Subclasses must implement phase1()")

    def allocate(self, c):
        self.check_supported(c)
        alpha, beta = self.orders(c.n)
        state = self.phase1(c)
        logger.debug("%s phase 1 buckets: %s", self.name, state.w)
        return phase2_fill(state, alpha, beta)

"""
Core model for dividing chances.

An instance has n agents and n objects. Every agent reports an ideal lottery
(a probability distribution over objects) and prefers lotteries closer to it
in l1 distance. An outcome is a random matching: a bistochastic matrix whose
row i is agent i's lottery and whose column a divides object a.

All numbers are ``fractions.Fraction``; nothing is ever rounded.
"""

import enum
import string
from dataclasses import dataclass
from fractions import Fraction

from src.errors import InstanceError, PreconditionError

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(value):
    """Convert an int, Fraction or decimal/ratio string to a Fraction.

    Floats are rejected.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InstanceError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise InstanceError(f"invalid rational {value!r}")
    if isinstance(value, float):
        raise InstanceError(
            f"floating point value {value!r} not accepted; pass a string like '0.6' or a Fraction"
        )
    raise InstanceError(f"not a rational number: {value!r}")


def format_rational(value):
    """Reduced "num/den" form, e.g. 3/5, 0/1, 1/1"""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def default_object_names(n):
    if n <= len(string.ascii_lowercase):
        return tuple(string.ascii_lowercase[:n])
    return tuple(f"o{k + 1}" for k in range(n))


def default_agent_names(n):
    return tuple(str(k + 1) for k in range(n))


@dataclass(frozen=True)
class IdealLottery:
    """An agent's peak: nonnegative shares over objects summing to exactly 1"""
    shares: tuple

    def __post_init__(self):
        shares = tuple(to_fraction(s) for s in self.shares)
        if not shares:
            raise InstanceError("an ideal lottery needs at least one object")
        for a, share in enumerate(shares):
            if share < 0:
                raise InstanceError(f"share for object {a} is negative: {format_rational(share)}")
        total = sum(shares, ZERO)
        if total != ONE:
            raise InstanceError(f"shares sum to {format_rational(total)}, not 1")
        object.__setattr__(self, 'shares', shares)

    @classmethod
    def of(cls, *values):
        return cls(tuple(values))

    @classmethod
    def uniform(cls, n):
        return cls(tuple(Fraction(1, n) for _ in range(n)))

    @classmethod
    def unit(cls, n, a):
        return cls(tuple(ONE if b == a else ZERO for b in range(n)))

    def __len__(self):
        return len(self.shares)

    def __getitem__(self, a):
        return self.shares[a]

    def __iter__(self):
        return iter(self.shares)


@dataclass(frozen=True)
class Profile:
    """One ideal lottery per agent; square (as many agents as objects)"""
    lotteries: tuple
    agents: tuple = None
    objects: tuple = None

    def __post_init__(self):
        lotteries = tuple(
            lot if isinstance(lot, IdealLottery) else IdealLottery(tuple(lot))
            for lot in self.lotteries
        )
        n = len(lotteries)
        if n == 0:
            raise InstanceError("a profile needs at least one agent")
        for i, lot in enumerate(lotteries):
            if len(lot) != n:
                raise InstanceError(
                    f"agent {i} ranks {len(lot)} objects but the profile has {n} agents"
                )
        agents = tuple(self.agents) if self.agents is not None else default_agent_names(n)
        objects = tuple(self.objects) if self.objects is not None else default_object_names(n)
        _check_names('agent', agents, n)
        _check_names('object', objects, n)
        object.__setattr__(self, 'lotteries', lotteries)
        object.__setattr__(self, 'agents', agents)
        object.__setattr__(self, 'objects', objects)

    @classmethod
    def from_rows(cls, rows, agents=None, objects=None):
        return cls(tuple(IdealLottery(tuple(row)) for row in rows), agents, objects)

    @property
    def n(self):
        return len(self.lotteries)

    @property
    def rows(self):
        return tuple(lot.shares for lot in self.lotteries)

    def __getitem__(self, i):
        return self.lotteries[i]

    def __iter__(self):
        return iter(self.lotteries)

    def column(self, a):
        return tuple(lot[a] for lot in self.lotteries)

    def column_sum(self, a):
        return sum(self.column(a), ZERO)

    def replace(self, i, lottery):
        """The profile (c'_i, c_-i)"""
        if not isinstance(lottery, IdealLottery):
            lottery = IdealLottery(tuple(lottery))
        if len(lottery) != self.n:
            raise InstanceError(f"replacement lottery has {len(lottery)} shares, expected {self.n}")
        lotteries = list(self.lotteries)
        lotteries[i] = lottery
        return Profile(tuple(lotteries), self.agents, self.objects)

    def permute(self, permutation):
        """The profile c' with c'_{H(i)} = c_i"""
        if permutation.n != self.n:
            raise InstanceError(f"permutation of {permutation.n} agents applied to {self.n} agents")
        source = permutation.inverse()
        return Profile(tuple(self.lotteries[source(j)] for j in range(self.n)), self.agents, self.objects)

    def same_lotteries(self, other):
        """Exact equality of the peaks, ignoring names"""
        return self.rows == other.rows


def _check_names(kind, names, n):
    if len(names) != n:
        raise InstanceError(f"expected {n} {kind} names, got {len(names)}")
    if len(set(names)) != n:
        raise InstanceError(f"{kind} names must be distinct")


@dataclass(frozen=True)
class RandomMatching:
    """An n x n matrix of chances, rows = agents, columns = objects.

    Construction only checks shape; bistochasticity is checked by
    ``validate_matching`` because intermediate states are not bistochastic.
    """
    chances: tuple

    def __post_init__(self):
        chances = tuple(tuple(to_fraction(x) for x in row) for row in self.chances)
        n = len(chances)
        for i, row in enumerate(chances):
            if len(row) != n:
                raise InstanceError(f"row {i} has {len(row)} entries, expected {n}")
        object.__setattr__(self, 'chances', chances)

    @classmethod
    def from_rows(cls, rows):
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(ONE if i == a else ZERO for a in range(n)) for i in range(n)))

    @classmethod
    def constant(cls, n):
        share = Fraction(1, n)
        return cls(tuple(tuple(share for _ in range(n)) for _ in range(n)))

    @property
    def n(self):
        return len(self.chances)

    @property
    def rows(self):
        return self.chances

    def __getitem__(self, i):
        return self.chances[i]

    def row(self, i):
        return self.chances[i]

    def column(self, a):
        return tuple(row[a] for row in self.chances)


class ObjectKind(enum.Enum):
    EXCESS_DEMAND = 'ed'
    EXCESS_SUPPLY = 'es'
    UNANIMOUS = 'un'


@dataclass(frozen=True)
class ObjectClassification:
    """Partition of the objects by the column sums of the peaks"""
    ed: frozenset
    es: frozenset
    un: frozenset

    def kind(self, a):
        if a in self.ed:
            return ObjectKind.EXCESS_DEMAND
        if a in self.es:
            return ObjectKind.EXCESS_SUPPLY
        if a in self.un:
            return ObjectKind.UNANIMOUS
        raise InstanceError(f"object {a} is not part of this classification")


@dataclass(frozen=True)
class Permutation:
    """A bijection H on agent indices"""
    mapping: tuple

    def __post_init__(self):
        mapping = tuple(int(x) for x in self.mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise InstanceError(f"not a permutation of 0..{len(mapping) - 1}: {list(mapping)}")
        object.__setattr__(self, 'mapping', mapping)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def swap(cls, n, i, j):
        mapping = list(range(n))
        mapping[i], mapping[j] = mapping[j], mapping[i]
        return cls(tuple(mapping))

    @property
    def n(self):
        return len(self.mapping)

    def __call__(self, i):
        return self.mapping[i]

    def inverse(self):
        inverse = [0] * self.n
        for i, target in enumerate(self.mapping):
            inverse[target] = i
        return Permutation(tuple(inverse))


def l1_distance(p, q):
    """Sum over objects of |p_a - q_a|"""
    p = tuple(p)
    q = tuple(q)
    if len(p) != len(q):
        raise InstanceError(f"cannot compare lotteries of length {len(p)} and {len(q)}")
    return sum((abs(x - y) for x, y in zip(p, q)), ZERO)


def distances(c, matching):
    """Per-agent distance between ideal lottery and allocation"""
    _check_dimensions(c, matching)
    return tuple(l1_distance(c[i], matching[i]) for i in range(c.n))


def classify_objects(c):
    ed, es, un = set(), set(), set()
    for a in range(c.n):
        total = c.column_sum(a)
        if total > ONE:
            ed.add(a)
        elif total < ONE:
            es.add(a)
        else:
            un.add(a)
    return ObjectClassification(frozenset(ed), frozenset(es), frozenset(un))


def is_same_sided(c, matching, classification=None):
    _check_dimensions(c, matching)
    classification = classification or classify_objects(c)
    for i in range(c.n):
        row = matching[i]
        for a in range(c.n):
            peak, share = c[i][a], row[a]
            if a in classification.ed and share > peak:
                return False
            if a in classification.es and share < peak:
                return False
            if a in classification.un and share != peak:
                return False
    return True


def ed_shortfall(c, matching, i, classification=None):
    """Total amount agent i is rationed below its peak on ED objects"""
    classification = classification or classify_objects(c)
    return sum((c[i][a] - matching[i][a] for a in classification.ed), ZERO)


def es_surplus(c, matching, i, classification=None):
    """Total amount agent i receives above its peak on ES objects"""
    classification = classification or classify_objects(c)
    return sum((matching[i][a] - c[i][a] for a in classification.es), ZERO)


def sameside_welfare(c, matching, i):
    """Agent i's distance computed from ED objects alone.

    Only valid for same-sided matchings; otherwise the formula does not
    equal the distance and PreconditionError is raised.
    """
    classification = classify_objects(c)
    if not is_same_sided(c, matching, classification):
        raise PreconditionError("welfare formula requires a same-sided matching")
    return 2 * ed_shortfall(c, matching, i, classification)


def validate_matching(matching):
    """True iff the matrix is square, nonnegative and bistochastic"""
    n = matching.n
    for row in matching.rows:
        if len(row) != n or any(x < 0 for x in row):
            return False
        if sum(row, ZERO) != ONE:
            return False
    for a in range(n):
        if sum(matching.column(a), ZERO) != ONE:
            return False
    return True


def is_between(lottery, first, second):
    """Whether lottery lies in the coordinate box spanned by first and second and sums to 1"""
    lottery, first, second = tuple(lottery), tuple(first), tuple(second)
    if not len(lottery) == len(first) == len(second):
        return False
    if sum(lottery, ZERO) != ONE:
        return False
    return all(
        min(x, y) <= z <= max(x, y) for z, x, y in zip(lottery, first, second)
    )


def _check_dimensions(c, matching):
    if c.n != matching.n:
        raise InstanceError(f"profile has {c.n} agents but matching has {matching.n} rows")

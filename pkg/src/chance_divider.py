import logging

from dotenv import load_dotenv

from src.axioms import (
    TABLE1_PROPERTIES,
    Property,
    check_anonymity,
    check_efficiency,
    check_envy_freeness,
    check_welfare_equivalence,
)
from src.config import default_jobs, default_seed
from src.errors import InstanceError
from src.fixtures import SeedCase, run_seed_case
from src.fuzzing import FuzzConfig, as_mechanism, falsify, falsify_around, run_table1
from src.mechanisms.base import MechanismId
from src.utilities import Utils

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)


class ChanceDivider:
    """
    Main class for dividing chances with one mechanism and testing
    that mechanism against the axioms
    """

    def __init__(self, mechanism='urc', alpha=None, beta=None, denominator=6, samples=500,
                 seed=None, misreport_budget=32, jobs=None):
        """
        Initialize the divider

        Parameters:
        mechanism (str): Mechanism tag - 'urc', 'sdc', 'pdc', 'equal', 'except', 'me' or 'meu'
        alpha: Agent sequence, e.g. "0,1,2" (identity if None)
        beta: Object sequence, e.g. "0,1,2" (identity if None)
        denominator (int): Grid 1/D for sampled profiles and misreports
        samples (int): Number of random profiles per fuzzed property
        seed (int): Base seed (CHANCE_SPLIT_SEED if None)
        misreport_budget (int): Misreports tried per agent and profile
        jobs (int): Worker processes for fuzzing (CHANCE_SPLIT_JOBS if None)
        """
        self.identifier = MechanismId.parse(mechanism, alpha, beta)
        self.mechanism = self.identifier.build()
        self.denominator = denominator
        self.samples = samples
        self.seed = default_seed() if seed is None else seed
        self.misreport_budget = misreport_budget
        self.jobs = default_jobs() if jobs is None else jobs

    def config(self, n=3):
        """The fuzz configuration for n agents"""
        return FuzzConfig(
            n=n,
            denominator=self.denominator,
            samples=self.samples,
            seed=self.seed,
            misreport_budget=self.misreport_budget,
            jobs=self.jobs,
        )

    def divide(self, c):
        """Random matching for profile c"""
        matching = self.mechanism(c)
        logger.info("%s on %d agents", self.mechanism.name, c.n)
        return matching

    def report(self, c):
        """Printable matching and distance table for profile c"""
        return Utils.format_matching_output(c, self.divide(c), f"{self.mechanism.name}:")

    def check(self, prop, c, other=None, agent=None, misreport=None):
        """Check one property on profile c.

        Efficiency, envy-freeness and welfare equivalence are decided on c.
        With agent and misreport the single deviation is checked; otherwise
        deviations around c are searched within the budget.
        """
        other = as_mechanism(other) if other is not None else None
        if prop is Property.EFFICIENT:
            return check_efficiency(c, self.divide(c), self.mechanism)
        if prop is Property.ENVY_FREE:
            return check_envy_freeness(c, self.divide(c), self.mechanism)
        if prop is Property.WELFARE_EQUIVALENT:
            if other is None:
                raise InstanceError("welfare equivalence needs a second mechanism")
            return check_welfare_equivalence(self.mechanism, other, c)
        if (agent is None) != (misreport is None):
            raise InstanceError("agent and misreport must be given together")
        if agent is not None:
            if prop is Property.ANONYMOUS:
                raise InstanceError("anonymity is checked over relabellings, not single misreports")
            if not 0 <= agent < c.n:
                raise InstanceError(f"agent index {agent} out of range for {c.n} agents")
            case = SeedCase(fixture_id='', property=prop, profile=c, agent=agent, lottery=misreport)
            return run_seed_case(case, self.mechanism)
        return falsify_around(prop, self.mechanism, c, self.config(c.n))

    def anonymity(self, c, permutation):
        return check_anonymity(self.mechanism, c, permutation)

    def fuzz(self, prop, n=3, other=None):
        """Search random profiles for a counterexample to prop"""
        return falsify(prop, self.mechanism, self.config(n), other=other)

    def fuzz_all(self, n=3, properties=TABLE1_PROPERTIES):
        """Fuzz several properties; returns {Property: AxiomVerdict}"""
        verdicts = {}
        for prop in properties:
            verdicts[prop] = self.fuzz(prop, n)
            logger.info("%s: %s", prop.label, verdicts[prop].result.value)
        return verdicts

    def table1(self, n=3):
        """All comparison-table mechanisms, regardless of the configured one"""
        return run_table1(self.config(n))

from src.mechanisms.base import MechanismBase, MechanismId


class StubMechanism(MechanismBase):
    """A mechanism that returns preset matchings, for testing the axiom checks"""

    tag = 'stub'
    name = 'Stub'

    def __init__(self, outcomes, default=None):
        """
        Parameters:
        outcomes (dict): Profile rows -> RandomMatching to return
        default (RandomMatching): Returned for any other profile
        """
        super().__init__()
        self.outcomes = {tuple(rows): matching for rows, matching in outcomes.items()}
        self.default = default
        self.calls = []

    @property
    def identifier(self):
        return MechanismId(self.tag)

    def allocate(self, c):
        self.calls.append(c.rows)
        if c.rows in self.outcomes:
            return self.outcomes[c.rows]
        if self.default is None:
            raise KeyError(f"no stub outcome for {c.rows}")
        return self.default

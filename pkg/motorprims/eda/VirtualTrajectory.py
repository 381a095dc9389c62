import logging as log
import numpy as np
from motorprims.eda.Oscillation import Oscillation
from motorprims.eda.Submovement import Submovement, VT_TERMS
from motorprims.Errors import ContractViolationError


class VirtualTrajectory:
    """
    Zero-force trajectory as an ordered sum of submovements and oscillations.  Never mutated: superimpose returns
    a new trajectory that shares the existing term objects.
    """

    def __init__(self, terms=(), n_dofs=None):
        self.terms = tuple(terms)
        dims = {term.n_dofs for term in self.terms}
        if len(dims) > 1 or (n_dofs is not None and dims and dims != {n_dofs}):
            log.error('Virtual trajectory terms have mismatched dimensions {0}'.format(sorted(dims)))
            raise ContractViolationError('all virtual-trajectory terms must have the same dimension')
        self.n_dofs = dims.pop() if dims else n_dofs

    def superimpose(self, *terms):
        return VirtualTrajectory(self.terms + tuple(terms), self.n_dofs)

    def __zero(self):
        return np.zeros(self.n_dofs) if self.n_dofs is not None else 0.0

    # ======================================================================================================================================================================================

    def position(self, t):
        return sum((term.position(t) for term in self.terms), self.__zero())

    def velocity(self, t):
        return sum((term.velocity(t) for term in self.terms), self.__zero())

    def acceleration(self, t):
        return sum((term.acceleration(t) for term in self.terms), self.__zero())

    def evaluate(self, t):
        position, velocity = self.__zero(), self.__zero()
        for term in self.terms:
            p, v = term.evaluate(t)
            position = position + p
            velocity = velocity + v
        return position, velocity

    def final_position(self):
        """ Where the trajectory settles once every submovement has finished (oscillations count by their centre). """
        return sum((term.final_position for term in self.terms), self.__zero())

    def retarget(self, goal, onset, duration):
        """ Superimposes a submovement from the current resting point to goal, starting at onset. """
        goal = np.asarray(goal, dtype=float)
        return self.superimpose(Submovement(np.zeros(len(goal)), goal - self.final_position(), duration, onset))

    # ======================================================================================================================================================================================

    def to_dict(self):
        return {'n_dofs': self.n_dofs, 'terms': [term.to_dict() for term in self.terms]}

    @classmethod
    def from_dict(cls, data):
        terms = []
        for term in data.get('terms', []):
            if term.get('type') == VT_TERMS.SUBMOVEMENT:
                terms.append(Submovement.from_dict(term))
            elif term.get('type') == VT_TERMS.OSCILLATION:
                terms.append(Oscillation.from_dict(term))
            else:
                raise ContractViolationError('unknown virtual-trajectory term type {0}'.format(term.get('type')))
        return cls(terms, data.get('n_dofs'))

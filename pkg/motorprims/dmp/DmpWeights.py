import json
import logging as log
import numpy as np
from motorprims.dmp.CanonicalSystem import CanonicalSystem, DMP_KINDS
from motorprims.dmp.ForcingTerm import ForcingTerm
from motorprims.Errors import ContractViolationError


class DmpWeights:
    """
    Everything a learned primitive needs to be replayed: shared canonical parameters, one weight row per DOF
    over shared centers/widths, and the per-DOF scale, goal and start used while learning.
    """

    def __init__(self, kind, tau, alpha_z, beta_z, alpha_s, centers, widths, weights, scale, goal, y0):
        self.kind = kind
        self.tau = float(tau)
        self.alpha_z = float(alpha_z)
        self.beta_z = float(beta_z)
        self.alpha_s = float(alpha_s)
        self.centers = np.asarray(centers, dtype=float).ravel()
        self.widths = np.asarray(widths, dtype=float).ravel()
        self.weights = np.atleast_2d(np.asarray(weights, dtype=float))
        self.scale = np.asarray(scale, dtype=float).ravel()
        self.goal = np.asarray(goal, dtype=float).ravel()
        self.y0 = np.asarray(y0, dtype=float).ravel()

        n_dofs = self.weights.shape[0]
        if self.weights.shape[1] != len(self.centers) or any(len(v) != n_dofs for v in (self.scale, self.goal, self.y0)):
            log.error('Inconsistent weight set: weights {0}, {1} centers, scale/goal/y0 lengths {2}/{3}/{4}'.format(
                self.weights.shape, len(self.centers), len(self.scale), len(self.goal), len(self.y0)))
            raise ContractViolationError('inconsistent weight set dimensions')

    @property
    def n_basis(self):
        return len(self.centers)

    @property
    def n_dofs(self):
        return self.weights.shape[0]

    def canonical(self):
        return CanonicalSystem(kind=self.kind, tau=self.tau, alpha_s=self.alpha_s)

    def forcing_terms(self):
        return [ForcingTerm(self.kind, self.weights[i], self.centers, self.widths, self.scale[i]) for i in range(self.n_dofs)]

    # ======================================================================================================================================================================================

    def to_dict(self):
        return {
            'kind': self.kind,
            'tau': self.tau,
            'alpha_z': self.alpha_z,
            'beta_z': self.beta_z,
            'alpha_s': self.alpha_s,
            'N': self.n_basis,
            'weights': self.weights.tolist(),
            'centers': self.centers.tolist(),
            'widths': self.widths.tolist(),
            'scale': self.scale.tolist(),
            'goal': self.goal.tolist(),
            'y0': self.y0.tolist(),
        }

    @classmethod
    def from_dict(cls, data):
        if data.get('kind') not in DMP_KINDS.ALL:
            raise ContractViolationError('weight file kind must be one of {0}'.format(DMP_KINDS.ALL))
        weights = cls(data['kind'], data['tau'], data['alpha_z'], data['beta_z'], data['alpha_s'], data['centers'],
                      data['widths'], data['weights'], data['scale'], data['goal'], data['y0'])
        if int(data.get('N', weights.n_basis)) != weights.n_basis:
            raise ContractViolationError('weight file N does not match the number of centers')
        return weights

    def save(self, path):
        with open(path, 'w') as fh:
            json.dump(self.to_dict(), fh, indent=2)
        log.info('Wrote [{0}] x [{1}] {2} weights to [{3}]'.format(self.n_dofs, self.n_basis, self.kind, path))

    @classmethod
    def load(cls, path):
        with open(path, 'r') as fh:
            return cls.from_dict(json.load(fh))

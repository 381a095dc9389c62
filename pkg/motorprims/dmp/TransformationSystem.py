import logging as log
import numpy as np
from motorprims.dmp.CanonicalSystem import DMP_DEFAULTS
from motorprims.Errors import ContractViolationError


class TransformationSystem:
    """
    tau * ydot = z
    tau * zdot = alpha_z * (beta_z * (g - y) - z) + f + coupling
    """

    def __init__(self, alpha_z=None, beta_z=None, tau=1.0, goal=0.0, y=0.0, z=0.0):
        self.alpha_z = DMP_DEFAULTS.ALPHA_Z if alpha_z is None else float(alpha_z)
        self.beta_z = self.alpha_z / 4.0 if beta_z is None else float(beta_z)
        self.tau = float(tau)
        self.goal = float(goal)
        self.y = float(y)
        self.z = float(z)

        if not (self.alpha_z > 0 and self.beta_z > 0 and self.tau > 0):
            log.error('Transformation system needs positive alpha_z, beta_z, tau, got [{0}], [{1}], [{2}]'.format(self.alpha_z, self.beta_z, self.tau))
            raise ContractViolationError('alpha_z, beta_z and tau must be positive')

    def velocity(self):
        return self.z / self.tau

    def acceleration(self, f_val, coupling=0.0):
        return self._zdot(f_val, coupling) / self.tau

    def _zdot(self, f_val, coupling):
        return (self.alpha_z * (self.beta_z * (self.goal - self.y) - self.z) + f_val + coupling) / self.tau

    def step(self, f_val, dt, coupling=0.0):
        if not dt > 0:
            raise ContractViolationError('dt must be positive')
        if not (np.isfinite(f_val) and np.isfinite(coupling)):
            log.error('Rejecting non-finite forcing [{0}] / coupling [{1}]'.format(f_val, coupling))
            raise ContractViolationError('forcing value must be finite')
        zdot = self._zdot(f_val, coupling)
        ydot = self.z / self.tau
        self.y += ydot * dt
        self.z += zdot * dt
        return self.y, self.z

    def system_matrix(self):
        """ Unforced dynamics of (y, z) relative to the goal. """
        return np.array([[0.0, 1.0 / self.tau],
                         [-self.alpha_z * self.beta_z / self.tau, -self.alpha_z / self.tau]])

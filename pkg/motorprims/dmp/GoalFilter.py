import logging as log
import numpy as np
from motorprims.Errors import ContractViolationError


class GoalFilter:
    """
    First-order low-pass filter on a piecewise-constant commanded goal:  tau * gdot = alpha_g * (g0 - g).
    """

    def __init__(self, alpha_g, tau, g, g0=None, integration=None):
        self.alpha_g = float(alpha_g)
        self.tau = float(tau)
        self.g = np.array(g, dtype=float)
        self.g0 = self.g.copy() if g0 is None else np.array(g0, dtype=float)
        self.integration = GOAL_INTEGRATION.EXACT if integration is None else integration

        if not (self.alpha_g > 0 and self.tau > 0):
            raise ContractViolationError('alpha_g and tau must be positive')
        if self.integration not in GOAL_INTEGRATION.ALL:
            raise ContractViolationError('integration must be one of {0}'.format(GOAL_INTEGRATION.ALL))

    def set_target(self, g0):
        log.info('Goal filter target switched from {0} to {1}'.format(self.g0, g0))
        self.g0 = np.array(g0, dtype=float)

    def step(self, dt):
        if not dt > 0:
            raise ContractViolationError('dt must be positive')
        if self.integration == GOAL_INTEGRATION.EXACT:
            self.g = self.g0 + (self.g - self.g0) * np.exp(-self.alpha_g * dt / self.tau)
        else:
            self.g = self.g + self.alpha_g * (self.g0 - self.g) / self.tau * dt
        return self.g

    @staticmethod
    def closed_form(t, g_old, g_new, alpha_g, tau):
        g_old = np.asarray(g_old, dtype=float)
        g_new = np.asarray(g_new, dtype=float)
        return g_new + (g_old - g_new) * np.exp(-alpha_g * t / tau)


class SecondOrderGoalFilter:
    """
    Critically damped goal system used under rhythmic primitives:
        tau^2 * gdd = -alpha_z * beta_z * (g - g0) - alpha_z * tau * gd
    """

    def __init__(self, tau, alpha_z, beta_z, g, g0=None):
        self.tau = float(tau)
        self.alpha_z = float(alpha_z)
        self.beta_z = float(beta_z)
        self.g = np.array(g, dtype=float)
        self.gdot = np.zeros_like(self.g)
        self.g0 = self.g.copy() if g0 is None else np.array(g0, dtype=float)

        if not (self.tau > 0 and self.alpha_z > 0 and self.beta_z > 0):
            raise ContractViolationError('tau, alpha_z and beta_z must be positive')

    def set_target(self, g0):
        log.info('Second-order goal target switched from {0} to {1}'.format(self.g0, g0))
        self.g0 = np.array(g0, dtype=float)

    def step(self, dt):
        if not dt > 0:
            raise ContractViolationError('dt must be positive')
        gddot = (-self.alpha_z * self.beta_z * (self.g - self.g0) - self.alpha_z * self.tau * self.gdot) / self.tau ** 2
        self.g = self.g + self.gdot * dt
        self.gdot = self.gdot + gddot * dt
        return self.g


class GOAL_INTEGRATION:
    EULER = 'euler'
    EXACT = 'exact'
    ALL = (EULER, EXACT)

import logging as log
import numpy as np
from motorprims.Errors import ContractViolationError


class CanonicalSystem:

    def __init__(self, kind=None, tau=1.0, alpha_s=None):
        self.kind = DMP_KINDS.DISCRETE if kind is None else kind
        self.tau = float(tau)
        self.alpha_s = DMP_DEFAULTS.ALPHA_S if alpha_s is None else float(alpha_s)

        if self.kind not in DMP_KINDS.ALL:
            log.error('Unknown canonical system kind [{0}]'.format(self.kind))
            raise ContractViolationError('kind must be one of {0}'.format(DMP_KINDS.ALL))
        if not self.tau > 0:
            raise ContractViolationError('tau must be positive, got {0}'.format(self.tau))
        if self.kind == DMP_KINDS.DISCRETE and not self.alpha_s > 0:
            raise ContractViolationError('alpha_s must be positive, got {0}'.format(self.alpha_s))

    def evaluate(self, t):
        if self.kind == DMP_KINDS.DISCRETE:
            return np.exp(-self.alpha_s * np.asarray(t, dtype=float) / self.tau)
        return np.mod(np.asarray(t, dtype=float) / self.tau, 2.0 * np.pi)

    def with_tau(self, tau):
        return CanonicalSystem(kind=self.kind, tau=tau, alpha_s=self.alpha_s)


class DMP_KINDS:
    DISCRETE = 'discrete'
    RHYTHMIC = 'rhythmic'
    ALL = (DISCRETE, RHYTHMIC)


class DMP_DEFAULTS:
    ALPHA_Z = 10.0
    BETA_Z = 2.5
    ALPHA_S = 1.0
    N_DISCRETE = 50
    N_RHYTHMIC = 40
    N_SAMPLES = 100
    RHYTHMIC_AMPLITUDE = 1.0

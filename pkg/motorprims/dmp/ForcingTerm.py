import logging as log
import numpy as np
from motorprims.dmp.CanonicalSystem import DMP_KINDS
from motorprims.Errors import ContractViolationError


class ForcingTerm:
    """
    Normalised weighted sum of basis functions.  Gaussian bases for discrete movements, von Mises bases for rhythmic ones.
    scale is (g - y0) for discrete movements and the amplitude r for rhythmic ones.

    Basis indices are 0-based.
    """

    DEGENERATE_NORMALISER = 1e-300

    def __init__(self, kind, weights, centers, widths, scale):
        self.kind = kind
        self.weights = np.asarray(weights, dtype=float).ravel()
        self.centers = np.asarray(centers, dtype=float).ravel()
        self.widths = np.asarray(widths, dtype=float).ravel()
        self.scale = float(scale)
        self.degenerate_count = 0

        if self.kind not in DMP_KINDS.ALL:
            raise ContractViolationError('kind must be one of {0}'.format(DMP_KINDS.ALL))
        if len(self.centers) < 1 or len(self.weights) != len(self.centers) or len(self.widths) != len(self.centers):
            log.error('Forcing term needs matching weights/centers/widths, got [{0}]/[{1}]/[{2}]'.format(len(self.weights), len(self.centers), len(self.widths)))
            raise ContractViolationError('weights, centers and widths must have the same non-zero length')
        if np.any(self.widths <= 0):
            raise ContractViolationError('basis widths must be strictly positive')

    @property
    def n_basis(self):
        return len(self.centers)

    @staticmethod
    def default_basis(kind, n_basis, alpha_s=1.0):
        if n_basis < 1:
            raise ContractViolationError('n_basis must be at least 1')
        i = np.arange(n_basis, dtype=float)
        if kind == DMP_KINDS.RHYTHMIC:
            return 2.0 * np.pi * i / n_basis, np.full(n_basis, float(n_basis))
        if n_basis == 1:
            return np.ones(1), np.ones(1)
        centers = np.exp(-alpha_s * i / (n_basis - 1))
        widths = 1.0 / np.diff(centers) ** 2
        return centers, np.append(widths, widths[-1])

    @classmethod
    def zeros(cls, kind, n_basis, scale, alpha_s=1.0):
        centers, widths = cls.default_basis(kind, n_basis, alpha_s)
        return cls(kind, np.zeros(n_basis), centers, widths, scale)

    # ======================================================================================================================================================================================

    def basis(self, i, s):
        if not 0 <= i < self.n_basis:
            raise ContractViolationError('basis index {0} outside [0, {1})'.format(i, self.n_basis))
        return float(self.basis_matrix(np.atleast_1d(s))[0, i])

    def basis_matrix(self, s):
        """ phi[j, i] = phi_i(s_j) """
        s = np.asarray(s, dtype=float).reshape(-1, 1)
        if self.kind == DMP_KINDS.DISCRETE:
            return np.exp(-self.widths * (s - self.centers) ** 2)
        return np.exp(self.widths * (np.cos(s - self.centers) - 1.0))

    def evaluate(self, s):
        phi = self.basis_matrix(s)[0]
        total = phi.sum()
        if total < self.DEGENERATE_NORMALISER:
            if self.degenerate_count == 0:
                log.warning('Basis normaliser underflowed at s=[{0}], forcing term returns 0'.format(s))
            self.degenerate_count += 1
            return 0.0
        weighted = float(self.weights @ phi) / total
        if self.kind == DMP_KINDS.DISCRETE:
            return weighted * float(s) * self.scale
        return weighted * self.scale

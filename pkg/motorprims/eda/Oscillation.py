import logging as log
import numpy as np
from motorprims.eda.Submovement import VT_TERMS
from motorprims.Errors import ContractViolationError


class Oscillation:
    """
    Periodic kinematic primitive with angular frequency omega and phase offset:

        sinusoid   center + amplitude * sin(omega t + phase)                 (one amplitude per DOF)
        circle     center + radius * [cos(omega t + phase), sin(omega t + phase)]
    """

    def __init__(self, center, amplitude, omega, phase=0.0, shape=None):
        self.shape = OSCILLATION_SHAPES.SINUSOID if shape is None else shape
        self.center = np.array(center, dtype=float, ndmin=1)
        self.amplitude = np.array(amplitude, dtype=float, ndmin=1)
        self.omega = float(omega)
        self.phase = float(phase)

        if self.shape not in OSCILLATION_SHAPES.ALL:
            raise ContractViolationError('shape must be one of {0}'.format(OSCILLATION_SHAPES.ALL))
        if not self.omega > 0:
            raise ContractViolationError('omega must be positive')
        if self.shape == OSCILLATION_SHAPES.CIRCLE and (self.center.shape != (2,) or self.amplitude.shape != (1,)):
            log.error('A circle needs a planar center and one radius, got {0} and {1}'.format(self.center, self.amplitude))
            raise ContractViolationError('circle needs a 2-vector center and a scalar radius')
        if self.shape == OSCILLATION_SHAPES.SINUSOID and self.center.shape != self.amplitude.shape:
            raise ContractViolationError('sinusoid center and amplitude must have the same length')
        self.center.flags.writeable = False
        self.amplitude.flags.writeable = False

    @classmethod
    def circle(cls, center, radius, omega, phase=0.0):
        return cls(center, radius, omega, phase, OSCILLATION_SHAPES.CIRCLE)

    @property
    def n_dofs(self):
        return len(self.center)

    @property
    def period(self):
        return 2.0 * np.pi / self.omega

    @property
    def final_position(self):
        return self.center

    # ======================================================================================================================================================================================

    def __harmonics(self, t):
        angle = self.omega * t + self.phase
        if self.shape == OSCILLATION_SHAPES.CIRCLE:
            return self.amplitude[0] * np.array([np.cos(angle), np.sin(angle)]), self.amplitude[0] * np.array([-np.sin(angle), np.cos(angle)])
        return self.amplitude * np.sin(angle), self.amplitude * np.cos(angle)

    def position(self, t):
        wave, _ = self.__harmonics(t)
        return self.center + wave

    def velocity(self, t):
        _, quadrature = self.__harmonics(t)
        return self.omega * quadrature

    def acceleration(self, t):
        wave, _ = self.__harmonics(t)
        return -self.omega ** 2 * wave

    def evaluate(self, t):
        wave, quadrature = self.__harmonics(t)
        return self.center + wave, self.omega * quadrature

    # ======================================================================================================================================================================================

    def to_dict(self):
        return {'type': VT_TERMS.OSCILLATION, 'shape': self.shape, 'center': self.center.tolist(), 'amplitude': self.amplitude.tolist(),
                'omega_rad_per_s': self.omega, 'phase_rad': self.phase}

    @classmethod
    def from_dict(cls, data):
        return cls(data['center'], data['amplitude'], data['omega_rad_per_s'], data.get('phase_rad', 0.0), data.get('shape'))


class OSCILLATION_SHAPES:
    SINUSOID = 'sinusoid'
    CIRCLE = 'circle'
    ALL = (SINUSOID, CIRCLE)

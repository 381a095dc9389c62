import logging as log
import numpy as np
from motorprims.Errors import ContractViolationError


class Submovement:
    """
    Discrete kinematic primitive: rests at start until onset, moves to goal over duration with a unimodal speed
    profile, then rests at goal.  The default basis is minimum jerk, 10s^3 - 15s^4 + 6s^5 in normalised time.

    A custom basis is any callable s -> (f, df/ds, d2f/ds2) with f(0) = 0 and f(1) = 1.
    """

    def __init__(self, start, goal, duration, onset=0.0, basis=None):
        self.start = np.array(start, dtype=float, ndmin=1)
        self.goal = np.array(goal, dtype=float, ndmin=1)
        self.duration = float(duration)
        self.onset = float(onset)
        self.basis = Submovement.min_jerk if basis is None else basis

        if self.start.shape != self.goal.shape or self.start.ndim != 1:
            log.error('Submovement start {0} and goal {1} differ in shape'.format(self.start.shape, self.goal.shape))
            raise ContractViolationError('start and goal must be vectors of equal length')
        if not self.duration > 0 or self.onset < 0:
            log.error('Submovement needs duration > 0 and onset >= 0, got [{0}] and [{1}]'.format(self.duration, self.onset))
            raise ContractViolationError('duration must be positive and onset non-negative')
        self.start.flags.writeable = False
        self.goal.flags.writeable = False

    @property
    def n_dofs(self):
        return len(self.start)

    @property
    def displacement(self):
        return self.goal - self.start

    @property
    def final_position(self):
        return self.goal

    @staticmethod
    def min_jerk(s):
        return 10 * s ** 3 - 15 * s ** 4 + 6 * s ** 5, 30 * s ** 2 - 60 * s ** 3 + 30 * s ** 4, 60 * s - 180 * s ** 2 + 120 * s ** 3

    # ======================================================================================================================================================================================

    def __profile(self, t):
        s = (t - self.onset) / self.duration
        if s <= 0.0:
            return 0.0, 0.0, 0.0
        if s >= 1.0:
            return 1.0, 0.0, 0.0
        return self.basis(s)

    def position(self, t):
        f, _, _ = self.__profile(t)
        return self.start + self.displacement * f

    def velocity(self, t):
        _, df, _ = self.__profile(t)
        return self.displacement * df / self.duration

    def acceleration(self, t):
        _, _, ddf = self.__profile(t)
        return self.displacement * ddf / self.duration ** 2

    def evaluate(self, t):
        f, df, _ = self.__profile(t)
        return self.start + self.displacement * f, self.displacement * df / self.duration

    # ======================================================================================================================================================================================

    def to_dict(self):
        if self.basis is not Submovement.min_jerk:
            raise ContractViolationError('only minimum-jerk submovements can be serialised')
        return {'type': VT_TERMS.SUBMOVEMENT, 'start': self.start.tolist(), 'goal': self.goal.tolist(),
                'duration_s': self.duration, 'onset_s': self.onset}

    @classmethod
    def from_dict(cls, data):
        return cls(data['start'], data['goal'], data['duration_s'], data.get('onset_s', 0.0))


class VT_TERMS:
    SUBMOVEMENT = 'submovement'
    OSCILLATION = 'oscillation'

import numpy as np


class ObstacleCoupling:
    """
    Steering coupling that rotates the planned velocity away from a point obstacle:
        C = gamma * R * pdot * theta * exp(-beta * theta)
    with theta the angle between (o - p) and pdot and R a fixed planar rotation by +90 degrees (sign=-1 for -90).
    ANGLE_EPSILON in the angle's denominator keeps theta above zero when the obstacle is dead ahead, so a plan aimed
    straight at it still turns to the side of R.
    """

    ROTATION = np.array([[0.0, -1.0], [1.0, 0.0]])
    DEGENERATE_NORM = 1e-9
    ANGLE_EPSILON = 1e-10

    def __init__(self, obstacle, gamma, beta, sign=1):
        self.obstacle = np.asarray(obstacle, dtype=float)
        self.gamma = float(gamma)
        self.beta = float(beta)
        self.sign = 1 if sign >= 0 else -1
        self.degenerate_count = 0

    def evaluate(self, p, pdot):
        """ Counts every call that falls back to zero: resting plan or plan sitting on the obstacle. """
        if self.is_degenerate(p, pdot, self.obstacle):
            self.degenerate_count += 1
            return np.zeros(2)
        return self.coupling_term(p, pdot, self.obstacle, self.gamma, self.beta, self.sign)

    @staticmethod
    def is_degenerate(p, pdot, o):
        distance = np.linalg.norm(np.asarray(o, dtype=float) - np.asarray(p, dtype=float))
        return bool(np.linalg.norm(pdot) < ObstacleCoupling.DEGENERATE_NORM or distance < ObstacleCoupling.DEGENERATE_NORM)

    @staticmethod
    def coupling_term(p, pdot, o, gamma, beta, sign=1):
        p = np.asarray(p, dtype=float)
        pdot = np.asarray(pdot, dtype=float)
        if ObstacleCoupling.is_degenerate(p, pdot, o):
            return np.zeros(2)
        to_obstacle = np.asarray(o, dtype=float) - p
        denominator = np.linalg.norm(to_obstacle) * np.linalg.norm(pdot) + ObstacleCoupling.ANGLE_EPSILON
        theta = np.arccos(np.clip(float(to_obstacle @ pdot) / denominator, -1.0, 1.0))
        rotation = ObstacleCoupling.ROTATION if sign >= 0 else ObstacleCoupling.ROTATION.T
        return gamma * (rotation @ pdot) * theta * np.exp(-beta * theta)

    def to_dict(self):
        return {'obstacle_m': self.obstacle.tolist(), 'gamma': self.gamma, 'beta': self.beta, 'sign': self.sign}

    @classmethod
    def from_dict(cls, data):
        return cls(data['obstacle_m'], data['gamma'], data['beta'], data.get('sign', 1))

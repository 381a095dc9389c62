import logging as log
import numpy as np
from motorprims.dynamics.PlanarChain import ExternalForce
from motorprims.Errors import ContractViolationError


class ContactWall:
    """
    Half-plane penalty obstacle acting on the end-effector only.  Free space is the side the normal points into;
    penetration is  offset - normal . p  and the wall vanishes at removal_time.
    """

    def __init__(self, normal, offset, stiffness=None, damping=None, removal_time=np.inf):
        self.normal = np.asarray(normal, dtype=float)
        self.offset = float(offset)
        self.stiffness = CONTACT_DEFAULTS.STIFFNESS if stiffness is None else float(stiffness)
        self.damping = CONTACT_DEFAULTS.DAMPING if damping is None else float(damping)
        self.removal_time = float(removal_time)

        if self.normal.shape != (2,) or abs(np.linalg.norm(self.normal) - 1.0) > 1e-9:
            log.error('Wall normal must be a unit 2-vector, got {0}'.format(self.normal))
            raise ContractViolationError('wall normal must be a unit 2-vector')
        if self.stiffness < 0 or self.damping < 0:
            raise ContractViolationError('wall stiffness and damping must be non-negative')

    def penetration(self, p):
        return self.offset - float(self.normal @ p)

    def contact_force(self, p, pdot, t):
        if t >= self.removal_time:
            return np.zeros(2)
        delta = self.penetration(p)
        if delta <= 0.0:
            return np.zeros(2)
        magnitude = self.stiffness * delta - self.damping * float(self.normal @ pdot)
        # the wall can push but never pull
        return self.normal * max(magnitude, 0.0)

    def external_force(self, p, pdot, t):
        force = self.contact_force(p, pdot, t)
        return ExternalForce(point_force=force, active=bool(np.any(force != 0.0)))

    # ======================================================================================================================================================================================

    def to_dict(self):
        return {
            'normal': self.normal.tolist(),
            'offset_m': self.offset,
            'stiffness_N_per_m': self.stiffness,
            'damping_Ns_per_m': self.damping,
            'removal_time_s': None if np.isinf(self.removal_time) else self.removal_time,
        }

    @classmethod
    def from_dict(cls, data):
        removal = data.get('removal_time_s')
        return cls(normal=data['normal'], offset=data['offset_m'], stiffness=data.get('stiffness_N_per_m'),
                   damping=data.get('damping_Ns_per_m'), removal_time=np.inf if removal is None else removal)


class CONTACT_DEFAULTS:
    STIFFNESS = 1e4
    DAMPING = 1e2

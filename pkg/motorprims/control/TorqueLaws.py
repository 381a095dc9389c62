import logging as log
import numpy as np
from motorprims.control.InverseKinematics import InverseKinematics, CONTROL_DEFAULTS
from motorprims.Errors import ContractViolationError


def check_gain_matrix(matrix, dim, name, definite=True):
    matrix = np.asarray(matrix, dtype=float)
    if matrix.shape != (dim, dim):
        log.error('Gain [{0}] has shape {1}, expected ({2}, {2})'.format(name, matrix.shape, dim))
        raise ContractViolationError('{0} must be {1}x{1}, got {2}'.format(name, dim, matrix.shape))
    if np.max(np.abs(matrix - matrix.T)) > 1e-12:
        raise ContractViolationError('{0} must be symmetric'.format(name))
    smallest = np.min(np.linalg.eigvalsh(matrix))
    if smallest <= 0 if definite else smallest < -1e-12:
        log.error('Gain [{0}] is not positive {1}definite (smallest eigenvalue {2})'.format(name, '' if definite else 'semi-', smallest))
        raise ContractViolationError('{0} must be positive {1}definite'.format(name, '' if definite else 'semi-'))
    return matrix


class PdGains:

    def __init__(self, Kq, Bq):
        dim = np.asarray(Kq).shape[0]
        self.Kq = check_gain_matrix(Kq, dim, 'Kq')
        self.Bq = check_gain_matrix(Bq, dim, 'Bq')

    def to_dict(self):
        return {'Kq_Nm_per_rad': self.Kq.tolist(), 'Bq_Nms_per_rad': self.Bq.tolist()}

    @classmethod
    def from_dict(cls, data):
        return cls(data['Kq_Nm_per_rad'], data['Bq_Nms_per_rad'])


class SlidingModeGains:

    def __init__(self, Lambda1, Lambda2):
        self.Lambda1 = check_gain_matrix(Lambda1, 2, 'Lambda1')
        self.Lambda2 = check_gain_matrix(Lambda2, np.asarray(Lambda2).shape[0], 'Lambda2')

    def to_dict(self):
        return {'Lambda1_per_s': self.Lambda1.tolist(), 'Lambda2_Nms_per_rad': self.Lambda2.tolist()}

    @classmethod
    def from_dict(cls, data):
        return cls(data['Lambda1_per_s'], data['Lambda2_Nms_per_rad'])


class TorqueLaws:

    @staticmethod
    def inverse_dynamics_torque(chain, q_des, qdot_des, qddot_des):
        qdot_des = chain.check_vector(qdot_des, 'qdot_des')
        qddot_des = chain.check_vector(qddot_des, 'qddot_des')
        return chain.mass_matrix(q_des) @ qddot_des + chain.coriolis_matrix(q_des, qdot_des) @ qdot_des

    @staticmethod
    def pd_feedback(gains, q_des, qdot_des, q, qdot):
        q_des, qdot_des, q, qdot = (np.asarray(v, dtype=float) for v in (q_des, qdot_des, q, qdot))
        if not (q_des.shape == qdot_des.shape == q.shape == qdot.shape == (gains.Kq.shape[0],)):
            raise ContractViolationError('PD feedback inputs must all have {0} entries'.format(gains.Kq.shape[0]))
        return gains.Kq @ (q_des - q) + gains.Bq @ (qdot_des - qdot)

    @staticmethod
    def sliding_mode_torque(chain, gains, state, p_des, pdot_des, pddot_des, dls_damping=None, activation_ratio=None):
        """
        Velocity-based redundancy resolution without joint-velocity integration:
            qdot_r  = J+ (pdot_des + L1 (p_des - p))
            qddot_r = J+ (pddot_des + L1 (pdot_des - pdot) - Jdot qdot)
            tau     = M qddot_r + C qdot_r - L2 (qdot - qdot_r)
        """
        dls_damping = CONTROL_DEFAULTS.DLS_DAMPING if dls_damping is None else dls_damping
        q, qdot = state.q, state.qdot
        jacobian = chain.jacobian(q)
        j_pinv = InverseKinematics.damped_pinv(jacobian, dls_damping, activation_ratio)

        p = chain.forward_kinematics(q)
        pdot = jacobian @ qdot
        qdot_r = j_pinv @ (pdot_des + gains.Lambda1 @ (p_des - p))
        qddot_r = j_pinv @ (pddot_des + gains.Lambda1 @ (pdot_des - pdot) - chain.jacobian_dot(q, qdot) @ qdot)
        return chain.mass_matrix(q) @ qddot_r + chain.coriolis_matrix(q, qdot) @ qdot_r - gains.Lambda2 @ (qdot - qdot_r)

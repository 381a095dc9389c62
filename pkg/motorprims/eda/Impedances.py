import logging as log
import numpy as np
from motorprims.control.TorqueLaws import check_gain_matrix
from motorprims.eda.VirtualTrajectory import VirtualTrajectory
from motorprims.Errors import ContractViolationError


class ImpedanceInterface:
    """
    A mechanical impedance maps displacement from its virtual trajectory to a joint torque contribution.
    Operators are superposable; none of them inverts a Jacobian.
    """

    op_type = None
    reference = None

    def force(self, chain, state, t):
        raise NotImplementedError

    def with_reference(self, reference):
        raise ContractViolationError('{0} has no virtual trajectory'.format(type(self).__name__))

    def to_dict(self):
        raise NotImplementedError

    @staticmethod
    def _task_state(chain, state):
        jacobian = chain.jacobian(state.q)
        return chain.forward_kinematics(state.q), jacobian @ state.qdot, jacobian

    @staticmethod
    def from_dict(data):
        op_type = data.get('type')
        for cls in (JointImpedance, TaskImpedance, JointDamping, RepulsivePoint, EnergyModulatedTask):
            if cls.op_type == op_type:
                return cls._from_dict(data)
        log.error('Unknown impedance operator type [{0}]'.format(op_type))
        raise ContractViolationError('unknown impedance operator type {0}'.format(op_type))


class JointImpedance(ImpedanceInterface):

    op_type = 'joint_impedance'

    def __init__(self, Kq, Bq, reference):
        dim = np.asarray(Kq).shape[0]
        self.Kq = check_gain_matrix(Kq, dim, 'Kq')
        self.Bq = check_gain_matrix(Bq, dim, 'Bq', definite=False)
        self.reference = reference

    def force(self, chain, state, t):
        q0, qdot0 = self.reference.evaluate(t)
        return self.Kq @ (q0 - state.q) + self.Bq @ (qdot0 - state.qdot)

    def with_reference(self, reference):
        return JointImpedance(self.Kq, self.Bq, reference)

    def to_dict(self):
        return {'type': self.op_type, 'Kq_Nm_per_rad': self.Kq.tolist(), 'Bq_Nms_per_rad': self.Bq.tolist(), 'reference': self.reference.to_dict()}

    @classmethod
    def _from_dict(cls, data):
        return cls(data['Kq_Nm_per_rad'], data['Bq_Nms_per_rad'], VirtualTrajectory.from_dict(data['reference']))


class TaskImpedance(ImpedanceInterface):

    op_type = 'task_impedance'

    def __init__(self, Kp, Bp, reference):
        self.Kp = check_gain_matrix(Kp, 2, 'Kp')
        self.Bp = check_gain_matrix(Bp, 2, 'Bp', definite=False)
        self.reference = reference

    def force(self, chain, state, t):
        p0, pdot0 = self.reference.evaluate(t)
        p, pdot, jacobian = self._task_state(chain, state)
        return jacobian.T @ (self.Kp @ (p0 - p) + self.Bp @ (pdot0 - pdot))

    def with_reference(self, reference):
        return TaskImpedance(self.Kp, self.Bp, reference)

    def to_dict(self):
        return {'type': self.op_type, 'Kp_N_per_m': self.Kp.tolist(), 'Bp_Ns_per_m': self.Bp.tolist(), 'reference': self.reference.to_dict()}

    @classmethod
    def _from_dict(cls, data):
        return cls(data['Kp_N_per_m'], data['Bp_Ns_per_m'], VirtualTrajectory.from_dict(data['reference']))


class JointDamping(ImpedanceInterface):

    op_type = 'joint_damping'

    def __init__(self, Bq):
        self.Bq = check_gain_matrix(Bq, np.asarray(Bq).shape[0], 'Bq')

    def force(self, chain, state, t):
        return -self.Bq @ state.qdot

    def to_dict(self):
        return {'type': self.op_type, 'Bq_Nms_per_rad': self.Bq.tolist()}

    @classmethod
    def _from_dict(cls, data):
        return cls(data['Bq_Nms_per_rad'])


class RepulsivePoint(ImpedanceInterface):
    """
    Potential barrier around a point obstacle:  F = -k / |o - p|^n * (o - p),  magnitude k / |o - p|^(n-1).
    Near the obstacle the magnitude is capped; cap_count records how often that happened.  Exactly on the obstacle
    there is no direction to push along and the force is zero (still counted as capped).
    """

    op_type = 'repulsive_point'

    def __init__(self, k, n_exp, obstacle, force_cap=None):
        self.k = float(k)
        self.n_exp = int(n_exp)
        self.obstacle = np.array(obstacle, dtype=float)
        self.force_cap = EDA_DEFAULTS.REPULSIVE_FORCE_CAP if force_cap is None else float(force_cap)
        self.cap_count = 0

        if self.k < 0 or self.n_exp < 1 or n_exp != self.n_exp:
            raise ContractViolationError('k must be non-negative and n_exp a positive integer')
        if self.obstacle.shape != (2,):
            raise ContractViolationError('obstacle must be a 2-vector')

    def task_force(self, p):
        offset = self.obstacle - p
        distance = float(np.linalg.norm(offset))
        if distance < EDA_DEFAULTS.REPULSIVE_MIN_DISTANCE or self.k / distance ** (self.n_exp - 1) > self.force_cap:
            if self.cap_count == 0:
                log.warning('Repulsive force capped at [{0}] N, end-effector [{1:.2e}] m from the obstacle'.format(self.force_cap, distance))
            self.cap_count += 1
            if distance == 0.0:
                return np.zeros(2)
            return -self.force_cap * offset / distance
        return -self.k / distance ** self.n_exp * offset

    def force(self, chain, state, t):
        return chain.jacobian(state.q).T @ self.task_force(chain.forward_kinematics(state.q))

    def to_dict(self):
        return {'type': self.op_type, 'k': self.k, 'n_exp': self.n_exp, 'obstacle_m': self.obstacle.tolist(), 'force_cap_N': self.force_cap}

    @classmethod
    def _from_dict(cls, data):
        return cls(data['k'], data['n_exp'], data['obstacle_m'], data.get('force_cap_N'))


class EnergyModulatedTask(ImpedanceInterface):
    """
    Task-space impedance whose stiffness and damping are scaled by lambda in [0, 1] so that the controller energy

        L_c = T + lambda * U,    T = 1/2 qd^T M qd,    U = 1/2 dp^T Kp dp

    stays below L_max.  lambda is recomputed from the instantaneous state every call.
    """

    op_type = 'energy_modulated_task'

    def __init__(self, Kp, reference, L_max, c=None):
        self.Kp = check_gain_matrix(Kp, 2, 'Kp')
        self.reference = reference
        self.L_max = float(L_max)
        self.c = EDA_DEFAULTS.DAMPING_RATIO if c is None else float(c)
        if not self.L_max > 0 or self.c < 0:
            log.error('Energy modulation needs L_max > 0 and c >= 0, got [{0}] and [{1}]'.format(self.L_max, self.c))
            raise ContractViolationError('L_max must be positive and c non-negative')

    @staticmethod
    def lambda_from_energies(kinetic, potential, L_max):
        if kinetic + potential <= L_max:
            return 1.0
        if potential < EDA_DEFAULTS.ZERO_POTENTIAL:
            return 0.0
        return float(np.clip((L_max - kinetic) / potential, 0.0, 1.0))

    def energy_state(self, chain, state, t):
        p0, _ = self.reference.evaluate(t)
        dp = p0 - chain.forward_kinematics(state.q)
        kinetic = chain.kinetic_energy(state.q, state.qdot)
        potential = 0.5 * float(dp @ self.Kp @ dp)
        lam = self.lambda_from_energies(kinetic, potential, self.L_max)
        return {'T': kinetic, 'U': potential, 'lambda': lam, 'L_c': kinetic + lam * potential}

    def energy_lambda(self, chain, state, t):
        return self.energy_state(chain, state, t)['lambda']

    def force(self, chain, state, t):
        lam = self.energy_lambda(chain, state, t)
        p0, pdot0 = self.reference.evaluate(t)
        p, pdot, jacobian = self._task_state(chain, state)
        stiffness = lam * self.Kp
        return jacobian.T @ (stiffness @ (p0 - p) + self.c * stiffness @ (pdot0 - pdot))

    def with_reference(self, reference):
        return EnergyModulatedTask(self.Kp, reference, self.L_max, self.c)

    def to_dict(self):
        return {'type': self.op_type, 'Kp_N_per_m': self.Kp.tolist(), 'L_max_J': self.L_max, 'c_s': self.c, 'reference': self.reference.to_dict()}

    @classmethod
    def _from_dict(cls, data):
        return cls(data['Kp_N_per_m'], VirtualTrajectory.from_dict(data['reference']), data['L_max_J'], data.get('c_s'))


class EDA_DEFAULTS:
    # B_p' = c * lambda * K_p; 1/3 s keeps Kp=60 -> Bp=20
    DAMPING_RATIO = 1.0 / 3.0
    REPULSIVE_FORCE_CAP = 1e4
    REPULSIVE_MIN_DISTANCE = 1e-6
    ZERO_POTENTIAL = 1e-12

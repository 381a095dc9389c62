import logging as log
import numpy as np
from scipy.linalg import cho_factor, cho_solve, LinAlgError
from motorprims.dynamics.PlanarChain import RobotState
from motorprims.Errors import ContractViolationError, DynamicsError


class ChainIntegrator:
    """
    Fixed-step forward dynamics of the manipulator equation  M(q) qdd + C(q, qd) qd = tau_in + J^T f_ext  (G = 0).

    Semi-implicit Euler: the velocity is advanced first and the new velocity moves the joints.
    """

    @staticmethod
    def joint_acceleration(chain, state, tau_in, ext=None):
        tau_in = chain.check_vector(tau_in, 'tau_in')
        if not np.all(np.isfinite(tau_in)):
            log.error('Rejecting non-finite input torque {0} at t=[{1}]'.format(tau_in, state.t))
            raise DynamicsError('non-finite torque at t={0}'.format(state.t))

        tau = tau_in
        if ext is not None and ext.active:
            tau = tau + chain.jacobian(state.q).T @ ext.point_force

        mass = chain.mass_matrix(state.q)
        coriolis = chain.coriolis_matrix(state.q, state.qdot)
        try:
            return cho_solve(cho_factor(mass), tau - coriolis @ state.qdot)
        except (LinAlgError, ValueError) as err:
            log.error('Mass matrix solve failed at t=[{0}], q={1}: {2}'.format(state.t, state.q, err))
            raise DynamicsError('mass matrix solve failed at t={0}'.format(state.t))

    @staticmethod
    def step(chain, state, tau_in, ext=None, dt=None):
        if dt is None:
            dt = SIM_DEFAULTS.DT
        if not dt > 0:
            log.error('Integration step must be positive, got [{0}]'.format(dt))
            raise ContractViolationError('dt must be positive')

        qddot = ChainIntegrator.joint_acceleration(chain, state, tau_in, ext)
        qdot = state.qdot + qddot * dt
        q = state.q + qdot * dt
        return RobotState(q=q, qdot=qdot, t=state.t + dt)


class SIM_DEFAULTS:
    DT = 1e-3

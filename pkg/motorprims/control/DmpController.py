import logging as log
import numpy as np
from motorprims.control.ControllerInterface import ControllerInterface, CONTROL_SPACES, EVENT_KEYS, EVENT_TYPES
from motorprims.control.InverseKinematics import InverseKinematics, CONTROL_DEFAULTS
from motorprims.control.TorqueLaws import TorqueLaws
from motorprims.Errors import ContractViolationError


class DmpController(ControllerInterface):
    """
    A DMP plan turned into torques.  The plan is purely kinematic, so the torque path depends on where it lives:

        joint space             inverse-dynamics feedforward along the plan (+ optional PD)
        task space, 2 links     analytic IK, inverse-Jacobian rates, then as joint space
        task space, redundant   velocity-based sliding mode on the damped pseudoinverse
    """

    def __init__(self, plan, space, pd_gains=None, sliding_gains=None, branch=None, dls_damping=None):
        if space not in CONTROL_SPACES.ALL:
            raise ContractViolationError('space must be one of {0}'.format(CONTROL_SPACES.ALL))
        if space == CONTROL_SPACES.TASK and plan.n_dofs != 2:
            raise ContractViolationError('a task-space plan needs two DOFs, got {0}'.format(plan.n_dofs))
        self.plan = plan
        self.space = space
        self.pd_gains = pd_gains
        self.sliding_gains = sliding_gains
        self.branch = branch
        self.dls_damping = CONTROL_DEFAULTS.DLS_DAMPING if dls_damping is None else dls_damping
        self.__damping_reported = False

    def torque(self, chain, state, t):
        y, ydot, yddot = self.plan.sample()

        if self.space == CONTROL_SPACES.JOINT:
            return self.__joint_torque(chain, state, y, ydot, yddot)
        if chain.n_links == 2:
            q_des = InverseKinematics.ik_position(chain, y, seed=state.q, branch=self.branch)
            qdot_des, qddot_des = InverseKinematics.ik_velocity_accel(chain, q_des, ydot, yddot)
            return self.__joint_torque(chain, state, q_des, qdot_des, qddot_des)

        if self.sliding_gains is None:
            raise ContractViolationError('a redundant chain needs sliding-mode gains')
        self.__report_damping(chain, state)
        return TorqueLaws.sliding_mode_torque(chain, self.sliding_gains, state, y, ydot, yddot, self.dls_damping)

    def __joint_torque(self, chain, state, q_des, qdot_des, qddot_des):
        tau = TorqueLaws.inverse_dynamics_torque(chain, q_des, qdot_des, qddot_des)
        if self.pd_gains is not None:
            tau = tau + TorqueLaws.pd_feedback(self.pd_gains, q_des, qdot_des, state.q, state.qdot)
        return tau

    def __report_damping(self, chain, state):
        if not self.__damping_reported and chain.conditioning(state.q) < CONTROL_DEFAULTS.DLS_ACTIVATION_RATIO:
            log.warning('Damped least-squares inverse engaged at t=[{0}] (conditioning {1:.4f})'.format(state.t, chain.conditioning(state.q)))
            self.__damping_reported = True

    # ======================================================================================================================================================================================

    def advance(self, dt):
        self.plan.step(dt)

    def reference(self, t):
        return self.plan.position(), self.plan.velocity()

    def diagnostics(self, chain, state, t):
        if self.plan.goal_filter is None:
            return {}
        return {'goal': self.plan.goal()}

    def apply_event(self, event):
        if event[EVENT_KEYS.TYPE] != EVENT_TYPES.GOAL_SWITCH:
            return super().apply_event(event)
        goal = self._event_goal(event)
        log.info('DMP goal command switched to {0} at t=[{1}]'.format(goal, event[EVENT_KEYS.TIME]))
        self.plan.set_goal(goal)

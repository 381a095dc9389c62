import logging as log
import math
import numpy as np
from motorprims.control.ControllerInterface import ControllerInterface, CONTROL_SPACES, EVENT_KEYS, EVENT_TYPES
from motorprims.eda.Impedances import EnergyModulatedTask
from motorprims.Errors import ContractViolationError


class EdaController(ControllerInterface):
    """
    Norton-network controller: virtual trajectories evaluated at t and pushed through superposed impedances.
    There is no plan to advance and no inverse kinematics or inverse dynamics anywhere on this path.
    """

    def __init__(self, ops, space=None):
        self.ops = list(ops)
        self.space = CONTROL_SPACES.JOINT if space is None else space
        if self.space not in CONTROL_SPACES.ALL:
            raise ContractViolationError('space must be one of {0}'.format(CONTROL_SPACES.ALL))

    @staticmethod
    def superpose(ops, chain, state, t):
        """ Exact sum of the operator torques, summed per joint with fsum so the order of ops does not matter. """
        contributions = [op.force(chain, state, t) for op in ops]
        if not contributions:
            return np.zeros(chain.n_links)
        return np.array([math.fsum(column) for column in zip(*contributions)])

    def torque(self, chain, state, t):
        return self.superpose(self.ops, chain, state, t)

    # ======================================================================================================================================================================================

    def primary_reference(self):
        for op in self.ops:
            if op.reference is not None:
                return op.reference
        return None

    def reference(self, t):
        reference = self.primary_reference()
        if reference is None:
            return np.zeros(0), np.zeros(0)
        return reference.evaluate(t)

    def diagnostics(self, chain, state, t):
        for op in self.ops:
            if isinstance(op, EnergyModulatedTask):
                energy = op.energy_state(chain, state, t)
                return {'lambda': energy['lambda'], 'L_c': energy['L_c']}
        return {}

    def apply_event(self, event):
        """ A goal switch superimposes one more submovement on every matching virtual trajectory; earlier terms are untouched. """
        if event[EVENT_KEYS.TYPE] != EVENT_TYPES.GOAL_SWITCH:
            return super().apply_event(event)
        goal = self._event_goal(event)
        onset = float(event[EVENT_KEYS.TIME])
        duration = float(event[EVENT_KEYS.DURATION])

        updated = []
        for op in self.ops:
            if op.reference is not None and op.reference.n_dofs == len(goal):
                op = op.with_reference(op.reference.retarget(goal, onset, duration))
            updated.append(op)
        self.ops = updated
        log.info('Superimposed a [{0}] s submovement towards {1} at t=[{2}]'.format(duration, goal, onset))

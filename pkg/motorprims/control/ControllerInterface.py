import logging as log
import numpy as np


class ControllerInterface:
    """
    What the scenario runner needs from a controller, once per tick:

        torque(chain, state, t)   joint torque at the measured state
        advance(dt)               move internal plans forward after the robot has been stepped
        reference(t)              commanded position and velocity in the controller's own space
        diagnostics(chain, state, t)  extra trace values (goal, lambda, L_c)
        apply_event(event)        timed scenario events
    """

    space = None

    def torque(self, chain, state, t):
        raise NotImplementedError

    def advance(self, dt):
        pass

    def reference(self, t):
        raise NotImplementedError

    def diagnostics(self, chain, state, t):
        return {}

    def apply_event(self, event):
        log.warning('Controller [{0}] ignores event [{1}]'.format(type(self).__name__, event.get(EVENT_KEYS.TYPE)))

    @staticmethod
    def _event_goal(event):
        return np.asarray(event[EVENT_KEYS.GOAL], dtype=float)


class CONTROL_SPACES:
    JOINT = 'joint'
    TASK = 'task'
    ALL = (JOINT, TASK)


class EVENT_KEYS:
    TYPE = 'type'
    TIME = 'time_s'
    GOAL = 'goal'
    DURATION = 'duration_s'


class EVENT_TYPES:
    GOAL_SWITCH = 'goal_switch'
    WALL_REMOVAL = 'wall_removal'
    ALL = (GOAL_SWITCH, WALL_REMOVAL)

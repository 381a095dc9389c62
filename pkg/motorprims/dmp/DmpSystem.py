import logging as log
import numpy as np
import pandas as pd
from motorprims.dmp.CanonicalSystem import DMP_KINDS
from motorprims.dmp.DemoTrajectory import DEMO_COLS
from motorprims.dmp.TransformationSystem import TransformationSystem
from motorprims.Errors import ContractViolationError


class DmpSystem:
    """
    n transformation systems driven in lockstep by one canonical system, with optional goal dynamics
    (first- or second-order filter on the commanded goal) and an optional planar obstacle coupling.
    """

    def __init__(self, canonical, transformations, forcing, goal_filter=None, coupling=None):
        self.canonical = canonical
        self.transformations = list(transformations)
        self.forcing = list(forcing)
        self.goal_filter = goal_filter
        self.coupling = coupling
        self.t = 0.0
        self.__driven = None

        if len(self.transformations) != len(self.forcing) or len(self.transformations) == 0:
            log.error('DMP needs one forcing term per transformation system, got [{0}] and [{1}]'.format(len(self.transformations), len(self.forcing)))
            raise ContractViolationError('one forcing term per transformation system is required')
        for ts in self.transformations:
            if abs(ts.tau - canonical.tau) > 1e-12:
                raise ContractViolationError('transformation tau {0} differs from canonical tau {1}'.format(ts.tau, canonical.tau))
        for ft in self.forcing:
            if ft.kind != canonical.kind:
                raise ContractViolationError('forcing term kind {0} does not match canonical kind {1}'.format(ft.kind, canonical.kind))
        if coupling is not None and self.n_dofs != 2:
            raise ContractViolationError('the obstacle coupling is planar and needs exactly two DOFs')
        if goal_filter is not None:
            self.__push_goal()

    @classmethod
    def from_weights(cls, weights, y0=None, ydot0=None, goal=None, goal_filter=None, coupling=None):
        """ A discrete plan rescales its forcing to the new (goal - y0); later goal switches leave the scale alone. """
        y0 = weights.y0 if y0 is None else np.asarray(y0, dtype=float)
        ydot0 = np.zeros(weights.n_dofs) if ydot0 is None else np.asarray(ydot0, dtype=float)
        goal = weights.goal if goal is None else np.asarray(goal, dtype=float)
        if y0.shape != (weights.n_dofs,) or ydot0.shape != (weights.n_dofs,) or goal.shape != (weights.n_dofs,):
            raise ContractViolationError('y0, ydot0 and goal must have {0} entries'.format(weights.n_dofs))

        transformations = [TransformationSystem(weights.alpha_z, weights.beta_z, weights.tau, goal=goal[i], y=y0[i], z=weights.tau * ydot0[i])
                           for i in range(weights.n_dofs)]
        forcing = weights.forcing_terms()
        if weights.kind == DMP_KINDS.DISCRETE:
            for ft, g, start in zip(forcing, goal, y0):
                ft.scale = float(g - start)
        return cls(weights.canonical(), transformations, forcing, goal_filter=goal_filter, coupling=coupling)

    @property
    def n_dofs(self):
        return len(self.transformations)

    # ======================================================================================================================================================================================

    def __push_goal(self):
        for ts, g in zip(self.transformations, np.atleast_1d(self.goal_filter.g)):
            ts.goal = float(g)

    def position(self):
        return np.array([ts.y for ts in self.transformations])

    def velocity(self):
        return np.array([ts.velocity() for ts in self.transformations])

    def goal(self):
        return np.array([ts.goal for ts in self.transformations])

    def set_goal(self, g0):
        g0 = np.asarray(g0, dtype=float)
        if g0.shape != (self.n_dofs,):
            raise ContractViolationError('goal must have {0} entries'.format(self.n_dofs))
        if self.goal_filter is not None:
            self.goal_filter.set_target(g0)
        else:
            for ts, g in zip(self.transformations, g0):
                ts.goal = float(g)

    def __drive(self):
        """ Forcing and coupling at the current time, evaluated once per step so the degenerate counters count each step once. """
        if self.__driven is None:
            s = self.canonical.evaluate(self.t)
            f_values = np.array([ft.evaluate(s) for ft in self.forcing])
            if self.coupling is None:
                c_values = np.zeros(self.n_dofs)
            else:
                c_values = self.coupling.evaluate(self.position(), self.velocity())
            self.__driven = (f_values, c_values)
        return self.__driven

    def acceleration(self):
        f_values, c_values = self.__drive()
        return np.array([ts.acceleration(f, c) for ts, f, c in zip(self.transformations, f_values, c_values)])

    def sample(self):
        """ (y, ydot, yddot) at the current time, before the next step. """
        return self.position(), self.velocity(), self.acceleration()

    def step(self, dt):
        f_values, c_values = self.__drive()
        for ts, f, c in zip(self.transformations, f_values, c_values):
            ts.step(f, dt, c)
        self.__driven = None
        if self.goal_filter is not None:
            self.goal_filter.step(dt)
            self.__push_goal()
        self.t += dt

    def rollout(self, duration, dt, substeps=1):
        if not dt > 0 or substeps < 1:
            raise ContractViolationError('dt must be positive and substeps at least 1')
        n_ticks = int(round(duration / dt))
        rows = []
        for k in range(n_ticks + 1):
            y, ydot, yddot = self.sample()
            rows.append(np.concatenate(([self.t], np.column_stack((y, ydot, yddot)).ravel())))
            if k == n_ticks:
                break
            for _ in range(substeps):
                self.step(dt / substeps)

        columns = [DEMO_COLS.TIME] + [c for i in range(self.n_dofs) for c in (DEMO_COLS.y(i), DEMO_COLS.ydot(i), DEMO_COLS.yddot(i))]
        log.info('Rolled out [{0}] DOFs for [{1}] ticks at dt=[{2}]'.format(self.n_dofs, n_ticks, dt))
        return pd.DataFrame(rows, columns=columns)

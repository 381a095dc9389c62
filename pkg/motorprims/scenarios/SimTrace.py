import io
import json
import logging as log
import numpy as np
import pandas as pd


class SimTrace:
    """
    One scenario run: a DataFrame with one row per tick (t = k * dt) in the TRACE_COLS order, plus the failure
    record when the run stopped early.
    """

    def __init__(self, df_trace, scenario_id, controller, failure=None):
        self.df_trace = df_trace
        self.scenario_id = scenario_id
        self.controller = controller
        self.failure = failure

    @property
    def failed(self):
        return self.failure is not None

    @property
    def n_ticks(self):
        return len(self.df_trace)

    def column_block(self, name):
        """ All columns of a per-joint or per-axis block, e.g. 'q' -> q_0..q_{n-1}, as an array. """
        columns = [c for c in self.df_trace.columns if c.rsplit('_', 1)[0] == name and c.rsplit('_', 1)[-1].isdigit()]
        return self.df_trace[columns].to_numpy()

    def positions(self):
        return self.df_trace[[TRACE_COLS.P_X, TRACE_COLS.P_Y]].to_numpy()

    def velocities(self):
        return self.df_trace[[TRACE_COLS.PD_X, TRACE_COLS.PD_Y]].to_numpy()

    def is_finite(self):
        return bool(np.all(np.isfinite(self.df_trace.to_numpy(dtype=float))))

    # ======================================================================================================================================================================================

    def to_csv(self, path=None):
        buffer = io.StringIO()
        buffer.write(TRACE_COLS.HEADER + '\n')
        self.df_trace.to_csv(buffer, index=False, float_format='%.17g')
        text = buffer.getvalue()
        if path is not None:
            with open(path, 'w') as fh:
                fh.write(text)
            log.info('Wrote [{0}] trace rows to [{1}]'.format(self.n_ticks, path))
        return text

    @staticmethod
    def read_csv(path):
        return pd.read_csv(path, comment='#')

    def to_json(self, path=None):
        text = json.dumps({
            'format': TRACE_COLS.HEADER.lstrip('# '),
            'scenario_id': self.scenario_id,
            'controller': self.controller,
            'failure': self.failure,
            'columns': list(self.df_trace.columns),
            'rows': self.df_trace.to_numpy(dtype=float).tolist(),
        }, indent=1)
        if path is not None:
            with open(path, 'w') as fh:
                fh.write(text)
            log.info('Wrote [{0}] trace rows to [{1}]'.format(self.n_ticks, path))
        return text


class TRACE_COLS:
    HEADER = '# motorprims-trace v1'

    TIME = 't'
    P_X = 'p_x'
    P_Y = 'p_y'
    PD_X = 'pd_x'
    PD_Y = 'pd_y'
    COND = 'cond'
    LAMBDA = 'lambda'
    L_C = 'L_c'
    OBSTACLE_DISTANCE = 'obstacle_distance'

    @staticmethod
    def q(i):
        return 'q_{0}'.format(i)

    @staticmethod
    def qd(i):
        return 'qd_{0}'.format(i)

    @staticmethod
    def tau(i):
        return 'tau_{0}'.format(i)

    @staticmethod
    def ref(i):
        return 'ref_{0}'.format(i)

    @staticmethod
    def refd(i):
        return 'refd_{0}'.format(i)

    @staticmethod
    def goal(i):
        return 'goal_{0}'.format(i)

    @staticmethod
    def columns(n_joints, n_ref, n_goal=0, energy=False, obstacle=False):
        columns = [TRACE_COLS.TIME]
        columns += [TRACE_COLS.q(i) for i in range(n_joints)]
        columns += [TRACE_COLS.qd(i) for i in range(n_joints)]
        columns += [TRACE_COLS.P_X, TRACE_COLS.P_Y, TRACE_COLS.PD_X, TRACE_COLS.PD_Y]
        columns += [TRACE_COLS.tau(i) for i in range(n_joints)]
        columns += [TRACE_COLS.ref(i) for i in range(n_ref)]
        columns += [TRACE_COLS.refd(i) for i in range(n_ref)]
        columns += [TRACE_COLS.COND]
        columns += [TRACE_COLS.goal(i) for i in range(n_goal)]
        if energy:
            columns += [TRACE_COLS.LAMBDA, TRACE_COLS.L_C]
        if obstacle:
            columns += [TRACE_COLS.OBSTACLE_DISTANCE]
        return columns

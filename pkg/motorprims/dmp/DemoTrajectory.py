import logging as log
import numpy as np
import pandas as pd
from motorprims.Errors import ContractViolationError, DemoFormatError


class DemoTrajectory:

    def __init__(self, times, y, ydot=None, yddot=None):
        self.times = np.asarray(times, dtype=float).ravel()
        self.y = self.__as_columns(y, 'y')
        if len(self.times) < 2:
            raise ContractViolationError('a demonstration needs at least two samples')
        if len(self.y) != len(self.times):
            log.error('Demo has [{0}] times but [{1}] position samples'.format(len(self.times), len(self.y)))
            raise ContractViolationError('times and y_des must have the same number of samples')
        if np.any(np.diff(self.times) <= 0):
            raise ContractViolationError('demo times must be strictly increasing')

        self.ydot = np.gradient(self.y, self.times, axis=0) if ydot is None else self.__as_columns(ydot, 'ydot')
        self.yddot = np.gradient(self.ydot, self.times, axis=0) if yddot is None else self.__as_columns(yddot, 'yddot')
        if self.ydot.shape != self.y.shape or self.yddot.shape != self.y.shape:
            log.error('Demo derivative shapes {0} / {1} do not match positions {2}'.format(self.ydot.shape, self.yddot.shape, self.y.shape))
            raise ContractViolationError('ydot_des and yddot_des must match y_des')

    @staticmethod
    def __as_columns(values, name):
        values = np.asarray(values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if values.ndim != 2:
            raise ContractViolationError('{0} must be a vector or a samples x dofs matrix'.format(name))
        return values

    @property
    def n_samples(self):
        return len(self.times)

    @property
    def n_dofs(self):
        return self.y.shape[1]

    @property
    def duration(self):
        return float(self.times[-1] - self.times[0])

    # ======================================================================================================================================================================================

    @classmethod
    def from_trajectory(cls, trajectory, times):
        """ Samples anything exposing position/velocity/acceleration(t), e.g. a Submovement or an Oscillation. """
        times = np.asarray(times, dtype=float)
        y = np.array([trajectory.position(t) for t in times])
        ydot = np.array([trajectory.velocity(t) for t in times])
        yddot = np.array([trajectory.acceleration(t) for t in times])
        return cls(times, y, ydot, yddot)

    @classmethod
    def from_dataframe(cls, df_demo):
        if DEMO_COLS.TIME not in df_demo.columns:
            log.error('Demo is missing the [{0}] column, found {1}'.format(DEMO_COLS.TIME, list(df_demo.columns)))
            raise DemoFormatError('demo CSV needs a "{0}" column'.format(DEMO_COLS.TIME))

        n_dofs = 0
        while DEMO_COLS.y(n_dofs) in df_demo.columns:
            n_dofs += 1
        if n_dofs == 0:
            raise DemoFormatError('demo CSV needs at least one "{0}" column'.format(DEMO_COLS.y(0)))

        expected = [DEMO_COLS.TIME] + [c for i in range(n_dofs) for c in (DEMO_COLS.y(i), DEMO_COLS.ydot(i), DEMO_COLS.yddot(i))]
        if sorted(expected) != sorted(df_demo.columns):
            log.error('Demo columns {0} do not match the expected {1}'.format(list(df_demo.columns), expected))
            raise DemoFormatError('demo columns {0} do not match expected {1}'.format(list(df_demo.columns), expected))

        df_demo = df_demo.apply(pd.to_numeric, errors='coerce')
        if df_demo.isnull().values.any():
            raise DemoFormatError('demo CSV contains non-numeric or empty cells')
        times = df_demo[DEMO_COLS.TIME].to_numpy()
        if len(times) < 2 or np.any(np.diff(times) <= 0):
            log.error('Demo time column is not strictly increasing')
            raise DemoFormatError('demo time column must be strictly increasing')

        y = df_demo[[DEMO_COLS.y(i) for i in range(n_dofs)]].to_numpy()
        ydot = df_demo[[DEMO_COLS.ydot(i) for i in range(n_dofs)]].to_numpy()
        yddot = df_demo[[DEMO_COLS.yddot(i) for i in range(n_dofs)]].to_numpy()
        return cls(times, y, ydot, yddot)

    @classmethod
    def read_csv(cls, path):
        log.info('Reading demonstration from [{0}]'.format(path))
        try:
            df_demo = pd.read_csv(path, comment='#')
        except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as err:
            log.error('Unable to read demo CSV [{0}]: {1}'.format(path, err))
            raise DemoFormatError('unable to read demo CSV {0}: {1}'.format(path, err))
        return cls.from_dataframe(df_demo)

    def to_dataframe(self):
        df_demo = pd.DataFrame({DEMO_COLS.TIME: self.times})
        for i in range(self.n_dofs):
            df_demo[DEMO_COLS.y(i)] = self.y[:, i]
            df_demo[DEMO_COLS.ydot(i)] = self.ydot[:, i]
            df_demo[DEMO_COLS.yddot(i)] = self.yddot[:, i]
        return df_demo


class DEMO_COLS:
    TIME = 't'

    @staticmethod
    def y(i):
        return 'y_{0}'.format(i)

    @staticmethod
    def ydot(i):
        return 'ydot_{0}'.format(i)

    @staticmethod
    def yddot(i):
        return 'yddot_{0}'.format(i)

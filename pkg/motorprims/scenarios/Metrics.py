import json
import logging as log
import numpy as np
from motorprims.control.ControllerInterface import CONTROL_SPACES
from motorprims.scenarios.SimTrace import TRACE_COLS
from motorprims.Errors import ContractViolationError


class Metrics:
    """
    Deterministic reductions of a SimTrace.  Tracking errors compare the measured position, in the scenario's space,
    with the scenario reference including its goal switches; convergence is measured against the final goal.
    """

    CONVERGENCE_TOLERANCE = 1e-2

    @staticmethod
    def compute(trace, spec, tolerance=None):
        if trace.n_ticks == 0:
            log.error('Cannot reduce the empty trace of [{0}]'.format(trace.scenario_id))
            raise ContractViolationError('metrics need a non-empty trace')
        tolerance = Metrics.CONVERGENCE_TOLERANCE if tolerance is None else tolerance

        times = trace.df_trace[TRACE_COLS.TIME].to_numpy()
        measured = Metrics.measured_positions(trace, spec)
        reference = spec.scenario_reference()
        tracking = np.linalg.norm(measured - np.array([reference.position(t) for t in times]), axis=1)
        to_goal = np.linalg.norm(measured - spec.final_goal(), axis=1)

        df_trace = trace.df_trace
        metrics = {
            METRIC_KEYS.SCENARIO_ID: trace.scenario_id,
            METRIC_KEYS.CONTROLLER: trace.controller,
            METRIC_KEYS.RMS_TRACKING_ERROR: float(np.sqrt(np.mean(tracking ** 2))),
            METRIC_KEYS.PEAK_TRACKING_ERROR: float(np.max(tracking)),
            METRIC_KEYS.TERMINAL_ERROR: float(tracking[-1]),
            METRIC_KEYS.CONVERGENCE_TIME: Metrics.convergence_time(times, to_goal, tolerance),
            METRIC_KEYS.MAX_L_C: float(df_trace[TRACE_COLS.L_C].max()) if TRACE_COLS.L_C in df_trace else None,
            METRIC_KEYS.MIN_CONDITIONING: float(df_trace[TRACE_COLS.COND].min()),
            METRIC_KEYS.MIN_OBSTACLE_DISTANCE: float(df_trace[TRACE_COLS.OBSTACLE_DISTANCE].min()) if TRACE_COLS.OBSTACLE_DISTANCE in df_trace else None,
            METRIC_KEYS.MAX_EE_SPEED: float(np.max(np.linalg.norm(trace.velocities(), axis=1))),
            METRIC_KEYS.FINAL_JOINT_SPEED: float(np.linalg.norm(trace.column_block('qd')[-1])),
            METRIC_KEYS.FAILURE: None if trace.failure is None else dict(trace.failure),
        }
        return metrics

    @staticmethod
    def measured_positions(trace, spec):
        if spec.space == CONTROL_SPACES.JOINT:
            return trace.column_block('q')
        return trace.positions()

    @staticmethod
    def convergence_time(times, errors, tolerance):
        """ First time after which the error never again reaches the tolerance, None when it ends outside it. """
        outside = np.flatnonzero(np.asarray(errors) >= tolerance)
        if len(outside) == 0:
            return float(times[0])
        if outside[-1] == len(times) - 1:
            return None
        return float(times[outside[-1] + 1])

    # ======================================================================================================================================================================================

    @staticmethod
    def to_json(metrics):
        return json.dumps(metrics, indent=2, sort_keys=True)

    @staticmethod
    def save(metrics, path):
        with open(path, 'w') as fh:
            fh.write(Metrics.to_json(metrics))
        log.info('Wrote metrics for [{0}] ({1}) to [{2}]'.format(metrics[METRIC_KEYS.SCENARIO_ID], metrics[METRIC_KEYS.CONTROLLER], path))


class METRIC_KEYS:
    SCENARIO_ID = 'scenario_id'
    CONTROLLER = 'controller'
    RMS_TRACKING_ERROR = 'rms_tracking_error'
    PEAK_TRACKING_ERROR = 'peak_tracking_error'
    TERMINAL_ERROR = 'terminal_error'
    CONVERGENCE_TIME = 'convergence_time'
    MAX_L_C = 'max_L_c'
    MIN_CONDITIONING = 'min_conditioning'
    MIN_OBSTACLE_DISTANCE = 'min_obstacle_distance'
    MAX_EE_SPEED = 'max_ee_speed'
    FINAL_JOINT_SPEED = 'final_joint_speed'
    FAILURE = 'failure'

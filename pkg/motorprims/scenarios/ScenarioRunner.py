import logging as log
import numpy as np
import pandas as pd
from motorprims.control.ControllerInterface import CONTROL_SPACES, EVENT_KEYS, EVENT_TYPES
from motorprims.control.DmpController import DmpController
from motorprims.control.InverseKinematics import InverseKinematics
from motorprims.control.TorqueLaws import PdGains, SlidingModeGains
from motorprims.dmp.CouplingTerm import ObstacleCoupling
from motorprims.dmp.DmpSystem import DmpSystem
from motorprims.dmp.GoalFilter import GoalFilter, SecondOrderGoalFilter
from motorprims.dynamics.ChainIntegrator import ChainIntegrator
from motorprims.dynamics.ContactWall import ContactWall
from motorprims.dynamics.PlanarChain import RobotState
from motorprims.eda.EdaController import EdaController
from motorprims.eda.Impedances import ImpedanceInterface, JointDamping, RepulsivePoint
from motorprims.scenarios.ScenarioLibrary import ScenarioLibrary
from motorprims.scenarios.ScenarioSpec import CONTROLLERS, SPEC_KEYS
from motorprims.scenarios.SimTrace import SimTrace, TRACE_COLS
from motorprims.Errors import DynamicsError, MotorPrimsError, OutOfWorkspaceError, ScenarioConfigError, SingularityError


class ScenarioRunner:
    """
    Fixed-step closed loop.  Every tick k at t = k * dt:

        apply due events -> controller torque at the measured state -> record the row
        -> wall force -> semi-implicit step of the chain -> advance the controller's plan

    Singularities, unreachable IK targets, failed mass-matrix solves and non-finite states end the run as FAILED.
    """

    EVENT_TIME_TOLERANCE = 1e-9

    @staticmethod
    def run(spec, weights=None):
        chain = spec.chain()
        state = ScenarioRunner.initial_state(spec, chain)
        controller = ScenarioRunner.build_controller(spec, weights)
        wall = None if spec.data.get(SPEC_KEYS.WALL) is None else ContactWall.from_dict(spec.data[SPEC_KEYS.WALL])
        obstacle = spec.obstacle()
        events = list(spec.events)

        n_ticks = int(round(spec.duration / spec.dt))
        has_goal = isinstance(controller, DmpController) and controller.plan.goal_filter is not None
        has_energy = bool(controller.diagnostics(chain, state, 0.0).get('lambda') is not None)
        n_ref = len(controller.reference(0.0)[0])
        columns = TRACE_COLS.columns(chain.n_links, n_ref, n_goal=n_ref if has_goal else 0, energy=has_energy, obstacle=obstacle is not None)

        log.info('Running [{0}] with the [{1}] controller for [{2}] ticks at dt=[{3}]'.format(spec.scenario_id, spec.controller, n_ticks, spec.dt))
        rows, failure = [], None
        for k in range(n_ticks + 1):
            t = k * spec.dt
            while events and events[0][EVENT_KEYS.TIME] <= t + ScenarioRunner.EVENT_TIME_TOLERANCE:
                wall = ScenarioRunner.__apply_event(events.pop(0), controller, wall)

            try:
                tau = controller.torque(chain, state, t)
            except (SingularityError, OutOfWorkspaceError, DynamicsError) as err:
                failure = ScenarioRunner.__failure(spec, t, '{0}: {1}'.format(type(err).__name__, err))
                break
            if not np.all(np.isfinite(tau)):
                failure = ScenarioRunner.__failure(spec, t, 'non-finite torque')
                break
            rows.append(ScenarioRunner.__row(chain, state, tau, controller, t, has_goal, has_energy, obstacle))
            if k == n_ticks:
                break

            ext = None
            if wall is not None:
                jacobian = chain.jacobian(state.q)
                ext = wall.external_force(chain.forward_kinematics(state.q), jacobian @ state.qdot, t)
            try:
                state = ChainIntegrator.step(chain, state, tau, ext, spec.dt)
            except DynamicsError as err:
                failure = ScenarioRunner.__failure(spec, t, '{0}: {1}'.format(type(err).__name__, err))
                break
            state.t = (k + 1) * spec.dt
            if not state.is_finite():
                failure = ScenarioRunner.__failure(spec, state.t, 'non-finite state')
                break
            controller.advance(spec.dt)

        df_trace = pd.DataFrame(rows, columns=columns)
        log.info('Finished [{0}] ({1}) after [{2}] rows{3}'.format(spec.scenario_id, spec.controller, len(rows), ' - FAILED' if failure else ''))
        return SimTrace(df_trace, spec.scenario_id, spec.controller, failure)

    @staticmethod
    def __failure(spec, t, reason):
        log.error('Run [{0}] ({1}) FAILED at t=[{2:.4f}]: {3}'.format(spec.scenario_id, spec.controller, t, reason))
        return {'time': float(t), 'reason': reason}

    @staticmethod
    def __apply_event(event, controller, wall):
        if event[EVENT_KEYS.TYPE] == EVENT_TYPES.WALL_REMOVAL:
            log.info('Wall removed at t=[{0}]'.format(event[EVENT_KEYS.TIME]))
            return None
        controller.apply_event(event)
        return wall

    @staticmethod
    def __row(chain, state, tau, controller, t, has_goal, has_energy, obstacle):
        p = chain.forward_kinematics(state.q)
        pdot = chain.jacobian(state.q) @ state.qdot
        ref, refd = controller.reference(t)
        row = [t, *state.q, *state.qdot, p[0], p[1], pdot[0], pdot[1], *tau, *ref, *refd, chain.conditioning(state.q)]
        if has_goal or has_energy:
            diagnostics = controller.diagnostics(chain, state, t)
            if has_goal:
                row += list(diagnostics['goal'])
            if has_energy:
                row += [diagnostics['lambda'], diagnostics['L_c']]
        if obstacle is not None:
            row.append(float(np.linalg.norm(p - obstacle[0])))
        return row

    # ======================================================================================================================================================================================

    @staticmethod
    def initial_state(spec, chain=None):
        """ Starts on the reference: configuration from the initial block, velocity matching the reference at t = 0. """
        chain = spec.chain() if chain is None else chain
        initial = spec.data[SPEC_KEYS.INITIAL]
        _, ref_velocity = spec.reference().evaluate(0.0)
        try:
            if spec.space == CONTROL_SPACES.JOINT:
                return RobotState(q=chain.check_vector(initial['q_rad']), qdot=np.asarray(ref_velocity, dtype=float), t=0.0)
            if chain.n_links == 2:
                q = InverseKinematics.ik_position(chain, initial['p_m'], branch=initial.get('branch'))
                qdot, _ = InverseKinematics.ik_velocity_accel(chain, q, ref_velocity, np.zeros(2))
            else:
                q = InverseKinematics.newton(chain, np.asarray(initial['p_m'], dtype=float), seed=initial.get('seed_rad'))
                qdot = InverseKinematics.damped_pinv(chain.jacobian(q)) @ ref_velocity
        except (KeyError, MotorPrimsError) as err:
            log.error('Unable to place the chain for [{0}]: {1}'.format(spec.scenario_id, err))
            raise ScenarioConfigError('invalid initial block for {0}: {1}'.format(spec.scenario_id, err))
        return RobotState(q=q, qdot=qdot, t=0.0)

    @staticmethod
    def build_controller(spec, weights=None):
        """ weights replaces the fit of the scenario reference, e.g. a weight file written by the learn command. """
        try:
            if spec.controller == CONTROLLERS.DMP:
                return ScenarioRunner.__dmp_controller(spec, weights)
            return ScenarioRunner.__eda_controller(spec)
        except (KeyError, TypeError) as err:
            log.error('Scenario [{0}] has an incomplete [{1}] block: {2}'.format(spec.scenario_id, spec.controller, err))
            raise ScenarioConfigError('incomplete {0} block: {1}'.format(spec.controller, err))

    @staticmethod
    def __dmp_controller(spec, weights=None):
        dmp = spec.dmp
        if dmp is None:
            raise ScenarioConfigError('scenario {0} has no dmp block'.format(spec.scenario_id))
        y0, ydot0 = spec.reference().evaluate(0.0)
        if weights is None:
            weights = ScenarioLibrary.learn_weights(spec)
        elif weights.n_dofs != len(y0):
            log.error('Weight set has [{0}] DOFs but the [{1}] reference has [{2}]'.format(weights.n_dofs, spec.space, len(y0)))
            raise ScenarioConfigError('weights have {0} DOFs, the scenario needs {1}'.format(weights.n_dofs, len(y0)))

        goal_filter = None
        if dmp['goal_filter'] is not None:
            block = dmp['goal_filter']
            if block['order'] == 1:
                goal_filter = GoalFilter(block['alpha_g'], block['tau_s'], g=weights.goal, integration=block.get('integration'))
            else:
                goal_filter = SecondOrderGoalFilter(block['tau_s'], block['alpha_z'], block['beta_z'], g=weights.goal)

        coupling = None
        if dmp['coupling'] is not None:
            position, _ = spec.obstacle()
            coupling = ObstacleCoupling(position, dmp['coupling']['gamma'], dmp['coupling']['beta'], dmp['coupling'].get('sign', 1))

        plan = DmpSystem.from_weights(weights, y0=y0, ydot0=ydot0, goal_filter=goal_filter, coupling=coupling)
        pd_gains = None if dmp['pd'] is None else PdGains.from_dict(dmp['pd'])
        sliding = None if dmp['sliding'] is None else SlidingModeGains.from_dict(dmp['sliding'])
        return DmpController(plan, spec.space, pd_gains=pd_gains, sliding_gains=sliding, branch=dmp.get('branch'), dls_damping=dmp.get('dls_damping'))

    @staticmethod
    def __eda_controller(spec):
        if spec.eda is None:
            raise ScenarioConfigError('scenario {0} has no eda block'.format(spec.scenario_id))
        reference = spec.data[SPEC_KEYS.REFERENCE]
        obstacle = spec.obstacle()
        ops = []
        for entry in spec.eda['ops']:
            entry = dict(entry)
            if entry['type'] == RepulsivePoint.op_type and 'obstacle_m' not in entry:
                if obstacle is None:
                    raise ScenarioConfigError('a repulsive_point op needs an obstacle in the scenario')
                entry['obstacle_m'] = obstacle[1].tolist()
            elif entry['type'] not in (RepulsivePoint.op_type, JointDamping.op_type) and 'reference' not in entry:
                entry['reference'] = reference
            ops.append(ImpedanceInterface.from_dict(entry))
        return EdaController(ops, spec.space)

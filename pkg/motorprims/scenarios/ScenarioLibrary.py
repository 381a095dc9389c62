import json
import logging as log
import numpy as np
from motorprims.control.ControllerInterface import CONTROL_SPACES, EVENT_KEYS, EVENT_TYPES
from motorprims.control.InverseKinematics import IK_BRANCH, CONTROL_DEFAULTS
from motorprims.dmp.CanonicalSystem import CanonicalSystem, DMP_KINDS, DMP_DEFAULTS
from motorprims.dmp.DemoTrajectory import DemoTrajectory
from motorprims.dmp.GoalFilter import GOAL_INTEGRATION
from motorprims.dmp.ImitationLearning import ImitationLearning
from motorprims.dynamics.ChainIntegrator import SIM_DEFAULTS
from motorprims.dynamics.ContactWall import CONTACT_DEFAULTS
from motorprims.dynamics.PlanarChain import PlanarChain
from motorprims.eda.Impedances import EDA_DEFAULTS, EnergyModulatedTask, JointDamping, JointImpedance, RepulsivePoint, TaskImpedance
from motorprims.eda.Oscillation import Oscillation
from motorprims.eda.Submovement import Submovement
from motorprims.eda.VirtualTrajectory import VirtualTrajectory
from motorprims.scenarios.ScenarioSpec import ScenarioSpec, SCENARIO_IDS, CONTROLLERS, SPEC_KEYS
from motorprims.Errors import ScenarioConfigError


class ScenarioLibrary:
    """
    Default parameterisation of every experiment.  Wall placement, run durations and the redundant IK seeds are
    library choices; the remaining gains and geometry are the reference values of each experiment.
    """

    weights_cache = {}

    @staticmethod
    def build_scenario(scenario_id, overrides=None, variant=None):
        if scenario_id not in SCENARIO_IDS.ALL:
            scenario_id = SCENARIO_IDS.from_cli_name(scenario_id)
        data = ScenarioLibrary.__BUILDERS[scenario_id].__func__()
        if variant is not None:
            variants = SCENARIO_VARIANTS.get(scenario_id, {})
            if variant not in variants:
                log.error('Scenario [{0}] has no variant [{1}], choose from {2}'.format(scenario_id, variant, sorted(variants)))
                raise ScenarioConfigError('unknown variant {0} for {1}'.format(variant, scenario_id))
            data = ScenarioSpec.apply_overrides(data, variants[variant])
        data = ScenarioSpec.apply_overrides(data, overrides)
        spec = ScenarioSpec(data)
        log.info('Built scenario [{0}] for controller [{1}], dt=[{2}], duration=[{3}]'.format(scenario_id, spec.controller, spec.dt, spec.duration))
        return spec

    # ======================================================================================================================================================================================

    @staticmethod
    def learn_weights(spec, force_cache_refresh=False):
        """ Imitation-learns the DMP from the scenario reference, reusing an earlier fit of the same demo. """
        dmp = spec.dmp
        key = json.dumps({'reference': spec.data[SPEC_KEYS.REFERENCE],
                          'learning': {k: dmp[k] for k in DMP_LEARNING_KEYS}}, sort_keys=True)
        if key in ScenarioLibrary.weights_cache and force_cache_refresh is False:
            log.info('Found learned weights for [{0}] in the weights cache, returning those instead'.format(spec.scenario_id))
            return ScenarioLibrary.weights_cache[key]

        demo_duration = float(dmp['demo_duration_s'])
        demo = DemoTrajectory.from_trajectory(spec.reference(), np.linspace(0.0, demo_duration, int(dmp['n_samples'])))
        if dmp['kind'] == DMP_KINDS.RHYTHMIC:
            tau = ImitationLearning.rhythmic_tau(demo_duration)
        else:
            tau = demo_duration
        canonical = CanonicalSystem(dmp['kind'], tau, dmp['alpha_s'])
        weights = ImitationLearning.learn(demo, canonical, dmp['alpha_z'], dmp['beta_z'], int(dmp['n_basis']), dmp['amplitude'])
        ScenarioLibrary.weights_cache[key] = weights
        return weights

    # ======================================================================================================================================================================================

    @staticmethod
    def __two_link():
        return PlanarChain.uniform_bars(2, mass=1.0, length=1.0).to_dict()

    @staticmethod
    def __five_link():
        return PlanarChain.uniform_bars(5, mass=1.0, length=1.0).to_dict()

    @staticmethod
    def __dmp_block(kind=DMP_KINDS.DISCRETE, demo_duration=1.0, **entries):
        block = {
            'kind': kind,
            'n_basis': DMP_DEFAULTS.N_DISCRETE if kind == DMP_KINDS.DISCRETE else DMP_DEFAULTS.N_RHYTHMIC,
            'n_samples': DMP_DEFAULTS.N_SAMPLES,
            'demo_duration_s': demo_duration,
            'alpha_z': DMP_DEFAULTS.ALPHA_Z,
            'beta_z': DMP_DEFAULTS.BETA_Z,
            'alpha_s': DMP_DEFAULTS.ALPHA_S,
            'amplitude': DMP_DEFAULTS.RHYTHMIC_AMPLITUDE,
            'goal_filter': None,
            'coupling': None,
            'pd': None,
            'sliding': None,
            'branch': IK_BRANCH.ELBOW_DOWN,
            'dls_damping': CONTROL_DEFAULTS.DLS_DAMPING,
        }
        block.update(entries)
        return block

    @staticmethod
    def __spec(scenario_id, space, chain, initial, goal, reference, duration, dmp, ops, dt=SIM_DEFAULTS.DT, events=None, wall=None, obstacle=None):
        return {
            SPEC_KEYS.SCENARIO_ID: scenario_id,
            SPEC_KEYS.CONTROLLER: CONTROLLERS.EDA,
            SPEC_KEYS.SPACE: space,
            SPEC_KEYS.CHAIN: chain,
            SPEC_KEYS.DURATION: float(duration),
            SPEC_KEYS.DT: float(dt),
            SPEC_KEYS.INITIAL: initial,
            SPEC_KEYS.GOAL: list(goal),
            SPEC_KEYS.REFERENCE: reference.to_dict(),
            SPEC_KEYS.WALL: wall,
            SPEC_KEYS.OBSTACLE: obstacle,
            SPEC_KEYS.DMP: dmp,
            SPEC_KEYS.EDA: {'ops': ops},
            SPEC_KEYS.EVENTS: events or [],
        }

    @staticmethod
    def __goal_switch(time, goal, duration):
        return {EVENT_KEYS.TYPE: EVENT_TYPES.GOAL_SWITCH, EVENT_KEYS.TIME: float(time), EVENT_KEYS.GOAL: list(goal), EVENT_KEYS.DURATION: float(duration)}

    @staticmethod
    def __eye(value, n):
        return (value * np.eye(n)).tolist()

    # ======================================================================================================================================================================================

    @staticmethod
    def _joint_discrete():
        q_i, g = [0.0, 0.0], [1.0, 1.0]
        reference = VirtualTrajectory([Submovement(q_i, g, 1.0)])
        ops = [op_entry(JointImpedance.op_type, Kq_Nm_per_rad=ScenarioLibrary.__eye(150.0, 2), Bq_Nms_per_rad=ScenarioLibrary.__eye(50.0, 2))]
        return ScenarioLibrary.__spec(SCENARIO_IDS.JOINT_DISCRETE, CONTROL_SPACES.JOINT, ScenarioLibrary.__two_link(), {'q_rad': q_i}, g,
                                      reference, 3.0, ScenarioLibrary.__dmp_block(), ops)

    @staticmethod
    def _task_discrete(scenario_id=SCENARIO_IDS.TASK_DISCRETE, goal=(0.0, 1.72), duration=3.0):
        p_i = [0.0, 0.52]
        reference = VirtualTrajectory([Submovement(p_i, list(goal), 1.0)])
        return ScenarioLibrary.__spec(scenario_id, CONTROL_SPACES.TASK, ScenarioLibrary.__two_link(), {'p_m': p_i, 'branch': IK_BRANCH.ELBOW_DOWN},
                                      goal, reference, duration, ScenarioLibrary.__dmp_block(), [ScenarioLibrary.__task_impedance(60.0, 20.0)])

    @staticmethod
    def _task_discrete_singular():
        return ScenarioLibrary._task_discrete(SCENARIO_IDS.TASK_DISCRETE_SINGULAR, goal=(0.0, 2.0))

    @staticmethod
    def _unexpected_contact():
        data = ScenarioLibrary._task_discrete(SCENARIO_IDS.UNEXPECTED_CONTACT, duration=6.0)
        # horizontal wall at y = 1.2, free space below it
        data[SPEC_KEYS.WALL] = {'normal': [0.0, -1.0], 'offset_m': -1.2, 'stiffness_N_per_m': CONTACT_DEFAULTS.STIFFNESS,
                                'damping_Ns_per_m': CONTACT_DEFAULTS.DAMPING, 'removal_time_s': None}
        data[SPEC_KEYS.EVENTS] = [{EVENT_KEYS.TYPE: EVENT_TYPES.WALL_REMOVAL, EVENT_KEYS.TIME: 2.0}]
        data[SPEC_KEYS.DMP]['pd'] = {'Kq_Nm_per_rad': ScenarioLibrary.__eye(50.0, 2), 'Bq_Nms_per_rad': ScenarioLibrary.__eye(30.0, 2)}
        data[SPEC_KEYS.EDA]['ops'] = [op_entry(EnergyModulatedTask.op_type, Kp_N_per_m=ScenarioLibrary.__eye(60.0, 2), L_max_J=2.5, c_s=EDA_DEFAULTS.DAMPING_RATIO)]
        return data

    @staticmethod
    def _obstacle_avoid():
        data = ScenarioLibrary._task_discrete(SCENARIO_IDS.OBSTACLE_AVOID, duration=5.0)
        obstacle, offset = np.array([0.0, 1.14]), np.array([0.02, 0.0])
        # the EDA repulsion sees the obstacle 2 cm along +x, which sends the arm around it counterclockwise
        data[SPEC_KEYS.OBSTACLE] = {'position_m': obstacle.tolist(), 'offset_m': offset.tolist()}
        data[SPEC_KEYS.DMP]['coupling'] = {'gamma': 300.0, 'beta': 3.0, 'sign': 1}
        repulsion = RepulsivePoint(k=0.1, n_exp=6, obstacle=obstacle + offset, force_cap=EDA_DEFAULTS.REPULSIVE_FORCE_CAP)
        kp, p_i, goal = 60.0, data[SPEC_KEYS.INITIAL]['p_m'], np.asarray(data[SPEC_KEYS.GOAL])
        # virtual trajectory ends where the task spring cancels the repulsion felt at the goal, so the goal is the rest point
        reference = VirtualTrajectory([Submovement(p_i, (goal - repulsion.task_force(goal) / kp).tolist(), 1.0)])
        data[SPEC_KEYS.EDA]['ops'] = [dict(ScenarioLibrary.__task_impedance(kp, 20.0), reference=reference.to_dict()),
                                      op_entry(RepulsivePoint.op_type, k=repulsion.k, n_exp=repulsion.n_exp, force_cap_N=repulsion.force_cap)]
        return data

    @staticmethod
    def _rhythmic():
        q_i, q_a = [0.5, 0.5], [0.1, 0.3]
        reference = VirtualTrajectory([Oscillation(q_i, q_a, np.pi)])
        ops = [op_entry(JointImpedance.op_type, Kq_Nm_per_rad=ScenarioLibrary.__eye(150.0, 2), Bq_Nms_per_rad=ScenarioLibrary.__eye(50.0, 2))]
        return ScenarioLibrary.__spec(SCENARIO_IDS.RHYTHMIC, CONTROL_SPACES.JOINT, ScenarioLibrary.__two_link(), {'q_rad': q_i}, q_i,
                                      reference, 6.0, ScenarioLibrary.__dmp_block(DMP_KINDS.RHYTHMIC, demo_duration=2.0), ops)

    @staticmethod
    def _rhythmic_task():
        center = [0.0, 1.4142]
        circle = Oscillation.circle(center, 0.5, np.pi)
        return ScenarioLibrary.__spec(SCENARIO_IDS.RHYTHMIC_TASK, CONTROL_SPACES.TASK, ScenarioLibrary.__two_link(),
                                      {'p_m': circle.position(0.0).tolist(), 'branch': IK_BRANCH.ELBOW_DOWN}, center, VirtualTrajectory([circle]), 6.0,
                                      ScenarioLibrary.__dmp_block(DMP_KINDS.RHYTHMIC, demo_duration=2.0), [ScenarioLibrary.__task_impedance(90.0, 60.0)])

    @staticmethod
    def _discrete_plus_rhythmic():
        data = ScenarioLibrary._rhythmic()
        q_i, q_f = [0.5, 0.5], [1.5, 1.5]
        data[SPEC_KEYS.SCENARIO_ID] = SCENARIO_IDS.DISCRETE_PLUS_RHYTHMIC
        data[SPEC_KEYS.DURATION] = 12.0
        data[SPEC_KEYS.EVENTS] = [ScenarioLibrary.__goal_switch(3.5, q_f, 1.0), ScenarioLibrary.__goal_switch(8.5, q_i, 1.0)]
        data[SPEC_KEYS.DMP]['goal_filter'] = ScenarioLibrary.__second_order_goal()
        return data

    @staticmethod
    def _discrete_plus_rhythmic_task():
        p_i, p_f = [-0.47, 0.9], [0.53, 0.9]
        circle = Oscillation.circle(p_i, 0.3, np.pi)
        events = [ScenarioLibrary.__goal_switch(3.5, p_f, 1.0), ScenarioLibrary.__goal_switch(8.5, p_i, 1.0)]
        dmp = ScenarioLibrary.__dmp_block(DMP_KINDS.RHYTHMIC, demo_duration=2.0, goal_filter=ScenarioLibrary.__second_order_goal())
        return ScenarioLibrary.__spec(SCENARIO_IDS.DISCRETE_PLUS_RHYTHMIC_TASK, CONTROL_SPACES.TASK, ScenarioLibrary.__two_link(),
                                      {'p_m': circle.position(0.0).tolist(), 'branch': IK_BRANCH.ELBOW_DOWN}, p_i, VirtualTrajectory([circle]), 12.0,
                                      dmp, [ScenarioLibrary.__task_impedance(90.0, 60.0)], events=events)

    @staticmethod
    def _sequencing():
        p_i, g_old, g_new = [0.0, 0.52], [-0.7, 1.22], [0.8, 1.72]
        reference = VirtualTrajectory([Submovement(p_i, g_old, 1.0)])
        dmp = ScenarioLibrary.__dmp_block(goal_filter={'order': 1, 'alpha_g': 1.0, 'tau_s': 1.0, 'integration': GOAL_INTEGRATION.EXACT})
        return ScenarioLibrary.__spec(SCENARIO_IDS.SEQUENCING, CONTROL_SPACES.TASK, ScenarioLibrary.__two_link(), {'p_m': p_i, 'branch': IK_BRANCH.ELBOW_DOWN},
                                      g_old, reference, 8.0, dmp, [ScenarioLibrary.__task_impedance(60.0, 20.0)],
                                      events=[ScenarioLibrary.__goal_switch(0.5, g_new, 1.0)])

    @staticmethod
    def _redundant_discrete():
        p_i, g = [0.0, 3.0], [3.0, 3.0]
        reference = VirtualTrajectory([Submovement(p_i, g, 2.0)])
        return ScenarioLibrary.__spec(SCENARIO_IDS.REDUNDANT_DISCRETE, CONTROL_SPACES.TASK, ScenarioLibrary.__five_link(),
                                      {'p_m': p_i, 'seed_rad': [1.0, 0.3, 0.3, 0.3, 0.3]}, g, reference, 6.0,
                                      ScenarioLibrary.__redundant_dmp(), ScenarioLibrary.__redundant_ops(), dt=1e-4)

    @staticmethod
    def _redundant_sequencing():
        p_i, g_old, g_new = [-1.62, 0.76], [-3.62, 1.76], [2.38, 3.26]
        reference = VirtualTrajectory([Submovement(p_i, g_old, 2.0)])
        dmp = ScenarioLibrary.__redundant_dmp(goal_filter={'order': 1, 'alpha_g': 1.0, 'tau_s': 1.0, 'integration': GOAL_INTEGRATION.EXACT})
        return ScenarioLibrary.__spec(SCENARIO_IDS.REDUNDANT_SEQUENCING, CONTROL_SPACES.TASK, ScenarioLibrary.__five_link(),
                                      {'p_m': p_i, 'seed_rad': [2.0, 0.5, 0.5, 0.5, 0.5]}, g_old, reference, 8.0, dmp,
                                      ScenarioLibrary.__redundant_ops(), dt=1e-4, events=[ScenarioLibrary.__goal_switch(1.0, g_new, 3.0)])

    # ======================================================================================================================================================================================

    @staticmethod
    def __task_impedance(kp, bp):
        return op_entry(TaskImpedance.op_type, Kp_N_per_m=ScenarioLibrary.__eye(kp, 2), Bp_Ns_per_m=ScenarioLibrary.__eye(bp, 2))

    @staticmethod
    def __second_order_goal():
        return {'order': 2, 'tau_s': 1.0, 'alpha_z': DMP_DEFAULTS.ALPHA_Z, 'beta_z': DMP_DEFAULTS.BETA_Z}

    @staticmethod
    def __redundant_dmp(**entries):
        sliding = {'Lambda1_per_s': ScenarioLibrary.__eye(80.0, 2), 'Lambda2_Nms_per_rad': ScenarioLibrary.__eye(100.0, 5)}
        return ScenarioLibrary.__dmp_block(demo_duration=2.0, sliding=sliding, **entries)

    @staticmethod
    def __redundant_ops():
        return [ScenarioLibrary.__task_impedance(300.0, 100.0), op_entry(JointDamping.op_type, Bq_Nms_per_rad=ScenarioLibrary.__eye(30.0, 5))]

    __BUILDERS = {
        SCENARIO_IDS.JOINT_DISCRETE: _joint_discrete,
        SCENARIO_IDS.TASK_DISCRETE: _task_discrete,
        SCENARIO_IDS.TASK_DISCRETE_SINGULAR: _task_discrete_singular,
        SCENARIO_IDS.UNEXPECTED_CONTACT: _unexpected_contact,
        SCENARIO_IDS.OBSTACLE_AVOID: _obstacle_avoid,
        SCENARIO_IDS.RHYTHMIC: _rhythmic,
        SCENARIO_IDS.RHYTHMIC_TASK: _rhythmic_task,
        SCENARIO_IDS.DISCRETE_PLUS_RHYTHMIC: _discrete_plus_rhythmic,
        SCENARIO_IDS.DISCRETE_PLUS_RHYTHMIC_TASK: _discrete_plus_rhythmic_task,
        SCENARIO_IDS.SEQUENCING: _sequencing,
        SCENARIO_IDS.REDUNDANT_DISCRETE: _redundant_discrete,
        SCENARIO_IDS.REDUNDANT_SEQUENCING: _redundant_sequencing,
    }


def op_entry(op_type, **params):
    """ An impedance entry of the eda block; the runner attaches the scenario reference and obstacle where they apply. """
    return dict(type=op_type, **params)


DMP_LEARNING_KEYS = ('kind', 'n_basis', 'n_samples', 'demo_duration_s', 'alpha_z', 'beta_z', 'alpha_s', 'amplitude')


TASK_SPRING_60_20 = op_entry(TaskImpedance.op_type, Kp_N_per_m=(60.0 * np.eye(2)).tolist(), Bp_Ns_per_m=(20.0 * np.eye(2)).tolist())


SCENARIO_VARIANTS = {
    SCENARIO_IDS.TASK_DISCRETE_SINGULAR: {
        # damping the elbow lets the arm creep into the stretch instead of swinging through it
        'joint-damped': {SPEC_KEYS.EDA: {'ops': [TASK_SPRING_60_20, op_entry(JointDamping.op_type, Bq_Nms_per_rad=(0.2 * np.eye(2)).tolist())]}},
    },
    SCENARIO_IDS.UNEXPECTED_CONTACT: {
        'feedforward-only': {SPEC_KEYS.DMP: {'pd': None}},
        'unmodulated': {SPEC_KEYS.EDA: {'ops': [TASK_SPRING_60_20]}},
    },
}

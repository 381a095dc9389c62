import json
import numpy as np
import pandas as pd
import pytest
from numpy.testing import assert_allclose
from motorprims.control import IK_BRANCH
from motorprims.dmp import CanonicalSystem, DMP_KINDS, DemoTrajectory, ImitationLearning
from motorprims.eda import Submovement
from motorprims.scenarios import (CONTROLLERS, METRIC_KEYS, Metrics, SCENARIO_IDS, SPEC_KEYS, ScenarioLibrary, ScenarioRunner, ScenarioSpec,
                                  SimTrace, TRACE_COLS)
from motorprims.Errors import ContractViolationError, ScenarioConfigError


def test_every_scenario_round_trips_through_json():
    for scenario_id in SCENARIO_IDS.ALL:
        spec = ScenarioLibrary.build_scenario(scenario_id)
        rebuilt = ScenarioSpec.from_json(spec.to_json())
        assert rebuilt.to_dict() == spec.to_dict()
        assert spec.controller == CONTROLLERS.EDA


def test_cli_names():
    assert SCENARIO_IDS.cli_name(SCENARIO_IDS.JOINT_DISCRETE) == 'joint-discrete'
    assert SCENARIO_IDS.cli_name(SCENARIO_IDS.DISCRETE_PLUS_RHYTHMIC_TASK) == 'discrete-plus-rhythmic-task'
    assert ScenarioLibrary.build_scenario('task-discrete-singular').scenario_id == SCENARIO_IDS.TASK_DISCRETE_SINGULAR


def test_default_parameters():
    spec = ScenarioLibrary.build_scenario(SCENARIO_IDS.JOINT_DISCRETE)
    assert spec.dt == 1e-3
    assert spec.duration == 3.0
    assert_allclose(spec.goal, [1.0, 1.0])
    assert_allclose(spec.eda['ops'][0]['Kq_Nm_per_rad'], 150.0 * np.eye(2))
    assert spec.dmp['n_basis'] == 50
    singular = ScenarioLibrary.build_scenario(SCENARIO_IDS.TASK_DISCRETE_SINGULAR)
    assert_allclose(singular.goal, [0.0, 2.0])
    assert ScenarioLibrary.build_scenario(SCENARIO_IDS.REDUNDANT_DISCRETE).dt == 1e-4


def test_overrides_are_merged_and_checked():
    spec = ScenarioLibrary.build_scenario(SCENARIO_IDS.TASK_DISCRETE, {SPEC_KEYS.DT: 1e-4, SPEC_KEYS.CONTROLLER: CONTROLLERS.DMP,
                                                                       SPEC_KEYS.DMP: {'n_basis': 30}})
    assert spec.dt == 1e-4
    assert spec.controller == CONTROLLERS.DMP
    assert spec.dmp['n_basis'] == 30
    assert spec.dmp['alpha_z'] == 10.0

    for bad in ({'gravity': 9.81}, {SPEC_KEYS.GOAL: [1.0]}, {SPEC_KEYS.DT: 'fast'}, {SPEC_KEYS.DT: -1e-3}, {SPEC_KEYS.CONTROLLER: 'pid'}):
        with pytest.raises(ScenarioConfigError):
            ScenarioLibrary.build_scenario(SCENARIO_IDS.TASK_DISCRETE, bad)


def test_unknown_scenario_and_variant():
    with pytest.raises(ScenarioConfigError):
        ScenarioLibrary.build_scenario('juggling')
    with pytest.raises(ScenarioConfigError):
        ScenarioLibrary.build_scenario(SCENARIO_IDS.JOINT_DISCRETE, variant='feedforward-only')
    spec = ScenarioLibrary.build_scenario(SCENARIO_IDS.UNEXPECTED_CONTACT, variant='feedforward-only')
    assert spec.dmp['pd'] is None


def test_events_must_be_time_ordered():
    data = ScenarioLibrary.build_scenario(SCENARIO_IDS.DISCRETE_PLUS_RHYTHMIC).to_dict()
    data[SPEC_KEYS.EVENTS] = data[SPEC_KEYS.EVENTS][::-1]
    with pytest.raises(ScenarioConfigError):
        ScenarioSpec(data)


def test_malformed_json_reports_the_position():
    with pytest.raises(ScenarioConfigError, match='line 2'):
        ScenarioSpec.from_json('{\n  "scenario_id": }')


def test_scenario_reference_includes_goal_switches():
    spec = ScenarioLibrary.build_scenario(SCENARIO_IDS.SEQUENCING)
    assert_allclose(spec.final_goal(), [0.8, 1.72])
    assert_allclose(spec.scenario_reference().position(8.0), [0.8, 1.72], atol=1e-12)
    assert_allclose(spec.reference().position(8.0), [-0.7, 1.22], atol=1e-12)

# ======================================================================================================================================================================================


def test_initial_state_starts_on_the_reference(two_link, five_link):
    spec = ScenarioLibrary.build_scenario(SCENARIO_IDS.TASK_DISCRETE)
    state = ScenarioRunner.initial_state(spec)
    assert state.q[1] >= 0
    assert_allclose(two_link.forward_kinematics(state.q), [0.0, 0.52], atol=1e-12)

    spec = ScenarioLibrary.build_scenario(SCENARIO_IDS.REDUNDANT_DISCRETE)
    state = ScenarioRunner.initial_state(spec)
    assert_allclose(five_link.forward_kinematics(state.q), [0.0, 3.0], atol=1e-9)
    assert_allclose(state.qdot, np.zeros(5), atol=1e-12)


def test_unreachable_initial_position_is_a_config_error():
    data = ScenarioLibrary.build_scenario(SCENARIO_IDS.TASK_DISCRETE).to_dict()
    data[SPEC_KEYS.INITIAL] = {'p_m': [0.0, 2.5], 'branch': IK_BRANCH.ELBOW_DOWN}
    with pytest.raises(ScenarioConfigError):
        ScenarioRunner.initial_state(ScenarioSpec(data))


def test_missing_controller_block_is_a_config_error():
    spec = ScenarioLibrary.build_scenario(SCENARIO_IDS.JOINT_DISCRETE, {SPEC_KEYS.DMP: None, SPEC_KEYS.CONTROLLER: CONTROLLERS.DMP})
    with pytest.raises(ScenarioConfigError):
        ScenarioRunner.build_controller(spec)


def test_weights_with_the_wrong_dimension_are_rejected():
    demo = DemoTrajectory.from_trajectory(Submovement([0.0], [1.0], 1.0), np.linspace(0.0, 1.0, 50))
    weights = ImitationLearning.learn(demo, CanonicalSystem(DMP_KINDS.DISCRETE, tau=1.0))
    spec = ScenarioLibrary.build_scenario(SCENARIO_IDS.JOINT_DISCRETE, {SPEC_KEYS.CONTROLLER: CONTROLLERS.DMP})
    with pytest.raises(ScenarioConfigError):
        ScenarioRunner.build_controller(spec, weights)


def test_learned_weights_are_cached():
    spec = ScenarioLibrary.build_scenario(SCENARIO_IDS.JOINT_DISCRETE)
    first = ScenarioLibrary.learn_weights(spec)
    assert ScenarioLibrary.learn_weights(spec) is first
    refreshed = ScenarioLibrary.learn_weights(spec, force_cache_refresh=True)
    assert refreshed is not first
    assert_allclose(refreshed.weights, first.weights)

# ======================================================================================================================================================================================


def test_zero_duration_run_records_one_row():
    spec = ScenarioLibrary.build_scenario(SCENARIO_IDS.JOINT_DISCRETE, {SPEC_KEYS.DURATION: 0.0})
    trace = ScenarioRunner.run(spec)
    assert trace.n_ticks == 1
    assert not trace.failed
    assert list(trace.df_trace.columns) == ['t', 'q_0', 'q_1', 'qd_0', 'qd_1', 'p_x', 'p_y', 'pd_x', 'pd_y', 'tau_0', 'tau_1',
                                            'ref_0', 'ref_1', 'refd_0', 'refd_1', 'cond']
    metrics = Metrics.compute(trace, spec)
    assert metrics[METRIC_KEYS.RMS_TRACKING_ERROR] == pytest.approx(0.0, abs=1e-12)
    assert metrics[METRIC_KEYS.CONVERGENCE_TIME] is None
    assert metrics[METRIC_KEYS.MAX_L_C] is None
    assert metrics[METRIC_KEYS.FAILURE] is None


@pytest.mark.parametrize('scenario_id', SCENARIO_IDS.ALL)
@pytest.mark.parametrize('controller', CONTROLLERS.ALL)
def test_every_scenario_runs(scenario_id, controller):
    spec = ScenarioLibrary.build_scenario(scenario_id, {SPEC_KEYS.DURATION: 0.05, SPEC_KEYS.CONTROLLER: controller})
    trace = ScenarioRunner.run(spec)
    assert not trace.failed
    assert trace.is_finite()
    assert trace.n_ticks == int(round(0.05 / spec.dt)) + 1
    assert_allclose(trace.df_trace[TRACE_COLS.TIME].iloc[-1], 0.05)


def test_optional_trace_columns():
    contact = ScenarioRunner.run(ScenarioLibrary.build_scenario(SCENARIO_IDS.UNEXPECTED_CONTACT, {SPEC_KEYS.DURATION: 0.01}))
    assert list(contact.df_trace.columns[-2:]) == [TRACE_COLS.LAMBDA, TRACE_COLS.L_C]
    obstacle = ScenarioRunner.run(ScenarioLibrary.build_scenario(SCENARIO_IDS.OBSTACLE_AVOID, {SPEC_KEYS.DURATION: 0.01}))
    assert obstacle.df_trace.columns[-1] == TRACE_COLS.OBSTACLE_DISTANCE
    sequencing = ScenarioRunner.run(ScenarioLibrary.build_scenario(SCENARIO_IDS.SEQUENCING, {SPEC_KEYS.DURATION: 0.01,
                                                                                             SPEC_KEYS.CONTROLLER: CONTROLLERS.DMP}))
    assert list(sequencing.df_trace.columns[-2:]) == [TRACE_COLS.goal(0), TRACE_COLS.goal(1)]


def test_runs_are_deterministic():
    spec = ScenarioLibrary.build_scenario(SCENARIO_IDS.TASK_DISCRETE, {SPEC_KEYS.DURATION: 0.2, SPEC_KEYS.CONTROLLER: CONTROLLERS.DMP})
    pd.testing.assert_frame_equal(ScenarioRunner.run(spec).df_trace, ScenarioRunner.run(spec).df_trace)


def test_obstacle_offset_and_goal_compensation_belong_to_the_eda():
    spec = ScenarioLibrary.build_scenario(SCENARIO_IDS.OBSTACLE_AVOID)
    position, perceived = spec.obstacle()
    assert_allclose(perceived - position, [0.02, 0.0])
    dmp = ScenarioRunner.build_controller(spec.with_controller(CONTROLLERS.DMP))
    assert_allclose(dmp.plan.coupling.obstacle, position)

    spring, repulsion = ScenarioRunner.build_controller(spec).ops
    assert_allclose(repulsion.obstacle, perceived)
    goal = spec.reference().position(spec.duration)
    assert_allclose(goal, [0.0, 1.72])
    rest = spring.reference.position(spec.duration)
    assert np.linalg.norm(rest - goal) > 1e-2
    assert_allclose(spring.Kp @ (rest - goal) + repulsion.task_force(goal), [0.0, 0.0], atol=1e-12)


def test_eda_goal_switch_keeps_the_first_submovement():
    spec = ScenarioLibrary.build_scenario(SCENARIO_IDS.SEQUENCING)
    controller = ScenarioRunner.build_controller(spec)
    first = controller.primary_reference().terms[0]
    controller.apply_event(spec.events[0])
    assert controller.primary_reference().terms[0] is first
    assert len(controller.primary_reference().terms) == 2

# ======================================================================================================================================================================================


def test_convergence_time():
    times = np.array([0.0, 1.0, 2.0, 3.0])
    assert Metrics.convergence_time(times, [0.5, 0.2, 0.005, 0.001], 1e-2) == 2.0
    assert Metrics.convergence_time(times, [0.001, 0.001, 0.001, 0.001], 1e-2) == 0.0
    assert Metrics.convergence_time(times, [0.001, 0.001, 0.001, 0.5], 1e-2) is None


def test_metrics_need_a_trace():
    spec = ScenarioLibrary.build_scenario(SCENARIO_IDS.JOINT_DISCRETE)
    empty = SimTrace(pd.DataFrame(columns=TRACE_COLS.columns(2, 2)), spec.scenario_id, spec.controller)
    with pytest.raises(ContractViolationError):
        Metrics.compute(empty, spec)


def test_trace_files(tmp_path):
    spec = ScenarioLibrary.build_scenario(SCENARIO_IDS.JOINT_DISCRETE, {SPEC_KEYS.DURATION: 0.05})
    trace = ScenarioRunner.run(spec)

    path = tmp_path / 'trace.csv'
    trace.to_csv(str(path))
    with open(path) as fh:
        assert fh.readline().strip() == TRACE_COLS.HEADER
    df_read = SimTrace.read_csv(str(path))
    assert list(df_read.columns) == list(trace.df_trace.columns)
    assert_allclose(df_read.to_numpy(), trace.df_trace.to_numpy(), rtol=0, atol=0)

    payload = json.loads(trace.to_json())
    assert payload['columns'] == list(trace.df_trace.columns)
    assert len(payload['rows']) == trace.n_ticks
    assert payload['failure'] is None


def test_holding_still_at_the_goal():
    at_goal = Submovement([1.0, 1.0], [1.0, 1.0], 1.0).to_dict()
    spec = ScenarioLibrary.build_scenario(SCENARIO_IDS.JOINT_DISCRETE, {SPEC_KEYS.INITIAL: {'q_rad': [1.0, 1.0]}, SPEC_KEYS.DURATION: 0.5,
                                                                        SPEC_KEYS.REFERENCE: {'terms': [at_goal]}})
    metrics = Metrics.compute(ScenarioRunner.run(spec), spec)
    assert metrics[METRIC_KEYS.TERMINAL_ERROR] == 0.0
    assert metrics[METRIC_KEYS.CONVERGENCE_TIME] == 0.0
    assert metrics[METRIC_KEYS.FINAL_JOINT_SPEED] == 0.0

import numpy as np
import pytest
from numpy.testing import assert_allclose
from motorprims.control import (CONTROL_SPACES, DmpController, IK_BRANCH, InverseKinematics, PdGains, SlidingModeGains, TorqueLaws,
                                check_gain_matrix)
from motorprims.dmp import CanonicalSystem, DMP_KINDS, DemoTrajectory, DmpSystem, ImitationLearning
from motorprims.dynamics import RobotState
from motorprims.eda import JointImpedance, Submovement, VirtualTrajectory
from motorprims.Errors import ContractViolationError, OutOfWorkspaceError, SingularityError


@pytest.mark.parametrize('target', [[0.0, 1.72], [1.2, 0.4], [-0.5, -1.1], [0.3, 0.3]])
def test_two_link_ik_reaches_target(two_link, target):
    for branch in IK_BRANCH.ALL:
        q = InverseKinematics.ik_position(two_link, target, branch=branch)
        assert_allclose(two_link.forward_kinematics(q), target, atol=1e-12)
        if branch == IK_BRANCH.ELBOW_DOWN:
            assert q[1] >= 0
        else:
            assert q[1] <= 0


def test_ik_outside_workspace_raises(two_link):
    with pytest.raises(OutOfWorkspaceError):
        InverseKinematics.ik_position(two_link, [0.0, 2.1])


def test_ik_on_the_boundary_returns_the_stretched_arm(two_link):
    q = InverseKinematics.ik_position(two_link, [0.0, 2.0])
    assert_allclose(q, [np.pi / 2, 0.0], atol=1e-15)
    with pytest.raises(SingularityError):
        InverseKinematics.ik_velocity_accel(two_link, q, [0.0, 0.1], [0.0, 0.0])


def test_ik_velocity_and_acceleration_invert_the_jacobian(two_link):
    q = InverseKinematics.ik_position(two_link, [0.4, 1.3])
    pdot, pddot = np.array([0.3, -0.2]), np.array([1.0, 0.5])
    qdot, qddot = InverseKinematics.ik_velocity_accel(two_link, q, pdot, pddot)
    assert_allclose(two_link.jacobian(q) @ qdot, pdot, atol=1e-12)
    assert_allclose(two_link.jacobian(q) @ qddot + two_link.jacobian_dot(q, qdot) @ qdot, pddot, atol=1e-12)


def test_ik_velocity_needs_a_square_jacobian(five_link):
    with pytest.raises(ContractViolationError):
        InverseKinematics.ik_velocity_accel(five_link, np.zeros(5), [0.0, 0.0], [0.0, 0.0])


def test_newton_ik_on_redundant_chain(five_link):
    q = InverseKinematics.newton(five_link, np.array([0.0, 3.0]), seed=[1.0, 0.3, 0.3, 0.3, 0.3])
    assert_allclose(five_link.forward_kinematics(q), [0.0, 3.0], atol=1e-9)
    with pytest.raises(OutOfWorkspaceError):
        InverseKinematics.newton(five_link, np.array([4.0, 4.0]))


def test_dls_pinv_without_damping_is_the_pseudoinverse(five_link, rng):
    jacobian = five_link.jacobian(rng.uniform(-1.0, 1.0, 5))
    assert_allclose(InverseKinematics.dls_pinv(jacobian, 0.0), np.linalg.pinv(jacobian), atol=1e-12)


def test_dls_pinv_stays_bounded_at_a_singularity(two_link):
    damping = 0.01
    inverse = InverseKinematics.dls_pinv(two_link.jacobian([0.3, 0.0]), damping)
    assert np.all(np.isfinite(inverse))
    assert np.linalg.norm(inverse, 2) <= 1.0 / (2.0 * damping) + 1e-9


def test_damped_pinv_only_damps_near_singularities(two_link):
    well_conditioned = two_link.jacobian([0.3, 1.5])
    assert_allclose(InverseKinematics.damped_pinv(well_conditioned), np.linalg.pinv(well_conditioned), atol=1e-12)
    stretched = two_link.jacobian([0.3, 1e-4])
    assert np.linalg.norm(InverseKinematics.damped_pinv(stretched), 2) < 100.0

# ======================================================================================================================================================================================


def test_gain_checks():
    check_gain_matrix(np.eye(2), 2, 'K')
    with pytest.raises(ContractViolationError):
        check_gain_matrix([[1.0, 0.5], [0.0, 1.0]], 2, 'K')
    with pytest.raises(ContractViolationError):
        check_gain_matrix(-np.eye(2), 2, 'K')
    with pytest.raises(ContractViolationError):
        check_gain_matrix(np.eye(3), 2, 'K')
    check_gain_matrix(np.zeros((2, 2)), 2, 'B', definite=False)


def test_pd_law_equals_joint_impedance(two_link):
    reference = VirtualTrajectory([Submovement([0.0, 0.0], [1.0, 1.0], 1.0)])
    gains = PdGains(150.0 * np.eye(2), 50.0 * np.eye(2))
    impedance = JointImpedance(gains.Kq, gains.Bq, reference)
    state = RobotState(q=[0.2, 0.1], qdot=[0.5, -0.3])
    for t in (0.0, 0.25, 0.5, 0.9, 2.0):
        q_des, qdot_des = reference.evaluate(t)
        assert_allclose(TorqueLaws.pd_feedback(gains, q_des, qdot_des, state.q, state.qdot), impedance.force(two_link, state, t), atol=1e-12)


def test_pd_feedback_checks_dimensions():
    gains = PdGains(np.eye(2), np.eye(2))
    with pytest.raises(ContractViolationError):
        TorqueLaws.pd_feedback(gains, np.zeros(3), np.zeros(3), np.zeros(3), np.zeros(3))


def test_inverse_dynamics_vanishes_at_rest(five_link):
    assert_allclose(TorqueLaws.inverse_dynamics_torque(five_link, np.full(5, 0.4), np.zeros(5), np.zeros(5)), np.zeros(5), atol=1e-15)


def test_sliding_mode_on_the_reference_is_inverse_dynamics(five_link):
    gains = SlidingModeGains(80.0 * np.eye(2), 100.0 * np.eye(5))
    q = np.array([1.0, 0.3, 0.3, 0.3, 0.3])
    assert five_link.conditioning(q) > 0.05
    jacobian = five_link.jacobian(q)
    qdot = np.linalg.pinv(jacobian) @ np.array([0.2, -0.1])
    state = RobotState(q=q, qdot=qdot)
    p, pdot = five_link.forward_kinematics(q), jacobian @ qdot
    pddot = np.array([0.5, 0.3])

    tau = TorqueLaws.sliding_mode_torque(five_link, gains, state, p, pdot, pddot)
    qddot_r = np.linalg.pinv(jacobian) @ (pddot - five_link.jacobian_dot(q, qdot) @ qdot)
    expected = five_link.mass_matrix(q) @ qddot_r + five_link.coriolis_matrix(q, qdot) @ qdot
    assert_allclose(tau, expected, atol=1e-9)


def test_sliding_mode_at_rest_damps_towards_the_reference_velocity(five_link):
    gains = SlidingModeGains(80.0 * np.eye(2), 100.0 * np.eye(5))
    state = RobotState.at_rest([1.0, 0.3, 0.3, 0.3, 0.3])
    p = five_link.forward_kinematics(state.q)
    tau = TorqueLaws.sliding_mode_torque(five_link, gains, state, p + np.array([0.1, 0.0]), np.zeros(2), np.zeros(2))
    assert_allclose(five_link.jacobian(state.q) @ tau, [800.0, 0.0], atol=1e-9)

# ======================================================================================================================================================================================


def joint_plan(start, goal):
    demo = DemoTrajectory.from_trajectory(Submovement(start, goal, 1.0), np.linspace(0.0, 1.0, 100))
    weights = ImitationLearning.learn(demo, CanonicalSystem(DMP_KINDS.DISCRETE, tau=1.0))
    return DmpSystem.from_weights(weights)


def test_dmp_controller_feedforward_is_inverse_dynamics(two_link):
    plan = joint_plan([0.0, 0.0], [1.0, 1.0])
    controller = DmpController(plan, CONTROL_SPACES.JOINT)
    for _ in range(200):
        controller.advance(1e-3)
    y, ydot, yddot = plan.sample()
    state = RobotState(q=y, qdot=ydot)
    assert_allclose(controller.torque(two_link, state, 0.2), TorqueLaws.inverse_dynamics_torque(two_link, y, ydot, yddot), atol=1e-12)


def test_dmp_controller_adds_pd_feedback(two_link):
    plan = joint_plan([0.0, 0.0], [1.0, 1.0])
    gains = PdGains(50.0 * np.eye(2), 30.0 * np.eye(2))
    controller = DmpController(plan, CONTROL_SPACES.JOINT, pd_gains=gains)
    state = RobotState.at_rest([0.1, 0.0])
    y, ydot, yddot = plan.sample()
    expected = TorqueLaws.inverse_dynamics_torque(two_link, y, ydot, yddot) + TorqueLaws.pd_feedback(gains, y, ydot, state.q, state.qdot)
    assert_allclose(controller.torque(two_link, state, 0.0), expected, atol=1e-12)


def test_task_space_dmp_controller_needs_two_dofs():
    with pytest.raises(ContractViolationError):
        DmpController(joint_plan([0.0, 0.0, 0.0], [1.0, 1.0, 1.0]), CONTROL_SPACES.TASK)


def test_redundant_task_plan_needs_sliding_gains(five_link):
    controller = DmpController(joint_plan([0.0, 3.0], [3.0, 3.0]), CONTROL_SPACES.TASK)
    with pytest.raises(ContractViolationError):
        controller.torque(five_link, RobotState.at_rest(np.full(5, 0.3)), 0.0)

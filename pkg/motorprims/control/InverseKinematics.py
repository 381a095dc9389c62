import logging as log
import numpy as np
from motorprims.Errors import ContractViolationError, OutOfWorkspaceError, SingularityError


class InverseKinematics:

    @staticmethod
    def ik_position(chain, p_des, seed=None, branch=None, boundary_band=None):
        p_des = np.asarray(p_des, dtype=float)
        if p_des.shape != (2,):
            raise ContractViolationError('p_des must be a 2-vector')
        branch = IK_BRANCH.ELBOW_DOWN if branch is None else branch
        if branch not in IK_BRANCH.ALL:
            raise ContractViolationError('branch must be one of {0}'.format(IK_BRANCH.ALL))
        boundary_band = CONTROL_DEFAULTS.IK_BOUNDARY_BAND if boundary_band is None else boundary_band

        if chain.n_links == 2:
            return InverseKinematics.__two_link(chain, p_des, branch, boundary_band)
        return InverseKinematics.newton(chain, p_des, seed)

    @staticmethod
    def __two_link(chain, p_des, branch, boundary_band):
        l1, l2 = chain.lengths
        r = float(np.linalg.norm(p_des))
        bearing = np.arctan2(p_des[1], p_des[0])

        if r > l1 + l2 + boundary_band or r < abs(l1 - l2) - boundary_band:
            log.error('Target {0} at radius [{1}] lies outside the annulus [{2}, {3}]'.format(p_des, r, abs(l1 - l2), l1 + l2))
            raise OutOfWorkspaceError('target {0} is outside the reachable workspace'.format(p_des))
        if r >= l1 + l2 - boundary_band:
            return np.array([bearing, 0.0])

        cos_q2 = np.clip((r ** 2 - l1 ** 2 - l2 ** 2) / (2.0 * l1 * l2), -1.0, 1.0)
        q2 = np.arccos(cos_q2)
        if branch == IK_BRANCH.ELBOW_UP:
            q2 = -q2
        q1 = bearing - np.arctan2(l2 * np.sin(q2), l1 + l2 * np.cos(q2))
        return np.array([q1, q2])

    @staticmethod
    def newton(chain, p_des, seed=None, tolerance=None, max_iterations=200):
        """ Damped Newton iteration on the pseudoinverse, for chains without a closed-form inverse. """
        tolerance = CONTROL_DEFAULTS.NEWTON_TOLERANCE if tolerance is None else tolerance
        if np.linalg.norm(p_des) > chain.reach:
            log.error('Target {0} is beyond the chain reach [{1}]'.format(p_des, chain.reach))
            raise OutOfWorkspaceError('target {0} is beyond the chain reach'.format(p_des))

        q = np.full(chain.n_links, 0.1) if seed is None else chain.check_vector(seed, 'seed').copy()
        for iteration in range(max_iterations):
            error = p_des - chain.forward_kinematics(q)
            if np.linalg.norm(error) < tolerance:
                log.info('Newton IK converged in [{0}] iterations'.format(iteration))
                return q
            step = InverseKinematics.damped_pinv(chain.jacobian(q)) @ error
            step_norm = np.linalg.norm(step)
            if step_norm > CONTROL_DEFAULTS.NEWTON_MAX_STEP:
                step = step * CONTROL_DEFAULTS.NEWTON_MAX_STEP / step_norm
            q = q + step

        log.error('Newton IK did not reach {0} within [{1}] iterations from seed {2}'.format(p_des, max_iterations, seed))
        raise OutOfWorkspaceError('Newton IK did not converge to {0}'.format(p_des))

    # ======================================================================================================================================================================================

    @staticmethod
    def ik_velocity_accel(chain, q, pdot_des, pddot_des, singular_det=None):
        if chain.n_links != 2:
            raise ContractViolationError('inverse-Jacobian maps need a square Jacobian (2 links), got {0}'.format(chain.n_links))
        singular_det = CONTROL_DEFAULTS.SINGULAR_DET if singular_det is None else singular_det

        jacobian = chain.jacobian(q)
        det = np.linalg.det(jacobian)
        if abs(det) < singular_det:
            log.error('Jacobian is singular at q={0} (|det J| = {1})'.format(q, abs(det)))
            raise SingularityError('singular Jacobian at q={0}'.format(q))

        qdot_des = np.linalg.solve(jacobian, pdot_des)
        qddot_des = np.linalg.solve(jacobian, np.asarray(pddot_des) - chain.jacobian_dot(q, qdot_des) @ qdot_des)
        return qdot_des, qddot_des

    @staticmethod
    def dls_pinv(jacobian, damping=0.0):
        """ J^T (J J^T + damping^2 I)^-1, the Moore-Penrose inverse when damping is zero. """
        if damping < 0:
            raise ContractViolationError('damping must be non-negative')
        jacobian = np.asarray(jacobian, dtype=float)
        if damping == 0.0:
            return np.linalg.pinv(jacobian)
        gram = jacobian @ jacobian.T + damping ** 2 * np.eye(jacobian.shape[0])
        return np.linalg.solve(gram, jacobian).T

    @staticmethod
    def damped_pinv(jacobian, damping=None, activation_ratio=None):
        damping = CONTROL_DEFAULTS.DLS_DAMPING if damping is None else damping
        activation_ratio = CONTROL_DEFAULTS.DLS_ACTIVATION_RATIO if activation_ratio is None else activation_ratio
        singular_values = np.linalg.svd(jacobian, compute_uv=False)
        if singular_values[-1] < activation_ratio * singular_values[0]:
            return InverseKinematics.dls_pinv(jacobian, damping)
        return InverseKinematics.dls_pinv(jacobian, 0.0)


class IK_BRANCH:
    # sign of the elbow joint: elbow-down bends with q2 >= 0, elbow-up with q2 <= 0
    ELBOW_DOWN = 'elbow-down'
    ELBOW_UP = 'elbow-up'
    ALL = (ELBOW_DOWN, ELBOW_UP)


class CONTROL_DEFAULTS:
    DLS_DAMPING = 0.01
    DLS_ACTIVATION_RATIO = 0.05
    SINGULAR_DET = 1e-9
    # targets this close to the outer reach are treated as the stretched configuration
    IK_BOUNDARY_BAND = 1e-3
    NEWTON_TOLERANCE = 1e-10
    NEWTON_MAX_STEP = 0.5

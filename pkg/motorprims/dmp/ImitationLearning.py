import logging as log
import numpy as np
from motorprims.dmp.CanonicalSystem import DMP_KINDS, DMP_DEFAULTS
from motorprims.dmp.DmpSystem import DmpSystem
from motorprims.dmp.DmpWeights import DmpWeights
from motorprims.dmp.ForcingTerm import ForcingTerm
from motorprims.Errors import ContractViolationError


class ImitationLearning:
    """
    One-shot learning of forcing-term weights by locally weighted regression.  Each weight is the scalar
    weighted least-squares fit of the forcing target against a, with the basis activations as sample weights:

        w_i = (a^T Phi_i f_target) / (a^T Phi_i a)
    """

    ZERO_DENOMINATOR = 1e-300

    @staticmethod
    def rhythmic_tau(period):
        if not period > 0:
            raise ContractViolationError('period must be positive')
        return period / (2.0 * np.pi)

    @staticmethod
    def forcing_target(y, ydot, yddot, goal, tau, alpha_z, beta_z):
        return tau ** 2 * yddot + alpha_z * tau * ydot + alpha_z * beta_z * (y - goal)

    @staticmethod
    def goal_and_start(kind, y):
        if kind == DMP_KINDS.DISCRETE:
            return float(y[-1]), float(y[0])
        return 0.5 * (float(np.min(y)) + float(np.max(y))), float(y[0])

    # ======================================================================================================================================================================================

    @staticmethod
    def learn_forcing_term(times, y, ydot, yddot, canonical, alpha_z=None, beta_z=None, n_basis=None, amplitude=None):
        alpha_z = DMP_DEFAULTS.ALPHA_Z if alpha_z is None else alpha_z
        beta_z = alpha_z / 4.0 if beta_z is None else beta_z
        times, y, ydot, yddot = (np.asarray(v, dtype=float).ravel() for v in (times, y, ydot, yddot))
        if not (len(times) == len(y) == len(ydot) == len(yddot)):
            log.error('Sample lengths differ: t={0}, y={1}, ydot={2}, yddot={3}'.format(len(times), len(y), len(ydot), len(yddot)))
            raise ContractViolationError('demo sample vectors must have equal length')
        if len(times) < 2:
            raise ContractViolationError('need at least two demo samples')

        kind = canonical.kind
        if n_basis is None:
            n_basis = DMP_DEFAULTS.N_DISCRETE if kind == DMP_KINDS.DISCRETE else DMP_DEFAULTS.N_RHYTHMIC
        goal, y0 = ImitationLearning.goal_and_start(kind, y)
        s = canonical.evaluate(times - times[0])

        if kind == DMP_KINDS.DISCRETE:
            scale = goal - y0
            a = s * scale
        else:
            scale = DMP_DEFAULTS.RHYTHMIC_AMPLITUDE if amplitude is None else float(amplitude)
            a = np.full(len(times), scale)

        f_target = ImitationLearning.forcing_target(y, ydot, yddot, goal, canonical.tau, alpha_z, beta_z)
        forcing = ForcingTerm.zeros(kind, n_basis, scale, canonical.alpha_s)
        phi = forcing.basis_matrix(s)

        numerator = phi.T @ (a * f_target)
        denominator = phi.T @ (a * a)
        degenerate = denominator < ImitationLearning.ZERO_DENOMINATOR
        if np.any(degenerate):
            log.warning('[{0}] of [{1}] regression denominators are zero (g == y0?), those weights are set to 0'.format(int(degenerate.sum()), n_basis))
        forcing.weights = np.where(degenerate, 0.0, numerator / np.where(degenerate, 1.0, denominator))
        return forcing, goal, y0

    @staticmethod
    def learn(demo, canonical, alpha_z=None, beta_z=None, n_basis=None, amplitude=None):
        alpha_z = DMP_DEFAULTS.ALPHA_Z if alpha_z is None else alpha_z
        beta_z = alpha_z / 4.0 if beta_z is None else beta_z

        terms, goals, starts = [], [], []
        for i in range(demo.n_dofs):
            forcing, goal, y0 = ImitationLearning.learn_forcing_term(demo.times, demo.y[:, i], demo.ydot[:, i], demo.yddot[:, i],
                                                                     canonical, alpha_z, beta_z, n_basis, amplitude)
            terms.append(forcing)
            goals.append(goal)
            starts.append(y0)

        log.info('Learned [{0}] {1} DOFs with [{2}] basis functions from [{3}] samples'.format(demo.n_dofs, canonical.kind, terms[0].n_basis, demo.n_samples))
        return DmpWeights(kind=canonical.kind, tau=canonical.tau, alpha_z=alpha_z, beta_z=beta_z, alpha_s=canonical.alpha_s,
                          centers=terms[0].centers, widths=terms[0].widths, weights=[t.weights for t in terms],
                          scale=[t.scale for t in terms], goal=goals, y0=starts)

    @staticmethod
    def reproduction_rms(weights, demo, dt=1e-3):
        """ Replays the weights from the demo's initial conditions and returns the RMS position error at the demo samples. """
        system = DmpSystem.from_weights(weights, y0=demo.y[0], ydot0=demo.ydot[0])
        df_rollout = system.rollout(demo.duration, dt)
        times = demo.times - demo.times[0]
        replay = np.column_stack([np.interp(times, df_rollout['t'].to_numpy(), df_rollout['y_{0}'.format(i)].to_numpy())
                                  for i in range(demo.n_dofs)])
        return float(np.sqrt(np.mean(np.sum((replay - demo.y) ** 2, axis=1))))

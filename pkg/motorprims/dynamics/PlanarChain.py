import logging as log
import numpy as np
from dataclasses import dataclass, field
from motorprims.Errors import ContractViolationError


class PlanarChain:
    """
    Serial chain of n revolute links moving in the horizontal plane (gravity is compensated, so it never appears).

    Joint angles are relative: link i points along the sum of q_0..q_i.  The kinematic and inertial maps are all
    assembled from two index tables built once per chain:

        _lower[a, k]  = 1 when joint k rotates segment a (k <= a)
        _lever[i, a]  = length of segment a inside the centre-of-mass position of link i (com offset on the diagonal)
    """

    def __init__(self, masses, lengths, com_offsets=None, inertias=None):
        self.masses = np.asarray(masses, dtype=float).ravel()
        self.lengths = np.asarray(lengths, dtype=float).ravel()
        self.n_links = len(self.masses)

        if com_offsets is None:
            com_offsets = self.lengths / 2.0
        if inertias is None:
            inertias = self.masses * self.lengths ** 2 / 12.0
        self.com_offsets = np.asarray(com_offsets, dtype=float).ravel()
        self.inertias = np.asarray(inertias, dtype=float).ravel()

        self.__validate()

        n = self.n_links
        self._lower = np.tril(np.ones((n, n)))
        lever = np.tril(np.tile(self.lengths, (n, 1)), k=-1)
        lever[np.diag_indices(n)] = self.com_offsets
        self._lever = lever

    @classmethod
    def uniform_bars(cls, n_links, mass=1.0, length=1.0):
        return cls(masses=np.full(n_links, float(mass)), lengths=np.full(n_links, float(length)))

    # ======================================================================================================================================================================================

    def __validate(self):
        n = self.n_links
        if n < 1:
            log.error('A planar chain needs at least one link, got [{0}]'.format(n))
            raise ContractViolationError('n_links must be positive')
        for name, values in (('lengths', self.lengths), ('com_offsets', self.com_offsets), ('inertias', self.inertias)):
            if len(values) != n:
                log.error('Chain field [{0}] has [{1}] entries but there are [{2}] links'.format(name, len(values), n))
                raise ContractViolationError('{0} must have {1} entries'.format(name, n))
        if not all(np.all(np.isfinite(v)) for v in (self.masses, self.lengths, self.com_offsets, self.inertias)):
            raise ContractViolationError('chain parameters must be finite')
        if np.any(self.masses <= 0) or np.any(self.lengths <= 0):
            log.error('Masses {0} and lengths {1} must be strictly positive'.format(self.masses, self.lengths))
            raise ContractViolationError('masses and lengths must be strictly positive')
        if np.any(self.com_offsets < 0) or np.any(self.com_offsets > self.lengths):
            raise ContractViolationError('com_offsets must lie within [0, length]')
        if np.any(self.inertias < 0):
            raise ContractViolationError('inertias must be non-negative')

    def check_vector(self, x, name='q'):
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n_links,):
            log.error('Expected [{0}] to have shape ({1},) but got {2}'.format(name, self.n_links, x.shape))
            raise ContractViolationError('{0} must have {1} entries, got shape {2}'.format(name, self.n_links, x.shape))
        return x

    @property
    def reach(self):
        return float(np.sum(self.lengths))

    # ======================================================================================================================================================================================

    def forward_kinematics(self, q):
        phi = np.cumsum(self.check_vector(q, 'q'))
        return np.array([np.dot(self.lengths, np.cos(phi)), np.dot(self.lengths, np.sin(phi))])

    def joint_positions(self, q):
        phi = np.cumsum(self.check_vector(q, 'q'))
        segments = self.lengths[:, None] * np.column_stack((np.cos(phi), np.sin(phi)))
        return np.vstack((np.zeros(2), np.cumsum(segments, axis=0)))

    def jacobian(self, q):
        phi = np.cumsum(self.check_vector(q, 'q'))
        u = np.vstack((-np.sin(phi), np.cos(phi)))
        return (u * self.lengths) @ self._lower

    def jacobian_dot(self, q, qdot):
        phi = np.cumsum(self.check_vector(q, 'q'))
        phi_dot = np.cumsum(self.check_vector(qdot, 'qdot'))
        radial = np.vstack((np.cos(phi), np.sin(phi)))
        return -(radial * (self.lengths * phi_dot)) @ self._lower

    # ======================================================================================================================================================================================

    def _com_jacobians(self, phi):
        u = np.vstack((-np.sin(phi), np.cos(phi)))
        return np.einsum('ia,da,ak->idk', self._lever, u, self._lower)

    def mass_matrix(self, q):
        phi = np.cumsum(self.check_vector(q, 'q'))
        jv = self._com_jacobians(phi)
        return np.einsum('i,idk,idl->kl', self.masses, jv, jv) + np.einsum('i,ik,il->kl', self.inertias, self._lower, self._lower)

    def mass_matrix_partials(self, q):
        """
        dM[k, l, j] = dM_kl / dq_j, differentiated analytically through the link Jacobians.
        """
        phi = np.cumsum(self.check_vector(q, 'q'))
        jv = self._com_jacobians(phi)
        radial = np.vstack((np.cos(phi), np.sin(phi)))
        djv = -np.einsum('ia,da,ak,aj->idkj', self._lever, radial, self._lower, self._lower)
        half = np.einsum('i,idkj,idl->klj', self.masses, djv, jv)
        return half + half.transpose(1, 0, 2)

    def coriolis_matrix(self, q, qdot):
        qdot = self.check_vector(qdot, 'qdot')
        dm = self.mass_matrix_partials(q)
        # Christoffel symbols of the first kind contracted with qdot
        c_ij_k = dm @ qdot
        c_ik_j = np.einsum('ikj,k->ij', dm, qdot)
        c_jk_i = np.einsum('jki,k->ij', dm, qdot)
        return 0.5 * (c_ij_k + c_ik_j - c_jk_i)

    def kinetic_energy(self, q, qdot):
        qdot = self.check_vector(qdot, 'qdot')
        return 0.5 * float(qdot @ self.mass_matrix(q) @ qdot)

    def conditioning(self, q):
        singular_values = np.linalg.svd(self.jacobian(q), compute_uv=False)
        if singular_values[0] <= 0.0:
            return 0.0
        return float(singular_values[-1] / singular_values[0])

    # ======================================================================================================================================================================================

    def to_dict(self):
        return {
            'masses_kg': self.masses.tolist(),
            'lengths_m': self.lengths.tolist(),
            'com_offsets_m': self.com_offsets.tolist(),
            'inertias_kgm2': self.inertias.tolist(),
        }

    @classmethod
    def from_dict(cls, data):
        return cls(masses=data['masses_kg'], lengths=data['lengths_m'],
                   com_offsets=data.get('com_offsets_m'), inertias=data.get('inertias_kgm2'))


@dataclass
class RobotState:
    q: np.ndarray
    qdot: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        self.q = np.asarray(self.q, dtype=float)
        self.qdot = np.asarray(self.qdot, dtype=float)
        if self.q.shape != self.qdot.shape or self.q.ndim != 1:
            raise ContractViolationError('q and qdot must be vectors of equal length, got {0} and {1}'.format(self.q.shape, self.qdot.shape))

    @classmethod
    def at_rest(cls, q, t=0.0):
        q = np.asarray(q, dtype=float)
        return cls(q=q.copy(), qdot=np.zeros_like(q), t=t)

    def is_finite(self):
        return bool(np.all(np.isfinite(self.q)) and np.all(np.isfinite(self.qdot)) and np.isfinite(self.t))


@dataclass
class ExternalForce:
    point_force: np.ndarray = field(default_factory=lambda: np.zeros(2))
    active: bool = False

    def __post_init__(self):
        self.point_force = np.asarray(self.point_force, dtype=float)
        if self.point_force.shape != (2,) or not np.all(np.isfinite(self.point_force)):
            raise ContractViolationError('external force must be a finite 2-vector, got {0}'.format(self.point_force))

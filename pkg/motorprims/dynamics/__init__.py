from motorprims.dynamics.PlanarChain import PlanarChain, RobotState, ExternalForce
from motorprims.dynamics.ChainIntegrator import ChainIntegrator, SIM_DEFAULTS
from motorprims.dynamics.ContactWall import ContactWall, CONTACT_DEFAULTS

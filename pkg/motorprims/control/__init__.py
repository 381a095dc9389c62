from motorprims.control.InverseKinematics import InverseKinematics, IK_BRANCH, CONTROL_DEFAULTS
from motorprims.control.TorqueLaws import TorqueLaws, PdGains, SlidingModeGains, check_gain_matrix
from motorprims.control.ControllerInterface import ControllerInterface, CONTROL_SPACES, EVENT_KEYS, EVENT_TYPES
from motorprims.control.DmpController import DmpController

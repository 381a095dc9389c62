from motorprims.eda.Submovement import Submovement, VT_TERMS
from motorprims.eda.Oscillation import Oscillation, OSCILLATION_SHAPES
from motorprims.eda.VirtualTrajectory import VirtualTrajectory
from motorprims.eda.Impedances import ImpedanceInterface, JointImpedance, TaskImpedance, JointDamping, RepulsivePoint, EnergyModulatedTask, EDA_DEFAULTS
from motorprims.eda.EdaController import EdaController

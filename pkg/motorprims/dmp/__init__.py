from motorprims.dmp.CanonicalSystem import CanonicalSystem, DMP_KINDS, DMP_DEFAULTS
from motorprims.dmp.ForcingTerm import ForcingTerm
from motorprims.dmp.TransformationSystem import TransformationSystem
from motorprims.dmp.GoalFilter import GoalFilter, SecondOrderGoalFilter, GOAL_INTEGRATION
from motorprims.dmp.DemoTrajectory import DemoTrajectory, DEMO_COLS
from motorprims.dmp.DmpWeights import DmpWeights
from motorprims.dmp.CouplingTerm import ObstacleCoupling
from motorprims.dmp.DmpSystem import DmpSystem
from motorprims.dmp.ImitationLearning import ImitationLearning

from motorprims.scenarios.ScenarioSpec import ScenarioSpec, SPEC_KEYS, CONTROLLERS, SCENARIO_IDS
from motorprims.scenarios.ScenarioLibrary import ScenarioLibrary, SCENARIO_VARIANTS, op_entry
from motorprims.scenarios.SimTrace import SimTrace, TRACE_COLS
from motorprims.scenarios.ScenarioRunner import ScenarioRunner
from motorprims.scenarios.Metrics import Metrics, METRIC_KEYS

import copy
import json
import logging as log
import numbers
import numpy as np
from motorprims.control.ControllerInterface import CONTROL_SPACES, EVENT_KEYS, EVENT_TYPES
from motorprims.dynamics.PlanarChain import PlanarChain
from motorprims.eda.VirtualTrajectory import VirtualTrajectory
from motorprims.Errors import MotorPrimsError, ScenarioConfigError


class ScenarioSpec:
    """
    A complete, JSON-native description of one experiment.  The document is kept as plain dicts and lists
    (matrices row-major, units in the key names) so it round-trips through json unchanged; the accessors
    below build the library objects from it on demand.
    """

    def __init__(self, data):
        self.data = copy.deepcopy(data)
        self.validate()

    def validate(self):
        missing = [key for key in SPEC_KEYS.REQUIRED if key not in self.data]
        if missing:
            log.error('Scenario spec is missing {0}'.format(missing))
            raise ScenarioConfigError('scenario spec is missing {0}'.format(missing))
        if self.data[SPEC_KEYS.SCENARIO_ID] not in SCENARIO_IDS.ALL:
            raise ScenarioConfigError('unknown scenario id {0}'.format(self.data[SPEC_KEYS.SCENARIO_ID]))
        if self.controller not in CONTROLLERS.ALL:
            raise ScenarioConfigError('controller must be one of {0}, got {1}'.format(CONTROLLERS.ALL, self.controller))
        if self.space not in CONTROL_SPACES.ALL:
            raise ScenarioConfigError('space must be one of {0}, got {1}'.format(CONTROL_SPACES.ALL, self.space))
        if not isinstance(self.dt, numbers.Real) or not self.dt > 0:
            raise ScenarioConfigError('dt_s must be positive, got {0}'.format(self.dt))
        if not isinstance(self.duration, numbers.Real) or not self.duration >= 0:
            raise ScenarioConfigError('duration_s must be non-negative, got {0}'.format(self.duration))

        times = [event.get(EVENT_KEYS.TIME) for event in self.events]
        if any(not isinstance(t, numbers.Real) for t in times) or times != sorted(times):
            log.error('Scenario events must carry numeric, time-ordered {0}: {1}'.format(EVENT_KEYS.TIME, times))
            raise ScenarioConfigError('events must be time-ordered')
        for event in self.events:
            if event.get(EVENT_KEYS.TYPE) not in EVENT_TYPES.ALL:
                raise ScenarioConfigError('unknown event type {0}'.format(event.get(EVENT_KEYS.TYPE)))
            if event[EVENT_KEYS.TYPE] == EVENT_TYPES.GOAL_SWITCH and not (EVENT_KEYS.GOAL in event and EVENT_KEYS.DURATION in event):
                raise ScenarioConfigError('goal_switch events need {0} and {1}'.format(EVENT_KEYS.GOAL, EVENT_KEYS.DURATION))

        try:
            chain = self.chain()
            reference = self.reference()
        except (MotorPrimsError, KeyError, TypeError, ValueError) as err:
            log.error('Scenario spec [{0}] does not describe a valid chain/reference: {1}'.format(self.scenario_id, err))
            raise ScenarioConfigError('invalid chain or reference: {0}'.format(err))
        expected = chain.n_links if self.space == CONTROL_SPACES.JOINT else 2
        if reference.n_dofs != expected or len(self.goal) != expected:
            raise ScenarioConfigError('{0}-space reference and goal need {1} entries'.format(self.space, expected))

    # ======================================================================================================================================================================================

    @property
    def scenario_id(self):
        return self.data[SPEC_KEYS.SCENARIO_ID]

    @property
    def controller(self):
        return self.data[SPEC_KEYS.CONTROLLER]

    @property
    def space(self):
        return self.data[SPEC_KEYS.SPACE]

    @property
    def dt(self):
        return self.data[SPEC_KEYS.DT]

    @property
    def duration(self):
        return self.data[SPEC_KEYS.DURATION]

    @property
    def goal(self):
        return np.asarray(self.data[SPEC_KEYS.GOAL], dtype=float)

    @property
    def events(self):
        return self.data.get(SPEC_KEYS.EVENTS) or []

    @property
    def dmp(self):
        return self.data.get(SPEC_KEYS.DMP)

    @property
    def eda(self):
        return self.data.get(SPEC_KEYS.EDA)

    def chain(self):
        return PlanarChain.from_dict(self.data[SPEC_KEYS.CHAIN])

    def reference(self):
        return VirtualTrajectory.from_dict(self.data[SPEC_KEYS.REFERENCE])

    def scenario_reference(self):
        """ The commanded motion including every goal switch, each superimposed as one more submovement. """
        reference = self.reference()
        for event in self.events:
            if event[EVENT_KEYS.TYPE] == EVENT_TYPES.GOAL_SWITCH:
                reference = reference.retarget(event[EVENT_KEYS.GOAL], event[EVENT_KEYS.TIME], event[EVENT_KEYS.DURATION])
        return reference

    def final_goal(self):
        goal = self.goal
        for event in self.events:
            if event[EVENT_KEYS.TYPE] == EVENT_TYPES.GOAL_SWITCH:
                goal = np.asarray(event[EVENT_KEYS.GOAL], dtype=float)
        return goal

    def obstacle(self):
        """ (true position, position as perceived by the EDA repulsion) or None. """
        obstacle = self.data.get(SPEC_KEYS.OBSTACLE)
        if obstacle is None:
            return None
        position = np.asarray(obstacle['position_m'], dtype=float)
        return position, position + np.asarray(obstacle.get('offset_m', [0.0, 0.0]), dtype=float)

    def with_controller(self, controller):
        data = copy.deepcopy(self.data)
        data[SPEC_KEYS.CONTROLLER] = controller
        return ScenarioSpec(data)

    # ======================================================================================================================================================================================

    @staticmethod
    def apply_overrides(data, overrides, path=''):
        """
        Merges overrides into data key by key.  Dicts merge recursively; numbers must stay numbers; numeric
        vectors and matrices must keep their shape; lists of records (ops, events) and null blocks are replaced.
        """
        merged = copy.deepcopy(data)
        for key, value in (overrides or {}).items():
            where = '{0}.{1}'.format(path, key) if path else key
            if key not in merged:
                log.error('Override [{0}] does not name a scenario field'.format(where))
                raise ScenarioConfigError('unknown override field {0}'.format(where))
            current = merged[key]
            if isinstance(current, dict) and isinstance(value, dict):
                merged[key] = ScenarioSpec.apply_overrides(current, value, where)
            elif current is None or value is None:
                merged[key] = copy.deepcopy(value)
            elif isinstance(current, bool) or isinstance(current, str):
                if type(value) is not type(current):
                    raise ScenarioConfigError('override {0} must be a {1}'.format(where, type(current).__name__))
                merged[key] = value
            elif isinstance(current, numbers.Real):
                if isinstance(value, bool) or not isinstance(value, numbers.Real):
                    raise ScenarioConfigError('override {0} must be a number'.format(where))
                merged[key] = float(value) if isinstance(current, float) else value
            elif ScenarioSpec.__is_numeric(current):
                if not ScenarioSpec.__is_numeric(value) or np.shape(value) != np.shape(current):
                    log.error('Override [{0}] has shape {1}, expected {2}'.format(where, np.shape(value) if ScenarioSpec.__is_numeric(value) else '?', np.shape(current)))
                    raise ScenarioConfigError('override {0} must have shape {1}'.format(where, np.shape(current)))
                merged[key] = copy.deepcopy(value)
            elif isinstance(current, list) and isinstance(value, list):
                merged[key] = copy.deepcopy(value)
            else:
                raise ScenarioConfigError('override {0} has the wrong type'.format(where))
        return merged

    @staticmethod
    def __is_numeric(value):
        if not isinstance(value, list):
            return False
        try:
            array = np.asarray(value, dtype=float)
        except (TypeError, ValueError):
            return False
        return array.dtype.kind == 'f'

    def to_dict(self):
        return copy.deepcopy(self.data)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ScenarioConfigError('a scenario spec must be a JSON object')
        return cls(data)

    def to_json(self):
        return json.dumps(self.data, indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as err:
            log.error('Scenario spec is not valid JSON: {0}'.format(err))
            raise ScenarioConfigError('malformed scenario JSON at line {0} column {1}: {2}'.format(err.lineno, err.colno, err.msg))
        return cls.from_dict(data)

    def save(self, path):
        with open(path, 'w') as fh:
            fh.write(self.to_json())
        log.info('Wrote scenario [{0}] to [{1}]'.format(self.scenario_id, path))

    @classmethod
    def load(cls, path):
        try:
            with open(path) as fh:
                return cls.from_json(fh.read())
        except OSError as err:
            log.error('Unable to read scenario spec [{0}]: {1}'.format(path, err))
            raise ScenarioConfigError('unable to read {0}'.format(path))


class SPEC_KEYS:
    SCENARIO_ID = 'scenario_id'
    CONTROLLER = 'controller'
    SPACE = 'space'
    CHAIN = 'chain'
    DURATION = 'duration_s'
    DT = 'dt_s'
    INITIAL = 'initial'
    GOAL = 'goal'
    REFERENCE = 'reference'
    WALL = 'wall'
    OBSTACLE = 'obstacle'
    DMP = 'dmp'
    EDA = 'eda'
    EVENTS = 'events'
    REQUIRED = (SCENARIO_ID, CONTROLLER, SPACE, CHAIN, DURATION, DT, INITIAL, GOAL, REFERENCE)


class CONTROLLERS:
    DMP = 'dmp'
    EDA = 'eda'
    ALL = (DMP, EDA)


class SCENARIO_IDS:
    JOINT_DISCRETE = 'JointDiscrete'
    TASK_DISCRETE = 'TaskDiscrete'
    TASK_DISCRETE_SINGULAR = 'TaskDiscreteSingular'
    UNEXPECTED_CONTACT = 'UnexpectedContact'
    OBSTACLE_AVOID = 'ObstacleAvoid'
    RHYTHMIC = 'Rhythmic'
    RHYTHMIC_TASK = 'RhythmicTask'
    DISCRETE_PLUS_RHYTHMIC = 'DiscretePlusRhythmic'
    DISCRETE_PLUS_RHYTHMIC_TASK = 'DiscretePlusRhythmicTask'
    SEQUENCING = 'Sequencing'
    REDUNDANT_DISCRETE = 'RedundantDiscrete'
    REDUNDANT_SEQUENCING = 'RedundantSequencing'
    ALL = (JOINT_DISCRETE, TASK_DISCRETE, TASK_DISCRETE_SINGULAR, UNEXPECTED_CONTACT, OBSTACLE_AVOID, RHYTHMIC, RHYTHMIC_TASK,
           DISCRETE_PLUS_RHYTHMIC, DISCRETE_PLUS_RHYTHMIC_TASK, SEQUENCING, REDUNDANT_DISCRETE, REDUNDANT_SEQUENCING)

    @staticmethod
    def cli_name(scenario_id):
        """ JointDiscrete -> joint-discrete """
        return ''.join('-' + c.lower() if c.isupper() and i > 0 else c.lower() for i, c in enumerate(scenario_id))

    @staticmethod
    def from_cli_name(name):
        for scenario_id in SCENARIO_IDS.ALL:
            if name in (scenario_id, SCENARIO_IDS.cli_name(scenario_id)):
                return scenario_id
        log.error('Unknown scenario [{0}]'.format(name))
        raise ScenarioConfigError('unknown scenario {0}; choose from {1}'.format(name, [SCENARIO_IDS.cli_name(s) for s in SCENARIO_IDS.ALL]))

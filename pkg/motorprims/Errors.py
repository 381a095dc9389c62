class MotorPrimsError(Exception):
    pass


class ContractViolationError(MotorPrimsError):
    pass


class SingularityError(MotorPrimsError):
    pass


class OutOfWorkspaceError(MotorPrimsError):
    pass


class DynamicsError(MotorPrimsError):
    pass


class ScenarioConfigError(MotorPrimsError):
    pass


class DemoFormatError(MotorPrimsError):
    pass

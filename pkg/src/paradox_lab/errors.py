"""Exception types shared across the package."""


class ParadoxLabError(Exception):
    """Base class for all library errors."""


class CycleError(ParadoxLabError):
    pass


class DanglingArrow(ParadoxLabError):
    pass


class DuplicateArrow(ParadoxLabError):
    pass


class FormulaVariableError(ParadoxLabError):
    pass


class SignMismatch(ParadoxLabError):
    pass


class NotNegative(ParadoxLabError):
    pass


class BudgetExceeded(ParadoxLabError):
    pass


class UnboundVariable(ParadoxLabError):
    pass


class DnfTooLarge(ParadoxLabError):
    pass


class TooManySinks(ParadoxLabError):
    pass


class MixedSigns(ParadoxLabError):
    pass


class UndecidableWithoutHint(ParadoxLabError):
    pass


class HintContradiction(ParadoxLabError):
    pass


class GapUnbounded(ParadoxLabError):
    pass


class NotAModel(ParadoxLabError):
    pass


class WitnessInvalid(ParadoxLabError):
    pass


class ParseError(ParadoxLabError):
    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message

"""
Exception hierarchy. Every error also derives from the closest builtin so
callers may catch ValueError/KeyError without importing this module.
"""


class InfmaxError(Exception):
    pass


class UnknownActorError(InfmaxError, KeyError):
    def __init__(self, actor: object) -> None:
        super().__init__(f"unknown actor {actor!r}")
        self.actor = actor


class ActorNotPresentError(InfmaxError, KeyError):
    def __init__(self, actor: object, layer: object) -> None:
        super().__init__(f"actor {actor!r} is not present in layer {layer!r}")
        self.actor = actor
        self.layer = layer


class NetworkFormatError(InfmaxError, ValueError):
    def __init__(self, message: str, line_no: int | None = None) -> None:
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(prefix + message)
        self.line_no = line_no


class GeneratorConfigError(InfmaxError, ValueError):
    pass


class PlanError(InfmaxError, ValueError):
    pass


class RecordsFormatError(InfmaxError, ValueError):
    pass


class NotDominatingError(InfmaxError, ValueError):
    pass


class BudgetTooSmallError(InfmaxError, ValueError):
    pass


class EmptySeedSetError(InfmaxError, ValueError):
    pass


class UnknownMethodError(InfmaxError, ValueError):
    pass


class PairingError(InfmaxError, ValueError):
    pass


class RaggedGridError(InfmaxError, ValueError):
    pass

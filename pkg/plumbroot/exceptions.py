"""
Domain errors raised by plumbroot.
Every error has a stable code so the CLI can print it as a JSON object.
"""
from typing import Any, Dict


class PlumbrootError(Exception):

    code = "PlumbrootError"

    def __init__(self, message: str, **details: Any) -> None:
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"error": self.code, "message": self.message}
        payload.update({key: _jsonable(value) for key, value in self.details.items()})
        return payload


def _jsonable(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    return str(value)


# input
class MalformedInput(PlumbrootError):
    code = "MalformedInput"


class NotATree(PlumbrootError):
    code = "NotATree"


class BadIndex(PlumbrootError):
    code = "BadIndex"


# plumbing
class NotNegativeDefinite(PlumbrootError):
    code = "NotNegativeDefinite"


class MoveNotApplicable(PlumbrootError):
    code = "MoveNotApplicable"


class GenerationFailed(PlumbrootError):
    code = "GenerationFailed"


# spin^c
class NotCharacteristic(PlumbrootError):
    code = "NotCharacteristic"


class MoveMismatch(PlumbrootError):
    code = "MoveMismatch"


# families and series
class SeedsExhausted(PlumbrootError):
    code = "SeedsExhausted"


class NotDeltaParity(PlumbrootError):
    code = "NotDeltaParity"


class A3Violated(PlumbrootError):
    code = "A3Violated"


class UnknownFamily(PlumbrootError):
    code = "UnknownFamily"


# roots
class NotStabilized(PlumbrootError):
    code = "NotStabilized"

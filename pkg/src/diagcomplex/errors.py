"""Structured exceptions shared by all modules.

Every error carries a short machine-readable ``code`` and optional
``details`` so the command line can emit it as a JSON object.
"""


class DiagramError(Exception):
    code = "DiagramError"

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        return {"error": self.code, "message": self.message, "details": self.details}


class SelfLoop(DiagramError):
    code = "SelfLoop"


class FreeValenceTooLow(DiagramError):
    code = "FreeValenceTooLow"


class DuplicateSegmentLabel(DiagramError):
    code = "DuplicateSegmentLabel"


class MalformedOrientation(DiagramError):
    code = "MalformedOrientation"


class SegmentValenceZero(DiagramError):
    code = "SegmentValenceZero"


class NotATree(DiagramError):
    code = "NotATree"


class InfeasibleGrading(DiagramError):
    code = "InfeasibleGrading"


class NotAComplex(DiagramError):
    code = "NotAComplex"


class CollisionDetected(DiagramError):
    code = "CollisionDetected"


class ToleranceNotMet(DiagramError):
    code = "ToleranceNotMet"


class NonChordTerm(DiagramError):
    code = "NonChordTerm"


class NotInKernel(DiagramError):
    code = "NotInKernel"


class UsageError(DiagramError):
    code = "UsageError"

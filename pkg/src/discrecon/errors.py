"""Exception hierarchy shared by all modules."""


class DiscReconError(Exception):
    """Base class for every error raised by this package."""


class BuildError(DiscReconError, ValueError):
    """The face data does not describe a valid disc map."""


class NotADisc(BuildError):
    pass


class NonSimpleBoundary(BuildError):
    pass


class BadFaceSize(BuildError):
    pass


class InconsistentOrientation(BuildError):
    pass


class NotAChord(DiscReconError, ValueError):
    pass


class IncompatibleGluing(DiscReconError, ValueError):
    pass


class PreconditionUnmet(DiscReconError, ValueError):
    pass


class NotRealizable(DiscReconError):
    """The distance data is not the boundary metric of an admissible map."""


class InconsistentHub(NotRealizable):
    pass


class InconsistentWindow(NotRealizable):
    pass


class MalformedTrace(DiscReconError, ValueError):
    pass


class BadSpec(DiscReconError, ValueError):
    pass


class BadFace(DiscReconError, ValueError):
    pass


class BudgetExceeded(DiscReconError):
    pass

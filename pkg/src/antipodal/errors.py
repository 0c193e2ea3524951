"""Exception hierarchy. Every failure the library raises derives from AntipodalError."""


class AntipodalError(Exception):
    pass


class DivisionByZero(AntipodalError, ZeroDivisionError):
    pass


class ConductorLimit(AntipodalError):
    pass


class ShapeError(AntipodalError, ValueError):
    pass


class UnsupportedScalarKind(AntipodalError, TypeError):
    pass


class NotAnInvolution(AntipodalError):
    pass


class SpecMismatch(AntipodalError):
    pass


class NotInGroup(AntipodalError):
    pass


class MissingOrigin(AntipodalError):
    pass


class NotAntipodal(AntipodalError):
    pass


class RankLimit(AntipodalError):
    pass


class MissingThetaBar(AntipodalError):
    pass


class NotFixed(AntipodalError):
    pass


class FiberDataRequired(AntipodalError):
    pass


class ProjectionMismatch(AntipodalError):
    """X and its saturated preimage disagree on antipodality (should be impossible)."""


class PoolLimit(AntipodalError):
    pass


class NotMaximal(AntipodalError):
    pass


class NoRecipe(AntipodalError):
    pass


class UnknownSpace(AntipodalError, KeyError):
    pass

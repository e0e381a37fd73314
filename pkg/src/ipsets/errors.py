"""Exception hierarchy shared by the library and the command line."""


class IntegralPointSetError(ValueError):
    """Base class for all domain errors raised by ipsets."""


class NotRealizable(IntegralPointSetError):
    """The squared-distance matrix embeds in no Euclidean space."""


class NoCommonSphere(IntegralPointSetError):
    """The points do not lie on one sphere centred in their affine hull."""


class ConstructionError(IntegralPointSetError):
    pass


class InvalidConfig(ConstructionError):
    pass


class DoesNotFit(ConstructionError):
    """A regular simplex is too large for the sphere it must sit on."""


class NotPythagorean(ConstructionError):
    pass


class SphereMismatch(ConstructionError):
    pass


class DimMismatch(ConstructionError):
    pass


class SearchError(IntegralPointSetError):
    pass


class Infeasible(SearchError):
    """Not enough candidate positions for the requested point count."""


class NotFoundBelowCap(SearchError):
    pass


class ParseError(IntegralPointSetError):
    pass

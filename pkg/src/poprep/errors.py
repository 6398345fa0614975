"""Exception hierarchy shared by all poprep modules."""


class PopulationModelError(Exception):
    """Base class for all poprep errors."""


class SizeLimitError(PopulationModelError):
    """An enumeration would exceed its configured resource bound."""


class DomainMismatchError(PopulationModelError, ValueError):
    """Operands live on different populations, ground sets or state spaces."""


class MeasurabilityError(PopulationModelError, ValueError):
    """An event or mapping is not compatible with the indistinguishability structure."""


class AdmissibilityError(PopulationModelError, ValueError):
    """A law distinguishes individuals that are marked indistinguishable."""


class IndependenceRequiredError(PopulationModelError, ValueError):
    """An operation defined only for independent-individual laws got a dependent one."""


class CoverageError(PopulationModelError, ValueError):
    """A law does not belong to the image of the parametric family."""


class IdentifiabilityError(PopulationModelError, ValueError):
    """Two parameters map to indistinguishable laws."""


class ConfigError(PopulationModelError, ValueError):
    """An experiment configuration is malformed or has unresolved references."""

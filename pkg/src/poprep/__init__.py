"""poprep: partially-distinguishable stochastic populations on finite state
spaces, with exhaustively verifiable quotient structures and statistics."""

from .combinatorics import (
    Bijection,
    Partition,
    Permutation,
    all_partitions,
    partition_join,
    partition_refines,
    relation_preserving_bijections,
    sym_group,
)
from .core import (
    AssignmentFunction,
    CountingMeasure,
    Population,
    StateSpace,
    function_space,
    is_saturated_event,
    rho_classes,
    rho_related,
    rho_star_classes,
    rho_star_related,
    saturate_event,
    t_sub,
    t_sub_is_measurable,
    xi,
)
from .errors import (
    AdmissibilityError,
    ConfigError,
    CoverageError,
    DomainMismatchError,
    IdentifiabilityError,
    IndependenceRequiredError,
    MeasurabilityError,
    PopulationModelError,
    SizeLimitError,
)
from .laws import (
    DiscreteLaw,
    PopulationLaw,
    RepresentationClass,
    canonicalize,
    explicit_law,
    independent_law,
    law_eval,
    law_is_admissible,
    pushforward_by_bijection,
    rho_bar_related,
    weak_indistinguishability,
)
from .parametric import (
    ParameterProcess,
    ParametricFamily,
    gaussian_grid_family,
    moment_transport_check,
    pull_to_parameters,
    push_to_laws,
)
from .representation import (
    DiscreteRepresentationLaw,
    StochasticRepresentation,
    cardinality_moment,
    chi_and_chibar,
    chi_m,
    collapsed_moments,
    mean_and_variance_on_laws,
    mean_mass,
    pgf,
    pgfl,
    pushforward_distribution,
    sample,
    sample_many,
    structure_moment,
    to_discrete,
    zeta,
)

__version__ = "0.1.0"

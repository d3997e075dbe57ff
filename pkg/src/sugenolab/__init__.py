"""Generalized Sugeno integrals, semicopula classes and homogeneity checks."""

__version__ = "0.1.0"

from .capacity import (  # noqa: E402
    Capacity,
    CapacityError,
    FiniteSpace,
    SimpleFunction,
    level_set,
    make_capacity,
    random_capacity,
)
from .classify import Classification, ClassifyParams, classify  # noqa: E402
from .homogeneity import (  # noqa: E402
    CampaignConfig,
    CheckReport,
    Instance,
    check,
    fuzz_campaign,
    indicator_instance,
)
from .integral import IntegralResult, integrate, integrate_grid_oracle  # noqa: E402
from .semicopula import (  # noqa: E402
    Semicopula,
    builtin,
    check_associativity,
    check_axioms,
    evaluate,
    ordinal_sum,
)
from .sections import SectionProfile, scan_section  # noqa: E402

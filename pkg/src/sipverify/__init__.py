"""sipverify: exact verification of separable-partition-class identities.

Truncated q-series arithmetic with sparse multivariate integer
coefficients, exhaustive partition enumeration as an independent oracle,
the separable-class registry with its basis polynomials, and a catalog
of Rogers-Ramanujan type identities checked coefficient by coefficient.
"""

from .series import (
    EMPTY_VARS,
    INFINITE,
    EqualityReport,
    MultiCoeff,
    PochSpec,
    QSeries,
    VarSet,
    pochhammer,
    q_binomial,
    qs_one,
    qs_zero,
    series_add,
    series_equal,
    series_inverse,
    series_mul,
    series_shift_q,
    series_substitute,
    triple_product,
)
from .partitions import (
    Partition,
    PartitionStats,
    WeightMap,
    enumerate_overpartitions_strict,
    enumerate_partitions,
    ferrers_compose,
    ferrers_decompose,
    oracle_series,
    parse_partition,
    partition_str,
    stats_of,
)
from .sip import (
    SIPClassSpec,
    basis_poly_closed,
    basis_poly_enumerated,
    basis_poly_recurrence,
    class_ids,
    class_member,
    enumerate_basis,
    get_class,
    sip_decompose,
    sip_recompose,
    verify_sip_property,
)
from .identities import (
    CATALOG,
    IdentityRecord,
    VerificationReport,
    build_side,
    identity_ids,
    oracle_crosscheck,
    verify,
    verify_all,
)

__version__ = "0.1.0"

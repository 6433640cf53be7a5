from .handle import DEFAULT_ORDER_CAP, GroupHandle, GroupOrderCapExceeded, build_group
from .invariants import (
    OrderProfile,
    Structure,
    ZassenhausForm,
    has_cyclic_index2_sylow2,
    is_z_group,
    order_profile,
    structure_predicates,
    sylow_subgroup,
    zassenhaus_decompose,
)
from .spec import (
    AbelianSpec,
    CyclicSpec,
    DicyclicSpec,
    DihedralSpec,
    GroupSpec,
    GroupSpecError,
    MatrixSpec,
    ProductSpec,
    SemidirectSpec,
    abelian,
    direct_product,
)

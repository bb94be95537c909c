"""Exact Ext^1 calculator for simple modules over current Lie algebras,
with an independent Lie-cohomology oracle."""

__version__ = "0.1.0"

from .algebras import (
    AlgebraPresentation,
    JetAlgebra,
    jet_quotient,
    polynomial_algebra,
    presented_algebra,
    reduce_element,
    tangent_dimension,
    validate_point,
)
from .characters import (
    TensorDecomposition,
    WeightMultiplicityTable,
    adjoint_hom_dimension,
    irrep_dimension,
    tensor_decomposition,
    tensor_multiplicity,
    weight_multiplicities,
)
from .cohomology import (
    CrossCheckReport,
    ExtensionCocycle,
    OracleLimits,
    build_extension_module,
    cocycle_is_coboundary,
    cross_check,
    current_hom_h1,
    h1_dimension,
    module_splits,
)
from .chevalley import (
    ChevalleyAlgebra,
    LieStructure,
    ModuleMatrices,
    chevalley_structure,
    evaluation_module,
    irrep_matrices,
    truncated_current_algebra,
)
from .errors import CurrentExtError
from .ext import (
    Ext1Report,
    ExtQuiver,
    LinkingChain,
    ext1_dimension,
    ext_quiver,
    linking_chain,
    same_block,
)
from .modules import (
    SpectralCharacter,
    SupportFunction,
    dual,
    highest_weight_functional,
    is_isomorphic,
    module_dimension,
    normalize,
    spectral_character,
    support_function,
)
from .roots import (
    CartanType,
    RootDatum,
    SemisimpleType,
    WeightClass,
    build_root_system,
    dominant_conjugate,
    dual_weight,
    fundamental_group_order,
    highest_root,
    parse_type,
    signed_dominant_conjugate,
    weight_class,
    weyl_orbit,
)

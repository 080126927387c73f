from . import catalog, operators  # noqa: F401
from .combinatorics import *  # noqa: F401,F403
from .errors import *  # noqa: F401,F403
from .gelfand_cetlin import *  # noqa: F401,F403
from .laurent import LaurentPoly, RationalExpr, VariableSpace, format_poly  # noqa: F401
from .pluecker import *  # noqa: F401,F403
from .polytope import *  # noqa: F401,F403
from .potential import *  # noqa: F401,F403
from .report import CheckResult, Report
from .testing import IdentityTest  # noqa: F401
from .tropical import (  # noqa: F401
    PLMap,
    TropExpr,
    bending_plmap,
    path_plmap,
    transform_polytope_check,
    whitehead_plmap,
)

__all__ = ["Report", "CheckResult", "catalog", "operators"]

"""q-series congruence toolkit: expand, dissect, and verify.

Layers, bottom up:

  series   truncated q-series arithmetic (exact or mod m) plus the sparse
           pentagonal / cube factor machinery
  qfuncs   eta-style products, theta functions, the two partition families
  etaq     weights, characters, cusp orders, Sturm bounds for eta-quotients
  hecke    U_p / T_p operators and the Sturm-bound congruence pipeline
  radu     the Delta^* / orbit / lower-bound certificate framework
  engine   claim and identity catalogs, characterizations, densities, report
  cli      `qcong` command line
"""

from .series import (
    Mod,
    Ring,
    SparseSignedSeries,
    TruncatedSeries,
    ZZ,
    dilate,
    div_sparse,
    euler_factor,
    cube_factor,
    extract_progression,
    invert,
    mul,
    mul_sparse,
    power,
    reduce_mod,
    shift,
    truncate,
)
from .qfuncs import (
    PartitionFamily,
    expand_fproduct,
    freshman_reduce,
    genfun,
    merge_fproducts,
    normalize_fproduct,
    omega,
    oracle_count,
    phi,
    psi,
)
from .etaq import EtaQuotient, FormMeta, form_meta, kronecker, min_level, sturm_bound
from .hecke import HeckeContext, ROWS, Row, apply_Tp, direct_congruence, verify_row
from .radu import (
    RaduInstance,
    RaduVerdict,
    delta_star_check,
    load_instance,
    nu_bound,
    orbit_P,
    radu_verify,
)
from .engine import (
    Claim,
    Report,
    check_characterization_mod4,
    check_characterization_mod8,
    estimate_density,
    eval_expr,
    load_claims,
    load_report,
    run_catalog,
    save_report,
    verify_claim,
)
from .identities import CASES, IdentityCase, case_by_id, verify_identity

__version__ = "0.1.0"

"""Exact construction, solution and verification of admissible potentially
self-adjoint second-order partial q-difference equations of hypergeometric
type on q-linear lattices, with their bivariate orthogonal polynomial
solutions produced by three independent routes (monic recurrence machinery,
Rodrigues representation, explicit hypergeometric series)."""

from .bipoly import BiPoly, RationalFn, ratfn_equal
from .equation import (EquationCoeffs, DerivedCoeffs, admissibility,
                       apply_adjoint, apply_operator, check_hypergeometric_form,
                       derived_coeffs)
from .linalg import Mat, PolyVec, interpolate_2d, monomial_vec, solve_exact
from .pearson import (PearsonData, WeightEvaluator, base_weight, build_pearson,
                      rho_kl, verify_pearson_identities, weight_closed_form)
from .qcalc import (QDomain, QParam, dq1, dq2, dqm1, dqm2, jackson_integral_1d,
                    jackson_integral_double, jackson_integral_interval,
                    jacobi_poly, kampe_de_feriet, phi_bivariate, phi_rs,
                    qbinomial, qnum, qpochhammer, qpochhammer_inf,
                    verify_operator_relations)
from .rodrigues import RodriguesSpec, rodrigues_poly
from .monic import (MonicFamily, generate_monic_oracle, generate_monic_rf,
                    ghat_oracle, ghat_closed_form, gram_matrix, structure_matrices,
                    ttr_matrices)
from .scalars import QQ, BackendMismatch, ExactField, Field, FloatField

__all__ = [name for name in dir() if not name.startswith("_")]

#pragma once

#include "homalg/rb.hpp"

namespace homalg::instances {

/// Q[x]/(x^2), basis 1, x in degree 0.
AInfStructure dual_numbers();
/// Exterior algebra on xi (degree 1) tensor Q[x]/(x^2); basis 1, x, xi, x.xi.
AInfStructure graded_dual_numbers();
/// span{1, e, f} with |e| = 1, d e = f and all products of e, f zero.
AInfStructure acyclic_dg();
/// span{x, y}, |x| = 0, |y| = 1, m_3(x, x, x) = y and nothing else.
AInfStructure m3_toy();
/// End(Q^n) with basis E[i,j] (e_j -> e_i) and composition; degrees from the given vector degrees.
AInfStructure matrix_algebra(int n, const std::vector<int>& degrees = {});

/// T(1) = x, T(x) = 0 on Q[x]/(x^2).
RBAbsolute classical_rb_dual_numbers();
/// span{1, x, y}, |y| = 1, x^2 = xy = yx = y^2 = 0, T_1(1) = x, T_2(1, 1) = y.
RBAbsolute graded_toy_rb();
/// classical_rb_dual_numbers tensored with the exterior algebra on xi, T = T_classical (x) id.
RBAbsolute graded_classical_rb();

/// Trace form tr(ab) on End(Q^n) (degree 0).
CyclicForm trace_form(const AInfStructure& end_algebra);

}  // namespace homalg::instances

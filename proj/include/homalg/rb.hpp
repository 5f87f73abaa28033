#pragma once

#include "homalg/ainf.hpp"

namespace homalg {

/// Homotopy Rota-Baxter algebra: T_n : A^n -> A of degree n - 1.
struct RBAbsolute {
    AInfStructure algebra;
    OpFamily T;
    void validate() const;
};

/// Homotopy relative Rota-Baxter operator T_n : M^n -> A of degree n - 1.
struct RBRelative {
    AInfBimodule module;
    OpFamily T;
    void validate() const;
};

/// Homotopy Rota-Baxter module: bimodule operations plus T^M_{p,q} of degree p + q.
struct RBModule {
    RBAbsolute base;
    AInfBimodule module;
    BiOpFamily T;
    void validate() const;
};

/// Residuals of the homotopy Rota-Baxter identity at arity n for operations on one space.
std::vector<Residual> homotopy_rb_residuals(const SpacePtr& e, const OpFamily& m, const OpFamily& T, int n,
                                            const std::string& identity, const KeyFilter& filter);

CheckReport check_homotopy_rb_absolute(const RBAbsolute& r, int max_n);
/// Absolute identity on A (+) M evaluated on tuples of module elements only.
CheckReport check_homotopy_rb_relative(const RBRelative& r, int max_n);
/// The displayed dg form (m_{>=3} = 0 on both sides).
CheckReport check_dg_relative_rb(const RBRelative& r, int max_n);
/// Absolute identity on A (+) M evaluated on tuples with exactly one module element.
CheckReport check_rb_module(const RBModule& mod, int max_total);
/// T(a)T(b) = T(T(a)b + aT(b)) and dT = Td for a degree-0 operator T : M -> A.
CheckReport check_classical_rb(const AInfBimodule& mod, const MultilinearOp& T);

/// Parities of the module left-hand-side signs: the literal exponent alpha against the
/// exponent delta induced from A (+) M, for every term shape with p + q + l + k bounded.
struct SignAuditRow {
    int p, q, l, k;
    std::vector<int> is, js;
    long alpha, delta;
};
std::vector<SignAuditRow> rb_module_sign_audit(int max_total);

/// Dual Rota-Baxter module on M^v.
RBModule dualize_rb_module(const RBModule& mod);
/// A as a module over itself: m_{p,q} = m_{p+q+1}, T_{p,q} = T_{p+q+1}.
RBModule regular_rb_module(const RBAbsolute& r);

/// A (+) M with the extended operations.
struct RBExtension {
    SumSpace sum;
    RBAbsolute algebra;
};
RBExtension build_rb_trivial_extension(const RBModule& mod);

/// A (+) A^v with the cyclic completion of T and the pairing of degree 0.
struct CyclicCompletion {
    SumSpace sum;
    RBAbsolute algebra;
    CyclicForm zeta;
};
CyclicCompletion cyclic_completion(const RBAbsolute& r);

/// Extends a relative operator on A^v to A (+) A^v by zero.
struct LiftedRB {
    SumSpace sum;
    RBAbsolute algebra;
    CyclicForm zeta;
};
LiftedRB lift_relative_to_absolute(const RBRelative& r);

/// Cyclicity of every T_n w.r.t. the form (absolute operators).
CheckReport check_cyclic_rb(const RBAbsolute& r, const CyclicForm& g, int max_n);
/// Relative cyclicity on M = A^v: <T(f_0..f_{n-1}), f_n> = (-1)^{n + |f_n| sum|f_j|} <T(f_n, f_0..f_{n-2}), f_{n-1}>.
CheckReport check_cyclic_relative(const RBRelative& r, int max_n);
/// Cyclic plus T_n o sigma = sgn(sigma) T_n for sigma in the generating transpositions.
CheckReport check_ultracyclic(const RBRelative& r, int max_n, bool all_permutations = false);
CheckReport check_ultracyclic(const RBAbsolute& r, const CyclicForm& g, int max_n, bool all_permutations = false);

/// Adjoint of a degree-0 map w.r.t. a nondegenerate form: g(T^v u, v) = g(u, T v).
MultilinearOp adjoint(const MultilinearOp& T, const CyclicForm& g);

}  // namespace homalg

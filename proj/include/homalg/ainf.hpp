#pragma once

#include "homalg/multiop.hpp"
#include "homalg/report.hpp"
#include "homalg/scan.hpp"

#include <map>
#include <utility>

namespace homalg {

/// Operations indexed by arity; absent arities are zero.
struct OpFamily {
    std::map<int, MultilinearOp> ops;

    const MultilinearOp* get(int n) const;
    int max_arity() const { return ops.empty() ? 0 : ops.rbegin()->first; }
};

/// Operations indexed by (p, q): p algebra inputs, the module input, q algebra inputs.
struct BiOpFamily {
    std::map<std::pair<int, int>, MultilinearOp> ops;

    const MultilinearOp* get(int p, int q) const;
    int max_total() const;
};

struct AInfStructure {
    SpacePtr space;
    OpFamily m;

    /// Throws StructureError / DegreeError unless every m_n is A^n -> A of degree n - 2.
    void validate() const;
};

struct AInfBimodule {
    AInfStructure algebra;
    SpacePtr module;
    BiOpFamily m;

    /// Every m_{p,q} is A^p (x) M (x) A^q -> M of degree p + q - 1.
    void validate() const;
};

/// Graded symmetric bilinear form of degree -d stored as a map V (x) V -> k.
struct CyclicForm {
    SpacePtr space;
    int d = 0;
    MultilinearOp form;

    Scalar operator()(int u, int v) const;
    /// Checks degree, graded symmetry and nondegeneracy per degree block.
    void validate() const;
};

CyclicForm make_form(SpacePtr space, int d, const std::map<std::pair<int, int>, Scalar>& entries);

AInfStructure make_ainf(SpacePtr space, const std::vector<MultilinearOp>& ops);
/// m_1 = d (may be absent) and m_2 = product.
AInfStructure dg_algebra(SpacePtr space, const MultilinearOp* d, const MultilinearOp& product);

CheckReport check_stasheff(const AInfStructure& a, int max_n);
/// Stasheff identity for operations on a single space, restricted by a tuple filter.
std::vector<Residual> stasheff_residuals(const SpacePtr& e, const OpFamily& m, int n, const std::string& identity,
                                         const KeyFilter& filter);

/// A (+) M with the algebra operations on A and the bimodule operations on tuples with one M input.
struct SquareZeroExtension {
    SumSpace sum;
    OpFamily m;
};
SquareZeroExtension square_zero_extension(const AInfBimodule& m);

CheckReport check_bimodule(const AInfBimodule& m, int max_total);
AInfBimodule regular_bimodule(const AInfStructure& a);
/// Dual bimodule on M^v.
AInfBimodule dual_bimodule(const AInfBimodule& m);

/// Cyclicity of each operation of the family w.r.t. the pairing <out, in>.
CheckReport check_cyclic_family(const OpFamily& ops, const SpacePtr& in_space, const SpacePtr& out_space,
                                const std::function<Scalar(int, int)>& pairing, int max_n, const std::string& name);
CheckReport check_cyclic(const AInfStructure& a, const CyclicForm& g, int max_n);

/// A (+) s^d A^v with the transported dual bimodule and the pairing zeta.
struct TrivialExtension {
    AInfStructure algebra;
    CyclicForm zeta;
    SumSpace sum;
    int d = 0;
};
TrivialExtension build_trivial_extension(const AInfStructure& a, int d);
/// Same space, with the dual part read off from cyclicity of zeta instead of the dual bimodule.
TrivialExtension trivial_extension_by_cyclicity(const AInfStructure& a, int d);

}  // namespace homalg

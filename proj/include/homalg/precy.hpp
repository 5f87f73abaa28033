#pragma once

#include "homalg/pair.hpp"

namespace homalg {

/// An A-infinity structure on B (+) s^{-1} B^v, cyclic for zeta of degree 1.
struct PreCYStructure {
    SpacePtr base;
    SumSpace sum;
    AInfStructure algebra;
    CyclicForm zeta;
    int max_n = 0;  // T_n used up to this arity, so operations reach arity 2 max_n + 1
};

struct PreCYFlags {
    bool good = false;
    bool fine = false;
    bool manageable = false;
    bool special = false;
    CheckReport witnesses;
};

/// Raised when a construction's hypotheses fail; carries the blocking residuals.
struct PreconditionError : StructureError {
    CheckReport report;
    PreconditionError(const std::string& what, CheckReport r) : StructureError(what), report(std::move(r)) {}
};

/// m_1 = -d, m_2 from the module structures, m_{2n+1} from T_n o kappa^n on the two alternating patterns.
/// With verify set, every T_n must be a strong n-derivation and the family must satisfy the dg relative identity.
PreCYStructure build_precy_from_pair(const InteractivePair& p, const OpFamily& T, int max_n, bool verify = true);

/// Stasheff through arity 2 max_n + 1 and closure of B under every m_n.
CheckReport check_precy_structure(const PreCYStructure& s, int max_arity);
CheckReport check_precy_cyclicity(const PreCYStructure& s, int max_arity);
PreCYFlags check_precy_flags(const PreCYStructure& s, int max_arity);

/// Trivial-extension structure of a dg algebra at d = -1 with m_1 = -d (no T).
PreCYStructure precy_of_dg_algebra(const AInfStructure& b);

}  // namespace homalg

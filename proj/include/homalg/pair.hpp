#pragma once

#include "homalg/rb.hpp"

#include <optional>

namespace homalg {

/// Two dg algebras acting on each other: a |> b (A on B) and b |>> a (B on A),
/// with (b1 |>> a) |> b2 = b1 * (a |> b2).
struct InteractivePair {
    AInfStructure acting;
    AInfStructure base;
    MultilinearOp act_on_base;    // A (x) B -> B
    MultilinearOp act_on_acting;  // B (x) A -> A
    void validate() const;
};

/// Actions derived from the four structure maps, all through the dual bimodule formulas.
struct PairActions {
    AInfBimodule base_over_acting;    // B as a left dg A-module
    AInfBimodule acting_over_base;    // A as a left dg B-module
    AInfBimodule acting_dual;         // A^v as an A-bimodule
    SpacePtr acting_v, base_v;
    MultilinearOp base_dual_right;    // B^v (x) A -> B^v, f <| a
    MultilinearOp acting_dual_right;  // A^v (x) B -> A^v, f <<| b
    MultilinearOp base_dual_left;     // B (x) B^v -> B^v, b |>> g
    MultilinearOp kappa;              // B (x) B^v -> A^v
};
PairActions pair_actions(const InteractivePair& p);

/// kappa(b (x) f)(a) = (-1)^{|b|(|f|+|a|)} f(a |> b).
MultilinearOp build_kappa(const InteractivePair& p);

CheckReport check_interactive_pair(const InteractivePair& p);
/// T_n(f) |> (b1 * b2) = T_n(f <<| b1) |> b2 + (T_n(f) |> b1) * b2, with <<| on the last f.
CheckReport check_n_derivation(const InteractivePair& p, const MultilinearOp& T);
/// The n-derivation identity plus the kappa identities in the first slot and in slots 1 < l <= n.
CheckReport check_strong_n_derivation(const InteractivePair& p, const MultilinearOp& T);

/// b -> iota^{-1}(T_n(-) |> b) in A^{(x)n} (x) B, listed as a_n (x) ... (x) a_1 (x) b.
MultilinearOp derivation_via_iota(const InteractivePair& p, const MultilinearOp& T);
/// D(b1 * b2) - b1 |>> D(b2) - D(b1) * b2 for D : B -> A^{(x)n} (x) B.
MultilinearOp derivation_defect(const InteractivePair& p, const MultilinearOp& D);
/// iota applied to a tensor-valued map: (x_1..x_k) -> Hom((A^v)^n, B) as a map (x_1..x_k, f_1..f_n) -> B.
MultilinearOp iota_apply(const InteractivePair& p, const MultilinearOp& D);

/// The relative Rota-Baxter setting (A, A^v) of the acting algebra.
RBRelative acting_relative(const InteractivePair& p, const OpFamily& T);

/// Basis of the operators T_n : (A^v)^n -> A that are relatively cyclic and n-derivations.
std::vector<MultilinearOp> cyclic_derivations(const InteractivePair& p, int n);

struct OperatorSearch {
    int solution_dim = 0;
    std::optional<MultilinearOp> found;
    CheckReport certificate;
};
/// Looks for a nonzero T_1 in the cyclic-derivation space that also satisfies the dg relative
/// Rota-Baxter identity (checked to max_n); the search is exhaustive over the solution basis
/// and over pairwise sums of basis vectors.
OperatorSearch find_cyclic_rb_derivation(const InteractivePair& p, int max_n = 3);

/// (A, A) with both actions the product.
InteractivePair regular_pair(const AInfStructure& a);
/// A acting on B = A as a module with zero product; B acts on A by zero.
InteractivePair module_pair(const AInfStructure& a);
/// (End(B), B): evaluation and b |>> f = l_b o f. Needs B with zero differential or a dg B.
InteractivePair endomorphism_pair(const AInfStructure& b);

}  // namespace homalg

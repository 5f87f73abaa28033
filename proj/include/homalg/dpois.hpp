#pragma once

#include "homalg/precy.hpp"

#include <optional>

namespace homalg {

/// Brackets V^n -> V^n of degree n - 2, optionally with an associative product on V.
struct DoubleBracketFamily {
    SpacePtr space;
    OpFamily brackets;
    std::optional<MultilinearOp> product;

    void validate() const;
};

/// Elements r_n of A^n, homogeneous of degree n - 2, in a unital graded algebra.
struct TensorFamily {
    AInfStructure algebra;
    std::map<int, TensorVec> r;

    void validate() const;
};

/// Operations l_n : L^n -> L of degree n - 2, optionally with a graded-commutative product.
/// A nonempty weight vector marks L as a truncated graded algebra: tuples whose total weight
/// exceeds max_weight are outside the truncation and only counted.
struct LInfFamily {
    SpacePtr space;
    OpFamily l;
    std::optional<MultilinearOp> product;
    std::vector<int> weight;
    int max_weight = 0;
};

// double brackets
CheckReport check_cyclic_symmetry(const DoubleBracketFamily& f, int max_n);
CheckReport check_skew_symmetry(const DoubleBracketFamily& f, int max_n);
/// The left-nested double Jacobi sum at arity n as an operator V^n -> V^n.
MultilinearOp double_jacobi_operator(const DoubleBracketFamily& f, int n);
/// The right-nested sum built from the opposite brackets.
MultilinearOp opposite_jacobi_operator(const DoubleBracketFamily& f, int n);
CheckReport check_double_jacobi(const DoubleBracketFamily& f, int max_n);
/// Compares the reversal-conjugate of the double Jacobi operator with the opposite form.
CheckReport check_opposite_form(const DoubleBracketFamily& f, int max_n);
CheckReport check_double_leibniz(const DoubleBracketFamily& f, int max_n);

/// Brackets read off m_{2n-1}(a_n, f_n, ..., f_2, a_1) paired with f_1. Needs good and manageable.
DoubleBracketFamily extract_brackets_from_precy(const PreCYStructure& s, int max_n);
/// Inverse direction: m_1 and m_2 from the dg algebra, higher m from the brackets on both
/// alternating patterns, the second pattern forced by cyclicity.
PreCYStructure precy_from_brackets(const DoubleBracketFamily& f, const AInfStructure& base, int max_n);

/// [[-]]_1 = d_B and [[...]]_{n+1} from T_n and the action of A on B.
DoubleBracketFamily build_brackets_psi(const InteractivePair& p, const OpFamily& t, int max_n, bool verify = true);

// associative Yang-Baxter
/// Unit of an algebra given by m_2, found by an exact linear solve.
TensorVec algebra_unit(const AInfStructure& a);
/// Leg k of r goes to slot slots[k] of A^n (0-based), units elsewhere.
TensorVec place_legs(const TensorFamily& r, int i, const std::vector<int>& slots, int n);
/// Slotwise product in the graded tensor algebra A^n.
TensorVec tensor_algebra_product(const AInfStructure& a, int n, const TensorVec& x, const TensorVec& y);
TensorVec aybe_infinity(const TensorFamily& r, int n);
CheckReport check_aybe_infinity(const TensorFamily& r, int max_n);
CheckReport check_aybe_skew(const TensorFamily& r, int max_n);
/// r_12 r_13 - r_23 r_12 + r_13 r_23 for a single r in A (x) A.
TensorVec classical_aybe(const AInfStructure& a, const TensorVec& r);

/// T_r(x) = sum r' g(r'', x) for r in A (x) A; for skew r with an invariant form,
/// r solves the classical equation exactly when T_r is Rota-Baxter.
MultilinearOp operator_from_tensor(const AInfStructure& a, const CyclicForm& g, const TensorVec& r);

/// End(V)^n acting on V^n. The algebra must be matrix_algebra over V's degrees.
DoubleBracketFamily schedler_correspondence(const TensorFamily& r, const SpacePtr& v);
TensorFamily schedler_inverse(const DoubleBracketFamily& f, const AInfStructure& end_algebra);

// L-infinity and homotopy Poisson
CheckReport check_linf_skew(const LInfFamily& f, int max_n);
CheckReport check_linf(const LInfFamily& f, int max_n);
CheckReport check_homotopy_poisson(const LInfFamily& f, int max_n);

/// Monomials of length 1..max_word in the graded symmetric algebra on V.
struct SymmetricTruncation {
    SpacePtr generators;
    SpacePtr space;
    std::vector<std::vector<int>> words;  // sorted letters per basis element
    int max_word = 0;

    std::optional<int> index_of(const std::vector<int>& sorted_letters) const;
    /// Sorts a letter sequence into a basis monomial; the sign is 0 when an odd letter repeats.
    std::pair<std::vector<int>, int> normal_form(const std::vector<int>& letters) const;
};
SymmetricTruncation symmetric_truncation(const SpacePtr& v, int max_word);

/// l_n on the truncated symmetric algebra from a homotopy double Lie family.
LInfFamily build_sym_poisson(const DoubleBracketFamily& f, int max_word, int max_n, bool verify = true);

}  // namespace homalg

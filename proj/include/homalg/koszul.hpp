#pragma once

#include <vector>

namespace homalg {

/// A permutation of {0..n-1} stored by images: p[k] = p(k).
using Permutation = std::vector<int>;

Permutation identity_permutation(int n);
bool is_permutation(const Permutation& p);
/// (a * b)(k) = a(b(k)).
Permutation compose(const Permutation& a, const Permutation& b);
Permutation inverse(const Permutation& p);
/// The n-cycle k -> k+1 mod n.
Permutation cycle_generator(int n);
/// Reversal k -> n-1-k.
Permutation reversal(int n);
Permutation transposition(int n, int i, int j);

int sgn(const Permutation& p);

/// Sign of p.(x_0 (x) ... (x) x_{n-1}) = sign * x_{p^-1(0)} (x) ... , i.e. x_k is moved to slot p(k)
/// and every pair of crossing elements contributes (-1)^{|x_a||x_b|}.
int koszul_sign(const Permutation& p, const std::vector<int>& degrees);

/// Degrees after the move: result[p(k)] = degrees[k].
std::vector<int> permute_degrees(const Permutation& p, const std::vector<int>& degrees);

std::vector<Permutation> all_permutations(int n);
std::vector<Permutation> cyclic_group(int n);
/// Adjacent transpositions (0 1), ..., (n-2 n-1).
std::vector<Permutation> adjacent_transpositions(int n);
/// (p,q)-shuffles: p(0) < ... < p(i-1) and p(i) < ... < p(i+j-1).
std::vector<Permutation> shuffles(int i, int j);
/// Unshuffles (inverses of shuffles), as used for L-infinity identities.
std::vector<Permutation> unshuffles(int i, int j);

/// Ordered compositions of n into k positive parts.
std::vector<std::vector<int>> compositions(int n, int k);
std::vector<std::vector<int>> all_compositions(int n);

/// sigma-tilde on 2n letters: moves the pair (2k, 2k+1) to (2 sigma(k), 2 sigma(k)+1).
Permutation pair_lift(const Permutation& sigma);

/// Sign exponents of the identities. All arguments use the indexing of the
/// displayed formulas (1-based parts lists are passed as plain vectors).
namespace signs {

/// Left-hand side of the homotopy Rota-Baxter identity, parts l_1..l_k.
long delta(const std::vector<int>& l);
/// Right-hand side: r = (r_1..r_p), the identity slot sits at position j (1-based, 1 <= j <= p).
long eta(int i, int k, const std::vector<int>& r, int j);
/// Module identity, left side: m_{p,q}(T_{i_1}..T_{i_p} T^M_{l,k} T_{j_1}..T_{j_q}).
long alpha(int p, int q, int l, int k, const std::vector<int>& is, const std::vector<int>& js);
/// Right-hand side terms; m, n count the A inputs before and after the module input.
/// In beta2 and beta3 the letter t is the second index of T^M_{r,t}, read literally.
long beta1(int l, int k, int m, int n, const std::vector<int>& is, const std::vector<int>& js);
long beta2(int l, int k, int m, int n, int v, int r, int t, const std::vector<int>& is, const std::vector<int>& js);
long beta3(int l, int k, int m, int n, int v, int r, int t, const std::vector<int>& is, const std::vector<int>& js);

/// Dual bimodule structure map on a_1..a_i f b_1..b_j evaluated at x.
long dual_module(int i, int j, long sum_a, int f, int x, long sum_b);
/// Same for the dual Rota-Baxter module operator.
long dual_module_rb(int i, int j, long sum_a, int f, int x, long sum_b);

/// Cyclic completion, j-th dual slot (1-based) among n inputs.
long xi(int j, int n, int f, const std::vector<int>& a);
long theta(const std::vector<int>& a, const std::vector<int>& b, int f, int m, int n);

/// Pre-Calabi-Yau structure from a pair: gamma over b_1..b_n, f_1..f_n.
long gamma(const std::vector<int>& b, const std::vector<int>& f);
long gamma1(int p, int j, const std::vector<int>& b, const std::vector<int>& f);
long gamma2(int p, int j, const std::vector<int>& b, const std::vector<int>& f);
long gamma3(int i, int n, const std::vector<int>& b, const std::vector<int>& f);
long gamma4(int p, int i, int j, int n, const std::vector<int>& b, const std::vector<int>& f);
long gamma5(int s, int i, int j, int n, const std::vector<int>& b, const std::vector<int>& f);
long gamma6(int i, int j, int n, const std::vector<int>& b, const std::vector<int>& f);

/// Bracket extraction from a pre-Calabi-Yau structure.
long extraction(const std::vector<int>& a, const std::vector<int>& f);

}  // namespace signs

}  // namespace homalg

#pragma once

#include "homalg/koszul.hpp"
#include "homalg/scalar.hpp"
#include "homalg/space.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace homalg {

/// Basis tuple: one index per tensor slot.
using Key = std::vector<int>;
/// Sparse element of a tensor product of spaces; zero coefficients are never stored.
using TensorVec = std::map<Key, Scalar>;

void add_term(TensorVec& v, const Key& k, const Scalar& c);
void add_scaled(TensorVec& v, const TensorVec& w, const Scalar& c);
TensorVec scaled(const TensorVec& w, const Scalar& c);

struct DegreeError : StructureError {
    using StructureError::StructureError;
};

/// Homogeneous multilinear map V_1 (x) ... (x) V_n -> W_1 (x) ... (x) W_m of fixed degree,
/// stored as a sparse table from input basis tuples to output tensors.
class MultilinearOp {
public:
    MultilinearOp() = default;
    MultilinearOp(std::string name, std::vector<SpacePtr> domain, std::vector<SpacePtr> codomain, int degree);

    const std::string& name() const { return name_; }
    void rename(std::string n) { name_ = std::move(n); }
    const std::vector<SpacePtr>& domain() const { return domain_; }
    const std::vector<SpacePtr>& codomain() const { return codomain_; }
    int arity() const { return static_cast<int>(domain_.size()); }
    int degree() const { return degree_; }
    const std::map<Key, TensorVec>& table() const { return table_; }
    bool is_zero() const { return table_.empty(); }

    /// Adds c * out to the value on the basis tuple in; throws DegreeError on a degree mismatch.
    void add(const Key& in, const Key& out, const Scalar& c);
    void add_tensor(const Key& in, const TensorVec& out, const Scalar& c = 1);
    /// Replaces a single coefficient (used for mutations).
    void set(const Key& in, const Key& out, const Scalar& c);

    const TensorVec* lookup(const Key& in) const;
    Scalar coefficient(const Key& in, const Key& out) const;

    /// Value on an arbitrary input tensor (no sign: the map sits to the left of its inputs).
    TensorVec apply(const TensorVec& in) const;

    int input_degree(const Key& in) const;
    int output_degree(const Key& out) const;

    bool same_signature(const MultilinearOp& o) const;
    bool operator==(const MultilinearOp& o) const;

private:
    std::string name_;
    std::vector<SpacePtr> domain_;
    std::vector<SpacePtr> codomain_;
    int degree_ = 0;
    std::map<Key, TensorVec> table_;
};

int tensor_degree(const std::vector<SpacePtr>& slots, const Key& k);
std::vector<int> slot_degrees(const std::vector<SpacePtr>& slots, const Key& k);
std::string format_key(const std::vector<SpacePtr>& slots, const Key& k);

/// One factor of a tensor product of maps: either an operation or the identity of a space.
struct Factor {
    const MultilinearOp* op = nullptr;
    SpacePtr id;

    static Factor of(const MultilinearOp& o) { return Factor{&o, nullptr}; }
    static Factor identity(SpacePtr s) { return Factor{nullptr, std::move(s)}; }
    int arity() const { return op ? op->arity() : 1; }
    int degree() const { return op ? op->degree() : 0; }
};

using Layer = std::vector<Factor>;

Layer identity_layer(const SpacePtr& s, int count);
Layer concat(std::initializer_list<Layer> parts);

/// (f_1 (x) ... (x) f_k)(x_1 (x) ... (x) x_N) with the Koszul rule:
/// each f_t picks up (-1)^{|f_t| * (degree of the inputs consumed by f_1..f_{t-1})}.
TensorVec apply_layer(const Layer& layer, const Key& in, const std::vector<int>& in_degrees);
TensorVec apply_layer(const Layer& layer, const TensorVec& in, const std::vector<SpacePtr>& in_slots);
std::vector<SpacePtr> layer_domain(const Layer& layer);
std::vector<SpacePtr> layer_codomain(const Layer& layer);

/// Applies layers in order to a single basis tuple.
TensorVec apply_layers(const std::vector<Layer>& layers, const Key& in, const std::vector<SpacePtr>& in_slots);

/// Every basis tuple of the given slots in lexicographic order.
std::vector<Key> all_keys(const std::vector<SpacePtr>& slots);
size_t key_count(const std::vector<SpacePtr>& slots);
Key key_at(const std::vector<SpacePtr>& slots, size_t index);

/// (-1)^e * outer o (id^position (x) inner (x) id^rest); the inner outputs fill consecutive outer slots.
MultilinearOp insert_compose(const MultilinearOp& outer, const MultilinearOp& inner, int position, long sign_exponent = 0);

/// x -> op(sigma . x) where sigma moves x_k to slot sigma(k) with its Koszul sign.
MultilinearOp permute_inputs(const MultilinearOp& op, const Permutation& sigma);
/// x -> sigma . op(x) on a tensor-valued map.
MultilinearOp permute_outputs(const MultilinearOp& op, const Permutation& sigma);
/// x -> sigma . op(sigma^-1 . x).
MultilinearOp conjugate(const MultilinearOp& op, const Permutation& sigma);

MultilinearOp sum_ops(const std::vector<std::pair<Scalar, const MultilinearOp*>>& terms, std::string name = "sum");

/// Applies sigma to a tensor: slot k moves to slot sigma(k) with its Koszul sign.
TensorVec permute_tensor(const TensorVec& v, const std::vector<SpacePtr>& slots, const Permutation& sigma);

}  // namespace homalg

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace homalg {

struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BasisElement {
    std::string label;
    int degree = 0;
    bool operator==(const BasisElement&) const = default;
};

/// Finite-dimensional graded vector space with a fixed homogeneous basis.
class GradedSpace {
public:
    GradedSpace(std::string name, std::vector<BasisElement> basis);

    /// The zero space. Only constructions use it; documents must declare dim >= 1.
    static GradedSpace zero(std::string name);

    const std::string& name() const { return name_; }
    size_t dim() const { return basis_.size(); }
    const std::vector<BasisElement>& basis() const { return basis_; }
    const std::string& label(size_t i) const { return basis_.at(i).label; }
    int degree(size_t i) const { return basis_[i].degree; }
    std::optional<size_t> index_of(const std::string& label) const;

    bool operator==(const GradedSpace& o) const { return name_ == o.name_ && basis_ == o.basis_; }

private:
    GradedSpace() = default;
    std::string name_;
    std::vector<BasisElement> basis_;
    std::map<std::string, size_t> index_;
};

using SpacePtr = std::shared_ptr<const GradedSpace>;

SpacePtr make_space(std::string name, std::vector<BasisElement> basis);
bool same_space(const SpacePtr& a, const SpacePtr& b);

/// Label conventions used by realized expressions.
std::string dual_label(const std::string& label);
std::string susp_label(const std::string& label, int d);

/// Symbolic space built from declared spaces by dual, suspension, tensor and direct sum.
class SpaceExpr {
public:
    struct Base { SpacePtr space; };
    struct Dual { std::shared_ptr<const SpaceExpr> inner; };
    struct Susp { std::shared_ptr<const SpaceExpr> inner; int shift; };
    struct Tensor { std::vector<SpaceExpr> factors; };
    struct Sum { std::vector<SpaceExpr> summands; };
    using Node = std::variant<Base, Dual, Susp, Tensor, Sum>;

    static SpaceExpr base(SpacePtr s);
    static SpaceExpr dual(const SpaceExpr& e);
    static SpaceExpr susp(const SpaceExpr& e, int shift);
    static SpaceExpr tensor(std::vector<SpaceExpr> factors);
    static SpaceExpr direct_sum(std::vector<SpaceExpr> summands);

    const Node& node() const { return node_; }

    /// Applies V^vv = V, s^a s^b = s^(a+b) and s^0 = id.
    SpaceExpr simplified() const;

    /// Flattens to a concrete basis; the dual of a basis vector pairs to 1 with it.
    SpacePtr realize() const;

private:
    explicit SpaceExpr(Node n) : node_(std::move(n)) {}
    Node node_;
};

/// Dual space with basis e^i of degree -|e_i|, so that e^i(e_j) = delta_ij.
SpacePtr dual_space(const SpacePtr& v);
/// s^d V: every degree shifted by d.
SpacePtr suspended_space(const SpacePtr& v, int d);
/// V_1 + ... + V_k; labels must stay distinct.
SpacePtr direct_sum_space(const std::string& name, const std::vector<SpacePtr>& parts);
/// The ground field as a one-dimensional space in degree 0.
SpacePtr ground_space();

}  // namespace homalg

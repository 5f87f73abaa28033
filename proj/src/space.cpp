#include "homalg/space.hpp"

namespace homalg {

GradedSpace::GradedSpace(std::string name, std::vector<BasisElement> basis)
    : name_(std::move(name)), basis_(std::move(basis)) {
    for (size_t i = 0; i < basis_.size(); ++i) {
        if (!index_.emplace(basis_[i].label, i).second)
            throw StructureError("duplicate basis label '" + basis_[i].label + "' in space '" + name_ + "'");
    }
}

GradedSpace GradedSpace::zero(std::string name) {
    GradedSpace s;
    s.name_ = std::move(name);
    return s;
}

std::optional<size_t> GradedSpace::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

SpacePtr make_space(std::string name, std::vector<BasisElement> basis) {
    return std::make_shared<const GradedSpace>(std::move(name), std::move(basis));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
    return a == b || (a && b && *a == *b);
}

std::string dual_label(const std::string& label) {
    if (label.size() > 2 && label.compare(label.size() - 2, 2, "^v") == 0) return label.substr(0, label.size() - 2);
    return label + "^v";
}

std::string susp_label(const std::string& label, int d) {
    if (d == 0) return label;
    return "s" + std::to_string(d) + ":" + label;
}

namespace {

std::string dual_name(const std::string& n) {
    if (n.size() > 2 && n.compare(n.size() - 2, 2, "^v") == 0) return n.substr(0, n.size() - 2);
    return n + "^v";
}

}  // namespace

SpacePtr dual_space(const SpacePtr& v) {
    std::vector<BasisElement> b;
    for (const auto& e : v->basis()) b.push_back({dual_label(e.label), -e.degree});
    if (b.empty()) return std::make_shared<const GradedSpace>(GradedSpace::zero(dual_name(v->name())));
    return make_space(dual_name(v->name()), std::move(b));
}

SpacePtr suspended_space(const SpacePtr& v, int d) {
    if (d == 0) return v;
    std::vector<BasisElement> b;
    for (const auto& e : v->basis()) b.push_back({susp_label(e.label, d), e.degree + d});
    std::string name = "s" + std::to_string(d) + ":" + v->name();
    if (b.empty()) return std::make_shared<const GradedSpace>(GradedSpace::zero(name));
    return make_space(name, std::move(b));
}

SpacePtr direct_sum_space(const std::string& name, const std::vector<SpacePtr>& parts) {
    std::vector<BasisElement> b;
    for (const auto& p : parts)
        for (const auto& e : p->basis()) b.push_back(e);
    if (b.empty()) return std::make_shared<const GradedSpace>(GradedSpace::zero(name));
    return make_space(name, std::move(b));
}

SpacePtr ground_space() {
    static const SpacePtr k = make_space("k", {{"1", 0}});
    return k;
}

SpaceExpr SpaceExpr::base(SpacePtr s) { return SpaceExpr(Base{std::move(s)}); }
SpaceExpr SpaceExpr::dual(const SpaceExpr& e) { return SpaceExpr(Dual{std::make_shared<const SpaceExpr>(e)}); }
SpaceExpr SpaceExpr::susp(const SpaceExpr& e, int shift) {
    return SpaceExpr(Susp{std::make_shared<const SpaceExpr>(e), shift});
}
SpaceExpr SpaceExpr::tensor(std::vector<SpaceExpr> factors) { return SpaceExpr(Tensor{std::move(factors)}); }
SpaceExpr SpaceExpr::direct_sum(std::vector<SpaceExpr> summands) { return SpaceExpr(Sum{std::move(summands)}); }

SpaceExpr SpaceExpr::simplified() const {
    return std::visit(
        [](const auto& n) -> SpaceExpr {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Base>) {
                return SpaceExpr::base(n.space);
            } else if constexpr (std::is_same_v<N, Dual>) {
                SpaceExpr in = n.inner->simplified();
                if (auto* d = std::get_if<Dual>(&in.node_)) return *d->inner;
                return SpaceExpr::dual(in);
            } else if constexpr (std::is_same_v<N, Susp>) {
                SpaceExpr in = n.inner->simplified();
                int shift = n.shift;
                if (auto* s = std::get_if<Susp>(&in.node_)) {
                    shift += s->shift;
                    in = *s->inner;
                }
                if (shift == 0) return in;
                return SpaceExpr::susp(in, shift);
            } else if constexpr (std::is_same_v<N, Tensor>) {
                std::vector<SpaceExpr> f;
                for (const auto& x : n.factors) f.push_back(x.simplified());
                return SpaceExpr::tensor(std::move(f));
            } else {
                std::vector<SpaceExpr> f;
                for (const auto& x : n.summands) f.push_back(x.simplified());
                return SpaceExpr::direct_sum(std::move(f));
            }
        },
        node_);
}

SpacePtr SpaceExpr::realize() const {
    SpaceExpr e = simplified();
    return std::visit(
        [](const auto& n) -> SpacePtr {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, Base>) {
                return n.space;
            } else if constexpr (std::is_same_v<N, Dual>) {
                return dual_space(n.inner->realize());
            } else if constexpr (std::is_same_v<N, Susp>) {
                return suspended_space(n.inner->realize(), n.shift);
            } else if constexpr (std::is_same_v<N, Tensor>) {
                std::vector<BasisElement> basis{{"", 0}};
                std::string name;
                for (size_t k = 0; k < n.factors.size(); ++k) {
                    SpacePtr f = n.factors[k].realize();
                    name += (k ? "(x)" : "") + f->name();
                    std::vector<BasisElement> next;
                    for (const auto& b : basis)
                        for (const auto& e : f->basis())
                            next.push_back({b.label.empty() ? e.label : b.label + "|" + e.label, b.degree + e.degree});
                    basis = std::move(next);
                }
                if (n.factors.empty()) return ground_space();
                return make_space(name, std::move(basis));
            } else {
                std::vector<SpacePtr> parts;
                std::string name;
                for (size_t k = 0; k < n.summands.size(); ++k) {
                    parts.push_back(n.summands[k].realize());
                    name += (k ? "+" : "") + parts.back()->name();
                }
                return direct_sum_space(name, parts);
            }
        },
        e.node_);
}

}  // namespace homalg

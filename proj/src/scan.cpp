#include "homalg/scan.hpp"

#include <set>

namespace homalg {

std::vector<std::string> key_labels(const std::vector<SpacePtr>& slots, const Key& k) {
    std::vector<std::string> out;
    for (size_t i = 0; i < k.size(); ++i) out.push_back(slots[i]->label(k[i]));
    return out;
}

std::vector<Residual> scan_identity(const std::string& identity, const std::string& indices,
                                    const std::vector<SpacePtr>& in_slots, const std::vector<SpacePtr>& out_slots,
                                    const KeyFilter& filter, const KeyEval& eval) {
    size_t count = key_count(in_slots);
    return parallel_residuals(count, [&](size_t i) {
        std::vector<Residual> out;
        Key k = key_at(in_slots, i);
        if (filter && !filter(k)) return out;
        TensorVec v = eval(k);
        for (const auto& [o, c] : v)
            out.push_back(Residual{identity, indices, key_labels(in_slots, k), format_key(out_slots, o), c});
        return out;
    });
}

std::vector<Residual> scan_scalar_identity(const std::string& identity, const std::string& indices,
                                           const std::vector<SpacePtr>& in_slots, const KeyFilter& filter,
                                           const std::function<Scalar(const Key&)>& eval) {
    size_t count = key_count(in_slots);
    return parallel_residuals(count, [&](size_t i) {
        std::vector<Residual> out;
        Key k = key_at(in_slots, i);
        if (filter && !filter(k)) return out;
        Scalar v = eval(k);
        if (v != 0) out.push_back(Residual{identity, indices, key_labels(in_slots, k), "1", v});
        return out;
    });
}

SumSpace::SumSpace(const std::string& name, std::vector<SpacePtr> ps) : parts(std::move(ps)) {
    int off = 0;
    std::set<std::string> seen;
    bool clash = false;
    for (const auto& p : parts) {
        offsets.push_back(off);
        off += static_cast<int>(p->dim());
        for (const auto& b : p->basis()) clash = clash || !seen.insert(b.label).second;
    }
    if (!clash) {
        space = direct_sum_space(name, parts);
        return;
    }
    // later summands get their labels prefixed by their position
    std::vector<BasisElement> basis;
    for (size_t c = 0; c < parts.size(); ++c)
        for (const auto& b : parts[c]->basis())
            basis.push_back({c == 0 ? b.label : "[" + std::to_string(c) + "]" + b.label, b.degree});
    space = make_space(name, std::move(basis));
}

int SumSpace::component(int index) const {
    for (size_t c = parts.size(); c-- > 0;)
        if (index >= offsets[c] && parts[c]->dim() > 0) return static_cast<int>(c);
    return 0;
}

int SumSpace::count(const Key& k, int part) const {
    int n = 0;
    for (int x : k)
        if (component(x) == part) ++n;
    return n;
}

void embed_into(MultilinearOp& target, const MultilinearOp& src, const SumSpace& in_sum,
                const std::vector<int>& in_parts, const SumSpace& out_sum, const std::vector<int>& out_parts,
                const Scalar& scale) {
    for (const auto& [k, v] : src.table()) {
        Key gk(k.size());
        for (size_t t = 0; t < k.size(); ++t) gk[t] = in_sum.global(in_parts[t], k[t]);
        for (const auto& [o, c] : v) {
            Key go(o.size());
            for (size_t u = 0; u < o.size(); ++u) go[u] = out_sum.global(out_parts[u], o[u]);
            target.add(gk, go, c * scale);
        }
    }
}

}  // namespace homalg

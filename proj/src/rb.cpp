#include "homalg/rb.hpp"

#include "homalg/linalg.hpp"

namespace homalg {

namespace {

std::vector<SpacePtr> repeat(const SpacePtr& s, int n) { return std::vector<SpacePtr>(static_cast<size_t>(n), s); }

void expect_op(const MultilinearOp& op, const std::vector<SpacePtr>& dom, const SpacePtr& cod, int degree,
               const std::string& what) {
    bool ok = op.domain().size() == dom.size() && op.codomain().size() == 1 && same_space(op.codomain()[0], cod);
    for (size_t i = 0; ok && i < dom.size(); ++i) ok = same_space(op.domain()[i], dom[i]);
    if (!ok) throw StructureError(what + ": operation '" + op.name() + "' has the wrong domain or codomain");
    if (op.degree() != degree)
        throw DegreeError(what + ": operation '" + op.name() + "' has degree " + std::to_string(op.degree()) +
                          ", expected " + std::to_string(degree));
}

std::vector<SpacePtr> one_module_domain(const SpacePtr& a, const SpacePtr& m, int p, int q) {
    std::vector<SpacePtr> d = repeat(a, p);
    d.push_back(m);
    for (int t = 0; t < q; ++t) d.push_back(a);
    return d;
}

std::string perm_text(const Permutation& p) {
    std::string s = "[";
    for (size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i] + 1);
    return s + "]";
}

}  // namespace

void RBAbsolute::validate() const {
    algebra.validate();
    for (const auto& [n, op] : T.ops) expect_op(op, repeat(algebra.space, n), algebra.space, n - 1, "Rota-Baxter family");
}

void RBRelative::validate() const {
    module.validate();
    for (const auto& [n, op] : T.ops)
        expect_op(op, repeat(module.module, n), module.algebra.space, n - 1, "relative Rota-Baxter family");
}

void RBModule::validate() const {
    base.validate();
    module.validate();
    if (!same_space(module.algebra.space, base.algebra.space))
        throw StructureError("Rota-Baxter module over a different algebra");
    for (const auto& [pq, op] : T.ops)
        expect_op(op, one_module_domain(base.algebra.space, module.module, pq.first, pq.second), module.module,
                  pq.first + pq.second, "Rota-Baxter module");
}

std::vector<Residual> homotopy_rb_residuals(const SpacePtr& e, const OpFamily& m, const OpFamily& T, int n,
                                            const std::string& identity, const KeyFilter& filter) {
    struct Term {
        std::vector<Layer> layers;
        int sign;
    };
    std::vector<Term> terms;
    for (const auto& l : all_compositions(n)) {
        int k = static_cast<int>(l.size());
        const MultilinearOp* mk = m.get(k);
        if (!mk) continue;
        Layer first;
        bool ok = true;
        for (int part : l) {
            const MultilinearOp* t = T.get(part);
            if (!t) {
                ok = false;
                break;
            }
            first.push_back(Factor::of(*t));
        }
        if (!ok) continue;
        terms.push_back({{first, {Factor::of(*mk)}}, parity_sign(signs::delta(l))});
    }
    for (const auto& r : all_compositions(n)) {
        int p = static_cast<int>(r.size());
        const MultilinearOp* mp = m.get(p);
        const MultilinearOp* outer = T.get(r[0]);
        if (!mp || !outer) continue;
        bool ok = true;
        for (int t = 1; t < p; ++t)
            if (!T.get(r[t])) ok = false;
        if (!ok) continue;
        for (int j = 1; j <= p; ++j)
            for (int i = 0; i < r[0]; ++i) {
                int k = r[0] - 1 - i;
                // slot t (1-based) of m_p holds T_{r_{t+1}} for t < j, id at t = j, T_{r_t} for t > j
                Layer in2 = identity_layer(e, i);
                for (int t = 1; t <= p; ++t) {
                    if (t < j) in2.push_back(Factor::of(*T.get(r[t])));
                    else if (t == j) in2.push_back(Factor::identity(e));
                    else in2.push_back(Factor::of(*T.get(r[t - 1])));
                }
                Layer tail = identity_layer(e, k);
                in2.insert(in2.end(), tail.begin(), tail.end());
                Layer mid = concat({identity_layer(e, i), {Factor::of(*mp)}, identity_layer(e, k)});
                terms.push_back({{in2, mid, {Factor::of(*outer)}}, -parity_sign(signs::eta(i, k, r, j))});
            }
    }
    std::vector<SpacePtr> slots = repeat(e, n);
    return scan_identity(identity, "n=" + std::to_string(n), slots, {e}, filter, [&](const Key& k) {
        TensorVec res;
        for (const auto& t : terms) add_scaled(res, apply_layers(t.layers, k, slots), t.sign);
        return res;
    });
}

CheckReport check_homotopy_rb_absolute(const RBAbsolute& r, int max_n) {
    r.validate();
    CheckReport rep;
    rep.battery = "rb-absolute";
    rep.cutoffs["max_arity"] = max_n;
    for (int n = 1; n <= max_n; ++n) {
        auto x = homotopy_rb_residuals(r.algebra.space, r.algebra.m, r.T, n, "rb-absolute", nullptr);
        rep.entries.insert(rep.entries.end(), x.begin(), x.end());
    }
    rep.normalize();
    return rep;
}

CheckReport check_homotopy_rb_relative(const RBRelative& r, int max_n) {
    r.validate();
    SquareZeroExtension ext = square_zero_extension(r.module);
    const SpacePtr& e = ext.sum.space;
    OpFamily T;
    for (const auto& [n, op] : r.T.ops) {
        MultilinearOp big(op.name(), repeat(e, n), {e}, n - 1);
        embed_into(big, op, ext.sum, std::vector<int>(n, 1), ext.sum, {0});
        T.ops[n] = std::move(big);
    }
    CheckReport rep;
    rep.battery = "rb-relative";
    rep.cutoffs["max_arity"] = max_n;
    auto all_module = [&](const Key& k) { return ext.sum.count(k, 1) == static_cast<int>(k.size()); };
    for (int n = 1; n <= max_n; ++n) {
        auto x = homotopy_rb_residuals(e, ext.m, T, n, "rb-relative", all_module);
        rep.entries.insert(rep.entries.end(), x.begin(), x.end());
    }
    rep.normalize();
    return rep;
}

CheckReport check_dg_relative_rb(const RBRelative& r, int max_n) {
    r.validate();
    for (const auto& [n, op] : r.module.algebra.m.ops)
        if (n > 2 && !op.is_zero()) throw StructureError("dg relative check: algebra has a nonzero m_" + std::to_string(n));
    for (const auto& [pq, op] : r.module.m.ops)
        if (pq.first + pq.second > 1 && !op.is_zero())
            throw StructureError("dg relative check: bimodule has a nonzero higher operation");
    const SpacePtr& a = r.module.algebra.space;
    const SpacePtr& mspace = r.module.module;
    const MultilinearOp* d = r.module.algebra.m.get(1);
    const MultilinearOp* prod = r.module.algebra.m.get(2);
    const MultilinearOp* dm = r.module.m.get(0, 0);
    const MultilinearOp* left = r.module.m.get(1, 0);
    const MultilinearOp* right = r.module.m.get(0, 1);
    CheckReport rep;
    rep.battery = "rb-dg";
    rep.cutoffs["max_arity"] = max_n;
    for (int n = 1; n <= max_n; ++n) {
        struct Term {
            std::vector<Layer> layers;
            int sign;
        };
        std::vector<Term> terms;
        const MultilinearOp* tn = r.T.get(n);
        if (tn && d) terms.push_back({{{Factor::of(*tn)}, {Factor::of(*d)}}, 1});
        if (tn && dm)
            for (int s = 0; s < n; ++s)
                terms.push_back({{concat({identity_layer(mspace, s), {Factor::of(*dm)}, identity_layer(mspace, n - 1 - s)}),
                                  {Factor::of(*tn)}},
                                 -parity_sign(n - 1)});
        // minus the right-hand side
        if (prod)
            for (int i = 1; i < n; ++i) {
                const MultilinearOp* ti = r.T.get(i);
                const MultilinearOp* tj = r.T.get(n - i);
                if (ti && tj) terms.push_back({{{Factor::of(*ti), Factor::of(*tj)}, {Factor::of(*prod)}}, parity_sign(1 + i)});
            }
        for (int j = 1; j < n; ++j)
            for (int i = 0; i + j + 1 <= n; ++i) {
                int k = n - 1 - i - j;
                const MultilinearOp* tj = r.T.get(j);
                const MultilinearOp* outer = r.T.get(i + k + 1);
                if (!tj || !outer) continue;
                if (left) {
                    Layer l1 = concat({identity_layer(mspace, i), {Factor::of(*tj), Factor::identity(mspace)},
                                       identity_layer(mspace, k)});
                    Layer l2 = concat({identity_layer(mspace, i), {Factor::of(*left)}, identity_layer(mspace, k)});
                    terms.push_back({{l1, l2, {Factor::of(*outer)}}, -parity_sign(i + static_cast<long>(j - 1) * (k + 1))});
                }
                if (right) {
                    Layer l1 = concat({identity_layer(mspace, i), {Factor::identity(mspace), Factor::of(*tj)},
                                       identity_layer(mspace, k)});
                    Layer l2 = concat({identity_layer(mspace, i), {Factor::of(*right)}, identity_layer(mspace, k)});
                    terms.push_back({{l1, l2, {Factor::of(*outer)}}, -parity_sign(i + static_cast<long>(j - 1) * k)});
                }
            }
        std::vector<SpacePtr> slots = repeat(mspace, n);
        auto x = scan_identity("rb-dg", "n=" + std::to_string(n), slots, {a}, nullptr, [&](const Key& k) {
            TensorVec res;
            for (const auto& t : terms) add_scaled(res, apply_layers(t.layers, k, slots), t.sign);
            return res;
        });
        rep.entries.insert(rep.entries.end(), x.begin(), x.end());
    }
    rep.normalize();
    return rep;
}

RBExtension build_rb_trivial_extension(const RBModule& mod) {
    mod.validate();
    RBExtension out;
    if (mod.module.module->dim() == 0) {
        out.sum = SumSpace(mod.base.algebra.space->name(), {mod.base.algebra.space, mod.module.module});
        out.sum.space = mod.base.algebra.space;
        out.algebra = mod.base;
        return out;
    }
    SquareZeroExtension ext = square_zero_extension(mod.module);
    out.sum = ext.sum;
    const SpacePtr& e = ext.sum.space;
    out.algebra.algebra = AInfStructure{e, ext.m};
    for (const auto& [n, op] : mod.base.T.ops) {
        MultilinearOp big("T" + std::to_string(n), repeat(e, n), {e}, n - 1);
        embed_into(big, op, ext.sum, std::vector<int>(n, 0), ext.sum, {0});
        out.algebra.T.ops[n] = std::move(big);
    }
    for (const auto& [pq, op] : mod.T.ops) {
        int n = pq.first + pq.second + 1;
        auto it = out.algebra.T.ops.find(n);
        if (it == out.algebra.T.ops.end())
            it = out.algebra.T.ops.emplace(n, MultilinearOp("T" + std::to_string(n), repeat(e, n), {e}, n - 1)).first;
        std::vector<int> parts(n, 0);
        parts[pq.first] = 1;
        embed_into(it->second, op, ext.sum, parts, ext.sum, {1});
    }
    return out;
}

CheckReport check_rb_module(const RBModule& mod, int max_total) {
    RBExtension ext = build_rb_trivial_extension(mod);
    CheckReport rep;
    rep.battery = "rb-module";
    rep.cutoffs["max_arity"] = max_total;
    if (mod.module.module->dim() == 0) return rep;
    for (int t = 0; t <= max_total; ++t)
        for (int p = 0; p <= t; ++p) {
            int n = t + 1;
            auto filter = [&, p](const Key& k) {
                for (int s = 0; s < n; ++s)
                    if ((ext.sum.component(k[s]) == 1) != (s == p)) return false;
                return true;
            };
            auto x = homotopy_rb_residuals(ext.sum.space, ext.algebra.algebra.m, ext.algebra.T, n, "rb-module", filter);
            for (auto& y : x) y.indices = "(m,n)=(" + std::to_string(p) + "," + std::to_string(t - p) + ")";
            rep.entries.insert(rep.entries.end(), x.begin(), x.end());
        }
    rep.normalize();
    return rep;
}

CheckReport check_classical_rb(const AInfBimodule& mod, const MultilinearOp& T) {
    mod.validate();
    const SpacePtr& a = mod.algebra.space;
    const SpacePtr& m = mod.module;
    expect_op(T, {m}, a, 0, "classical Rota-Baxter operator");
    CheckReport rep;
    rep.battery = "classical-rb";
    const MultilinearOp* prod = mod.algebra.m.get(2);
    const MultilinearOp* left = mod.m.get(1, 0);
    const MultilinearOp* right = mod.m.get(0, 1);
    std::vector<std::pair<std::vector<Layer>, int>> terms;
    if (prod) terms.push_back({{{Factor::of(T), Factor::of(T)}, {Factor::of(*prod)}}, 1});
    if (left) terms.push_back({{{Factor::of(T), Factor::identity(m)}, {Factor::of(*left)}, {Factor::of(T)}}, -1});
    if (right) terms.push_back({{{Factor::identity(m), Factor::of(T)}, {Factor::of(*right)}, {Factor::of(T)}}, -1});
    std::vector<SpacePtr> slots{m, m};
    auto x = scan_identity("classical-rb", "n=2", slots, {a}, nullptr, [&](const Key& k) {
        TensorVec res;
        for (const auto& [layers, s] : terms) add_scaled(res, apply_layers(layers, k, slots), s);
        return res;
    });
    rep.entries.insert(rep.entries.end(), x.begin(), x.end());
    const MultilinearOp* d = mod.algebra.m.get(1);
    const MultilinearOp* dm = mod.m.get(0, 0);
    auto y = scan_identity("classical-rb:d", "n=1", {m}, {a}, nullptr, [&](const Key& k) {
        TensorVec res;
        if (d) add_scaled(res, apply_layers({{Factor::of(T)}, {Factor::of(*d)}}, k, {m}), 1);
        if (dm) add_scaled(res, apply_layers({{Factor::of(*dm)}, {Factor::of(T)}}, k, {m}), -1);
        return res;
    });
    rep.entries.insert(rep.entries.end(), y.begin(), y.end());
    rep.normalize();
    return rep;
}

std::vector<SignAuditRow> rb_module_sign_audit(int max_total) {
    std::vector<SignAuditRow> rows;
    // m + n = inputs from A around the module input; parts must have positive size
    for (int mm = 0; mm <= max_total; ++mm)
        for (int nn = 0; mm + nn <= max_total; ++nn)
            for (int l = 0; l <= mm; ++l)
                for (int k = 0; k <= nn; ++k)
                    for (int p = 0; p <= mm - l; ++p)
                        for (int q = 0; q <= nn - k; ++q) {
                            auto left = compositions(mm - l, p);
                            auto right = compositions(nn - k, q);
                            for (const auto& is : left)
                                for (const auto& js : right) {
                                    std::vector<int> parts = is;
                                    parts.push_back(l + k + 1);
                                    parts.insert(parts.end(), js.begin(), js.end());
                                    rows.push_back({p, q, l, k, is, js, signs::alpha(p, q, l, k, is, js), signs::delta(parts)});
                                }
                        }
    return rows;
}

RBModule regular_rb_module(const RBAbsolute& r) {
    RBModule mod{r, regular_bimodule(r.algebra), {}};
    for (const auto& [n, op] : r.T.ops)
        for (int p = 0; p < n; ++p) mod.T.ops[{p, n - 1 - p}] = op;
    return mod;
}

RBModule dualize_rb_module(const RBModule& mod) {
    mod.validate();
    const SpacePtr& a = mod.base.algebra.space;
    RBModule out{mod.base, dual_bimodule(mod.module), {}};
    const SpacePtr& mv = out.module.module;
    for (const auto& [ji, op] : mod.T.ops) {
        int j = ji.first, i = ji.second;
        MultilinearOp t("dual(" + op.name() + ")", one_module_domain(a, mv, i, j), {mv}, i + j);
        for (const auto& [key, val] : op.table()) {
            int x = key[j];
            long sum_b = 0, sum_a = 0;
            for (int s = 0; s < j; ++s) sum_b += a->degree(key[s]);
            for (int s = 0; s < i; ++s) sum_a += a->degree(key[j + 1 + s]);
            for (const auto& [o, c] : val) {
                int mu = o[0];
                Key in;
                for (int s = 0; s < i; ++s) in.push_back(key[j + 1 + s]);
                in.push_back(mu);
                for (int s = 0; s < j; ++s) in.push_back(key[s]);
                long e = signs::dual_module_rb(i, j, sum_a, mv->degree(mu), mod.module.module->degree(x), sum_b);
                t.add(in, {x}, c * parity_sign(e));
            }
        }
        out.T.ops[{i, j}] = std::move(t);
    }
    return out;
}

CyclicCompletion cyclic_completion(const RBAbsolute& r) {
    r.validate();
    TrivialExtension te = build_trivial_extension(r.algebra, 0);
    CyclicCompletion out{te.sum, RBAbsolute{te.algebra, {}}, te.zeta};
    const SpacePtr& a = r.algebra.space;
    const SpacePtr& e = te.sum.space;
    SpacePtr dual = te.sum.parts[1];
    for (const auto& [n, op] : r.T.ops) {
        MultilinearOp big("T" + std::to_string(n), repeat(e, n), {e}, n - 1);
        embed_into(big, op, te.sum, std::vector<int>(n, 0), te.sum, {0});
        for (const auto& [y, val] : op.table())
            for (const auto& [o, c] : val) {
                int u = o[0];
                for (int j = 1; j <= n; ++j) {
                    // y = (a_{j+1}, ..., a_n, x, a_1, ..., a_{j-1})
                    int x = y[n - j];
                    std::vector<int> a_idx(n), a_deg(n, 0);
                    for (int s = j + 1; s <= n; ++s) a_idx[s - 1] = y[s - j - 1];
                    for (int s = 1; s < j; ++s) a_idx[s - 1] = y[n - j + s];
                    for (int s = 1; s <= n; ++s)
                        if (s != j) a_deg[s - 1] = a->degree(a_idx[s - 1]);
                    Key in(n);
                    for (int s = 1; s <= n; ++s) in[s - 1] = s == j ? te.sum.global(1, u) : a_idx[s - 1];
                    long e_sign = signs::xi(j, n, dual->degree(u), a_deg);
                    big.add(in, {te.sum.global(1, x)}, c * parity_sign(e_sign));
                }
            }
        out.algebra.T.ops[n] = std::move(big);
    }
    return out;
}

LiftedRB lift_relative_to_absolute(const RBRelative& r) {
    r.validate();
    const AInfStructure& alg = r.module.algebra;
    if (!same_space(r.module.module, dual_space(alg.space)))
        throw StructureError("lift: the relative operator must act on the dual of the algebra");
    TrivialExtension te = build_trivial_extension(alg, 0);
    LiftedRB out{te.sum, RBAbsolute{te.algebra, {}}, te.zeta};
    const SpacePtr& e = te.sum.space;
    for (const auto& [n, op] : r.T.ops) {
        MultilinearOp big("T" + std::to_string(n), repeat(e, n), {e}, n - 1);
        embed_into(big, op, te.sum, std::vector<int>(n, 1), te.sum, {0});
        out.algebra.T.ops[n] = std::move(big);
    }
    return out;
}

CheckReport check_cyclic_rb(const RBAbsolute& r, const CyclicForm& g, int max_n) {
    r.validate();
    g.validate();
    return check_cyclic_family(r.T, r.algebra.space, r.algebra.space, [&](int u, int v) { return g(u, v); }, max_n,
                               "cyclic-rb");
}

CheckReport check_cyclic_relative(const RBRelative& r, int max_n) {
    r.validate();
    if (!same_space(r.module.module, dual_space(r.module.algebra.space)))
        throw StructureError("relative cyclicity needs M = A^v");
    return check_cyclic_family(r.T, r.module.module, r.module.algebra.space,
                               [](int u, int v) { return Scalar(u == v ? 1 : 0); }, max_n, "cyclic-relative");
}

namespace {

CheckReport skew_residuals(const OpFamily& T, int max_n, bool all) {
    CheckReport rep;
    rep.battery = "ultracyclic";
    for (const auto& [n, op] : T.ops) {
        if (n > max_n || n < 2) continue;
        auto perms = all ? all_permutations(n) : adjacent_transpositions(n);
        for (const auto& s : perms) {
            MultilinearOp moved = permute_inputs(op, s);
            MultilinearOp diff = sum_ops({{Scalar(1), &moved}, {Scalar(-sgn(s)), &op}}, "skew");
            for (const auto& [k, v] : diff.table())
                for (const auto& [o, c] : v)
                    rep.entries.push_back({"skew", "n=" + std::to_string(n) + ",sigma=" + perm_text(s),
                                           key_labels(op.domain(), k), format_key(op.codomain(), o), c});
        }
    }
    return rep;
}

}  // namespace

CheckReport check_ultracyclic(const RBRelative& r, int max_n, bool all) {
    CheckReport rep = check_cyclic_relative(r, max_n);
    rep.merge(skew_residuals(r.T, max_n, all));
    rep.battery = "ultracyclic";
    return rep;
}

CheckReport check_ultracyclic(const RBAbsolute& r, const CyclicForm& g, int max_n, bool all) {
    CheckReport rep = check_cyclic_rb(r, g, max_n);
    rep.merge(skew_residuals(r.T, max_n, all));
    rep.battery = "ultracyclic";
    return rep;
}

MultilinearOp adjoint(const MultilinearOp& T, const CyclicForm& g) {
    g.validate();
    if (T.arity() != 1 || T.degree() != 0 || !same_space(T.domain()[0], g.space) || !same_space(T.codomain()[0], g.space))
        throw StructureError("adjoint: expects a degree-0 endomorphism of the form's space");
    size_t n = g.space->dim();
    Matrix gt(n, std::vector<Scalar>(n));
    for (size_t w = 0; w < n; ++w)
        for (size_t v = 0; v < n; ++v) gt[v][w] = g(static_cast<int>(w), static_cast<int>(v));
    MultilinearOp out(T.name() + "^adj", T.domain(), T.codomain(), 0);
    for (size_t u = 0; u < n; ++u) {
        // rhs[v] = g(e_u, T e_v)
        std::vector<Scalar> rhs(n, 0);
        for (size_t v = 0; v < n; ++v)
            if (const TensorVec* tv = T.lookup({static_cast<int>(v)}))
                for (const auto& [o, c] : *tv) rhs[v] += c * g(static_cast<int>(u), o[0]);
        auto x = solve(gt, rhs, n);
        if (!x) throw StructureError("adjoint: form is degenerate");
        for (size_t w = 0; w < n; ++w) out.add({static_cast<int>(u)}, {static_cast<int>(w)}, (*x)[w]);
    }
    return out;
}

}  // namespace homalg

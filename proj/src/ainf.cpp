#include "homalg/ainf.hpp"

#include "homalg/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace homalg {

const MultilinearOp* OpFamily::get(int n) const {
    auto it = ops.find(n);
    if (it == ops.end() || it->second.is_zero()) return nullptr;
    return &it->second;
}

const MultilinearOp* BiOpFamily::get(int p, int q) const {
    auto it = ops.find({p, q});
    if (it == ops.end() || it->second.is_zero()) return nullptr;
    return &it->second;
}

int BiOpFamily::max_total() const {
    int t = 0;
    for (const auto& [pq, _] : ops) t = std::max(t, pq.first + pq.second);
    return t;
}

namespace {

void expect_signature(const MultilinearOp& op, const std::vector<SpacePtr>& dom, const std::vector<SpacePtr>& cod,
                      int degree, const std::string& what) {
    bool ok = op.domain().size() == dom.size() && op.codomain().size() == cod.size();
    for (size_t i = 0; ok && i < dom.size(); ++i) ok = same_space(op.domain()[i], dom[i]);
    for (size_t i = 0; ok && i < cod.size(); ++i) ok = same_space(op.codomain()[i], cod[i]);
    if (!ok) throw StructureError(what + ": operation '" + op.name() + "' has the wrong domain or codomain");
    if (op.degree() != degree)
        throw DegreeError(what + ": operation '" + op.name() + "' has degree " + std::to_string(op.degree()) +
                          ", expected " + std::to_string(degree));
}

std::vector<SpacePtr> repeat(const SpacePtr& s, int n) { return std::vector<SpacePtr>(static_cast<size_t>(n), s); }

std::vector<SpacePtr> bimodule_domain(const SpacePtr& a, const SpacePtr& m, int p, int q) {
    std::vector<SpacePtr> d = repeat(a, p);
    d.push_back(m);
    for (int t = 0; t < q; ++t) d.push_back(a);
    return d;
}

}  // namespace

void AInfStructure::validate() const {
    for (const auto& [n, op] : m.ops) {
        if (n < 1) throw StructureError("A-infinity operations start at arity 1");
        expect_signature(op, repeat(space, n), {space}, n - 2, "A-infinity structure");
    }
}

void AInfBimodule::validate() const {
    algebra.validate();
    for (const auto& [pq, op] : m.ops)
        expect_signature(op, bimodule_domain(algebra.space, module, pq.first, pq.second), {module},
                         pq.first + pq.second - 1, "A-infinity bimodule");
}

Scalar CyclicForm::operator()(int u, int v) const { return form.coefficient({u, v}, {0}); }

void CyclicForm::validate() const {
    expect_signature(form, {space, space}, {ground_space()}, -d, "bilinear form");
    size_t n = space->dim();
    Matrix g(n, std::vector<Scalar>(n, 0));
    for (size_t u = 0; u < n; ++u)
        for (size_t v = 0; v < n; ++v) {
            g[u][v] = (*this)(static_cast<int>(u), static_cast<int>(v));
            Scalar w = (*this)(static_cast<int>(v), static_cast<int>(u));
            if (g[u][v] != parity_sign(static_cast<long>(space->degree(u)) * space->degree(v)) * w)
                throw StructureError("bilinear form is not graded symmetric at (" + space->label(u) + ", " +
                                     space->label(v) + ")");
        }
    if (exact_rank(g) != static_cast<int>(n)) throw StructureError("bilinear form is degenerate");
}

CyclicForm make_form(SpacePtr space, int d, const std::map<std::pair<int, int>, Scalar>& entries) {
    CyclicForm f{space, d, MultilinearOp("form", {space, space}, {ground_space()}, -d)};
    for (const auto& [uv, c] : entries) f.form.add({uv.first, uv.second}, {0}, c);
    return f;
}

AInfStructure make_ainf(SpacePtr space, const std::vector<MultilinearOp>& ops) {
    AInfStructure a{std::move(space), {}};
    for (const auto& op : ops) a.m.ops[op.arity()] = op;
    a.validate();
    return a;
}

AInfStructure dg_algebra(SpacePtr space, const MultilinearOp* d, const MultilinearOp& product) {
    std::vector<MultilinearOp> ops{product};
    if (d) ops.push_back(*d);
    return make_ainf(std::move(space), ops);
}

std::vector<Residual> stasheff_residuals(const SpacePtr& e, const OpFamily& m, int n, const std::string& identity,
                                         const KeyFilter& filter) {
    struct Term {
        std::vector<Layer> layers;
        int sign;
    };
    std::vector<Term> terms;
    for (int j = 1; j <= n; ++j)
        for (int i = 0; i + j <= n; ++i) {
            int k = n - i - j;
            const MultilinearOp* inner = m.get(j);
            const MultilinearOp* outer = m.get(i + 1 + k);
            if (!inner || !outer) continue;
            terms.push_back({{concat({identity_layer(e, i), {Factor::of(*inner)}, identity_layer(e, k)}),
                              {Factor::of(*outer)}},
                             parity_sign(i + static_cast<long>(j) * k)});
        }
    std::vector<SpacePtr> slots = repeat(e, n);
    return scan_identity(identity, "n=" + std::to_string(n), slots, {e}, filter, [&](const Key& k) {
        TensorVec r;
        for (const auto& t : terms) add_scaled(r, apply_layers(t.layers, k, slots), t.sign);
        return r;
    });
}

CheckReport check_stasheff(const AInfStructure& a, int max_n) {
    a.validate();
    CheckReport rep;
    rep.battery = "stasheff";
    rep.cutoffs["max_arity"] = max_n;
    for (int n = 1; n <= max_n; ++n) {
        auto r = stasheff_residuals(a.space, a.m, n, "stasheff", nullptr);
        rep.entries.insert(rep.entries.end(), r.begin(), r.end());
    }
    rep.normalize();
    return rep;
}

SquareZeroExtension square_zero_extension(const AInfBimodule& mod) {
    SquareZeroExtension ext;
    ext.sum = SumSpace(mod.algebra.space->name() + "+" + mod.module->name(), {mod.algebra.space, mod.module});
    const SpacePtr& e = ext.sum.space;
    for (const auto& [n, op] : mod.algebra.m.ops) {
        MultilinearOp big(op.name(), repeat(e, n), {e}, n - 2);
        embed_into(big, op, ext.sum, std::vector<int>(n, 0), ext.sum, {0});
        ext.m.ops[n] = std::move(big);
    }
    for (const auto& [pq, op] : mod.m.ops) {
        int n = pq.first + pq.second + 1;
        auto it = ext.m.ops.find(n);
        if (it == ext.m.ops.end()) it = ext.m.ops.emplace(n, MultilinearOp("m" + std::to_string(n), repeat(e, n), {e}, n - 2)).first;
        std::vector<int> parts(n, 0);
        parts[pq.first] = 1;
        embed_into(it->second, op, ext.sum, parts, ext.sum, {1});
    }
    return ext;
}

CheckReport check_bimodule(const AInfBimodule& mod, int max_total) {
    mod.validate();
    SquareZeroExtension ext = square_zero_extension(mod);
    CheckReport rep;
    rep.battery = "bimodule";
    rep.cutoffs["max_arity"] = max_total;
    for (int t = 0; t <= max_total; ++t)
        for (int p = 0; p <= t; ++p) {
            int n = t + 1;
            auto filter = [&, p](const Key& k) {
                for (int s = 0; s < n; ++s)
                    if ((ext.sum.component(k[s]) == 1) != (s == p)) return false;
                return true;
            };
            auto r = stasheff_residuals(ext.sum.space, ext.m, n, "bimodule", filter);
            for (auto& x : r) x.indices = "(p,q)=(" + std::to_string(p) + "," + std::to_string(t - p) + ")";
            rep.entries.insert(rep.entries.end(), r.begin(), r.end());
        }
    rep.normalize();
    return rep;
}

AInfBimodule regular_bimodule(const AInfStructure& a) {
    AInfBimodule mod{a, a.space, {}};
    for (const auto& [n, op] : a.m.ops)
        for (int p = 0; p < n; ++p) {
            MultilinearOp c = op;
            c.rename(op.name() + "[" + std::to_string(p) + "," + std::to_string(n - 1 - p) + "]");
            mod.m.ops[{p, n - 1 - p}] = std::move(c);
        }
    return mod;
}

AInfBimodule dual_bimodule(const AInfBimodule& mod) {
    const SpacePtr& a = mod.algebra.space;
    SpacePtr mv = dual_space(mod.module);
    AInfBimodule out{mod.algebra, mv, {}};
    for (const auto& [ji, op] : mod.m.ops) {
        int j = ji.first, i = ji.second;
        MultilinearOp d("dual(" + op.name() + ")", bimodule_domain(a, mv, i, j), {mv}, i + j - 1);
        for (const auto& [key, val] : op.table()) {
            // key = (b_1..b_j, x, a_1..a_i)
            int x = key[j];
            long sum_b = 0, sum_a = 0;
            for (int t = 0; t < j; ++t) sum_b += a->degree(key[t]);
            for (int t = 0; t < i; ++t) sum_a += a->degree(key[j + 1 + t]);
            for (const auto& [o, c] : val) {
                int mu = o[0];
                Key in;
                for (int t = 0; t < i; ++t) in.push_back(key[j + 1 + t]);
                in.push_back(mu);
                for (int t = 0; t < j; ++t) in.push_back(key[t]);
                long e = signs::dual_module(i, j, sum_a, mv->degree(mu), mod.module->degree(x), sum_b);
                d.add(in, {x}, c * parity_sign(e));
            }
        }
        out.m.ops[{i, j}] = std::move(d);
    }
    return out;
}

CheckReport check_cyclic_family(const OpFamily& ops, const SpacePtr& in_space, const SpacePtr& out_space,
                                const std::function<Scalar(int, int)>& pairing, int max_n, const std::string& name) {
    CheckReport rep;
    rep.battery = name;
    rep.cutoffs["max_arity"] = max_n;
    for (const auto& [n, op] : ops.ops) {
        if (n > max_n || op.is_zero()) continue;
        std::vector<SpacePtr> slots = repeat(in_space, n + 1);
        auto pair_with = [&](const Key& args, int last) {
            Scalar s = 0;
            if (const TensorVec* v = op.lookup(args))
                for (const auto& [o, c] : *v) s += c * pairing(o[0], last);
            return s;
        };
        auto r = scan_scalar_identity(name, "n=" + std::to_string(n), slots, nullptr, [&](const Key& k) -> Scalar {
            Key tail(k.begin() + 1, k.end());
            Key head(k.begin(), k.end() - 1);
            long a0 = in_space->degree(k[0]);
            long rest = 0;
            for (int t = 1; t <= n; ++t) rest += in_space->degree(k[t]);
            Scalar lhs = pair_with(tail, k[0]);
            Scalar rhs = pair_with(head, k[n]);
            return lhs - parity_sign(n + a0 * rest) * rhs;
        });
        (void)out_space;
        rep.entries.insert(rep.entries.end(), r.begin(), r.end());
    }
    rep.normalize();
    return rep;
}

CheckReport check_cyclic(const AInfStructure& a, const CyclicForm& g, int max_n) {
    a.validate();
    g.validate();
    if (!same_space(a.space, g.space)) throw StructureError("cyclic check: form lives on a different space");
    return check_cyclic_family(a.m, a.space, a.space, [&](int u, int v) { return g(u, v); }, max_n, "cyclic");
}

namespace {

/// Sign c with zeta(m(w_1..w_n), w_0) = c * zeta(m(w_{r+1}..), ...) after rotating the
/// sequence w_0..w_n right r times by the cyclicity rule.
int rotation_sign(std::vector<int> deg, int r) {
    int n = static_cast<int>(deg.size()) - 1;
    int sign = 1;
    for (int step = 0; step < r; ++step) {
        long rest = 0;
        for (int t = 1; t <= n; ++t) rest += deg[t];
        sign *= parity_sign(n + deg[0] * rest);
        std::rotate(deg.rbegin(), deg.rbegin() + 1, deg.rend());
    }
    return sign;
}

}  // namespace

TrivialExtension trivial_extension_by_cyclicity(const AInfStructure& a, int d) {
    a.validate();
    SpacePtr dual = dual_space(a.space);
    SpacePtr sd = suspended_space(dual, d);
    TrivialExtension out;
    out.d = d;
    out.sum = SumSpace("D" + std::to_string(d) + "(" + a.space->name() + ")", {a.space, sd});
    const SpacePtr& e = out.sum.space;
    out.algebra.space = e;
    for (const auto& [n, op] : a.m.ops) {
        MultilinearOp big("m" + std::to_string(n), repeat(e, n), {e}, n - 2);
        embed_into(big, op, out.sum, std::vector<int>(n, 0), out.sum, {0});
        out.algebra.m.ops[n] = std::move(big);
    }
    // The part with one dual input is forced by cyclicity of zeta:
    // zeta(m(a, s^d f, b), c) is rotated to zeta(m(b, c, a), s^d f) = (-1)^{|f|(1+d)} f(m(b, c, a)).
    for (const auto& [n, op] : a.m.ops) {
        MultilinearOp& big = out.algebra.m.ops[n];
        for (const auto& [key, val] : op.table())
            for (const auto& [o, c] : val) {
                int mu = o[0];
                int f_deg = dual->degree(mu);
                // key = (b_1..b_j, x, a_1..a_i) for every split
                for (int j = 0; j < n; ++j) {
                    int i = n - 1 - j;
                    int x = key[j];
                    // sequence (x, a_1..a_i, s^d f, b_1..b_j) in zeta(m(a, F, b), x)
                    std::vector<int> deg{a.space->degree(x)};
                    Key in;
                    for (int t = 0; t < i; ++t) {
                        in.push_back(key[j + 1 + t]);
                        deg.push_back(a.space->degree(key[j + 1 + t]));
                    }
                    in.push_back(out.sum.global(1, mu));
                    deg.push_back(f_deg + d);
                    for (int t = 0; t < j; ++t) {
                        in.push_back(key[t]);
                        deg.push_back(a.space->degree(key[t]));
                    }
                    int s = rotation_sign(deg, j + 1) * parity_sign(static_cast<long>(f_deg) * (1 + d));
                    big.add(in, {out.sum.global(1, x)}, c * s);
                }
            }
    }
    std::map<std::pair<int, int>, Scalar> z;
    for (int mu = 0; mu < static_cast<int>(a.space->dim()); ++mu) {
        int f = out.sum.global(1, mu);
        z[{f, mu}] = 1;
        z[{mu, f}] = parity_sign(static_cast<long>(a.space->degree(mu)) * (dual->degree(mu) + d));
    }
    out.zeta = make_form(e, d, z);
    return out;
}

TrivialExtension build_trivial_extension(const AInfStructure& a, int d) {
    a.validate();
    SpacePtr dual = dual_space(a.space);
    SpacePtr sd = suspended_space(dual, d);
    TrivialExtension out;
    out.d = d;
    out.sum = SumSpace("D" + std::to_string(d) + "(" + a.space->name() + ")", {a.space, sd});
    const SpacePtr& e = out.sum.space;
    AInfBimodule dm = dual_bimodule(regular_bimodule(a));
    out.algebra.space = e;
    for (const auto& [n, op] : a.m.ops) {
        MultilinearOp big("m" + std::to_string(n), repeat(e, n), {e}, n - 2);
        embed_into(big, op, out.sum, std::vector<int>(n, 0), out.sum, {0});
        out.algebra.m.ops[n] = std::move(big);
    }
    for (const auto& [ij, op] : dm.m.ops) {
        int i = ij.first, j = ij.second, n = i + j + 1;
        auto it = out.algebra.m.ops.find(n);
        if (it == out.algebra.m.ops.end())
            it = out.algebra.m.ops.emplace(n, MultilinearOp("m" + std::to_string(n), repeat(e, n), {e}, n - 2)).first;
        for (const auto& [key, val] : op.table()) {
            long sum_a = 0;
            for (int t = 0; t < i; ++t) sum_a += a.space->degree(key[t]);
            Key gk(key.size());
            for (int t = 0; t < n; ++t) gk[t] = out.sum.global(t == i ? 1 : 0, key[t]);
            // s^d moves past m_n (degree n-2) and past the a's
            for (const auto& [o, c] : val)
                it->second.add(gk, {out.sum.global(1, o[0])}, c * parity_sign(static_cast<long>(d) * (sum_a + n)));
        }
    }
    std::map<std::pair<int, int>, Scalar> z;
    for (int mu = 0; mu < static_cast<int>(a.space->dim()); ++mu) {
        int f = out.sum.global(1, mu);
        z[{f, mu}] = 1;
        z[{mu, f}] = parity_sign(static_cast<long>(a.space->degree(mu)) * (dual->degree(mu) + d));
    }
    out.zeta = make_form(e, d, z);
    return out;
}

}  // namespace homalg

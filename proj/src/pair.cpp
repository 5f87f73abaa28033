#include "homalg/pair.hpp"

#include "homalg/linalg.hpp"

#include <sstream>

namespace homalg {

namespace {

using Terms = std::vector<std::pair<std::vector<Layer>, int>>;

void expect_signature(const MultilinearOp& op, const std::vector<SpacePtr>& dom, const SpacePtr& cod,
                      const std::string& what) {
    bool ok = op.domain().size() == dom.size() && op.codomain().size() == 1 && same_space(op.codomain()[0], cod);
    for (size_t i = 0; ok && i < dom.size(); ++i) ok = same_space(op.domain()[i], dom[i]);
    if (!ok) throw StructureError(what + ": '" + op.name() + "' has the wrong domain or codomain");
    if (op.degree() != 0) throw DegreeError(what + ": '" + op.name() + "' must have degree 0");
}

void expect_dg(const AInfStructure& a, const std::string& what) {
    a.validate();
    for (const auto& [n, op] : a.m.ops)
        if (n > 2 && !op.is_zero()) throw StructureError(what + " must be a dg algebra (nonzero m_" + std::to_string(n) + ")");
}

/// Evaluates a signed sum of layered composites on every basis tuple into an operation.
MultilinearOp evaluate_terms(const std::string& name, const std::vector<SpacePtr>& slots,
                             const std::vector<SpacePtr>& out, int degree, const Terms& terms) {
    MultilinearOp res(name, slots, out, degree);
    for (const Key& k : all_keys(slots)) {
        TensorVec v;
        for (const auto& [layers, s] : terms) add_scaled(v, apply_layers(layers, k, slots), s);
        if (!v.empty()) res.add_tensor(k, v);
    }
    return res;
}

void append_residuals(CheckReport& rep, const MultilinearOp& op, const std::string& identity, const std::string& indices) {
    for (const auto& [k, v] : op.table())
        for (const auto& [o, c] : v)
            rep.entries.push_back({identity, indices, key_labels(op.domain(), k), format_key(op.codomain(), o), c});
}

std::vector<SpacePtr> repeat(const SpacePtr& s, int n) { return std::vector<SpacePtr>(static_cast<size_t>(n), s); }

Layer ids(const SpacePtr& s, int n) { return identity_layer(s, n); }

MultilinearOp zero_or(const MultilinearOp* op, const std::string& name, std::vector<SpacePtr> dom, SpacePtr cod, int deg) {
    return op ? *op : MultilinearOp(name, std::move(dom), {std::move(cod)}, deg);
}

}  // namespace

void InteractivePair::validate() const {
    expect_dg(acting, "acting algebra");
    expect_dg(base, "base algebra");
    expect_signature(act_on_base, {acting.space, base.space}, base.space, "action on the base");
    expect_signature(act_on_acting, {base.space, acting.space}, acting.space, "action on the acting algebra");
}

MultilinearOp build_kappa(const InteractivePair& p) {
    const SpacePtr& a = p.acting.space;
    const SpacePtr& b = p.base.space;
    SpacePtr av = dual_space(a), bv = dual_space(b);
    MultilinearOp k("kappa", {b, bv}, {av}, 0);
    for (const auto& [key, val] : p.act_on_base.table()) {
        // key = (a, b), value = a |> b
        for (const auto& [o, c] : val) {
            int mu = o[0];
            long e = static_cast<long>(b->degree(key[1])) * (bv->degree(mu) + a->degree(key[0]));
            k.add({key[1], mu}, {key[0]}, c * parity_sign(e));
        }
    }
    return k;
}

PairActions pair_actions(const InteractivePair& p) {
    p.validate();
    PairActions out;
    const SpacePtr& a = p.acting.space;
    const SpacePtr& b = p.base.space;
    out.base_over_acting = AInfBimodule{p.acting, b, {}};
    if (const MultilinearOp* d = p.base.m.get(1)) out.base_over_acting.m.ops[{0, 0}] = *d;
    out.base_over_acting.m.ops[{1, 0}] = p.act_on_base;
    out.acting_over_base = AInfBimodule{p.base, a, {}};
    if (const MultilinearOp* d = p.acting.m.get(1)) out.acting_over_base.m.ops[{0, 0}] = *d;
    out.acting_over_base.m.ops[{1, 0}] = p.act_on_acting;
    out.acting_dual = dual_bimodule(regular_bimodule(p.acting));
    out.acting_v = out.acting_dual.module;
    AInfBimodule bdual = dual_bimodule(out.base_over_acting);
    out.base_v = bdual.module;
    out.base_dual_right = zero_or(bdual.m.get(0, 1), "<|", {out.base_v, a}, out.base_v, 0);
    AInfBimodule adual = dual_bimodule(out.acting_over_base);
    out.acting_dual_right = zero_or(adual.m.get(0, 1), "<<|", {out.acting_v, b}, out.acting_v, 0);
    AInfBimodule breg = dual_bimodule(regular_bimodule(p.base));
    out.base_dual_left = zero_or(breg.m.get(1, 0), "|>>", {b, out.base_v}, out.base_v, 0);
    out.kappa = build_kappa(p);
    return out;
}

CheckReport check_interactive_pair(const InteractivePair& p) {
    PairActions act = pair_actions(p);
    CheckReport rep;
    rep.battery = "pair";
    rep.merge(check_stasheff(p.acting, 3));
    rep.merge(check_stasheff(p.base, 3));
    rep.merge(check_bimodule(act.base_over_acting, 2));
    rep.merge(check_bimodule(act.acting_over_base, 2));
    const SpacePtr& a = p.acting.space;
    const SpacePtr& b = p.base.space;
    Terms t{{{{Factor::of(p.act_on_acting), Factor::identity(b)}, {Factor::of(p.act_on_base)}}, 1}};
    if (const MultilinearOp* prod = p.base.m.get(2))
        t.push_back({{{Factor::identity(b), Factor::of(p.act_on_base)}, {Factor::of(*prod)}}, -1});
    append_residuals(rep, evaluate_terms("compat", {b, a, b}, {b}, 0, t), "compatibility", "n=3");
    rep.battery = "pair";
    rep.normalize();
    return rep;
}

namespace {

void expect_relative_op(const InteractivePair& p, const MultilinearOp& T) {
    int n = T.arity();
    if (n < 1) throw StructureError("derivation check needs an operator of arity >= 1");
    SpacePtr av = dual_space(p.acting.space);
    bool ok = T.codomain().size() == 1 && same_space(T.codomain()[0], p.acting.space);
    for (const auto& s : T.domain()) ok = ok && same_space(s, av);
    if (!ok) throw StructureError("operator '" + T.name() + "' must map (A^v)^n to A");
    if (T.degree() != n - 1) throw DegreeError("operator '" + T.name() + "' must have degree n - 1");
}

MultilinearOp derivation_residual(const InteractivePair& p, const PairActions& act, const MultilinearOp& T) {
    int n = T.arity();
    const SpacePtr& b = p.base.space;
    const SpacePtr& av = act.acting_v;
    const MultilinearOp* prod = p.base.m.get(2);
    Terms t;
    Factor tri = Factor::of(p.act_on_base);
    if (prod) {
        t.push_back({{{Factor::of(T), Factor::of(*prod)}, {tri}}, 1});
        t.push_back({{{Factor::of(T), Factor::identity(b), Factor::identity(b)}, {tri, Factor::identity(b)}, {Factor::of(*prod)}}, -1});
    }
    t.push_back({{concat({ids(av, n - 1), {Factor::of(act.acting_dual_right), Factor::identity(b)}}),
                  {Factor::of(T), Factor::identity(b)},
                  {tri}},
                 -1});
    std::vector<SpacePtr> slots = repeat(av, n);
    slots.push_back(b);
    slots.push_back(b);
    return evaluate_terms("derivation", slots, {b}, n - 1, t);
}

}  // namespace

CheckReport check_n_derivation(const InteractivePair& p, const MultilinearOp& T) {
    expect_relative_op(p, T);
    PairActions act = pair_actions(p);
    CheckReport rep;
    rep.battery = "derivation";
    append_residuals(rep, derivation_residual(p, act, T), "n-derivation", "n=" + std::to_string(T.arity()));
    rep.normalize();
    return rep;
}

CheckReport check_strong_n_derivation(const InteractivePair& p, const MultilinearOp& T) {
    CheckReport rep = check_n_derivation(p, T);
    PairActions act = pair_actions(p);
    int n = T.arity();
    const SpacePtr& a = p.acting.space;
    const SpacePtr& b = p.base.space;
    const SpacePtr& av = act.acting_v;
    const SpacePtr& bv = act.base_v;
    const MultilinearOp* prod = p.base.m.get(2);
    Factor kap = Factor::of(act.kappa);
    Factor left = Factor::of(act.base_dual_left);
    {
        Terms t;
        if (prod)
            t.push_back({{concat({{Factor::of(*prod), Factor::identity(bv)}, ids(av, n - 1)}),
                          concat({{kap}, ids(av, n - 1)}),
                          {Factor::of(T)}},
                         1});
        t.push_back({{concat({{Factor::identity(b), kap}, ids(av, n - 1)}),
                      {Factor::identity(b), Factor::of(T)},
                      {Factor::of(p.act_on_acting)}},
                     -1});
        t.push_back({{concat({{Factor::identity(b), left}, ids(av, n - 1)}), concat({{kap}, ids(av, n - 1)}), {Factor::of(T)}},
                     -1});
        std::vector<SpacePtr> slots{b, b, bv};
        for (int s = 1; s < n; ++s) slots.push_back(av);
        append_residuals(rep, evaluate_terms("strong", slots, {a}, n - 1, t), "strong-first", "l=1");
    }
    for (int l = 2; l <= n; ++l) {
        Terms t;
        Layer kap_layer = concat({ids(av, l - 1), {kap}, ids(av, n - l)});
        if (prod)
            t.push_back({{concat({ids(av, l - 1), {Factor::of(*prod), Factor::identity(bv)}, ids(av, n - l)}), kap_layer,
                          {Factor::of(T)}},
                         1});
        t.push_back({{concat({ids(av, l - 2), {Factor::of(act.acting_dual_right), Factor::identity(b), Factor::identity(bv)},
                              ids(av, n - l)}),
                      kap_layer,
                      {Factor::of(T)}},
                     -1});
        t.push_back({{concat({ids(av, l - 1), {Factor::identity(b), left}, ids(av, n - l)}), kap_layer, {Factor::of(T)}}, -1});
        std::vector<SpacePtr> slots = repeat(av, l - 1);
        slots.push_back(b);
        slots.push_back(b);
        slots.push_back(bv);
        for (int s = l; s < n; ++s) slots.push_back(av);
        append_residuals(rep, evaluate_terms("strong", slots, {a}, n - 1, t), "strong-slot", "l=" + std::to_string(l));
    }
    rep.battery = "derivation";
    rep.normalize();
    return rep;
}

MultilinearOp derivation_via_iota(const InteractivePair& p, const MultilinearOp& T) {
    expect_relative_op(p, T);
    int n = T.arity();
    const SpacePtr& a = p.acting.space;
    const SpacePtr& b = p.base.space;
    std::vector<SpacePtr> cod = repeat(a, n);
    cod.push_back(b);
    MultilinearOp d("D", {b}, cod, n - 1);
    for (const auto& [fk, tv] : T.table())
        for (const auto& [ak, tc] : tv)
            for (int x = 0; x < static_cast<int>(b->dim()); ++x) {
                const TensorVec* out = p.act_on_base.lookup({ak[0], x});
                if (!out) continue;
                for (const auto& [bo, c] : *out) {
                    // Q(e^{i_1}..e^{i_n}) = sum c b'  ->  e_{i_n} (x) ... (x) e_{i_1} (x) b'
                    long e = 0, sum_f = 0;
                    for (int j = 0; j < n; ++j) {
                        sum_f += -a->degree(fk[j]);
                        e += a->degree(fk[j]);
                    }
                    e += sum_f * b->degree(bo[0]);
                    Key out_key;
                    for (int j = n - 1; j >= 0; --j) out_key.push_back(fk[j]);
                    out_key.push_back(bo[0]);
                    d.add({x}, out_key, tc * c * parity_sign(e));
                }
            }
    return d;
}

MultilinearOp derivation_defect(const InteractivePair& p, const MultilinearOp& D) {
    const SpacePtr& a = p.acting.space;
    const SpacePtr& b = p.base.space;
    int n = static_cast<int>(D.codomain().size()) - 1;
    const MultilinearOp* prod = p.base.m.get(2);
    Terms t;
    if (prod) {
        t.push_back({{{Factor::of(*prod)}, {Factor::of(D)}}, 1});
        t.push_back({{{Factor::of(D), Factor::identity(b)}, concat({ids(a, n), {Factor::of(*prod)}})}, -1});
    }
    t.push_back({{{Factor::identity(b), Factor::of(D)}, concat({{Factor::of(p.act_on_acting)}, ids(a, n - 1), {Factor::identity(b)}})},
                 -1});
    return evaluate_terms("defect", {b, b}, D.codomain(), D.degree(), t);
}

MultilinearOp iota_apply(const InteractivePair& p, const MultilinearOp& D) {
    const SpacePtr& a = p.acting.space;
    const SpacePtr& b = p.base.space;
    int n = static_cast<int>(D.codomain().size()) - 1;
    SpacePtr av = dual_space(a);
    std::vector<SpacePtr> dom = D.domain();
    for (int j = 0; j < n; ++j) dom.push_back(av);
    int k = D.arity();
    MultilinearOp out("iota(" + D.name() + ")", dom, {b}, D.degree());
    for (const auto& [in, val] : D.table())
        for (const auto& [o, c] : val) {
            // o = (a_n, ..., a_1, b'); the only f's pairing to 1 are f_j = e^{a_j}
            Key key = in;
            long e = 0, sum_f = 0;
            for (int j = 1; j <= n; ++j) {
                int aj = o[n - j];
                key.push_back(aj);
                sum_f += -a->degree(aj);
                e += a->degree(aj);
            }
            e += sum_f * b->degree(o[n]);
            out.add(key, {o[n]}, c * parity_sign(e));
        }
    (void)k;
    return out;
}

RBRelative acting_relative(const InteractivePair& p, const OpFamily& T) {
    return RBRelative{dual_bimodule(regular_bimodule(p.acting)), T};
}

std::vector<MultilinearOp> cyclic_derivations(const InteractivePair& p, int n) {
    PairActions act = pair_actions(p);
    const SpacePtr& a = p.acting.space;
    std::vector<SpacePtr> dom = repeat(act.acting_v, n);
    std::vector<std::pair<Key, int>> unknowns;
    for (const Key& k : all_keys(dom)) {
        int in_deg = tensor_degree(dom, k);
        for (int x = 0; x < static_cast<int>(a->dim()); ++x)
            if (a->degree(x) == in_deg + n - 1) unknowns.push_back({k, x});
    }
    auto unit = [&](size_t u) {
        MultilinearOp t("T" + std::to_string(n), dom, {a}, n - 1);
        t.add(unknowns[u].first, {unknowns[u].second}, 1);
        return t;
    };
    std::map<std::string, size_t> rows;
    std::vector<std::vector<std::pair<size_t, Scalar>>> cols(unknowns.size());
    for (size_t u = 0; u < unknowns.size(); ++u) {
        MultilinearOp t = unit(u);
        OpFamily fam;
        fam.ops[n] = t;
        CheckReport rep = check_cyclic_relative(acting_relative(p, fam), n);
        append_residuals(rep, derivation_residual(p, act, t), "n-derivation", "");
        for (const auto& r : rep.entries) {
            std::ostringstream key;
            key << r.identity << '|' << r.indices << '|' << r.output;
            for (const auto& s : r.inputs) key << '|' << s;
            auto it = rows.emplace(key.str(), rows.size()).first;
            cols[u].push_back({it->second, r.value});
        }
    }
    Matrix m(rows.size(), std::vector<Scalar>(unknowns.size(), 0));
    for (size_t u = 0; u < unknowns.size(); ++u)
        for (const auto& [r, v] : cols[u]) m[r][u] += v;
    std::vector<MultilinearOp> out;
    for (const auto& vec : nullspace(m, unknowns.size())) {
        MultilinearOp t("T" + std::to_string(n), dom, {a}, n - 1);
        for (size_t u = 0; u < unknowns.size(); ++u)
            if (vec[u] != 0) t.add(unknowns[u].first, {unknowns[u].second}, vec[u]);
        out.push_back(std::move(t));
    }
    return out;
}

OperatorSearch find_cyclic_rb_derivation(const InteractivePair& p, int max_n) {
    OperatorSearch s;
    std::vector<MultilinearOp> basis = cyclic_derivations(p, 1);
    s.solution_dim = static_cast<int>(basis.size());
    std::vector<MultilinearOp> candidates = basis;
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = i + 1; j < basis.size(); ++j)
            candidates.push_back(sum_ops({{Scalar(1), &basis[i]}, {Scalar(1), &basis[j]}}, "T1"));
    for (const auto& c : candidates) {
        if (c.is_zero()) continue;
        OpFamily fam;
        fam.ops[1] = c;
        RBRelative r = acting_relative(p, fam);
        CheckReport rb = check_dg_relative_rb(r, max_n);
        if (!rb.passed()) continue;
        s.found = c;
        s.certificate = rb;
        s.certificate.merge(check_cyclic_relative(r, max_n));
        s.certificate.merge(check_strong_n_derivation(p, c));
        s.certificate.battery = "search";
        s.certificate.normalize();
        break;
    }
    return s;
}

InteractivePair regular_pair(const AInfStructure& a) {
    const MultilinearOp* prod = a.m.get(2);
    if (!prod) throw StructureError("regular pair needs a product");
    return InteractivePair{a, a, *prod, *prod};
}

InteractivePair module_pair(const AInfStructure& a) {
    const MultilinearOp* prod = a.m.get(2);
    if (!prod) throw StructureError("module pair needs a product");
    AInfStructure b{a.space, {}};
    if (const MultilinearOp* d = a.m.get(1)) b.m.ops[1] = *d;
    return InteractivePair{a, b, *prod, MultilinearOp("zero", {a.space, a.space}, {a.space}, 0)};
}

InteractivePair endomorphism_pair(const AInfStructure& b) {
    expect_dg(b, "base algebra");
    const SpacePtr& bs = b.space;
    int n = static_cast<int>(bs->dim());
    std::vector<BasisElement> basis;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            basis.push_back({"E[" + bs->basis()[i].label + "," + bs->basis()[j].label + "]", bs->degree(i) - bs->degree(j)});
    SpacePtr a = make_space("End(" + bs->name() + ")", basis);
    auto idx = [n](int i, int j) { return i * n + j; };
    MultilinearOp m2("m2", {a, a}, {a}, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) m2.add({idx(i, j), idx(j, k)}, {idx(i, k)}, 1);
    AInfStructure acting{a, {}};
    acting.m.ops[2] = m2;
    if (const MultilinearOp* d = b.m.get(1); d && !d->is_zero()) {
        MultilinearOp da("m1", {a}, {a}, d->degree());
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                // d o E_jk - (-1)^{|E_jk|} E_jk o d
                if (const TensorVec* dj = d->lookup({j}))
                    for (const auto& [o, c] : *dj) da.add({idx(j, k)}, {idx(o[0], k)}, c);
                for (int l = 0; l < n; ++l)
                    if (const TensorVec* dl = d->lookup({l}))
                        for (const auto& [o, c] : *dl)
                            if (o[0] == k) da.add({idx(j, k)}, {idx(j, l)}, -c * parity_sign(a->degree(idx(j, k))));
            }
        acting.m.ops[1] = da;
    }
    MultilinearOp tri("act", {a, bs}, {bs}, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) tri.add({idx(i, j), j}, {i}, 1);
    MultilinearOp lb("left", {bs, a}, {a}, 0);
    if (const MultilinearOp* prod = b.m.get(2))
        for (const auto& [key, val] : prod->table())
            for (const auto& [o, c] : val)
                for (int k = 0; k < n; ++k) lb.add({key[0], idx(key[1], k)}, {idx(o[0], k)}, c);
    return InteractivePair{acting, b, tri, lb};
}

}  // namespace homalg

#include "homalg/dpois.hpp"

#include "homalg/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace homalg {

namespace {

std::vector<SpacePtr> repeat(const SpacePtr& s, int n) { return std::vector<SpacePtr>(static_cast<size_t>(n), s); }

std::string arity_tag(int n) { return "n=" + std::to_string(n); }

void append_op_residuals(CheckReport& rep, const MultilinearOp& op, const std::string& identity,
                         const std::string& indices) {
    for (const auto& [k, v] : op.table())
        for (const auto& [o, c] : v)
            rep.entries.push_back({identity, indices, key_labels(op.domain(), k), format_key(op.codomain(), o), c});
}

/// Operator V^n -> ... obtained by running the layers on every basis tuple.
MultilinearOp run_layers(const std::string& name, const std::vector<SpacePtr>& slots, const std::vector<Layer>& layers,
                         int degree) {
    MultilinearOp out(name, slots, layer_codomain(layers.back()), degree);
    for (const Key& k : all_keys(slots)) {
        TensorVec v = apply_layers(layers, k, slots);
        if (!v.empty()) out.add_tensor(k, v);
    }
    return out;
}

TensorVec tensor_product(const std::vector<const TensorVec*>& parts) {
    TensorVec acc{{Key{}, Scalar(1)}};
    for (const TensorVec* p : parts) {
        TensorVec next;
        for (const auto& [k, c] : acc)
            for (const auto& [k2, c2] : *p) {
                Key nk = k;
                nk.insert(nk.end(), k2.begin(), k2.end());
                add_term(next, nk, c * c2);
            }
        acc = std::move(next);
    }
    return acc;
}

TensorVec lookup_or_empty(const MultilinearOp& op, const Key& k) {
    const TensorVec* v = op.lookup(k);
    return v ? *v : TensorVec{};
}

bool within_weight(const std::vector<int>& weight, int max_weight, const Key& k) {
    if (weight.empty() || max_weight <= 0) return true;
    int total = 0;
    for (int x : k) total += weight[x];
    return total <= max_weight;
}

Scalar factorial(int n) {
    Scalar f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

/// Component of the base product inside a pre-CY structure.
MultilinearOp base_product(const PreCYStructure& s) {
    MultilinearOp prod("m2", {s.base, s.base}, {s.base}, 0);
    if (const MultilinearOp* m2 = s.algebra.m.get(2))
        for (const auto& [k, v] : m2->table()) {
            if (s.sum.count(k, 0) != 2) continue;
            for (const auto& [o, c] : v)
                if (s.sum.component(o[0]) == 0) prod.add({s.sum.local(k[0]), s.sum.local(k[1])}, {s.sum.local(o[0])}, c);
        }
    return prod;
}

/// (f_1 (x) ... (x) f_n)(e_1 (x) ... (x) e_n) = sign * prod f_k(e_k) with f_j passing e_i for i < j.
int evaluation_sign(const std::vector<int>& fdeg, const std::vector<int>& edeg) {
    long e = 0;
    for (size_t j = 0; j < fdeg.size(); ++j)
        for (size_t i = 0; i < j; ++i) e += static_cast<long>(fdeg[j]) * edeg[i];
    return parity_sign(e);
}

TensorVec place(const AInfStructure& a, const TensorVec& r, int i, const std::vector<int>& slots, int n) {
    if (static_cast<int>(slots.size()) != i) throw StructureError("leg placement: slot count differs from the arity");
    TensorVec unit = algebra_unit(a);
    std::vector<const TensorVec*> parts{&r};
    for (int k = i; k < n; ++k) parts.push_back(&unit);
    TensorVec full = tensor_product(parts);
    Permutation pi(n);
    std::vector<bool> used(n, false);
    for (int k = 0; k < i; ++k) {
        pi[k] = slots[k];
        used[slots[k]] = true;
    }
    int next = 0;
    for (int k = i; k < n; ++k) {
        while (used[next]) ++next;
        pi[k] = next;
        used[next] = true;
    }
    if (!is_permutation(pi)) throw StructureError("leg placement: repeated slot");
    return permute_tensor(full, repeat(a.space, n), pi);
}

void refuse(const std::string& what, CheckReport rep) {
    rep.normalize();
    const Residual& first = rep.entries.front();
    throw PreconditionError(what + ": " + first.identity + " fails at " + first.indices, rep);
}

}  // namespace

void DoubleBracketFamily::validate() const {
    if (!space) throw StructureError("double brackets: no space");
    for (const auto& [n, op] : brackets.ops) {
        bool ok = op.arity() == n && static_cast<int>(op.codomain().size()) == n;
        for (const auto& s : op.domain()) ok = ok && same_space(s, space);
        for (const auto& s : op.codomain()) ok = ok && same_space(s, space);
        if (!ok) throw StructureError("bracket of arity " + std::to_string(n) + " must map V^n to V^n");
        if (op.degree() != n - 2)
            throw DegreeError("bracket of arity " + std::to_string(n) + " has degree " + std::to_string(op.degree()) +
                              ", expected " + std::to_string(n - 2));
    }
    if (product) {
        if (product->arity() != 2 || product->codomain().size() != 1 || product->degree() != 0)
            throw StructureError("double brackets: product must be V (x) V -> V of degree 0");
    }
}

void TensorFamily::validate() const {
    algebra.validate();
    for (const auto& [n, v] : r)
        for (const auto& [k, c] : v) {
            if (static_cast<int>(k.size()) != n) throw StructureError("r_" + std::to_string(n) + " has a term of wrong length");
            if (tensor_degree(repeat(algebra.space, n), k) != n - 2)
                throw DegreeError("r_" + std::to_string(n) + " has a term of degree " +
                                  std::to_string(tensor_degree(repeat(algebra.space, n), k)) + ", expected " +
                                  std::to_string(n - 2));
        }
}

CheckReport check_cyclic_symmetry(const DoubleBracketFamily& f, int max_n) {
    f.validate();
    CheckReport rep;
    rep.battery = "cyclic-symmetry";
    rep.cutoffs["max_arity"] = max_n;
    for (const auto& [n, op] : f.brackets.ops) {
        if (n > max_n || n < 2) continue;
        Permutation g = cycle_generator(n);
        MultilinearOp c = conjugate(op, g);
        MultilinearOp diff = sum_ops({{Scalar(1), &c}, {Scalar(-sgn(g)), &op}}, "cyclic");
        append_op_residuals(rep, diff, "cyclic-symmetry", arity_tag(n));
    }
    rep.normalize();
    return rep;
}

CheckReport check_skew_symmetry(const DoubleBracketFamily& f, int max_n) {
    f.validate();
    CheckReport rep;
    rep.battery = "skew-symmetry";
    rep.cutoffs["max_arity"] = max_n;
    for (const auto& [n, op] : f.brackets.ops) {
        if (n > max_n || n < 2) continue;
        for (int k = 0; k + 1 < n; ++k) {
            Permutation t = transposition(n, k, k + 1);
            MultilinearOp c = conjugate(op, t);
            MultilinearOp diff = sum_ops({{Scalar(1), &c}, {Scalar(1), &op}}, "skew");
            append_op_residuals(rep, diff, "skew-symmetry",
                                arity_tag(n) + ",(" + std::to_string(k + 1) + " " + std::to_string(k + 2) + ")");
        }
    }
    rep.normalize();
    return rep;
}

namespace {

MultilinearOp cyclic_average(const MultilinearOp& c, int n) {
    MultilinearOp out(c.name(), c.domain(), c.codomain(), c.degree());
    for (const auto& s : cyclic_group(n)) {
        MultilinearOp t = conjugate(c, s);
        for (const auto& [k, v] : t.table()) out.add_tensor(k, v, sgn(s));
    }
    return out;
}

}  // namespace

MultilinearOp double_jacobi_operator(const DoubleBracketFamily& f, int n) {
    const SpacePtr& v = f.space;
    MultilinearOp out("DJac", repeat(v, n), repeat(v, n), n - 3);
    for (int i = 1; i <= n; ++i) {
        int j = n + 1 - i;
        const MultilinearOp* bi = f.brackets.get(i);
        const MultilinearOp* bj = f.brackets.get(j);
        if (!bi || !bj || bi->is_zero() || bj->is_zero()) continue;
        Layer first = concat({identity_layer(v, j - 1), {Factor::of(*bi)}});
        Layer second = concat({{Factor::of(*bj)}, identity_layer(v, i - 1)});
        MultilinearOp c = run_layers("DJac", repeat(v, n), {first, second}, n - 3);
        MultilinearOp avg = cyclic_average(c, n);
        for (const auto& [k, t] : avg.table()) out.add_tensor(k, t, parity_sign(static_cast<long>(j - 1) * i));
    }
    return out;
}

MultilinearOp opposite_jacobi_operator(const DoubleBracketFamily& f, int n) {
    const SpacePtr& v = f.space;
    MultilinearOp out("DJac-op", repeat(v, n), repeat(v, n), n - 3);
    for (int i = 1; i <= n; ++i) {
        int j = n + 1 - i;
        const MultilinearOp* bi = f.brackets.get(i);
        const MultilinearOp* bj = f.brackets.get(j);
        if (!bi || !bj || bi->is_zero() || bj->is_zero()) continue;
        MultilinearOp oi = conjugate(*bi, reversal(i));
        MultilinearOp oj = conjugate(*bj, reversal(j));
        Layer first = concat({{Factor::of(oi)}, identity_layer(v, j - 1)});
        Layer second = concat({identity_layer(v, i - 1), {Factor::of(oj)}});
        MultilinearOp c = run_layers("DJac-op", repeat(v, n), {first, second}, n - 3);
        MultilinearOp avg = cyclic_average(c, n);
        for (const auto& [k, t] : avg.table()) out.add_tensor(k, t, parity_sign(static_cast<long>(i) * (j - 1)));
    }
    return out;
}

CheckReport check_double_jacobi(const DoubleBracketFamily& f, int max_n) {
    f.validate();
    CheckReport rep;
    rep.battery = "djac";
    rep.cutoffs["max_arity"] = max_n;
    for (int n = 1; n <= max_n; ++n) append_op_residuals(rep, double_jacobi_operator(f, n), "double-jacobi", arity_tag(n));
    rep.normalize();
    return rep;
}

CheckReport check_opposite_form(const DoubleBracketFamily& f, int max_n) {
    f.validate();
    CheckReport rep;
    rep.battery = "opposite-form";
    rep.cutoffs["max_arity"] = max_n;
    for (int n = 1; n <= max_n; ++n) {
        MultilinearOp left = conjugate(double_jacobi_operator(f, n), reversal(n));
        MultilinearOp right = opposite_jacobi_operator(f, n);
        MultilinearOp diff = sum_ops({{Scalar(1), &left}, {Scalar(-1), &right}}, "opposite");
        append_op_residuals(rep, diff, "opposite-form", arity_tag(n));
    }
    rep.normalize();
    return rep;
}

CheckReport check_double_leibniz(const DoubleBracketFamily& f, int max_n) {
    f.validate();
    if (!f.product) throw StructureError("double Leibniz rule needs a product");
    const MultilinearOp& mu = *f.product;
    const SpacePtr& v = f.space;
    CheckReport rep;
    rep.battery = "leibniz";
    rep.cutoffs["max_arity"] = max_n;
    for (const auto& [n, b] : f.brackets.ops) {
        if (n > max_n || b.is_zero()) continue;
        auto r = scan_identity("double-leibniz", arity_tag(n), repeat(v, n + 1), repeat(v, n), nullptr,
                               [&](const Key& k) -> TensorVec {
            Key head(k.begin(), k.begin() + (n - 1));
            int x1 = k[n - 1], x2 = k[n];
            TensorVec out;
            for (const auto& [p, c] : lookup_or_empty(mu, {x1, x2})) {
                Key in = head;
                in.push_back(p[0]);
                add_scaled(out, lookup_or_empty(b, in), c);
            }
            Key in1 = head;
            in1.push_back(x1);
            for (const auto& [o, c] : lookup_or_empty(b, in1))
                for (const auto& [p, c2] : lookup_or_empty(mu, {o.back(), x2})) {
                    Key nk = o;
                    nk.back() = p[0];
                    add_term(out, nk, -c * c2);
                }
            long before = n - 2;
            for (int x : head) before += v->degree(x);
            int sign = parity_sign(static_cast<long>(v->degree(x1)) * before);
            Key in2 = head;
            in2.push_back(x2);
            for (const auto& [o, c] : lookup_or_empty(b, in2))
                for (const auto& [p, c2] : lookup_or_empty(mu, {x1, o.front()})) {
                    Key nk = o;
                    nk.front() = p[0];
                    add_term(out, nk, -c * c2 * sign);
                }
            return out;
        });
        rep.entries.insert(rep.entries.end(), r.begin(), r.end());
    }
    rep.normalize();
    return rep;
}

DoubleBracketFamily extract_brackets_from_precy(const PreCYStructure& s, int max_n) {
    PreCYFlags flags = check_precy_flags(s, 2 * max_n - 1);
    if (!flags.good || !flags.manageable) {
        CheckReport w = flags.witnesses;
        w.battery = "extract-preconditions";
        refuse("bracket extraction refused", w);
    }
    const SpacePtr& b = s.base;
    DoubleBracketFamily out;
    out.space = b;
    out.product = base_product(s);
    for (int n = 1; n <= max_n; ++n) {
        const MultilinearOp* m = s.algebra.m.get(2 * n - 1);
        if (!m || m->is_zero()) continue;
        MultilinearOp br("bracket" + std::to_string(n), repeat(b, n), repeat(b, n), n - 2);
        for (const Key& a : all_keys(repeat(b, n))) {
            for (const Key& o : all_keys(repeat(b, n))) {
                // m(a_n, f_n, ..., a_2, f_2, a_1) paired with f_1, f_k = e^{o_k}
                Key in;
                for (int k = n; k >= 1; --k) {
                    in.push_back(s.sum.global(0, a[k - 1]));
                    if (k > 1) in.push_back(s.sum.global(1, o[k - 1]));
                }
                const TensorVec* val = m->lookup(in);
                if (!val) continue;
                Scalar z = 0;
                int f1 = s.sum.global(1, o[0]);
                for (const auto& [w, c] : *val) z += c * s.zeta(w[0], f1);
                if (z == 0) continue;
                std::vector<int> adeg, fdeg, edeg;
                for (int k = 0; k < n; ++k) {
                    adeg.push_back(b->degree(a[k]));
                    edeg.push_back(b->degree(o[k]));
                    fdeg.push_back(-b->degree(o[k]));
                }
                int sign = parity_sign(signs::extraction(adeg, fdeg)) * evaluation_sign(fdeg, edeg);
                br.add(a, o, z * sign);
            }
        }
        if (!br.is_zero()) out.brackets.ops[n] = std::move(br);
    }
    return out;
}

PreCYStructure precy_from_brackets(const DoubleBracketFamily& f, const AInfStructure& base, int max_n) {
    f.validate();
    if (!same_space(f.space, base.space)) throw StructureError("brackets and algebra live on different spaces");
    PreCYStructure s = precy_of_dg_algebra(base);
    s.max_n = max_n - 1;
    const SpacePtr& b = base.space;
    const SpacePtr& e = s.sum.space;
    int db = static_cast<int>(b->dim());
    for (int n = 2; n <= max_n; ++n) {
        const MultilinearOp* br = f.brackets.get(n);
        if (!br || br->is_zero()) continue;
        int arity = 2 * n - 1;
        MultilinearOp m("m" + std::to_string(arity), repeat(e, arity), {e}, arity - 2);
        // pattern a_n f_n ... f_2 a_1 -> B, read through zeta against f_1
        for (const auto& [a, v] : br->table())
            for (const auto& [o, c] : v) {
                std::vector<int> adeg, fdeg, edeg;
                for (int k = 0; k < n; ++k) {
                    adeg.push_back(b->degree(a[k]));
                    edeg.push_back(b->degree(o[k]));
                    fdeg.push_back(-b->degree(o[k]));
                }
                Scalar z = c * parity_sign(signs::extraction(adeg, fdeg)) * evaluation_sign(fdeg, edeg);
                Key in;
                for (int k = n; k >= 1; --k) {
                    in.push_back(s.sum.global(0, a[k - 1]));
                    if (k > 1) in.push_back(s.sum.global(1, o[k - 1]));
                }
                int out_b = s.sum.global(0, o[0]);
                m.add(in, {out_b}, z / s.zeta(out_b, s.sum.global(1, o[0])));
            }
        // pattern f_0 b_1 f_1 ... b_{n-1} f_{n-1} -> D from one cyclic rotation
        MultilinearOp full = m;
        std::vector<SpacePtr> pattern;
        for (int k = 0; k < n - 1; ++k) {
            pattern.push_back(b);
            pattern.push_back(b);
        }
        for (int g0 = 0; g0 < db; ++g0)
            for (const Key& rest : all_keys(pattern)) {
                Key w{s.sum.global(1, g0)};
                for (size_t t = 0; t < rest.size(); ++t) w.push_back(s.sum.global(t % 2 == 0 ? 0 : 1, rest[t]));
                long sum_w = 0;
                for (int x : w) sum_w += e->degree(x);
                for (int mu = 0; mu < db; ++mu) {
                    int w0 = s.sum.global(0, mu);
                    Key rotated{w0};
                    rotated.insert(rotated.end(), w.begin(), w.end() - 1);
                    const TensorVec* val = m.lookup(rotated);
                    if (!val) continue;
                    Scalar z = 0;
                    for (const auto& [x, c] : *val) z += c * s.zeta(x[0], w.back());
                    if (z == 0) continue;
                    z *= parity_sign(arity + static_cast<long>(e->degree(w0)) * sum_w);
                    int out_d = s.sum.global(1, mu);
                    full.add(w, {out_d}, z / s.zeta(out_d, w0));
                }
            }
        s.algebra.m.ops[arity] = std::move(full);
    }
    return s;
}

DoubleBracketFamily build_brackets_psi(const InteractivePair& p, const OpFamily& t, int max_n, bool verify) {
    p.validate();
    const SpacePtr& a = p.acting.space;
    const SpacePtr& b = p.base.space;
    SpacePtr av = dual_space(a);
    if (verify) {
        OpFamily cut;
        for (const auto& [n, op] : t.ops)
            if (n < max_n) cut.ops[n] = op;
        CheckReport pre = check_dg_relative_rb(acting_relative(p, cut), std::max(2, 2 * (max_n - 1)));
        pre.battery = "psi-preconditions";
        if (!pre.passed()) refuse("bracket construction refused", pre);
    }
    DoubleBracketFamily out;
    out.space = b;
    if (const MultilinearOp* prod = p.base.m.get(2)) out.product = *prod;
    else out.product = MultilinearOp("m2", {b, b}, {b}, 0);
    if (const MultilinearOp* d = p.base.m.get(1))
        if (!d->is_zero()) {
            MultilinearOp b1 = *d;
            b1.rename("bracket1");
            out.brackets.ops[1] = b1;
        }
    for (const auto& [n, tn] : t.ops) {
        if (n + 1 > max_n || tn.is_zero()) continue;
        // sum over i_1..i_n of e_{i_1} .. e_{i_n} (x) T_n(e^{i_n} .. e^{i_1})
        TensorVec x;
        for (const Key& idx : all_keys(repeat(a, n))) {
            Key rev(idx.rbegin(), idx.rend());
            const TensorVec* tv = tn.lookup(rev);
            if (!tv) continue;
            long deg = 0;
            for (int i : idx) deg += a->degree(i);
            for (const auto& [o, c] : *tv) {
                Key k = idx;
                k.push_back(o[0]);
                add_term(x, k, c * parity_sign((n - 1) * deg));
            }
        }
        MultilinearOp br("bracket" + std::to_string(n + 1), repeat(b, n + 1), repeat(b, n + 1), n - 1);
        for (const Key& bk : all_keys(repeat(b, n + 1))) {
            TensorVec val;
            for (const auto& [xk, c] : x) {
                long e = 0, passed = 0;
                std::vector<TensorVec> legs;
                for (int k = 0; k <= n; ++k) {
                    e += static_cast<long>(a->degree(xk[k])) * passed;
                    passed += b->degree(bk[k]);
                    legs.push_back(lookup_or_empty(p.act_on_base, {xk[k], bk[k]}));
                }
                std::vector<const TensorVec*> parts;
                for (const auto& l : legs) parts.push_back(&l);
                add_scaled(val, tensor_product(parts), c * parity_sign(e));
            }
            if (!val.empty()) br.add_tensor(bk, val);
        }
        if (!br.is_zero()) out.brackets.ops[n + 1] = std::move(br);
    }
    return out;
}

TensorVec algebra_unit(const AInfStructure& a) {
    const MultilinearOp* m2 = a.m.get(2);
    if (!m2) throw StructureError("algebra without a product has no unit");
    size_t dim = a.space->dim();
    Matrix eq;
    std::vector<Scalar> rhs;
    for (size_t j = 0; j < dim; ++j)
        for (size_t o = 0; o < dim; ++o)
            for (int side = 0; side < 2; ++side) {
                std::vector<Scalar> row(dim);
                for (size_t u = 0; u < dim; ++u) {
                    Key k = side == 0 ? Key{static_cast<int>(u), static_cast<int>(j)} : Key{static_cast<int>(j), static_cast<int>(u)};
                    row[u] = m2->coefficient(k, {static_cast<int>(o)});
                }
                eq.push_back(row);
                rhs.push_back(j == o ? 1 : 0);
            }
    auto sol = solve(eq, rhs, dim);
    if (!sol) throw StructureError("algebra '" + a.space->name() + "' has no unit");
    TensorVec u;
    for (size_t i = 0; i < dim; ++i)
        if ((*sol)[i] != 0) add_term(u, {static_cast<int>(i)}, (*sol)[i]);
    return u;
}

TensorVec place_legs(const TensorFamily& r, int i, const std::vector<int>& slots, int n) {
    auto it = r.r.find(i);
    if (it == r.r.end()) return {};
    return place(r.algebra, it->second, i, slots, n);
}

TensorVec tensor_algebra_product(const AInfStructure& a, int n, const TensorVec& x, const TensorVec& y) {
    const MultilinearOp* m2 = a.m.get(2);
    if (!m2) throw StructureError("tensor algebra product needs m2");
    TensorVec out;
    for (const auto& [xk, cx] : x)
        for (const auto& [yk, cy] : y) {
            long e = 0;
            for (int l = 0; l < n; ++l)
                for (int k = 0; k < l; ++k) e += static_cast<long>(a.space->degree(xk[l])) * a.space->degree(yk[k]);
            std::vector<TensorVec> slots;
            bool zero = false;
            for (int k = 0; k < n && !zero; ++k) {
                slots.push_back(lookup_or_empty(*m2, {xk[k], yk[k]}));
                zero = slots.back().empty();
            }
            if (zero) continue;
            std::vector<const TensorVec*> parts;
            for (const auto& s : slots) parts.push_back(&s);
            add_scaled(out, tensor_product(parts), cx * cy * parity_sign(e));
        }
    return out;
}

TensorVec aybe_infinity(const TensorFamily& r, int n) {
    TensorVec out;
    for (int i = 1; i <= n; ++i) {
        int j = n + 1 - i;
        if (!r.r.count(i) || !r.r.count(j)) continue;
        for (const auto& s : cyclic_group(n)) {
            std::vector<int> si(s.begin(), s.begin() + i);
            std::vector<int> sj(s.begin() + (i - 1), s.end());
            TensorVec x = place_legs(r, i, si, n);
            TensorVec y = place_legs(r, j, sj, n);
            add_scaled(out, tensor_algebra_product(r.algebra, n, x, y), sgn(s) * parity_sign(static_cast<long>(j + 1) * i));
        }
    }
    return out;
}

CheckReport check_aybe_infinity(const TensorFamily& r, int max_n) {
    r.validate();
    CheckReport rep;
    rep.battery = "aybe";
    rep.cutoffs["max_arity"] = max_n;
    for (int n = 1; n <= max_n; ++n)
        for (const auto& [k, c] : aybe_infinity(r, n))
            rep.entries.push_back({"aybe", arity_tag(n), {}, format_key(repeat(r.algebra.space, n), k), c});
    rep.normalize();
    return rep;
}

CheckReport check_aybe_skew(const TensorFamily& r, int max_n) {
    r.validate();
    CheckReport rep;
    rep.battery = "aybe-skew";
    rep.cutoffs["max_arity"] = max_n;
    for (const auto& [n, v] : r.r) {
        if (n > max_n || n < 2) continue;
        for (int k = 0; k + 1 < n; ++k) {
            Permutation t = transposition(n, k, k + 1);
            TensorVec diff = permute_tensor(v, repeat(r.algebra.space, n), t);
            add_scaled(diff, v, -sgn(t));
            for (const auto& [key, c] : diff)
                rep.entries.push_back({"aybe-skew", arity_tag(n) + ",(" + std::to_string(k + 1) + " " + std::to_string(k + 2) + ")",
                                       {}, format_key(repeat(r.algebra.space, n), key), c});
        }
    }
    rep.normalize();
    return rep;
}

TensorVec classical_aybe(const AInfStructure& a, const TensorVec& r) {
    TensorVec r12 = place(a, r, 2, {0, 1}, 3);
    TensorVec r13 = place(a, r, 2, {0, 2}, 3);
    TensorVec r23 = place(a, r, 2, {1, 2}, 3);
    TensorVec out = tensor_algebra_product(a, 3, r12, r13);
    add_scaled(out, tensor_algebra_product(a, 3, r23, r12), -1);
    add_scaled(out, tensor_algebra_product(a, 3, r13, r23), 1);
    return out;
}

MultilinearOp operator_from_tensor(const AInfStructure& a, const CyclicForm& g, const TensorVec& r) {
    if (!same_space(g.space, a.space)) throw StructureError("form and algebra live on different spaces");
    MultilinearOp t("T_r", {a.space}, {a.space}, 0);
    for (const auto& [k, c] : r) {
        if (a.space->degree(k[0]) + a.space->degree(k[1]) != 0)
            throw DegreeError("operator_from_tensor needs r of degree 0");
        for (int x = 0; x < static_cast<int>(a.space->dim()); ++x) {
            Scalar v = g(k[1], x);
            if (v != 0) t.add({x}, {k[0]}, c * v);
        }
    }
    return t;
}

namespace {

int matrix_size(const AInfStructure& end_algebra, const SpacePtr& v) {
    int n = static_cast<int>(v->dim());
    if (static_cast<int>(end_algebra.space->dim()) != n * n)
        throw StructureError("End algebra dimension does not match the space");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (end_algebra.space->degree(i * n + j) != v->degree(i) - v->degree(j))
                throw DegreeError("End algebra degrees do not match the space");
    return n;
}

/// (E_{o_1 i_1} (x) ... (x) E_{o_n i_n})(v_{i_1} (x) ... (x) v_{i_n}) sign.
int action_sign(const SpacePtr& v, const Key& outs, const Key& ins) {
    long e = 0, passed = 0;
    for (size_t k = 0; k < ins.size(); ++k) {
        e += static_cast<long>(v->degree(outs[k]) - v->degree(ins[k])) * passed;
        passed += v->degree(ins[k]);
    }
    return parity_sign(e);
}

}  // namespace

DoubleBracketFamily schedler_correspondence(const TensorFamily& r, const SpacePtr& v) {
    r.validate();
    int dim = matrix_size(r.algebra, v);
    DoubleBracketFamily out;
    out.space = v;
    for (const auto& [n, t] : r.r) {
        MultilinearOp br("bracket" + std::to_string(n), repeat(v, n), repeat(v, n), n - 2);
        for (const auto& [k, c] : t) {
            Key outs, ins;
            for (int e : k) {
                outs.push_back(e / dim);
                ins.push_back(e % dim);
            }
            br.add(ins, outs, c * action_sign(v, outs, ins));
        }
        if (!br.is_zero()) out.brackets.ops[n] = std::move(br);
    }
    return out;
}

TensorFamily schedler_inverse(const DoubleBracketFamily& f, const AInfStructure& end_algebra) {
    f.validate();
    int dim = matrix_size(end_algebra, f.space);
    TensorFamily out{end_algebra, {}};
    for (const auto& [n, br] : f.brackets.ops) {
        TensorVec t;
        for (const auto& [ins, v] : br.table())
            for (const auto& [outs, c] : v) {
                Key k;
                for (int s = 0; s < n; ++s) k.push_back(outs[s] * dim + ins[s]);
                add_term(t, k, c * action_sign(f.space, outs, ins));
            }
        if (!t.empty()) out.r[n] = std::move(t);
    }
    return out;
}

CheckReport check_linf_skew(const LInfFamily& f, int max_n) {
    CheckReport rep;
    rep.battery = "linf-skew";
    rep.cutoffs["max_arity"] = max_n;
    for (const auto& [n, l] : f.l.ops) {
        if (n > max_n || n < 2) continue;
        for (int k = 0; k + 1 < n; ++k) {
            Permutation t = transposition(n, k, k + 1);
            auto r = scan_identity("linf-skew", arity_tag(n) + ",(" + std::to_string(k + 1) + " " + std::to_string(k + 2) + ")",
                                   repeat(f.space, n), {f.space},
                                   [&](const Key& x) { return within_weight(f.weight, f.max_weight, x); },
                                   [&](const Key& x) -> TensorVec {
                TensorVec moved = permute_tensor({{x, Scalar(1)}}, repeat(f.space, n), t);
                TensorVec out = l.apply(moved);
                add_scaled(out, lookup_or_empty(l, x), -sgn(t));
                return out;
            });
            rep.entries.insert(rep.entries.end(), r.begin(), r.end());
        }
    }
    rep.normalize();
    return rep;
}

namespace {

void count_truncated(CheckReport& rep, const LInfFamily& f, int slots, const std::string& what) {
    if (f.weight.empty() || f.max_weight <= 0) return;
    size_t cut = 0;
    for (const Key& k : all_keys(repeat(f.space, slots)))
        if (!within_weight(f.weight, f.max_weight, k)) ++cut;
    if (cut)
        rep.truncation_limited.push_back(what + ": " + std::to_string(cut) + " tuples beyond word length " +
                                         std::to_string(f.max_weight));
}

}  // namespace

CheckReport check_linf(const LInfFamily& f, int max_n) {
    CheckReport rep = check_linf_skew(f, max_n);
    rep.battery = "linf";
    const SpacePtr& v = f.space;
    for (int n = 1; n <= max_n; ++n) {
        std::vector<SpacePtr> slots = repeat(v, n);
        std::vector<std::pair<int, Permutation>> terms;
        for (int i = 1; i <= n; ++i)
            if (f.l.get(i) && f.l.get(n - i + 1))
                for (const auto& s : shuffles(i, n - i)) terms.push_back({i, s});
        if (terms.empty()) continue;
        size_t total = key_count(slots);
        auto r = parallel_residuals(total, [&](size_t idx) -> std::vector<Residual> {
            Key x = key_at(slots, idx);
            if (!within_weight(f.weight, f.max_weight, x)) return {};
            TensorVec out;
            for (const auto& [i, s] : terms) {
                TensorVec moved = permute_tensor({{x, Scalar(1)}}, slots, inverse(s));
                Layer inner = concat({{Factor::of(*f.l.get(i))}, identity_layer(v, n - i)});
                Layer outer{Factor::of(*f.l.get(n - i + 1))};
                TensorVec y = apply_layer(inner, moved, slots);
                TensorVec z = apply_layer(outer, y, layer_codomain(inner));
                add_scaled(out, z, sgn(s) * parity_sign(static_cast<long>(i) * (n - i)));
            }
            std::vector<Residual> res;
            for (const auto& [o, c] : out) res.push_back({"jacobi", arity_tag(n), key_labels(slots, x), format_key({v}, o), c});
            return res;
        });
        rep.entries.insert(rep.entries.end(), r.begin(), r.end());
        count_truncated(rep, f, n, "jacobi " + arity_tag(n));
    }
    rep.normalize();
    return rep;
}

CheckReport check_homotopy_poisson(const LInfFamily& f, int max_n) {
    if (!f.product) throw StructureError("homotopy Poisson check needs a product");
    CheckReport rep = check_linf(f, max_n);
    rep.battery = "poisson";
    const MultilinearOp& mu = *f.product;
    const SpacePtr& v = f.space;
    for (const auto& [n, l] : f.l.ops) {
        if (n > max_n || l.is_zero()) continue;
        auto r = scan_identity("leibniz", arity_tag(n), repeat(v, n + 1), {v},
                               [&](const Key& x) { return within_weight(f.weight, f.max_weight, x); },
                               [&](const Key& k) -> TensorVec {
            Key head(k.begin(), k.begin() + (n - 1));
            int x1 = k[n - 1], x2 = k[n];
            TensorVec out;
            for (const auto& [p, c] : lookup_or_empty(mu, {x1, x2})) {
                Key in = head;
                in.push_back(p[0]);
                add_scaled(out, lookup_or_empty(l, in), c);
            }
            Key in1 = head;
            in1.push_back(x1);
            for (const auto& [o, c] : lookup_or_empty(l, in1)) add_scaled(out, lookup_or_empty(mu, {o[0], x2}), -c);
            long before = n - 2;
            for (int x : head) before += v->degree(x);
            int sign = parity_sign(static_cast<long>(v->degree(x1)) * before);
            Key in2 = head;
            in2.push_back(x2);
            for (const auto& [o, c] : lookup_or_empty(l, in2)) add_scaled(out, lookup_or_empty(mu, {x1, o[0]}), -c * sign);
            return out;
        });
        rep.entries.insert(rep.entries.end(), r.begin(), r.end());
        count_truncated(rep, f, n + 1, "leibniz " + arity_tag(n));
    }
    rep.normalize();
    return rep;
}

std::optional<int> SymmetricTruncation::index_of(const std::vector<int>& sorted_letters) const {
    auto it = std::lower_bound(words.begin(), words.end(), sorted_letters, [](const auto& x, const auto& y) {
        return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    if (it == words.end() || *it != sorted_letters) return std::nullopt;
    return static_cast<int>(it - words.begin());
}

std::pair<std::vector<int>, int> SymmetricTruncation::normal_form(const std::vector<int>& letters) const {
    std::vector<int> w = letters;
    int sign = 1;
    for (size_t i = 1; i < w.size(); ++i)
        for (size_t j = i; j > 0 && w[j - 1] > w[j]; --j) {
            if (generators->degree(w[j - 1]) % 2 != 0 && generators->degree(w[j]) % 2 != 0) sign = -sign;
            std::swap(w[j - 1], w[j]);
        }
    for (size_t i = 1; i < w.size(); ++i)
        if (w[i] == w[i - 1] && generators->degree(w[i]) % 2 != 0) return {w, 0};
    return {w, sign};
}

SymmetricTruncation symmetric_truncation(const SpacePtr& v, int max_word) {
    if (max_word < 1) throw StructureError("symmetric truncation needs max_word >= 1");
    SymmetricTruncation s;
    s.generators = v;
    s.max_word = max_word;
    int dim = static_cast<int>(v->dim());
    std::vector<std::vector<int>> level{{}};
    for (int len = 1; len <= max_word; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& w : level) {
            int from = w.empty() ? 0 : w.back();
            for (int x = from; x < dim; ++x) {
                if (!w.empty() && x == w.back() && v->degree(x) % 2 != 0) continue;
                auto nw = w;
                nw.push_back(x);
                next.push_back(nw);
            }
        }
        for (const auto& w : next) s.words.push_back(w);
        level = std::move(next);
    }
    std::vector<BasisElement> basis;
    for (const auto& w : s.words) {
        std::string label;
        int deg = 0;
        for (int x : w) {
            if (!label.empty()) label += "*";
            label += v->label(x);
            deg += v->degree(x);
        }
        basis.push_back({label, deg});
    }
    s.space = make_space("S" + std::to_string(max_word) + "(" + v->name() + ")", basis);
    return s;
}

LInfFamily build_sym_poisson(const DoubleBracketFamily& f, int max_word, int max_n, bool verify) {
    f.validate();
    if (verify) {
        CheckReport pre = check_skew_symmetry(f, max_n);
        pre.merge(check_double_jacobi(f, max_n));
        pre.battery = "sym-poisson-preconditions";
        if (!pre.passed()) refuse("symmetric-algebra construction refused", pre);
    }
    SymmetricTruncation st = symmetric_truncation(f.space, max_word);
    const SpacePtr& w = st.space;
    const SpacePtr& v = f.space;
    LInfFamily out;
    out.space = w;
    out.max_weight = max_word;
    for (const auto& word : st.words) out.weight.push_back(static_cast<int>(word.size()));
    MultilinearOp mu("mu", {w, w}, {w}, 0);
    for (int x = 0; x < static_cast<int>(w->dim()); ++x)
        for (int y = 0; y < static_cast<int>(w->dim()); ++y) {
            std::vector<int> letters = st.words[x];
            letters.insert(letters.end(), st.words[y].begin(), st.words[y].end());
            if (static_cast<int>(letters.size()) > max_word) continue;
            auto [nf, sign] = st.normal_form(letters);
            if (sign != 0) mu.add({x, y}, {*st.index_of(nf)}, sign);
        }
    out.product = mu;
    for (const auto& [n, br] : f.brackets.ops) {
        if (n > max_n || br.is_zero()) continue;
        MultilinearOp l("l" + std::to_string(n), repeat(w, n), {w}, n - 2);
        Scalar pre = factorial(n - 1) * parity_sign(static_cast<long>(n) * (n - 1) / 2);
        for (const Key& k : all_keys(repeat(w, n))) {
            if (!within_weight(out.weight, max_word, k)) continue;
            std::vector<const std::vector<int>*> ws;
            for (int x : k) ws.push_back(&st.words[x]);
            std::vector<int> q(n, 0);
            while (true) {
                long e = 0;
                Key sel;
                for (int s = 0; s < n; ++s) {
                    const auto& word = *ws[s];
                    int us = v->degree(word[q[s]]);
                    long passed = 0;
                    for (int t = 0; t < s; ++t)
                        for (size_t j = 0; j < ws[t]->size(); ++j)
                            if (static_cast<int>(j) != q[t]) passed += v->degree((*ws[t])[j]);
                    for (int j = 0; j < q[s]; ++j) passed += v->degree(word[j]);
                    e += passed * us;
                    sel.push_back(word[q[s]]);
                }
                std::vector<int> rest;
                for (int s = 0; s < n; ++s)
                    for (size_t j = 0; j < ws[s]->size(); ++j)
                        if (static_cast<int>(j) != q[s]) rest.push_back((*ws[s])[j]);
                for (const auto& [o, c] : lookup_or_empty(br, sel)) {
                    std::vector<int> letters(o.begin(), o.end());
                    letters.insert(letters.end(), rest.begin(), rest.end());
                    auto [nf, sign] = st.normal_form(letters);
                    if (sign == 0) continue;
                    l.add(k, {*st.index_of(nf)}, pre * c * sign * parity_sign(e));
                }
                int s = n - 1;
                while (s >= 0 && ++q[s] == static_cast<int>(ws[s]->size())) q[s--] = 0;
                if (s < 0) break;
            }
        }
        if (!l.is_zero()) out.l.ops[n] = std::move(l);
    }
    return out;
}

}  // namespace homalg

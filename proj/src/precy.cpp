#include "homalg/precy.hpp"

namespace homalg {

namespace {

std::vector<SpacePtr> repeat(const SpacePtr& s, int n) { return std::vector<SpacePtr>(static_cast<size_t>(n), s); }

/// kappa(b_1 (x) f_1) (x) ... (x) kappa(b_n (x) f_n) as an element of (A^v)^n.
TensorVec kappa_tensor(const MultilinearOp& kappa, const std::vector<int>& bs, const std::vector<int>& fs) {
    TensorVec acc{{Key{}, Scalar(1)}};
    for (size_t k = 0; k < bs.size(); ++k) {
        const TensorVec* v = kappa.lookup({bs[k], fs[k]});
        if (!v) return {};
        TensorVec next;
        for (const auto& [key, c] : acc)
            for (const auto& [o, c2] : *v) {
                Key nk = key;
                nk.push_back(o[0]);
                add_term(next, nk, c * c2);
            }
        acc = std::move(next);
    }
    return acc;
}

void add_flag_residual(CheckReport& rep, const std::string& flag, const MultilinearOp& op, const Key& k, const Key& o,
                       const Scalar& c) {
    rep.entries.push_back({flag, "n=" + std::to_string(op.arity()), key_labels(op.domain(), k), format_key(op.codomain(), o), c});
}

}  // namespace

PreCYStructure precy_of_dg_algebra(const AInfStructure& b) {
    b.validate();
    AInfStructure neg{b.space, {}};
    for (const auto& [n, op] : b.m.ops) {
        if (n > 2 && !op.is_zero()) throw StructureError("base algebra must be a dg algebra");
        if (n == 1) neg.m.ops[1] = sum_ops({{Scalar(-1), &op}}, "m1");
        else neg.m.ops[n] = op;
    }
    TrivialExtension te = build_trivial_extension(neg, -1);
    PreCYStructure s;
    s.base = b.space;
    s.sum = te.sum;
    s.algebra = te.algebra;
    s.zeta = te.zeta;
    return s;
}

PreCYStructure build_precy_from_pair(const InteractivePair& p, const OpFamily& T, int max_n, bool verify) {
    PairActions act = pair_actions(p);
    for (const auto& [n, op] : T.ops) {
        if (n > max_n) continue;
        bool ok = op.arity() == n && op.codomain().size() == 1 && same_space(op.codomain()[0], p.acting.space);
        for (const auto& s : op.domain()) ok = ok && same_space(s, act.acting_v);
        if (!ok) throw StructureError("T_" + std::to_string(n) + " must map (A^v)^n to A");
    }
    if (verify) {
        CheckReport pre;
        pre.battery = "precy-preconditions";
        pre.merge(check_interactive_pair(p));
        for (const auto& [n, op] : T.ops)
            if (n <= max_n) pre.merge(check_strong_n_derivation(p, op));
        OpFamily cut;
        for (const auto& [n, op] : T.ops)
            if (n <= max_n) cut.ops[n] = op;
        pre.merge(check_dg_relative_rb(acting_relative(p, cut), std::max(2, 2 * max_n)));
        pre.battery = "precy-preconditions";
        pre.normalize();
        if (!pre.passed())
            throw PreconditionError("pre-CY construction refused: " + pre.entries.front().identity + " fails at " +
                                        pre.entries.front().indices,
                                    pre);
    }
    PreCYStructure s = precy_of_dg_algebra(p.base);
    s.max_n = max_n;
    const SpacePtr& b = p.base.space;
    const SpacePtr& e = s.sum.space;
    const SpacePtr& bv = act.base_v;
    int db = static_cast<int>(b->dim());
    int dbv = static_cast<int>(bv->dim());
    for (const auto& [n, tn] : T.ops) {
        if (n > max_n || tn.is_zero()) continue;
        int arity = 2 * n + 1;
        MultilinearOp m("m" + std::to_string(arity), repeat(e, arity), {e}, arity - 2);
        // b_1 s^-1 f_1 ... b_n s^-1 f_n b_{n+1}  and  s^-1 f_0 b_1 s^-1 f_1 ... b_n s^-1 f_n
        std::vector<SpacePtr> pattern;
        for (int k = 0; k < n; ++k) {
            pattern.push_back(b);
            pattern.push_back(bv);
        }
        for (const Key& bf : all_keys(pattern)) {
            std::vector<int> bs, fs, bdeg, fdeg;
            for (int k = 0; k < n; ++k) {
                bs.push_back(bf[2 * k]);
                fs.push_back(bf[2 * k + 1]);
                bdeg.push_back(b->degree(bf[2 * k]));
                fdeg.push_back(bv->degree(bf[2 * k + 1]));
            }
            TensorVec kt = kappa_tensor(act.kappa, bs, fs);
            if (kt.empty()) continue;
            TensorVec ta = tn.apply(kt);
            if (ta.empty()) continue;
            int g = parity_sign(signs::gamma(bdeg, fdeg));
            Key mid;
            for (int k = 0; k < n; ++k) {
                mid.push_back(s.sum.global(0, bs[k]));
                mid.push_back(s.sum.global(1, fs[k]));
            }
            for (int last = 0; last < db; ++last) {
                Key in = mid;
                in.push_back(s.sum.global(0, last));
                for (const auto& [ak, c] : ta)
                    if (const TensorVec* out = p.act_on_base.lookup({ak[0], last}))
                        for (const auto& [o, c2] : *out) m.add(in, {s.sum.global(0, o[0])}, c * c2 * g);
            }
            for (int f0 = 0; f0 < dbv; ++f0) {
                Key in{s.sum.global(1, f0)};
                for (int k = 0; k < n; ++k) {
                    in.push_back(s.sum.global(0, bs[k]));
                    in.push_back(s.sum.global(1, fs[k]));
                }
                int sign = g * parity_sign(bv->degree(f0));
                for (const auto& [ak, c] : ta)
                    if (const TensorVec* out = act.base_dual_right.lookup({f0, ak[0]}))
                        for (const auto& [o, c2] : *out) m.add(in, {s.sum.global(1, o[0])}, c * c2 * sign);
            }
        }
        s.algebra.m.ops[arity] = std::move(m);
    }
    return s;
}

CheckReport check_precy_structure(const PreCYStructure& s, int max_arity) {
    CheckReport rep = check_stasheff(s.algebra, max_arity);
    for (const auto& [n, op] : s.algebra.m.ops) {
        if (n > max_arity) continue;
        for (const auto& [k, v] : op.table()) {
            if (s.sum.count(k, 0) != n) continue;
            for (const auto& [o, c] : v)
                if (s.sum.component(o[0]) != 0) add_flag_residual(rep, "subalgebra", op, k, o, c);
        }
    }
    rep.battery = "precy";
    int higher = 2 * s.max_n + 1;
    if (max_arity < higher)
        rep.notes.push_back("operations exist up to arity " + std::to_string(higher) + "; Stasheff checked to " +
                            std::to_string(max_arity));
    rep.normalize();
    return rep;
}

CheckReport check_precy_cyclicity(const PreCYStructure& s, int max_arity) {
    CheckReport rep = check_cyclic(s.algebra, s.zeta, max_arity);
    rep.battery = "precy-cyclic";
    return rep;
}

PreCYFlags check_precy_flags(const PreCYStructure& s, int max_arity) {
    PreCYFlags f;
    CheckReport good, fine, manage, special;
    for (const auto& [n, op] : s.algebra.m.ops) {
        if (n > max_arity) continue;
        if (n == 2) {
            for (const auto& [k, v] : op.table())
                for (const auto& [o, c] : v) add_flag_residual(fine, "fine", op, k, o, c);
            continue;
        }
        for (const auto& [k, v] : op.table()) {
            // allowed shapes: B D B ... B -> B and D B D ... D -> D
            bool alternating = n % 2 == 1;
            for (int t = 1; alternating && t < n; ++t)
                alternating = s.sum.component(k[t]) != s.sum.component(k[t - 1]);
            for (const auto& [o, c] : v)
                if (!alternating || s.sum.component(o[0]) != s.sum.component(k[0]))
                    add_flag_residual(good, "good", op, k, o, c);
        }
    }
    // manageable: m_2 is the trivial-extension product of an associative product on B
    const MultilinearOp* m2 = s.algebra.m.get(2);
    AInfStructure restricted{s.base, {}};
    if (m2) {
        MultilinearOp prod("m2", {s.base, s.base}, {s.base}, 0);
        for (const auto& [k, v] : m2->table()) {
            if (s.sum.count(k, 0) != 2) continue;
            for (const auto& [o, c] : v)
                if (s.sum.component(o[0]) == 0) prod.add({s.sum.local(k[0]), s.sum.local(k[1])}, {s.sum.local(o[0])}, c);
        }
        restricted.m.ops[2] = prod;
    }
    PreCYStructure expected = precy_of_dg_algebra(restricted);
    MultilinearOp none("m2", repeat(s.sum.space, 2), {s.sum.space}, 0);
    const MultilinearOp* want = expected.algebra.m.get(2);
    MultilinearOp diff = sum_ops({{Scalar(1), m2 ? m2 : &none}, {Scalar(-1), want ? want : &none}}, "m2");
    for (const auto& [k, v] : diff.table())
        for (const auto& [o, c] : v) add_flag_residual(manage, "manageable", diff, k, o, c);
    if (const MultilinearOp* p2 = restricted.m.get(2)) {
        AInfStructure only{s.base, {}};
        only.m.ops[2] = *p2;
        for (const auto& r : stasheff_residuals(s.base, only.m, 3, "manageable", nullptr)) manage.entries.push_back(r);
    }
    // special: zeta(m_{2n-1}(v_1..v_{2n-1}), v_{2n}) invariant under pair permutations
    for (const auto& [arity, op] : s.algebra.m.ops) {
        if (arity < 3 || arity % 2 == 0 || arity > max_arity) continue;
        int n = (arity + 1) / 2;
        std::vector<SpacePtr> slots = repeat(s.sum.space, arity + 1);
        auto value = [&](const Key& k) {
            Key head(k.begin(), k.end() - 1);
            Scalar acc = 0;
            if (const TensorVec* v = op.lookup(head))
                for (const auto& [o, c] : *v) acc += c * s.zeta(o[0], k.back());
            return acc;
        };
        for (const auto& sigma : all_permutations(n)) {
            Permutation st = pair_lift(sigma);
            auto x = scan_scalar_identity("special", "n=" + std::to_string(arity), slots, nullptr, [&](const Key& k) -> Scalar {
                std::vector<int> deg = slot_degrees(slots, k);
                // w_t = v_{st(t)}: slot st(t) moves to slot t
                Key w(k.size());
                for (size_t t = 0; t < k.size(); ++t) w[t] = k[st[t]];
                return value(k) - koszul_sign(inverse(st), deg) * value(w);
            });
            special.entries.insert(special.entries.end(), x.begin(), x.end());
        }
    }
    f.good = good.entries.empty();
    f.fine = f.good && fine.entries.empty();
    f.manageable = manage.entries.empty();
    f.special = special.entries.empty();
    f.witnesses.battery = "precy-flags";
    for (auto* r : {&good, &manage, &special}) f.witnesses.entries.insert(f.witnesses.entries.end(), r->entries.begin(), r->entries.end());
    if (f.good && !f.fine) f.witnesses.entries.insert(f.witnesses.entries.end(), fine.entries.begin(), fine.entries.end());
    f.witnesses.cutoffs["max_arity"] = max_arity;
    f.witnesses.normalize();
    return f;
}

}  // namespace homalg

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.
#include "homalg/commands.hpp"
#include "homalg/instances.hpp"

#include <chrono>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace homalg;
using namespace homalg::instances;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome out;
    auto t0 = Clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.require(false, std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_s > 0) out.require(s < limit_s, "over the time limit");
    char t[32];
    std::snprintf(t, sizeof t, "%.2f s", s);
    std::cout << "criterion " << id << ": " << (out.ok ? "PASS" : "FAIL") << "  " << title << " (" << t << ")";
    if (!out.detail.empty()) std::cout << " [" << out.detail << "]";
    std::cout << std::endl;
    failures += !out.ok;
}

OpFamily single(const MultilinearOp& t) {
    OpFamily f;
    f.ops[t.arity()] = t;
    return f;
}

TensorFamily aguiar() {
    TensorFamily r{matrix_algebra(2), {}};
    // E11 (x) E12 - E12 (x) E11
    r.r[2] = {{{0, 1}, Scalar(1)}, {{1, 0}, Scalar(-1)}};
    return r;
}

SpacePtr plane() { return make_space("V", {{"v1", 0}, {"v2", 0}}); }

struct DeskInstance {
    InteractivePair pair;
    OpFamily T;
    int solution_dim = 0;
};

DeskInstance criterion5_instance() {
    InteractivePair p = endomorphism_pair(dual_numbers());
    OperatorSearch s = find_cyclic_rb_derivation(p, 3);
    if (!s.found) throw std::runtime_error("the solver found no cyclic Rota-Baxter derivation");
    return {p, single(*s.found), s.solution_dim};
}

// mutation sensitivity

struct MutationCase {
    std::string battery;
    Document doc;
    std::string bundle;
    std::string target;  // operation name, or "tensor" for the r-coefficients
};

bool label_exists(const Document& doc, std::string label) {
    // summands of a direct sum with clashing labels are prefixed by their position, "[1]x"
    if (label.size() > 3 && label[0] == '[') label = label.substr(label.find(']') + 1);
    for (const auto& s : doc.spaces)
        if (s->index_of(label)) return true;
    return ground_space()->index_of(label).has_value();
}

/// Tensor-valued identities without inputs are located by their output basis tensor.
std::vector<std::string> witness_tuple(const Residual& w) {
    if (!w.inputs.empty()) return w.inputs;
    std::vector<std::string> out;
    std::string rest = w.output;
    for (size_t at; (at = rest.find(" (x) ")) != std::string::npos; rest = rest.substr(at + 5)) out.push_back(rest.substr(0, at));
    if (!rest.empty() && w.output != "1") out.push_back(rest);
    return out;
}

/// The witness names an identity and arity and a basis tuple of declared labels, and it is
/// reported identically with several workers. The unmutated instance has no residual at all.
bool witness_located(const Document& mutated, const std::string& bundle, int n, const Residual& w, std::string& why) {
    std::vector<std::string> tuple = witness_tuple(w);
    if (w.identity.empty() || w.indices.empty() || tuple.empty()) {
        why = "witness without identity or tuple";
        return false;
    }
    for (const auto& l : tuple)
        if (!label_exists(mutated, l)) {
            why = "witness label " + l + " is not a basis element";
            return false;
        }
    set_jobs(4);
    CheckReport again = run_battery(resolve_bundle(mutated, bundle), n);
    set_jobs(1);
    if (again.entries.empty() || again.entries.front().identity != w.identity ||
        again.entries.front().inputs != w.inputs || again.entries.front().value != w.value) {
        why = "witness moved with the worker count";
        return false;
    }
    return true;
}

std::optional<Residual> mutate_until_caught(const MutationCase& c, int n, std::string& why) {
    CheckReport clean = run_battery(resolve_bundle(c.doc, c.bundle), n);
    if (!clean.passed()) {
        why = "unmutated instance fails";
        return std::nullopt;
    }
    int tries = 0;
    if (c.target == "tensor") {
        size_t bi = 0;
        while (bi < c.doc.bundles.size() && c.doc.bundles[bi]["name"] != c.bundle) ++bi;
        const Json& tensors = c.doc.bundles.at(bi)["tensors"];
        for (size_t t = 0; t < tensors.size(); ++t)
            for (size_t e = 0; e < tensors[t]["terms"].size(); ++e) {
                Document m = c.doc;
                Json& coeff = m.bundles[bi]["tensors"][t]["terms"][e]["coeff"];
                coeff = format_scalar(parse_scalar(coeff.get<std::string>()) + 1);
                Document reparsed = parse_document(print_document(m));
                CheckReport r = run_battery(resolve_bundle(reparsed, c.bundle), n);
                if (r.passed()) continue;
                if (witness_located(reparsed, c.bundle, n, r.entries.front(), why)) return r.entries.front();
                return std::nullopt;
            }
        why = "no tensor coefficient perturbation was caught";
        return std::nullopt;
    }
    size_t idx = 0;
    while (idx < c.doc.operations.size() && c.doc.operations[idx].name() != c.target) ++idx;
    if (idx == c.doc.operations.size()) {
        why = "no operation " + c.target;
        return std::nullopt;
    }
    const MultilinearOp& op = c.doc.operations[idx];
    for (const Key& in : all_keys(op.domain()))
        for (const Key& out : all_keys(op.codomain())) {
            if (tensor_degree(op.codomain(), out) != tensor_degree(op.domain(), in) + op.degree()) continue;
            if (++tries > 400) {
                why = "no caught perturbation within 400 tries";
                return std::nullopt;
            }
            Document m = c.doc;
            m.operations[idx].set(in, out, op.coefficient(in, out) + 1);
            CheckReport r = run_battery(resolve_bundle(m, c.bundle), n);
            if (r.passed()) continue;
            if (witness_located(m, c.bundle, n, r.entries.front(), why)) return r.entries.front();
            return std::nullopt;
        }
    why = "no single-coefficient perturbation was caught";
    return std::nullopt;
}

std::vector<MutationCase> mutation_cases() {
    std::vector<MutationCase> cs;
    const std::map<std::string, int> cut = {{"max_arity", 3}, {"max_word", 3}};
    auto make = [&](const std::string& battery, const std::function<std::string(DocumentWriter&)>& fill,
                    const std::string& target) {
        DocumentWriter w;
        std::string name = fill(w);
        Document d = w.finish(cut);
        cs.push_back({battery, d, name, target});
    };
    DeskInstance inst = criterion5_instance();
    RBRelative rel = acting_relative(inst.pair, inst.T);
    OpFamily zero_t;
    zero_t.ops[1] = MultilinearOp("T1", {dual_space(inst.pair.acting.space)}, {inst.pair.acting.space}, 0);
    RBRelative rel0 = acting_relative(inst.pair, zero_t);

    make("stasheff", [](DocumentWriter& w) { return w.ainf("a", dual_numbers()); }, "a.m2");
    make("bimodule", [](DocumentWriter& w) { return w.bimodule("b", regular_bimodule(dual_numbers())); }, "b.m1_0");
    make("rb-absolute", [](DocumentWriter& w) { return w.rb_absolute("r", classical_rb_dual_numbers()); }, "r.T1");
    make("rb-relative", [&](DocumentWriter& w) { return w.rb_relative("r", "rb-relative", rel); }, "r.T1");
    make("rb-dg", [&](DocumentWriter& w) { return w.rb_relative("r", "rb-dg", rel); }, "r.T1");
    make("rb-module", [](DocumentWriter& w) { return w.rb_module("m", regular_rb_module(classical_rb_dual_numbers())); },
         "m.T0_0");
    make("cyclic", [](DocumentWriter& w) {
        TrivialExtension t = build_trivial_extension(dual_numbers(), 0);
        return w.cyclic_ainf("c", t.algebra, t.zeta);
    }, "c.algebra.m2");
    make("ultracyclic", [&](DocumentWriter& w) { return w.rb_relative("u", "rb-ultracyclic", rel0); }, "u.T1");
    make("pair", [&](DocumentWriter& w) { return w.pair("p", inst.pair); }, "p.act_on_base");
    make("derivation", [&](DocumentWriter& w) { return w.derivation("d", inst.pair, inst.T); }, "d.T1");
    make("precy", [&](DocumentWriter& w) { return w.precy("s", build_precy_from_pair(inst.pair, inst.T, 1)); },
         "s.algebra.m3");
    make("djac", [](DocumentWriter& w) { return w.brackets("f", schedler_correspondence(aguiar(), plane())); },
         "f.bracket2");
    make("leibniz", [&](DocumentWriter& w) { return w.brackets("f", build_brackets_psi(inst.pair, inst.T, 3)); },
         "f.product");
    make("aybe", [](DocumentWriter& w) { return w.tensors("r", aguiar(), plane()); }, "tensor");
    make("linf", [](DocumentWriter& w) {
        SpacePtr l = make_space("L", {{"x", 0}, {"y", 0}});
        MultilinearOp l2("l2", {l, l}, {l}, 0);
        l2.add({0, 1}, {1}, 1);
        l2.add({1, 0}, {1}, -1);
        LInfFamily f;
        f.space = l;
        f.l.ops[2] = l2;
        return w.linf("g", f);
    }, "g.l2");
    make("poisson", [](DocumentWriter& w) {
        return w.linf("p", build_sym_poisson(schedler_correspondence(aguiar(), plane()), 3, 3));
    }, "p.l2");
    return cs;
}

// determinism

std::string full_run(const std::vector<std::string>& files) {
    std::ostringstream all;
    CommandOptions o;
    for (const auto& f : files) {
        Document d = load_document(f);
        all << cmd_check(d, "", o).report_json().dump(2);
        for (const auto& b : d.bundles) all << cmd_check(d, b["name"], o).report_json().dump(2);
        std::string kind = d.bundles.empty() ? "" : d.bundles.back()["kind"].get<std::string>();
        std::vector<std::string> ops;
        if (kind == "rb-absolute") ops = {"cyclic-completion"};
        if (kind == "rb-module") ops = {"dualize", "rb-extension"};
        if (kind == "derivation") ops = {"precy", "psi-brackets"};
        if (kind == "tensor") ops = {"schedler"};
        for (const auto& op : ops) {
            CommandResult r = cmd_construct(d, "", op, o);
            all << r.report_json().dump(2);
            if (r.output) all << print_document(*r.output);
        }
        if (kind == "tensor") all << cmd_roundtrip(d, "", "rb-aybe-double-lie", o).report_json().dump(2);
        if (kind == "derivation") all << cmd_roundtrip(d, "", "psi-precy", o).report_json().dump(2);
    }
    return all.str();
}

}  // namespace

int main() {
    set_jobs(1);

    criterion(1, "classical Rota-Baxter relation on Q[x]/(x^2), and a perturbed T(x) = 1 is caught", 1.0, [](Outcome& o) {
        AInfBimodule reg = regular_bimodule(dual_numbers());
        RBAbsolute r = classical_rb_dual_numbers();
        CheckReport good = check_classical_rb(reg, *r.T.get(1));
        o.require(good.entries.empty(), "classical relation fails");
        MultilinearOp bad = *r.T.get(1);
        bad.set({1}, {0}, 1);
        o.require(!check_classical_rb(reg, bad).entries.empty(), "perturbation not caught");
    });

    criterion(2, "trivial extensions of Q[x]/(x^2) for d = 0, -1 are cyclic A-infinity through arity 4", 5.0,
              [](Outcome& o) {
        for (int d : {0, -1}) {
            TrivialExtension t = build_trivial_extension(dual_numbers(), d);
            o.require(check_stasheff(t.algebra, 4).passed(), "Stasheff fails for d = " + std::to_string(d));
            o.require(check_cyclic(t.algebra, t.zeta, 4).passed(), "cyclicity fails for d = " + std::to_string(d));
        }
    });

    criterion(3, "cyclic completion: 4-dim, homotopy and cyclic Rota-Baxter at max_n = 3, odd dual generators", 60.0,
              [](Outcome& o) {
        CyclicCompletion c = cyclic_completion(classical_rb_dual_numbers());
        o.require(c.sum.space->dim() == 4, "completion is not 4-dimensional");
        o.require(check_homotopy_rb_absolute(c.algebra, 3).passed(), "homotopy relation fails");
        o.require(check_cyclic_rb(c.algebra, c.zeta, 3).passed(), "cyclicity fails");
        for (const auto& r : {graded_toy_rb(), graded_classical_rb()}) {
            CyclicCompletion g = cyclic_completion(r);
            bool odd = false;
            for (size_t i = 0; i < g.sum.parts[1]->dim(); ++i) odd |= g.sum.parts[1]->degree(i) % 2 != 0;
            o.require(odd, "no odd-degree dual generator in " + r.algebra.space->name());
            o.require(check_homotopy_rb_absolute(g.algebra, 3).passed(), "graded homotopy relation fails");
            o.require(check_cyclic_rb(g.algebra, g.zeta, 3).passed(), "graded cyclicity fails");
        }
    });

    criterion(4, "dual Rota-Baxter module of a 2-dim module passes the module identities for m + n <= 3", 60.0,
              [](Outcome& o) {
        RBModule mod = regular_rb_module(classical_rb_dual_numbers());
        o.require(mod.module.module->dim() == 2, "module is not 2-dimensional");
        RBModule dual = dualize_rb_module(mod);
        o.require(check_rb_module(dual, 3).passed(), "dual module fails");
    });

    criterion(5, "pre-CY structure from (End(B), B) with a solver-found cyclic T1: Stasheff and cyclic through 5, good and manageable",
              300.0, [](Outcome& o) {
        DeskInstance in = criterion5_instance();
        o.require(in.solution_dim > 0, "empty solution space");
        PreCYStructure s = build_precy_from_pair(in.pair, in.T, 2);
        o.require(check_stasheff(s.algebra, 5).passed(), "Stasheff fails");
        o.require(check_precy_structure(s, 5).passed(), "B is not a subalgebra");
        o.require(check_precy_cyclicity(s, 5).passed(), "cyclicity fails");
        PreCYFlags f = check_precy_flags(s, 5);
        o.require(f.good, "not good");
        o.require(f.manageable, "not manageable");
    });

    criterion(6, "psi brackets equal (-1)^n times the extracted brackets for n <= 3", 0, [](Outcome& o) {
        DeskInstance in = criterion5_instance();
        PreCYStructure s = build_precy_from_pair(in.pair, in.T, 3);
        DoubleBracketFamily ex = extract_brackets_from_precy(s, 4);
        DoubleBracketFamily psi = build_brackets_psi(in.pair, in.T, 4);
        o.require(psi.brackets.get(2) != nullptr, "no binary bracket");
        for (int n = 1; n <= 3; ++n) {
            const MultilinearOp* e = ex.brackets.get(n + 1);
            const MultilinearOp* q = psi.brackets.get(n + 1);
            if (!e || !q) {
                o.require(e == q, "bracket of arity " + std::to_string(n + 1) + " present on one side only");
                continue;
            }
            o.require(sum_ops({{parity_sign(n), e}}, q->name()) == *q, "tables differ at n = " + std::to_string(n));
        }
    });

    criterion(7, "Aguiar r2 in End(Q^2): AYBE-infinity through 4, skew double Lie bracket, identity round trip", 30.0,
              [](Outcome& o) {
        TensorFamily r = aguiar();
        o.require(check_aybe_infinity(r, 4).passed(), "AYBE-infinity fails");
        DoubleBracketFamily f = schedler_correspondence(r, plane());
        o.require(check_skew_symmetry(f, 4).passed(), "bracket is not skew");
        o.require(check_double_jacobi(f, 4).passed(), "double Jacobi fails");
        o.require(schedler_inverse(f, r.algebra).r == r.r, "round trip is not the identity");
    });

    criterion(8, "homotopy Poisson structure on S(V) from the Aguiar bracket, words <= 3, n <= 3", 120.0, [](Outcome& o) {
        LInfFamily lf = build_sym_poisson(schedler_correspondence(aguiar(), plane()), 3, 3);
        CheckReport r = check_homotopy_poisson(lf, 3);
        o.require(r.entries.empty(), "nonzero residual on a non-truncated identity");
    });

    criterion(9, "every checker battery catches a single-coefficient mutation with a located witness", 0, [](Outcome& o) {
        std::set<std::string> seen;
        for (const auto& c : mutation_cases()) {
            std::string why;
            auto w = mutate_until_caught(c, 3, why);
            o.require(w.has_value(), c.battery + ": " + why);
            if (std::getenv("HOMALG_SHOW_WITNESSES") && w) {
                std::cerr << "  " << c.battery << ": " << w->identity << " [" << w->indices << "] (";
                for (size_t i = 0; i < w->inputs.size(); ++i) std::cerr << (i ? ", " : "") << w->inputs[i];
                std::cerr << ") -> " << format_scalar(w->value) << " * " << w->output << "\n";
            }
            seen.insert(c.battery);
        }
        for (const std::string b : {"stasheff", "bimodule", "rb-absolute", "rb-relative", "rb-dg", "rb-module", "cyclic",
                                    "ultracyclic", "pair", "derivation", "precy", "djac", "leibniz", "aybe", "linf",
                                    "poisson"})
            o.require(seen.count(b) == 1, "battery " + b + " not exercised");
    });

    criterion(10, "reports are byte-identical with 1 and 4 workers", 0, [](Outcome& o) {
        std::vector<std::string> files;
        for (const auto& e : std::filesystem::directory_iterator(HOMALG_DATA_DIR))
            if (e.path().extension() == ".json" && e.path().filename() != "bad_rational.json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        o.require(!files.empty(), "no desk documents");
        set_jobs(1);
        std::string one = full_run(files);
        set_jobs(4);
        std::string four = full_run(files);
        set_jobs(1);
        o.require(one == four, "reports differ");
    });

    return failures == 0 ? 0 : 1;
}

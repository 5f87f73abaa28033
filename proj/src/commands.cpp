#include "homalg/commands.hpp"

#include "homalg/instances.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace homalg {

namespace {

int arity_cutoff(const Document& doc, const CommandOptions& opt) {
    if (opt.max_arity) return *opt.max_arity;
    auto it = doc.cutoffs.find("max_arity");
    return it != doc.cutoffs.end() ? it->second : 4;
}

int word_cutoff(const Document& doc, const CommandOptions& opt) {
    if (opt.max_word) return *opt.max_word;
    auto it = doc.cutoffs.find("max_word");
    return it != doc.cutoffs.end() ? it->second : 3;
}

std::string pick_bundle(const Document& doc, const std::string& requested, const std::vector<std::string>& kinds) {
    if (!requested.empty()) {
        if (!doc.bundle(requested)) throw InputError("--bundle", "no bundle named \"" + requested + "\"");
        return requested;
    }
    auto found = kinds.empty() ? (doc.bundles.empty() ? std::nullopt
                                                      : std::optional<std::string>(doc.bundles.back()["name"]))
                               : doc.last_bundle_of(kinds);
    if (!found) {
        std::string list;
        for (const auto& k : kinds) list += (list.empty() ? "" : ", ") + k;
        throw InputError("/bundles", "no bundle of kind " + (list.empty() ? std::string("any") : list));
    }
    return *found;
}

template <class T>
const T& expect(const ResolvedBundle& b, const std::string& what) {
    if (const T* v = std::get_if<T>(&b.value)) return *v;
    throw InputError("--bundle", "bundle \"" + b.name + "\" of kind " + b.kind + " cannot be used for " + what);
}

const RBRelative& expect_relative(const ResolvedBundle& b, const std::string& what) {
    return expect<RelativeBundle>(b, what).rb;
}

/// One residual per coefficient of got - sign * want.
void compare_ops(CheckReport& rep, const std::string& identity, const MultilinearOp* got, const MultilinearOp* want,
                 const Scalar& sign, const std::string& indices) {
    if (!got && !want) return;
    const MultilinearOp& shape = got ? *got : *want;
    std::map<Key, TensorVec> diff;
    if (got)
        for (const auto& [k, v] : got->table()) add_scaled(diff[k], v, 1);
    if (want)
        for (const auto& [k, v] : want->table()) add_scaled(diff[k], v, -sign);
    for (const auto& [k, v] : diff)
        for (const auto& [o, c] : v)
            rep.entries.push_back(Residual{identity, indices, key_labels(shape.domain(), k),
                                           format_key(shape.codomain(), o), c});
}

Json certificate_of(const CheckReport& r) {
    Json c;
    c["battery"] = r.battery;
    c["verdict"] = r.verdict();
    c["residuals"] = r.entries.size();
    c["truncation_limited"] = r.truncation_limited.size();
    c["cutoffs"] = Json::object();
    for (const auto& [k, v] : r.cutoffs) c["cutoffs"][k] = v;
    return c;
}

std::string flag_line(const PreCYFlags& f) {
    std::string s = "flags:";
    s += f.good ? " good" : " not-good";
    s += f.fine ? " fine" : " not-fine";
    s += f.manageable ? " manageable" : " not-manageable";
    s += f.special ? " special" : " not-special";
    return s;
}

template <class F>
CommandResult guarded(std::string command, F&& body) {
    CommandResult res;
    res.command = std::move(command);
    try {
        body(res);
    } catch (const InputError& e) {
        res.status = 2;
        res.message = "input error at " + (e.locator.empty() ? std::string("/") : e.locator) + ": " + e.what();
        res.report = CheckReport{};
    } catch (const PreconditionError& e) {
        res.status = 1;
        res.report = e.report;
        res.report.normalize();
        res.message = e.what();
        res.output.reset();
    } catch (const StructureError& e) {
        res.status = 2;
        res.message = std::string("input error: ") + e.what();
        res.report = CheckReport{};
    } catch (const ParseError& e) {
        res.status = 2;
        res.message = std::string("input error: ") + e.what();
        res.report = CheckReport{};
    }
    return res;
}

std::string echo(const std::string& verb, const std::string& bundle, const std::vector<std::string>& extra, int n,
                 int w) {
    std::string s = verb + " --bundle " + bundle;
    for (const auto& e : extra) s += " " + e;
    return s + " --max-arity " + std::to_string(n) + " --max-word " + std::to_string(w);
}

}  // namespace

std::string battery_of_kind(const std::string& kind) {
    static const std::map<std::string, std::string> m = {
        {"ainf", "stasheff"},        {"bimodule", "bimodule"},     {"cyclic-ainf", "cyclic"},
        {"rb-absolute", "rb-absolute"}, {"rb-relative", "rb-relative"}, {"rb-dg", "rb-dg"},
        {"rb-ultracyclic", "ultracyclic"}, {"rb-module", "rb-module"}, {"rb-cyclic", "cyclic"},
        {"pair", "pair"},            {"derivation", "derivation"}, {"precy", "precy"},
        {"double-lie", "djac"},      {"double-poisson", "leibniz"}, {"tensor", "aybe"},
        {"linf", "linf"},            {"poisson", "poisson"}};
    auto it = m.find(kind);
    if (it == m.end()) throw InputError("/bundles", "unknown bundle kind \"" + kind + "\"");
    return it->second;
}

CheckReport run_battery(const ResolvedBundle& b, int n) {
    CheckReport rep;
    const std::string& kind = b.kind;
    if (kind == "ainf") {
        rep = check_stasheff(std::get<AInfStructure>(b.value), n);
    } else if (kind == "bimodule") {
        rep = check_bimodule(std::get<AInfBimodule>(b.value), n);
    } else if (kind == "cyclic-ainf") {
        const auto& c = std::get<CyclicAInf>(b.value);
        rep = check_stasheff(c.algebra, n);
        rep.merge(check_cyclic(c.algebra, c.form, n));
    } else if (kind == "rb-absolute") {
        rep = check_homotopy_rb_absolute(std::get<RBAbsolute>(b.value), n);
    } else if (kind == "rb-relative") {
        rep = check_homotopy_rb_relative(expect_relative(b, "rb-relative"), n);
    } else if (kind == "rb-dg") {
        rep = check_dg_relative_rb(expect_relative(b, "rb-dg"), n);
    } else if (kind == "rb-ultracyclic") {
        rep = check_ultracyclic(expect_relative(b, "ultracyclic"), n);
    } else if (kind == "rb-module") {
        rep = check_rb_module(std::get<RBModule>(b.value), n);
    } else if (kind == "rb-cyclic") {
        const auto& c = std::get<RBCyclic>(b.value);
        rep = check_homotopy_rb_absolute(c.rb, n);
        rep.merge(check_cyclic_rb(c.rb, c.form, n));
    } else if (kind == "pair") {
        rep = check_interactive_pair(std::get<InteractivePair>(b.value));
    } else if (kind == "derivation") {
        const auto& d = std::get<DerivationBundle>(b.value);
        for (const auto& [k, t] : d.T.ops)
            if (k <= n) rep.merge(check_strong_n_derivation(d.pair, t));
    } else if (kind == "precy") {
        const auto& s = std::get<PreCYStructure>(b.value);
        rep = check_precy_structure(s, n);
        rep.merge(check_precy_cyclicity(s, n));
        PreCYFlags f = check_precy_flags(s, n);
        rep.notes.push_back(flag_line(f));
    } else if (kind == "double-lie" || kind == "double-poisson") {
        const auto& f = std::get<DoubleBracketFamily>(b.value);
        rep = check_cyclic_symmetry(f, n);
        rep.merge(check_double_jacobi(f, n));
        if (kind == "double-poisson") rep.merge(check_double_leibniz(f, n));
    } else if (kind == "tensor") {
        const auto& t = std::get<TensorBundle>(b.value);
        rep = check_aybe_skew(t.r, n);
        rep.merge(check_aybe_infinity(t.r, n));
    } else if (kind == "linf" || kind == "poisson") {
        const auto& f = std::get<LInfFamily>(b.value);
        rep = check_linf_skew(f, n);
        rep.merge(kind == "poisson" ? check_homotopy_poisson(f, n) : check_linf(f, n));
    } else {
        throw InputError("/bundles", "unknown bundle kind \"" + kind + "\"");
    }
    rep.battery = battery_of_kind(kind);
    rep.cutoffs["max_arity"] = n;
    rep.normalize();
    return rep;
}

const std::vector<std::string>& construction_names() {
    static const std::vector<std::string> v = {"trivial-extension", "rb-extension",     "dualize",
                                               "cyclic-completion", "lift",             "find-derivation",
                                               "precy",             "psi-brackets",     "extract-brackets",
                                               "schedler",          "schedler-inverse", "sym-poisson"};
    return v;
}

const std::vector<std::string>& pipeline_names() {
    static const std::vector<std::string> v = {"rb-aybe-double-lie", "psi-precy"};
    return v;
}

Json CommandResult::report_json() const {
    Json j;
    j["command"] = command;
    j["status"] = status;
    j["battery"] = report.battery;
    j["verdict"] = status == 2 ? "input-error" : report.verdict();
    j["cutoffs"] = Json::object();
    for (const auto& [k, v] : report.cutoffs) j["cutoffs"][k] = v;
    j["entries"] = Json::array();
    for (const auto& r : report.entries)
        j["entries"].push_back({{"identity", r.identity},
                                {"indices", r.indices},
                                {"inputs", r.inputs},
                                {"output", r.output},
                                {"residual", format_scalar(r.value)}});
    j["truncation_limited"] = report.truncation_limited;
    j["notes"] = report.notes;
    if (!message.empty()) j["message"] = message;
    if (output && output->certificate) j["certificate"] = *output->certificate;
    return j;
}

std::string CommandResult::report_text() const {
    std::ostringstream out;
    out << "command: " << command << "\n";
    if (status == 2) {
        out << "status: 2\n" << message << "\n";
        return out.str();
    }
    out << "status: " << status << "\n";
    if (!message.empty()) out << "message: " << message << "\n";
    out << report.to_text();
    return out.str();
}

CommandResult cmd_check(const Document& doc, const std::string& bundle, const CommandOptions& opt) {
    int n = arity_cutoff(doc, opt), w = word_cutoff(doc, opt);
    return guarded(echo("check", bundle.empty() ? "<last>" : bundle, {}, n, w), [&](CommandResult& res) {
        std::string name = pick_bundle(doc, bundle, {});
        res.command = echo("check", name, {}, n, w);
        ResolvedBundle b = resolve_bundle(doc, name);
        res.report = run_battery(b, n);
        res.status = res.report.passed() ? 0 : 1;
    });
}

CommandResult cmd_construct(const Document& doc, const std::string& bundle, const std::string& op,
                            const CommandOptions& opt) {
    int n = arity_cutoff(doc, opt), w = word_cutoff(doc, opt);
    std::vector<std::string> extra = {"--op " + op};
    if (op == "trivial-extension") extra.push_back("--d " + std::to_string(opt.d));
    return guarded(echo("construct", bundle.empty() ? "<auto>" : bundle, extra, n, w), [&](CommandResult& res) {
        static const std::map<std::string, std::vector<std::string>> inputs = {
            {"trivial-extension", {"ainf"}},
            {"rb-extension", {"rb-module"}},
            {"dualize", {"rb-module"}},
            {"cyclic-completion", {"rb-absolute"}},
            {"lift", {"rb-relative", "rb-dg", "rb-ultracyclic"}},
            {"find-derivation", {"pair"}},
            {"precy", {"derivation"}},
            {"psi-brackets", {"derivation"}},
            {"extract-brackets", {"precy"}},
            {"schedler", {"tensor"}},
            {"schedler-inverse", {"double-lie", "double-poisson"}},
            {"sym-poisson", {"double-lie", "double-poisson"}}};
        auto accepted = inputs.find(op);
        if (accepted == inputs.end()) throw InputError("--op", "unknown construction \"" + op + "\"");
        std::string name = pick_bundle(doc, bundle, accepted->second);
        res.command = echo("construct", name, extra, n, w);
        ResolvedBundle b = resolve_bundle(doc, name);
        if (std::find(accepted->second.begin(), accepted->second.end(), b.kind) == accepted->second.end())
            throw InputError("--bundle", op + " does not accept a bundle of kind " + b.kind);
        std::string out_name = opt.output_name.empty() ? op : opt.output_name;
        std::map<std::string, int> cutoffs = {{"max_arity", n}, {"max_word", w}};

        DocumentWriter wr;
        if (op == "trivial-extension") {
            TrivialExtension t = build_trivial_extension(std::get<AInfStructure>(b.value), opt.d);
            wr.cyclic_ainf(out_name, t.algebra, t.zeta);
        } else if (op == "rb-extension") {
            RBExtension e = build_rb_trivial_extension(std::get<RBModule>(b.value));
            wr.rb_absolute(out_name, e.algebra);
        } else if (op == "dualize") {
            wr.rb_module(out_name, dualize_rb_module(std::get<RBModule>(b.value)));
        } else if (op == "cyclic-completion") {
            CyclicCompletion c = cyclic_completion(std::get<RBAbsolute>(b.value));
            wr.rb_cyclic(out_name, c.algebra, c.zeta);
        } else if (op == "lift") {
            LiftedRB l = lift_relative_to_absolute(expect_relative(b, "lift"));
            wr.rb_cyclic(out_name, l.algebra, l.zeta);
        } else if (op == "find-derivation") {
            const auto& p = std::get<InteractivePair>(b.value);
            OperatorSearch s = find_cyclic_rb_derivation(p, n);
            if (!s.found) {
                res.status = 1;
                res.report = s.certificate;
                res.message = "no nonzero cyclic Rota-Baxter derivation in a solution space of dimension " +
                              std::to_string(s.solution_dim);
                return;
            }
            OpFamily t;
            t.ops[1] = *s.found;
            wr.derivation(out_name, p, t);
        } else if (op == "precy") {
            const auto& d = std::get<DerivationBundle>(b.value);
            PreCYStructure s = build_precy_from_pair(d.pair, d.T, std::max(1, d.T.max_arity()));
            wr.precy(out_name, s);
        } else if (op == "psi-brackets") {
            const auto& d = std::get<DerivationBundle>(b.value);
            wr.brackets(out_name, build_brackets_psi(d.pair, d.T, n));
        } else if (op == "extract-brackets") {
            wr.brackets(out_name, extract_brackets_from_precy(std::get<PreCYStructure>(b.value), n));
        } else if (op == "schedler") {
            const auto& t = std::get<TensorBundle>(b.value);
            if (!t.vector_space) throw InputError("/bundles", "schedler needs a tensor bundle with a vector_space");
            CheckReport gate = check_aybe_skew(t.r, n);
            if (!gate.passed()) throw PreconditionError("schedler correspondence refused: r is not skew", gate);
            wr.brackets(out_name, schedler_correspondence(t.r, t.vector_space));
        } else if (op == "schedler-inverse") {
            const auto& f = std::get<DoubleBracketFamily>(b.value);
            std::vector<int> degrees;
            for (const auto& e : f.space->basis()) degrees.push_back(e.degree);
            AInfStructure end = instances::matrix_algebra(static_cast<int>(f.space->dim()), degrees);
            wr.tensors(out_name, schedler_inverse(f, end), f.space);
        } else if (op == "sym-poisson") {
            wr.linf(out_name, build_sym_poisson(std::get<DoubleBracketFamily>(b.value), w, n));
        }

        Document out = wr.finish(cutoffs);
        ResolvedBundle made = resolve_bundle(out, out_name);
        int check_n = n;
        if (made.kind == "precy") check_n = std::max(n, 2 * std::get<PreCYStructure>(made.value).max_n + 1);
        res.report = run_battery(made, check_n);
        out.certificate = certificate_of(res.report);
        res.status = res.report.passed() ? 0 : 1;
        if (res.status == 0) res.output = std::move(out);
        else res.message = "constructed structure failed its re-check";
    });
}

CommandResult cmd_roundtrip(const Document& doc, const std::string& bundle, const std::string& pipeline,
                            const CommandOptions& opt) {
    int n = arity_cutoff(doc, opt), w = word_cutoff(doc, opt);
    std::vector<std::string> extra = {"--pipeline " + pipeline};
    return guarded(echo("roundtrip", bundle.empty() ? "<auto>" : bundle, extra, n, w), [&](CommandResult& res) {
        CheckReport& rep = res.report;
        if (pipeline == "rb-aybe-double-lie") {
            std::string name = pick_bundle(doc, bundle, {"tensor"});
            res.command = echo("roundtrip", name, extra, n, w);
            ResolvedBundle b = resolve_bundle(doc, name);
            const auto& t = expect<TensorBundle>(b, pipeline);
            if (!t.vector_space) throw InputError("/bundles", "the pipeline needs a tensor bundle with a vector_space");
            CheckReport gate = check_aybe_skew(t.r, n);
            if (!gate.passed()) throw PreconditionError("refused at the skewness gate", gate);

            CheckReport aybe = check_aybe_infinity(t.r, n);
            DoubleBracketFamily f = schedler_correspondence(t.r, t.vector_space);
            CheckReport lie = check_cyclic_symmetry(f, n);
            lie.merge(check_double_jacobi(f, n));
            rep.merge(aybe);
            rep.merge(lie);
            bool classical = std::all_of(t.r.r.begin(), t.r.r.end(), [](const auto& kv) { return kv.first == 2; });
            std::optional<bool> rb_ok;
            if (classical) {
                TensorVec r2 = t.r.r.count(2) ? t.r.r.at(2) : TensorVec{};
                MultilinearOp op = operator_from_tensor(t.r.algebra, instances::trace_form(t.r.algebra), r2);
                CheckReport rb = check_classical_rb(regular_bimodule(t.r.algebra), op);
                rb_ok = rb.passed();
                rep.merge(rb);
            } else {
                rep.notes.push_back("rb leg skipped: r has components outside arity 2");
            }
            bool agree = aybe.passed() == lie.passed() && (!rb_ok || *rb_ok == aybe.passed());
            rep.notes.push_back(std::string("legs ") + (agree ? "agree" : "disagree") + ": aybe " +
                                (aybe.passed() ? "pass" : "fail") + ", double-lie " + (lie.passed() ? "pass" : "fail") +
                                (rb_ok ? std::string(", rb ") + (*rb_ok ? "pass" : "fail") : std::string()));
            TensorFamily back = schedler_inverse(f, t.r.algebra);
            std::set<int> arities;
            for (const auto& [k, _] : back.r) arities.insert(k);
            for (const auto& [k, _] : t.r.r) arities.insert(k);
            for (int k : arities) {
                TensorVec diff = back.r.count(k) ? back.r.at(k) : TensorVec{};
                if (t.r.r.count(k)) add_scaled(diff, t.r.r.at(k), -1);
                std::vector<SpacePtr> slots(static_cast<size_t>(k), t.r.algebra.space);
                for (const auto& [key, c] : diff)
                    rep.entries.push_back(Residual{"schedler-roundtrip", "arity " + std::to_string(k),
                                                   key_labels(slots, key), "1", c});
            }
        } else if (pipeline == "psi-precy") {
            std::string name = pick_bundle(doc, bundle, {"derivation"});
            res.command = echo("roundtrip", name, extra, n, w);
            ResolvedBundle b = resolve_bundle(doc, name);
            const auto& d = expect<DerivationBundle>(b, pipeline);
            int nt = std::max(1, d.T.max_arity());
            PreCYStructure s = build_precy_from_pair(d.pair, d.T, nt);
            rep.merge(check_precy_structure(s, 2 * nt + 1));
            rep.merge(check_precy_cyclicity(s, 2 * nt + 1));
            PreCYFlags flags = check_precy_flags(s, 2 * nt + 1);
            rep.notes.push_back(flag_line(flags));
            if (!(flags.good && flags.manageable)) {
                rep.merge(flags.witnesses);
                throw PreconditionError("bracket extraction refused: the structure is not good and manageable", rep);
            }
            DoubleBracketFamily ex = extract_brackets_from_precy(s, n);
            DoubleBracketFamily psi = build_brackets_psi(d.pair, d.T, n);
            // arity 1 compares d_B with m_1 = -d_B; higher arities carry (-1)^(k-1)
            for (int k = 1; k <= n; ++k)
                compare_ops(rep, "psi-vs-extract", psi.brackets.get(k), ex.brackets.get(k),
                            k == 1 ? -1 : parity_sign(k - 1), "arity " + std::to_string(k));
            PreCYStructure back = precy_from_brackets(ex, d.pair.base, n);
            for (int k = 1; k <= 2 * nt + 1; ++k)
                compare_ops(rep, "precy-roundtrip", back.algebra.m.get(k), s.algebra.m.get(k), 1,
                            "arity " + std::to_string(k));
        } else {
            throw InputError("--pipeline", "unknown pipeline \"" + pipeline + "\"");
        }
        rep.battery = "roundtrip:" + pipeline;
        rep.cutoffs["max_arity"] = n;
        rep.normalize();
        res.status = rep.passed() ? 0 : 1;
    });
}

}  // namespace homalg

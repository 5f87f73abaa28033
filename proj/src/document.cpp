#include "homalg/document.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace homalg {

namespace {

std::string ptr(const std::string& base, const std::string& field) { return base + "/" + field; }
std::string ptr(const std::string& base, size_t i) { return base + "/" + std::to_string(i); }

const Json& field(const Json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) throw InputError(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw InputError(ptr(where, key), "missing field \"" + key + "\"");
    return *it;
}

std::string str(const Json& j, const std::string& where) {
    if (!j.is_string()) throw InputError(where, "expected a string");
    return j.get<std::string>();
}

int integer(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw InputError(where, "expected an integer");
    return j.get<int>();
}

const Json& array(const Json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where, "expected an array");
    return j;
}

std::pair<size_t, size_t> line_column(const std::string& text, size_t byte) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i < std::min(byte, text.size()); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

struct Loader {
    std::map<std::string, SpacePtr> spaces;
    std::map<std::string, size_t> op_index;
    const Document* doc = nullptr;

    SpacePtr space(const Json& j, const std::string& where) const {
        std::string n = str(j, where);
        if (n == ground_space()->name()) return ground_space();
        auto it = spaces.find(n);
        if (it == spaces.end()) throw InputError(where, "unknown space \"" + n + "\"");
        return it->second;
    }

    const MultilinearOp& op(const Json& j, const std::string& where) const {
        std::string n = str(j, where);
        auto it = op_index.find(n);
        if (it == op_index.end()) throw InputError(where, "unknown operation \"" + n + "\"");
        return doc->operations[it->second];
    }
};

Key labels_to_key(const std::vector<SpacePtr>& slots, const Json& labels, const std::string& where) {
    array(labels, where);
    if (labels.size() != slots.size())
        throw InputError(where, "expected " + std::to_string(slots.size()) + " labels, got " + std::to_string(labels.size()));
    Key k;
    for (size_t t = 0; t < slots.size(); ++t) {
        std::string l = str(labels[t], ptr(where, t));
        auto idx = slots[t]->index_of(l);
        if (!idx) throw InputError(ptr(where, t), "no basis element \"" + l + "\" in space " + slots[t]->name());
        k.push_back(static_cast<int>(*idx));
    }
    return k;
}

Json key_to_labels(const std::vector<SpacePtr>& slots, const Key& k) {
    Json out = Json::array();
    for (size_t t = 0; t < k.size(); ++t) out.push_back(slots[t]->label(static_cast<size_t>(k[t])));
    return out;
}

Scalar coefficient(const Json& j, const std::string& where) {
    if (!j.is_string()) throw InputError(where, "coefficients are rational strings such as \"-3/4\"");
    try {
        return parse_scalar(j.get<std::string>());
    } catch (const ParseError& e) {
        throw InputError(where, e.what());
    }
}

OpFamily op_family(const Loader& ld, const Json& list, const std::string& where) {
    OpFamily f;
    array(list, where);
    for (size_t i = 0; i < list.size(); ++i) {
        const MultilinearOp& o = ld.op(list[i], ptr(where, i));
        if (f.ops.count(o.arity())) throw InputError(ptr(where, i), "two operations of arity " + std::to_string(o.arity()));
        f.ops[o.arity()] = o;
    }
    return f;
}

BiOpFamily biop_family(const Loader& ld, const Json& list, const std::string& where) {
    BiOpFamily f;
    array(list, where);
    for (size_t i = 0; i < list.size(); ++i) {
        std::string w = ptr(where, i);
        int p = integer(field(list[i], "p", w), ptr(w, "p"));
        int q = integer(field(list[i], "q", w), ptr(w, "q"));
        if (p < 0 || q < 0) throw InputError(w, "p and q must be nonnegative");
        if (f.ops.count({p, q})) throw InputError(w, "duplicate (p, q)");
        f.ops[{p, q}] = ld.op(field(list[i], "op", w), ptr(w, "op"));
    }
    return f;
}

CyclicForm cyclic_form(const Loader& ld, const Json& j, const std::string& where, const SpacePtr& space) {
    CyclicForm g;
    g.space = space;
    g.d = integer(field(j, "d", where), ptr(where, "d"));
    g.form = ld.op(field(j, "op", where), ptr(where, "op"));
    return g;
}

template <class F>
auto guarded(const std::string& where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(where, e.what());
    }
}

}  // namespace

const Json* Document::bundle(const std::string& name) const {
    for (const auto& b : bundles)
        if (b.is_object() && b.value("name", "") == name) return &b;
    return nullptr;
}

std::optional<std::string> Document::last_bundle_of(const std::vector<std::string>& kinds) const {
    std::optional<std::string> out;
    for (const auto& b : bundles)
        if (b.is_object() && std::find(kinds.begin(), kinds.end(), b.value("kind", "")) != kinds.end())
            out = b.value("name", "");
    return out;
}

const std::vector<std::string>& bundle_kinds() {
    static const std::vector<std::string> k = {"ainf",    "bimodule",   "cyclic-ainf",    "rb-absolute", "rb-relative",
                                               "rb-dg",   "rb-ultracyclic", "rb-module",  "rb-cyclic",   "pair",
                                               "derivation", "precy",   "double-lie",     "double-poisson", "tensor",
                                               "linf",    "poisson"};
    return k;
}

Document parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);  // byte is one past the offending character
        throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col), e.what());
    }
    if (!j.is_object()) throw InputError("", "a document is a JSON object");
    Document doc;
    doc.schema_version = str(field(j, "schema_version", ""), "/schema_version");
    if (doc.schema_version != kSchemaVersion)
        throw InputError("/schema_version", "unsupported schema version \"" + doc.schema_version + "\", expected \"" +
                                                kSchemaVersion + "\"");
    for (const auto& [key, _] : j.items()) {
        static const std::set<std::string> known = {"schema_version", "spaces", "operations", "bundles", "cutoffs",
                                                    "certificate"};
        if (!known.count(key)) throw InputError("/" + key, "unknown top-level field");
    }

    Loader ld;
    ld.doc = &doc;
    const Json& spaces = array(field(j, "spaces", ""), "/spaces");
    for (size_t i = 0; i < spaces.size(); ++i) {
        std::string w = ptr("/spaces", i);
        std::string name = str(field(spaces[i], "name", w), ptr(w, "name"));
        if (name == ground_space()->name()) throw InputError(ptr(w, "name"), "\"k\" is reserved for the ground field");
        if (ld.spaces.count(name)) throw InputError(ptr(w, "name"), "duplicate space \"" + name + "\"");
        const Json& basis = array(field(spaces[i], "basis", w), ptr(w, "basis"));
        std::vector<BasisElement> b;
        for (size_t t = 0; t < basis.size(); ++t) {
            std::string bw = ptr(ptr(w, "basis"), t);
            b.push_back({str(field(basis[t], "label", bw), ptr(bw, "label")),
                         integer(field(basis[t], "degree", bw), ptr(bw, "degree"))});
        }
        SpacePtr s = guarded(w, [&] {
            return b.empty() ? std::make_shared<const GradedSpace>(GradedSpace::zero(name)) : make_space(name, b);
        });
        ld.spaces[name] = s;
        doc.spaces.push_back(s);
    }

    const Json& ops = array(field(j, "operations", ""), "/operations");
    for (size_t i = 0; i < ops.size(); ++i) {
        std::string w = ptr("/operations", i);
        std::string name = str(field(ops[i], "name", w), ptr(w, "name"));
        if (ld.op_index.count(name)) throw InputError(ptr(w, "name"), "duplicate operation \"" + name + "\"");
        std::vector<SpacePtr> dom, cod;
        const Json& dj = array(field(ops[i], "domain", w), ptr(w, "domain"));
        for (size_t t = 0; t < dj.size(); ++t) dom.push_back(ld.space(dj[t], ptr(ptr(w, "domain"), t)));
        const Json& cj = array(field(ops[i], "codomain", w), ptr(w, "codomain"));
        for (size_t t = 0; t < cj.size(); ++t) cod.push_back(ld.space(cj[t], ptr(ptr(w, "codomain"), t)));
        int degree = integer(field(ops[i], "degree", w), ptr(w, "degree"));
        MultilinearOp o(name, dom, cod, degree);
        const Json& entries = array(field(ops[i], "entries", w), ptr(w, "entries"));
        for (size_t e = 0; e < entries.size(); ++e) {
            std::string ew = ptr(ptr(w, "entries"), e);
            Key in = labels_to_key(dom, field(entries[e], "in", ew), ptr(ew, "in"));
            Key out = labels_to_key(cod, field(entries[e], "out", ew), ptr(ew, "out"));
            Scalar c = coefficient(field(entries[e], "coeff", ew), ptr(ew, "coeff"));
            guarded(ew, [&] {
                o.add(in, out, c);
                return 0;
            });
        }
        ld.op_index[name] = doc.operations.size();
        doc.operations.push_back(std::move(o));
    }

    if (j.contains("bundles")) {
        doc.bundles = array(j["bundles"], "/bundles");
        std::set<std::string> names;
        for (size_t i = 0; i < doc.bundles.size(); ++i) {
            std::string w = ptr("/bundles", i);
            std::string name = str(field(doc.bundles[i], "name", w), ptr(w, "name"));
            std::string kind = str(field(doc.bundles[i], "kind", w), ptr(w, "kind"));
            const auto& kinds = bundle_kinds();
            if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
                throw InputError(ptr(w, "kind"), "unknown bundle kind \"" + kind + "\"");
            if (!names.insert(name).second) throw InputError(ptr(w, "name"), "duplicate bundle \"" + name + "\"");
        }
    }
    if (j.contains("cutoffs")) {
        const Json& c = j["cutoffs"];
        if (!c.is_object()) throw InputError("/cutoffs", "expected an object");
        for (const auto& [k, v] : c.items()) doc.cutoffs[k] = integer(v, "/cutoffs/" + k);
    }
    if (j.contains("certificate")) doc.certificate = j["certificate"];

    // resolve every bundle once so that reference errors surface at load time
    for (const auto& b : doc.bundles) resolve_bundle(doc, b["name"].get<std::string>());
    return doc;
}

Document load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path, "cannot open file");
    std::ostringstream s;
    s << in.rdbuf();
    return parse_document(s.str());
}

Json document_to_json(const Document& doc) {
    Json j;
    j["schema_version"] = doc.schema_version;
    j["spaces"] = Json::array();
    for (const auto& s : doc.spaces) {
        Json basis = Json::array();
        for (const auto& b : s->basis()) basis.push_back({{"label", b.label}, {"degree", b.degree}});
        j["spaces"].push_back({{"name", s->name()}, {"basis", basis}});
    }
    j["operations"] = Json::array();
    for (const auto& o : doc.operations) {
        Json dom = Json::array(), cod = Json::array(), entries = Json::array();
        for (const auto& s : o.domain()) dom.push_back(s->name());
        for (const auto& s : o.codomain()) cod.push_back(s->name());
        for (const auto& [in, vec] : o.table())
            for (const auto& [out, c] : vec)
                entries.push_back({{"in", key_to_labels(o.domain(), in)},
                                   {"out", key_to_labels(o.codomain(), out)},
                                   {"coeff", format_scalar(c)}});
        j["operations"].push_back(
            {{"name", o.name()}, {"domain", dom}, {"codomain", cod}, {"degree", o.degree()}, {"entries", entries}});
    }
    j["bundles"] = doc.bundles;
    j["cutoffs"] = Json::object();
    for (const auto& [k, v] : doc.cutoffs) j["cutoffs"][k] = v;
    if (doc.certificate) j["certificate"] = *doc.certificate;
    return j;
}

std::string print_document(const Document& doc) { return document_to_json(doc).dump(2) + "\n"; }

namespace {

struct Resolver {
    const Document& doc;
    Loader ld;
    int depth = 0;

    explicit Resolver(const Document& d) : doc(d) {
        ld.doc = &doc;
        for (const auto& s : doc.spaces) ld.spaces[s->name()] = s;
        for (size_t i = 0; i < doc.operations.size(); ++i) ld.op_index[doc.operations[i].name()] = i;
    }

    std::string where_of(const std::string& name) const {
        for (size_t i = 0; i < doc.bundles.size(); ++i)
            if (doc.bundles[i].value("name", "") == name) return ptr("/bundles", i);
        return "/bundles";
    }

    template <class T>
    T nested(const Json& j, const std::string& key, const std::string& where, const std::vector<std::string>& kinds) {
        std::string name = str(field(j, key, where), ptr(where, key));
        const Json* b = doc.bundle(name);
        if (!b) throw InputError(ptr(where, key), "unknown bundle \"" + name + "\"");
        std::string kind = b->value("kind", "");
        if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
            throw InputError(ptr(where, key), "bundle \"" + name + "\" has kind " + kind);
        ResolvedBundle r = resolve(name);
        if (auto* rel = std::get_if<RelativeBundle>(&r.value)) {
            if constexpr (std::is_same_v<T, RBRelative>) return rel->rb;
        }
        if (auto* v = std::get_if<T>(&r.value)) return *v;
        throw InputError(ptr(where, key), "bundle \"" + name + "\" has the wrong kind");
    }

    ResolvedBundle resolve(const std::string& name) {
        if (++depth > 32) throw InputError("/bundles", "bundle references are cyclic");
        const Json* bp = doc.bundle(name);
        if (!bp) throw InputError("/bundles", "unknown bundle \"" + name + "\"");
        const Json& b = *bp;
        std::string w = where_of(name);
        std::string kind = b["kind"].get<std::string>();
        ResolvedBundle out{name, kind, AInfStructure{}};
        out.value = guarded(w, [&]() -> BundleValue {
            if (kind == "ainf") {
                AInfStructure a{ld.space(field(b, "space", w), ptr(w, "space")), op_family(ld, field(b, "ops", w), ptr(w, "ops"))};
                a.validate();
                return a;
            }
            if (kind == "bimodule") {
                AInfBimodule m{nested<AInfStructure>(b, "algebra", w, {"ainf"}),
                               ld.space(field(b, "module", w), ptr(w, "module")),
                               biop_family(ld, field(b, "ops", w), ptr(w, "ops"))};
                m.validate();
                return m;
            }
            if (kind == "cyclic-ainf") {
                AInfStructure a = nested<AInfStructure>(b, "algebra", w, {"ainf"});
                CyclicForm g = cyclic_form(ld, field(b, "form", w), ptr(w, "form"), a.space);
                g.validate();
                return CyclicAInf{a, g};
            }
            if (kind == "rb-absolute") {
                RBAbsolute r{nested<AInfStructure>(b, "algebra", w, {"ainf"}), op_family(ld, field(b, "T", w), ptr(w, "T"))};
                r.validate();
                return r;
            }
            if (kind == "rb-relative" || kind == "rb-dg" || kind == "rb-ultracyclic") {
                RBRelative r{nested<AInfBimodule>(b, "module", w, {"bimodule"}), op_family(ld, field(b, "T", w), ptr(w, "T"))};
                r.validate();
                return RelativeBundle{r};
            }
            if (kind == "rb-module") {
                RBModule m{nested<RBAbsolute>(b, "base", w, {"rb-absolute"}),
                           nested<AInfBimodule>(b, "module", w, {"bimodule"}),
                           biop_family(ld, field(b, "T", w), ptr(w, "T"))};
                m.validate();
                return m;
            }
            if (kind == "rb-cyclic") {
                RBAbsolute r = nested<RBAbsolute>(b, "rb", w, {"rb-absolute"});
                CyclicForm g = cyclic_form(ld, field(b, "form", w), ptr(w, "form"), r.algebra.space);
                g.validate();
                return RBCyclic{r, g};
            }
            if (kind == "pair") {
                InteractivePair p{nested<AInfStructure>(b, "acting", w, {"ainf"}),
                                  nested<AInfStructure>(b, "base", w, {"ainf"}),
                                  ld.op(field(b, "act_on_base", w), ptr(w, "act_on_base")),
                                  ld.op(field(b, "act_on_acting", w), ptr(w, "act_on_acting"))};
                p.validate();
                return p;
            }
            if (kind == "derivation") {
                DerivationBundle d{nested<InteractivePair>(b, "pair", w, {"pair"}), op_family(ld, field(b, "T", w), ptr(w, "T"))};
                SpacePtr av = dual_space(d.pair.acting.space);
                for (const auto& [n, t] : d.T.ops) {
                    bool ok = t.codomain().size() == 1 && same_space(t.codomain()[0], d.pair.acting.space) &&
                              t.degree() == n - 1;
                    for (const auto& s : t.domain()) ok = ok && same_space(s, av);
                    if (!ok) throw InputError(ptr(w, "T"), "T_" + std::to_string(n) + " must map (A^v)^n to A in degree n - 1");
                }
                return d;
            }
            if (kind == "precy") {
                PreCYStructure s;
                s.base = ld.space(field(b, "base", w), ptr(w, "base"));
                s.algebra = nested<AInfStructure>(b, "algebra", w, {"ainf"});
                s.sum = SumSpace(s.algebra.space->name(), {s.base, suspended_space(dual_space(s.base), -1)});
                if (!same_space(s.sum.space, s.algebra.space))
                    throw InputError(ptr(w, "algebra"), "the algebra must live on B + s^-1 B^v built from the base space");
                s.zeta = cyclic_form(ld, field(b, "form", w), ptr(w, "form"), s.algebra.space);
                s.zeta.validate();
                s.max_n = integer(field(b, "max_n", w), ptr(w, "max_n"));
                return s;
            }
            if (kind == "double-lie" || kind == "double-poisson") {
                DoubleBracketFamily f{ld.space(field(b, "space", w), ptr(w, "space")),
                                      op_family(ld, field(b, "brackets", w), ptr(w, "brackets")), std::nullopt};
                if (b.contains("product")) f.product = ld.op(b["product"], ptr(w, "product"));
                else if (kind == "double-poisson") throw InputError(ptr(w, "product"), "a double Poisson bundle needs a product");
                f.validate();
                return f;
            }
            if (kind == "tensor") {
                TensorBundle t;
                t.r.algebra = nested<AInfStructure>(b, "algebra", w, {"ainf"});
                if (b.contains("vector_space")) t.vector_space = ld.space(b["vector_space"], ptr(w, "vector_space"));
                const Json& list = array(field(b, "tensors", w), ptr(w, "tensors"));
                for (size_t i = 0; i < list.size(); ++i) {
                    std::string tw = ptr(ptr(w, "tensors"), i);
                    int n = integer(field(list[i], "arity", tw), ptr(tw, "arity"));
                    if (n < 1) throw InputError(ptr(tw, "arity"), "arity must be positive");
                    std::vector<SpacePtr> slots(static_cast<size_t>(n), t.r.algebra.space);
                    TensorVec v;
                    const Json& terms = array(field(list[i], "terms", tw), ptr(tw, "terms"));
                    for (size_t e = 0; e < terms.size(); ++e) {
                        std::string ew = ptr(ptr(tw, "terms"), e);
                        add_term(v, labels_to_key(slots, field(terms[e], "legs", ew), ptr(ew, "legs")),
                                 coefficient(field(terms[e], "coeff", ew), ptr(ew, "coeff")));
                    }
                    if (t.r.r.count(n)) throw InputError(ptr(tw, "arity"), "duplicate arity");
                    if (!v.empty()) t.r.r[n] = v;
                }
                t.r.validate();
                return t;
            }
            if (kind == "linf" || kind == "poisson") {
                LInfFamily f;
                f.space = ld.space(field(b, "space", w), ptr(w, "space"));
                f.l = op_family(ld, field(b, "l", w), ptr(w, "l"));
                for (const auto& [n, op] : f.l.ops) {
                    bool ok = op.codomain().size() == 1 && same_space(op.codomain()[0], f.space) && op.degree() == n - 2;
                    for (const auto& s : op.domain()) ok = ok && same_space(s, f.space);
                    if (!ok) throw InputError(ptr(w, "l"), "l_" + std::to_string(n) + " must map L^n to L in degree n - 2");
                }
                if (b.contains("product")) f.product = ld.op(b["product"], ptr(w, "product"));
                else if (kind == "poisson") throw InputError(ptr(w, "product"), "a Poisson bundle needs a product");
                if (b.contains("weights")) {
                    const Json& wt = array(b["weights"], ptr(w, "weights"));
                    if (wt.size() != f.space->dim()) throw InputError(ptr(w, "weights"), "one weight per basis element");
                    for (size_t i = 0; i < wt.size(); ++i) f.weight.push_back(integer(wt[i], ptr(ptr(w, "weights"), i)));
                    f.max_weight = integer(field(b, "max_weight", w), ptr(w, "max_weight"));
                }
                return f;
            }
            throw InputError(ptr(w, "kind"), "unknown bundle kind \"" + kind + "\"");
        });
        --depth;
        return out;
    }
};

}  // namespace

ResolvedBundle resolve_bundle(const Document& doc, const std::string& name) {
    Resolver r(doc);
    return r.resolve(name);
}

// writer

std::string DocumentWriter::space(const SpacePtr& s) {
    if (same_space(s, ground_space())) return s->name();
    for (const auto& t : doc_.spaces) {
        if (t->name() != s->name()) continue;
        if (!same_space(t, s)) throw StructureError("two different spaces named " + s->name());
        return s->name();
    }
    doc_.spaces.push_back(s);
    return s->name();
}

std::string DocumentWriter::op(const std::string& name, const MultilinearOp& o) {
    for (const auto& s : o.domain()) space(s);
    for (const auto& s : o.codomain()) space(s);
    for (const auto& t : doc_.operations)
        if (t.name() == name) {
            if (!(t == o)) throw StructureError("two different operations named " + name);
            return name;
        }
    MultilinearOp c = o;
    c.rename(name);
    doc_.operations.push_back(std::move(c));
    return name;
}

Json DocumentWriter::op_list(const std::string& prefix, const OpFamily& f) {
    Json out = Json::array();
    for (const auto& [n, o] : f.ops) out.push_back(op(prefix + std::to_string(n), o));
    return out;
}

Json DocumentWriter::biop_list(const std::string& prefix, const BiOpFamily& f) {
    Json out = Json::array();
    for (const auto& [pq, o] : f.ops)
        out.push_back({{"p", pq.first},
                       {"q", pq.second},
                       {"op", op(prefix + std::to_string(pq.first) + "_" + std::to_string(pq.second), o)}});
    return out;
}

Json DocumentWriter::form(const std::string& prefix, const CyclicForm& g) {
    return {{"op", op(prefix + ".form", g.form)}, {"d", g.d}};
}

void DocumentWriter::add(Json bundle) {
    std::string name = bundle["name"];
    for (const auto& b : doc_.bundles)
        if (b["name"] == name) {
            if (b != bundle) throw StructureError("two different bundles named " + name);
            return;
        }
    doc_.bundles.push_back(std::move(bundle));
}

std::string DocumentWriter::ainf(const std::string& name, const AInfStructure& a) {
    add({{"name", name}, {"kind", "ainf"}, {"space", space(a.space)}, {"ops", op_list(name + ".m", a.m)}});
    return name;
}

std::string DocumentWriter::bimodule(const std::string& name, const AInfBimodule& m) {
    std::string alg = ainf(name + ".algebra", m.algebra);
    add({{"name", name},
         {"kind", "bimodule"},
         {"algebra", alg},
         {"module", space(m.module)},
         {"ops", biop_list(name + ".m", m.m)}});
    return name;
}

std::string DocumentWriter::cyclic_ainf(const std::string& name, const AInfStructure& a, const CyclicForm& g) {
    std::string alg = ainf(name + ".algebra", a);
    add({{"name", name}, {"kind", "cyclic-ainf"}, {"algebra", alg}, {"form", form(name, g)}});
    return name;
}

std::string DocumentWriter::rb_absolute(const std::string& name, const RBAbsolute& r) {
    std::string alg = ainf(name + ".algebra", r.algebra);
    add({{"name", name}, {"kind", "rb-absolute"}, {"algebra", alg}, {"T", op_list(name + ".T", r.T)}});
    return name;
}

std::string DocumentWriter::rb_relative(const std::string& name, const std::string& kind, const RBRelative& r) {
    std::string mod = bimodule(name + ".module", r.module);
    add({{"name", name}, {"kind", kind}, {"module", mod}, {"T", op_list(name + ".T", r.T)}});
    return name;
}

std::string DocumentWriter::rb_module(const std::string& name, const RBModule& m) {
    std::string base = rb_absolute(name + ".base", m.base);
    std::string mod = bimodule(name + ".module", m.module);
    add({{"name", name}, {"kind", "rb-module"}, {"base", base}, {"module", mod}, {"T", biop_list(name + ".T", m.T)}});
    return name;
}

std::string DocumentWriter::rb_cyclic(const std::string& name, const RBAbsolute& r, const CyclicForm& g) {
    std::string rb = rb_absolute(name + ".rb", r);
    add({{"name", name}, {"kind", "rb-cyclic"}, {"rb", rb}, {"form", form(name, g)}});
    return name;
}

std::string DocumentWriter::pair(const std::string& name, const InteractivePair& p) {
    std::string acting = ainf(name + ".acting", p.acting);
    std::string base = ainf(name + ".base", p.base);
    add({{"name", name},
         {"kind", "pair"},
         {"acting", acting},
         {"base", base},
         {"act_on_base", op(name + ".act_on_base", p.act_on_base)},
         {"act_on_acting", op(name + ".act_on_acting", p.act_on_acting)}});
    return name;
}

std::string DocumentWriter::derivation(const std::string& name, const InteractivePair& p, const OpFamily& T) {
    std::string pr = pair(name + ".pair", p);
    add({{"name", name}, {"kind", "derivation"}, {"pair", pr}, {"T", op_list(name + ".T", T)}});
    return name;
}

std::string DocumentWriter::precy(const std::string& name, const PreCYStructure& s) {
    std::string alg = ainf(name + ".algebra", s.algebra);
    add({{"name", name},
         {"kind", "precy"},
         {"base", space(s.base)},
         {"algebra", alg},
         {"form", form(name, s.zeta)},
         {"max_n", s.max_n}});
    return name;
}

std::string DocumentWriter::brackets(const std::string& name, const DoubleBracketFamily& f) {
    Json b = {{"name", name},
              {"kind", f.product ? "double-poisson" : "double-lie"},
              {"space", space(f.space)},
              {"brackets", op_list(name + ".bracket", f.brackets)}};
    if (f.product) b["product"] = op(name + ".product", *f.product);
    add(std::move(b));
    return name;
}

std::string DocumentWriter::tensors(const std::string& name, const TensorFamily& r, const SpacePtr& vector_space) {
    std::string alg = ainf(name + ".algebra", r.algebra);
    Json list = Json::array();
    for (const auto& [n, v] : r.r) {
        std::vector<SpacePtr> slots(static_cast<size_t>(n), r.algebra.space);
        Json terms = Json::array();
        for (const auto& [k, c] : v) terms.push_back({{"legs", key_to_labels(slots, k)}, {"coeff", format_scalar(c)}});
        list.push_back({{"arity", n}, {"terms", terms}});
    }
    Json b = {{"name", name}, {"kind", "tensor"}, {"algebra", alg}, {"tensors", list}};
    if (vector_space) b["vector_space"] = space(vector_space);
    add(std::move(b));
    return name;
}

std::string DocumentWriter::linf(const std::string& name, const LInfFamily& f) {
    Json b = {{"name", name},
              {"kind", f.product ? "poisson" : "linf"},
              {"space", space(f.space)},
              {"l", op_list(name + ".l", f.l)}};
    if (f.product) b["product"] = op(name + ".product", *f.product);
    if (!f.weight.empty()) {
        b["weights"] = f.weight;
        b["max_weight"] = f.max_weight;
    }
    add(std::move(b));
    return name;
}

Document DocumentWriter::finish(std::map<std::string, int> cutoffs, std::optional<Json> certificate) {
    Document out = doc_;
    out.cutoffs = std::move(cutoffs);
    out.certificate = std::move(certificate);
    return out;
}

}  // namespace homalg

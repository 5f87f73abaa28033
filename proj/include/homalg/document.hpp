#pragma once

#include "homalg/dpois.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace homalg {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "homalg-document/1";

/// Bad input: malformed JSON, unresolved names, bad rationals, degree-law violations.
/// The locator is a line/column for syntax errors and a JSON pointer otherwise.
struct InputError : std::runtime_error {
    std::string locator;
    InputError(std::string loc, const std::string& what) : std::runtime_error(what), locator(std::move(loc)) {}
};

struct Document {
    std::string schema_version = kSchemaVersion;
    std::vector<SpacePtr> spaces;
    std::vector<MultilinearOp> operations;
    Json bundles = Json::array();
    std::map<std::string, int> cutoffs;
    std::optional<Json> certificate;

    const Json* bundle(const std::string& name) const;
    /// Name of the last bundle whose kind is one of the given kinds.
    std::optional<std::string> last_bundle_of(const std::vector<std::string>& kinds) const;
};

Document parse_document(const std::string& text);
Document load_document(const std::string& path);
/// Canonical form: sorted keys, two-space indent, entries in basis order.
std::string print_document(const Document& doc);
Json document_to_json(const Document& doc);

// Resolved bundle contents, one alternative per kind.
struct CyclicAInf {
    AInfStructure algebra;
    CyclicForm form;
};
struct RBCyclic {
    RBAbsolute rb;
    CyclicForm form;
};
struct RelativeBundle {
    RBRelative rb;
};
struct DerivationBundle {
    InteractivePair pair;
    OpFamily T;
};
struct TensorBundle {
    TensorFamily r;
    SpacePtr vector_space;  // set when the algebra is End(V)
};
using BundleValue = std::variant<AInfStructure, AInfBimodule, CyclicAInf, RBAbsolute, RelativeBundle, RBModule, RBCyclic,
                                 InteractivePair, DerivationBundle, PreCYStructure, DoubleBracketFamily, TensorBundle,
                                 LInfFamily>;

struct ResolvedBundle {
    std::string name;
    std::string kind;
    BundleValue value;
};

/// All kinds a document may declare.
const std::vector<std::string>& bundle_kinds();

ResolvedBundle resolve_bundle(const Document& doc, const std::string& name);

/// Collects spaces, operations and bundles for a self-contained output document.
class DocumentWriter {
public:
    /// Returns the name of the written bundle.
    std::string ainf(const std::string& name, const AInfStructure& a);
    std::string bimodule(const std::string& name, const AInfBimodule& m);
    std::string cyclic_ainf(const std::string& name, const AInfStructure& a, const CyclicForm& g);
    std::string rb_absolute(const std::string& name, const RBAbsolute& r);
    std::string rb_relative(const std::string& name, const std::string& kind, const RBRelative& r);
    std::string rb_module(const std::string& name, const RBModule& m);
    std::string rb_cyclic(const std::string& name, const RBAbsolute& r, const CyclicForm& g);
    std::string pair(const std::string& name, const InteractivePair& p);
    std::string derivation(const std::string& name, const InteractivePair& p, const OpFamily& T);
    std::string precy(const std::string& name, const PreCYStructure& s);
    std::string brackets(const std::string& name, const DoubleBracketFamily& f);
    std::string tensors(const std::string& name, const TensorFamily& r, const SpacePtr& vector_space);
    std::string linf(const std::string& name, const LInfFamily& f);

    Document finish(std::map<std::string, int> cutoffs, std::optional<Json> certificate = std::nullopt);

private:
    std::string space(const SpacePtr& s);
    std::string op(const std::string& name, const MultilinearOp& o);
    Json op_list(const std::string& prefix, const OpFamily& f);
    Json biop_list(const std::string& prefix, const BiOpFamily& f);
    Json form(const std::string& prefix, const CyclicForm& g);
    void add(Json bundle);

    Document doc_;
};

}  // namespace homalg

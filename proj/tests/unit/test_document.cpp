#include "doctest.h"

#include "homalg/commands.hpp"
#include "homalg/instances.hpp"

#include <filesystem>

using namespace homalg;
using namespace homalg::instances;

namespace {

std::string data(const std::string& f) { return std::string(HOMALG_DATA_DIR) + "/" + f; }

std::vector<std::string> data_files() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(HOMALG_DATA_DIR))
        if (e.path().extension() == ".json" && e.path().filename() != "bad_rational.json") out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

std::string locator_of(const std::string& text) {
    try {
        parse_document(text);
    } catch (const InputError& e) {
        return e.locator;
    }
    return "";
}

std::string minimal(const std::string& ops_json, const std::string& bundles_json = "[]") {
    return R"({"schema_version": "homalg-document/1",
               "spaces": [{"name": "A", "basis": [{"label": "1", "degree": 0}, {"label": "x", "degree": 0}]}],
               "operations": )" + ops_json + R"(, "bundles": )" + bundles_json + "}";
}

}  // namespace

TEST_CASE("documents print canonically and parse back to the same bytes") {
    auto files = data_files();
    REQUIRE(files.size() >= 8);
    for (const auto& f : files) {
        CAPTURE(f);
        Document d = load_document(f);
        std::string once = print_document(d);
        CHECK(print_document(parse_document(once)) == once);
    }
}

TEST_CASE("input errors carry a locator") {
    SUBCASE("zero denominator") {
        CHECK_THROWS_AS(load_document(data("bad_rational.json")), InputError);
        std::string text = minimal(R"([{"name": "m", "domain": ["A", "A"], "codomain": ["A"], "degree": 0,
                                        "entries": [{"in": ["1", "1"], "out": ["1"], "coeff": "1/0"}]}])");
        CHECK(locator_of(text) == "/operations/0/entries/0/coeff");
    }
    SUBCASE("float coefficients are rejected") {
        std::string text = minimal(R"([{"name": "m", "domain": ["A"], "codomain": ["A"], "degree": 0,
                                        "entries": [{"in": ["1"], "out": ["1"], "coeff": 0.5}]}])");
        CHECK(locator_of(text) == "/operations/0/entries/0/coeff");
    }
    SUBCASE("unknown space, label and operation") {
        CHECK(locator_of(minimal(R"([{"name": "m", "domain": ["B"], "codomain": ["A"], "degree": 0, "entries": []}])")) ==
              "/operations/0/domain/0");
        CHECK(locator_of(minimal(R"([{"name": "m", "domain": ["A"], "codomain": ["A"], "degree": 0,
                                       "entries": [{"in": ["y"], "out": ["1"], "coeff": "1"}]}])")) ==
              "/operations/0/entries/0/in/0");
        CHECK(locator_of(minimal("[]", R"([{"name": "a", "kind": "ainf", "space": "A", "ops": ["m2"]}])")) ==
              "/bundles/0/ops/0");
    }
    SUBCASE("degree law") {
        // an entry that would need degree 1
        std::string text = R"({"schema_version": "homalg-document/1",
               "spaces": [{"name": "A", "basis": [{"label": "a", "degree": 0}, {"label": "b", "degree": 1}]}],
               "operations": [{"name": "m", "domain": ["A"], "codomain": ["A"], "degree": 0,
                               "entries": [{"in": ["a"], "out": ["b"], "coeff": "1"}]}], "bundles": []})";
        CHECK(locator_of(text) == "/operations/0/entries/0");
        // an A-infinity bundle whose m2 has the wrong degree
        std::string wrong = R"({"schema_version": "homalg-document/1",
               "spaces": [{"name": "A", "basis": [{"label": "a", "degree": 0}, {"label": "b", "degree": 1}]}],
               "operations": [{"name": "m", "domain": ["A", "A"], "codomain": ["A"], "degree": 1,
                               "entries": [{"in": ["a", "a"], "out": ["b"], "coeff": "1"}]}],
               "bundles": [{"name": "x", "kind": "ainf", "space": "A", "ops": ["m"]}]})";
        CHECK(locator_of(wrong) == "/bundles/0");
    }
    SUBCASE("syntax errors report line and column") {
        CHECK(locator_of("{\n  \"schema_version\": \n}") == "line 3, column 1");
    }
    SUBCASE("schema version") {
        CHECK(locator_of(R"({"schema_version": "0", "spaces": [], "operations": []})") == "/schema_version");
    }
}

TEST_CASE("check exit statuses") {
    CommandOptions o;
    CHECK(cmd_check(load_document(data("dual_numbers_rb.json")), "", o).status == 0);
    auto bad = cmd_check(load_document(data("dual_numbers_rb_perturbed.json")), "", o);
    CHECK(bad.status == 1);
    REQUIRE_FALSE(bad.report.entries.empty());
    CHECK(bad.report.entries.front().identity == "rb-absolute");
    auto assoc = cmd_check(load_document(data("dual_numbers_assoc_perturbed.json")), "", o);
    CHECK(assoc.status == 1);
    CHECK(assoc.report.has_identity("stasheff"));
    CHECK(cmd_check(load_document(data("dual_numbers_rb.json")), "missing", o).status == 2);
}

TEST_CASE("constructions re-check their output") {
    CommandOptions o;
    o.max_arity = 3;
    SUBCASE("cyclic completion of the classical operator is four-dimensional") {
        auto r = cmd_construct(load_document(data("dual_numbers_rb.json")), "", "cyclic-completion", o);
        REQUIRE(r.status == 0);
        REQUIRE(r.output);
        REQUIRE(r.output->certificate);
        CHECK((*r.output->certificate)["verdict"] == "pass");
        auto b = resolve_bundle(*r.output, "cyclic-completion");
        CHECK(std::get<RBCyclic>(b.value).rb.algebra.space->dim() == 4);
        // the emitted document passes on its own
        CHECK(cmd_check(parse_document(print_document(*r.output)), "", o).status == 0);
    }
    SUBCASE("pre-CY with T = 0 has only m1 and m2") {
        auto r = cmd_construct(load_document(data("end_dual_numbers.json")), "zero", "precy", o);
        REQUIRE(r.status == 0);
        auto s = std::get<PreCYStructure>(resolve_bundle(*r.output, "precy").value);
        CHECK(s.algebra.m.max_arity() <= 2);
    }
    SUBCASE("psi brackets and extracted brackets differ by the expected sign") {
        auto doc = load_document(data("end_dual_numbers.json"));
        auto psi = cmd_construct(doc, "derivation", "psi-brackets", o);
        auto pre = cmd_construct(doc, "derivation", "precy", o);
        REQUIRE(psi.status == 0);
        REQUIRE(pre.status == 0);
        auto ex = cmd_construct(*pre.output, "", "extract-brackets", o);
        REQUIRE(ex.status == 0);
        auto fp = std::get<DoubleBracketFamily>(resolve_bundle(*psi.output, "psi-brackets").value);
        auto fe = std::get<DoubleBracketFamily>(resolve_bundle(*ex.output, "extract-brackets").value);
        for (int n = 1; n <= 2; ++n) {
            const MultilinearOp* a = fp.brackets.get(n + 1);
            const MultilinearOp* b = fe.brackets.get(n + 1);
            REQUIRE((a == nullptr) == (b == nullptr));
            if (a) CHECK(sum_ops({{parity_sign(n), b}}, a->name()) == *a);
        }
    }
    SUBCASE("refusals return status 1 with the blocking residuals") {
        auto r = cmd_construct(load_document(data("aguiar_not_skew.json")), "", "schedler", o);
        CHECK(r.status == 1);
        CHECK_FALSE(r.report.entries.empty());
        CHECK_FALSE(r.output);
    }
    SUBCASE("the desk search finds the operator again") {
        auto r = cmd_construct(load_document(data("end_dual_numbers.json")), "zero.pair", "find-derivation", o);
        REQUIRE(r.status == 0);
        auto d = std::get<DerivationBundle>(resolve_bundle(*r.output, "find-derivation").value);
        REQUIRE(d.T.get(1));
        CHECK_FALSE(d.T.get(1)->is_zero());
    }
}

TEST_CASE("roundtrip pipelines") {
    CommandOptions o;
    CHECK(cmd_roundtrip(load_document(data("aguiar.json")), "", "rb-aybe-double-lie", o).status == 0);
    CHECK(cmd_roundtrip(load_document(data("zero_tensor.json")), "", "rb-aybe-double-lie", o).status == 0);
    auto gate = cmd_roundtrip(load_document(data("aguiar_not_skew.json")), "", "rb-aybe-double-lie", o);
    CHECK(gate.status == 1);
    CHECK(gate.message.find("skewness gate") != std::string::npos);
    CHECK(cmd_roundtrip(load_document(data("end_dual_numbers.json")), "", "psi-precy", o).status == 0);
    CHECK(cmd_roundtrip(load_document(data("end_dual_numbers.json")), "zero", "psi-precy", o).status == 0);
    CHECK(cmd_roundtrip(load_document(data("aguiar.json")), "", "no-such-pipeline", o).status == 2);
}

TEST_CASE("reports do not depend on the worker count") {
    CommandOptions o;
    for (const auto& f : data_files()) {
        CAPTURE(f);
        Document d = load_document(f);
        set_jobs(1);
        std::string one = cmd_check(d, "", o).report_json().dump(2);
        set_jobs(4);
        std::string four = cmd_check(d, "", o).report_json().dump(2);
        CHECK(one == four);
    }
    set_jobs(1);
}

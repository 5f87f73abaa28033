#include "homalg/commands.hpp"
#include "homalg/koszul.hpp"
#include "homalg/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace homalg;

namespace {

py::object to_python(const Json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

CommandOptions options(std::optional<int> max_arity, std::optional<int> max_word, int d, const std::string& name) {
    CommandOptions opt;
    opt.max_arity = max_arity;
    opt.max_word = max_word;
    opt.d = d;
    opt.output_name = name;
    return opt;
}

// A parse failure becomes a status-2 result, the same as the CLI reports it.
template <class F>
py::dict run(const char* verb, const std::string& text, std::optional<int> jobs, F&& body) {
    int saved = homalg::jobs();
    if (jobs) set_jobs(*jobs);
    CommandResult res;
    try {
        Document doc = parse_document(text);
        py::gil_scoped_release release;
        res = body(doc);
    } catch (const InputError& e) {
        res.status = 2;
        res.command = verb;
        res.message = "input error at " + e.locator + ": " + e.what();
    }
    set_jobs(saved);
    py::dict out;
    out["status"] = res.status;
    out["command"] = res.command;
    out["report"] = to_python(res.report_json());
    out["text"] = res.report_text();
    out["document"] = res.output ? py::cast(print_document(*res.output)) : py::none();
    return out;
}

}  // namespace

PYBIND11_MODULE(homalg, m) {
    m.doc() = "Exact-arithmetic checkers and constructions for homotopy algebra documents";
    m.attr("schema_version") = kSchemaVersion;

    // Kept as a bare handle so nothing is released after interpreter shutdown.
    static py::handle input_error = py::exception<InputError>(m, "InputError", PyExc_ValueError).release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InputError& e) {
            py::object err = input_error(e.what());
            err.attr("locator") = e.locator;
            PyErr_SetObject(input_error.ptr(), err.ptr());
        }
    });

    m.def("canonicalize", [](const std::string& text) { return print_document(parse_document(text)); },
          py::arg("text"), "Parses a document and prints it in canonical form; raises InputError.");
    m.def("bundles", [](const std::string& text) {
        Document doc = parse_document(text);
        py::list out;
        for (const auto& b : doc.bundles) out.append(py::make_tuple(b.at("name").get<std::string>(), b.at("kind").get<std::string>()));
        return out;
    }, py::arg("text"));

    m.def("check", [](const std::string& text, const std::string& bundle, std::optional<int> max_arity,
                      std::optional<int> max_word, std::optional<int> jobs) {
        return run("check", text, jobs, [&](const Document& doc) {
            return cmd_check(doc, bundle, options(max_arity, max_word, 0, ""));
        });
    }, py::arg("text"), py::arg("bundle") = "", py::arg("max_arity") = py::none(), py::arg("max_word") = py::none(),
       py::arg("jobs") = py::none());

    m.def("construct", [](const std::string& text, const std::string& op, const std::string& bundle,
                          std::optional<int> max_arity, std::optional<int> max_word, int d, const std::string& name,
                          std::optional<int> jobs) {
        return run("construct", text, jobs, [&](const Document& doc) {
            return cmd_construct(doc, bundle, op, options(max_arity, max_word, d, name));
        });
    }, py::arg("text"), py::arg("op"), py::arg("bundle") = "", py::arg("max_arity") = py::none(),
       py::arg("max_word") = py::none(), py::arg("d") = 0, py::arg("name") = "", py::arg("jobs") = py::none());

    m.def("roundtrip", [](const std::string& text, const std::string& pipeline, const std::string& bundle,
                          std::optional<int> max_arity, std::optional<int> max_word, std::optional<int> jobs) {
        return run("roundtrip", text, jobs, [&](const Document& doc) {
            return cmd_roundtrip(doc, bundle, pipeline, options(max_arity, max_word, 0, ""));
        });
    }, py::arg("text"), py::arg("pipeline"), py::arg("bundle") = "", py::arg("max_arity") = py::none(),
       py::arg("max_word") = py::none(), py::arg("jobs") = py::none());

    m.def("constructions", &construction_names);
    m.def("pipelines", &pipeline_names);
    m.def("bundle_kinds", &bundle_kinds);
    m.def("battery_of_kind", &battery_of_kind, py::arg("kind"));

    m.def("koszul_sign", &koszul_sign, py::arg("perm"), py::arg("degrees"),
          "Sign of moving x_k to slot perm[k] for elements of the given degrees.");
    m.def("sgn", [](const Permutation& p) { return sgn(p); }, py::arg("perm"));
    m.def("shuffles", &shuffles, py::arg("i"), py::arg("j"));
}

#include "homalg/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace homalg;

namespace {

struct Common {
    std::string doc_path;
    std::string bundle;
    int max_arity = 0;
    int max_word = 0;
    int jobs = 0;
    std::string format = "text";
    std::string report_path;
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("doc", c.doc_path, "structure document (JSON)")->required();
    cmd->add_option("--bundle", c.bundle, "bundle to use (default: the last suitable one)");
    cmd->add_option("--max-arity", c.max_arity, "arity cutoff (default 4)")->check(CLI::PositiveNumber);
    cmd->add_option("--max-word", c.max_word, "word-length cutoff (default 3)")->check(CLI::PositiveNumber);
    cmd->add_option("--jobs", c.jobs, "worker count (default HOMALG_JOBS or 1)")->check(CLI::PositiveNumber);
    cmd->add_option("--format", c.format, "report format")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--report", c.report_path, "also write the JSON report to this file");
}

CommandOptions options_of(const Common& c) {
    CommandOptions o;
    if (c.max_arity > 0) o.max_arity = c.max_arity;
    if (c.max_word > 0) o.max_word = c.max_word;
    return o;
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

int emit(const Common& c, CommandResult res, std::ostream& report_stream) {
    res.command = "homalg " + res.command.substr(0, res.command.find(' ')) + " " + c.doc_path +
                  res.command.substr(res.command.find(' '));
    if (c.format == "json") report_stream << res.report_json().dump(2) << "\n";
    else report_stream << res.report_text();
    if (res.status == 2) std::cerr << "homalg: " << res.message << "\n";
    if (!c.report_path.empty() && !write_file(c.report_path, res.report_json().dump(2) + "\n")) {
        std::cerr << "homalg: cannot write " << c.report_path << "\n";
        return 2;
    }
    return res.status;
}

std::optional<Document> load(const Common& c, int& status) {
    try {
        return load_document(c.doc_path);
    } catch (const InputError& e) {
        std::cerr << "homalg: input error at " << (e.locator.empty() ? "/" : e.locator) << ": " << e.what() << "\n";
        if (c.format == "json") {
            Json j = {{"command", "homalg " + c.doc_path},
                      {"status", 2},
                      {"verdict", "input-error"},
                      {"message", std::string(e.what())},
                      {"locator", e.locator}};
            std::cout << j.dump(2) << "\n";
        }
        status = 2;
        return std::nullopt;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"homalg: exact checks and constructions for homotopy algebraic structures"};
    app.require_subcommand(1);

    Common check_opts, construct_opts, roundtrip_opts;
    auto* check = app.add_subcommand("check", "run the checker battery of a bundle");
    add_common(check, check_opts);

    auto* construct = app.add_subcommand("construct", "build a derived structure, re-check it and emit a document");
    add_common(construct, construct_opts);
    std::string op, out_path, out_name;
    int d = 0;
    construct->add_option("--op", op, "construction")->required()->check(CLI::IsMember(construction_names()));
    construct->add_option("-o,--output", out_path, "output document (default: standard output)");
    construct->add_option("--d", d, "degree of the trivial extension");
    construct->add_option("--name", out_name, "bundle name in the output document");

    auto* roundtrip = app.add_subcommand("roundtrip", "run an equivalence pipeline and compare every leg");
    add_common(roundtrip, roundtrip_opts);
    std::string pipeline;
    roundtrip->add_option("--pipeline", pipeline, "pipeline")->required()->check(CLI::IsMember(pipeline_names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const Common& c = check->parsed() ? check_opts : construct->parsed() ? construct_opts : roundtrip_opts;
    if (c.jobs > 0) set_jobs(c.jobs);
    int status = 0;
    auto doc = load(c, status);
    if (!doc) return status;

    if (check->parsed()) return emit(c, cmd_check(*doc, c.bundle, options_of(c)), std::cout);
    if (roundtrip->parsed()) return emit(c, cmd_roundtrip(*doc, c.bundle, pipeline, options_of(c)), std::cout);

    CommandOptions o = options_of(c);
    o.d = d;
    o.output_name = out_name;
    CommandResult res = cmd_construct(*doc, c.bundle, op, o);
    std::optional<Document> made = res.output;
    if (made && out_path.empty()) {
        // the document owns standard output; the report goes to standard error
        std::cout << print_document(*made);
        return emit(c, std::move(res), std::cerr);
    }
    if (made && !write_file(out_path, print_document(*made))) {
        std::cerr << "homalg: cannot write " << out_path << "\n";
        return 2;
    }
    return emit(c, std::move(res), std::cout);
}

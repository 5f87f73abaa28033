#pragma once

#include "homalg/document.hpp"

#include <optional>
#include <string>

namespace homalg {

struct CommandOptions {
    std::optional<int> max_arity;  // falls back to the document cutoffs, then 4
    std::optional<int> max_word;   // falls back to the document cutoffs, then 3
    int d = 0;                     // trivial-extension degree
    std::string output_name;       // bundle name in constructed documents
};

/// Exit status contract: 0 pass, 1 fail or refused construction, 2 input error.
struct CommandResult {
    int status = 0;
    std::string command;
    CheckReport report;
    std::optional<Document> output;
    std::string message;

    Json report_json() const;
    std::string report_text() const;
};

const std::vector<std::string>& construction_names();
const std::vector<std::string>& pipeline_names();
/// The battery a bundle kind runs under `check`.
std::string battery_of_kind(const std::string& kind);

/// Runs the battery of the bundle's kind. An empty name selects the last bundle.
CommandResult cmd_check(const Document& doc, const std::string& bundle, const CommandOptions& opt);
CommandResult cmd_construct(const Document& doc, const std::string& bundle, const std::string& op,
                            const CommandOptions& opt);
CommandResult cmd_roundtrip(const Document& doc, const std::string& bundle, const std::string& pipeline,
                            const CommandOptions& opt);

/// The checker battery for a resolved bundle; shared by check, construct certificates and tests.
CheckReport run_battery(const ResolvedBundle& b, int max_arity);

}  // namespace homalg

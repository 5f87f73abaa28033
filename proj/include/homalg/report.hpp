#pragma once

#include "homalg/scalar.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace homalg {

/// One nonzero coefficient of an identity evaluated on a basis tuple.
struct Residual {
    std::string identity;
    std::string indices;
    std::vector<std::string> inputs;
    std::string output;
    Scalar value;

    bool operator<(const Residual& o) const;
};

struct CheckReport {
    std::string battery;
    std::vector<Residual> entries;
    std::map<std::string, int> cutoffs;
    std::vector<std::string> truncation_limited;
    std::vector<std::string> notes;

    bool passed() const { return entries.empty(); }
    /// "fail", "pass-up-to-cutoff" (some identities were cut off by truncation) or "pass".
    std::string verdict() const;
    void merge(const CheckReport& other);
    /// Sorts entries and truncation list so that output is independent of evaluation order.
    void normalize();
    bool has_identity(const std::string& id) const;
    std::string to_text() const;
};

/// Worker count used by the checkers. Defaults to HOMALG_JOBS or 1.
int jobs();
void set_jobs(int k);

/// Evaluates fn(i) for i in [0, count) on the configured number of workers and
/// concatenates the results in index order.
std::vector<Residual> parallel_residuals(size_t count, const std::function<std::vector<Residual>(size_t)>& fn);
std::vector<std::string> parallel_strings(size_t count, const std::function<std::vector<std::string>(size_t)>& fn);

}  // namespace homalg

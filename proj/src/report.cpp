#include "homalg/report.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>

namespace homalg {

bool Residual::operator<(const Residual& o) const {
    if (identity != o.identity) return identity < o.identity;
    if (indices != o.indices) return indices < o.indices;
    if (inputs != o.inputs) return inputs < o.inputs;
    if (output != o.output) return output < o.output;
    return value < o.value;
}

std::string CheckReport::verdict() const {
    if (!entries.empty()) return "fail";
    if (!truncation_limited.empty()) return "pass-up-to-cutoff";
    return "pass";
}

void CheckReport::merge(const CheckReport& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
    truncation_limited.insert(truncation_limited.end(), other.truncation_limited.begin(), other.truncation_limited.end());
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
    for (const auto& [k, v] : other.cutoffs) cutoffs[k] = v;
    normalize();
}

void CheckReport::normalize() {
    std::sort(entries.begin(), entries.end());
    std::sort(truncation_limited.begin(), truncation_limited.end());
    truncation_limited.erase(std::unique(truncation_limited.begin(), truncation_limited.end()), truncation_limited.end());
}

bool CheckReport::has_identity(const std::string& id) const {
    return std::any_of(entries.begin(), entries.end(), [&](const Residual& r) { return r.identity == id; });
}

std::string CheckReport::to_text() const {
    std::ostringstream out;
    out << "battery: " << battery << "\n";
    out << "verdict: " << verdict() << "\n";
    for (const auto& [k, v] : cutoffs) out << "cutoff " << k << " = " << v << "\n";
    out << "residuals: " << entries.size() << "\n";
    for (const auto& r : entries) {
        out << "  " << r.identity << " [" << r.indices << "] (";
        for (size_t i = 0; i < r.inputs.size(); ++i) out << (i ? ", " : "") << r.inputs[i];
        out << ") -> " << format_scalar(r.value) << " * " << r.output << "\n";
    }
    if (!truncation_limited.empty()) {
        out << "truncation-limited: " << truncation_limited.size() << "\n";
        for (const auto& t : truncation_limited) out << "  " << t << "\n";
    }
    for (const auto& n : notes) out << "note: " << n << "\n";
    return out.str();
}

namespace {

int initial_jobs() {
    if (const char* env = std::getenv("HOMALG_JOBS")) {
        int k = std::atoi(env);
        if (k > 0) return k;
    }
    return 1;
}

std::atomic<int>& jobs_ref() {
    static std::atomic<int> j{initial_jobs()};
    return j;
}

}  // namespace

int jobs() { return jobs_ref().load(); }
void set_jobs(int k) { jobs_ref().store(k > 0 ? k : 1); }

template <class T>
std::vector<T> parallel_collect(size_t count, const std::function<std::vector<T>(size_t)>& fn) {
    size_t workers = std::min<size_t>(static_cast<size_t>(jobs()), std::max<size_t>(count, 1));
    std::vector<std::vector<T>> parts(workers);
    std::vector<std::exception_ptr> errors(workers);
    auto run = [&](size_t w) {
        size_t lo = count * w / workers, hi = count * (w + 1) / workers;
        try {
            for (size_t i = lo; i < hi; ++i) {
                auto r = fn(i);
                parts[w].insert(parts[w].end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers <= 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        for (size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
        for (auto& t : threads) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<T> out;
    for (auto& p : parts) out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    return out;
}

std::vector<Residual> parallel_residuals(size_t count, const std::function<std::vector<Residual>(size_t)>& fn) {
    return parallel_collect<Residual>(count, fn);
}

std::vector<std::string> parallel_strings(size_t count, const std::function<std::vector<std::string>(size_t)>& fn) {
    return parallel_collect<std::string>(count, fn);
}

}  // namespace homalg

#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace mcf {

/// Bad or inconsistent problem description (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Failure of a numerical procedure (CLI exit code 3). Carries enough context
/// to locate the offending cell and stage.
struct NumericalError : std::runtime_error {
    std::string stage;
    int i = -1, j = -1;
    double time = -1.0;

    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
    NumericalError(const std::string& msg, const std::string& stage_, int i_, int j_ = -1,
                   double t = -1.0)
        : std::runtime_error(msg + " [stage=" + stage_ + " cell=(" + std::to_string(i_) + "," +
                             std::to_string(j_) + ") t=" + std::to_string(t) + "]"),
          stage(stage_), i(i_), j(j_), time(t) {}
};

/// Number of worker threads for the data-parallel sweeps. Defaults to 1;
/// override with the MCFLOW_THREADS environment variable.
int thread_count();

/// Runs fn(begin, end) over [0, n) split into contiguous chunks. Results must
/// not depend on the partition (single writer per index). Exceptions from
/// workers are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

inline double sq(double x) { return x * x; }

} // namespace mcf

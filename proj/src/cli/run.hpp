#pragma once

#include <algorithm>
#include <exception>
#include <functional>
#include <iosfwd>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "cli/config.hpp"

namespace cylvdw::cli {

enum ExitCode { exit_ok = 0, exit_config = 1, exit_numerical = 2, exit_io = 3 };

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical failure at one sweep point.
struct PointFailure : std::runtime_error {
    PointFailure(const std::string& what, double z_over_c_omega)
        : std::runtime_error(what), z(z_over_c_omega)
    {
    }
    double z;
};

/// %.11e, "nan" for NaN
std::string format_number(double v);

inline const char* csv_columns = "z_over_cOmega,U_total,U0,U_sc,U_cross,U_normalized,flags";

/// Runs fn(i) for i < n on `jobs` threads; results keep input order. The first failing
/// index (lowest i) is rethrown after all workers finish.
template <class T>
std::vector<T> parallel_map(std::size_t n, int jobs, const std::function<T(std::size_t)>& fn)
{
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::size_t next = 0;
    std::mutex m;
    auto worker = [&] {
        for (;;) {
            std::size_t i;
            {
                std::lock_guard<std::mutex> lock(m);
                if (next >= n) return;
                i = next++;
            }
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int nt = std::max(1, std::min<int>(jobs, int(n)));
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

struct Row {
    double x = 0.0;  // z Omega / c
    double total = 0.0, u0 = 0.0, usc = 0.0, ucross = 0.0, normalized = 0.0;
    std::string flags = "ok";
};

/// Ground-state or resonant rows for every z of the run. Failures become PointFailure.
std::vector<Row> potential_rows(const Resolved& run);
std::string format_row(const Row& row);

/// CSV text (header + rows) for the potential / green / modes commands.
std::string run_to_string(const RunConfig& config);

/// Writes text to path, or to out for "-". Throws IoError.
void write_output(const std::string& text, const std::string& path, std::ostream& out);

/// Entry point shared by the executable and the tests.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cylvdw::cli

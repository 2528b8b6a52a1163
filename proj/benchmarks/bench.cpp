// Timing comparison between the OpenMP kernels and the plain-loop serial
// reference, with agreement checks so a speedup never hides a divergence.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "scjl/oracle.hpp"
#include "scjl/reference.hpp"
#include "scjl/sketch.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

int failures = 0;

void report(const char* name, double serial_s, double parallel_s, bool agree) {
    std::printf("%-28s %10.3fs %10.3fs %8.2fx  %s\n", name, serial_s, parallel_s,
                serial_s / parallel_s, agree ? "agree" : "DISAGREE");
    if (!agree) ++failures;
}

bool close(double a, double b, double rel) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) <= rel * scale;
}

}  // namespace

int main() {
    std::printf("threads available: %d\n\n", omp_get_max_threads());
    std::printf("%-28s %11s %11s %9s  %s\n", "kernel", "serial", "parallel", "speedup",
                "check");

    // matrix sampling: production serial vs production parallel
    {
        scjl::SketchParams p;
        p.eps = 0.5;
        p.delta = 0.05;
        p.s = 8;
        p.m = 4096;
        p.B = static_cast<double>(p.m) / 64.0;
        p.n = 400000;
        auto t0 = clock_type::now();
        const auto serial = scjl::sample_sign_consistent(p, 42, scjl::Exec::serial);
        const double ts = seconds_since(t0);
        t0 = clock_type::now();
        const auto parallel = scjl::sample_sign_consistent(p, 42, scjl::Exec::parallel);
        const double tp = seconds_since(t0);
        bool agree = serial.columns.size() == parallel.columns.size();
        for (std::size_t i = 0; agree && i < serial.columns.size(); ++i)
            agree = serial.columns[i].rows == parallel.columns[i].rows &&
                    serial.columns[i].sign == parallel.columns[i].sign;
        report("sample 400k columns", ts, tp, agree);
    }

    const scjl::SketchParams p = scjl::select_params(0.5, 0.05, scjl::kMinB);

    // Monte Carlo moment, dense vector
    {
        scjl::SketchParams q = p;
        q.n = 64;
        const std::vector<double> x(64, 1.0 / 8.0);
        const std::uint64_t trials = 40000;
        auto t0 = clock_type::now();
        const auto ref = scjl::reference::mc_moment_Z(q, x, 4, trials, 7);
        const double ts = seconds_since(t0);
        t0 = clock_type::now();
        const auto par = scjl::mc_moment_Z(q, x, 4, trials, 7, scjl::Exec::parallel);
        const double tp = seconds_since(t0);
        report("mc moment p=4, 40k trials", ts, tp, close(ref.value, par.value, 1e-12));
    }

    // Monte Carlo failure rate, dense vector (counts must match exactly)
    {
        scjl::SketchParams q = p;
        q.n = 64;
        const std::vector<double> x(64, 1.0 / 8.0);
        const std::uint64_t trials = 40000;
        auto t0 = clock_type::now();
        const auto ref = scjl::reference::mc_failure_rate(q, x, 0.5, trials, 11);
        const double ts = seconds_since(t0);
        t0 = clock_type::now();
        const auto par = scjl::mc_failure_rate(q, x, 0.5, trials, 11, scjl::Exec::parallel);
        const double tp = seconds_since(t0);
        report("failure rate, 40k trials", ts, tp, ref.failures == par.failures);
    }

    // exact moment enumeration: serial vs parallel production paths
    {
        scjl::SketchParams q;
        q.eps = 0.5;
        q.delta = 0.05;
        q.s = 2;
        q.m = 6;
        q.B = 1.5;
        q.n = 4;
        const std::vector<double> x(4, 0.5);
        auto t0 = clock_type::now();
        const auto serial = scjl::exact_moment_Z(q, x, 4, 1e9, scjl::Exec::serial);
        const double ts = seconds_since(t0);
        t0 = clock_type::now();
        const auto parallel = scjl::exact_moment_Z(q, x, 4, 1e9, scjl::Exec::parallel);
        const double tp = seconds_since(t0);
        report("exact moment (4,6,2) p=4", ts, tp, serial.value == parallel.value);
    }

    if (failures) {
        std::printf("\n%d kernel(s) disagree\n", failures);
        return 1;
    }
    std::printf("\nall kernels agree\n");
    return 0;
}

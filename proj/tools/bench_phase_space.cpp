#include "bithresh/attractors.hpp"
#include "bithresh/dynamics.hpp"
#include "bithresh/graph.hpp"
#include "bithresh/spec_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace bithresh;

double best_of(int repeat, const std::function<std::vector<std::uint32_t>()>& fn,
               std::vector<std::uint32_t>& out) {
    double best = 1e300;
    for (int r = 0; r < repeat; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        out = fn();
        const double s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        best = std::min(best, s);
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"compare serial and parallel successor-table fills"};
    int n = 20;
    int repeat = 3;
    std::string spec_path;
    app.add_option("--n", n, "circle size when no spec is given (default 20)");
    app.add_option("--spec", spec_path, "system spec JSON file");
    app.add_option("--repeat", repeat, "timing repetitions (best is reported)")
        ->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    try {
        System sys = [&] {
            if (!spec_path.empty()) return load_system_spec(spec_path).system;
            return System::uniform(circle_graph(n), 1, 3, UpdateScheme::synchronous());
        }();
        const int vc = sys.vertex_count();
        std::cout << "n=" << vc << " states=" << (std::uint64_t{1} << vc) << "\n";

        std::vector<std::uint32_t> serial_table, parallel_table;
        const double ts = best_of(repeat, [&] { return successor_table_serial(sys); }, serial_table);
        const double tp = best_of(repeat, [&] { return successor_table(sys, true); }, parallel_table);

        int threads = 1;
#ifdef _OPENMP
        threads = omp_get_max_threads();
#endif
        std::printf("serial:   %.3f s\n", ts);
        std::printf("parallel: %.3f s (x%.2f, %d thread%s)\n", tp, ts / tp, threads,
                    threads == 1 ? "" : "s");
        if (serial_table == parallel_table) {
            std::cout << "tables identical\n";
            return 0;
        }
        std::cout << "tables DIFFER\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

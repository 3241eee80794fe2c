// Timing comparison of the OpenMP kernels against the serial reference.
#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sproutforge/sprout_engine.hpp"

using namespace sforge;
using clk = std::chrono::steady_clock;

namespace {

double run(const char* name, const conv::ConvElement& f, const conv::ConvElement& g,
           int cap, conv::Exec exec) {
    auto t0 = clk::now();
    auto out = conv::pre_lie(f, g, cap, exec);
    double dt = std::chrono::duration<double>(clk::now() - t0).count();
    std::cout << name << ": " << dt << " s  (" << out.term_count() << " classes)\n";
    return dt;
}

} // namespace

int main(int argc, char** argv) {
    int threads = argc > 1 ? std::atoi(argv[1]) : 0;
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    std::cout << "max threads " << omp_get_max_threads() << "\n";
#endif
    auto alpha = engine::seed_paper();
    auto step = engine::extend(alpha, 2);
    auto a3 = step.result;

    // bracket workload at arity 5, serial vs parallel
    auto serial = run("pre_lie arity<=5 serial  ", a3, a3, 5, conv::Exec{false});
    auto parallel = run("pre_lie arity<=5 parallel", a3, a3, 5, conv::Exec{true});
    std::cout << "speedup " << serial / parallel << "x\n";

    // curvature of the order-3 sprout, the hot kernel of sprout checks
    auto t1 = clk::now();
    auto c_serial = conv::curvature(a3, 5, conv::Exec{false});
    double dt_s = std::chrono::duration<double>(clk::now() - t1).count();
    t1 = clk::now();
    auto c_parallel = conv::curvature(a3, 5, conv::Exec{true});
    double dt_p = std::chrono::duration<double>(clk::now() - t1).count();
    std::cout << "curvature arity<=5 serial  : " << dt_s << " s ("
              << c_serial.term_count() << " classes)\n";
    std::cout << "curvature arity<=5 parallel: " << dt_p << " s\n";
    std::cout << "results identical: " << (c_serial == c_parallel ? "yes" : "NO") << "\n";

    auto t0 = clk::now();
    auto problem = engine::assemble(a3, 3);
    std::cout << "assemble order 3->4: "
              << std::chrono::duration<double>(clk::now() - t0).count() << " s  ("
              << problem.matrix.rows() << "x" << problem.matrix.cols() << ", nnz "
              << problem.matrix.nnz() << ")\n";
    return 0;
}

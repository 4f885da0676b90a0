// Benchmark of the OpenMP word-enumeration kernels against the serial
// reference, checking that both produce identical results.

#include <chrono>
#include <iostream>

#include "chl/catalog.hpp"
#include "chl/wordgen.hpp"

using namespace chl;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

int main(int argc, char** argv) {
  unsigned trace_len = argc > 1 ? std::stoul(argv[1]) : 4;
  unsigned cusp_len = argc > 2 ? std::stoul(argv[2]) : 5;

  const Catalog& cat = Catalog::builtin();
  std::cout << "threads: " << words::max_threads() << "\n";

  {
    GroupInstance g = cat.instantiate("G34", Params{{3}});
    auto gens = g.generator_matrices();
    auto t0 = Clock::now();
    auto serial = words::adjoint_trace_set_serial(gens, trace_len);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    auto parallel = words::adjoint_trace_set(gens, trace_len);
    double tp = seconds_since(t0);
    bool same = serial.size() == parallel.size();
    for (size_t i = 0; same && i < serial.size(); ++i) same = serial[i] == parallel[i];
    std::cout << "trace sampling G34 len " << trace_len << ": serial " << ts << "s, parallel "
              << tp << "s, values " << serial.size() << ", identical: " << (same ? "yes" : "NO")
              << "\n";
    if (!same) return 1;
  }

  {
    GroupInstance g = cat.instantiate("B4_34_DM", Params{});
    std::vector<MatC> gens = {g.gens[1].matrix, g.gens[2].matrix, g.gens[3].matrix};
    auto t0 = Clock::now();
    auto serial = words::enumerate_serial(gens, cusp_len, true);
    double ts = seconds_since(t0);
    t0 = Clock::now();
    auto parallel = words::enumerate(gens, cusp_len, true);
    double tp = seconds_since(t0);
    bool same = serial.size() == parallel.size();
    for (size_t i = 0; same && i < serial.size(); ++i)
      same = serial[i].word == parallel[i].word && serial[i].mat == parallel[i].mat;
    std::cout << "word sweep DM len " << cusp_len << ": serial " << ts << "s, parallel " << tp
              << "s, words " << serial.size() << ", identical: " << (same ? "yes" : "NO") << "\n";
    if (!same) return 1;
  }
  return 0;
}

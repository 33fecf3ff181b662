// Serial vs OpenMP kernel timings. Usage: bench_kernels [n] [reps]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <random>

#include "menger/kernels.hpp"

using namespace menger;
namespace k = menger::kernels;

namespace {

template <class F>
double best_ms(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, std::size_t n, double ser, double par, bool same) {
  std::printf("%-16s %7zu %12.3f %12.3f %8.2f %s\n", name, n, ser, par, ser / par, same ? "ok" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2000;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> flat(2 * n);
  for (double& x : flat) x = u(rng);
  const MetricSpace space = MetricSpace::euclidean(2, flat);
  std::vector<Index> all(n);
  std::iota(all.begin(), all.end(), Index{0});
  const std::span<const Index> half_a(all.data(), n / 2);
  const std::span<const Index> half_b(all.data() + n / 2, n - n / 2);

  std::printf("openmp %s\n", k::openmp_enabled() ? "on" : "off");
  std::printf("%-16s %7s %12s %12s %8s\n", "kernel", "n", "serial_ms", "omp_ms", "speedup");

  std::vector<double> ds, dp;
  const double t_ds = best_ms(reps, [&] { ds = k::serial::distance_matrix(space, all); });
  const double t_dp = best_ms(reps, [&] { dp = k::omp::distance_matrix(space, all); });
  row("distance_matrix", n, t_ds, t_dp, ds == dp);

  double es = 0, ep = 0;
  row("excess", n, best_ms(reps, [&] { es = k::serial::excess(space, half_a, half_b); }),
      best_ms(reps, [&] { ep = k::omp::excess(space, half_a, half_b); }), es == ep);

  double ms = 0, mp = 0;
  row("diameter", n, best_ms(reps, [&] { ms = k::serial::diameter(space, all); }),
      best_ms(reps, [&] { mp = k::omp::diameter(space, all); }), ms == mp);

  std::vector<std::size_t> ps, pp;
  row("prim", n, best_ms(reps, [&] { ps = k::serial::prim(ds, n); }), best_ms(reps, [&] { pp = k::omp::prim(ds, n); }),
      ps == pp);

  std::vector<char> ws, wp;
  row("within_radius", n, best_ms(reps, [&] { ws = k::serial::within_radius(space, half_a, half_b, 0.01); }),
      best_ms(reps, [&] { wp = k::omp::within_radius(space, half_a, half_b, 0.01); }), ws == wp);

  // Dreyfus-Wagner: 9 terminals over the first m nodes.
  const std::size_t m = std::min<std::size_t>(n, 400);
  const std::size_t kt = 9;
  const auto dm = k::serial::distance_matrix(space, std::span<const Index>(all.data(), m));
  k::SteinerDpTables ts, tp;
  row("steiner_dp", m, best_ms(1, [&] { ts = k::serial::steiner_dp(dm, m, kt); }),
      best_ms(1, [&] { tp = k::omp::steiner_dp(dm, m, kt); }), ts.optimum == tp.optimum);
  return 0;
}

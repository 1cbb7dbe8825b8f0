// Times the serial reference batch runner against the OpenMP runner on the
// same workload and verifies the counts agree bit for bit.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>

#include "wag/analytic.hpp"
#include "wag/simulate.hpp"

using namespace wag;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same_counts(const BatchCounts& a, const BatchCounts& b) {
  if (a.episodes != b.episodes || a.stage1_offended != b.stage1_offended ||
      a.rival_terminated != b.rival_terminated ||
      a.own_all_supported != b.own_all_supported || a.total_length != b.total_length ||
      a.length_tail != b.length_tail)
    return false;
  for (int j = 0; j < kLengthBins; ++j)
    if (a.length_hist[j] != b.length_hist[j]) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::uint64_t episodes = 2000000;
  if (argc > 1) episodes = std::strtoull(argv[1], nullptr, 10);

  ModelParams p;
  p.n = 2;
  p.lambda = 0.25;
  p.g = {1.8, 1.2};
  p.b = {1.1, 1.9};
  validate(p);
  const EquilibriumProfile prof = pspe_profile(p, derive(p).M);
  const StateId s{1, 2};
  const std::uint64_t key = stream_key(20240817u, "bench", s.camp, s.m);

  std::printf("episode batch, state (camp %d, m %d), %llu episodes\n", s.camp, s.m,
              static_cast<unsigned long long>(episodes));

  auto t0 = std::chrono::steady_clock::now();
  const BatchCounts serial = run_batch_serial(p, prof, s, episodes, key);
  const double t_serial = seconds_since(t0);
  std::printf("  serial reference : %8.3f s  (%.1f Mep/s)\n", t_serial,
              episodes / t_serial / 1e6);

  for (int threads : {1, 2, 4}) {
    t0 = std::chrono::steady_clock::now();
    const BatchCounts par = run_batch_openmp(p, prof, s, episodes, key, threads);
    const double t_par = seconds_since(t0);
    std::printf("  openmp %2d thread%s: %8.3f s  (%.1f Mep/s)  speedup %.2fx  %s\n",
                threads, threads == 1 ? " " : "s", t_par, episodes / t_par / 1e6,
                t_serial / t_par, same_counts(serial, par) ? "counts match" : "COUNTS DIFFER");
    if (!same_counts(serial, par)) return 1;
  }
  return 0;
}

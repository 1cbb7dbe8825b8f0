#include "wag/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "wag/analytic.hpp"
#include "wag/dynamics.hpp"
#include "wag/io.hpp"
#include "wag/simulate.hpp"
#include "wag/sweep.hpp"

namespace wag {

namespace {

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

bool wants_json(OutputFormat f) { return f != OutputFormat::csv; }
bool wants_csv(OutputFormat f) { return f != OutputFormat::json; }

// Uniform mapping from error category to process exit code.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigNotFound& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const SimulationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStatistical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace

OutputFormat format_from_name(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  if (name == "both") return OutputFormat::both;
  throw ValidationError("format: expected json, csv or both, got '" + name + "'");
}

int cmd_solve(const SolveOptions& opt) {
  return guarded([&] {
    const ModelParams p = load_params(opt.config);
    const DerivedQuantities d = derive(p);
    const BenchmarkSolution bench = solve_benchmark(p);
    const EquilibriumProfile stable = pspe_profile(p, d.M);
    const WhataboutismStats stats = whataboutism_stats(p, stable);
    const json records = solve_records(p, d, bench, stable, stats);
    if (wants_json(opt.format)) {
      json j{{"params", params_to_json(p)},
             {"derived", derived_to_json(d)},
             {"benchmark", benchmark_to_json(bench)},
             {"stable_profile", profile_to_json(stable)},
             {"records", records}};
      write_text_file(join_path(opt.out_dir, "solution.json"), j.dump(2) + "\n");
    }
    if (wants_csv(opt.format))
      write_text_file(join_path(opt.out_dir, "solution.csv"), solve_records_csv(records));
    return kExitOk;
  });
}

int cmd_enumerate(const EnumerateOptions& opt) {
  return guarded([&] {
    const ModelParams p = load_params(opt.config);
    const PspeFamily fam = enumerate_pspe(p);
    json profiles = json::array();
    std::ostringstream csv;
    csv << "mstar,m,abstain,cutoff,stable\n";
    for (const auto& prof : fam.profiles) {
      const StabilityReport rep = check_stability(p, prof);
      json entry = profile_to_json(prof);
      entry["stability"] = stability_to_json(rep);
      profiles.push_back(entry);
      for (int m = 1; m <= p.n; ++m)
        csv << prof.mstar << ',' << m << ',' << format_real(prof.abstain_at(m)) << ','
            << format_real(prof.cutoff_at(m)) << ',' << (rep.stable ? 1 : 0) << '\n';
    }
    if (wants_json(opt.format)) {
      json j{{"params", params_to_json(p)},
             {"derived", derived_to_json(derive(p))},
             {"profiles", profiles},
             {"stable_index", fam.stable_index}};
      write_text_file(join_path(opt.out_dir, "profiles.json"), j.dump(2) + "\n");
    }
    if (wants_csv(opt.format))
      write_text_file(join_path(opt.out_dir, "profiles.csv"), csv.str());
    return kExitOk;
  });
}

int cmd_simulate(const SimulateOptions& opt) {
  return guarded([&] {
    if (!opt.seed)
      throw ValidationError("seed: required; pass --seed so runs are reproducible");
    if (opt.episodes < 10000)
      throw ValidationError("episodes: floor is 10000 for meaningful z-scores");
    const ModelParams p = load_params(opt.config);
    const EquilibriumProfile profile =
        opt.profile_path.empty() ? pspe_profile(p, derive(p).M)
                                 : load_profile(opt.profile_path, p);
    if (opt.state && (opt.state->camp < 1 || opt.state->camp > 2 || opt.state->m < 1 ||
                      opt.state->m > p.n))
      throw ValidationError("state: camp must be 1|2 and m in 1.." + std::to_string(p.n));

    std::vector<EstimateReport> reports;
    if (opt.state) {
      const StateId s = *opt.state;
      reports.push_back(estimate_alpha(p, profile, s, opt.episodes, *opt.seed, opt.threads));
      reports.push_back(
          estimate_rebuttal_failure(p, profile, s, opt.episodes, *opt.seed, opt.threads));
      reports.push_back(estimate_whataboutism_frequency(p, profile, s.m, opt.episodes,
                                                        *opt.seed, opt.threads));
      reports.push_back(
          estimate_marginal_payoff(p, profile, s, opt.episodes, *opt.seed, opt.threads));
    } else {
      reports = run_all_estimators(p, profile, opt.episodes, *opt.seed, opt.threads);
    }

    if (wants_json(opt.format)) {
      json jr = json::array();
      for (const auto& r : reports) jr.push_back(report_to_json(r));
      json j{{"seed", *opt.seed},
             {"episodes", opt.episodes},
             {"params", params_to_json(p)},
             {"profile", profile_to_json(profile)},
             {"reports", jr}};
      write_text_file(join_path(opt.out_dir, "estimates.json"), j.dump(2) + "\n");
    }
    if (wants_csv(opt.format))
      write_text_file(join_path(opt.out_dir, "estimates.csv"), reports_csv(reports));

    if (!opt.dump_episodes.empty()) {
      std::ostringstream csv;
      csv << "episode_index,camp,m,stage1_offended,length,terminator,all_supported\n";
      for (int camp = 1; camp <= 2; ++camp) {
        for (int m = 1; m <= p.n; ++m) {
          const StateId s{camp, m};
          if (opt.state && !(s == *opt.state)) continue;
          const std::uint64_t key = stream_key(*opt.seed, "alpha", s.camp, s.m);
          for (std::uint64_t i = 0; i < opt.episodes; ++i) {
            SplitMix64 rng = substream(key, i);
            const EpisodeRecord ep = run_episode(p, profile, s, rng);
            csv << i << ',' << camp << ',' << m << ',' << (ep.stage1_offended ? 1 : 0)
                << ',' << ep.length << ','
                << (ep.terminator_camp == Terminator::rival ? "rival" : "same") << ','
                << (ep.own_camp_all_supported ? 1 : 0) << '\n';
          }
        }
      }
      write_text_file(opt.dump_episodes, csv.str());
    }

    for (const auto& r : reports)
      if (std::abs(r.z_score) > 4.0) {
        std::cerr << "statistical check failed: " << r.quantity << " camp=" << r.camp
                  << " m=" << r.m << " z=" << r.z_score << "\n";
        return kExitStatistical;
      }
    return kExitOk;
  });
}

int cmd_sweep(const SweepOptions& opt) {
  return guarded([&] {
    const SweepSpec spec = sweep_spec_from_json(read_json_file(opt.config));
    const SweepResult result = run_sweep(spec, opt.threads);
    if (wants_csv(opt.format))
      write_text_file(join_path(opt.out_dir, "sweep.csv"), sweep_csv(result, spec.axis));
    if (wants_json(opt.format))
      write_text_file(join_path(opt.out_dir, "sweep_report.json"),
                      sweep_report_json(result).dump(2) + "\n");
    for (const auto& v : result.violations)
      std::cerr << "monotonicity violation: " << v << "\n";
    return result.violations.empty() ? kExitOk : kExitStatistical;
  });
}

int cmd_stability(const StabilityOptions& opt) {
  return guarded([&] {
    const ModelParams p = load_params(opt.config);
    const PspeFamily fam = enumerate_pspe(p);
    json entries = json::array();
    std::ostringstream csv;
    csv << "mstar,m,stable_point,contraction_margin,conjugate_margin,derivative,stable\n";
    for (const auto& prof : fam.profiles) {
      const StabilityReport rep = check_stability(p, prof, opt.delta, opt.grid_points);
      json entry{{"mstar", prof.mstar}, {"stability", stability_to_json(rep)}};
      entries.push_back(entry);
      for (const auto& row : rep.per_m)
        csv << prof.mstar << ',' << row.m << ',' << format_real(row.stable_point) << ','
            << format_real(row.contraction_margin) << ','
            << format_real(row.conjugate_margin) << ',' << format_real(row.derivative)
            << ',' << (rep.stable ? 1 : 0) << '\n';
    }
    if (wants_json(opt.format)) {
      json j{{"params", params_to_json(p)}, {"profiles", entries}};
      write_text_file(join_path(opt.out_dir, "stability.json"), j.dump(2) + "\n");
    }
    if (wants_csv(opt.format))
      write_text_file(join_path(opt.out_dir, "stability.csv"), csv.str());
    if (!opt.trace_dir.empty()) {
      for (int m = 1; m <= p.n; ++m) {
        const IterationTrace tr = iterate(p, m, 0.5);
        std::ostringstream tcsv;
        tcsv << "step,value\n";
        for (std::size_t k = 0; k < tr.iterates.size(); ++k)
          tcsv << k << ',' << format_real(tr.iterates[k]) << '\n';
        write_text_file(join_path(opt.trace_dir, "trace_m" + std::to_string(m) + ".csv"),
                        tcsv.str());
      }
    }
    return kExitOk;
  });
}

}  // namespace wag

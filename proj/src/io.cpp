#include "wag/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace wag {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json params_to_json(const ModelParams& p) {
  json j;
  j["n"] = p.n;
  j["lambda"] = p.lambda;
  j["g"] = p.g;
  j["b"] = p.b;
  if (p.cbar) j["cbar"] = *p.cbar;
  return j;
}

namespace {

// Missing or mistyped fields surface as ValidationError naming the field.
template <typename T>
T field(const json& j, const char* name) {
  if (!j.contains(name)) throw ValidationError(std::string(name) + ": missing");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string(name) + ": wrong type");
  }
}

}  // namespace

ModelParams params_from_json(const json& j) {
  ModelParams p;
  p.n = field<int>(j, "n");
  p.lambda = field<double>(j, "lambda");
  p.g = field<std::vector<double>>(j, "g");
  p.b = field<std::vector<double>>(j, "b");
  if (j.contains("cbar")) p.cbar = field<double>(j, "cbar");
  validate(p);
  return p;
}

ModelParams load_params(const std::string& path) {
  return params_from_json(read_json_file(path));
}

json profile_to_json(const EquilibriumProfile& prof) {
  json j;
  j["mstar"] = prof.mstar;
  j["cutoff"] = prof.cutoff;
  j["abstain"] = prof.abstain;
  j["equilibrium"] = prof.equilibrium;
  json targets = json::array();
  for (const auto& [from, to] : prof.rebuttal_target)
    targets.push_back({{"from", {{"camp", from.camp}, {"m", from.m}}},
                       {"to", {{"camp", to.camp}, {"m", to.m}}}});
  j["rebuttal_target"] = targets;
  return j;
}

EquilibriumProfile profile_from_json(const json& j_in, const ModelParams& p) {
  const json& j = j_in.contains("stable_profile") ? j_in.at("stable_profile") : j_in;
  EquilibriumProfile prof;
  prof.cutoff = field<std::vector<double>>(j, "cutoff");
  if (static_cast<int>(prof.cutoff.size()) != p.n)
    throw ValidationError("cutoff: expected " + std::to_string(p.n) + " entries");
  if (j.contains("abstain")) {
    prof.abstain = field<std::vector<double>>(j, "abstain");
    if (static_cast<int>(prof.abstain.size()) != p.n)
      throw ValidationError("abstain: expected " + std::to_string(p.n) + " entries");
  } else {
    prof.abstain.resize(prof.cutoff.size());
    for (int m = 1; m <= p.n; ++m) prof.abstain[m - 1] = prof.cutoff[m - 1] / p.g_at(m);
  }
  for (int m = 1; m <= p.n; ++m) {
    if (!(prof.cutoff[m - 1] >= 0.0 && prof.cutoff[m - 1] <= p.g_at(m)))
      throw ValidationError("cutoff[" + std::to_string(m) + "]: outside [0, g]");
    if (std::abs(prof.abstain[m - 1] * p.g_at(m) - prof.cutoff[m - 1]) > 1e-9)
      throw ValidationError("abstain[" + std::to_string(m) + "]: inconsistent with cutoff");
  }
  if (j.contains("mstar")) {
    prof.mstar = field<int>(j, "mstar");
  } else {
    prof.mstar = p.n + 1;  // first interior level, if any
    for (int m = 1; m <= p.n; ++m)
      if (prof.abstain[m - 1] > 0.0) {
        prof.mstar = m;
        break;
      }
  }
  prof.equilibrium = j.contains("equilibrium") && j.at("equilibrium").get<bool>();
  if (j.contains("rebuttal_target"))
    for (const auto& t : j.at("rebuttal_target"))
      prof.rebuttal_target.push_back(
          {StateId{t.at("from").at("camp").get<int>(), t.at("from").at("m").get<int>()},
           StateId{t.at("to").at("camp").get<int>(), t.at("to").at("m").get<int>()}});
  return prof;
}

EquilibriumProfile load_profile(const std::string& path, const ModelParams& p) {
  return profile_from_json(read_json_file(path), p);
}

json benchmark_to_json(const BenchmarkSolution& bench) {
  return json{{"cutoff", bench.cutoff}, {"abstain", bench.abstain}};
}

json derived_to_json(const DerivedQuantities& d) {
  return json{{"c", d.c},
              {"theta", d.theta},
              {"M", d.M},
              {"near_zero_theta", d.near_zero_theta}};
}

json report_to_json(const EstimateReport& r) {
  return json{{"quantity", r.quantity}, {"camp", r.camp},
              {"m", r.m},               {"n_episodes", r.n_episodes},
              {"estimate", r.estimate}, {"std_error", r.std_error},
              {"analytic", r.analytic}, {"z_score", r.z_score}};
}

json stability_to_json(const StabilityReport& rep) {
  json per_m = json::array();
  for (const auto& row : rep.per_m)
    per_m.push_back({{"m", row.m},
                     {"fixed_points", row.fixed_points},
                     {"stable_point", row.stable_point},
                     {"contraction_margin", row.contraction_margin},
                     {"conjugate_margin", row.conjugate_margin},
                     {"derivative", row.derivative}});
  json j{{"stable", rep.stable}, {"per_m", per_m}};
  if (rep.witness)
    j["witness"] = {{"m", rep.witness->m},
                    {"x", rep.witness->x},
                    {"x_prime", rep.witness->x_prime},
                    {"ratio", rep.witness->ratio}};
  else
    j["witness"] = nullptr;
  return j;
}

json solve_records(const ModelParams& p, const DerivedQuantities& d,
                   const BenchmarkSolution& bench, const EquilibriumProfile& stable,
                   const WhataboutismStats& stats) {
  json rows = json::array();
  for (int m = 1; m <= p.n; ++m) {
    rows.push_back({{"m", m},
                    {"c", d.c[m - 1]},
                    {"theta", d.theta[m - 1]},
                    {"x_benchmark", bench.abstain[m - 1]},
                    {"x_stable", stable.abstain[m - 1]},
                    {"cutoff_stable", stable.cutoff[m - 1]},
                    {"alpha", stats.alpha[m - 1]},
                    {"mu", stats.mu[m - 1]},
                    {"whataboutism_frequency", stats.frequency[m - 1]}});
  }
  return rows;
}

std::string solve_records_csv(const json& records) {
  std::ostringstream out;
  out << "m,c,theta,x_benchmark,x_stable,cutoff_stable,alpha,mu,whataboutism_frequency\n";
  for (const auto& row : records) {
    out << row.at("m").get<int>();
    for (const char* key : {"c", "theta", "x_benchmark", "x_stable", "cutoff_stable",
                            "alpha", "mu", "whataboutism_frequency"})
      out << ',' << format_real(row.at(key).get<double>());
    out << '\n';
  }
  return out.str();
}

std::string reports_csv(const std::vector<EstimateReport>& reports) {
  std::ostringstream out;
  out << "quantity,camp,m,n_episodes,estimate,std_error,analytic,z_score\n";
  for (const auto& r : reports)
    out << r.quantity << ',' << r.camp << ',' << r.m << ',' << r.n_episodes << ','
        << format_real(r.estimate) << ',' << format_real(r.std_error) << ','
        << format_real(r.analytic) << ',' << format_real(r.z_score) << '\n';
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const auto parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path + ": cannot open for writing");
  out << content;
  if (!out) throw IoError(path + ": write failed");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigNotFound(path + ": no such file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

}  // namespace wag

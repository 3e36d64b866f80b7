#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "remgibbs/errors.hpp"
#include "remgibbs/rem.hpp"
#include "remgibbs/simulator.hpp"
#include "remgibbs/stats.hpp"

namespace remgibbs::cli {
namespace {

constexpr int kCompareMaxN = 22;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string hex_word(std::uint64_t w) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(w));
  return buf;
}

std::vector<int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("--N-range expects a:b");
  const int a = std::stoi(text.substr(0, colon));
  const int b = std::stoi(text.substr(colon + 1));
  if (a > b) throw std::invalid_argument("--N-range: start exceeds end");
  std::vector<int> out;
  for (int n = a; n <= b; ++n) out.push_back(n);
  return out;
}

std::size_t k_for(const RunConfig& cfg, int N) {
  if (cfg.kN) return *cfg.kN;
  return k_schedule(N, cfg.schedule_p).k;
}

void require_frozen_phase(const RunConfig& cfg) {
  for (double b : cfg.betas) {
    if (!(b > beta_c())) {
      throw RegimeError("beta = " + num(b) + " (beta/beta_c = " + num(b / beta_c()) +
                        ") must exceed beta_c = " + num(beta_c()));
    }
  }
}

ReplicaOptions replica_options(const RunConfig& cfg, std::uint64_t stream) {
  return ReplicaOptions{substream_seed(cfg.seed, stream), cfg.workers};
}

using CheckFn = std::function<std::vector<BoundReport>(const ReplicaOptions&, std::size_t)>;

struct CheckEntry {
  std::string name;
  std::size_t default_replicas;
  CheckFn run;
};

std::size_t pick(std::size_t requested, std::size_t fallback) {
  return requested ? requested : fallback;
}

const std::vector<CheckEntry>& suite() {
  static const std::vector<CheckEntry> entries = [] {
    const double two_bc = 2.0 * beta_c();
    std::vector<CheckEntry> e;
    e.push_back({"lemma21", 100000, [](const ReplicaOptions& o, std::size_t r) {
                   return std::vector<BoundReport>{lemma21_check(std::uint64_t{1} << 20, 1.0, r, o),
                                                   lemma21_check(std::uint64_t{1} << 40, 1.0, r, o)};
                 }});
    e.push_back({"ladder_deviation", 100000, [](const ReplicaOptions& o, std::size_t r) {
                   return std::vector<BoundReport>{ladder_deviation_check(16, 0.5, r, o),
                                                   ladder_deviation_check(400, 0.5, r, o)};
                 }});
    e.push_back({"lemma22", 100000, [](const ReplicaOptions& o, std::size_t r) {
                   return std::vector<BoundReport>{lemma22_check(2.0, 0.8, 2, r, o),
                                                   lemma22_check(2.0, 2.0, 4, r, o)};
                 }});
    e.push_back({"z_tail", 100000, [](const ReplicaOptions& o, std::size_t r) {
                   std::vector<BoundReport> out;
                   for (double x : {5.0, 10.0}) {
                     for (auto& rep : z_tail_check(x, r, o)) out.push_back(rep);
                   }
                   return out;
                 }});
    e.push_back({"bernstein", 100000, [](const ReplicaOptions& o, std::size_t r) {
                   return std::vector<BoundReport>{bernstein_check(0.3, 10000, 3.0, r, o)};
                 }});
    e.push_back({"prop22", 1000, [](const ReplicaOptions& o, std::size_t r) {
                   const RegimeParams p = regime(std::uint64_t{1} << 20, 0.5, 0.25, 1.0, 0.3);
                   return std::vector<BoundReport>{prop22_check(p, 320, r, o).report};
                 }});
    e.push_back({"refined_spacing", 1000, [](const ReplicaOptions& o, std::size_t r) {
                   return std::vector<BoundReport>{
                       refined_spacing_check(std::uint64_t{1} << 30, 1000, 0.5, r, o)};
                 }});
    e.push_back({"prop23", 100000, [](const ReplicaOptions& o, std::size_t r) {
                   return std::vector<BoundReport>{
                       prop23_event_check(std::uint64_t{1} << 20, 320, 1.0, 1.0, r, o)};
                 }});
    e.push_back({"zeta_mean", 100000, [two_bc](const ReplicaOptions& o, std::size_t r) {
                   auto reps = zeta_mean_check(two_bc, 100, r, o);
                   return std::vector<BoundReport>(reps.begin(), reps.end());
                 }});
    e.push_back({"supermartingale", 100000, [two_bc](const ReplicaOptions& o, std::size_t r) {
                   return std::vector<BoundReport>{supermartingale_check(two_bc, 10, r, o)};
                 }});
    e.push_back({"lemma32", 1000000, [](const ReplicaOptions& o, std::size_t r) {
                   auto reps = lemma32_check(5, 2, r, o);
                   return std::vector<BoundReport>(reps.begin(), reps.end());
                 }});
    return e;
  }();
  return entries;
}

std::string params_text(const BoundReport& r) {
  std::string s;
  for (const auto& [k, v] : r.params) {
    if (!s.empty()) s += ';';
    s += k + "=" + num(v);
  }
  return s;
}

nlohmann::json summary_json(const MeasureSummary& s) {
  return {{"w_max", s.w_max},   {"participation", s.participation},
          {"top1", s.top1},     {"top2", s.top2},
          {"top5", s.top5},     {"top10", s.top10},
          {"entropy", s.entropy}};
}

void write_free_energy(const RunConfig& cfg, std::ostream& out) {
  const auto rows = cmd_free_energy(cfg);
  if (cfg.format == Format::csv) {
    out << "# remgibbs-csv v1 free-energy\n";
    out << "N,beta,mean_FN,sd_FN,F_limit\n";
    for (const auto& r : rows) {
      out << r.N << ',' << num(r.beta) << ',' << num(r.mean_FN) << ',' << num(r.sd_FN) << ','
          << num(r.F_limit) << '\n';
    }
    return;
  }
  for (const auto& r : rows) {
    out << nlohmann::json{{"N", r.N},
                          {"beta", r.beta},
                          {"mean_FN", r.mean_FN},
                          {"sd_FN", r.sd_FN},
                          {"F_limit", r.F_limit}}
               .dump()
        << '\n';
  }
}

int write_verify(const RunConfig& cfg, std::ostream& out) {
  const auto reports = cmd_verify(cfg);
  bool all = true;
  if (cfg.format == Format::csv) {
    out << "# remgibbs-csv v1 verify\n";
    out << "name,empirical,se,bound,holds,params\n";
  }
  for (const auto& r : reports) {
    all = all && r.holds;
    if (cfg.format == Format::csv) {
      out << r.name << ',' << num(r.empirical) << ',' << num(r.se) << ',' << num(r.bound) << ','
          << (r.holds ? "true" : "false") << ',' << params_text(r) << '\n';
    } else {
      nlohmann::json params = nlohmann::json::object();
      for (const auto& [k, v] : r.params) params[k] = v;
      out << nlohmann::json{{"name", r.name},   {"empirical", r.empirical}, {"se", r.se},
                            {"bound", r.bound}, {"holds", r.holds},         {"params", params}}
                 .dump()
          << '\n';
    }
  }
  return all ? 0 : 1;
}

void write_simulate(const RunConfig& cfg, std::ostream& out) {
  require_frozen_phase(cfg);
  if (cfg.method != "v1" && cfg.method != "v2") {
    throw std::invalid_argument("--method must be v1 or v2");
  }
  if (cfg.format == Format::csv) {
    out << "# remgibbs-csv v1 simulate\n";
    out << "replica,N,beta_over_betac,kN,w_max,participation,top1,top2,top5,top10,entropy\n";
  }
  for (int N : cfg.Ns) {
    for (std::size_t bi = 0; bi < cfg.betas.size(); ++bi) {
      const double beta = cfg.betas[bi];
      const std::size_t k = k_for(cfg, N);
      auto sims = run_replicas(cfg.replicas, replica_options(cfg, 0), [&](std::size_t, Stream& rng) {
        return cfg.method == "v1" ? simulate_v1(N, beta, k, rng)
                                  : simulate_v2(N, beta, k, rng, cfg.weights);
      });
      for (std::size_t r = 0; r < sims.size(); ++r) {
        const auto& g = sims[r];
        const MeasureSummary s = summarize(g);
        if (cfg.format == Format::csv) {
          out << r << ',' << N << ',' << num(beta / beta_c()) << ',' << k << ',' << num(s.w_max)
              << ',' << num(s.participation) << ',' << num(s.top1) << ',' << num(s.top2) << ','
              << num(s.top5) << ',' << num(s.top10) << ',' << num(s.entropy) << '\n';
          continue;
        }
        nlohmann::json configs = nlohmann::json::array();
        for (const auto& c : g.configs) configs.push_back(hex_word(c.bits));
        out << nlohmann::json{{"replica", r},
                              {"N", N},
                              {"beta_over_betac", beta / beta_c()},
                              {"kN", k},
                              {"configs", configs},
                              {"weights", g.measure.weights()},
                              {"summary", summary_json(s)}}
                   .dump()
            << '\n';
      }
    }
  }
}

void write_compare(const RunConfig& cfg, std::ostream& out) {
  const CompareResult result = cmd_compare(cfg);
  if (cfg.format == Format::csv) {
    out << "# remgibbs-csv v1 compare\n";
    out << "replica,N,beta_over_betac,kN,tv,bound,omega_N,w_max_exact,w_max_sim,"
           "participation_exact,participation_sim\n";
    for (const auto& r : result.rows) {
      out << r.replica << ',' << r.N << ',' << num(r.beta_over_betac) << ',' << r.kN << ','
          << num(r.tv) << ',' << num(r.bound) << ',' << (r.omega ? 1 : 0) << ','
          << num(r.w_max_exact) << ',' << num(r.w_max_sim) << ',' << num(r.participation_exact)
          << ',' << num(r.participation_sim) << '\n';
    }
    for (const auto& k : result.ks) {
      out << "# ks N=" << k.N << " beta_over_betac=" << num(k.beta_over_betac)
          << " functional=" << k.functional << " statistic=" << num(k.statistic)
          << " pvalue=" << num(k.pvalue) << '\n';
    }
    return;
  }
  for (const auto& r : result.rows) {
    out << nlohmann::json{{"replica", r.replica},
                          {"N", r.N},
                          {"beta_over_betac", r.beta_over_betac},
                          {"kN", r.kN},
                          {"tv", r.tv},
                          {"bound", r.bound},
                          {"omega_N", r.omega},
                          {"w_max_exact", r.w_max_exact},
                          {"w_max_sim", r.w_max_sim},
                          {"participation_exact", r.participation_exact},
                          {"participation_sim", r.participation_sim}}
               .dump()
        << '\n';
  }
  for (const auto& k : result.ks) {
    out << nlohmann::json{{"ks", {{"N", k.N},
                                  {"beta_over_betac", k.beta_over_betac},
                                  {"functional", k.functional},
                                  {"statistic", k.statistic},
                                  {"pvalue", k.pvalue}}}}
               .dump()
        << '\n';
  }
}

}  // namespace

const std::vector<std::string>& verify_check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& e : suite()) n.push_back(e.name);
    return n;
  }();
  return names;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& help_out) {
  CLI::App app{"Random energy model: Gibbs-measure simulation and bound verification"};
  RunConfig cfg;
  std::string cmd;
  app.add_option("--cmd", cmd, "free-energy | verify | simulate | compare")
      ->required()
      ->check(CLI::IsMember({"free-energy", "verify", "simulate", "compare"}));
  std::vector<int> Ns;
  auto* n_opt = app.add_option("--N", Ns, "system size(s), comma separated")->delimiter(',');
  std::string range;
  auto* range_opt = app.add_option("--N-range", range, "inclusive range a:b");
  n_opt->excludes(range_opt);
  std::vector<double> betas;
  auto* beta_opt = app.add_option("--beta", betas, "inverse temperature(s)")->delimiter(',');
  std::vector<double> ratios;
  auto* ratio_opt =
      app.add_option("--beta-over-betac", ratios, "inverse temperature(s) in units of beta_c")
          ->delimiter(',');
  beta_opt->excludes(ratio_opt);
  std::string schedule = "p1";
  app.add_option("--schedule", schedule, "k_N = ceil(N log_p N)")
      ->check(CLI::IsMember({"p1", "p2", "p3"}));
  std::size_t kN = 0;
  auto* k_opt = app.add_option("--kN", kN, "override the k_N schedule")->check(CLI::PositiveNumber);
  auto* rep_opt = app.add_option("--replicas", cfg.replicas)->check(CLI::PositiveNumber);
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "master seed (default $REMGIBBS_SEED or 42)");
  app.add_option("--workers", cfg.workers)->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "output file (default stdout)");
  std::string format = "csv";
  app.add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  auto* checks_opt =
      app.add_option("--checks", cfg.checks, "verify: comma separated subset of the suite")
          ->delimiter(',');
  app.add_option("--method", cfg.method, "simulator for simulate/compare")
      ->check(CLI::IsMember({"v1", "v2"}));
  std::string weights = "published";
  app.add_option("--weights", weights, "ladder weights for v2: published | renyi")
      ->check(CLI::IsMember({"published", "renyi"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    help_out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw std::invalid_argument(e.what());
  }

  if (cmd == "free-energy") cfg.command = Command::free_energy;
  if (cmd == "verify") cfg.command = Command::verify;
  if (cmd == "simulate") cfg.command = Command::simulate;
  if (cmd == "compare") cfg.command = Command::compare;
  if (*range_opt) cfg.Ns = parse_range(range);
  if (*n_opt) cfg.Ns = Ns;
  if (*beta_opt) cfg.betas = betas;
  if (*ratio_opt) {
    for (double r : ratios) cfg.betas.push_back(r * beta_c());
  }
  if (cfg.betas.empty()) cfg.betas = {2.0 * beta_c()};
  cfg.schedule_p = schedule[1] - '0';
  if (*k_opt) cfg.kN = kN;
  cfg.replicas_given = rep_opt->count() > 0;
  if (*seed_opt) {
    cfg.seed = seed;
  } else if (const char* env = std::getenv("REMGIBBS_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("REMGIBBS_SEED is not an unsigned integer");
    }
  }
  cfg.format = format == "json" ? Format::json : Format::csv;
  cfg.checks_given = checks_opt->count() > 0;
  cfg.checks.erase(std::remove(cfg.checks.begin(), cfg.checks.end(), std::string{}),
                   cfg.checks.end());
  cfg.weights = weights == "renyi" ? Mu2Weights::renyi : Mu2Weights::published;
  return cfg;
}

std::vector<FreeEnergyRow> cmd_free_energy(const RunConfig& cfg) {
  std::vector<FreeEnergyRow> rows;
  for (int N : cfg.Ns) {
    if (N < 1 || N > kMaxBruteForceN) {
      throw ResourceError("free-energy: N = " + std::to_string(N) + " exceeds the brute-force cap 25");
    }
    // Same replica streams for every N and beta (common random numbers).
    auto values = run_replicas(cfg.replicas, replica_options(cfg, 0), [&](std::size_t, Stream& rng) {
      const EnergySample s = sample_energies(N, rng);
      std::vector<double> f;
      for (double b : cfg.betas) f.push_back(free_energy(s, b));
      return f;
    });
    for (std::size_t bi = 0; bi < cfg.betas.size(); ++bi) {
      std::vector<double> column;
      for (const auto& v : values) column.push_back(v[bi]);
      const MeanEstimate est = estimate_mean(column);
      rows.push_back({N, cfg.betas[bi], est.mean, std::sqrt(sample_variance(column)),
                      free_energy_limit(cfg.betas[bi])});
    }
  }
  return rows;
}

std::vector<BoundReport> cmd_verify(const RunConfig& cfg) {
  std::vector<std::string> selected = cfg.checks;
  if (!cfg.checks_given) selected = verify_check_names();
  if (selected.empty()) throw std::invalid_argument("no checks selected");
  for (const auto& name : selected) {
    const auto& names = verify_check_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw std::invalid_argument("unknown check: " + name);
    }
  }
  std::vector<BoundReport> reports;
  const auto& entries = suite();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (std::find(selected.begin(), selected.end(), entries[i].name) == selected.end()) continue;
    // Each check has its own stream family, so a subset reproduces the full run.
    const std::size_t replicas =
        cfg.replicas_given ? cfg.replicas : entries[i].default_replicas;
    for (auto& r : entries[i].run(replica_options(cfg, i + 1), pick(replicas, 1))) {
      reports.push_back(std::move(r));
    }
  }
  return reports;
}

CompareResult cmd_compare(const RunConfig& cfg) {
  require_frozen_phase(cfg);
  if (cfg.method != "v1" && cfg.method != "v2") {
    throw std::invalid_argument("--method must be v1 or v2");
  }
  CompareResult result;
  for (int N : cfg.Ns) {
    if (N < 4 || N > kCompareMaxN) {
      throw ResourceError("compare: N = " + std::to_string(N) + " must lie in [4, 22]");
    }
    const std::size_t k = k_for(cfg, N);
    if (k > (std::size_t{1} << N)) throw DomainError("compare: kN exceeds 2^N");
    for (double beta : cfg.betas) {
      auto rows = run_replicas(cfg.replicas, replica_options(cfg, 0), [&](std::size_t r, Stream& rng) {
        const EnergySample sample = sample_energies(N, rng);
        const DiscreteMeasure gibbs = gibbs_measure(sample, beta);
        CompareRow row;
        row.replica = r;
        row.N = N;
        row.beta_over_betac = beta / beta_c();
        row.kN = k;
        row.tv = total_variation(gibbs, mu1(sample, beta, k));
        row.bound = corollary31_bound(k, beta);
        row.omega = omega_indicator(sample, k, rng);
        const MeasureSummary exact = summarize(gibbs);
        const SimulatedGibbs sim = cfg.method == "v1" ? simulate_v1(N, beta, k, rng)
                                                      : simulate_v2(N, beta, k, rng, cfg.weights);
        const MeasureSummary approx = summarize(sim);
        row.w_max_exact = exact.w_max;
        row.w_max_sim = approx.w_max;
        row.participation_exact = exact.participation;
        row.participation_sim = approx.participation;
        return row;
      });
      std::vector<double> we, ws, pe, ps;
      for (const auto& row : rows) {
        we.push_back(row.w_max_exact);
        ws.push_back(row.w_max_sim);
        pe.push_back(row.participation_exact);
        ps.push_back(row.participation_sim);
      }
      const double d_w = ks_statistic(we, ws);
      const double d_p = ks_statistic(pe, ps);
      result.ks.push_back({N, beta / beta_c(), "w_max", d_w, ks_pvalue(d_w, we.size(), ws.size())});
      result.ks.push_back(
          {N, beta / beta_c(), "participation", d_p, ks_pvalue(d_p, pe.size(), ps.size())});
      for (auto& row : rows) result.rows.push_back(row);
    }
  }
  return result;
}

int run(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::free_energy:
      write_free_energy(cfg, out);
      return 0;
    case Command::verify:
      return write_verify(cfg, out);
    case Command::simulate:
      write_simulate(cfg, out);
      return 0;
    case Command::compare:
      write_compare(cfg, out);
      return 0;
  }
  return 2;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse_args(argc, argv, out);
    if (!cfg) return 0;
    if (cfg->out.empty()) return run(*cfg, out);
    std::ofstream file(cfg->out);
    if (!file) throw std::runtime_error("cannot open " + cfg->out);
    return run(*cfg, file);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace remgibbs::cli

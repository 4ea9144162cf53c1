// Command-line front end: probability tables, z-measures, trajectories,
// spectra, embeddings, degenerate limits and the verification suite.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "jackchain/harness.hpp"

namespace {

using namespace jackchain;
using nlohmann::json;

constexpr int kExitVerification = 1;
constexpr int kExitConfig = 2;

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ConfigError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

json probs_to_json(const ProbabilityMap& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[k.str()] = to_string(v);
  return out;
}

Partition diagram_arg(const RunConfig& cfg) {
  if (cfg.diagram.empty()) throw ConfigError("--diagram is required");
  try {
    return Partition::parse(cfg.diagram);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

int cmd_probs(const RunConfig& cfg) {
  const Params p = cfg.params();
  const Partition lambda = diagram_arg(cfg);
  Output out(cfg.out);
  const ProbabilityMap down = lambda.empty() ? ProbabilityMap{} : down_probs(lambda, p.theta());
  const ProbabilityMap up = up_probs(lambda, p);
  if (cfg.format == "csv") {
    out.stream() << "direction,partition,prob,prob_float\n";
    for (const auto& [k, v] : down) out.stream() << "down,\"" << k.str() << "\"," << to_string(v) << ',' << v.get_d() << '\n';
    for (const auto& [k, v] : up) out.stream() << "up,\"" << k.str() << "\"," << to_string(v) << ',' << v.get_d() << '\n';
  } else {
    out.stream() << json{{"diagram", lambda.str()}, {"params", p.str()}, {"down", probs_to_json(down)}, {"up", probs_to_json(up)}}.dump(2)
                 << '\n';
  }
  return 0;
}

int cmd_zmeasure(const RunConfig& cfg) {
  const auto m = z_weights(cfg.max_n, cfg.params());
  Output out(cfg.out);
  if (cfg.format == "csv") {
    write_measure_csv(out.stream(), m);
  } else {
    json w = json::object();
    for (std::size_t i = 0; i < m.support.size(); ++i) w[m.support[i].str()] = to_string(m.weights[i]);
    out.stream() << json{{"n", m.n}, {"weights", w}}.dump(2) << '\n';
  }
  return 0;
}

int cmd_simulate(const RunConfig& cfg) {
  Output out(cfg.out);
  write_trajectory_csv(out.stream(), cfg.params(), cfg.max_n, cfg.samples, std::max(cfg.degree, 1), cfg.seed);
  return 0;
}

json spectrum_json(const std::vector<SpectrumEntry>& table) {
  json rows = json::array();
  for (const auto& e : table)
    rows.push_back({{"m", e.m}, {"eigenvalue", to_string(e.eigenvalue)}, {"multiplicity_predicted", e.predicted},
                    {"multiplicity_observed", e.observed}});
  return rows;
}

int cmd_spectrum(const RunConfig& cfg, const std::string& mode) {
  const Params p = cfg.params();
  std::vector<SpectrumEntry> table;
  try {
    if (mode == "chain") {
      if (cfg.max_n > kDefaultChainSpectrumBound) throw ConfigError("chain spectrum limited to --max-n <= 7");
      table = exact_spectrum(cfg.max_n, p);
    } else {
      if (cfg.degree > kDefaultGeneratorSpectrumBound) throw ConfigError("generator spectrum limited to --degree <= 8");
      table = spectrum_check(cfg.degree, p);
    }
  } catch (const FactorizationMismatch& e) {
    std::cerr << json{{"error", "factorization_mismatch"}, {"detail", e.what()}}.dump() << '\n';
    return kExitVerification;
  }
  Output out(cfg.out);
  if (cfg.format == "csv") write_spectrum_csv(out.stream(), table);
  else out.stream() << spectrum_json(table).dump(2) << '\n';
  if (!spectrum_matches(table)) {
    std::cerr << json{{"error", "multiplicity_mismatch"}, {"table", spectrum_json(table)}}.dump() << '\n';
    return kExitVerification;
  }
  return 0;
}

int cmd_embed(const RunConfig& cfg) {
  const Params p = cfg.params();
  std::vector<Partition> diagrams = cfg.diagram.empty() ? enumerate_level(cfg.max_n) : std::vector<Partition>{diagram_arg(cfg)};
  Output out(cfg.out);
  if (cfg.format == "csv") {
    write_embedding_csv(out.stream(), diagrams, p.theta());
    return 0;
  }
  json rows = json::array();
  for (const auto& l : diagrams) {
    const auto w = embed(l, p.theta());
    json a = json::array(), b = json::array();
    for (const auto& x : w.alpha()) a.push_back(to_string(x));
    for (const auto& x : w.beta()) b.push_back(to_string(x));
    rows.push_back({{"partition", l.str()}, {"alpha", a}, {"beta", b}});
  }
  out.stream() << rows.dump(2) << '\n';
  return 0;
}

int cmd_verify(const RunConfig& cfg) {
  const auto records = run_checks(check_registry(), cfg);
  Output out(cfg.out);
  if (cfg.format == "csv") write_report_csv(out.stream(), records);
  else out.stream() << report_json(records).dump(2) << '\n';
  if (!any_failed(records)) return 0;
  std::vector<CheckRecord> failed;
  for (const auto& r : records)
    if (r.status == Status::fail) failed.push_back(r);
  std::cerr << json{{"failures", report_json(failed)}}.dump() << '\n';
  return kExitVerification;
}

int cmd_limit(const RunConfig& cfg, const std::string& kind_name, const std::string& alpha_text, const std::string& tau_text) {
  const LimitKind kind = kind_name == "petrov" ? LimitKind::petrov : LimitKind::ethier_kurtz;
  Rational alpha, tau;
  try {
    alpha = parse_rational(alpha_text);
    tau = parse_rational(tau_text);
    (void)build_limit(kind, alpha, tau);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  const auto tr = limit_trace(kind, alpha, tau);
  json trace = json::array();
  for (std::size_t i = 0; i < tr.t.size(); ++i) trace.push_back({{"t", to_string(tr.t[i])}, {"max_deviation", tr.deviation[i]}});
  Output out(cfg.out);
  out.stream() << json{{"kind", kind_name},
                       {"alpha", to_string(alpha)},
                       {"tau", to_string(tau)},
                       {"trace", trace},
                       {"extrapolated_gap", tr.extrapolated_gap},
                       {"limit_operator", operator_to_json(build_limit(kind, alpha, tau, 4))}}
                      .dump(2)
               << '\n';
  return tr.extrapolated_gap <= 1e-9 ? 0 : kExitVerification;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--theta", cfg.theta, "Jack parameter, p/q");
  sub->add_option("--sum-zz", cfg.sum_zz, "z + z', p/q");
  sub->add_option("--prod-zz", cfg.prod_zz, "z z', p/q");
  sub->add_option("--max-n", cfg.max_n, "level (bound)");
  sub->add_option("--degree", cfg.degree, "degree bound or moment order");
  sub->add_option("--samples", cfg.samples, "Monte Carlo samples or steps");
  sub->add_option("--seed", cfg.seed, "64-bit seed");
  sub->add_option("--out", cfg.out, "output file (default stdout)");
  sub->add_option("--format", cfg.format, "csv or json");
  sub->add_flag("--strict-stat", cfg.strict_stat, "treat statistical warnings as failures");
  sub->add_option("--diagram", cfg.diagram, "partition such as [3,3,1]");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Up-down chains on Young diagrams with Jack parameter"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string mode = "chain", limit_kind = "ek", alpha = "0", tau = "1";

  const char* names[] = {"probs", "zmeasure", "simulate", "spectrum", "embed", "verify", "limit"};
  const char* help[] = {"up/down probabilities of a diagram", "z-measure weights on level n",
                        "trajectory of the up-down chain", "exact spectrum of the chain or the generator",
                        "embedding of diagrams into the Thoma simplex", "run the named verification suite",
                        "degenerate limits of the pre-generator"};
  std::map<std::string, CLI::App*> subs;
  for (int i = 0; i < 7; ++i) {
    subs[names[i]] = app.add_subcommand(names[i], help[i]);
    add_common(subs[names[i]], cfg);
  }
  subs["spectrum"]->add_option("--mode", mode, "chain or generator")->check(CLI::IsMember({"chain", "generator"}));
  subs["limit"]->add_option("--kind", limit_kind, "ek or petrov")->check(CLI::IsMember({"ek", "petrov"}));
  subs["limit"]->add_option("--alpha", alpha, "two-parameter alpha, p/q");
  subs["limit"]->add_option("--tau", tau, "tau, p/q");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    cfg.validate();
    if (subs["probs"]->parsed()) return cmd_probs(cfg);
    if (subs["zmeasure"]->parsed()) return cmd_zmeasure(cfg);
    if (subs["simulate"]->parsed()) return cmd_simulate(cfg);
    if (subs["spectrum"]->parsed()) return cmd_spectrum(cfg, mode);
    if (subs["embed"]->parsed()) return cmd_embed(cfg);
    if (subs["verify"]->parsed()) return cmd_verify(cfg);
    if (subs["limit"]->parsed()) return cmd_limit(cfg, limit_kind == "petrov" ? "petrov" : "ek", alpha, tau);
  } catch (const ConfigError& e) {
    std::cerr << json{{"error", "config"}, {"detail", e.what()}}.dump() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "runtime"}, {"detail", e.what()}}.dump() << '\n';
    return kExitVerification;
  }
  return kExitConfig;
}

#pragma once

// Run configuration, the tableau-counting oracle, and the named verification
// suite behind `jackchain verify`.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "chain.hpp"
#include "generator.hpp"
#include "kerov.hpp"
#include "linalg.hpp"
#include "partitions.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "regular.hpp"
#include "series.hpp"
#include "thoma.hpp"
#include "zmeasure.hpp"

namespace jackchain {

// ---------------------------------------------------------------------------
// Standard Young tableaux by the branching recursion.

inline constexpr int kTableauOracleBound = 12;

namespace detail {
inline std::int64_t tableau_count(const Partition& lambda, std::map<Partition, std::int64_t>& memo) {
  if (lambda.empty()) return 1;
  if (auto it = memo.find(lambda); it != memo.end()) return it->second;
  std::int64_t total = 0;
  for (const auto& mu : covers(lambda, Direction::down)) total += tableau_count(mu, memo);
  memo.emplace(lambda, total);
  return total;
}
}  // namespace detail

inline std::int64_t tableau_oracle(const Partition& lambda) {
  if (static_cast<int>(lambda.size()) > kTableauOracleBound)
    throw std::invalid_argument("tableau_oracle: diagram larger than " + std::to_string(kTableauOracleBound));
  std::map<Partition, std::int64_t> memo;
  return detail::tableau_count(lambda, memo);
}

/// n! / prod of hook lengths.
inline std::int64_t hook_length_count(const Partition& lambda) {
  const Partition t = lambda.transpose();
  mpz_class num = 1, den = 1;
  for (int k = 2; k <= lambda.size(); ++k) num *= k;
  for (std::size_t i = 0; i < lambda.length(); ++i)
    for (int j = 0; j < lambda.rows()[i]; ++j)
      den *= (lambda.rows()[i] - j - 1) + (t.rows()[static_cast<std::size_t>(j)] - static_cast<int>(i) - 1) + 1;
  return mpz_class(num / den).get_si();
}

// ---------------------------------------------------------------------------
// Configuration.

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxLevel = 10;
inline constexpr int kMaxDegree = 8;

struct RunConfig {
  std::string command = "verify";
  std::string theta = "1";
  std::string sum_zz = "1";
  std::string prod_zz = "5";
  int max_n = 6;
  int degree = 4;
  int samples = 100000;
  std::uint64_t seed = 20240601;
  std::string out;
  std::string format = "json";
  bool strict_stat = false;
  std::string diagram;

  Params params() const {
    try {
      const Rational t = parse_rational(theta);
      if (t <= 0) throw ConfigError("theta must be positive");
      return Params(JackTheta(t), parse_rational(sum_zz), parse_rational(prod_zz));
    } catch (const ParseError& e) {
      throw ConfigError(e.what());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }

  void validate() const {
    (void)params();
    if (max_n < 1 || max_n > kMaxLevel) throw ConfigError("--max-n must lie in [1, " + std::to_string(kMaxLevel) + "]");
    if (degree < 0 || degree > kMaxDegree) throw ConfigError("--degree must lie in [0, " + std::to_string(kMaxDegree) + "]");
    if (samples < 1) throw ConfigError("--samples must be positive");
    if (format != "json" && format != "csv") throw ConfigError("--format must be json or csv");
  }
};

// ---------------------------------------------------------------------------
// Check registry.

enum class Status { pass, fail, warn, skip };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::warn: return "warn";
    default: return "skip";
  }
}

struct CheckResult {
  Status status = Status::pass;
  std::string detail;
};

struct CheckRecord {
  std::string check_name;
  Status status;
  std::string detail;
  double elapsed_ms;
};

struct NamedCheck {
  std::string name;
  bool statistical;
  std::function<CheckResult(const RunConfig&)> run;
};

namespace checks {

inline CheckResult ok(std::string d = {}) { return {Status::pass, std::move(d)}; }
inline CheckResult bad(std::string d) { return {Status::fail, std::move(d)}; }

/// First failure message wins; `expect` records it.
class Collector {
 public:
  void expect(bool cond, const std::string& what) {
    ++count_;
    if (!cond && first_.empty()) first_ = what;
  }
  CheckResult result() const {
    if (first_.empty()) return ok(std::to_string(count_) + " cases");
    return bad(first_);
  }

 private:
  std::size_t count_ = 0;
  std::string first_;
};

inline std::vector<Partition> diagrams_up_to(int n, int from = 0) {
  std::vector<Partition> out;
  for (int k = from; k <= n; ++k)
    for (auto& l : enumerate_level(k)) out.push_back(std::move(l));
  return out;
}

/// Brute-force partition counts p(n) by the parts-at-most-k recurrence.
inline std::int64_t partition_number(int n) {
  std::vector<std::int64_t> p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int m = k; m <= n; ++m) p[static_cast<std::size_t>(m)] += p[static_cast<std::size_t>(m - k)];
  return p[static_cast<std::size_t>(n)];
}

// --- partitions -------------------------------------------------------------

inline CheckResult enumeration_counts(const RunConfig&) {
  Collector c;
  for (int n = 0; n <= kMaxLevel; ++n) {
    const auto level = enumerate_level(n);
    c.expect(static_cast<std::int64_t>(level.size()) == partition_number(n), "wrong count at n=" + std::to_string(n));
    c.expect(std::is_sorted(level.rbegin(), level.rend()) && std::adjacent_find(level.begin(), level.end()) == level.end(),
             "level " + std::to_string(n) + " not strictly reverse lexicographic");
  }
  return c.result();
}

inline CheckResult transpose_involution(const RunConfig&) {
  Collector c;
  for (const auto& l : diagrams_up_to(kMaxLevel)) c.expect(l.transpose().transpose() == l, l.str());
  return c.result();
}

inline CheckResult cover_counts(const RunConfig&) {
  Collector c;
  for (const auto& l : diagrams_up_to(kMaxLevel)) {
    const auto d = l.distinct_rows();
    c.expect(covers(l, Direction::down).size() == d, "down covers of " + l.str());
    c.expect(covers(l, Direction::up).size() == d + 1, "up covers of " + l.str());
  }
  return c.result();
}

inline CheckResult cover_transpose(const RunConfig&) {
  Collector c;
  for (const auto& l : diagrams_up_to(kMaxLevel)) {
    std::vector<Partition> a;
    for (const auto& mu : covers(l, Direction::down)) a.push_back(mu.transpose());
    auto b = covers(l.transpose(), Direction::down);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    c.expect(a == b, l.str());
  }
  return c.result();
}

inline CheckResult updown_connected(const RunConfig&) {
  Collector c;
  for (int n = 1; n <= kMaxLevel; ++n) c.expect(updown_graph_connected(n), "disconnected at n=" + std::to_string(n));
  return c.result();
}

// --- kerov ------------------------------------------------------------------

inline CheckResult interlacing(const RunConfig& cfg) {
  const Params p = cfg.params();
  Collector c;
  for (const auto& l : diagrams_up_to(cfg.max_n)) {
    const auto k = kerov_coords(l, p.theta());
    bool strict = k.xs.size() == k.ys.size() + 1;
    Rational balance = 0;
    for (std::size_t i = 0; i < k.xs.size(); ++i) {
      balance += k.xs[i];
      if (i < k.ys.size()) {
        balance -= k.ys[i];
        strict = strict && k.xs[i] > k.ys[i] && k.ys[i] > k.xs[i + 1];
      }
    }
    c.expect(strict && balance == 0, l.str());
  }
  return c.result();
}

inline CheckResult area_is_theta_n(const RunConfig& cfg) {
  const Params p = cfg.params();
  Collector c;
  for (const auto& l : diagrams_up_to(cfg.max_n)) {
    const auto k = kerov_coords(l, p.theta());
    Rational s = 0;
    for (const auto& v : pi_down(k)) {
      c.expect(v > 0, "nonpositive pi_down at " + l.str());
      s += v;
    }
    const Rational expected = p.theta().value() * static_cast<long>(l.size());
    c.expect(area(k) == expected && s == expected, l.str());
  }
  return c.result();
}

inline CheckResult partial_fractions(const RunConfig& cfg) {
  const Params p = cfg.params();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<long> num(-997, 997), den(1, 89);
  Collector c;
  for (const auto& l : diagrams_up_to(cfg.max_n)) {
    const auto k = kerov_coords(l, p.theta());
    const auto pd = pi_down(k), pu = pi_up(k);
    for (int trial = 0; trial < 3; ++trial) {
      Rational u(num(rng), den(rng));
      u.canonicalize();
      bool clash = false;
      for (const auto& x : k.xs) clash = clash || x == u;
      for (const auto& y : k.ys) clash = clash || y == u;
      if (clash) continue;
      Rational px = 1, py = 1;
      for (const auto& x : k.xs) px *= u - x;
      for (const auto& y : k.ys) py *= u - y;
      Rational down = u, up = 0;
      for (std::size_t j = 0; j < pd.size(); ++j) down -= pd[j] / (u - k.ys[j]);
      for (std::size_t i = 0; i < pu.size(); ++i) up += pu[i] / (u - k.xs[i]);
      c.expect(px / py == down, "down expansion at " + l.str());
      c.expect(py / px == up, "up expansion at " + l.str());
    }
  }
  return c.result();
}

inline CheckResult pi_up_moments(const RunConfig& cfg) {
  const Params p = cfg.params();
  Collector c;
  for (const auto& l : diagrams_up_to(cfg.max_n)) {
    const auto k = kerov_coords(l, p.theta());
    const auto pu = pi_up(k);
    Rational m0 = 0, m1 = 0, m2 = 0;
    for (std::size_t i = 0; i < pu.size(); ++i) {
      m0 += pu[i];
      m1 += pu[i] * k.xs[i];
      m2 += pu[i] * k.xs[i] * k.xs[i];
    }
    c.expect(m0 == 1 && m1 == 0 && m2 == area(k), l.str());
  }
  return c.result();
}

inline CheckResult down_normalization(const RunConfig& cfg) {
  const Params p = cfg.params();
  Collector c;
  for (const auto& l : diagrams_up_to(cfg.max_n, 1)) {
    Rational s = 0;
    const auto probs = down_probs(l, p.theta());
    for (const auto& [mu, w] : probs) {
      c.expect(w > 0 && w <= 1, "probability out of (0,1] at " + l.str());
      s += w;
    }
    c.expect(probs.size() == covers(l, Direction::down).size() && s == 1, l.str());
  }
  return c.result();
}

inline CheckResult up_normalization(const RunConfig& cfg) {
  const Params p = cfg.params();
  Collector c;
  for (const auto& l : diagrams_up_to(cfg.max_n)) {
    Rational s = 0;
    const auto probs = up_probs(l, p);
    for (const auto& [nu, w] : probs) s += w;
    c.expect(probs.size() == covers(l, Direction::up).size() && s == 1, l.str());
  }
  return c.result();
}

inline CheckResult duality(const RunConfig& cfg) {
  Collector c;
  for (const Rational& t : {Rational(1, 2), Rational(2), Rational(1, 3)}) {
    const JackTheta th(t);
    for (const auto& l : diagrams_up_to(std::min(cfg.max_n, 8), 1)) {
      const auto a = down_probs(l, th);
      const auto b = down_probs(l.transpose(), th.inverse());
      for (const auto& [mu, w] : a) c.expect(b.at(mu.transpose()) == w, l.str() + " theta=" + to_string(t));
    }
  }
  return c.result();
}

inline CheckResult coordinate_duality(const RunConfig& cfg) {
  const Params p = cfg.params();
  const JackTheta& th = p.theta();
  Collector c;
  for (const auto& l : diagrams_up_to(cfg.max_n)) {
    const auto a = kerov_coords(l, th);
    const auto b = kerov_coords(l.transpose(), th.inverse());
    std::vector<Rational> xs, ys;
    for (auto it = a.xs.rbegin(); it != a.xs.rend(); ++it) xs.push_back(-*it / th.value());
    for (auto it = a.ys.rbegin(); it != a.ys.rend(); ++it) ys.push_back(-*it / th.value());
    c.expect(b.xs == xs && b.ys == ys, l.str());
  }
  return c.result();
}

inline CheckResult tableau_ratio(const RunConfig& cfg) {
  const JackTheta one(Rational(1));
  Collector c;
  for (const auto& l : diagrams_up_to(std::min(cfg.max_n, 8), 1)) {
    const auto dl = tableau_oracle(l);
    c.expect(dl == hook_length_count(l), "hook length disagrees at " + l.str());
    for (const auto& [mu, w] : down_probs(l, one)) c.expect(w == Rational(tableau_oracle(mu)) / dl, l.str());
  }
  return c.result();
}

inline CheckResult up_positivity(const RunConfig& cfg) {
  const Params p = cfg.params();
  const Series s = classify_series(p);
  if (s == Series::degenerate_or_invalid) return {Status::skip, "parameters are neither principal nor complementary"};
  Collector c;
  for (const auto& l : diagrams_up_to(kMaxLevel))
    for (const auto& [nu, w] : up_probs(l, p)) c.expect(w > 0, l.str() + " -> " + nu.str());
  auto r = c.result();
  r.detail += std::string(" (") + series_name(s) + ")";
  return r;
}

inline CheckResult classify_examples(const RunConfig&) {
  const JackTheta one(Rational(1));
  Collector c;
  c.expect(classify_series(Params(one, 1, 5)) == Series::principal, "(1, 5) should be principal");
  c.expect(classify_series(Params(one, 1, Rational(3, 16))) == Series::complementary, "(1, 3/16) should be complementary");
  c.expect(classify_series(Params(one, 3, 2)) == Series::degenerate_or_invalid, "(3, 2) should be degenerate");
  return c.result();
}

// --- zmeasure ---------------------------------------------------------------

inline CheckResult total_mass(const RunConfig& cfg) {
  ZMeasureTable t(cfg.params());
  Collector c;
  for (int n = 0; n <= cfg.max_n; ++n) c.expect(t.level(n).total() == 1, "n=" + std::to_string(n));
  return c.result();
}

inline CheckResult coherency(const RunConfig& cfg) {
  const Params p = cfg.params();
  ZMeasureTable t(p);
  Collector c;
  for (int n = 1; n <= cfg.max_n; ++n) c.expect(push_down(t.level(n), p.theta()) == t.level(n - 1), "n=" + std::to_string(n));
  return c.result();
}

inline CheckResult intertwining(const RunConfig& cfg) {
  const Params p = cfg.params();
  ZMeasureTable t(p);
  Collector c;
  for (int n = 0; n < cfg.max_n; ++n)
    for (const auto& l : enumerate_level(n))
      for (const auto& [nu, up] : up_probs(l, p))
        c.expect(t.level(n).at(l) * up == t.level(n + 1).at(nu) * down_probs(nu, p.theta()).at(l), l.str() + " -> " + nu.str());
  return c.result();
}

inline CheckResult measure_positivity(const RunConfig& cfg) {
  const Params p = cfg.params();
  if (classify_series(p) == Series::degenerate_or_invalid)
    return {Status::skip, "parameters are neither principal nor complementary"};
  ZMeasureTable t(p);
  Collector c;
  for (int n = 0; n <= cfg.max_n; ++n)
    for (const auto& w : t.level(n).weights) c.expect(w > 0, "nonpositive weight at n=" + std::to_string(n));
  return c.result();
}

/// E[q_k o iota] under M^(n) for n = 4, 6, 8; successive differences should shrink.
inline CheckResult pushforward_moments(const RunConfig& cfg) {
  const Params p = cfg.params();
  ZMeasureTable t(p);
  std::ostringstream os;
  bool shrinking = true;
  for (int k = 1; k <= 3; ++k) {
    std::vector<double> e;
    for (int n : {4, 6, 8}) {
      const auto& m = t.level(n);
      Rational acc = 0;
      for (std::size_t i = 0; i < m.support.size(); ++i)
        acc += m.weights[i] * moments(embed(m.support[i], p.theta()), p.theta(), k)[static_cast<std::size_t>(k - 1)];
      e.push_back(acc.get_d());
    }
    const double d1 = std::abs(e[1] - e[0]), d2 = std::abs(e[2] - e[1]);
    shrinking = shrinking && d2 <= d1;
    os << "q" << k << ": " << e[0] << ", " << e[1] << ", " << e[2] << "; ";
  }
  return {shrinking ? Status::pass : Status::fail, os.str()};
}

// --- chain ------------------------------------------------------------------

inline CheckResult row_sums(const RunConfig& cfg) {
  const Params p = cfg.params();
  Collector c;
  for (int n = 1; n <= std::min(cfg.max_n, 7); ++n) {
    const auto t = transition_matrix(n, p);
    const auto a = generator_matrix(n, p);
    for (std::size_t i = 0; i < t.level.size(); ++i) {
      Rational s = 0, sa = 0;
      for (std::size_t j = 0; j < t.level.size(); ++j) {
        s += t.entries(i, j);
        sa += a(i, j);
        if (t.entries(i, j) != 0 && i != j)
          c.expect(updown_adjacent(t.level[i], t.level[j]), "entry off the adjacency graph at n=" + std::to_string(n));
      }
      c.expect(s == 1 && sa == 0, "row " + t.level[i].str());
    }
  }
  return c.result();
}

inline CheckResult stationarity_and_balance(const RunConfig& cfg) {
  const Params p = cfg.params();
  ZMeasureTable z(p);
  Collector c;
  for (int n = 1; n <= std::min(cfg.max_n, 7); ++n) {
    const auto t = transition_matrix(n, p);
    const auto& m = z.level(n);
    for (std::size_t j = 0; j < t.level.size(); ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < t.level.size(); ++i) {
        s += m.weights[i] * t.entries(i, j);
        c.expect(m.weights[i] * t.entries(i, j) == m.weights[j] * t.entries(j, i), "balance at n=" + std::to_string(n));
      }
      c.expect(s == m.weights[j], "stationarity at " + t.level[j].str());
    }
  }
  return c.result();
}

inline CheckResult chain_spectrum(const RunConfig& cfg) {
  const Params p = cfg.params();
  std::ostringstream os;
  bool good = true;
  for (int n = 1; n <= std::min(cfg.max_n, kDefaultChainSpectrumBound); ++n) {
    try {
      const auto table = exact_spectrum(n, p);
      for (const auto& e : table) good = good && e.predicted == e.observed;
    } catch (const FactorizationMismatch& e) {
      return bad("n=" + std::to_string(n) + ": " + e.what());
    }
  }
  os << "levels 1.." << std::min(cfg.max_n, kDefaultChainSpectrumBound);
  return {good ? Status::pass : Status::fail, good ? os.str() : "multiplicity mismatch"};
}

/// 1 - eps_n sigma_m as eigenvalues of T_n: checked on T_n directly.
inline CheckResult transition_spectrum(const RunConfig& cfg) {
  const Params p = cfg.params();
  for (int n = 1; n <= std::min(cfg.max_n, kDefaultChainSpectrumBound); ++n) {
    const UPoly chi = characteristic_polynomial(transition_matrix(n, p).entries);
    std::vector<Rational> roots{Rational(1)};
    for (int m = 2; m <= n; ++m) roots.push_back(Rational(1) - scale_factor(n, p) * sigma(m, p));
    try {
      (void)factor_against(chi, roots);
    } catch (const FactorizationMismatch& e) {
      return bad("n=" + std::to_string(n) + ": " + e.what());
    }
  }
  return ok();
}

/// Empirical frequencies within `k` standard errors of exact probabilities.
inline bool within_errors(const std::vector<Rational>& exact, const std::vector<std::int64_t>& counts, std::int64_t total,
                          double k, std::string& worst) {
  bool good = true;
  double worst_z = 0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    const double p = exact[i].get_d();
    const double f = static_cast<double>(counts[i]) / static_cast<double>(total);
    const double se = std::sqrt(p * (1 - p) / static_cast<double>(total));
    const double z = se > 0 ? std::abs(f - p) / se : (f == p ? 0.0 : HUGE_VAL);
    worst_z = std::max(worst_z, z);
    good = good && z <= k;
  }
  worst = "max |z| = " + std::to_string(worst_z);
  return good;
}

inline constexpr double kStandardErrors = 4.0;

inline CheckResult sampler_rows(const RunConfig& cfg) {
  const Params p = cfg.params();
  if (classify_series(p) == Series::degenerate_or_invalid) return {Status::skip, "probabilities may be negative"};
  const auto t = transition_matrix(3, p);
  std::ostringstream os;
  bool good = true;
  for (std::uint64_t s = 0; s < 3; ++s) {
    Rng rng(cfg.seed + s);
    for (std::size_t i = 0; i < t.level.size(); ++i) {
      std::vector<std::int64_t> counts(t.level.size(), 0);
      for (int k = 0; k < cfg.samples; ++k) ++counts[t.level.index(step(t.level[i], p, rng))];
      std::vector<Rational> row;
      for (std::size_t j = 0; j < t.level.size(); ++j) row.push_back(t.entries(i, j));
      std::string w;
      good = within_errors(row, counts, cfg.samples, kStandardErrors, w) && good;
      os << "seed+" << s << " " << t.level[i].str() << ": " << w << "; ";
    }
  }
  return {good ? Status::pass : Status::fail, os.str()};
}

inline CheckResult growth_sampler(const RunConfig& cfg) {
  const Params p = cfg.params();
  if (classify_series(p) == Series::degenerate_or_invalid) return {Status::skip, "weights may be negative"};
  const auto m = z_weights(3, p);
  const Level level(3);
  std::ostringstream os;
  bool good = true;
  for (std::uint64_t s = 0; s < 3; ++s) {
    Rng rng(cfg.seed + 100 + s);
    std::vector<std::int64_t> counts(level.size(), 0);
    for (int k = 0; k < cfg.samples; ++k) ++counts[level.index(grow_sample(3, p, rng))];
    std::string w;
    good = within_errors(m.weights, counts, cfg.samples, kStandardErrors, w) && good;
    os << "seed+" << s << ": " << w << "; ";
  }
  return {good ? Status::pass : Status::fail, os.str()};
}

// --- regular ----------------------------------------------------------------

inline constexpr int kSeriesLevel = 6;

inline CheckResult h2_and_e2(const RunConfig& cfg) {
  const Params p = cfg.params();
  Collector c;
  for (const auto& l : diagrams_up_to(kSeriesLevel)) {
    const auto h = h_values(l, p.theta(), 4);
    const auto e = e_tilde_values(l, p.theta(), 4);
    const Rational tn = p.theta().value() * static_cast<long>(l.size());
    c.expect(h[0] == 0 && e[0] == 0 && h[1] == tn && e[1] == h[1], l.str());
    c.expect(frak_p(1, l, p.theta()) == 0 && frak_p(2, l, p.theta()) == 2 * h[1], "frak-p at " + l.str());
    c.expect(p_star(1, l, p.theta()) == static_cast<long>(l.size()), "p*_1 at " + l.str());
  }
  return c.result();
}

inline CheckResult newton_consistency(const RunConfig& cfg) {
  const Params p = cfg.params();
  constexpr std::size_t order = 9;
  Collector c;
  for (const auto& l : diagrams_up_to(kSeriesLevel)) {
    TruncatedSeries<Rational> lg(order);
    for (std::size_t m = 1; m < order; ++m) lg[m] = frak_p(static_cast<int>(m), l, p.theta()) / static_cast<long>(m);
    c.expect(lg.exp_nilpotent().coeffs() == h_series(kerov_coords(l, p.theta()), order).coeffs(), l.str());
  }
  return c.result();
}

inline CheckResult phi_identity(const RunConfig& cfg) {
  const Params p = cfg.params();
  Collector c;
  for (const auto& l : diagrams_up_to(kSeriesLevel)) c.expect(phi_check(l, p.theta()), l.str());
  return c.result();
}

inline CheckResult box_ratios(const RunConfig& cfg) {
  const Params p = cfg.params();
  Collector c;
  for (const auto& l : diagrams_up_to(kSeriesLevel)) {
    const auto k = kerov_coords(l, p.theta());
    for (std::size_t i = 0; i < k.xs.size(); ++i) c.expect(add_box_ratio_check(l, i, p.theta()), "add at " + l.str());
    for (std::size_t j = 0; j < k.ys.size(); ++j) c.expect(remove_box_ratio_check(l, j, p.theta()), "remove at " + l.str());
  }
  return c.result();
}

inline CheckResult moment_identities(const RunConfig& cfg) {
  const Params p = cfg.params();
  Collector c;
  for (const auto& l : diagrams_up_to(kSeriesLevel)) {
    const auto k = kerov_coords(l, p.theta());
    const auto pu = pi_up(k), pd = pi_down(k);
    const auto h = h_values(l, p.theta(), 6);
    const auto e = e_tilde_values(l, p.theta(), 8);
    for (unsigned m = 0; m <= 6; ++m) {
      Rational su = 0, sd = 0;
      for (std::size_t i = 0; i < pu.size(); ++i) su += pu[i] * rpow(k.xs[i], m);
      for (std::size_t j = 0; j < pd.size(); ++j) sd += pd[j] * rpow(k.ys[j], m);
      const Rational hm = m == 0 ? Rational(1) : h[m - 1];
      c.expect(su == hm, "up moment " + std::to_string(m) + " at " + l.str());
      c.expect(sd == e[m + 1], "down moment " + std::to_string(m) + " at " + l.str());
    }
  }
  return c.result();
}

inline CheckResult frak_p_top_degree(const RunConfig& cfg) {
  const Params p = cfg.params();
  const JackTheta& th = p.theta();
  Collector c;
  for (int m = 2; m <= 5; ++m) {
    const auto values = tabulate(0, 7, [&](const Partition& l) { return frak_p(m, l, th); });
    const auto f = interpolate(values, m - 1, th);
    c.expect(f == frak_p_poly(m), "interpolant differs from the series expansion, m=" + std::to_string(m));
    c.expect(top_term(f, th) == SymFunction::variable(m - 1) * (th.value() * m), "top term, m=" + std::to_string(m));
  }
  for (int m = 1; m <= 4; ++m)
    for (const auto& l : diagrams_up_to(kSeriesLevel))
      c.expect(evaluate(p_star_poly(m, th), l, th) == p_star(m, l, th), "p*_" + std::to_string(m) + " at " + l.str());
  return c.result();
}

inline CheckResult transpose_closure(const RunConfig& cfg) {
  const Params p = cfg.params();
  const JackTheta& th = p.theta();
  Collector c;
  for (const auto& mono : monomial_basis<HTraits>(3)) {
    const auto f = ShiftedSymPoly::monomial(mono);
    const auto values = tabulate(0, 7, [&](const Partition& l) { return evaluate(f, l.transpose(), th); });
    try {
      (void)interpolate(values, std::max(f.degree(), 0), th.inverse());
      c.expect(true, f.str());
    } catch (const std::exception& e) {
      c.expect(false, f.str() + ": " + e.what());
    }
  }
  return c.result();
}

inline CheckResult text_roundtrip(const RunConfig& cfg) {
  const Params p = cfg.params();
  Collector c;
  for (const auto& mono : monomial_basis<HTraits>(4)) {
    const auto f = p_star_poly(static_cast<int>(mono.size()) + 1, p.theta()) + ShiftedSymPoly::monomial(mono, Rational(-3, 7));
    c.expect(ShiftedSymPoly::parse(f.str()) == f, f.str());
  }
  for (const auto& l : diagrams_up_to(5)) c.expect(Partition::parse(l.str()) == l, l.str());
  return c.result();
}

// --- generator --------------------------------------------------------------

inline CheckResult a_basics(const RunConfig& cfg) {
  const Params p = cfg.params();
  const auto a = build_A(p);
  const Rational& t = p.theta().value();
  Collector c;
  c.expect(a.apply(QPoly(1)).is_zero(), "A 1 != 0");
  const Rational lead = Rational(1) - t + p.sum_zz();
  const QPoly q1 = QPoly::variable(1);
  c.expect(a.apply(q1) == QPoly(2 * lead) - q1 * (2 * (1 + p.tau())), "A q1");
  const QPoly v = q1 - QPoly(Rational(lead / (1 + p.tau())));
  c.expect(a.apply(v) == v * (-sigma(2, p)), "q1 - c is not an eigenvector");
  for (const auto& mono : monomial_basis<QTraits>(6)) {
    const auto f = QPoly::monomial(mono);
    c.expect(a.apply(f).degree() <= f.degree(), "degree raised on " + f.str());
  }
  return c.result();
}

inline CheckResult square_field_polarization(const RunConfig& cfg) {
  const Params p = cfg.params();
  const auto a = build_A(p);
  const auto basis = monomial_basis<QTraits>(5);
  Collector c;
  c.expect(square_field(QPoly::variable(1), QPoly::variable(1)) ==
               (QPoly::variable(2) - QPoly::variable(1) * QPoly::variable(1)) * Rational(4),
           "Gamma(q1, q1)");
  for (const auto& mf : basis)
    for (const auto& mg : basis) {
      const auto f = QPoly::monomial(mf), g = QPoly::monomial(mg);
      if (f.degree() + g.degree() > 7) continue;
      const QPoly lhs = a.apply(f * g) - f * a.apply(g) - g * a.apply(f) + f * g * a.apply(QPoly(1));
      c.expect(lhs == square_field(f, g) * Rational(2), f.str() + ", " + g.str());
      c.expect(square_field(f, g) == square_field(g, f), "symmetry " + f.str() + ", " + g.str());
    }
  return c.result();
}

inline CheckResult b_structure(const RunConfig& cfg) {
  const Params p = cfg.params();
  const auto b = build_B(p, 9);
  Collector c;
  try {
    const auto restricted = restrict_to_quotient(b);
    c.expect(max_coefficient_gap(restricted, build_A(p, 8)) == 0, "restriction of B differs from A");
  } catch (const InvariantViolation& e) {
    c.expect(false, e.what());
  }
  for (const auto& mono : monomial_basis<PTraits>(6)) {
    const auto f = SymFunction::monomial(mono);
    const auto g = b.apply(f);
    c.expect(g.is_zero() || g.component(f.degree()) == g, "B not homogeneous on " + f.str());
  }
  const Rational& t = p.theta().value();
  const auto p1 = SymFunction::variable(1), p2 = SymFunction::variable(2);
  c.expect(b.apply(p2) == p1 * p1 * (2 * (1 - t + p.sum_zz())) - p2 * (2 * (1 + p.tau())), "B p2");
  return c.result();
}

inline CheckResult e_diagonal(const RunConfig& cfg) {
  const Params p = cfg.params();
  const int m = std::min(cfg.degree + 2, 6);
  const auto basis = monomial_basis<QTraits>(m);
  const auto mat = matrix_on_filtered(build_A(p), m);
  Collector c;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const int di = QPoly::monomial_degree(basis[i]), dj = QPoly::monomial_degree(basis[j]);
      if (di > dj) c.expect(mat(i, j) == 0, "filtration broken");
      if (di == dj) c.expect(mat(i, j) == (i == j ? Rational(-sigma(di, p)) : Rational(0)), "diagonal block at degree " + std::to_string(di));
    }
  return c.result();
}

inline CheckResult generator_spectrum(const RunConfig& cfg) {
  const Params p = cfg.params();
  const int m = std::min(cfg.degree + 2, kDefaultGeneratorSpectrumBound);
  try {
    const auto table = spectrum_check(m, p);
    if (!spectrum_matches(table)) return bad("multiplicity mismatch at degree " + std::to_string(m));
  } catch (const FactorizationMismatch& e) {
    return bad(e.what());
  }
  return ok("degree <= " + std::to_string(m));
}

inline std::vector<ShiftedSymPoly> operator_test_functions(int degree) {
  std::vector<ShiftedSymPoly> out;
  for (const auto& mono : monomial_basis<HTraits>(std::min(degree, 4))) out.push_back(ShiftedSymPoly::monomial(mono));
  return out;
}

inline CheckResult du_top(const RunConfig& cfg) {
  const Params p = cfg.params();
  Collector c;
  for (const auto& f : operator_test_functions(std::min(cfg.degree, 3))) {
    const auto rep = verify_DU_top(f, p);
    c.expect(rep.down.pass, "D on " + f.str() + ": " + rep.down.detail);
    c.expect(rep.up.pass, "U on " + f.str() + ": " + rep.up.detail);
  }
  return c.result();
}

inline CheckResult btilde_top_check(const RunConfig& cfg) {
  const Params p = cfg.params();
  Collector c;
  for (const auto& f : operator_test_functions(std::min(cfg.degree, 3))) {
    const auto rep = verify_Btilde(f, p);
    c.expect(rep.pass, f.str() + ": " + rep.detail);
  }
  return c.result();
}

/// sum_lambda M(lambda) [(A_n F) G - F (A_n G)](lambda) over pairs of h-monomials.
inline CheckResult finite_n_symmetry(const RunConfig& cfg) {
  const Params p = cfg.params();
  ZMeasureTable z(p);
  const auto fs = operator_test_functions(4);
  Collector c;
  for (int n = 1; n <= std::min(cfg.max_n, 7); ++n) {
    const auto a = generator_matrix(n, p);
    const Level level(n);
    const auto& m = z.level(n);
    std::vector<std::vector<Rational>> vals, avals;
    for (const auto& f : fs) {
      std::vector<Rational> v;
      for (const auto& l : level.items()) v.push_back(evaluate(f, l, p.theta()));
      avals.push_back(a.apply(v));
      vals.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < fs.size(); ++i)
      for (std::size_t j = i + 1; j < fs.size(); ++j) {
        Rational s = 0;
        for (std::size_t k = 0; k < level.size(); ++k)
          s += m.weights[k] * (avals[i][k] * vals[j][k] - vals[i][k] * avals[j][k]);
        c.expect(s == 0, "n=" + std::to_string(n) + " " + fs[i].str() + ", " + fs[j].str());
      }
  }
  return c.result();
}

inline CheckResult gamma_positivity(const RunConfig& cfg) {
  const Params p = cfg.params();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<long> coef(-9, 9);
  const auto basis = monomial_basis<QTraits>(3);
  std::vector<QPoly> gammas;
  for (int trial = 0; trial < 5; ++trial) {
    QPoly f;
    for (const auto& mono : basis) f.add_term(mono, Rational(coef(rng)));
    gammas.push_back(square_field(f, f));
  }
  double worst = 0;
  for (int n = 1; n <= 20; ++n)
    for (const auto& l : enumerate_level(n)) {
      const auto w = embed(l, p.theta());
      const auto q = moments(w, p.theta(), 6);
      for (const auto& g : gammas)
        worst = std::min(worst, g.evaluate<double>([&](int k) { return q[static_cast<std::size_t>(k - 1)].get_d(); }));
    }
  return {worst >= -1e-12 ? Status::pass : Status::fail, "min Gamma(F,F) = " + std::to_string(worst)};
}

inline constexpr double kLimitTolerance = 1e-9;

inline CheckResult degenerate_limits(const RunConfig&) {
  Collector c;
  c.expect(max_coefficient_gap(build_limit(LimitKind::petrov, 0, 2), build_limit(LimitKind::ethier_kurtz, 0, 2)) == 0,
           "two-parameter operator at alpha=0 differs from Ethier-Kurtz");
  std::ostringstream os;
  for (const auto& [kind, alpha] : {std::pair{LimitKind::ethier_kurtz, Rational(0)}, std::pair{LimitKind::petrov, Rational(1, 4)}}) {
    const auto tr = limit_trace(kind, alpha, 1);
    bool monotone = true;
    for (std::size_t i = 1; i < tr.deviation.size(); ++i) monotone = monotone && tr.deviation[i] <= tr.deviation[i - 1];
    const double rate = tr.deviation.back() / tr.t.back().get_d();
    c.expect(monotone, "deviation not decreasing");
    c.expect(tr.extrapolated_gap <= kLimitTolerance, "extrapolated limit off by " + std::to_string(tr.extrapolated_gap));
    os << (kind == LimitKind::petrov ? "two-parameter" : "Ethier-Kurtz") << ": deviation " << tr.deviation.back()
       << " at t=2^-20 (" << rate << " t), extrapolated gap " << tr.extrapolated_gap << "; ";
  }
  auto r = c.result();
  if (r.status == Status::pass) r.detail = os.str();
  return r;
}

// --- thoma ------------------------------------------------------------------

inline CheckResult thoma_moments(const RunConfig& cfg) {
  const Params p = cfg.params();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> len(0, 4), num(0, 12);
  Collector c;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> xs;
    const int k = len(rng) + len(rng);
    for (int i = 0; i < k; ++i) xs.push_back(Rational(num(rng)) / 100);
    const auto split = xs.begin() + static_cast<long>(xs.size() / 2);
    std::vector<Rational> alpha(xs.begin(), split), beta(split, xs.end());
    std::sort(alpha.rbegin(), alpha.rend());
    std::sort(beta.rbegin(), beta.rend());
    const ThomaPoint w(alpha, beta);
    c.expect(moments(w, p.theta(), 6) == atomic_moments(w, p.theta(), 6), "trial " + std::to_string(trial));
  }
  return c.result();
}

inline CheckResult embedding_checks(const RunConfig& cfg) {
  const Params p = cfg.params();
  Collector c;
  for (int n = 1; n <= 8; ++n) {
    std::vector<std::pair<std::vector<Rational>, std::vector<Rational>>> seen;
    for (const auto& l : enumerate_level(n)) {
      const auto e = embed_areas(l, p.theta());
      Rational s = 0;
      for (const auto& a : e.a) s += a;
      for (const auto& b : e.b) s += b;
      c.expect(s == n && e.point.gamma() == 0, "areas at " + l.str());
      seen.emplace_back(e.point.alpha(), e.point.beta());
    }
    std::sort(seen.begin(), seen.end());
    c.expect(std::adjacent_find(seen.begin(), seen.end()) == seen.end(), "not injective at n=" + std::to_string(n));
  }
  return c.result();
}

inline CheckResult asymptotics_decay(const RunConfig& cfg) {
  const Params p = cfg.params();
  std::ostringstream os;
  bool good = true;
  for (const int k : {3, 4}) {
    const auto f = ShiftedSymPoly::variable(k);
    std::vector<std::pair<int, double>> pts;
    for (int n = 4; n <= std::max(cfg.max_n + 2, 8); ++n) pts.emplace_back(n, asymptotics_error(f, p.theta(), n).get_d());
    const auto v = decay_verdict(pts);
    good = good && v.pass(-0.4);
    os << "h" << k << ": ";
    if (v.identically_zero) os << "error identically zero; ";
    else os << "slope " << v.slope << (v.nonincreasing ? "" : ", not monotone") << "; ";
  }
  return {good ? Status::pass : Status::fail, os.str()};
}

}  // namespace checks

inline std::vector<NamedCheck> check_registry() {
  using namespace checks;
  return {
      {"partitions.enumeration_counts", false, enumeration_counts},
      {"partitions.transpose_involution", false, transpose_involution},
      {"partitions.cover_counts", false, cover_counts},
      {"partitions.cover_transpose", false, cover_transpose},
      {"partitions.updown_connected", false, updown_connected},
      {"kerov.interlacing", false, interlacing},
      {"kerov.area_is_theta_n", false, area_is_theta_n},
      {"kerov.partial_fractions", false, partial_fractions},
      {"kerov.pi_up_moments", false, pi_up_moments},
      {"kerov.down_normalization", false, down_normalization},
      {"kerov.up_normalization", false, up_normalization},
      {"kerov.duality", false, duality},
      {"kerov.coordinate_duality", false, coordinate_duality},
      {"kerov.tableau_ratio", false, tableau_ratio},
      {"kerov.up_positivity", false, up_positivity},
      {"kerov.classify_examples", false, classify_examples},
      {"zmeasure.total_mass", false, total_mass},
      {"zmeasure.coherency", false, coherency},
      {"zmeasure.intertwining", false, intertwining},
      {"zmeasure.positivity", false, measure_positivity},
      {"zmeasure.pushforward_moments", true, pushforward_moments},
      {"chain.row_sums", false, row_sums},
      {"chain.stationarity_and_balance", false, stationarity_and_balance},
      {"chain.generator_spectrum", false, chain_spectrum},
      {"chain.transition_spectrum", false, transition_spectrum},
      {"chain.sampler_rows", true, sampler_rows},
      {"chain.growth_sampler", true, growth_sampler},
      {"regular.h2_and_e2", false, h2_and_e2},
      {"regular.newton_consistency", false, newton_consistency},
      {"regular.phi_identity", false, phi_identity},
      {"regular.box_ratios", false, box_ratios},
      {"regular.moment_identities", false, moment_identities},
      {"regular.frak_p_top_degree", false, frak_p_top_degree},
      {"regular.transpose_closure", false, transpose_closure},
      {"regular.text_roundtrip", false, text_roundtrip},
      {"generator.A_basics", false, a_basics},
      {"generator.square_field_polarization", false, square_field_polarization},
      {"generator.B_structure", false, b_structure},
      {"generator.E_diagonal", false, e_diagonal},
      {"generator.spectrum", false, generator_spectrum},
      {"generator.DU_top", false, du_top},
      {"generator.Btilde_top", false, btilde_top_check},
      {"generator.finite_n_symmetry", false, finite_n_symmetry},
      {"generator.gamma_positivity", false, gamma_positivity},
      {"generator.degenerate_limits", false, degenerate_limits},
      {"thoma.moments", false, thoma_moments},
      {"thoma.embedding", false, embedding_checks},
      {"thoma.asymptotics_decay", true, asymptotics_decay},
  };
}

/// Runs the checks on a pool of worker threads; results come back in registry order.
inline std::vector<CheckRecord> run_checks(const std::vector<NamedCheck>& suite, const RunConfig& cfg,
                                           unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<CheckRecord> out(suite.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < suite.size(); i = next++) {
      const auto start = std::chrono::steady_clock::now();
      CheckResult r;
      try {
        r = suite[i].run(cfg);
      } catch (const std::exception& e) {
        r = {Status::fail, std::string("exception: ") + e.what()};
      }
      if (suite[i].statistical && r.status == Status::fail && !cfg.strict_stat) r.status = Status::warn;
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      out[i] = {suite[i].name, r.status, r.detail, ms};
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < std::min<std::size_t>(threads, suite.size()); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return out;
}

inline bool any_failed(const std::vector<CheckRecord>& records) {
  return std::any_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.status == Status::fail; });
}

inline nlohmann::json report_json(const std::vector<CheckRecord>& records) {
  auto out = nlohmann::json::array();
  for (const auto& r : records)
    out.push_back({{"check_name", r.check_name}, {"status", status_name(r.status)}, {"detail", r.detail}, {"elapsed_ms", r.elapsed_ms}});
  return out;
}

inline void write_report_csv(std::ostream& os, const std::vector<CheckRecord>& records) {
  os << "check_name,status,detail,elapsed_ms\n";
  for (const auto& r : records) {
    std::string d = r.detail;
    std::replace(d.begin(), d.end(), '"', '\'');
    os << r.check_name << ',' << status_name(r.status) << ",\"" << d << "\"," << r.elapsed_ms << '\n';
  }
}

/// Trajectory of the up-down chain with moment coordinates of the embedded diagram.
inline void write_trajectory_csv(std::ostream& os, const Params& p, int n, int steps, int order, std::uint64_t seed) {
  Rng rng(seed);
  os << "# theta=" << to_string(p.theta().value()) << " sum_zz=" << to_string(p.sum_zz())
     << " prod_zz=" << to_string(p.prod_zz()) << " n=" << n << " seed=" << seed
     << " epsilon_n=" << to_string(scale_factor(n, p)) << '\n';
  os << "step,partition";
  for (int k = 1; k <= order; ++k) os << ",q_" << k;
  os << '\n';
  Partition lambda = grow_sample(n, p, rng);
  for (int s = 0; s <= steps; ++s) {
    if (s > 0) lambda = step(lambda, p, rng);
    os << s << ",\"" << lambda.str() << '"';
    for (const auto& q : moments(embed(lambda, p.theta()), p.theta(), order)) os << ',' << q.get_d();
    os << '\n';
  }
}

}  // namespace jackchain

#pragma once

// z-measures M^(n) on Y_n, built level by level from the up probabilities.

#include <cstddef>
#include <deque>
#include <map>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "kerov.hpp"
#include "partitions.hpp"
#include "rational.hpp"

namespace jackchain {

/// A measure on Y_n; weights are indexed by the canonical level order.
struct LevelMeasure {
  int n = 0;
  std::vector<Partition> support;  // enumerate_level(n)
  std::vector<Rational> weights;

  Rational total() const {
    Rational t = 0;
    for (const auto& w : weights) t += w;
    return t;
  }
  const Rational& at(const Partition& lambda) const {
    for (std::size_t i = 0; i < support.size(); ++i)
      if (support[i] == lambda) return weights[i];
    throw std::out_of_range("partition " + lambda.str() + " not on level");
  }
  bool operator==(const LevelMeasure& o) const { return n == o.n && weights == o.weights; }

  static LevelMeasure uniform(int n) {
    LevelMeasure m;
    m.n = n;
    m.support = enumerate_level(n);
    const Rational w = Rational(1) / static_cast<long>(m.support.size());
    m.weights.assign(m.support.size(), w);
    return m;
  }
};

/// Memoized z-measure levels for one parameter triple.
class ZMeasureTable {
 public:
  explicit ZMeasureTable(Params params) : params_(std::move(params)) {
    LevelMeasure m0;
    m0.n = 0;
    m0.support = enumerate_level(0);
    m0.weights = {Rational(1)};
    levels_.push_back(std::move(m0));
  }

  const Params& params() const noexcept { return params_; }

  const LevelMeasure& level(int n) {
    if (n < 0) throw std::invalid_argument("negative level");
    while (static_cast<int>(levels_.size()) <= n) extend();
    return levels_[static_cast<std::size_t>(n)];
  }

 private:
  void extend() {
    const LevelMeasure& prev = levels_.back();
    const Level next(prev.n + 1);
    LevelMeasure m;
    m.n = next.n();
    m.support = next.items();
    m.weights.assign(next.size(), Rational(0));
    for (std::size_t i = 0; i < prev.support.size(); ++i)
      for (const auto& [nu, p] : up_probs(prev.support[i], params_)) m.weights[next.index(nu)] += prev.weights[i] * p;
    levels_.push_back(std::move(m));
  }

  Params params_;
  std::deque<LevelMeasure> levels_;  // stable references while extending
};

inline LevelMeasure z_weights(int n, const Params& p) {
  ZMeasureTable t(p);
  return t.level(n);
}

/// M'(mu) = sum_{lambda -> mu} m(lambda) p_down(lambda, mu).
inline LevelMeasure push_down(const LevelMeasure& m, const JackTheta& theta) {
  if (m.n < 1) throw std::invalid_argument("push_down: level-0 measure has nowhere to go");
  const Level target(m.n - 1);
  LevelMeasure out;
  out.n = target.n();
  out.support = target.items();
  out.weights.assign(target.size(), Rational(0));
  for (std::size_t i = 0; i < m.support.size(); ++i)
    for (const auto& [mu, p] : down_probs(m.support[i], theta)) out.weights[target.index(mu)] += m.weights[i] * p;
  return out;
}

/// CSV: partition, weight_num, weight_den, weight_float.
inline void write_measure_csv(std::ostream& os, const LevelMeasure& m) {
  os << "partition,weight_num,weight_den,weight_float\n";
  for (std::size_t i = 0; i < m.support.size(); ++i)
    os << '"' << m.support[i].str() << "\"," << m.weights[i].get_num().get_str() << ','
       << m.weights[i].get_den().get_str() << ',' << m.weights[i].get_d() << '\n';
}

}  // namespace jackchain

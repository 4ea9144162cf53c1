#pragma once

// Young diagrams, the levels Y_n and one-box moves between them.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jackchain {

/// A Young diagram stored by its (weakly decreasing, positive) row lengths.
class Partition {
 public:
  Partition() = default;

  /// Trailing zeros are dropped; throws if rows increase or go negative.
  explicit Partition(std::vector<int> rows) : rows_(std::move(rows)) {
    while (!rows_.empty() && rows_.back() == 0) rows_.pop_back();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i] <= 0) throw std::invalid_argument("partition rows must be positive");
      if (i > 0 && rows_[i] > rows_[i - 1])
        throw std::invalid_argument("partition rows must be weakly decreasing");
    }
  }
  Partition(std::initializer_list<int> rows) : Partition(std::vector<int>(rows)) {}

  const std::vector<int>& rows() const noexcept { return rows_; }
  std::size_t length() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  int size() const noexcept { return std::accumulate(rows_.begin(), rows_.end(), 0); }

  /// Row length with 0-based index; 0 beyond the last row.
  int row(std::size_t i) const noexcept { return i < rows_.size() ? rows_[i] : 0; }

  Partition transpose() const {
    std::vector<int> cols(rows_.empty() ? 0 : static_cast<std::size_t>(rows_.front()), 0);
    for (int r : rows_)
      for (int j = 0; j < r; ++j) ++cols[static_cast<std::size_t>(j)];
    Partition out;
    out.rows_ = std::move(cols);
    return out;
  }

  /// Number of distinct row lengths, i.e. the number of removable boxes.
  std::size_t distinct_rows() const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (i == 0 || rows_[i] != rows_[i - 1]) ++k;
    return k;
  }

  /// Lexicographic on rows; canonical level order is the reverse of this.
  auto operator<=>(const Partition&) const = default;
  bool operator==(const Partition&) const = default;

  /// "[3,3,1]"; the empty diagram is "[]".
  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(rows_[i]);
    }
    return s + "]";
  }

  static Partition parse(std::string_view text) {
    std::string t;
    for (char c : text)
      if (c != ' ') t += c;
    if (t.size() < 2 || t.front() != '[' || t.back() != ']')
      throw std::invalid_argument("partition text must look like [3,3,1]");
    std::vector<int> rows;
    std::string body = t.substr(1, t.size() - 2);
    if (!body.empty()) {
      std::stringstream ss(body);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
          throw std::invalid_argument("bad partition entry '" + item + "'");
        rows.push_back(std::stoi(item));
      }
    }
    return Partition(std::move(rows));
  }

  /// Adds one box at the end of row `i` (0-based); throws if the result is not a diagram.
  Partition with_box_in_row(std::size_t i) const {
    if (i > rows_.size()) throw std::invalid_argument("with_box_in_row: row out of range");
    std::vector<int> rows = rows_;
    if (i == rows.size()) rows.push_back(0);
    ++rows[i];
    return Partition(std::move(rows));
  }

  /// Removes the last box of row `i` (0-based); throws if the result is not a diagram.
  Partition without_box_in_row(std::size_t i) const {
    if (i >= rows_.size()) throw std::invalid_argument("without_box_in_row: row out of range");
    std::vector<int> rows = rows_;
    --rows[i];
    if (i + 1 < rows.size() && rows[i] < rows[i + 1]) throw std::invalid_argument("without_box_in_row: box not removable");
    return Partition(std::move(rows));
  }

 private:
  std::vector<int> rows_;
};

/// All partitions of n in reverse lexicographic order: (n), (n-1,1), ..., (1^n).
inline std::vector<Partition> enumerate_level(int n) {
  if (n < 0) throw std::invalid_argument("level must be nonnegative");
  std::vector<Partition> out;
  if (n == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> a{n};
  while (true) {
    out.emplace_back(a);
    // Next partition in reverse lex order: find rightmost part > 1.
    int rem = 0;
    while (!a.empty() && a.back() == 1) {
      rem += 1;
      a.pop_back();
    }
    if (a.empty()) break;
    int k = --a.back();
    rem += 1;
    while (rem > k) {
      a.push_back(k);
      rem -= k;
    }
    a.push_back(rem);
  }
  return out;
}

enum class Direction { up, down };

/// Diagrams one box above (up) or below (down) `lambda`, in row order of the moved box.
inline std::vector<Partition> covers(const Partition& lambda, Direction direction) {
  std::vector<Partition> out;
  const auto& r = lambda.rows();
  if (direction == Direction::down) {
    for (std::size_t i = 0; i < r.size(); ++i)
      if (i + 1 == r.size() || r[i + 1] < r[i]) out.push_back(lambda.without_box_in_row(i));
  } else {
    for (std::size_t i = 0; i <= r.size(); ++i)
      if (i == 0 || lambda.row(i) < r[i - 1]) out.push_back(lambda.with_box_in_row(i));
  }
  return out;
}

/// True iff lambda != kappa and the two shapes differ by exactly two boxes.
inline bool updown_adjacent(const Partition& lambda, const Partition& kappa) {
  if (lambda.size() != kappa.size())
    throw std::invalid_argument("updown_adjacent: diagrams of different size");
  const std::size_t len = std::max(lambda.length(), kappa.length());
  int diff = 0;
  for (std::size_t i = 0; i < len; ++i) diff += std::abs(lambda.row(i) - kappa.row(i));
  return diff == 2;
}

/// Y_n with a position index, so level-indexed vectors and matrices agree on order.
class Level {
 public:
  explicit Level(int n) : n_(n), items_(enumerate_level(n)) {
    for (std::size_t i = 0; i < items_.size(); ++i) index_.emplace(items_[i], i);
  }
  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return items_.size(); }
  const Partition& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<Partition>& items() const noexcept { return items_; }
  std::size_t index(const Partition& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw std::out_of_range("partition " + p.str() + " not on level");
    return it->second;
  }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

 private:
  int n_;
  std::vector<Partition> items_;
  std::map<Partition, std::size_t> index_;
};

/// Connectivity of the one-box-displacement graph on Y_n (breadth-first search).
inline bool updown_graph_connected(int n) {
  Level level(n);
  std::vector<bool> seen(level.size(), false);
  std::queue<std::size_t> todo;
  seen[0] = true;
  todo.push(0);
  std::size_t reached = 1;
  while (!todo.empty()) {
    const auto i = todo.front();
    todo.pop();
    for (const auto& nu : covers(level[i], Direction::up))
      for (const auto& kappa : covers(nu, Direction::down)) {
        const auto j = level.index(kappa);
        if (!seen[j]) {
          seen[j] = true;
          ++reached;
          todo.push(j);
        }
      }
  }
  return reached == level.size();
}

}  // namespace jackchain

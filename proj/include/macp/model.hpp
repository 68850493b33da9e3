#pragma once

// Problem data model: the macrocell instance, caching policies, subsets of
// demand areas, and the per-area request probabilities derived from Poisson
// demand.
//
// Area numbering: area 0 is the region covered only by the macrocell base
// station (MBS); area n + 1 is the coverage area of small-cell base station
// (SCBS) n. SCBS indices are 0-based and index the rows of a policy.

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace macp {

using AreaId = std::size_t;

inline constexpr AreaId kMbsOnlyArea = 0;

// AreaSubset is a 64-bit mask, so at most 63 SCBSs plus the MBS-only area.
inline constexpr std::size_t kMaxScbs = 63;

constexpr AreaId area_of_scbs(std::size_t scbs) noexcept { return scbs + 1; }

// Dense row-major matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) {
        throw std::invalid_argument("matrix rows have unequal lengths");
      }
      std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + i * c);
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const T> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      out[r].assign(row(r).begin(), row(r).end());
    }
    return out;
  }

  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Probability of at least one Poisson arrival of intensity `rate` within a
/// period of length `deadline`: 1 - exp(-rate * deadline).
inline double request_probability(double rate, double deadline) {
  if (!(rate >= 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("request rate must be finite and non-negative");
  }
  if (!(deadline > 0.0) || !std::isfinite(deadline)) {
    throw std::invalid_argument("deadline must be finite and positive");
  }
  return -std::expm1(-rate * deadline);
}

// A set of demand areas drawn from {n0, 1..N}. Bit k set means area k
// generated at least one request.
class AreaSubset {
 public:
  constexpr AreaSubset() = default;
  constexpr explicit AreaSubset(std::uint64_t mask) noexcept : mask_(mask) {}

  static AreaSubset of(std::initializer_list<AreaId> areas) {
    AreaSubset s;
    for (AreaId a : areas) s = s.with(a);
    return s;
  }

  constexpr std::uint64_t mask() const noexcept { return mask_; }
  constexpr bool empty() const noexcept { return mask_ == 0; }
  constexpr std::size_t size() const noexcept {
    return static_cast<std::size_t>(std::popcount(mask_));
  }
  constexpr bool contains(AreaId area) const noexcept {
    return area < 64 && ((mask_ >> area) & 1U) != 0;
  }
  AreaSubset with(AreaId area) const {
    if (area >= 64) throw std::invalid_argument("area id out of range");
    return AreaSubset(mask_ | (std::uint64_t{1} << area));
  }

  std::vector<AreaId> areas() const {
    std::vector<AreaId> out;
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
      out.push_back(static_cast<AreaId>(std::countr_zero(m)));
    }
    return out;
  }

  friend constexpr bool operator==(AreaSubset, AreaSubset) = default;

 private:
  std::uint64_t mask_ = 0;
};

// Full problem description. Validated on construction and immutable after.
class Instance {
 public:
  // `demand` has num_scbs + 1 rows (row 0 is the MBS-only area) and one
  // column per file. Cache sizes larger than the catalog are clamped.
  Instance(std::vector<std::size_t> cache_size, double cost_backhaul,
           double cost_mbs_tx, std::vector<double> cost_scbs_tx,
           Matrix<double> demand, double deadline)
      : cache_size_(std::move(cache_size)),
        cost_backhaul_(cost_backhaul),
        cost_mbs_tx_(cost_mbs_tx),
        cost_scbs_tx_(std::move(cost_scbs_tx)),
        demand_(std::move(demand)),
        deadline_(deadline) {
    validate();
    for (auto& s : cache_size_) s = std::min(s, num_files());
    probability_ = Matrix<double>(demand_.rows(), demand_.cols());
    for (std::size_t a = 0; a < demand_.rows(); ++a) {
      for (std::size_t i = 0; i < demand_.cols(); ++i) {
        probability_(a, i) = macp::request_probability(demand_(a, i), deadline_);
      }
    }
  }

  std::size_t num_scbs() const noexcept { return cache_size_.size(); }
  std::size_t num_files() const noexcept { return demand_.cols(); }
  std::size_t num_areas() const noexcept { return demand_.rows(); }

  std::size_t cache_size(std::size_t scbs) const { return cache_size_.at(scbs); }
  const std::vector<std::size_t>& cache_sizes() const noexcept { return cache_size_; }

  double cost_backhaul() const noexcept { return cost_backhaul_; }
  double cost_mbs_tx() const noexcept { return cost_mbs_tx_; }
  /// c_B + c_W: the price of one MBS multicast.
  double mbs_cost() const noexcept { return cost_backhaul_ + cost_mbs_tx_; }
  double cost_scbs_tx(std::size_t scbs) const { return cost_scbs_tx_.at(scbs); }
  const std::vector<double>& costs_scbs_tx() const noexcept { return cost_scbs_tx_; }

  const Matrix<double>& demand() const noexcept { return demand_; }
  double rate(AreaId area, std::size_t file) const { return demand_(area, file); }
  double deadline() const noexcept { return deadline_; }

  /// p_{area,file,d}, precomputed.
  double request_probability(AreaId area, std::size_t file) const {
    return probability_(area, file);
  }

  /// Copy with a different deadline; every other field is kept.
  Instance with_deadline(double deadline) const {
    return Instance(cache_size_, cost_backhaul_, cost_mbs_tx_, cost_scbs_tx_,
                    demand_, deadline);
  }

  /// Copy with the same cache size at every SCBS.
  Instance with_uniform_cache(std::size_t size) const {
    return Instance(std::vector<std::size_t>(num_scbs(), size), cost_backhaul_,
                    cost_mbs_tx_, cost_scbs_tx_, demand_, deadline_);
  }

 private:
  void validate() const {
    const std::size_t n = cache_size_.size();
    if (n == 0) throw std::invalid_argument("instance needs at least one SCBS");
    if (n > kMaxScbs) {
      throw std::invalid_argument("at most " + std::to_string(kMaxScbs) +
                                  " SCBSs are supported");
    }
    if (demand_.cols() == 0) throw std::invalid_argument("instance needs at least one file");
    if (demand_.rows() != n + 1) {
      throw std::invalid_argument("demand must have num_scbs + 1 rows");
    }
    if (cost_scbs_tx_.size() != n) {
      throw std::invalid_argument("cost_scbs_tx must have num_scbs entries");
    }
    auto finite_nonneg = [](double v) { return std::isfinite(v) && v >= 0.0; };
    if (!finite_nonneg(cost_backhaul_) || !finite_nonneg(cost_mbs_tx_)) {
      throw std::invalid_argument("MBS costs must be finite and non-negative");
    }
    for (double c : cost_scbs_tx_) {
      if (!finite_nonneg(c)) {
        throw std::invalid_argument("SCBS costs must be finite and non-negative");
      }
      if (c > cost_mbs_tx_) {
        throw std::invalid_argument("SCBS transmission cost must not exceed cost_mbs_tx");
      }
    }
    for (double r : demand_.data()) {
      if (!finite_nonneg(r)) {
        throw std::invalid_argument("demand rates must be finite and non-negative");
      }
    }
    if (!(deadline_ > 0.0) || !std::isfinite(deadline_)) {
      throw std::invalid_argument("deadline must be finite and positive");
    }
  }

  std::vector<std::size_t> cache_size_;
  double cost_backhaul_;
  double cost_mbs_tx_;
  std::vector<double> cost_scbs_tx_;
  Matrix<double> demand_;
  double deadline_;
  Matrix<double> probability_;
};

// Binary placement matrix x_{ni}: one row per SCBS, one column per file.
// Ordering is lexicographic over the row-major entries.
class CachingPolicy {
 public:
  CachingPolicy() = default;
  CachingPolicy(std::size_t num_scbs, std::size_t num_files)
      : placement_(num_scbs, num_files, 0) {}

  static CachingPolicy empty_for(const Instance& instance) {
    return CachingPolicy(instance.num_scbs(), instance.num_files());
  }

  static CachingPolicy from_rows(const std::vector<std::vector<int>>& rows) {
    const std::size_t n = rows.size();
    const std::size_t files = n == 0 ? 0 : rows.front().size();
    CachingPolicy p(n, files);
    for (std::size_t s = 0; s < n; ++s) {
      if (rows[s].size() != files) {
        throw std::invalid_argument("policy rows have unequal lengths");
      }
      for (std::size_t i = 0; i < files; ++i) {
        if (rows[s][i] != 0 && rows[s][i] != 1) {
          throw std::invalid_argument("policy entries must be 0 or 1");
        }
        p.placement_(s, i) = static_cast<std::uint8_t>(rows[s][i]);
      }
    }
    return p;
  }

  std::size_t num_scbs() const noexcept { return placement_.rows(); }
  std::size_t num_files() const noexcept { return placement_.cols(); }

  bool cached(std::size_t scbs, std::size_t file) const {
    return placement_(scbs, file) != 0;
  }

  void place(std::size_t scbs, std::size_t file) { placement_(scbs, file) = 1; }
  void remove(std::size_t scbs, std::size_t file) { placement_(scbs, file) = 0; }

  CachingPolicy with(std::size_t scbs, std::size_t file) const {
    CachingPolicy copy = *this;
    copy.place(scbs, file);
    return copy;
  }

  std::size_t fill(std::size_t scbs) const {
    const auto r = placement_.row(scbs);
    return static_cast<std::size_t>(std::count(r.begin(), r.end(), std::uint8_t{1}));
  }

  std::span<const std::uint8_t> row(std::size_t scbs) const {
    return placement_.row(scbs);
  }

  std::vector<std::vector<int>> to_rows() const {
    std::vector<std::vector<int>> out(num_scbs(), std::vector<int>(num_files()));
    for (std::size_t s = 0; s < num_scbs(); ++s) {
      for (std::size_t i = 0; i < num_files(); ++i) out[s][i] = placement_(s, i);
    }
    return out;
  }

  /// Dimensions match and every row obeys its cache capacity.
  bool feasible_for(const Instance& instance) const {
    if (num_scbs() != instance.num_scbs() || num_files() != instance.num_files()) {
      return false;
    }
    for (std::size_t s = 0; s < num_scbs(); ++s) {
      if (fill(s) > instance.cache_size(s)) return false;
    }
    return true;
  }

  void require_feasible(const Instance& instance) const {
    if (num_scbs() != instance.num_scbs() || num_files() != instance.num_files()) {
      throw std::invalid_argument("policy dimensions do not match the instance");
    }
    for (std::size_t s = 0; s < num_scbs(); ++s) {
      if (fill(s) > instance.cache_size(s)) {
        throw std::invalid_argument("policy exceeds the cache size of SCBS " +
                                    std::to_string(s));
      }
    }
  }

  friend bool operator==(const CachingPolicy&, const CachingPolicy&) = default;
  friend std::strong_ordering operator<=>(const CachingPolicy& a,
                                          const CachingPolicy& b) {
    return a.placement_.data() <=> b.placement_.data();
  }

 private:
  Matrix<std::uint8_t> placement_;
};

/// Probability that exactly the areas in `subset` (and no others) request
/// `file` within one period, assuming independent demand across areas.
inline double subset_probability(const Instance& instance, AreaSubset subset,
                                 std::size_t file) {
  if (file >= instance.num_files()) {
    throw std::invalid_argument("file index out of range");
  }
  if (instance.num_areas() < 64 && (subset.mask() >> instance.num_areas()) != 0) {
    throw std::invalid_argument("subset names an area outside the instance");
  }
  double prob = 1.0;
  for (AreaId a = 0; a < instance.num_areas(); ++a) {
    const double p = instance.request_probability(a, file);
    prob *= subset.contains(a) ? p : 1.0 - p;
  }
  return prob;
}

/// True iff one MBS multicast is needed to serve `file` for the requesting
/// areas: the MBS-only area requested, or some requesting SCBS lacks the file.
inline bool mbs_triggered(const CachingPolicy& policy, AreaSubset subset,
                          std::size_t file) {
  if (subset.empty()) {
    throw std::invalid_argument("mbs_triggered needs a non-empty subset");
  }
  if (file >= policy.num_files()) {
    throw std::invalid_argument("file index out of range");
  }
  if (subset.contains(kMbsOnlyArea)) return true;
  for (AreaId a : subset.areas()) {
    const std::size_t scbs = a - 1;
    if (scbs >= policy.num_scbs()) {
      throw std::invalid_argument("subset names an SCBS outside the policy");
    }
    if (!policy.cached(scbs, file)) return true;
  }
  return false;
}

}  // namespace macp

#pragma once

// Localized sine-basis machinery: basis functions on bins, empirical norms,
// spectral statistics S_jk, variance-optimal weights and bin-wise estimates.
//
// Frequencies j are one-based throughout the public interface, bins k are
// zero-based.

#include <cstddef>
#include <span>
#include <vector>

#include "cojump/obs_model.hpp"

namespace cojump {

/// Partition of the n returns into h_inv bins. Bin k holds the return indices
/// (floor(k n / h_inv), floor((k+1) n / h_inv)], so ragged trade counts are
/// spread over the bins instead of being dropped.
class BinGrid {
 public:
  BinGrid(std::size_t n, std::size_t h_inv);

  std::size_t n() const noexcept { return n_; }
  std::size_t h_inv() const noexcept { return h_inv_; }
  std::size_t bins() const noexcept { return h_inv_; }
  double nominal_width() const noexcept { return 1.0 / static_cast<double>(h_inv_); }
  double obs_per_bin() const noexcept {
    return static_cast<double>(n_) / static_cast<double>(h_inv_);
  }
  bool regular() const noexcept { return n_ % h_inv_ == 0; }

  /// Grid index of the left edge of bin k (k may equal h_inv for the right edge).
  std::size_t edge(std::size_t k) const noexcept { return k * n_ / h_inv_; }
  /// Number of returns in bin k.
  std::size_t size(std::size_t k) const noexcept { return edge(k + 1) - edge(k); }
  std::size_t min_size() const noexcept;
  /// Actual width of bin k in tick time; equals 1/h_inv on regular grids.
  double width(std::size_t k) const noexcept {
    return static_cast<double>(size(k)) / static_cast<double>(n_);
  }
  /// Bin holding the one-based return index i.
  std::size_t bin_of_return(std::size_t i) const;

 private:
  std::size_t n_;
  std::size_t h_inv_;
};

struct SpectralConfig {
  std::size_t j_max = 30;        ///< cut-off J for the adaptive stage
  std::size_t j_max_pilot = 15;  ///< cut-off for the equal-weight pilot stage

  /// Throws std::invalid_argument unless 1 <= j_max_pilot <= j_max < min bin size.
  void validate(const BinGrid& grid) const;
};

/// Sine basis function Phi_jk(t) on bin k of width h for grid size n.
double phi(std::size_t j, std::size_t k, double h, std::size_t n, double t);

/// Cosine companion sqrt(2/h) cos(j pi (t - k h)/h) on bin k.
double phi_cos(std::size_t j, std::size_t k, double h, double t);

/// Closed-form empirical norm ||Phi_jk||_n^2 = (4 n^2 sin^2(j pi / (2 n h)))^{-1}.
double empirical_norm_sq(std::size_t j, std::size_t n, double h);

/// Spectral statistics for frequencies 1..J on every bin, plus the inverse
/// empirical norms ||Phi_jk||_n^{-2} needed for bias correction.
class SpectralMatrix {
 public:
  SpectralMatrix(std::size_t j_max, std::size_t bins, std::size_t n);

  std::size_t j_max() const noexcept { return j_max_; }
  std::size_t bins() const noexcept { return bins_; }
  std::size_t n() const noexcept { return n_; }

  double operator()(std::size_t j, std::size_t k) const noexcept {
    return s_[k * j_max_ + (j - 1)];
  }
  double& operator()(std::size_t j, std::size_t k) noexcept {
    return s_[k * j_max_ + (j - 1)];
  }
  /// S_{1k}..S_{Jk}.
  std::span<const double> column(std::size_t k) const noexcept {
    return {s_.data() + k * j_max_, j_max_};
  }
  /// ||Phi_{1k}||^{-2}..||Phi_{Jk}||^{-2}.
  std::span<const double> inv_norm_sq(std::size_t k) const noexcept {
    return {inv_norm_sq_.data() + k * j_max_, j_max_};
  }
  std::span<double> mutable_inv_norm_sq(std::size_t k) noexcept {
    return {inv_norm_sq_.data() + k * j_max_, j_max_};
  }

 private:
  std::size_t j_max_;
  std::size_t bins_;
  std::size_t n_;
  std::vector<double> s_;
  std::vector<double> inv_norm_sq_;
};

/// S_jk = ||Phi_jk||_n^{-1} sum_i dY_i Phi_jk(i/n), evaluated with one sine
/// table per distinct bin size. Throws if J is zero or J >= the smallest bin
/// size (the frequency j = n h vanishes on the grid).
SpectralMatrix spectral_statistics(const ReturnSeries& ret, const BinGrid& grid,
                                   std::size_t j_max);

struct WeightVector {
  std::vector<double> w;  ///< w_1..w_J, a probability vector
  double fisher = 0.0;    ///< I = sum_j I_j
};

/// Weights w_j = I_j / sum_m I_m with I_j = 1/2 (c + ||Phi_j||^{-2} eta/n)^{-2}.
/// Throws std::invalid_argument when c <= 0 or eta < 0.
WeightVector oracle_weights(double c, double eta, std::size_t n,
                            std::span<const double> inv_norm_sq);
WeightVector oracle_weights(double c, double eta, std::size_t n, double h,
                            std::size_t j_max);

/// Equal weights 1/J over the first J entries (pilot stage).
WeightVector equal_weights(std::size_t j_max);

/// zeta = sum_j w_j (S_j^2 - ||Phi_j||^{-2} eta / n).
double bin_estimate(std::span<const double> s_col, const WeightVector& w,
                    std::span<const double> inv_norm_sq, double eta, std::size_t n);
double bin_estimate(std::span<const double> s_col, const WeightVector& w, double eta,
                    std::size_t n, double h);

}  // namespace cojump

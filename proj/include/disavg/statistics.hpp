// Copyright 2026 The disavg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>

namespace disavg {

/// Entrywise Welford accumulator over real Eigen arrays, with Chan's pairwise
/// merge for combining partial results.
template <typename Array = Eigen::ArrayXXd>
class RunningStats {
 public:
  RunningStats() = default;
  RunningStats(Eigen::Index rows, Eigen::Index cols)
      : mean_(Array::Zero(rows, cols)), m2_(Array::Zero(rows, cols)) {}

  template <typename Derived>
  void push(const Eigen::ArrayBase<Derived>& x) {
    if (count_ == 0 && mean_.size() == 0) {
      mean_ = Array::Zero(x.rows(), x.cols());
      m2_ = Array::Zero(x.rows(), x.cols());
    }
    ++count_;
    const Array delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }

  void merge(const RunningStats& other) {
    if (other.count_ == 0) return;
    if (count_ == 0) {
      *this = other;
      return;
    }
    const double n_a = static_cast<double>(count_);
    const double n_b = static_cast<double>(other.count_);
    const double n = n_a + n_b;
    const Array delta = other.mean_ - mean_;
    mean_ += delta * (n_b / n);
    m2_ += other.m2_ + delta.square() * (n_a * n_b / n);
    count_ += other.count_;
  }

  std::int64_t count() const noexcept { return count_; }
  const Array& mean() const noexcept { return mean_; }

  /// Unbiased sample variance; zero with fewer than two samples.
  Array variance() const {
    if (count_ < 2) return Array::Zero(mean_.rows(), mean_.cols());
    return (m2_ / static_cast<double>(count_ - 1)).max(0.0);
  }

  Array standard_error() const {
    if (count_ < 2) return Array::Zero(mean_.rows(), mean_.cols());
    return (variance() / static_cast<double>(count_)).sqrt();
  }

 private:
  std::int64_t count_ = 0;
  Array mean_;
  Array m2_;
};

/// Real and imaginary parts tracked separately.
class ComplexRunningStats {
 public:
  ComplexRunningStats() = default;
  ComplexRunningStats(Eigen::Index rows, Eigen::Index cols) : re_(rows, cols), im_(rows, cols) {}

  template <typename Derived>
  void push(const Eigen::DenseBase<Derived>& x) {
    re_.push(x.derived().real().array());
    im_.push(x.derived().imag().array());
  }

  void push(std::complex<double> x) {
    Eigen::ArrayXXd re(1, 1);
    Eigen::ArrayXXd im(1, 1);
    re(0, 0) = x.real();
    im(0, 0) = x.imag();
    re_.push(re);
    im_.push(im);
  }

  void merge(const ComplexRunningStats& other) {
    re_.merge(other.re_);
    im_.merge(other.im_);
  }

  std::int64_t count() const noexcept { return re_.count(); }
  Eigen::MatrixXcd mean() const {
    Eigen::MatrixXcd out(re_.mean().rows(), re_.mean().cols());
    out.real() = re_.mean().matrix();
    out.imag() = im_.mean().matrix();
    return out;
  }
  Eigen::MatrixXd stderr_re() const { return re_.standard_error().matrix(); }
  Eigen::MatrixXd stderr_im() const { return im_.standard_error().matrix(); }

 private:
  RunningStats<> re_;
  RunningStats<> im_;
};

}  // namespace disavg

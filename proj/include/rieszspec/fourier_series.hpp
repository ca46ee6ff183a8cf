#pragma once

/// Matrix-valued Fourier series on [0,1]: a sparse map of explicit m x m
/// coefficients at integer frequencies plus an optional power-decay tail
/// law covering every frequency strictly beyond the explicit range,
///
///   coef(r) = amp_sign(r) * |r|^(-s_sign(r)) * phase(r),
///   phase(r) = (-1)^r when alternating, else 1.
///
/// The two signs carry independent amplitudes and exponents so one series
/// can decay at different rates toward +infinity and -infinity.

#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <optional>

#include "rieszspec/types.hpp"

namespace rieszspec {

struct TailLaw
{
  Matrix amp_pos;  // applies for r > 0
  Matrix amp_neg;  // applies for r < 0
  double s_pos = 1.0;
  double s_neg = 1.0;
  bool alternating = false;
  std::optional<int> start;  // first |r| covered; defaults past the explicit range
};

class FourierMatrixSeries
{
public:
  explicit FourierMatrixSeries(int m = 1) : m_(m) {}

  static FourierMatrixSeries zero(int m) { return FourierMatrixSeries(m); }

  int dim() const { return m_; }

  void set_coefficient(int r, Matrix value) { explicit_[r] = std::move(value); }

  void set_tail(TailLaw law) { tail_ = std::move(law); }

  const std::map<int, Matrix>& explicit_coefficients() const { return explicit_; }

  bool has_tail() const { return tail_.has_value(); }

  const TailLaw* tail() const { return tail_ ? &*tail_ : nullptr; }

  bool is_zero() const { return explicit_.empty() && !tail_; }

  /// Largest |r| holding an explicit coefficient (0 when none).
  int explicit_range() const
  {
    int range = 0;
    for (const auto& [r, coef] : explicit_)
      range = std::max(range, std::abs(r));
    return range;
  }

  /// First |r| the tail law covers.
  int tail_start() const
  {
    if (!tail_)
      return 0;
    return tail_->start.value_or(explicit_range() + 1);
  }

  /// Coefficient at frequency r; zero matrix where nothing is defined.
  Matrix coefficient(int r) const
  {
    if (auto it = explicit_.find(r); it != explicit_.end())
      return it->second;
    if (tail_ && std::abs(r) >= tail_start() && r != 0)
    {
      const double mag = std::pow(std::abs(static_cast<double>(r)),
                                  r > 0 ? -tail_->s_pos : -tail_->s_neg);
      const double phase = (tail_->alternating && (r % 2 != 0)) ? -1.0 : 1.0;
      return (mag * phase) * (r > 0 ? tail_->amp_pos : tail_->amp_neg);
    }
    return Matrix::Zero(m_, m_);
  }

  /// Partial sum  sum_{|r| <= truncation} coef(r) e^{i 2 pi r x}.
  Matrix evaluate(double x, int truncation) const
  {
    Matrix acc = Matrix::Zero(m_, m_);
    for (int r = -truncation; r <= truncation; ++r)
    {
      const Complex wave = std::polar(1.0, 2.0 * std::numbers::pi * r * x);
      acc += wave * coefficient(r);
    }
    return acc;
  }

private:
  int m_;
  std::map<int, Matrix> explicit_;
  std::optional<TailLaw> tail_;
};

}  // namespace rieszspec

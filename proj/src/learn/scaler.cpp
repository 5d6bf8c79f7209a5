#include <algorithm>
#include <limits>

#include "botminer/learn.hpp"

namespace botminer {

Scaler Scaler::fit(const Matrix& x) {
  Scaler s;
  s.min_.assign(x.cols, std::numeric_limits<double>::infinity());
  s.max_.assign(x.cols, -std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < x.rows; ++r) {
    for (std::size_t c = 0; c < x.cols; ++c) {
      const double v = x.at(r, c);
      s.min_[c] = std::min(s.min_[c], v);
      s.max_[c] = std::max(s.max_[c], v);
    }
  }
  if (x.rows == 0) {
    std::fill(s.min_.begin(), s.min_.end(), 0.0);
    std::fill(s.max_.begin(), s.max_.end(), 0.0);
  }
  return s;
}

void Scaler::apply(Matrix& x) const {
  for (std::size_t r = 0; r < x.rows; ++r) {
    for (std::size_t c = 0; c < x.cols; ++c) {
      const double range = max_[c] - min_[c];
      double& v = x.at(r, c);
      v = range > 0 ? std::clamp((v - min_[c]) / range, 0.0, 1.0) : 0.0;
    }
  }
}

Matrix Scaler::transform(const Matrix& x) const {
  Matrix out = x;
  apply(out);
  return out;
}

}  // namespace botminer

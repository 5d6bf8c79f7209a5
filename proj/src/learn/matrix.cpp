#include <numeric>

#include "botminer/learn.hpp"

namespace botminer {

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows);
  for (std::size_t r = 0; r < rows; ++r) out[r] = at(r, c);
  return out;
}

Matrix Matrix::select(std::span<const std::size_t> row_ids,
                      std::span<const std::size_t> col_ids) const {
  Matrix m(row_ids.size(), col_ids.size());
  for (std::size_t i = 0; i < row_ids.size(); ++i) {
    const double* src = data.data() + row_ids[i] * cols;
    double* dst = m.data.data() + i * m.cols;
    for (std::size_t j = 0; j < col_ids.size(); ++j) dst[j] = src[col_ids[j]];
  }
  return m;
}

Matrix Matrix::select_rows(std::span<const std::size_t> row_ids) const {
  Matrix m(row_ids.size(), cols);
  for (std::size_t i = 0; i < row_ids.size(); ++i) {
    std::copy_n(data.data() + row_ids[i] * cols, cols, m.data.data() + i * cols);
  }
  return m;
}

Matrix Matrix::select_cols(std::span<const std::size_t> col_ids) const {
  return select(iota_indices(rows), col_ids);
}

std::vector<std::size_t> iota_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

}  // namespace botminer

#include "cavityed/band_matrix.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "cavityed/error.hpp"

namespace cavityed {

namespace {

std::size_t diagonal_length(std::size_t dim, int offset) {
  const auto d = static_cast<std::size_t>(std::abs(offset));
  return d >= dim ? 0 : dim - d;
}

std::size_t row_of(int offset, std::size_t k) { return k + static_cast<std::size_t>(std::max(0, -offset)); }

}  // namespace

BandMatrix BandMatrix::identity(std::size_t dim) {
  BandMatrix m(dim);
  m.diagonals_.push_back({0, std::vector<Complex>(dim, Complex(1.0, 0.0))});
  return m;
}

BandMatrix BandMatrix::diagonal(std::span<const double> values) {
  BandMatrix m(values.size());
  m.add_diagonal(0, values);
  return m;
}

BandMatrix BandMatrix::from_dense(const Eigen::MatrixXcd& dense, double drop_tolerance) {
  if (dense.rows() != dense.cols()) throw DimensionError("BandMatrix::from_dense: matrix is not square");
  const auto n = static_cast<std::size_t>(dense.rows());
  BandMatrix m(n);
  for (int offset = -static_cast<int>(n) + 1; offset < static_cast<int>(n); ++offset) {
    std::vector<Complex> values(diagonal_length(n, offset));
    bool keep = false;
    for (std::size_t k = 0; k < values.size(); ++k) {
      const std::size_t r = row_of(offset, k);
      values[k] = dense(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r + offset));
      keep = keep || std::abs(values[k]) > drop_tolerance;
    }
    if (keep) m.diagonals_.push_back({offset, std::move(values)});
  }
  return m;
}

BandMatrix::Diagonal* BandMatrix::find(int offset) {
  for (auto& d : diagonals_)
    if (d.offset == offset) return &d;
  return nullptr;
}

const BandMatrix::Diagonal* BandMatrix::find(int offset) const {
  for (const auto& d : diagonals_)
    if (d.offset == offset) return &d;
  return nullptr;
}

void BandMatrix::add_diagonal(int offset, std::span<const Complex> values) {
  const std::size_t len = diagonal_length(dim_, offset);
  if (values.size() != len) throw DimensionError("BandMatrix::add_diagonal: wrong diagonal length");
  if (len == 0) return;
  if (Diagonal* d = find(offset)) {
    for (std::size_t k = 0; k < len; ++k) d->values[k] += values[k];
    return;
  }
  diagonals_.push_back({offset, std::vector<Complex>(values.begin(), values.end())});
  std::sort(diagonals_.begin(), diagonals_.end(), [](const Diagonal& a, const Diagonal& b) { return a.offset < b.offset; });
}

void BandMatrix::add_diagonal(int offset, std::span<const double> values) {
  std::vector<Complex> c(values.begin(), values.end());
  add_diagonal(offset, std::span<const Complex>(c));
}

Complex BandMatrix::operator()(std::size_t row, std::size_t col) const {
  const int offset = static_cast<int>(col) - static_cast<int>(row);
  const Diagonal* d = find(offset);
  if (d == nullptr) return {0.0, 0.0};
  return d->values[std::min(row, col)];
}

int BandMatrix::bandwidth() const {
  int b = 0;
  for (const auto& d : diagonals_) b = std::max(b, std::abs(d.offset));
  return b;
}

bool BandMatrix::is_real() const {
  for (const auto& d : diagonals_)
    for (const auto& v : d.values)
      if (v.imag() != 0.0) return false;
  return true;
}

bool BandMatrix::is_hermitian() const {
  for (const auto& d : diagonals_) {
    const Diagonal* mirror = find(-d.offset);
    for (std::size_t k = 0; k < d.values.size(); ++k) {
      const Complex other = mirror ? mirror->values[k] : Complex(0.0, 0.0);
      if (d.values[k] != std::conj(other)) return false;
    }
  }
  return true;
}

BandMatrix BandMatrix::adjoint() const {
  BandMatrix out(dim_);
  for (const auto& d : diagonals_) {
    std::vector<Complex> values(d.values.size());
    std::transform(d.values.begin(), d.values.end(), values.begin(), [](Complex v) { return std::conj(v); });
    out.diagonals_.push_back({-d.offset, std::move(values)});
  }
  std::sort(out.diagonals_.begin(), out.diagonals_.end(),
            [](const Diagonal& a, const Diagonal& b) { return a.offset < b.offset; });
  return out;
}

BandMatrix BandMatrix::operator*(const BandMatrix& rhs) const {
  if (rhs.dim_ != dim_) throw DimensionError("BandMatrix product: dimension mismatch");
  BandMatrix out(dim_);
  for (const auto& a : diagonals_) {
    for (const auto& b : rhs.diagonals_) {
      const int offset = a.offset + b.offset;
      const std::size_t len = diagonal_length(dim_, offset);
      if (len == 0) continue;
      std::vector<Complex> values(len, Complex(0.0, 0.0));
      bool any = false;
      // (A B)(r, r + da + db) += A(r, r + da) B(r + da, r + da + db)
      for (std::size_t k = 0; k < len; ++k) {
        const long r = static_cast<long>(row_of(offset, k));
        const long mid = r + a.offset;
        const long c = mid + b.offset;
        if (mid < 0 || mid >= static_cast<long>(dim_) || c < 0 || c >= static_cast<long>(dim_)) continue;
        const auto ia = static_cast<std::size_t>(std::min(r, mid));
        const auto ib = static_cast<std::size_t>(std::min(mid, c));
        values[k] = a.values[ia] * b.values[ib];
        any = true;
      }
      if (any) out.add_diagonal(offset, std::span<const Complex>(values));
    }
  }
  return out;
}

BandMatrix BandMatrix::operator+(const BandMatrix& rhs) const {
  if (rhs.dim_ != dim_) throw DimensionError("BandMatrix sum: dimension mismatch");
  BandMatrix out = *this;
  for (const auto& d : rhs.diagonals_) out.add_diagonal(d.offset, std::span<const Complex>(d.values));
  return out;
}

BandMatrix BandMatrix::scaled(Complex factor) const {
  BandMatrix out = *this;
  for (auto& d : out.diagonals_)
    for (auto& v : d.values) v *= factor;
  return out;
}

Eigen::MatrixXcd BandMatrix::to_dense() const {
  const auto n = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& d : diagonals_)
    for (std::size_t k = 0; k < d.values.size(); ++k) {
      const std::size_t r = row_of(d.offset, k);
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r + d.offset)) = d.values[k];
    }
  return m;
}

Eigen::MatrixXd BandMatrix::to_dense_real() const {
  if (!is_real()) throw std::logic_error("BandMatrix::to_dense_real: matrix has imaginary entries");
  return to_dense().real();
}

}  // namespace cavityed

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace cavityed {

using Complex = std::complex<double>;

// Square banded matrix stored by diagonals. Used for every per-subsystem
// factor: tridiagonal kinetic/momentum stencils, diagonal potentials and the
// (penta)diagonal photon matrices.
//
// Diagonal with offset d holds entries M(r, r + d); element k sits at row
// k + max(0, -d), so each diagonal has dim - |d| entries.
class BandMatrix {
 public:
  struct Diagonal {
    int offset = 0;
    std::vector<Complex> values;
  };

  BandMatrix() = default;
  explicit BandMatrix(std::size_t dim) : dim_(dim) {}

  static BandMatrix identity(std::size_t dim);
  static BandMatrix diagonal(std::span<const double> values);
  // Keeps every diagonal that has an entry with |value| > drop_tolerance.
  static BandMatrix from_dense(const Eigen::MatrixXcd& dense, double drop_tolerance = 0.0);

  std::size_t dim() const { return dim_; }
  const std::vector<Diagonal>& diagonals() const { return diagonals_; }

  // Adds values to the diagonal at offset (creating it when absent).
  void add_diagonal(int offset, std::span<const Complex> values);
  void add_diagonal(int offset, std::span<const double> values);

  Complex operator()(std::size_t row, std::size_t col) const;
  int bandwidth() const;
  bool is_real() const;
  // Exact (bitwise) Hermiticity of the stored entries.
  bool is_hermitian() const;

  BandMatrix adjoint() const;
  BandMatrix operator*(const BandMatrix& rhs) const;
  BandMatrix operator+(const BandMatrix& rhs) const;
  BandMatrix scaled(Complex factor) const;

  Eigen::MatrixXcd to_dense() const;
  Eigen::MatrixXd to_dense_real() const;  // throws if any entry has an imaginary part

 private:
  Diagonal* find(int offset);
  const Diagonal* find(int offset) const;

  std::size_t dim_ = 0;
  std::vector<Diagonal> diagonals_;  // sorted by offset
};

}  // namespace cavityed

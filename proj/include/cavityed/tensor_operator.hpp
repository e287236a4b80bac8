#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cavityed/band_matrix.hpp"

namespace cavityed {

enum class ScalarField { Real, Complex };

struct Subsystem {
  std::string name;  // "photon", "nucleus", "electron", ...
  std::size_t dim = 0;
};

// Diagonal acting jointly on the contiguous block of subsystems
// [first, last]; used for potentials that do not factorize (V(x, X)).
struct JointDiagonal {
  std::size_t first = 0;
  std::size_t last = 0;
  std::vector<double> values;  // length = product of the block dims, row-major
};

// coefficient * (F_0 (x) F_1 (x) ... ), identity where a factor is absent.
// A joint diagonal may replace the identity factors of its block.
struct KroneckerTerm {
  std::string label;
  double coefficient = 1.0;
  std::vector<std::optional<BandMatrix>> factors;  // one slot per subsystem
  std::optional<JointDiagonal> joint;
};

// Hermitian operator as an ordered list of Kronecker terms. Composite index
// is row-major over `subsystems`, first subsystem slowest.
struct HamiltonianSpec {
  std::vector<Subsystem> subsystems;
  std::vector<KroneckerTerm> terms;
  ScalarField field = ScalarField::Real;

  std::size_t dimension() const;
  std::vector<std::size_t> dims() const;
  std::optional<std::size_t> index_of(std::string_view name) const;

  // Shapes, Hermiticity of every factor, and real/complex consistency.
  // Throws DimensionError / ConfigurationError.
  void validate() const;

  // Explicit dense matrix. Only for small instances (tests, oracles).
  Eigen::MatrixXcd to_dense() const;
};

// Matrix-free application of a HamiltonianSpec.
//
// For each term the non-identity factors are contracted one subsystem at a
// time along their strides; the term result is then accumulated into y in
// term order. Every output element is produced by a fixed sequence of
// operations that does not depend on the thread count, so results are
// bit-identical across runs and thread settings. Work buffers are owned by
// the object: one instance must not be used from two threads at once.
template <class T>
class TensorOperator {
 public:
  explicit TensorOperator(HamiltonianSpec spec);

  const HamiltonianSpec& spec() const { return spec_; }
  std::size_t dimension() const { return dimension_; }

  // y = H x
  void apply(std::span<const T> x, std::span<T> y) const;
  std::vector<T> apply(std::span<const T> x) const;

 private:
  struct CompiledFactor {
    std::size_t outer = 1, n = 1, inner = 1;
    std::vector<int> offsets;
    std::vector<std::vector<T>> values;
  };
  struct CompiledJoint {
    std::size_t outer = 1, block = 1, inner = 1;
    std::vector<double> values;
  };
  struct CompiledTerm {
    double coefficient = 1.0;
    std::optional<CompiledJoint> joint;
    std::vector<CompiledFactor> factors;
  };

  void apply_factor(const CompiledFactor& f, const T* src, T* dst) const;
  void apply_joint(const CompiledJoint& j, const T* src, T* dst) const;

  HamiltonianSpec spec_;
  std::size_t dimension_ = 0;
  std::vector<CompiledTerm> compiled_;
  mutable std::vector<T> work_a_, work_b_;
};

extern template class TensorOperator<double>;
extern template class TensorOperator<std::complex<double>>;

// Convenience: y = H x without keeping the compiled operator.
template <class T>
std::vector<T> apply(const HamiltonianSpec& spec, std::span<const T> x) {
  return TensorOperator<T>(spec).apply(x);
}

}  // namespace cavityed

#include "cavityed/tensor_operator.hpp"

#include <algorithm>

#include "cavityed/error.hpp"

namespace cavityed {

std::size_t HamiltonianSpec::dimension() const {
  std::size_t d = 1;
  for (const auto& s : subsystems) d *= s.dim;
  return d;
}

std::vector<std::size_t> HamiltonianSpec::dims() const {
  std::vector<std::size_t> d;
  d.reserve(subsystems.size());
  for (const auto& s : subsystems) d.push_back(s.dim);
  return d;
}

std::optional<std::size_t> HamiltonianSpec::index_of(std::string_view name) const {
  for (std::size_t k = 0; k < subsystems.size(); ++k)
    if (subsystems[k].name == name) return k;
  return std::nullopt;
}

void HamiltonianSpec::validate() const {
  if (subsystems.empty()) throw DimensionError("HamiltonianSpec: no subsystems");
  for (const auto& s : subsystems)
    if (s.dim == 0) throw DimensionError("HamiltonianSpec: subsystem '" + s.name + "' has dimension 0");
  for (const auto& t : terms) {
    if (t.factors.size() != subsystems.size())
      throw DimensionError("term '" + t.label + "': factor count does not match subsystem count");
    for (std::size_t k = 0; k < subsystems.size(); ++k) {
      if (!t.factors[k]) continue;
      const BandMatrix& f = *t.factors[k];
      if (f.dim() != subsystems[k].dim)
        throw DimensionError("term '" + t.label + "': factor for '" + subsystems[k].name + "' has wrong size");
      if (!f.is_hermitian()) throw ConfigurationError("term '" + t.label + "': factor is not Hermitian");
      if (field == ScalarField::Real && !f.is_real())
        throw ConfigurationError("term '" + t.label + "': complex factor in a real Hamiltonian");
    }
    if (t.joint) {
      const JointDiagonal& j = *t.joint;
      if (j.first > j.last || j.last >= subsystems.size())
        throw DimensionError("term '" + t.label + "': joint diagonal block out of range");
      std::size_t block = 1;
      for (std::size_t k = j.first; k <= j.last; ++k) {
        block *= subsystems[k].dim;
        if (t.factors[k]) throw ConfigurationError("term '" + t.label + "': factor overlaps joint diagonal block");
      }
      if (j.values.size() != block) throw DimensionError("term '" + t.label + "': joint diagonal has wrong length");
    }
  }
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Eigen::MatrixXcd HamiltonianSpec::to_dense() const {
  validate();
  const auto n = static_cast<Eigen::Index>(dimension());
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& t : terms) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    std::size_t k = 0;
    while (k < subsystems.size()) {
      if (t.joint && k == t.joint->first) {
        Eigen::VectorXcd d(static_cast<Eigen::Index>(t.joint->values.size()));
        for (std::size_t i = 0; i < t.joint->values.size(); ++i) d(static_cast<Eigen::Index>(i)) = t.joint->values[i];
        m = kron(m, d.asDiagonal().toDenseMatrix());
        k = t.joint->last + 1;
        continue;
      }
      const auto dk = static_cast<Eigen::Index>(subsystems[k].dim);
      m = kron(m, t.factors[k] ? t.factors[k]->to_dense() : Eigen::MatrixXcd::Identity(dk, dk));
      ++k;
    }
    h += t.coefficient * m;
  }
  return h;
}

template <class T>
static T convert_entry(Complex v) {
  if constexpr (std::is_same_v<T, double>) {
    return v.real();
  } else {
    return v;
  }
}

template <class T>
TensorOperator<T>::TensorOperator(HamiltonianSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  if constexpr (std::is_same_v<T, double>) {
    if (spec_.field != ScalarField::Real)
      throw ConfigurationError("TensorOperator<double> requires a real Hamiltonian");
  }
  dimension_ = spec_.dimension();
  const auto dims = spec_.dims();
  auto stride_outer = [&](std::size_t k) {
    std::size_t o = 1;
    for (std::size_t i = 0; i < k; ++i) o *= dims[i];
    return o;
  };
  auto stride_inner = [&](std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = k + 1; i < dims.size(); ++i) r *= dims[i];
    return r;
  };
  for (const auto& t : spec_.terms) {
    CompiledTerm c;
    c.coefficient = t.coefficient;
    if (t.joint) {
      CompiledJoint j;
      j.outer = stride_outer(t.joint->first);
      j.block = t.joint->values.size();
      j.inner = stride_inner(t.joint->last);
      j.values = t.joint->values;
      c.joint = std::move(j);
    }
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (!t.factors[k]) continue;
      CompiledFactor f;
      f.outer = stride_outer(k);
      f.n = dims[k];
      f.inner = stride_inner(k);
      for (const auto& d : t.factors[k]->diagonals()) {
        f.offsets.push_back(d.offset);
        std::vector<T> v(d.values.size());
        std::transform(d.values.begin(), d.values.end(), v.begin(), convert_entry<T>);
        f.values.push_back(std::move(v));
      }
      c.factors.push_back(std::move(f));
    }
    compiled_.push_back(std::move(c));
  }
  work_a_.resize(dimension_);
  work_b_.resize(dimension_);
}

template <class T>
void TensorOperator<T>::apply_factor(const CompiledFactor& f, const T* src, T* dst) const {
  const auto rows = static_cast<std::ptrdiff_t>(f.outer * f.n);
  const auto n = static_cast<std::ptrdiff_t>(f.n);
  const std::size_t inner = f.inner;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t row = 0; row < rows; ++row) {
    const std::ptrdiff_t i = row % n;
    const std::ptrdiff_t base = row - i;
    T* out = dst + static_cast<std::size_t>(row) * inner;
    std::fill(out, out + inner, T(0));
    for (std::size_t d = 0; d < f.offsets.size(); ++d) {
      const std::ptrdiff_t col = i + f.offsets[d];
      if (col < 0 || col >= n) continue;
      const T m = f.values[d][static_cast<std::size_t>(std::min(i, col))];
      const T* in = src + static_cast<std::size_t>(base + col) * inner;
      for (std::size_t r = 0; r < inner; ++r) out[r] += m * in[r];
    }
  }
}

template <class T>
void TensorOperator<T>::apply_joint(const CompiledJoint& j, const T* src, T* dst) const {
  const auto rows = static_cast<std::ptrdiff_t>(j.outer * j.block);
  const auto block = static_cast<std::ptrdiff_t>(j.block);
  const std::size_t inner = j.inner;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t row = 0; row < rows; ++row) {
    const double v = j.values[static_cast<std::size_t>(row % block)];
    const std::size_t off = static_cast<std::size_t>(row) * inner;
    for (std::size_t r = 0; r < inner; ++r) dst[off + r] = v * src[off + r];
  }
}

template <class T>
void TensorOperator<T>::apply(std::span<const T> x, std::span<T> y) const {
  if (x.size() != dimension_ || y.size() != dimension_)
    throw DimensionError("TensorOperator::apply: vector length does not match operator dimension");
  const auto n = static_cast<std::ptrdiff_t>(dimension_);
  std::fill(y.begin(), y.end(), T(0));
  for (const auto& term : compiled_) {
    const T* src = x.data();
    T* bufs[2] = {work_a_.data(), work_b_.data()};
    int next = 0;
    if (term.joint) {
      apply_joint(*term.joint, src, bufs[next]);
      src = bufs[next];
      next ^= 1;
    }
    for (const auto& f : term.factors) {
      apply_factor(f, src, bufs[next]);
      src = bufs[next];
      next ^= 1;
    }
    const double c = term.coefficient;
    T* out = y.data();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] += c * src[i];
  }
}

template <class T>
std::vector<T> TensorOperator<T>::apply(std::span<const T> x) const {
  std::vector<T> y(dimension_);
  apply(x, std::span<T>(y));
  return y;
}

template class TensorOperator<double>;
template class TensorOperator<std::complex<double>>;

}  // namespace cavityed

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cavityed/error.hpp"
#include "cavityed/lanczos.hpp"
#include "cavityed/model.hpp"
#include "cavityed/tensor_operator.hpp"

using namespace cavityed;

namespace {

ModelSpec tiny_shin_metiu(Gauge gauge, bool sp = true, bool dia = true) {
  ModelSpec m;
  m.kind = ModelKind::ShinMetiu;
  m.electron_grid = Grid1D(11, 2.5, -12.5);
  m.nuclear_grid = Grid1D(7, 0.6, -1.9);
  m.fock = {5, 0.05};
  m.coupling = CavityCoupling::from_lambda(0.05, 0.08);
  m.coupling.self_polarization = sp;
  m.coupling.diamagnetic = dia;
  m.gauge = gauge;
  return m;
}

template <class T>
std::vector<T> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<T> v(n);
  for (auto& x : v) {
    if constexpr (std::is_same_v<T, double>)
      x = d(rng);
    else
      x = T(d(rng), d(rng));
  }
  return v;
}

template <class T>
Eigen::Matrix<T, Eigen::Dynamic, 1> as_eigen(const std::vector<T>& v) {
  return Eigen::Map<const Eigen::Matrix<T, Eigen::Dynamic, 1>>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Dense H built straight from the Kronecker definition, without the
// stride-walking code.
Eigen::MatrixXcd kron_dense(const HamiltonianSpec& spec) {
  const auto dims = spec.dims();
  const std::size_t n = spec.dimension();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& t : spec.terms) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(1, 1);
    for (std::size_t s = 0; s < dims.size(); ++s) {
      Eigen::MatrixXcd f = t.factors[s] ? t.factors[s]->to_dense() : Eigen::MatrixXcd::Identity(dims[s], dims[s]);
      Eigen::MatrixXcd next(acc.rows() * f.rows(), acc.cols() * f.cols());
      for (Eigen::Index i = 0; i < acc.rows(); ++i)
        for (Eigen::Index j = 0; j < acc.cols(); ++j) next.block(i * f.rows(), j * f.cols(), f.rows(), f.cols()) = acc(i, j) * f;
      acc = next;
    }
    if (t.joint) {
      std::size_t inner = 1, block = 1;
      for (std::size_t s = t.joint->last + 1; s < dims.size(); ++s) inner *= dims[s];
      for (std::size_t s = t.joint->first; s <= t.joint->last; ++s) block *= dims[s];
      Eigen::VectorXcd d(n);
      for (std::size_t i = 0; i < n; ++i) d[i] = t.joint->values[(i / inner) % block];
      acc = d.asDiagonal() * acc;
    }
    h += t.coefficient * acc;
  }
  return h;
}

}  // namespace

TEST_CASE("identity spec applies as identity") {
  HamiltonianSpec s;
  s.subsystems = {{"a", 3}, {"b", 4}};
  KroneckerTerm t;
  t.factors.resize(2);
  s.terms.push_back(t);
  const TensorOperator<double> op(s);
  const auto x = random_vector<double>(12, 1);
  CHECK(op.apply(std::span<const double>(x)) == x);
}

TEST_CASE("matrix-free apply equals dense Kronecker product") {
  for (Gauge g : {Gauge::Length, Gauge::Coulomb}) {
    for (ModelSpec m : {tiny_shin_metiu(g), tiny_shin_metiu(g, g == Gauge::Length ? false : true,
                                                             g == Gauge::Coulomb ? false : true)}) {
      const HamiltonianSpec spec = build_hamiltonian(m);
      CHECK(spec.dimension() == 5 * 7 * 11);
      const Eigen::MatrixXcd dense = kron_dense(spec);
      CHECK((dense - spec.to_dense()).cwiseAbs().maxCoeff() < 1e-13);
      CHECK((dense - dense.adjoint()).cwiseAbs().maxCoeff() < 1e-13);
      using C = std::complex<double>;
      const auto x = random_vector<C>(spec.dimension(), 3);
      const TensorOperator<C> op(spec);
      const auto y = op.apply(std::span<const C>(x));
      const Eigen::VectorXcd ref = dense * as_eigen(x);
      CHECK((as_eigen(y) - ref).cwiseAbs().maxCoeff() < 1e-13 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
      if (g == Gauge::Length) {
        const TensorOperator<double> real_op(spec);
        const auto xr = random_vector<double>(spec.dimension(), 4);
        const auto yr = real_op.apply(std::span<const double>(xr));
        const Eigen::VectorXd refr = dense.real() * as_eigen(xr);
        CHECK((as_eigen(yr) - refr).cwiseAbs().maxCoeff() < 1e-13 * std::max(1.0, refr.cwiseAbs().maxCoeff()));
      }
    }
  }
}

TEST_CASE("apply is linear and Hermitian") {
  using C = std::complex<double>;
  const HamiltonianSpec spec = build_hamiltonian(tiny_shin_metiu(Gauge::Coulomb));
  const TensorOperator<C> op(spec);
  const std::size_t n = spec.dimension();
  const auto u = random_vector<C>(n, 11), v = random_vector<C>(n, 12);
  const C a(0.3, -1.2), b(-2.0, 0.5);
  std::vector<C> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = a * u[i] + b * v[i];
  const auto hu = as_eigen(op.apply(std::span<const C>(u)));
  const auto hv = as_eigen(op.apply(std::span<const C>(v)));
  const auto hw = as_eigen(op.apply(std::span<const C>(w)));
  const double scale = hw.cwiseAbs().maxCoeff();
  CHECK((hw - (a * hu + b * hv)).cwiseAbs().maxCoeff() < 1e-12 * scale);
  const C uhv = as_eigen(u).dot(hv), vhu = as_eigen(v).dot(hu);
  CHECK(std::abs(uhv - std::conj(vhu)) < 1e-12 * std::abs(uhv));
}

TEST_CASE("spec validation") {
  HamiltonianSpec s;
  s.subsystems = {{"a", 3}};
  KroneckerTerm t;
  t.factors = {BandMatrix::identity(4)};
  s.terms = {t};
  CHECK_THROWS_AS(s.validate(), DimensionError);
  BandMatrix nh(3);
  nh.add_diagonal(1, std::vector<double>{1.0, 2.0});
  s.terms[0].factors = {nh};
  CHECK_THROWS(s.validate());
  BandMatrix imag(3);
  imag.add_diagonal(1, std::vector<Complex>{Complex(0, 1), Complex(0, 1)});
  imag.add_diagonal(-1, std::vector<Complex>{Complex(0, -1), Complex(0, -1)});
  s.terms[0].factors = {imag};
  CHECK_THROWS_AS(TensorOperator<double>{s}, ConfigurationError);
  s.terms[0].factors = {BandMatrix::identity(3)};
  CHECK_THROWS_AS(apply<double>(s, std::vector<double>(5)), DimensionError);
}

TEST_CASE("Lanczos matches dense diagonalization") {
  LanczosOptions o;
  o.k = 5;
  o.tol = 1e-11;
  for (Gauge g : {Gauge::Length, Gauge::Coulomb}) {
    const HamiltonianSpec spec = build_hamiltonian(tiny_shin_metiu(g));
    REQUIRE(spec.dimension() <= 600);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(spec.to_dense());
    using C = std::complex<double>;
    const TensorOperator<C> op(spec);
    const auto r = lowest_eigenpairs<C>([&](std::span<const C> x, std::span<C> y) { op.apply(x, y); }, spec.dimension(), o);
    REQUIRE(r.all_converged());
    for (std::size_t i = 0; i < o.k; ++i) {
      CHECK(std::abs(r.eigenvalues[i] - es.eigenvalues()[i]) < 1e-10);
      CHECK(r.residual_norms[i] <= o.tol);
      // energy expectation
      const auto v = as_eigen(r.eigenvectors[i]);
      const auto hv = as_eigen(op.apply(std::span<const C>(r.eigenvectors[i])));
      CHECK(std::abs(v.dot(hv).real() - r.eigenvalues[i]) <= 10 * o.tol);
      for (std::size_t j = 0; j < o.k; ++j) {
        const C ov = v.dot(as_eigen(r.eigenvectors[j]));
        CHECK(std::abs(ov - (i == j ? 1.0 : 0.0)) <= 1e-8);
      }
    }
    CHECK(std::is_sorted(r.eigenvalues.begin(), r.eigenvalues.end()));
  }
}

TEST_CASE("Lanczos is deterministic and reports partial convergence") {
  const HamiltonianSpec spec = build_hamiltonian(tiny_shin_metiu(Gauge::Length));
  const TensorOperator<double> op(spec);
  LinearMap<double> f = [&](std::span<const double> x, std::span<double> y) { op.apply(x, y); };
  LanczosOptions o;
  o.k = 3;
  const auto a = lowest_eigenpairs<double>(f, spec.dimension(), o);
  const auto b = lowest_eigenpairs<double>(f, spec.dimension(), o);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
  o.seed = 99;
  const auto c = lowest_eigenpairs<double>(f, spec.dimension(), o);
  for (std::size_t i = 0; i < 3; ++i) CHECK(c.eigenvalues[i] == doctest::Approx(a.eigenvalues[i]).epsilon(1e-9));

  LanczosOptions starved;
  starved.k = 3;
  starved.tol = 1e-14;
  starved.max_iter = 10;
  starved.krylov_dim = 8;
  const auto p = lowest_eigenpairs<double>(f, spec.dimension(), starved);
  CHECK_FALSE(p.all_converged());
  CHECK(p.eigenvalues.size() == 3);
  CHECK_FALSE(p.warnings.empty());
}

TEST_CASE("Ritz values descend with iteration count") {
  const HamiltonianSpec spec = build_hamiltonian(tiny_shin_metiu(Gauge::Length));
  const TensorOperator<double> op(spec);
  LinearMap<double> f = [&](std::span<const double> x, std::span<double> y) { op.apply(x, y); };
  LanczosOptions o;
  o.k = 1;
  o.tol = 1e-12;
  const auto r = lowest_eigenpairs<double>(f, spec.dimension(), o);
  REQUIRE(r.ritz_history.size() > 2);
  for (std::size_t i = 1; i < r.ritz_history.size(); ++i) CHECK(r.ritz_history[i] <= r.ritz_history[i - 1] + 1e-12);
}

TEST_CASE("k larger than the dimension is clamped") {
  LinearMap<double> diag = [](std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = static_cast<double>(i) * x[i];
  };
  LanczosOptions o;
  o.k = 10;
  const auto r = lowest_eigenpairs<double>(diag, 4, o);
  REQUIRE(r.eigenvalues.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(r.eigenvalues[i] == doctest::Approx(static_cast<double>(i)).epsilon(1e-12));
  CHECK_FALSE(r.warnings.empty());
}

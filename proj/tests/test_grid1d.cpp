#include <doctest.h>

#include <cmath>
#include <random>

#include "cavityed/error.hpp"
#include "cavityed/grid1d.hpp"

using namespace cavityed;

TEST_CASE("make_grid point counts and centering") {
  const Grid1D tiny = make_grid(Length::bohr(2.0), 1.0);
  REQUIRE(tiny.size() == 3);
  CHECK(tiny.coordinate(0) == -1.0);
  CHECK(tiny.coordinate(1) == 0.0);
  CHECK(tiny.coordinate(2) == 1.0);

  // floor(box / spacing) + 1, rounded down to odd
  auto expected = [](double box_bohr, double dx) {
    auto n = static_cast<std::size_t>(std::floor(box_bohr / dx)) + 1;
    return n % 2 ? n : n - 1;
  };
  CHECK(make_grid(Length::angstrom(60.0), 0.4).size() == expected(60.0 * 1.8897261246, 0.4));
  CHECK(make_grid(Length::angstrom(60.0), 0.4).size() == 283);
  CHECK(make_grid(Length::angstrom(5.93), 0.04).size() == expected(5.93 * 1.8897261246, 0.04));
  CHECK(make_grid(Length::angstrom(5.93), 0.04).size() == 281);

  const Grid1D g = make_grid(Length::bohr(10.0), 0.5, 3.0);
  CHECK(g.size() % 2 == 1);
  CHECK(g.coordinate(g.size() / 2) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(g.center() == doctest::Approx(3.0));
}

TEST_CASE("make_grid rejects bad input") {
  CHECK_THROWS_AS(make_grid(Length::bohr(10.0), 0.0), ParameterError);
  CHECK_THROWS_AS(make_grid(Length::bohr(10.0), -0.1), ParameterError);
  CHECK_THROWS_AS(make_grid(Length::bohr(-1.0), 0.1), ParameterError);
  CHECK_THROWS_AS(make_grid(Length::bohr(0.15), 0.1), ParameterError);
  CHECK(make_grid(Length::bohr(0.2), 0.1).size() == 3);
  CHECK(make_grid(Length::bohr(0.39), 0.1).size() == 3);
}

TEST_CASE("unit conversion") {
  CHECK(Length::angstrom(1.0).in_bohr() == 1.8897261246);
  CHECK(Length::bohr(1.8897261246).in_angstrom() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(hartree_to_ev(1.0) == 27.211386);
  CHECK(parse_length_unit("angstrom") == LengthUnit::Angstrom);
  CHECK(parse_length_unit("bohr") == LengthUnit::Bohr);
  CHECK_THROWS(parse_length_unit("nm"));
}

TEST_CASE("kinetic stencil") {
  const Grid1D g = make_grid(Length::bohr(4.0), 0.4);
  const BandMatrix t = kinetic_operator(g, 1.0);
  CHECK(t(3, 3).real() == doctest::Approx(6.25).epsilon(1e-14));
  CHECK(t(3, 4).real() == doctest::Approx(-3.125).epsilon(1e-14));
  CHECK(t(4, 3).real() == doctest::Approx(-3.125).epsilon(1e-14));
  CHECK(t(3, 5) == Complex(0.0, 0.0));
  CHECK(t.is_real());
  CHECK(t.is_hermitian());

  const Grid1D fine = make_grid(Length::bohr(40.0), 0.05);
  const auto T = kinetic_operator(fine, 2.0).to_dense_real();
  const std::size_t n = fine.size();
  Eigen::VectorXd c = Eigen::VectorXd::Constant(n, 1.7);
  Eigen::VectorXd tc = T * c;
  for (std::size_t i = 1; i + 1 < n; ++i) CHECK(std::abs(tc[i]) < 1e-12);

  // sin(kx): exact stencil symbol (1 - cos k dx)/(m dx^2), close to k^2/2m
  const double k = 0.3, m = 2.0, dx = fine.spacing();
  Eigen::VectorXd s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = std::sin(k * fine.coordinate(i));
  Eigen::VectorXd ts = T * s;
  const double symbol = (1.0 - std::cos(k * dx)) / (m * dx * dx);
  const double continuum = k * k / (2.0 * m);
  CHECK(std::abs(symbol - continuum) / continuum <= (k * dx) * (k * dx) / 12.0 * 1.01);
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (std::abs(s[i]) > 0.1) CHECK(ts[i] / s[i] == doctest::Approx(symbol).epsilon(1e-9));
}

TEST_CASE("momentum stencil") {
  const Grid1D g = make_grid(Length::bohr(30.0), 0.1);
  const BandMatrix p = momentum_operator(g);
  CHECK(p.is_hermitian());
  const auto P = p.to_dense();
  CHECK((P.real().array() == 0.0).all());
  CHECK((P.imag().transpose() + P.imag()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(P(4, 5) == Complex(0.0, -1.0 / (2.0 * 0.1)));

  const std::size_t n = g.size();
  Eigen::VectorXcd gauss(n), wave(n);
  const double k = 0.7;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = g.coordinate(i);
    gauss[i] = std::exp(-x * x / 4.0);
    wave[i] = std::exp(Complex(0.0, k * x));
  }
  CHECK(std::abs(gauss.dot(P * gauss)) < 1e-14);
  Eigen::VectorXcd pw = P * wave;
  const double symbol = std::sin(k * g.spacing()) / g.spacing();
  for (std::size_t i = 1; i + 1 < n; ++i) CHECK(std::abs(pw[i] - symbol * wave[i]) < 1e-12);
}

TEST_CASE("softened coulomb limit") {
  const double expected = 2.0 / (std::sqrt(M_PI) * 3.7795);
  CHECK(softened_coulomb(0.0, 3.7795) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(softened_coulomb(0.0, 3.7795) == doctest::Approx(0.29856).epsilon(2e-5));
  // continuous through zero
  for (double u : {1e-12, 1e-9, 1e-6, 1e-3}) {
    CHECK(softened_coulomb(u, 2.8346) == doctest::Approx(std::erf(u / 2.8346) / u).epsilon(1e-12));
    CHECK(softened_coulomb(-u, 2.8346) == softened_coulomb(u, 2.8346));
  }
}

TEST_CASE("Shin-Metiu potential") {
  const ShinMetiuParams p;
  // 30-digit evaluation at the default parameters
  CHECK(shinmetiu_potential(0.0, 0.0, p) == doctest::Approx(-0.298551971332133657973).epsilon(1e-13));
  CHECK(shinmetiu_potential(1.3, -0.7, p) == doctest::Approx(-0.276997586789748944028).epsilon(1e-13));

  // independent scalar oracle
  auto oracle = [&](double x, double X) {
    auto s = [](double u, double R) { return u == 0.0 ? 2.0 / (std::sqrt(M_PI) * R) : std::erf(std::abs(u) / R) / std::abs(u); };
    return p.Z * p.Z_minus / std::abs(X - p.L / 2) + p.Z * p.Z_plus / std::abs(X + p.L / 2) -
           p.Z_minus * s(x - p.L / 2, p.R_c) - p.Z_plus * s(x + p.L / 2, p.R_c) - p.Z * s(x - X, p.R_f);
  };
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(-30.0, 30.0), uX(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double x = ux(rng), X = uX(rng);
    CHECK(shinmetiu_potential(x, X, p) == doctest::Approx(oracle(x, X)).epsilon(1e-13));
  }
  CHECK(shinmetiu_potential(p.L / 2, 1.0, p) == doctest::Approx(oracle(p.L / 2, 1.0)).epsilon(1e-13));

  // frame origin shifts both pinned nuclei
  CHECK(shinmetiu_potential(2.5, 1.5, p, 1.0) == doctest::Approx(shinmetiu_potential(1.5, 0.5, p)).epsilon(1e-14));

  ShinMetiuParams sym = p;
  sym.Z_minus = sym.Z_plus;
  for (int i = 0; i < 50; ++i) {
    const double x = ux(rng), X = uX(rng);
    CHECK(shinmetiu_potential(x, X, sym) == doctest::Approx(shinmetiu_potential(-x, -X, sym)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(shinmetiu_potential(0.0, p.L / 2, p), EvaluationError);
  CHECK_THROWS_AS(shinmetiu_potential(0.0, -p.L / 2, p), EvaluationError);
}

TEST_CASE("screened hydrogen potential") {
  const ScreenedHydrogenParams h;
  CHECK(screened_hydrogen_potential(0.0, h) == -0.05);
  double prev = screened_hydrogen_potential(0.0, h);
  for (double x = 0.25; x < 500.0; x *= 1.5) {
    const double v = screened_hydrogen_potential(x, h);
    CHECK(v == screened_hydrogen_potential(-x, h));
    CHECK(v > prev);
    CHECK(v < 0.0);
    prev = v;
  }
}

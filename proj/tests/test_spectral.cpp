#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "tempohom/errors.hpp"
#include "tempohom/spectral.hpp"

using namespace tempohom;

namespace {

const double pi = std::numbers::pi;

RealField sample(const SpectralGrid& g, double (*f)(double)) {
  RealField v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g.node(i));
  return v;
}

double max_diff(const RealField& a, const RealField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Standing wave sin(k x) cos(omega t) with omega^2 = (k^2 - beta k^4) / a.
struct Standing {
  double k, a, beta;
  double omega() const { return std::sqrt((k * k - beta * k * k * k * k) / a); }
};

WaveProblem standing_problem(const Standing& s, WaveForm form, double T, double dt) {
  WaveProblem p;
  p.form = form;
  p.coefficient = TimeCoefficient::constant(s.a);
  RealField u(p.grid.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = std::sin(s.k * p.grid.node(i));
  p.fields.push_back({s.beta, {}, p.grid.to_spectral(u), ComplexField(p.grid.size())});
  p.T = T;
  p.dt = dt;
  return p;
}

double standing_error(const Standing& s, WaveForm form, double T, double dt) {
  const WaveProblem p = standing_problem(s, form, T, dt);
  const SolverState end = solve(p);
  RealField exact(p.grid.size());
  for (std::size_t i = 0; i < exact.size(); ++i) exact[i] = std::sin(s.k * p.grid.node(i)) * std::cos(s.omega() * T);
  return max_diff(p.grid.to_physical(end.u_hat[0]), exact);
}

}  // namespace

TEST_CASE("grid layout") {
  const SpectralGrid g(64);
  CHECK(g.node(0) == -1.0);
  CHECK(g.spacing() == doctest::Approx(2.0 / 64));
  CHECK(g.wavenumber(1) == doctest::Approx(pi));
  CHECK(g.wavenumber(32) == doctest::Approx(-32 * pi));
  CHECK(g.wavenumber(63) == doctest::Approx(-pi));
  CHECK(g.nodes().size() == 64);
  CHECK(make_grid(32) == SpectralGrid(32, 2.0));
  CHECK_FALSE(make_grid(32) == SpectralGrid(64, 2.0));
  CHECK_THROWS_AS(SpectralGrid(48), GridError);
  CHECK_THROWS_AS(SpectralGrid(4), GridError);
  CHECK_THROWS_AS(SpectralGrid(64, 0.0), GridError);
}

TEST_CASE("transforms and norms") {
  const SpectralGrid g(64);
  const RealField v = sample(g, [](double x) { return std::exp(std::cos(pi * x)); });
  CHECK(max_diff(g.to_physical(g.to_spectral(v)), v) < 1e-14);
  CHECK(g.l2_norm(g.to_spectral(RealField(64, 1.0))) == doctest::Approx(std::sqrt(2.0)));
  CHECK(g.l2_norm(g.to_spectral(sample(g, [](double x) { return std::sin(pi * x); }))) == doctest::Approx(1.0));
  // coefficients describe u(x) on (-1, 1), not a shifted copy
  const ComplexField c = g.to_spectral(sample(g, [](double x) { return std::cos(pi * x); }));
  CHECK(c[1].real() == doctest::Approx(32.0));
  CHECK(std::abs(c[1].imag()) < 1e-12);
  CHECK_THROWS_AS(g.to_spectral(RealField(10)), GridError);
}

TEST_CASE("differential operators") {
  const SpectralGrid g(64);
  const RealField s = sample(g, [](double x) { return std::sin(3 * pi * x); });
  const RealField lap = laplacian(s, g);
  const RealField bil = bilaplacian(s, g);
  const RealField grad = g.to_physical(gradient(g.to_spectral(s), g));
  double e1 = 0, e2 = 0, e3 = 0;
  for (std::size_t i = 0; i < 64; ++i) {
    const double x = g.node(i);
    e1 = std::max(e1, std::abs(lap[i] + 9 * pi * pi * std::sin(3 * pi * x)));
    e2 = std::max(e2, std::abs(bil[i] - std::pow(3 * pi, 4) * std::sin(3 * pi * x)));
    e3 = std::max(e3, std::abs(grad[i] - 3 * pi * std::cos(3 * pi * x)));
  }
  CHECK(e1 < 1e-11);
  CHECK(e2 < 1e-11 * std::pow(3 * pi, 4));
  CHECK(e3 < 1e-12);
  CHECK(gradient(g.to_spectral(s), g)[32] == Complex{});
}

TEST_CASE("time coefficients") {
  const auto c = TimeCoefficient::constant(2.0);
  CHECK(c.is_constant());
  CHECK(c(123.0) == 2.0);
  const auto m = TimeCoefficient::modulated(PermittivityBlueprint::sine_inverse(), 0.1);
  CHECK_FALSE(m.is_constant());
  CHECK(m.eta() == 0.1);
  CHECK(m(0.025) == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(TimeCoefficient::constant(0.0), BlueprintInvalid);
  CHECK_THROWS_AS(TimeCoefficient::modulated(PermittivityBlueprint::sine_inverse(), 0.0), GuardViolation);
}

TEST_CASE("fourth-order convergence on a manufactured solution") {
  const double T = 0.4;
  for (WaveForm form : {WaveForm::ElectricType, WaveForm::MagneticType}) {
    const Standing s{16 * pi, 2.0, -1e-4};
    std::vector<double> errs;
    for (int e = 6; e <= 10; ++e) errs.push_back(standing_error(s, form, T, std::ldexp(T, -e)));
    // least-squares slope in log2
    double mx = 8, sxy = 0, sxx = 0, my = 0;
    for (double v : errs) my += std::log2(v) / errs.size();
    for (int i = 0; i < 5; ++i) {
      sxy += (6 + i - mx) * (std::log2(errs[i]) - my);
      sxx += (6 + i - mx) * (6 + i - mx);
    }
    const double slope = -sxy / sxx;
    CHECK(slope == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("quadratic energy is conserved for constant coefficients") {
  const SpectralGrid g(64);
  const RealField v = sample(g, [](double x) { return std::exp(-x * x / 0.02); });
  WaveProblem p;
  p.form = WaveForm::ElectricType;
  p.coefficient = TimeCoefficient::constant(0.5);
  p.fields.push_back({-1e-4, {}, g.to_spectral(v), gradient(g.to_spectral(v), g)});
  p.T = 0.4;
  p.dt = std::ldexp(0.4, -11);
  auto energy = [&](const SolverState& s) {
    double e = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double k2 = g.wavenumber(j) * g.wavenumber(j);
      e += 0.5 * std::norm(s.w_hat[0][j]) + (k2 - p.fields[0].beta * k2 * k2) * std::norm(s.u_hat[0][j]);
    }
    return e;
  };
  const double e0 = energy(initial_state(p));
  double drift = 0.0;
  solve(p, [&](const SolverState& s) { drift = std::max(drift, std::abs(energy(s) - e0) / e0); });
  CHECK(drift < 1e-8);
}

TEST_CASE("modulated coefficient: step halving against a fine reference") {
  const SpectralGrid g(64);
  const RealField v = sample(g, [](double x) { return std::exp(-x * x / 0.02); });
  const double T = 0.2, eta = 0.05;
  auto run = [&](double dt) {
    WaveProblem p;
    p.form = WaveForm::MagneticType;
    p.coefficient = TimeCoefficient::modulated(PermittivityBlueprint::sine_inverse(), eta);
    p.fields.push_back({0.0, {}, g.to_spectral(v), ComplexField(64)});
    p.T = T;
    p.dt = dt;
    return g.to_physical(solve(p).u_hat[0]);
  };
  const double dt = T / 128;
  const RealField ref = run(dt / 64);
  const double r = max_diff(run(dt), ref) / max_diff(run(dt / 2), ref);
  CHECK(r == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("hermitian symmetry is preserved") {
  const SpectralGrid g(32);
  const RealField v = sample(g, [](double x) { return std::exp(-x * x / 0.05) * (1 + x); });
  WaveProblem p;
  p.form = WaveForm::ElectricType;
  p.coefficient = TimeCoefficient::modulated(PermittivityBlueprint::cosine_inverse(), 0.1);
  p.grid = g;
  p.fields.push_back({0.0, {}, g.to_spectral(v), ComplexField(32)});
  p.T = 0.1;
  p.dt = 0.1 / 64;
  const SolverState s = solve(p);
  double asym = 0.0;
  for (std::size_t j = 1; j < 32; ++j) asym = std::max(asym, std::abs(s.u_hat[0][j] - std::conj(s.u_hat[0][32 - j])));
  CHECK(asym < 1e-12);
}

TEST_CASE("resonant bilaplacian coupling") {
  // u0 = sin(kx) cos(wt); u1'' = -k^2 u1 + gamma k^4 u0 gives u1 = gamma k^4 t sin(wt) / (2w) sin(kx)
  const Standing s{2 * pi, 1.0, 0.0};
  WaveProblem p = standing_problem(s, WaveForm::ElectricType, 0.5, 0.5 / 512);
  const double gamma = 0.01;
  p.fields.push_back({0.0, {{0, gamma}}, ComplexField(64), ComplexField(64)});
  const SolverState end = solve(p);
  const RealField u1 = p.grid.to_physical(end.u_hat[1]);
  const double w = s.omega(), k4 = std::pow(s.k, 4);
  double err = 0.0;
  for (std::size_t i = 0; i < 64; ++i) {
    const double exact = gamma * k4 * 0.5 * std::sin(w * 0.5) / (2 * w) * std::sin(s.k * p.grid.node(i));
    err = std::max(err, std::abs(u1[i] - exact));
  }
  CHECK(err < 1e-9);
}

TEST_CASE("problem validation") {
  const Standing s{pi, 1.0, 0.0};
  WaveProblem p = standing_problem(s, WaveForm::ElectricType, 0.4, 0.4 / 64);
  CHECK_NOTHROW(p.validate());
  CHECK(p.num_steps() == 64);

  WaveProblem bad = p;
  bad.fields[0].sources.push_back({3, 1.0});
  CHECK_THROWS_AS(bad.validate(), MissingCoupling);
  CHECK_THROWS_AS(Integrator{bad}, MissingCoupling);

  bad = p;
  bad.fields.clear();
  CHECK_THROWS_AS(bad.validate(), MissingCoupling);

  bad = p;
  bad.dt = 0.4 / 64.5;
  CHECK_THROWS_AS(bad.validate(), GridError);

  bad = p;
  bad.fields[0].u0.resize(10);
  CHECK_THROWS_AS(bad.validate(), GridError);

  bad = p;
  bad.coefficient = TimeCoefficient::modulated(PermittivityBlueprint::sine_inverse(), 0.05);
  CHECK_THROWS_AS(bad.validate(), GuardViolation);
  bad.dt = 0.05 / 16;
  CHECK_NOTHROW(bad.validate());
}

TEST_CASE("integrator bookkeeping") {
  const Standing s{pi, 1.0, 0.0};
  const WaveProblem p = standing_problem(s, WaveForm::MagneticType, 0.1, 0.1 / 16);
  std::size_t seen = 0;
  double last_t = -1;
  const SolverState end = solve(p, [&](const SolverState& st) {
    ++seen;
    last_t = st.t;
  });
  CHECK(seen == 17);
  CHECK(last_t == doctest::Approx(0.1));

  Integrator it(p);
  SolverState manual = initial_state(p);
  while (!it.done()) {
    it.step();
    manual = irk4_step(p, manual, p.dt);
  }
  CHECK(it.steps_taken() == it.total_steps());
  double d = 0.0;
  for (std::size_t j = 0; j < 64; ++j) d = std::max(d, std::abs(manual.u_hat[0][j] - end.u_hat[0][j]));
  CHECK(d < 1e-13);
}

TEST_CASE("field dumps") {
  const SpectralGrid g(8);
  const RealField v = {0, 1, 2, 3, 4, 5, 6, 7};
  write_field_dump("dump_test.dat", g, 0.25, v);
  std::ifstream in("dump_test.dat");
  std::string header;
  std::getline(in, header);
  CHECK(header == "# t=0.25 N=8 L=2");
  double x = 0, val = 0;
  int rows = 0;
  while (in >> x >> val) {
    CHECK(x == doctest::Approx(g.node(rows)));
    CHECK(val == v[rows]);
    ++rows;
  }
  CHECK(rows == 8);
  std::remove("dump_test.dat");
}

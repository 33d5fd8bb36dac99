#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include "tempohom/blueprint.hpp"
#include "tempohom/errors.hpp"

using namespace tempohom;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("closed-form blueprints") {
  const auto s = PermittivityBlueprint::sine_inverse();
  const auto c = PermittivityBlueprint::cosine_inverse();
  CHECK(s(0.0) == doctest::Approx(0.5));
  CHECK(s(0.25) == doctest::Approx(1.0 / 3.0));
  CHECK(s(0.75) == doctest::Approx(1.0));
  CHECK(c(0.0) == doctest::Approx(1.0 / 3.0));
  CHECK(c(0.5) == doctest::Approx(1.0));
  // periodic in tau
  CHECK(s(3.3) == doctest::Approx(s(0.3)).epsilon(1e-13));
  CHECK(s(-0.7) == doctest::Approx(s(0.3)).epsilon(1e-13));
  CHECK(s.inverse(0.1) * s(0.1) == doctest::Approx(1.0));
  CHECK_FALSE(s.is_constant());
  CHECK(PermittivityBlueprint::constant(2.0).is_constant());
}

TEST_CASE("parse") {
  CHECK(PermittivityBlueprint::parse("sine_inverse").kind() == BlueprintKind::SineInverse);
  CHECK(PermittivityBlueprint::parse(" cosine_inverse ").kind() == BlueprintKind::CosineInverse);
  const auto k = PermittivityBlueprint::parse("constant:2.5");
  CHECK(k.is_constant());
  CHECK(k(0.123) == 2.5);

  // 2 + sin written as a Fourier series of the inverse
  const auto f = PermittivityBlueprint::parse("fourier_inverse:2,0,1");
  CHECK(f.kind() == BlueprintKind::FourierOfInverse);
  for (double tau : {0.0, 0.1, 0.37, 0.9}) {
    CHECK(f(tau) == doctest::Approx(PermittivityBlueprint::sine_inverse()(tau)).epsilon(1e-14));
  }
  CHECK(PermittivityBlueprint::parse("fourier_inverse:3").is_constant());

  CHECK_THROWS_AS(PermittivityBlueprint::parse("triangle"), BlueprintInvalid);
  CHECK_THROWS_AS(PermittivityBlueprint::parse("constant:abc"), BlueprintInvalid);
  CHECK_THROWS_AS(PermittivityBlueprint::parse("constant:1x"), BlueprintInvalid);
  CHECK_THROWS_AS(PermittivityBlueprint::parse("file:/nonexistent/path"), BlueprintInvalid);
}

TEST_CASE("positivity is enforced") {
  CHECK_THROWS_AS(PermittivityBlueprint::constant(0.0), BlueprintInvalid);
  CHECK_THROWS_AS(PermittivityBlueprint::constant(-1.0), BlueprintInvalid);
  // 1/eps = 1 + 2 cos changes sign
  CHECK_THROWS_AS(PermittivityBlueprint::fourier_of_inverse(1.0, {2.0}, {}), BlueprintInvalid);
  std::vector<double> bad(16, 1.0);
  bad[3] = 0.0;
  CHECK_THROWS_AS(PermittivityBlueprint::tabulated(bad), BlueprintInvalid);
  CHECK_NOTHROW(eval_eps(PermittivityBlueprint::sine_inverse(), 0.2));
}

TEST_CASE("tabulated blueprints") {
  const std::size_t m = 64;
  std::vector<double> samples(m);
  for (std::size_t j = 0; j < m; ++j) samples[j] = 1.0 / (2.0 + std::sin(2 * pi * j / m));
  const auto t = PermittivityBlueprint::tabulated(samples);
  CHECK(t.kind() == BlueprintKind::TabulatedSamples);
  // band-limited enough that interpolation is accurate between nodes
  CHECK(t(0.3) == doctest::Approx(PermittivityBlueprint::sine_inverse()(0.3)).epsilon(1e-8));

  CHECK_THROWS_AS(PermittivityBlueprint::tabulated(std::vector<double>(12, 1.0)), BlueprintInvalid);
  CHECK(PermittivityBlueprint::tabulated(std::vector<double>(8, 3.0)).is_constant());

  const char* path = "blueprint_samples.txt";
  {
    std::ofstream out(path);
    out << "# eps samples\n\n";
    for (double v : samples) out << v << "\n";
  }
  const auto f = PermittivityBlueprint::parse(std::string("file:") + path);
  CHECK(f(0.3) == doctest::Approx(t(0.3)).epsilon(1e-6));
  std::remove(path);
}

TEST_CASE("profiles and antiderivatives") {
  const auto bp = PermittivityBlueprint::sine_inverse();
  const auto inv = profile_of_inverse(bp, 256);
  CHECK(inv.mean() == doctest::Approx(2.0));
  CHECK(profile_of_eps(bp, 256)(0.25) == doctest::Approx(1.0 / 3.0));
  // int_0^tau (2 + sin 2 pi s) ds = 2 tau + (1 - cos 2 pi tau) / (2 pi)
  const auto a = antiderivative(inv);
  for (double tau : {0.0, 0.2, 0.9, 1.7}) {
    CHECK(a(tau) == doctest::Approx(2 * tau + (1 - std::cos(2 * pi * tau)) / (2 * pi)).epsilon(1e-13));
  }
  CHECK_THROWS_AS(profile_of_inverse(bp, 100), GridError);
}

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "heisvar/intrinsic.hpp"
#include "heisvar/profile.hpp"
#include "oracles.hpp"

using namespace heisvar;

TEST_CASE("profile registry evaluates the named families") {
  auto plane = make_profile("plane(1)");
  CHECK(plane->A(0.3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(plane->B(-2.1) == doctest::Approx(0.0));
  CHECK(plane->window().lo == doctest::Approx(-4.0));
  CHECK(plane->window().hi == doctest::Approx(4.0));
  CHECK(plane->has_derivatives());

  auto ramp = make_profile("ramp(2)");
  CHECK(ramp->A(0.7) == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(ramp->B(0.7) == 0.0);
  CHECK(ramp->dA(0.7) == doctest::Approx(2.0));
  CHECK(ramp->window().lo == doctest::Approx(-3.0));

  auto cubic = make_profile("cubic");
  CHECK(cubic->A(8.0) == doctest::Approx(12.0).epsilon(1e-14));
  CHECK(cubic->B(8.0) == doctest::Approx(-12.0).epsilon(1e-14));
  CHECK(cubic->dA(8.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cubic->dB(8.0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(cubic->window().hi == doctest::Approx(24.0));

  // custom window
  auto narrow = make_profile("ramp(1)", {-1.0, 1.0});
  CHECK(narrow->window().hi == doctest::Approx(1.0));
}

TEST_CASE("profile registry rejects malformed names") {
  CHECK_THROWS_AS(make_profile("cubic(2)"), Error);
  CHECK_THROWS_AS(make_profile("bogus"), Error);
  CHECK_THROWS_AS(make_profile("ramp(x)"), Error);
  CHECK_THROWS_AS(make_profile("ramp(1"), Error);
}

TEST_CASE("leaf evaluation matches the parabola formula") {
  auto ramp = make_profile("ramp(1)");
  // tau = z t^2/2 + z
  CHECK(leaf(*ramp, 0.5, 2.0) == doctest::Approx(2.0 * (1.0 + 0.125)));
  CHECK(leaf_dzeta(*ramp, 0.5, 2.0) == doctest::Approx(1.125));
}

TEST_CASE("cube-root profile has quartic pair separation margin") {
  auto cubic = make_profile("cubic");
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> sdist(-2.0, 2.0);
  int tested = 0;
  while (tested < 100) {
    const double s1 = sdist(rng), s2 = sdist(rng);
    if (std::abs(s1 - s2) < 0.1) continue;
    ++tested;
    const double z1 = s1 * s1 * s1, z2 = s2 * s2 * s2;
    const double margin = 2.0 * (cubic->A(z1) - cubic->A(z2)) * (z1 - z2) -
                          std::pow(cubic->B(z1) - cubic->B(z2), 2);
    const double expected = 3.0 * std::pow(s1 - s2, 4);
    CHECK(margin == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("admissibility accepts the registry profiles") {
  for (const char* name : {"plane(1)", "ramp(1)", "cubic"}) {
    auto p = make_profile(name);
    const AdmissibilityReport rep = check_admissibility(*p, 200);
    CAPTURE(name);
    CHECK(rep.passed);
    CHECK(rep.failures.empty());
  }
  // the constant-slope family is all ties with matching offsets
  auto plane = make_profile("plane(2)");
  const AdmissibilityReport rep = check_admissibility(*plane, 50);
  CHECK(rep.passed);
  CHECK(rep.n_tied == 50 * 49 / 2);
  CHECK(rep.worst_tie == 0.0);
}

TEST_CASE("admissibility rejects crossing leaves") {
  // A = z, B = 2z: the margin 2 dz^2 - 4 dz^2 is negative for every pair.
  AnalyticProfile bad("crossing", {-1.0, 1.0}, [](double z) { return z; },
                      [](double z) { return 2.0 * z; });
  const AdmissibilityReport rep = check_admissibility(bad, 50);
  CHECK_FALSE(rep.passed);
  CHECK(rep.worst_pair.margin < 0.0);
  CHECK_FALSE(rep.failures.empty());
}

TEST_CASE("admissibility growth thresholds act at the window edges") {
  // A = z, B = 3: pair margins are fine but the edge values
  // z - B^2/(2A) = -+3.5 sit on the wrong side of zero.
  AnalyticProfile p("offset", {-1.0, 1.0}, [](double z) { return z; },
                    [](double) { return 3.0; });
  const AdmissibilityReport strict = check_admissibility(p, 50);
  CHECK_FALSE(strict.passed);
  CHECK(strict.upper.applicable);
  CHECK(strict.upper.value == doctest::Approx(-3.5));
  CHECK_FALSE(strict.upper.passed);
  CHECK(strict.lower.applicable);
  CHECK(strict.lower.value == doctest::Approx(3.5));
  CHECK_FALSE(strict.lower.passed);

  const AdmissibilityReport relaxed = check_admissibility(p, 50, 1e-9, -4.0, 4.0);
  CHECK(relaxed.passed);
}

TEST_CASE("foliation inversion round-trips and is monotone") {
  auto cubic = make_profile("cubic");
  double last = -1e300;
  for (int i = 0; i <= 20; ++i) {
    const double eta = 0.5 + 0.5 * (i % 5) / 4.0;
    const double tau = 2.0 + (i / 5) * 0.25;
    const double z = invert_foliation(*cubic, eta, tau, 1e-12);
    CHECK(std::abs(leaf(*cubic, eta, z) - tau) <= 1e-10);
    const double s = oracle::cubic_s(eta, tau);
    CHECK(z == doctest::Approx(s * s * s).epsilon(1e-9));
    if (i / 5 == 0) continue;
    // zeta grows with tau at fixed eta
    const double zprev = invert_foliation(*cubic, eta, tau - 0.25, 1e-12);
    CHECK(z > zprev);
    last = z;
  }
  (void)last;
}

TEST_CASE("foliation inversion reports points with no leaf in the window") {
  auto ramp = make_profile("ramp(1)");  // window [-3, 3]
  try {
    invert_foliation(*ramp, 0.0, 10.0, 1e-12);
    FAIL("expected an out-of-window error");
  } catch (const Error& e) {
    CHECK(e.code == errc::out_of_window);
  }
}

TEST_CASE("sampled profiles reproduce linear data exactly") {
  std::vector<double> z, a, b;
  for (int i = 0; i <= 20; ++i) {
    z.push_back(-1.0 + 0.1 * i);
    a.push_back(2.0 * z.back());
    b.push_back(0.5 - z.back());
  }
  SampledProfile p("lin", z, a, b);  // three-point slope estimation
  CHECK(p.A(0.33) == doctest::Approx(0.66).epsilon(1e-12));
  CHECK(p.B(0.33) == doctest::Approx(0.17).epsilon(1e-12));
  CHECK(p.dA(-0.77) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(p.dB(-0.77) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(p.window().lo == doctest::Approx(-1.0));
  CHECK_THROWS_AS(p.A(1.5), Error);
}

TEST_CASE("sampled profiles validate their grids") {
  std::vector<double> z{0, 1, 1, 2}, a{0, 0, 0, 0}, b{0, 0, 0, 0};
  CHECK_THROWS_AS(SampledProfile("dup", z, a, b), Error);
  std::vector<double> tiny{0, 1, 2};
  CHECK_THROWS_AS(SampledProfile("short", tiny, tiny, tiny), Error);
}

TEST_CASE("profile CSV round trip preserves samples and slopes") {
  const SampledProfile m = mollify(*make_profile("ramp(1)"), 0.5);
  const auto path =
      std::filesystem::temp_directory_path() / "roundtrip_profile.csv";
  save_profile_csv(m, path.string());
  auto back = load_profile_csv(path.string());
  REQUIRE(back->grid().size() == m.grid().size());
  for (std::size_t i = 0; i < m.grid().size(); i += 7) {
    CHECK(back->grid()[i] == m.grid()[i]);
    CHECK(back->a_samples()[i] == m.a_samples()[i]);
    CHECK(back->b_samples()[i] == m.b_samples()[i]);
    CHECK(back->a_slopes()[i] == m.a_slopes()[i]);
  }
  std::filesystem::remove(path);
}

TEST_CASE("profile CSV loader rejects malformed files") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto bad_header = dir / "bad_header.csv";
  {
    std::FILE* f = std::fopen(bad_header.string().c_str(), "w");
    std::fputs("zeta;A;B\n0,0,0\n", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(load_profile_csv(bad_header.string()), Error);
  std::filesystem::remove(bad_header);

  const auto bad_cell = dir / "bad_cell.csv";
  {
    std::FILE* f = std::fopen(bad_cell.string().c_str(), "w");
    std::fputs("zeta,A,B\n0,zero,0\n1,1,0\n2,2,0\n3,3,0\n", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(load_profile_csv(bad_cell.string()), Error);
  std::filesystem::remove(bad_cell);

  CHECK_THROWS_AS(load_profile_csv("/nonexistent/p.csv"), Error);
}

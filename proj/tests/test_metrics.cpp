#include <doctest.h>

#include <cmath>
#include <complex>

#include "support.hpp"
#include "xdipole/errors.hpp"
#include "xdipole/metrics.hpp"

using namespace xdipole;
using xdipole::testing::reference_design;

TEST_CASE("s11 of a perfect match floors at -100 dB") {
  const S11Result r = s11(Complex(50.0, 0.0), 50.0);
  CHECK(std::abs(r.gamma) == 0.0);
  CHECK(r.s11_db == doctest::Approx(-100.0));
  CHECK(r.passive);
}

TEST_CASE("s11 of 100 ohm against 50 ohm is -9.54 dB") {
  const S11Result r = s11(Complex(100.0, 0.0), 50.0);
  CHECK(std::abs(r.gamma) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(r.s11_db == doctest::Approx(-9.542).epsilon(1e-3));
}

TEST_CASE("s11 flags non-passive inputs but still computes") {
  const S11Result r = s11(Complex(-20.0, 5.0), 50.0);
  CHECK(!r.passive);
  CHECK(std::abs(r.gamma) > 1.0);
  CHECK_THROWS_AS(s11(Complex(1.0, 0.0), 0.0), std::domain_error);
  CHECK_THROWS_AS(s11(Complex(-50.0, 0.0), 50.0), std::domain_error);
}

TEST_CASE("s11 magnitude below 1 whenever Re(zin) > 0") {
  for (double re : {0.1, 10.0, 73.0, 500.0})
    for (double im : {-300.0, -20.0, 0.0, 45.0, 800.0})
      CHECK(std::abs(s11(Complex(re, im), 50.0).gamma) < 1.0);
}

namespace {

std::vector<SweepRecord> synthetic_records(const std::vector<double>& freqs,
                                           const std::vector<double>& s11_vals) {
  std::vector<SweepRecord> records;
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    SweepRecord r;
    r.frequency = freqs[i];
    r.s11_db = s11_vals[i];
    r.ar_boresight_db = 10.0;
    records.push_back(r);
  }
  return records;
}

}  // namespace

TEST_CASE("extract_band recovers interpolated edges of a V-shaped dip") {
  // s11 runs -4, -8, -16, -16, -8, -4 over 1..6 GHz; the -10 dB edges are
  // at 2.25 and 4.75 GHz by linear interpolation.
  const auto records = synthetic_records(
      {1e9, 2e9, 3e9, 4e9, 5e9, 6e9}, {-4.0, -8.0, -16.0, -16.0, -8.0, -4.0});
  const auto bands = extract_band(records, BandKey::kS11, -10.0);
  REQUIRE(bands.size() == 1);
  CHECK(bands[0].f_low == doctest::Approx(2.25e9).epsilon(1e-12));
  CHECK(bands[0].f_high == doctest::Approx(4.75e9).epsilon(1e-12));
  // edges lie between the bracketing samples
  CHECK(bands[0].f_low > 2e9);
  CHECK(bands[0].f_low < 3e9);
}

TEST_CASE("extract_band returns nothing when the metric never dips") {
  const auto records =
      synthetic_records({1e9, 2e9, 3e9}, {-4.0, -6.0, -5.0});
  CHECK(extract_band(records, BandKey::kS11, -10.0).empty());
}

TEST_CASE("extract_band splits at failed sweep points") {
  auto records = synthetic_records({1e9, 2e9, 3e9, 4e9, 5e9},
                                   {-12.0, -12.0, -12.0, -12.0, -12.0});
  records[2].ok = false;
  const auto bands = extract_band(records, BandKey::kS11, -10.0);
  REQUIRE(bands.size() == 2);
  CHECK(bands[0].f_high == doctest::Approx(2e9));
  CHECK(bands[1].f_low == doctest::Approx(4e9));
}

TEST_CASE("extract_band handles multiple dips and boundary membership") {
  const auto records = synthetic_records(
      {1e9, 2e9, 3e9, 4e9, 5e9}, {-12.0, -8.0, -11.0, -8.0, -14.0});
  const auto bands = extract_band(records, BandKey::kS11, -10.0);
  REQUIRE(bands.size() == 3);
  CHECK(bands.front().f_low == doctest::Approx(1e9));
  CHECK(bands.back().f_high == doctest::Approx(5e9));
  // every interior sample below threshold belongs to some band
  for (const auto& r : records) {
    if (r.s11_db <= -10.0) {
      bool inside = false;
      for (const auto& b : bands)
        inside = inside || (r.frequency >= b.f_low && r.frequency <= b.f_high);
      CHECK(inside);
    }
  }
}

TEST_CASE("common_band intersects the reported bands") {
  const std::vector<Band> a{{3.29e9, 4.17e9}};
  const std::vector<Band> b{{3.43e9, 3.57e9}};
  const auto c = common_band(a, b);
  REQUIRE(c.size() == 1);
  CHECK(c[0].f_low == doctest::Approx(3.43e9));
  CHECK(c[0].f_high == doctest::Approx(3.57e9));
  // fractional bandwidths of the inputs match the reported 23.6% and 4%
  CHECK(a[0].fractional() == doctest::Approx(0.236).epsilon(2e-2));
  CHECK(b[0].fractional() == doctest::Approx(0.04).epsilon(1e-2));
}

TEST_CASE("common_band is commutative, idempotent and contained in both inputs") {
  const std::vector<Band> a{{1e9, 2e9}, {3e9, 5e9}};
  const std::vector<Band> b{{1.5e9, 3.5e9}, {4.5e9, 6e9}};
  const auto ab = common_band(a, b);
  const auto ba = common_band(b, a);
  REQUIRE(ab.size() == ba.size());
  for (std::size_t i = 0; i < ab.size(); ++i) {
    CHECK(ab[i].f_low == ba[i].f_low);
    CHECK(ab[i].f_high == ba[i].f_high);
    bool in_a = false;
    for (const auto& band : a)
      in_a = in_a || (ab[i].f_low >= band.f_low && ab[i].f_high <= band.f_high);
    CHECK(in_a);
  }
  const auto aa = common_band(a, a);
  REQUIRE(aa.size() == a.size());
  CHECK(aa[1].f_low == a[1].f_low);

  CHECK(common_band({{1e9, 2e9}}, {{3e9, 4e9}}).empty());
}

TEST_CASE("harrington limit values and monotonicity") {
  CHECK(harrington_limit_dbi(1.65) == doctest::Approx(7.798).epsilon(1e-3));
  CHECK(harrington_limit_dbi(1.0) == doctest::Approx(4.771).epsilon(1e-3));
  double prev = harrington_limit_dbi(0.05);
  for (double ka = 0.1; ka < 5.0; ka += 0.05) {
    const double cur = harrington_limit_dbi(ka);
    CHECK(cur > prev);
    prev = cur;
  }
  CHECK_THROWS_AS(harrington_limit_dbi(0.0), std::domain_error);
  CHECK_THROWS_AS(harrington_limit_dbi(-1.0), std::domain_error);
}

TEST_CASE("load capacitance of the reference load is 0.61 pF") {
  CHECK(load_capacitance(-74.96, 3.5e9) ==
        doctest::Approx(0.6066e-12).epsilon(1e-3));
  CHECK(load_capacitance(-1.0 / (2.0 * 3.14159265358979323846), 1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(load_capacitance(50.0, 3.5e9), std::domain_error);
  CHECK_THROWS_AS(load_capacitance(0.0, 3.5e9), std::domain_error);
  CHECK_THROWS_AS(load_capacitance(-50.0, 0.0), std::domain_error);
}

TEST_CASE("sweep produces one complete record per point") {
  const ArrayDesign design = reference_design();
  const auto records = sweep(design, 3.4e9, 3.6e9, 2, 12);
  REQUIRE(records.size() == 2);
  CHECK(records[0].frequency == doctest::Approx(3.4e9));
  CHECK(records[1].frequency == doctest::Approx(3.6e9));
  for (const auto& r : records) {
    CHECK(r.ok);
    CHECK(r.s11_db <= 0.0);
    CHECK(r.g_lhcp_db <= r.d_boresight_dbi + 0.01);
    CHECK(std::isfinite(r.ar_boresight_db));
  }
  CHECK_THROWS_AS(sweep(design, 3.4e9, 3.6e9, 1, 12), std::invalid_argument);
  CHECK_THROWS_AS(sweep(design, 3.6e9, 3.4e9, 5, 12), std::invalid_argument);
}

TEST_CASE("sweep of the scaled design reproduces records at halved frequencies") {
  const ArrayDesign d1 = reference_design();
  ArrayDesign d2 = d1;
  for (double* v : {&d2.lx1, &d2.lx2, &d2.ly1, &d2.ly2, &d2.wx1, &d2.wx2,
                    &d2.wy1, &d2.wy2, &d2.spacing_d})
    *v *= 2.0;
  d2.frequency = 0.5 * d1.frequency;

  const auto r1 = sweep(d1, 3.4e9, 3.6e9, 3, 12);
  const auto r2 = sweep(d2, 1.7e9, 1.8e9, 3, 12);
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(std::abs(r2[i].zin - r1[i].zin) / std::abs(r1[i].zin) < 1e-6);
    CHECK(r2[i].s11_db == doctest::Approx(r1[i].s11_db).epsilon(1e-6));
    CHECK(r2[i].g_lhcp_db == doctest::Approx(r1[i].g_lhcp_db).epsilon(1e-6));
    CHECK(r2[i].ar_boresight_db ==
          doctest::Approx(r1[i].ar_boresight_db).epsilon(1e-6));
  }
}

TEST_CASE("analyze_design assembles the full report") {
  const Analysis a = analyze_design(reference_design(), 20, 50.0);
  const AnalysisReport& r = a.report;
  CHECK(std::isfinite(r.zin.real()));
  CHECK(r.s11_db < 0.0);
  CHECK(r.ka == doctest::Approx(1.65).epsilon(0.1));
  CHECK(r.harrington_dbi == doctest::Approx(harrington_limit_dbi(r.ka)));
  REQUIRE(r.load_capacitance_f.has_value());
  CHECK(*r.load_capacitance_f == doctest::Approx(0.6066e-12).epsilon(1e-3));
  CHECK(r.g_lhcp_db <= r.d_boresight_dbi + 0.01);

  // inductive load has no equivalent capacitance
  ArrayDesign inductive = reference_design();
  inductive.load_reactance = +74.96;
  CHECK(!analyze_design(inductive, 12, 50.0).report.load_capacitance_f.has_value());
}

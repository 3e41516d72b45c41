#include "ncmax/verify.hpp"

#include "ncmax/io.hpp"

#include <doctest.h>

#include <cmath>

using namespace ncmax;

namespace {

SuiteConfig small_config() {
  SuiteConfig c;
  c.seed = 42;
  c.trials = 10;
  return c;
}

json strip_wall_time(const std::vector<VerificationReport>& reps) {
  json out = json::array();
  for (const auto& r : reps) {
    json j = report_to_json(r);
    j.erase("wall_time");
    out.push_back(j);
  }
  return out;
}

}  // namespace

TEST_CASE("random_positive_sequence is deterministic and PSD") {
  OperatorSequence a = random_positive_sequence(123, 3, 4, 1.0);
  OperatorSequence b = random_positive_sequence(123, 3, 4, 1.0);
  REQUIRE(a.size() == 4);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK((a.items[i].mat() - b.items[i].mat()).norm() == 0.0);
    CHECK(psd_check(a.items[i], 0.0).is_psd);
  }
  OperatorSequence z = random_positive_sequence(123, 2, 3, 0.0);
  for (const auto& x : z.items) CHECK(x.mat().norm() == 0.0);
  OperatorSequence c = random_positive_sequence(124, 3, 4, 1.0);
  CHECK((a.items[0].mat() - c.items[0].mat()).norm() > 0.0);
}

TEST_CASE("every suite passes at small scale") {
  SuiteConfig c = small_config();
  for (const auto& name : suite_names()) {
    CAPTURE(name);
    for (const auto& rep : run_suite(name, c)) {
      CAPTURE(rep.suite);
      for (const auto& v : rep.violations) CAPTURE(v.what);
      CHECK(rep.pass);
      CHECK(rep.max_ratio <= rep.bound * (1 + c.tolerance));
      CHECK(rep.skipped.size() * 20 <= static_cast<std::size_t>(c.trials));
      CHECK_FALSE(rep.ratios.empty());
    }
  }
}

TEST_CASE("suite bounds are the proved constants") {
  SuiteConfig c = small_config();
  c.trials = 2;
  auto expect_bound = [&](const std::vector<VerificationReport>& reps,
                          const std::string& prefix, double bound) {
    for (const auto& r : reps)
      if (r.suite.rfind(prefix, 0) == 0) CHECK(r.bound == doctest::Approx(bound));
  };
  expect_bound(suite_lemma21(c), "lemma21", 4.0);
  expect_bound(suite_duality(c), "duality", 1.0);
  expect_bound(suite_stein(c), "stein", 4.0);
  expect_bound(suite_cauchy_schwarz(c), "cauchy_schwarz", 1.0);
  expect_bound(suite_interpolation(c), "interpolation[p=1.5",
               std::pow(4.0, 2.0 - 2.0 / 1.5));
  expect_bound(suite_theorem(c), "theorem[p=2", 16.0);
  expect_bound(suite_theorem(c), "theorem[p=3", std::pow(4.0, 1.0 + 2.0 / 3.0));
}

TEST_CASE("reports are deterministic") {
  SuiteConfig c = small_config();
  c.trials = 5;
  json a = strip_wall_time(run_all(c));
  json b = strip_wall_time(run_all(c));
  CHECK(a.dump() == b.dump());
}

TEST_CASE("unknown suite rejected") {
  CHECK_THROWS(run_suite("nonesuch", small_config()));
}

TEST_CASE("interpolation p=1 ratios are exactly 1 on positives") {
  SuiteConfig c = small_config();
  c.p_list = {1.0};
  for (const auto& rep : suite_interpolation(c)) {
    CHECK(rep.pass);
    for (double r : rep.ratios) CHECK(r == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("stein degenerate inputs stay below ratio 1") {
  // all levels carrying the same positive function: triangle inequality plus
  // contraction keeps the ratio at most 1
  SuiteConfig c = small_config();
  GridFunction g = random_positive_grid_function(7, 2, 64);
  GridFunction num = avg_apply(g, DyadicLevel{0});
  GridFunction den = g;
  for (int n = 1; n <= 3; ++n) {
    GridFunction t = avg_apply(g, DyadicLevel{n});
    for (std::size_t j = 0; j < num.values.size(); ++j) {
      num.values[j] += t.values[j];
      den.values[j] += g.values[j];
    }
  }
  CHECK(grid_lp_norm(num, 2.0) <= grid_lp_norm(den, 2.0) * (1 + 1e-12));
}

TEST_CASE("theorem suite covers the scalar oracle") {
  SuiteConfig c = small_config();
  c.dim = 1;
  c.trials = 5;
  for (const auto& rep : suite_theorem(c)) {
    CAPTURE(rep.suite);
    for (const auto& v : rep.violations) CAPTURE(v.what);
    CHECK(rep.pass);
  }
}

#include "ncmax/sequence.hpp"

#include "ncmax/dominant.hpp"
#include "ncmax/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace ncmax;

namespace {

HermitianOperator diag2(double a, double b) {
  GeneralOperator m = GeneralOperator::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return hermitize(m);
}

// P2 = 1/2 [[1,1],[1,1]]: the 45-degree rank-one projection.
HermitianOperator proj45() {
  GeneralOperator m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return hermitize(m);
}

OperatorSequence basis_pair() {
  return OperatorSequence::make({diag2(1, 0), diag2(0, 1)}, true);
}

}  // namespace

TEST_CASE("OperatorSequence::make validates") {
  CHECK_THROWS(OperatorSequence::make(
      {diag2(1, 0), HermitianOperator::identity(3)}, false));
  CHECK_THROWS(OperatorSequence::make({diag2(1, -1)}, true));
  OperatorSequence ok = OperatorSequence::make({diag2(1, -1)}, false);
  CHECK(ok.size() == 1);
}

TEST_CASE("l1_pos_norm") {
  CHECK(l1_pos_norm(basis_pair(), 1.0) == doctest::Approx(2.0));
  CHECK(l1_pos_norm(basis_pair(), 2.0) == doctest::Approx(std::sqrt(2.0)));
  OperatorSequence single = OperatorSequence::make({proj45() * 3.0}, true);
  CHECK(l1_pos_norm(single, 1.5) ==
        doctest::Approx(schatten_norm(single.items[0].mat(), 1.5)));
}

TEST_CASE("linf_pos_norm") {
  NormResult r = linf_pos_norm(basis_pair(), 2.0);
  CHECK(r.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-7));
  REQUIRE(r.certificate.has_value());
  CHECK((r.certificate->mat() - GeneralOperator::Identity(2, 2)).norm() < 1e-5);

  OperatorSequence pp = OperatorSequence::make({diag2(1, 0), proj45()}, true);
  NormResult rinf = linf_pos_norm(pp, kPInf);
  CHECK(rinf.value == doctest::Approx(1.0));

  NormResult r2 = linf_pos_norm(pp, 2.0);
  double oracle = brute_force_oracle(pp, 2.0, 1e-4);
  CHECK(std::abs(r2.value - oracle) <= 1e-3 * oracle);
  CHECK(r2.lower_bound <= r2.value + 1e-6 * (1 + r2.value));
  CHECK(r2.gap == doctest::Approx(r2.value - r2.lower_bound));
}

TEST_CASE("factorization_value") {
  Factorization f;
  f.left = GeneralOperator::Identity(2, 2);
  f.right = GeneralOperator::Identity(2, 2);
  f.middles = {diag2(1, 0).mat()};
  CHECK(factorization_value(f, 2.0) == doctest::Approx(std::sqrt(2.0)));

  f.left = GeneralOperator::Zero(2, 2);
  f.right = GeneralOperator::Zero(2, 2);
  CHECK(factorization_value(f, 2.0) == 0.0);

  f.left = std::sqrt(2.0) * GeneralOperator::Identity(2, 2);
  f.right = GeneralOperator::Identity(2, 2);
  f.middles = {GeneralOperator::Identity(2, 2)};
  CHECK(factorization_value(f, kPInf) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("l1_factorization_value") {
  // a_n = b_n = x_n^{1/2} recovers the l1 norm exactly
  OperatorSequence seq = random_positive_sequence(77, 3, 3, 1.0);
  L1Factorization fac;
  for (const auto& x : seq.items) {
    GeneralOperator r = matrix_power(x, 0.5).mat();
    fac.lefts.push_back(r);
    fac.rights.push_back(r);
  }
  for (double p : {1.0, 1.5, 2.0, 3.0})
    CHECK(l1_factorization_value(fac, p) ==
          doctest::Approx(l1_pos_norm(seq, p)).epsilon(1e-10));

  L1Factorization one;
  one.lefts = {GeneralOperator::Identity(2, 2)};
  one.rights = {GeneralOperator::Identity(2, 2)};
  CHECK(l1_factorization_value(one, 1.0) == doctest::Approx(2.0));

  L1Factorization zero;
  zero.lefts = {GeneralOperator::Zero(2, 2)};
  zero.rights = {GeneralOperator::Zero(2, 2)};
  CHECK(l1_factorization_value(zero, 2.0) == 0.0);
}

TEST_CASE("l1 factorizations never beat the l1 norm") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(0.0, 1.0);
  OperatorSequence seq = random_positive_sequence(78, 2, 3, 1.0);
  for (int t = 0; t < 25; ++t) {
    // random splits x_n = (x_n^{1/2} w) (w^{-1} x_n^{1/2})
    L1Factorization fac;
    for (const auto& x : seq.items) {
      GeneralOperator w(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) w(i, j) = Complex(g(rng), g(rng));
      w = GeneralOperator::Identity(2, 2) + 0.3 * w;
      GeneralOperator r = matrix_power(x, 0.5).mat();
      fac.lefts.push_back(r * w);
      fac.rights.push_back(w.inverse() * r);
    }
    for (double p : {1.0, 2.0})
      CHECK(l1_factorization_value(fac, p) >= l1_pos_norm(seq, p) - 1e-8);
  }
}

TEST_CASE("factorize_from_dominant") {
  OperatorSequence x1 = OperatorSequence::make({diag2(1, 0)}, true);
  Factorization f = factorize_from_dominant(x1, diag2(2, 1));
  CHECK((f.middles[0] - diag2(0.5, 0).mat()).norm() < 1e-10);

  OperatorSequence xa = random_positive_sequence(79, 3, 1, 1.0);
  HermitianOperator a =
      xa.items[0] + HermitianOperator::identity(3) * 1e-3;  // invertible
  Factorization fa = factorize_from_dominant(
      OperatorSequence::make({a}, true), a);
  CHECK((fa.middles[0] - GeneralOperator::Identity(3, 3)).norm() <= 1e-8);

  // singular dominant exercises the kernel-projection branch
  Factorization fs = factorize_from_dominant(x1, diag2(1, 0));
  CHECK((fs.middles[0] - diag2(1, 0).mat()).norm() < 1e-8);

  CHECK_THROWS(factorize_from_dominant(basis_pair(), diag2(0.5, 0.5)));
}

TEST_CASE("factorize_from_dominant reconstructs and is tight") {
  for (std::uint64_t s : {1u, 2u, 3u, 4u, 5u}) {
    OperatorSequence seq = random_positive_sequence(100 + s, 3, 3, 1.0);
    for (double p : {1.0, 2.0, 3.0}) {
      NormResult r = linf_pos_norm(seq, p);
      REQUIRE(r.certificate.has_value());
      Factorization f = factorize_from_dominant(seq, *r.certificate);
      for (std::size_t n = 0; n < seq.size(); ++n) {
        CHECK((f.left * f.middles[n] * f.right - seq.items[n].mat()).norm() <=
              1e-8 * (1 + seq.items[n].mat().norm()));
        CHECK(schatten_norm(f.middles[n], kPInf) <= 1.0 + 1e-7);
      }
      CHECK(factorization_value(f, p) ==
            doctest::Approx(schatten_norm(r.certificate->mat(), p))
                .epsilon(1e-8));
    }
  }
}

TEST_CASE("dominant_from_factorization") {
  Factorization f;
  f.left = GeneralOperator::Identity(2, 2);
  f.right = GeneralOperator::Identity(2, 2);
  f.middles = {diag2(1, 0).mat()};
  HermitianOperator dom = dominant_from_factorization(f);
  CHECK((dom.mat() - 4.0 * GeneralOperator::Identity(2, 2)).norm() < 1e-12);
  CHECK(loewner_leq(diag2(1, 0), dom, 1e-10));

  f.left = GeneralOperator::Zero(2, 2);
  f.right = GeneralOperator::Zero(2, 2);
  f.middles = {GeneralOperator::Zero(2, 2)};
  CHECK(dominant_from_factorization(f).mat().norm() == 0.0);

  f.left = GeneralOperator::Identity(2, 2);
  f.right = GeneralOperator::Identity(2, 2);
  f.middles = {2.0 * GeneralOperator::Identity(2, 2)};  // not contractive
  CHECK_THROWS(dominant_from_factorization(f));
}

TEST_CASE("dominant_from_factorization dominates random factorizations") {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    Eigen::Index d = 2 + (t % 2);
    auto rnd = [&] {
      GeneralOperator m(d, d);
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(g(rng), g(rng));
      return m;
    };
    Factorization f;
    f.left = rnd();
    f.right = rnd();
    for (int n = 0; n < 3; ++n) {
      GeneralOperator z = rnd();
      f.middles.push_back(z / (schatten_norm(z, kPInf) + 1e-12));
    }
    HermitianOperator dom = dominant_from_factorization(f);
    for (const auto& z : f.middles) {
      GeneralOperator azb = f.left * z * f.right;
      CHECK(loewner_leq(hermitize(azb), dom, 1e-7 * (1 + dom.mat().norm())));
    }
  }
}

TEST_CASE("dual_witness_linf") {
  OperatorSequence w = dual_witness_linf(basis_pair(), 2.0);
  CHECK(w.size() == 2);
  for (const auto& x : w.items)
    CHECK((x.mat() - GeneralOperator::Identity(2, 2)).norm() < 1e-12);

  OperatorSequence wi = dual_witness_linf(
      OperatorSequence::make({HermitianOperator::identity(2)}, true), 3.0);
  CHECK((wi.items[0].mat() - GeneralOperator::Identity(2, 2)).norm() < 1e-12);

  OperatorSequence w2 = dual_witness_linf(
      OperatorSequence::make({diag2(2, 0)}, true), 2.0);
  CHECK((w2.items[0].mat() - diag2(2, 0).mat()).norm() < 1e-12);

  CHECK_THROWS(dual_witness_linf(basis_pair(), 1.0));
  CHECK_THROWS(dual_witness_linf(basis_pair(), kPInf));
}

TEST_CASE("pairing") {
  OperatorSequence ii = OperatorSequence::make(
      {HermitianOperator::identity(2), HermitianOperator::identity(2)}, true);
  CHECK(pairing(ii, basis_pair()) == doctest::Approx(2.0));

  OperatorSequence zero = OperatorSequence::make(
      {HermitianOperator::zero(2)}, true);
  CHECK(pairing(ii, zero) == 0.0);  // zero-padded shorter sequence

  // witness-pairing identity: <witness(y), y> = ||sum y||_p^p
  for (double p : {1.5, 2.0, 3.0}) {
    OperatorSequence y = random_positive_sequence(200, 3, 3, 1.0);
    GeneralOperator s = GeneralOperator::Zero(3, 3);
    for (const auto& item : y.items) s += item.mat();
    double expect = std::pow(schatten_norm(s, p), p);
    CHECK(pairing(dual_witness_linf(y, p), y) ==
          doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("duality_lower_bound") {
  OperatorSequence one =
      OperatorSequence::make({HermitianOperator::identity(2)}, true);
  double lb = duality_lower_bound(one, 2.0);
  CHECK(lb == doctest::Approx(std::sqrt(2.0)).epsilon(1e-7));

  OperatorSequence zero = OperatorSequence::make(
      {HermitianOperator::zero(2), HermitianOperator::zero(2)}, true);
  CHECK(duality_lower_bound(zero, 2.0) == 0.0);

  OperatorSequence pp = OperatorSequence::make({diag2(1, 0), proj45()}, true);
  double oracle = brute_force_oracle(pp, 2.0, 1e-4);
  double bound = duality_lower_bound(pp, 2.0);
  CHECK(bound >= 0.95 * oracle);
  CHECK(bound <= linf_pos_norm(pp, 2.0).value + 1e-6);
}

TEST_CASE("pairing bounded by the factorization norms") {
  for (std::uint64_t s : {11u, 12u, 13u}) {
    OperatorSequence x = random_positive_sequence(s, 2, 3, 1.0);
    OperatorSequence y = random_positive_sequence(s + 50, 2, 3, 1.0);
    for (double p : {1.5, 2.0, 3.0}) {
      double q = conjugate_exponent(p);
      NormResult rq = linf_pos_norm(x, q);
      REQUIRE(rq.certificate.has_value());
      Factorization fx = factorize_from_dominant(x, *rq.certificate);
      L1Factorization fy;
      for (const auto& item : y.items) {
        GeneralOperator r = matrix_power(item, 0.5).mat();
        fy.lefts.push_back(r);
        fy.rights.push_back(r);
      }
      CHECK(std::abs(pairing(x, y)) <=
            factorization_value(fx, q) * l1_factorization_value(fy, p) + 1e-7);
    }
  }
}

TEST_CASE("norm monotonicity, bracketing and scaling") {
  for (std::uint64_t s : {21u, 22u, 23u}) {
    OperatorSequence seq = random_positive_sequence(s, 2, 2, 1.0);
    OperatorSequence ext = random_positive_sequence(s + 5, 2, 3, 1.0);
    for (double p : {1.0, 2.0, 3.0, kPInf}) {
      double v = linf_pos_norm(seq, p).value;
      double v1 = l1_pos_norm(seq, p);

      // bracketing: max_n ||x_n||_p <= linf <= l1
      double mx = 0.0;
      for (const auto& x : seq.items)
        mx = std::max(mx, schatten_norm(x.mat(), p));
      CHECK(mx <= v + 1e-7 * (1 + v));
      CHECK(v <= v1 + 1e-7 * (1 + v1));

      // appending never decreases either norm
      std::vector<HermitianOperator> items = seq.items;
      items.push_back(ext.items[0]);
      OperatorSequence bigger = OperatorSequence::make(std::move(items), true);
      CHECK(linf_pos_norm(bigger, p).value >= v - 1e-7 * (1 + v));
      CHECK(l1_pos_norm(bigger, p) >= v1 - 1e-12);

      // positive homogeneity
      std::vector<HermitianOperator> scaled;
      for (const auto& x : seq.items) scaled.push_back(x * 3.5);
      double vs = linf_pos_norm(OperatorSequence::make(scaled, true), p).value;
      CHECK(vs == doctest::Approx(3.5 * v).epsilon(1e-6));
    }
  }
}

TEST_CASE("Lemma 2.1 sandwich on random sequences") {
  for (std::uint64_t s : {31u, 32u, 33u, 34u}) {
    OperatorSequence seq = random_positive_sequence(s, 3, 3, 1.0);
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      NormResult r = linf_pos_norm(seq, p);
      REQUIRE(r.certificate.has_value());
      Factorization f = factorize_from_dominant(seq, *r.certificate);
      double fv = factorization_value(f, p);
      CHECK(r.value >= fv * (1 - 1e-6));
      CHECK(r.value <= 4.0 * fv + 1e-6);
    }
  }
}

#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "omtope/sign_vector.hpp"
#include "oracles.hpp"

using namespace omtope;

TEST_CASE("orthogonality degree counts separations and agreements") {
  const auto x = SignVector::parse("+-+-0");
  const auto y = SignVector::parse("+++++");
  CHECK(orthogonality_degree(x, y) == OrthogonalityDegree{2, 2, 2});

  const auto t = SignVector::parse("+-0+");
  CHECK(orthogonality_degree(t, t) == OrthogonalityDegree{0, 3, 0});

  CHECK(orthogonality_degree(SignVector::parse("++00"), SignVector::parse("00-+")) == OrthogonalityDegree{0, 0, 0});
}

TEST_CASE("orthogonality degree rejects mismatched lengths") {
  try {
    orthogonality_degree(SignVector::parse("+-"), SignVector::parse("+-+"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::dimension);
  }
}

TEST_CASE("reorientation") {
  const auto t = SignVector::parse("+-+--");
  CHECK(reorient(t, 0) == t);
  CHECK(reorient(SignVector::parse("+-0"), bit(1)) == SignVector::parse("++0"));
  CHECK(reorient(t, full_mask(5)) == -t);
  CHECK(reorient(SignVector::parse("+-0"), bit(2)) == SignVector::parse("+-0"));
  CHECK_THROWS_AS(reorient(t, bit(5)), Error);
}

TEST_CASE("block profile") {
  auto p = block_profile(SignVector::parse("+++++"));
  CHECK(p.m == 1);
  CHECK(p.sizes == std::vector<int>{5});
  CHECK(p.even == 0);
  CHECK(p.odd == 1);

  p = block_profile(SignVector::parse("++--+"));
  CHECK(p.m == 3);
  CHECK(p.sizes == std::vector<int>{2, 2, 1});
  CHECK(p.even == 2);
  CHECK(p.odd == 1);

  CHECK(block_profile(SignVector::parse("+-+-+")).m == 5);

  try {
    block_profile(SignVector::parse("+0-"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::not_a_tope);
  }
}

TEST_CASE("textual form round trip and validation") {
  CHECK(SignVector::parse("+-0+").str() == "+-0+");
  CHECK_THROWS_AS(SignVector::parse("+x-"), Error);
  CHECK_THROWS_AS(SignVector(3, bit(0), bit(0)), Error);
  CHECK_THROWS_AS(SignVector(65), Error);
  CHECK(SignVector::parse("0-+").normalized() == SignVector::parse("0+-"));
}

TEST_CASE("blocks census: 2*C(n-1, m-1) full vectors have m blocks") {
  for (int n = 1; n <= 12; ++n) {
    std::vector<std::uint64_t> census(n + 1, 0);
    for (Mask neg = 0; neg < (Mask{1} << n); ++neg) {
      const int m = block_profile(SignVector::tope(n, neg)).m;
      CHECK(m == block_count(n, neg));
      ++census[m];
    }
    for (int m = 1; m <= n; ++m) CHECK(census[m] == 2 * oracle::binom(n - 1, m - 1));
  }
}

TEST_CASE("orthogonality degree properties on random vectors") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 20);
    auto draw = [&] {
      Mask plus = 0, minus = 0;
      for (int e = 0; e < n; ++e) {
        const auto v = rng() % 3;
        if (v == 1) plus |= bit(e);
        if (v == 2) minus |= bit(e);
      }
      return SignVector(n, plus, minus);
    };
    const auto x = draw(), y = draw();
    const Mask r = rng() & full_mask(n);
    const auto d = orthogonality_degree(x, y);

    CHECK(orthogonality_degree(y, x) == d);
    CHECK(orthogonality_degree(-x, -y) == d);
    const auto neg = orthogonality_degree(-x, y);
    CHECK(neg.separation == d.agreement);
    CHECK(neg.agreement == d.separation);
    CHECK(neg.degree == d.degree);
    CHECK(orthogonality_degree(reorient(x, r), reorient(y, r)) == d);
    CHECK(reorient(reorient(x, r), r) == x);

    oracle::Signs xs(n), ys(n);
    for (int e = 0; e < n; ++e) {
      xs[e] = static_cast<int>(x[e]);
      ys[e] = static_cast<int>(y[e]);
    }
    CHECK(d.degree == oracle::degree(xs, ys));
  }
}

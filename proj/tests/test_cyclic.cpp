#include <sstream>
#include <thread>

#include <catch2/catch_amalgamated.hpp>

#include "omtope/cyclic.hpp"
#include "oracles.hpp"

using namespace omtope;

namespace {

CircuitSet alt(int r, int n) { return circuits_from_chirotope(Chirotope::alternating(r, n)); }

std::vector<BigInt> big(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("cyclic topes are the vectors with few blocks") {
  CHECK_FALSE(is_cyclic_tope(SignVector::parse("+-+-+"), 3));
  CHECK(is_cyclic_tope(SignVector::parse("+++++"), 1));
  CHECK(is_cyclic_tope(SignVector::parse("++--+"), 3));
  CHECK_THROWS_AS(is_cyclic_tope(SignVector::parse("++0-+"), 3), Error);

  for (int r = 1; r <= 6; ++r)
    for (int n = r + 1; n <= 10; ++n) {
      const OrthogonalityKernel kernel(alt(r, n));
      for (Mask neg = 0; neg < (Mask{1} << n); ++neg)
        CHECK(kernel.is_tope(neg) == is_cyclic_tope(SignVector::tope(n, neg), r));
    }
}

TEST_CASE("O(m)") {
  CHECK(big_o(1, 3) == 2);
  CHECK(big_o(1, 5) == 3);
  for (int r = 1; r <= 9; ++r) {
    CHECK(big_o(r, r) == 1);
    CHECK(big_o(r + 1, r) == 0);
  }
}

TEST_CASE("ort from blocks") {
  auto v = ort_cyclic(SignVector::all_positive(7), 5);
  CHECK(v.value == 3);
  CHECK(v.from_blocks);

  v = ort_cyclic(SignVector::parse("++---"), 3);
  CHECK(v.value == 1);
  CHECK(v.from_blocks);

  v = ort_cyclic(SignVector::all_positive(4), 3);
  CHECK(v.value == 2);
  CHECK_FALSE(v.from_blocks);

  CHECK_THROWS_AS(ort_cyclic(SignVector::parse("+-+-+"), 3), Error);

  for (int r = 1; r <= 6; ++r)
    for (int n = r + 1; n <= 9; ++n) {
      const OrthogonalityKernel kernel(alt(r, n));
      for (Mask neg = 0; neg < (Mask{1} << n); ++neg) {
        const auto t = SignVector::tope(n, neg);
        if (!is_cyclic_tope(t, r)) continue;
        CHECK(ort_cyclic(t, r).value == kernel.ort(neg));
      }
    }
}

TEST_CASE("block lemmas on cyclic topes") {
  for (int r = 1; r <= 7; ++r)
    for (int n = r + 1; n <= 10; ++n) {
      const OrthogonalityKernel kernel(alt(r, n));
      for (Mask neg = 0; neg < (Mask{1} << n); ++neg) {
        const auto t = SignVector::tope(n, neg);
        const auto p = block_profile(t);
        if (p.m > r) continue;
        const int o = kernel.ort(neg);
        INFO("r=" << r << " n=" << n << " t=" << t.str());
        CHECK(o >= big_o(p.m, r));

        const int reduced = n - p.even;
        if (n >= r + 2 && r + 1 > reduced)
          CHECK(2 * o <= (reduced - p.m) + 2 * ((r + 1) - reduced) + 2 * (p.odd / 2));

        for (int k = 0; k <= max_level(r); ++k) {
          if (n < 2 * (r - k) + 3) continue;
          if (big_o(p.m, r) >= k) CHECK(o == big_o(p.m, r));
          else CHECK(o <= k - 1);
        }
      }
    }
}

TEST_CASE("uniform tope count") {
  CHECK(tope_count_uniform(3, 5) == 22);
  CHECK(tope_count_uniform(4, 6) == 52);
  for (int r = 1; r <= 20; ++r) CHECK(tope_count_uniform(r, r + 1) == 2 * ((BigInt(1) << r) - 1));
  for (int r = 1; r <= 8; ++r)
    for (int n = r + 1; n <= 14; ++n) {
      BigInt census = 0;
      for (int m = 1; m <= r; ++m) census += 2 * big_binomial(n - 1, m - 1);
      CHECK(census == tope_count_uniform(r, n));
    }
}

TEST_CASE("closed-form o-vector entries") {
  CHECK(o_vector_closed(3, 7, 0) == big({42, 2}));
  CHECK(o_vector_closed(5, 9, 1) == big({72, 2}));
  CHECK(o_vector_closed(3, 7, 0)[0] + o_vector_closed(3, 7, 0)[1] == tope_count_uniform(3, 7));
  try {
    o_vector_closed(4, 6, 1);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::out_of_validity);
  }
  // The threshold is sharp: just below it the formula would say 12.
  CHECK(o_vector(alt(4, 6)).entries[1] == 16);
  CHECK(2 * big_binomial(6, 1) == 12);
}

TEST_CASE("closed form agrees with enumeration wherever it applies") {
  for (int r = 1; r <= 7; ++r)
    for (int n = r + 1; n <= 12; ++n) {
      const auto ov = o_vector(alt(r, n));
      for (int k = 0; k <= max_level(r); ++k) {
        if (!closed_form_valid(r, n, k)) continue;
        const auto closed = o_vector_closed(r, n, k);
        for (int i = k; i <= max_level(r); ++i) CHECK(closed[i - k] == ov.entries[i]);
      }
    }
}

TEST_CASE("o-vector of C_r(r+1)") {
  CHECK(o_vector_small(4) == big({10, 20}));
  CHECK(o_vector_small(5) == big({12, 30, 20}));
  CHECK(o_vector_small(3) == big({8, 6}));
  for (int r = 3; r <= 8; ++r) {
    const auto small = o_vector_small(r);
    const auto ov = o_vector(alt(r, r + 1));
    REQUIRE(small.size() == ov.entries.size());
    BigInt total = 0;
    for (std::size_t i = 0; i < small.size(); ++i) {
      CHECK(small[i] == ov.entries[i]);
      total += small[i];
    }
    CHECK(total == tope_count_uniform(r, r + 1));
  }
}

TEST_CASE("c values") {
  CValueTable table;
  CHECK(table.value(6, 9, 2) == 18);
  CHECK(table.value(7, 10, 3) == 2);
  CHECK(table.value(5, 8, 2) == 2);
  CHECK(table.value(5, 9, 2) == 2);
  CHECK(table.value(6, 10, 2) == 20);
  CHECK(table.value(6, 10, 2) == table.value(6, 9, 2) + table.value(5, 9, 2));
  CHECK(table.get(6, 10, 2).provenance == Provenance::closed_form);
  CHECK(table.get(4, 5, 0).provenance == Provenance::small_formula);
  CHECK(table.get(4, 6, 1).provenance == Provenance::brute_force);
  CHECK(table.defects().empty());

  CHECK(table.value_or_zero(4, 6, 2) == 0);
  CHECK_THROWS_AS(table.value(4, 4, 0), Error);
  CHECK_THROWS_AS(table.value(4, 6, 2), Error);
}

TEST_CASE("c values are monotone in k and match enumeration") {
  CValueTable table;
  for (int r = 1; r <= 6; ++r)
    for (int n = r + 1; n <= 10; ++n) {
      const auto ms = o_vector(alt(r, n)).m_values();
      for (int k = 0; k <= max_level(r); ++k) {
        CHECK(table.value(r, n, k) == ms[k]);
        if (k > 0) CHECK(table.value(r, n, k) <= table.value(r, n, k - 1));
      }
    }
  CHECK(table.defects().empty());
}

TEST_CASE("recurrence on brute-force cells") {
  for (int r = 2; r <= 7; ++r)
    for (int n = r + 2; n <= 12; ++n)
      for (int k = 0; k <= max_level(r); ++k) {
        if (n - 1 < 2 * (r - k) + 1) continue;
        const auto whole = c_value_brute_force(r, n, k);
        const auto del = c_value_brute_force(r, n - 1, k);
        const auto con = k <= max_level(r - 1) ? c_value_brute_force(r - 1, n - 1, k) : 0;
        INFO("r=" << r << " n=" << n << " k=" << k);
        CHECK(whole == del + con);
      }
}

TEST_CASE("derived cells carry recurrence provenance") {
  CValueTable table;
  const auto cell = table.derive_by_recurrence(6, 10, 2);
  CHECK(cell.value == 20);
  CHECK(cell.provenance == Provenance::recurrence);
  CHECK(table.lookup(6, 10, 2)->provenance == Provenance::recurrence);
  CHECK_THROWS_AS(table.derive_by_recurrence(6, 8, 2), Error);
}

TEST_CASE("cache round trip") {
  CValueTable table;
  table.value(3, 5, 1);
  table.value(5, 6, 2);
  table.value(6, 9, 2);
  std::ostringstream out;
  table.save(out);
  CHECK(out.str().find("3 5 1 2 ") != std::string::npos);

  CValueTable loaded;
  std::istringstream in(out.str());
  loaded.load(in);
  for (auto [r, n, k] : {std::tuple{3, 5, 1}, {5, 6, 2}, {6, 9, 2}}) {
    REQUIRE(loaded.lookup(r, n, k));
    CHECK(loaded.lookup(r, n, k)->value == table.lookup(r, n, k)->value);
    CHECK(loaded.lookup(r, n, k)->provenance == table.lookup(r, n, k)->provenance);
  }
  std::istringstream bad("3 5 1 2 magic\n");
  CHECK_THROWS_AS(loaded.load(bad), Error);
}

TEST_CASE("concurrent fills agree") {
  CValueTable table;
  std::vector<std::jthread> workers;
  for (int w = 0; w < 4; ++w)
    workers.emplace_back([&] {
      for (int n = 6; n <= 10; ++n) table.value(5, n, 1);
    });
  workers.clear();
  for (int n = 6; n <= 10; ++n) CHECK(table.value(5, n, 1) == c_value_brute_force(5, n, 1));
}

TEST_CASE("literature formula for k = 1 is not trusted") {
  CHECK(literature_c1(3, 5) == 8);
  CHECK(literature_c1(3, 4) == 10);
  CHECK(c_value_brute_force(3, 5, 1) == 2);
  CHECK(c_value_brute_force(3, 4, 1) == 6);
  const auto checks = literature_c1_validity(5, 9);
  bool any_mismatch = false;
  for (const auto& c : checks) any_mismatch = any_mismatch || !c.matches();
  CHECK(any_mismatch);
}

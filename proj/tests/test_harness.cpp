#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "omtope/harness.hpp"

using namespace omtope;

namespace {

// A synthetic database: the alternating matroid, some of its reorientations
// and a handful of random realizable chirotopes, all of the same shape.
std::string synthetic_database(int r, int n, int count, std::uint64_t seed) {
  std::ostringstream out;
  out << "# synthetic r=" << r << " n=" << n << "\n";
  const auto alt = Chirotope::alternating(r, n);
  out << "alt " << alt.serialize() << "\n\n";
  out << alt.reoriented(bit(0) | bit(2)).serialize() << "\n";
  PointSampler sampler(seed);
  for (int i = 0; i < count; ++i) out << "rand" << i << ' ' << sampler.sample(r, n).serialize() << "\n";
  return out.str();
}

std::vector<std::string> ids(const std::vector<RecordRef>& refs) {
  std::vector<std::string> out;
  for (const auto& ref : refs) out.push_back(ref.id);
  std::sort(out.begin(), out.end());
  return out;
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an omtope::Error");
  return ErrorKind::domain;
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("omtope_test_" + name);
  std::filesystem::remove(p);
  return p;
}

}  // namespace

TEST_CASE("database reader") {
  std::istringstream one("++++\n");
  auto recs = read_database(one, 3, 4);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].id == "1");
  CHECK(recs[0].chirotope == Chirotope::alternating(3, 4));

  std::istringstream labelled("# header\n\nfirst ++++\n  # indented comment\n---+\n");
  recs = read_database(labelled, 3, 4);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].id == "first");
  CHECK(recs[0].seq == 1);
  CHECK(recs[1].id == "5");
  CHECK(recs[1].seq == 2);

  std::istringstream bad("++++\n+++\n");
  try {
    read_database(bad, 3, 4);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::format);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  std::istringstream zero("++++\n++0+\n");
  try {
    read_database(zero, 3, 4);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::non_uniform_unsupported);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  std::istringstream extra("a b ++++\n");
  CHECK(kind_of([&] { read_database(extra, 3, 4); }) == ErrorKind::format);
}

TEST_CASE("report rows") {
  CValueTable table;
  const DatabaseRecord rec{"x", 1, Chirotope::alternating(4, 6)};
  const auto row = compute_row(rec, table);
  CHECK(row.ovector.entries == std::vector<std::uint64_t>{36, 16});
  CHECK(row.m == std::vector<std::uint64_t>{52, 16});
  CHECK(row.attains == std::vector<bool>{true, true});
  const auto j = to_json(row);
  CHECK(j.dump() == R"({"attains":[true,true],"id":"x","m":[52,16],"ovector":[36,16]})");

  // Not a chirotope: the tope count check catches it.
  std::string signs = Chirotope::alternating(3, 6).serialize();
  signs[5] = '-';
  const DatabaseRecord broken{"y", 1, Chirotope::parse(signs, 3, 6)};
  CHECK(kind_of([&] { compute_row(broken, table); }) == ErrorKind::format);
  // Flipping the first basis is a mutation and stays a chirotope.
  signs = Chirotope::alternating(3, 6).serialize();
  signs[0] = '-';
  CHECK(compute_row({"z", 1, Chirotope::parse(signs, 3, 6)}, table).m[0] == 32);
}

TEST_CASE("reports on the alternating matroid alone") {
  CValueTable table;
  for (auto [r, n, k] : std::initializer_list<std::tuple<int, int, int>>{{3, 5, 1}, {5, 7, 2}, {5, 8, 2}}) {
    const std::vector<DatabaseRecord> db{{"alt", 1, Chirotope::alternating(r, n)}};
    const auto agg = roudneff_report(db, k, table);
    CHECK(BigInt(agg.max_m) == table.value(r, n, k));
    CHECK(agg.attaining == 1);
    CHECK(agg.roudneff_holds());
    CHECK(mcmullen_report(db, k, table).mcmullen_holds());
  }
  const std::vector<DatabaseRecord> db{{"alt", 1, Chirotope::alternating(5, 7)}};
  CHECK(mcmullen_report(db, 2, table).min_m == 2);
}

TEST_CASE("reports on a synthetic database") {
  CValueTable table;
  std::istringstream in(synthetic_database(5, 8, 30, 123));
  const auto db = read_database(in, 5, 8);
  REQUIRE(db.size() == 32);
  std::vector<ReportRow> rows;
  const auto agg = roudneff_report(db, 2, table, &rows);
  CHECK(agg.records == 32);
  CHECK(agg.roudneff_holds());
  CHECK(agg.max_m == 2);
  CHECK(agg.attaining >= 2);  // the alternating matroid and its reorientation
  for (const auto& row : rows) {
    const auto ms = row.ovector.m_values();
    CHECK(row.m == ms);
    CHECK(row.m[0] == 2 * (1 + 7 + 21 + 35 + 35));
  }
  const auto zeros = ids(agg.zero_m);
  for (const auto& row : rows) CHECK(std::binary_search(zeros.begin(), zeros.end(), row.id) == (row.m[2] == 0));
  CHECK(agg.mcmullen_holds() == zeros.empty());

  std::vector<DatabaseRecord> mixed(db.begin(), db.begin() + 2);
  mixed.push_back({"odd", 99, Chirotope::alternating(5, 9)});
  CHECK(kind_of([&] { roudneff_report(mixed, 2, table); }) == ErrorKind::domain);
}

TEST_CASE("aggregates do not depend on threads or record order") {
  CValueTable table;
  std::istringstream in(synthetic_database(4, 8, 40, 9));
  auto db = read_database(in, 4, 8);
  std::vector<ReportRow> base_rows;
  const auto base = run_batch(db, 1, table, &base_rows, 1);
  for (unsigned threads : {2u, 3u, 5u}) {
    std::vector<ReportRow> rows;
    CHECK(run_batch(db, 1, table, &rows, threads) == base);
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(to_json(rows[i]) == to_json(base_rows[i]));
  }

  std::shuffle(db.begin(), db.end(), std::mt19937(5));
  for (std::size_t i = 0; i < db.size(); ++i) db[i].seq = i + 1;
  const auto shuffled = run_batch(db, 1, table, nullptr, 3);
  CHECK(shuffled.max_m == base.max_m);
  CHECK(shuffled.min_m == base.min_m);
  CHECK(shuffled.attaining == base.attaining);
  CHECK(shuffled.exceeds_alternating == base.exceeds_alternating);
  CHECK(ids(shuffled.argmax) == ids(base.argmax));
  CHECK(ids(shuffled.zero_m) == ids(base.zero_m));
}

TEST_CASE("streaming batch with checkpoint resume") {
  CValueTable table;
  const auto text = synthetic_database(3, 7, 25, 77);

  std::istringstream full_in(text);
  DatabaseReader full_reader(full_in, 3, 7);
  BatchOptions options;
  options.k = 1;
  options.chunk = 4;
  std::vector<std::string> streamed;
  const auto full = run_batch(full_reader, options, table, [&](const ReportRow& r) { streamed.push_back(r.id); });
  CHECK(full.records == 27);
  CHECK(streamed.size() == 27);
  CHECK(streamed.front() == "alt");

  // Simulate an interruption after the first 10 records.
  const auto cp = scratch("checkpoint.json");
  {
    std::istringstream in(text);
    DatabaseReader reader(in, 3, 7);
    std::vector<DatabaseRecord> head;
    for (int i = 0; i < 10; ++i) head.push_back(*reader.next());
    auto partial = start_aggregate(3, 7, 1, table);
    for (const auto& rec : head) partial.add(compute_row(rec, table));
    write_checkpoint(cp, head.back().seq, partial);
  }
  std::istringstream in(text);
  DatabaseReader reader(in, 3, 7);
  options.checkpoint = cp;
  options.threads = 2;
  std::vector<std::string> resumed;
  const auto agg = run_batch(reader, options, table, [&](const ReportRow& r) { resumed.push_back(r.id); });
  CHECK(agg == full);
  CHECK(resumed.size() == 17);
  CHECK(resumed == std::vector<std::string>(streamed.begin() + 10, streamed.end()));

  const auto saved = read_checkpoint(cp);
  REQUIRE(saved);
  CHECK(saved->first == 27);
  CHECK(saved->second == full);

  // A finished checkpoint makes a rerun a no-op.
  std::istringstream again(text);
  DatabaseReader reader2(again, 3, 7);
  std::size_t emitted = 0;
  CHECK(run_batch(reader2, options, table, [&](const ReportRow&) { ++emitted; }) == full);
  CHECK(emitted == 0);

  // A checkpoint for another level is refused.
  std::istringstream other(text);
  DatabaseReader reader3(other, 3, 7);
  options.k = 0;
  CHECK(kind_of([&] { run_batch(reader3, options, table); }) == ErrorKind::domain);
  std::filesystem::remove(cp);
}

TEST_CASE("aggregate json round trip") {
  CValueTable table;
  std::istringstream in(synthetic_database(5, 8, 6, 3));
  const auto db = read_database(in, 5, 8);
  const auto agg = roudneff_report(db, 2, table);
  CHECK(aggregate_from_json(to_json(agg)) == agg);
}

TEST_CASE("deletion/contraction audit") {
  for (const auto& e : deletion_contraction_audit(Chirotope::alternating(4, 6), 0)) {
    CHECK(e.whole == 52);
    CHECK(e.deletion == 30);
    CHECK(e.contraction == 22);
    CHECK(e.whole == e.deletion + e.contraction);
  }
  // The o-level analogue fails strictly.
  const auto o46 = o_vector(circuits_from_chirotope(Chirotope::alternating(4, 6))).entries[0];
  const auto o45 = o_vector(circuits_from_chirotope(Chirotope::alternating(4, 5))).entries[0];
  const auto o35 = o_vector(circuits_from_chirotope(Chirotope::alternating(3, 5))).entries[0];
  CHECK(o46 == 36);
  CHECK(o45 + o35 == 30);
  CHECK(o46 > o45 + o35);

  for (const auto& e : deletion_contraction_audit(Chirotope::alternating(5, 8), 2)) {
    CHECK(e.whole == 2);
    CHECK(e.contraction == 0);  // rank 4 admits no level 2
    CHECK(e.holds());
  }

  PointSampler sampler(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto chi = sampler.sample(4, 7);
    for (int k = 0; k <= 1; ++k)
      for (const auto& e : deletion_contraction_audit(chi, k)) CHECK(e.holds());
  }
  CHECK(kind_of([] { deletion_contraction_audit(Chirotope::alternating(4, 5), 0); }) == ErrorKind::domain);
}

TEST_CASE("finite reduction") {
  CValueTable table;
  auto report = finite_reduction_check(3, 1, {}, table);
  CHECK(report.verdict == Verdict::holds);
  for (int n = 5; n <= 8; ++n) CHECK(table.value(3, n, 1) == 2);

  for (int r : {5, 7}) {
    report = finite_reduction_check(r, (r - 1) / 2, {}, table);
    CHECK(report.verdict == Verdict::holds);
  }

  report = finite_reduction_check(6, 2, {}, table);
  CHECK(report.verdict == Verdict::incomplete);
  bool names_missing = false;
  for (const auto& b : report.bases)
    if (b.status == BaseCaseStatus::missing) names_missing = names_missing || (b.r == 6 && b.n == 9);
  CHECK(names_missing);
  for (const auto& rc : report.recurrence) CHECK(rc.holds());

  // Supplying synthetic databases for the missing bases of (5, 1).
  const auto db4 = scratch("r4n7.txt"), db5 = scratch("r5n9.txt");
  {
    std::ofstream(db4) << synthetic_database(4, 7, 10, 5);
    std::ofstream(db5) << synthetic_database(5, 9, 10, 6);
  }
  report = finite_reduction_check(5, 1, {{{5, 9}, db5}}, table);
  CHECK(report.verdict == Verdict::incomplete);
  report = finite_reduction_check(5, 1, {{{5, 9}, db5}, {{4, 7}, db4}}, table);
  CHECK(report.verdict == Verdict::holds);
  for (const auto& b : report.bases)
    if (b.status == BaseCaseStatus::database) CHECK(b.aggregate->records == 12);
  std::filesystem::remove(db4);
  std::filesystem::remove(db5);
}

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "omtope/chirotope.hpp"
#include "omtope/circuits.hpp"
#include "omtope/cyclic.hpp"
#include "omtope/error.hpp"
#include "omtope/neighborly.hpp"
#include "omtope/parallel.hpp"

namespace omtope {

/// One chirotope from a database file. `seq` is the 1-based record ordinal,
/// `id` the optional label or else the line number.
struct DatabaseRecord {
  std::string id;
  std::uint64_t seq = 0;
  Chirotope chirotope;
};

/// Streams records from a text database: one chirotope per line, optionally
/// preceded by a whitespace-separated label. Blank lines and lines starting
/// with '#' are skipped.
class DatabaseReader {
 public:
  DatabaseReader(std::istream& in, int r, int n, BaseOrder order = BaseOrder::lex)
      : in_(in), r_(r), n_(n), order_(order) {}

  int rank() const { return r_; }
  int size() const { return n_; }

  std::optional<DatabaseRecord> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++lineno_;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      std::istringstream ss(line);
      std::vector<std::string> tokens;
      for (std::string t; ss >> t;) tokens.push_back(std::move(t));
      if (tokens.size() > 2) fail(ErrorKind::format, "expected '[label] chirotope'");
      DatabaseRecord rec;
      rec.id = tokens.size() == 2 ? tokens[0] : std::to_string(lineno_);
      rec.seq = ++records_;
      try {
        rec.chirotope = Chirotope::parse(tokens.back(), r_, n_, order_);
      } catch (const Error& e) {
        fail(e.kind(), e.message());
      }
      return rec;
    }
    return std::nullopt;
  }

 private:
  [[noreturn]] void fail(ErrorKind kind, const std::string& what) const {
    throw Error(kind, "line " + std::to_string(lineno_) + ": " + what);
  }

  std::istream& in_;
  int r_;
  int n_;
  BaseOrder order_;
  std::uint64_t lineno_ = 0;
  std::uint64_t records_ = 0;
};

inline std::vector<DatabaseRecord> read_database(std::istream& in, int r, int n, BaseOrder order = BaseOrder::lex) {
  DatabaseReader reader(in, r, n, order);
  std::vector<DatabaseRecord> out;
  while (auto rec = reader.next()) out.push_back(std::move(*rec));
  return out;
}

struct ReportRow {
  std::string id;
  std::uint64_t seq = 0;
  OVector ovector;
  std::vector<std::uint64_t> m;
  std::vector<bool> attains;  // m[k] == c_r(n,k)

  bool zero_m(int k) const { return m.at(k) == 0; }
};

inline nlohmann::json to_json(const ReportRow& row) {
  return {{"id", row.id}, {"ovector", row.ovector.entries}, {"m", row.m}, {"attains", row.attains}};
}

/// Computes a row; first checks the tope count against the uniform formula,
/// which catches base-order and transcription mistakes cheaply.
inline ReportRow compute_row(const DatabaseRecord& rec, CValueTable& table, bool check_tope_count = true) {
  const auto& chi = rec.chirotope;
  const auto cs = circuits_from_chirotope(chi);
  require_circuits(cs);
  if (check_tope_count) {
    const auto topes = count_topes(cs);
    const auto expected = tope_count_uniform(chi.rank(), chi.size());
    require(BigInt(topes) == expected, ErrorKind::format,
            "record " + rec.id + ": " + std::to_string(topes) + " topes, expected " + expected.str() +
                " (not a chirotope, or wrong --base-order?)");
  }
  ReportRow row{rec.id, rec.seq, o_vector(cs), {}, {}};
  row.m = row.ovector.m_values();
  for (int k = 0; k < static_cast<int>(row.m.size()); ++k)
    row.attains.push_back(BigInt(row.m[k]) == table.value(chi.rank(), chi.size(), k));
  return row;
}

struct RecordRef {
  std::uint64_t seq = 0;
  std::string id;
  friend bool operator==(const RecordRef&, const RecordRef&) = default;
  friend auto operator<=>(const RecordRef&, const RecordRef&) = default;
};

/// Order-independent summary of a database pass at one level k.
struct BatchAggregate {
  int r = 0;
  int n = 0;
  int k = 0;
  BigInt c;                              // c_r(n,k)
  std::vector<std::uint64_t> alternating;  // o-vector of C_r(n)

  std::uint64_t records = 0;
  std::uint64_t max_m = 0;
  std::vector<RecordRef> argmax;
  std::uint64_t attaining = 0;  // m[k] == c
  std::optional<std::uint64_t> min_m;
  std::vector<RecordRef> zero_m;
  std::vector<std::uint64_t> exceeds_alternating;  // per i: records with o[i] > o(C_r(n), i)

  void add(const ReportRow& row) {
    BatchAggregate one = empty_like();
    const auto mk = row.m.at(k);
    one.records = 1;
    one.max_m = mk;
    one.argmax = {{row.seq, row.id}};
    one.attaining = BigInt(mk) == c ? 1 : 0;
    one.min_m = mk;
    if (mk == 0) one.zero_m = {{row.seq, row.id}};
    for (std::size_t i = 0; i < alternating.size(); ++i)
      one.exceeds_alternating[i] = row.ovector.entries.at(i) > alternating[i] ? 1 : 0;
    merge(one);
  }

  void merge(const BatchAggregate& o) {
    if (o.records == 0) return;
    if (records == 0 || o.max_m > max_m) {
      max_m = o.max_m;
      argmax = o.argmax;
    } else if (o.max_m == max_m) {
      argmax.insert(argmax.end(), o.argmax.begin(), o.argmax.end());
      std::sort(argmax.begin(), argmax.end());
    }
    min_m = min_m ? std::min(*min_m, *o.min_m) : o.min_m;
    zero_m.insert(zero_m.end(), o.zero_m.begin(), o.zero_m.end());
    std::sort(zero_m.begin(), zero_m.end());
    records += o.records;
    attaining += o.attaining;
    for (std::size_t i = 0; i < exceeds_alternating.size(); ++i) exceeds_alternating[i] += o.exceeds_alternating[i];
  }

  BatchAggregate empty_like() const {
    BatchAggregate e;
    e.r = r, e.n = n, e.k = k, e.c = c, e.alternating = alternating;
    e.exceeds_alternating.assign(alternating.size(), 0);
    return e;
  }

  /// Every record satisfies m(M,k) <= c_r(n,k).
  bool roudneff_holds() const { return BigInt(max_m) <= c; }
  /// Every record has a k-neighborly reorientation.
  bool mcmullen_holds() const { return records > 0 && min_m && *min_m > 0; }

  friend bool operator==(const BatchAggregate&, const BatchAggregate&) = default;
};

inline nlohmann::json to_json(const std::vector<RecordRef>& refs) {
  auto out = nlohmann::json::array();
  for (const auto& ref : refs) out.push_back({{"seq", ref.seq}, {"id", ref.id}});
  return out;
}

inline std::vector<RecordRef> refs_from_json(const nlohmann::json& j) {
  std::vector<RecordRef> out;
  for (const auto& item : j) out.push_back({item.at("seq").get<std::uint64_t>(), item.at("id").get<std::string>()});
  return out;
}

inline nlohmann::json to_json(const BatchAggregate& a) {
  nlohmann::json j = {{"r", a.r},
                      {"n", a.n},
                      {"k", a.k},
                      {"c", a.c.str()},
                      {"alternating_ovector", a.alternating},
                      {"records", a.records},
                      {"max_m", a.max_m},
                      {"argmax", to_json(a.argmax)},
                      {"attaining", a.attaining},
                      {"min_m", a.min_m ? nlohmann::json(*a.min_m) : nlohmann::json(nullptr)},
                      {"zero_m", to_json(a.zero_m)},
                      {"exceeds_alternating", a.exceeds_alternating},
                      {"roudneff_holds", a.roudneff_holds()},
                      {"mcmullen_holds", a.mcmullen_holds()}};
  return j;
}

inline BatchAggregate aggregate_from_json(const nlohmann::json& j) {
  BatchAggregate a;
  a.r = j.at("r");
  a.n = j.at("n");
  a.k = j.at("k");
  a.c = BigInt(j.at("c").get<std::string>());
  a.alternating = j.at("alternating_ovector").get<std::vector<std::uint64_t>>();
  a.records = j.at("records");
  a.max_m = j.at("max_m");
  a.argmax = refs_from_json(j.at("argmax"));
  a.attaining = j.at("attaining");
  if (!j.at("min_m").is_null()) a.min_m = j.at("min_m").get<std::uint64_t>();
  a.zero_m = refs_from_json(j.at("zero_m"));
  a.exceeds_alternating = j.at("exceeds_alternating").get<std::vector<std::uint64_t>>();
  return a;
}

inline BatchAggregate start_aggregate(int r, int n, int k, CValueTable& table) {
  require(n >= r + 1, ErrorKind::domain, "database matroids need n >= r+1");
  require(k >= 0 && k <= max_level(r), ErrorKind::domain,
          "level " + std::to_string(k) + " outside 0.." + std::to_string(max_level(r)));
  BatchAggregate a;
  a.r = r, a.n = n, a.k = k;
  a.c = table.value(r, n, k);
  a.alternating = o_vector(circuits_from_chirotope(Chirotope::alternating(r, n))).entries;
  a.exceeds_alternating.assign(a.alternating.size(), 0);
  return a;
}

struct BatchOptions {
  int k = 0;
  unsigned threads = 1;
  std::size_t chunk = 256;  // records per worker between checkpoints
  std::optional<std::filesystem::path> checkpoint;
  bool check_tope_counts = true;
};

/// Writes {"last_seq", "aggregate"} atomically (temp file + rename).
inline void write_checkpoint(const std::filesystem::path& path, std::uint64_t last_seq, const BatchAggregate& agg) {
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp);
    require(static_cast<bool>(out), ErrorKind::format, "cannot write checkpoint " + tmp.string());
    out << nlohmann::json{{"last_seq", last_seq}, {"aggregate", to_json(agg)}}.dump() << '\n';
  }
  std::filesystem::rename(tmp, path);
}

inline std::optional<std::pair<std::uint64_t, BatchAggregate>> read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  nlohmann::json j;
  try {
    in >> j;
    return std::make_pair(j.at("last_seq").get<std::uint64_t>(), aggregate_from_json(j.at("aggregate")));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::format, "checkpoint " + path.string() + " unreadable: " + e.what());
  }
}

/// Streams a database through the o-vector pipeline. Rows reach `sink` in
/// record order; the aggregate does not depend on the thread count. With a
/// checkpoint path, progress is saved after each chunk and a rerun resumes
/// after the last saved record without re-emitting its rows.
inline BatchAggregate run_batch(DatabaseReader& reader, const BatchOptions& options, CValueTable& table,
                                const std::function<void(const ReportRow&)>& sink = {}) {
  BatchAggregate agg = start_aggregate(reader.rank(), reader.size(), options.k, table);
  std::uint64_t resume_after = 0;
  if (options.checkpoint) {
    if (auto saved = read_checkpoint(*options.checkpoint)) {
      const auto& [last, partial] = *saved;
      require(partial.r == agg.r && partial.n == agg.n && partial.k == agg.k, ErrorKind::domain,
              "checkpoint belongs to a different (r, n, k)");
      resume_after = last;
      agg = partial;
    }
  }

  const unsigned threads = std::max(1u, options.threads);
  const std::size_t per_round = std::max<std::size_t>(1, options.chunk) * threads;
  bool done = false;
  while (!done) {
    std::vector<DatabaseRecord> batch;
    while (batch.size() < per_round) {
      auto rec = reader.next();
      if (!rec) {
        done = true;
        break;
      }
      if (rec->seq <= resume_after) continue;
      batch.push_back(std::move(*rec));
    }
    if (batch.empty()) break;

    std::vector<ReportRow> rows(batch.size());
    parallel_reduce(
        std::uint64_t{0}, batch.size(), threads, 0,
        [&](std::uint64_t lo, std::uint64_t hi) {
          for (auto i = lo; i < hi; ++i) rows[i] = compute_row(batch[i], table, options.check_tope_counts);
          return 0;
        },
        [](int a, int) { return a; });

    for (const auto& row : rows) {
      agg.add(row);
      if (sink) sink(row);
    }
    if (options.checkpoint) write_checkpoint(*options.checkpoint, batch.back().seq, agg);
  }
  return agg;
}

/// In-memory variant; all records must share (r, n).
inline BatchAggregate run_batch(std::span<const DatabaseRecord> records, int k, CValueTable& table,
                                std::vector<ReportRow>* rows = nullptr, unsigned threads = 1) {
  require(!records.empty(), ErrorKind::domain, "empty database");
  const int r = records.front().chirotope.rank(), n = records.front().chirotope.size();
  for (const auto& rec : records)
    require(rec.chirotope.rank() == r && rec.chirotope.size() == n, ErrorKind::domain,
            "database mixes (r, n) shapes; record " + rec.id + " differs");
  BatchAggregate agg = start_aggregate(r, n, k, table);
  std::vector<ReportRow> computed(records.size());
  parallel_reduce(
      std::uint64_t{0}, records.size(), threads, 0,
      [&](std::uint64_t lo, std::uint64_t hi) {
        for (auto i = lo; i < hi; ++i) computed[i] = compute_row(records[i], table);
        return 0;
      },
      [](int a, int) { return a; });
  for (const auto& row : computed) agg.add(row);
  if (rows) *rows = std::move(computed);
  return agg;
}

/// Max of m(M,k) over the database against c_r(n,k).
inline BatchAggregate roudneff_report(std::span<const DatabaseRecord> records, int k, CValueTable& table,
                                      std::vector<ReportRow>* rows = nullptr) {
  return run_batch(records, k, table, rows);
}

/// Min of m(M,k); every zero is a matroid without a k-neighborly reorientation.
inline BatchAggregate mcmullen_report(std::span<const DatabaseRecord> records, int k, CValueTable& table) {
  return run_batch(records, k, table);
}

struct AuditEntry {
  int element = 0;  // 0-based
  std::uint64_t whole = 0;
  std::uint64_t deletion = 0;
  std::uint64_t contraction = 0;
  bool holds() const { return whole <= deletion + contraction; }
};

/// m(M,k) for a minor of rank r'; zero when k exceeds floor((r'-1)/2).
inline std::uint64_t m_value_or_zero(const Chirotope& chi, int k, unsigned threads = 1) {
  if (k > max_level(chi.rank())) return 0;
  return m_value(circuits_from_chirotope(chi), k, threads);
}

/// m(M,k) <= m(M\e,k) + m(M/e,k) for every element e.
inline std::vector<AuditEntry> deletion_contraction_audit(const Chirotope& chi, int k, unsigned threads = 1) {
  require(chi.size() >= chi.rank() + 2, ErrorKind::domain, "audit needs n >= r+2 so both minors have circuits");
  require(chi.rank() >= 2, ErrorKind::domain, "audit needs r >= 2");
  require(k >= 0 && k <= max_level(chi.rank()), ErrorKind::domain, "level outside 0..floor((r-1)/2)");
  const auto whole = m_value(circuits_from_chirotope(chi), k, threads);
  std::vector<AuditEntry> out;
  for (int e = 0; e < chi.size(); ++e) {
    out.push_back({e, whole, m_value_or_zero(chi.deleted(e), k, threads),
                   m_value_or_zero(chi.contracted(e), k, threads)});
  }
  return out;
}

enum class Verdict { holds, counterexample, incomplete };

constexpr std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::counterexample: return "counterexample";
    case Verdict::incomplete: return "incomplete-evidence";
  }
  return "?";
}

enum class BaseCaseStatus { inadmissible, tope_count, single_class, database, missing };

constexpr std::string_view to_string(BaseCaseStatus s) {
  switch (s) {
    case BaseCaseStatus::inadmissible: return "k-inadmissible";
    case BaseCaseStatus::tope_count: return "tope-count-invariant";
    case BaseCaseStatus::single_class: return "single-reorientation-class";
    case BaseCaseStatus::database: return "database";
    case BaseCaseStatus::missing: return "missing-database";
  }
  return "?";
}

struct BaseCase {
  int r = 0;
  int n = 0;
  BaseCaseStatus status = BaseCaseStatus::missing;
  std::optional<BatchAggregate> aggregate;
  bool holds() const {
    if (status == BaseCaseStatus::missing) return false;
    return !aggregate || aggregate->roudneff_holds();
  }
};

struct RecurrenceCheck {
  int r = 0;
  int n = 0;
  BigInt whole, deletion, contraction;
  bool holds() const { return whole == deletion + contraction; }
};

struct ReductionReport {
  int r = 0;
  int k = 0;
  Verdict verdict = Verdict::incomplete;
  std::vector<BaseCase> bases;
  std::vector<RecurrenceCheck> recurrence;
};

using DatabaseMap = std::map<std::pair<int, int>, std::filesystem::path>;

/// m(M,k) <= c_r(n,k) for all rank-r matroids on n >= 2(r-k)+1 elements follows
/// from the base cases n' = 2(r'-k)+1 for every rank r' <= r together with
/// c_r(n,k) = c_r(n-1,k) + c_{r-1}(n-1,k). Base cases that need enumeration
/// are read from `databases`; the recurrence is checked on `window` values of n
/// above each base.
inline ReductionReport finite_reduction_check(int r, int k, const DatabaseMap& databases, CValueTable& table,
                                              const BatchOptions& batch = {}, int window = 6) {
  require(r >= 3, ErrorKind::domain, "reduction needs r >= 3");
  require(k >= 0 && k <= max_level(r), ErrorKind::domain, "level outside 0..floor((r-1)/2)");
  ReductionReport report{r, k, Verdict::holds, {}, {}};
  bool missing = false, broken = false;

  for (int rr = 1; rr <= r; ++rr) {
    BaseCase base{rr, 2 * (rr - k) + 1, BaseCaseStatus::missing, std::nullopt};
    if (k > max_level(rr)) {
      base.status = BaseCaseStatus::inadmissible;
    } else if (k == 0) {
      base.status = BaseCaseStatus::tope_count;
    } else if (rr <= 2 || base.n <= rr + 2) {
      base.status = BaseCaseStatus::single_class;
    } else if (auto it = databases.find({rr, base.n}); it != databases.end()) {
      std::ifstream in(it->second);
      require(static_cast<bool>(in), ErrorKind::format, "cannot open database " + it->second.string());
      DatabaseReader reader(in, rr, base.n);
      BatchOptions opts = batch;
      opts.k = k;
      opts.checkpoint.reset();
      base.aggregate = run_batch(reader, opts, table);
      base.status = BaseCaseStatus::database;
      if (!base.aggregate->roudneff_holds()) broken = true;
    } else {
      missing = true;
    }
    report.bases.push_back(std::move(base));

    if (k > max_level(rr) || rr < 2) continue;
    for (int n = 2 * (rr - k) + 2; n <= 2 * (rr - k) + 1 + window; ++n) {
      RecurrenceCheck rc{rr, n, table.value(rr, n, k), table.value(rr, n - 1, k), table.value_or_zero(rr - 1, n - 1, k)};
      if (!rc.holds()) broken = true;
      report.recurrence.push_back(std::move(rc));
    }
  }
  report.verdict = broken ? Verdict::counterexample : (missing ? Verdict::incomplete : Verdict::holds);
  return report;
}

}  // namespace omtope

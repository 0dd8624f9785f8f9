// Command-line front end for the omtope library.
//
// Exit codes: 0 success / verdict holds, 1 counterexample found, 2 usage or format error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "omtope/chirotope.hpp"
#include "omtope/circuits.hpp"
#include "omtope/constructions.hpp"
#include "omtope/cyclic.hpp"
#include "omtope/harness.hpp"
#include "omtope/neighborly.hpp"

namespace {

using namespace omtope;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitUsage = 2;

struct Common {
  int rank = 0;
  int elements = 0;
  int k = 0;
  std::string file;
  std::string chirotope;
  std::string points;
  std::string base_order = "lex";
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string checkpoint;
};

void add_matroid_options(CLI::App* app, Common& c) {
  app->add_option("--rank,-r", c.rank, "Rank r");
  app->add_option("--elements,-n", c.elements, "Ground-set size n");
  app->add_option("--chirotope", c.chirotope, "Chirotope string over {+,-}");
  app->add_option("--file", c.file, "Database file; the first record is used");
  app->add_option("--points", c.points, "Integer point file, one row per element");
  app->add_option("--base-order", c.base_order, "Basis order of chirotope strings")->check(CLI::IsMember({"lex", "colex"}));
  app->add_option("--threads", c.threads, "Worker threads");
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

/// Explicit chirotope, first database record, point file, or else C_r(n).
Chirotope load_matroid(const Common& c) {
  const auto order = parse_base_order(c.base_order);
  if (!c.points.empty()) {
    std::ifstream in(c.points);
    require(static_cast<bool>(in), ErrorKind::format, "cannot open " + c.points);
    return Chirotope::from_points(parse_points(in));
  }
  require(c.rank >= 1 && c.elements >= 1, ErrorKind::domain, "--rank and --elements are required");
  if (!c.chirotope.empty()) return Chirotope::parse(c.chirotope, c.rank, c.elements, order);
  if (!c.file.empty()) {
    std::ifstream in(c.file);
    require(static_cast<bool>(in), ErrorKind::format, "cannot open " + c.file);
    DatabaseReader reader(in, c.rank, c.elements, order);
    auto rec = reader.next();
    require(rec.has_value(), ErrorKind::format, c.file + " holds no records");
    return rec->chirotope;
  }
  return Chirotope::alternating(c.rank, c.elements);
}

Mask parse_element_list(const std::string& text, int n) {
  Mask out = 0;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    int e = 0;
    try {
      e = std::stoi(item);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::format, "not an element: '" + item + "'");
    }
    require(e >= 1 && e <= n, ErrorKind::domain, "element " + item + " outside 1.." + std::to_string(n));
    out |= bit(e - 1);
  }
  return out;
}

json one_based(Mask m) {
  auto out = json::array();
  for (int e : elements_of(m)) out.push_back(e + 1);
  return out;
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

int cmd_ovector(const Common& c) {
  const auto chi = load_matroid(c);
  const auto ov = o_vector(circuits_from_chirotope(chi), c.threads);
  if (c.format == "csv") {
    std::cout << "r,n,ovector,m\n" << ov.r << ',' << ov.n << ",\"" << join(ov.entries) << "\",\"" << join(ov.m_values())
              << "\"\n";
  } else {
    std::cout << json{{"r", ov.r}, {"n", ov.n}, {"ovector", ov.entries}, {"m", ov.m_values()}}.dump() << '\n';
  }
  return kExitOk;
}

int cmd_mvalue(const Common& c) {
  const auto chi = load_matroid(c);
  const auto m = m_value(circuits_from_chirotope(chi), c.k, c.threads);
  if (c.format == "csv")
    std::cout << "r,n,k,m\n" << chi.rank() << ',' << chi.size() << ',' << c.k << ',' << m << '\n';
  else
    std::cout << json{{"r", chi.rank()}, {"n", chi.size()}, {"k", c.k}, {"m", m}}.dump() << '\n';
  return kExitOk;
}

int cmd_circuits(const Common& c, bool co) {
  const auto chi = load_matroid(c);
  const auto cs = co ? cocircuits(chi) : circuits_from_chirotope(chi);
  for (const auto& x : cs.members) std::cout << x << '\n';
  return kExitOk;
}

int cmd_topegraph(const Common& c) {
  const auto cs = circuits_from_chirotope(load_matroid(c));
  for (const auto& [a, b] : tope_graph_edges(cs)) std::cout << a << ' ' << b << '\n';
  return kExitOk;
}

int print_chirotope(const Chirotope& chi, const Common& c) {
  const auto text = chi.serialize(parse_base_order(c.base_order));
  if (c.format == "csv")
    std::cout << "r,n,chirotope\n" << chi.rank() << ',' << chi.size() << ',' << text << '\n';
  else
    std::cout << json{{"r", chi.rank()}, {"n", chi.size()}, {"chirotope", text}}.dump() << '\n';
  return kExitOk;
}

int cmd_construct(const Common& c, const std::string& method) {
  const auto chi = load_matroid(c);
  std::optional<ReorientationWitness> w;
  if (method == "search")
    w = search_k_neighborly(chi, c.k);
  else if (method == "cocircuits")
    w = disjoint_cocircuit_construction(chi, c.k);
  else
    w = composite_construction(chi, c.k);
  if (!w) {
    std::cout << json{{"method", method}, {"k", c.k}, {"found", false}}.dump() << '\n';
    return kExitCounterexample;
  }
  std::cout << json{{"method", method},           {"k", c.k},           {"found", true},
                    {"R", one_based(w->reorient)}, {"level", w->level}, {"verified", w->verified}}
                   .dump()
            << '\n';
  return w->verified && w->level >= c.k ? kExitOk : kExitCounterexample;
}

int cmd_cvalue(const Common& c, bool show_provenance, bool literature, const std::string& cache) {
  CValueTable table({.verify_up_to = 12, .brute_force_limit = 26, .threads = c.threads});
  if (!cache.empty()) {
    std::ifstream in(cache);
    if (in) table.load(in);
  }
  const auto cell = table.get(c.rank, c.elements, c.k);
  json out = {{"r", c.rank}, {"n", c.elements}, {"k", c.k}, {"c", cell.value.str()}};
  if (show_provenance) out["provenance"] = std::string(to_string(cell.provenance));
  if (literature && c.k == 1) {
    out["literature_formula"] = literature_c1(c.rank, c.elements).str();
    out["literature_formula_trusted"] = false;
  }
  if (!table.defects().empty()) out["defects"] = table.defects();
  std::cout << out.dump() << '\n';
  if (!cache.empty()) {
    std::ofstream outf(cache);
    table.save(outf);
  }
  return kExitOk;
}

int cmd_batch(const Common& c, bool roudneff, const std::string& rows_path) {
  require(!c.file.empty(), ErrorKind::domain, "--file is required");
  std::ifstream in(c.file);
  require(static_cast<bool>(in), ErrorKind::format, "cannot open " + c.file);
  DatabaseReader reader(in, c.rank, c.elements, parse_base_order(c.base_order));
  CValueTable table({.verify_up_to = 12, .brute_force_limit = 26, .threads = 1});
  BatchOptions opts;
  opts.k = c.k;
  opts.threads = c.threads;
  if (!c.checkpoint.empty()) opts.checkpoint = c.checkpoint;

  std::ofstream rows_file;
  if (!rows_path.empty()) rows_file.open(rows_path, std::ios::app);
  std::ostream& rows = rows_path.empty() ? std::cout : rows_file;
  const auto agg = run_batch(reader, opts, table, [&](const ReportRow& row) { rows << to_json(row).dump() << '\n'; });
  std::cout << json{{"aggregate", to_json(agg)}}.dump() << '\n';
  const bool holds = roudneff ? agg.roudneff_holds() : agg.mcmullen_holds();
  return holds ? kExitOk : kExitCounterexample;
}

int cmd_audit(const Common& c) {
  const auto chi = load_matroid(c);
  bool ok = true;
  for (const auto& entry : deletion_contraction_audit(chi, c.k, c.threads)) {
    ok = ok && entry.holds();
    std::cout << json{{"element", entry.element + 1},
                      {"m", entry.whole},
                      {"m_deletion", entry.deletion},
                      {"m_contraction", entry.contraction},
                      {"holds", entry.holds()}}
                     .dump()
              << '\n';
  }
  return ok ? kExitOk : kExitCounterexample;
}

/// "--db 6,9=path" entries.
DatabaseMap parse_db_map(const std::vector<std::string>& specs) {
  DatabaseMap out;
  for (const auto& s : specs) {
    const auto comma = s.find(','), eq = s.find('=');
    require(comma != std::string::npos && eq != std::string::npos && comma < eq, ErrorKind::format,
            "--db expects R,N=PATH, got '" + s + "'");
    try {
      out[{std::stoi(s.substr(0, comma)), std::stoi(s.substr(comma + 1, eq - comma - 1))}] = s.substr(eq + 1);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::format, "--db expects R,N=PATH, got '" + s + "'");
    }
  }
  return out;
}

int cmd_reduce(const Common& c, const std::vector<std::string>& db_specs) {
  CValueTable table;
  BatchOptions opts;
  opts.threads = c.threads;
  const auto report = finite_reduction_check(c.rank, c.k, parse_db_map(db_specs), table, opts);
  json bases = json::array();
  for (const auto& b : report.bases) {
    json jb = {{"r", b.r}, {"n", b.n}, {"status", std::string(to_string(b.status))}, {"holds", b.holds()}};
    if (b.aggregate) jb["aggregate"] = to_json(*b.aggregate);
    bases.push_back(jb);
  }
  json rec = json::array();
  for (const auto& rc : report.recurrence)
    rec.push_back({{"r", rc.r}, {"n", rc.n}, {"c", rc.whole.str()}, {"holds", rc.holds()}});
  std::cout << json{{"r", report.r},
                    {"k", report.k},
                    {"verdict", std::string(to_string(report.verdict))},
                    {"base_cases", bases},
                    {"recurrence", rec}}
                   .dump()
            << '\n';
  return report.verdict == Verdict::counterexample ? kExitCounterexample : kExitOk;
}

int cmd_sample(const Common& c, int count) {
  PointSampler sampler(c.seed);
  for (int i = 0; i < count; ++i)
    std::cout << sampler.sample(c.rank, c.elements).serialize(parse_base_order(c.base_order)) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonality, o-vectors and neighborly reorientations of uniform oriented matroids"};
  app.require_subcommand(1);
  Common c;

  auto* ovector = app.add_subcommand("ovector", "o-vector and m-values of a matroid");
  add_matroid_options(ovector, c);

  auto* mvalue = app.add_subcommand("mvalue", "number of at-least-k-neighborly reorientations");
  add_matroid_options(mvalue, c);
  mvalue->add_option("--k", c.k, "Level k")->required();

  bool co = false;
  auto* circuits = app.add_subcommand("circuits", "normalized circuits, one per line");
  add_matroid_options(circuits, c);
  circuits->add_flag("--cocircuits", co, "Print cocircuits instead");

  auto* topegraph = app.add_subcommand("topegraph", "tope graph as an edge list");
  add_matroid_options(topegraph, c);

  auto* dual = app.add_subcommand("dual", "dual chirotope");
  add_matroid_options(dual, c);

  int del = 0, con = 0;
  auto* minor = app.add_subcommand("minor", "deletion or contraction of one element");
  add_matroid_options(minor, c);
  auto* del_opt = minor->add_option("--delete", del, "Element to delete (1-based)");
  auto* con_opt = minor->add_option("--contract", con, "Element to contract (1-based)");
  del_opt->excludes(con_opt);

  std::string set;
  auto* reorient_cmd = app.add_subcommand("reorient", "reorient a set of elements");
  add_matroid_options(reorient_cmd, c);
  reorient_cmd->add_option("--set", set, "Comma-separated elements, e.g. 1,3,5")->required();

  std::string method = "search";
  auto* construct = app.add_subcommand("construct", "find or construct a k-neighborly reorientation");
  add_matroid_options(construct, c);
  construct->add_option("--k", c.k, "Level k")->required();
  construct->add_option("--method", method, "Procedure")->check(CLI::IsMember({"search", "cocircuits", "composite"}));

  bool show_provenance = false, literature = false;
  std::string cache;
  auto* cvalue = app.add_subcommand("cvalue", "c_r(n,k) for the alternating matroid");
  cvalue->add_option("--rank,-r", c.rank, "Rank r")->required();
  cvalue->add_option("--elements,-n", c.elements, "Ground-set size n")->required();
  cvalue->add_option("--k", c.k, "Level k")->required();
  cvalue->add_option("--threads", c.threads, "Worker threads");
  cvalue->add_option("--cache", cache, "Cache file of computed cells");
  cvalue->add_flag("--show-provenance", show_provenance, "Report which path produced the value");
  cvalue->add_flag("--literature-formula", literature, "Also print the transcribed c_r(n,1) formula (untrusted)");

  std::string rows_path;
  auto add_batch = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--file", c.file, "Database file")->required();
    cmd->add_option("--rank,-r", c.rank, "Rank r")->required();
    cmd->add_option("--elements,-n", c.elements, "Ground-set size n")->required();
    cmd->add_option("--k", c.k, "Level k")->required();
    cmd->add_option("--base-order", c.base_order, "Basis order")->check(CLI::IsMember({"lex", "colex"}));
    cmd->add_option("--threads", c.threads, "Worker threads");
    cmd->add_option("--checkpoint", c.checkpoint, "Checkpoint file for resumable runs");
    cmd->add_option("--rows", rows_path, "Append JSON-lines rows here instead of stdout");
    return cmd;
  };
  auto* roudneff = add_batch("roudneff", "max m(M,k) over a database versus c_r(n,k)");
  auto* mcmullen = add_batch("mcmullen", "min m(M,k) over a database");

  auto* audit = app.add_subcommand("audit", "deletion/contraction inequality for every element");
  add_matroid_options(audit, c);
  audit->add_option("--k", c.k, "Level k")->required();

  std::vector<std::string> db_specs;
  auto* reduce = app.add_subcommand("reduce", "finite reduction check for (r, k)");
  reduce->add_option("--rank,-r", c.rank, "Rank r")->required();
  reduce->add_option("--k", c.k, "Level k")->required();
  reduce->add_option("--db", db_specs, "Base-case database R,N=PATH (repeatable)");
  reduce->add_option("--threads", c.threads, "Worker threads");

  int count = 1;
  auto* sample = app.add_subcommand("sample", "random realizable chirotopes from integer points");
  sample->add_option("--rank,-r", c.rank, "Rank r")->required();
  sample->add_option("--elements,-n", c.elements, "Ground-set size n")->required();
  sample->add_option("--seed", c.seed, "Generator seed");
  sample->add_option("--count", count, "Number of records");
  sample->add_option("--base-order", c.base_order, "Basis order")->check(CLI::IsMember({"lex", "colex"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ovector) return cmd_ovector(c);
    if (*mvalue) return cmd_mvalue(c);
    if (*circuits) return cmd_circuits(c, co);
    if (*topegraph) return cmd_topegraph(c);
    if (*dual) return print_chirotope(load_matroid(c).dual(), c);
    if (*minor) {
      const auto chi = load_matroid(c);
      require(*del_opt || *con_opt, ErrorKind::domain, "minor needs --delete or --contract");
      const int e = *del_opt ? del : con;
      require(e >= 1 && e <= chi.size(), ErrorKind::domain, "element outside 1.." + std::to_string(chi.size()));
      return print_chirotope(*del_opt ? chi.deleted(e - 1) : chi.contracted(e - 1), c);
    }
    if (*reorient_cmd) {
      const auto chi = load_matroid(c);
      return print_chirotope(chi.reoriented(parse_element_list(set, chi.size())), c);
    }
    if (*construct) return cmd_construct(c, method);
    if (*cvalue) return cmd_cvalue(c, show_provenance, literature, cache);
    if (*roudneff) return cmd_batch(c, true, rows_path);
    if (*mcmullen) return cmd_batch(c, false, rows_path);
    if (*audit) return cmd_audit(c);
    if (*reduce) return cmd_reduce(c, db_specs);
    if (*sample) return cmd_sample(c, count);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

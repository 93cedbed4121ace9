#include "nahmforge/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nahmforge/registry.hpp"
#include "nahmforge/tables.hpp"

namespace nahmforge {

namespace {

using nlohmann::json;

Rat jrat(const json& j) {
  if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
  if (j.is_string()) return parse_rat(j.get<std::string>());
  raise("SyntaxError", "expected a rational encoded as a string");
}

NahmTriple read_triple(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise("SyntaxError", "cannot open triple file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    raise("SyntaxError", std::string("triple JSON: ") + e.what());
  }
  NahmTriple t;
  std::vector<RatVector> rows;
  for (const auto& r : j.at("A")) {
    RatVector row;
    for (const auto& e : r) row.push_back(jrat(e));
    rows.push_back(row);
  }
  t.A = RatMatrix(rows);
  if (j.contains("B"))
    for (const auto& e : j.at("B")) t.B.push_back(jrat(e));
  else
    t.B.assign(t.A.rank(), Rat(0));
  if (t.B.size() != t.A.rank())
    raise("RankMismatch", "B length does not match the rank of A");
  t.C = j.contains("C") ? jrat(j.at("C")) : Rat(0);
  return t;
}

void write_triple(std::ostream& out, const NahmTriple& t) {
  out << "{\"A\":[";
  for (std::size_t i = 0; i < t.A.rank(); ++i) {
    if (i) out << ",";
    out << "[";
    for (std::size_t j = 0; j < t.A.rank(); ++j) {
      if (j) out << ",";
      out << "\"" << rat_to_string(t.A.at(i, j)) << "\"";
    }
    out << "]";
  }
  out << "],\"B\":[";
  for (std::size_t i = 0; i < t.B.size(); ++i) {
    if (i) out << ",";
    out << "\"" << rat_to_string(t.B[i]) << "\"";
  }
  out << "],\"C\":\"" << rat_to_string(t.C) << "\"}\n";
}

Registry load_registry(const std::string& pathFlag) {
  if (!pathFlag.empty()) return Registry::from_file(pathFlag);
  if (const char* env = std::getenv("NAHMFORGE_REGISTRY"))
    if (*env) return Registry::from_file(env);
  return Registry::embedded();
}

Rat parse_order(const std::string& text) {
  Rat r = parse_rat(text);
  if (r <= 0) raise("DomainError", "order must be positive");
  return r;
}

void print_report_text(std::ostream& out, const CheckReport& r) {
  out << r.id << ": " << r.result;
  if (!r.instanceLabel.empty()) out << " [" << r.instanceLabel << "]";
  if (r.firstExponent) {
    out << " at q^" << rat_to_string(*r.firstExponent);
    if (r.lhsCoeff && r.rhsCoeff)
      out << " (lhs " << rat_to_string(*r.lhsCoeff) << ", rhs "
          << rat_to_string(*r.rhsCoeff) << ")";
  }
  if (!r.errorKind.empty()) out << " " << r.errorMessage;
  out << " (order " << rat_to_string(r.order) << ", " << std::fixed
      << std::setprecision(2) << r.elapsedSeconds << "s)\n";
  out.unsetf(std::ios::fixed);
}

int cmd_check(const Registry& reg, const std::vector<std::string>& ids,
              bool all, const std::vector<std::string>& statuses,
              const std::optional<Rat>& order, bool jsonMode, int parallel,
              std::ostream& out, std::ostream& err) {
  if (ids.empty() && !all) {
    err << "check: pass --id NAME (repeatable) or --all\n";
    return 2;
  }
  if (!ids.empty() && all) {
    err << "check: --id and --all are mutually exclusive\n";
    return 2;
  }
  auto reports = reg.check_all(ids, statuses, order, parallel);
  std::size_t match = 0, mismatch = 0, errors = 0;
  for (const auto& r : reports) {
    if (r.result == "match")
      ++match;
    else if (r.result == "mismatch")
      ++mismatch;
    else
      ++errors;
    if (jsonMode)
      out << report_to_json(r) << "\n";
    else
      print_report_text(out, r);
  }
  if (jsonMode) {
    out << "{\"summary\":{\"total\":" << reports.size() << ",\"match\":" << match
        << ",\"mismatch\":" << mismatch << ",\"error\":" << errors << "}}\n";
  } else {
    out << reports.size() << " checked: " << match << " match, " << mismatch
        << " mismatch, " << errors << " error\n";
  }
  return (mismatch + errors) == 0 ? 0 : 1;
}

int tables_one(const TablesData& data, const Registry& reg,
               const std::string& which, bool prefix, std::ostream& out) {
  std::vector<CellCheck> cells = which == "dets"
                                     ? table_determinants(data)
                                     : table_liftdual(data, which, &reg);
  std::size_t ok = 0;
  for (const auto& c : cells) {
    if (c.ok) {
      ++ok;
    } else {
      out << (prefix ? which + "." : "") << c.cell << ": expected "
          << c.expected << ", computed " << c.computed << "\n";
    }
  }
  if (prefix) out << which << ": ";
  out << ok << "/" << cells.size() << " match\n";
  return ok == cells.size() ? 0 : 1;
}

int cmd_tables(const Registry& reg, const std::string& which,
               std::ostream& out) {
  TablesData data = tables_embedded();
  if (which == "all") {
    int rc = tables_one(data, reg, "dets", true, out);
    for (const auto& ex : data.examples)
      rc = std::max(rc, tables_one(data, reg, ex.name, true, out));
    return rc;
  }
  return tables_one(data, reg, which, false, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Exact q-series toolkit: Nahm sums, lift/dual operators, and "
               "the identity registry"};
  app.require_subcommand(1);

  std::string registryPath;
  app.add_option("--registry", registryPath,
                 "registry JSON file overriding the embedded data")
      ->envname("NAHMFORGE_REGISTRY");

  // eval
  auto* evalCmd = app.add_subcommand("eval", "evaluate a Nahm sum from a triple file");
  std::string evalFile;
  std::string evalOrder = "40";
  evalCmd->add_option("file", evalFile, "triple JSON file")->required();
  evalCmd->add_option("--order", evalOrder, "truncation order (rational)");

  // lift
  auto* liftCmd = app.add_subcommand("lift", "apply a lift operator to a rank-3 triple");
  int liftWhich = 1;
  std::string liftFile;
  bool liftPosdef = false;
  liftCmd->add_option("which", liftWhich, "lift operator: 1, 2 or 3")->required();
  liftCmd->add_option("file", liftFile, "triple JSON file")->required();
  liftCmd->add_flag("--check-posdef", liftPosdef, "also report definiteness");

  // dual
  auto* dualCmd = app.add_subcommand("dual", "apply the dual operator to a triple");
  std::string dualFile;
  bool dualPosdef = false;
  dualCmd->add_option("file", dualFile, "triple JSON file")->required();
  dualCmd->add_flag("--check-posdef", dualPosdef, "also report definiteness");

  // check
  auto* checkCmd = app.add_subcommand("check", "check registry identities");
  std::vector<std::string> checkIds, checkStatuses;
  bool checkAll = false, checkJson = false;
  std::string checkOrder;
  int parallel = 1;
  checkCmd->add_option("--id", checkIds, "identity id (repeatable)");
  checkCmd->add_flag("--all", checkAll, "check every identity");
  checkCmd->add_option("--status", checkStatuses,
                       "restrict --all to a status (repeatable)")
      ->check(CLI::IsMember({"classical", "proved", "conjectural"}));
  checkCmd->add_option("--order", checkOrder,
                       "truncation order overriding per-identity defaults");
  checkCmd->add_flag("--json", checkJson, "JSON-lines output");
  checkCmd->add_option("--parallel", parallel, "number of worker threads")
      ->check(CLI::PositiveNumber);

  // tables
  auto* tablesCmd = app.add_subcommand("tables", "recompute stored tables");
  std::string tablesWhich;
  tablesCmd->add_option("which", tablesWhich, "dets, an example name, or all")
      ->required();

  // list
  auto* listCmd = app.add_subcommand("list", "list registry identities");
  std::vector<std::string> listStatuses;
  listCmd->add_option("--status", listStatuses, "filter by status (repeatable)")
      ->check(CLI::IsMember({"classical", "proved", "conjectural"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (evalCmd->parsed()) {
      NahmTriple t = read_triple(evalFile);
      out << nahm_sum(t, true, parse_order(evalOrder)).dump();
      return 0;
    }
    if (liftCmd->parsed()) {
      NahmTriple t = lift(liftWhich, read_triple(liftFile));
      write_triple(out, t);
      if (liftPosdef)
        out << "positive-definite: "
            << (is_positive_definite(t.A) ? "yes" : "no") << "\n";
      return 0;
    }
    if (dualCmd->parsed()) {
      NahmTriple t = dual(read_triple(dualFile));
      write_triple(out, t);
      if (dualPosdef)
        out << "positive-definite: "
            << (is_positive_definite(t.A) ? "yes" : "no") << "\n";
      return 0;
    }
    if (checkCmd->parsed()) {
      Registry reg = load_registry(registryPath);
      std::optional<Rat> order;
      if (checkCmd->count("--order")) order = parse_order(checkOrder);
      return cmd_check(reg, checkIds, checkAll, checkStatuses, order, checkJson,
                       parallel, out, err);
    }
    if (tablesCmd->parsed()) {
      Registry reg = load_registry(registryPath);
      return cmd_tables(reg, tablesWhich, out);
    }
    if (listCmd->parsed()) {
      Registry reg = load_registry(registryPath);
      for (const auto& idn : reg.identities()) {
        if (!listStatuses.empty() &&
            std::find(listStatuses.begin(), listStatuses.end(), idn.status) ==
                listStatuses.end())
          continue;
        out << idn.id << "\t" << idn.status << "\t" << idn.kind << "\t"
            << idn.instances.size() << "\t" << idn.source << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace nahmforge

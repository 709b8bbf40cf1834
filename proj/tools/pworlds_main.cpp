// Command-line front end: load knowledge bases, evaluate and bound queries,
// check consistency, and run the default-rule anomaly analysis.
//
// Exit codes: 0 success, 1 usage, 2 parse error, 3 invariant violation,
// 4 inconsistent knowledge base, 5 world-space cap exceeded.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pworlds/defaults.hpp"
#include "pworlds/entailment.hpp"
#include "pworlds/errors.hpp"
#include "pworlds/kb_format.hpp"
#include "pworlds/quantifiers.hpp"

namespace {

using namespace pworlds;

KnowledgeBase kb_from(const std::string& path) {
  try {
    return load_kb(path);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + std::string(e.what()));
  }
}

Distribution dist_from(const std::string& path, const WorldSpace& ws) {
  try {
    return load_distribution(path, ws);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + std::string(e.what()));
  } catch (const InvariantError& e) {
    throw InvariantError(path + ": " + std::string(e.what()));
  }
}

Formula query_from(const std::string& text, const Signature& sig) {
  try {
    return parse_formula(text, sig);
  } catch (const ParseError& e) {
    throw ParseError("query: " + std::string(e.what()) +
                     (e.column() > 0 ? " (column " + std::to_string(e.column()) + ")"
                                     : ""));
  }
}

void print_domain_line(const WorldSpace& ws) {
  std::cout << "# domain: " << ws.signature().constants().size() << " constants; "
            << ws.atom_count() << " ground atoms; " << ws.world_count()
            << " worlds\n";
}

void print_distribution(const Distribution& d, const std::string& label) {
  std::cout << "# " << label << ":\n";
  for (const auto& [index, weight] : d.support())
    std::cout << "#   " << d.space().world(index).describe() << "   weight "
              << to_string(weight) << "\n";
}

Rational parse_rational_flag(const std::string& text, const std::string& flag) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw ParseError(flag + ": " + std::string(e.what()));
  }
}

// ── eval ─────────────────────────────────────────────────────────────────

int cmd_eval(const std::string& kb_path, const std::string& dist_path,
             const std::string& query_text, bool explain, std::size_t max_atoms) {
  KnowledgeBase kb = kb_from(kb_path);
  WorldSpace ws = enumerate_worlds(kb.signature, max_atoms);
  Distribution d = dist_from(dist_path, ws);
  Formula query = query_from(query_text, kb.signature);
  Formula expanded = expand(query, herbrand_domain(kb.signature));
  validate_formula(expanded, kb.signature);

  print_domain_line(ws);
  if (explain) {
    if (!(expanded == query))
      std::cout << "# query expands to: " << to_string(expanded) << "\n";
    TruthVector satisfied = truth_vector(expanded, ws);
    std::cout << "# distribution support:\n";
    for (const auto& [index, weight] : d.support())
      std::cout << "#   " << ws.world(index).describe() << "   weight "
                << to_string(weight) << "   query="
                << (satisfied.test(index) ? "t" : "f") << "\n";
  }
  std::cout << to_string_with_decimal(probability(d, expanded)) << "\n";
  return 0;
}

// ── bounds ───────────────────────────────────────────────────────────────

int cmd_bounds(const std::string& kb_path, const std::string& query_text,
               bool explain, const CompileOptions& options) {
  KnowledgeBase kb = kb_from(kb_path);
  Formula query = query_from(query_text, kb.signature);

  CompiledKb compiled = compile(kb, options);
  print_domain_line(compiled.space);
  if (explain) {
    Formula expanded = expand(query, herbrand_domain(kb.signature));
    if (!(expanded == query))
      std::cout << "# query expands to: " << to_string(expanded) << "\n";
    std::cout << "# assertions: " << compiled.ground_assertions.size()
              << " ground (" << compiled.lp.constraints.size()
              << " LP constraints)\n";
    for (const auto& fact : certain_universal_facts(kb))
      std::cout << "# derived: " << to_string(fact) << "\n";
  }

  Bounds bounds = query_bounds(kb, query, options);
  if (explain) {
    print_distribution(bounds.lo_witness, "lo witness");
    print_distribution(bounds.hi_witness, "hi witness");
  }
  std::cout << "[" << to_string(bounds.lo) << ", " << to_string(bounds.hi) << "]\n";
  return 0;
}

// ── consistent ───────────────────────────────────────────────────────────

int cmd_consistent(const std::string& kb_path, bool explain,
                   const CompileOptions& options) {
  KnowledgeBase kb = kb_from(kb_path);
  CompiledKb compiled = compile(kb, options);
  print_domain_line(compiled.space);
  ConsistencyResult result = is_consistent(kb, options);
  if (result.consistent) {
    std::cout << "CONSISTENT\n";
    if (explain && result.witness)
      print_distribution(*result.witness, "witness");
    return 0;
  }
  std::cout << "INCONSISTENT\n";
  std::cout << "note: " << result.note << "\n";
  return 4;
}

// ── anomaly ──────────────────────────────────────────────────────────────

int cmd_anomaly(const std::string& epsilon_text, unsigned terms,
                const std::string& format, bool explain, std::size_t max_atoms) {
  Rational epsilon = parse_rational_flag(epsilon_text, "--epsilon");
  std::vector<AnomalyRow> rows = anomaly_sweep(epsilon, terms, max_atoms);

  const std::vector<std::string> headers = {
      "epsilon", "n", "per-term max", "chain bound", "existential max",
      "union ceiling"};
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows)
    cells.push_back({to_string(row.epsilon), std::to_string(row.n_terms),
                     to_string(row.per_term_max), to_string(row.chain_bound),
                     to_string(row.existential_max),
                     to_string(row.union_ceiling_capped)});

  if (format == "csv") {
    auto join = [](const std::vector<std::string>& fields) {
      std::string line;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ",";
        line += fields[i];
      }
      return line;
    };
    std::vector<std::string> csv_headers = {"epsilon", "n", "per_term_max",
                                            "chain_bound", "existential_max",
                                            "union_ceiling"};
    std::cout << join(csv_headers) << "\n";
    for (const auto& row : cells) std::cout << join(row) << "\n";
  } else {
    std::vector<std::size_t> widths(headers.size());
    for (std::size_t c = 0; c < headers.size(); ++c) {
      widths[c] = headers[c].size();
      for (const auto& row : cells)
        if (row[c].size() > widths[c]) widths[c] = row[c].size();
    }
    auto print_row = [&](const std::vector<std::string>& fields) {
      for (std::size_t c = 0; c < fields.size(); ++c) {
        std::cout << fields[c];
        if (c + 1 < fields.size())
          std::cout << std::string(widths[c] - fields[c].size() + 2, ' ');
      }
      std::cout << "\n";
    };
    print_row(headers);
    for (const auto& row : cells) print_row(row);
  }

  if (explain)
    for (const auto& row : rows) {
      std::cout << "# n=" << row.n_terms << " union ceiling uncapped: "
                << to_string(row.union_ceiling) << " (capped "
                << to_string(row.union_ceiling_capped) << ")\n";
      if (row.per_term_witness)
        print_distribution(*row.per_term_witness,
                           "n=" + std::to_string(row.n_terms) + " per-term witness");
      if (row.existential_witness)
        print_distribution(*row.existential_witness,
                           "n=" + std::to_string(row.n_terms) + " existential witness");
    }
  return 0;
}

// ── gaifman ──────────────────────────────────────────────────────────────

int cmd_gaifman(const std::string& kb_path, const std::string& dist_path,
                const std::string& query_text, std::size_t max_atoms) {
  KnowledgeBase kb = kb_from(kb_path);
  WorldSpace ws = enumerate_worlds(kb.signature, max_atoms);
  Distribution d = dist_path.empty() ? Distribution::uniform(ws)
                                     : dist_from(dist_path, ws);
  Formula query = query_from(query_text, kb.signature);

  HerbrandDomain dom = herbrand_domain(kb.signature);
  QuantifierMonotonicityReport report = check_quantifier_monotonicity(d, query, dom);

  print_domain_line(ws);
  std::cout << "# quantifier: " << (report.universal ? "forall" : "exists") << "\n";
  std::cout << "p[" << query_text << "] = " << to_string(report.p_quantified) << "\n";
  for (const auto& [constant, p] : report.instances)
    std::cout << "instance " << constant << ": " << to_string(p) << "\n";
  std::cout << "duality "
            << (report.universal ? "1 - p[exists ~body]" : "1 - p[forall ~body]")
            << " = " << to_string(report.p_dual) << "\n";
  std::cout << (report.passed() ? "PASS" : "FAIL") << "\n";
  return report.passed() ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact probability bounds over possible worlds"};
  app.set_version_flag("--version", "pworlds 0.1.0");
  app.require_subcommand(1);

  std::string kb_path, dist_path, query_text, epsilon_text = "1/100";
  std::string format = "human";
  bool explain = false;
  unsigned terms = 1;
  std::size_t max_atoms = kDefaultAtomCap;
  std::string positive_conditions;

  auto add_max_atoms = [&](CLI::App* cmd) {
    cmd->add_option("--max-atoms", max_atoms,
                    "Ground-atom cap (world count is 2^atoms)");
  };

  CLI::App* eval = app.add_subcommand(
      "eval", "Probability of a query under an explicit distribution");
  eval->add_option("--kb", kb_path, "Knowledge base file")->required();
  eval->add_option("--dist", dist_path, "Distribution file")->required();
  eval->add_option("--query", query_text, "Query sentence")->required();
  eval->add_flag("--explain", explain, "Show expansion and support worlds");
  add_max_atoms(eval);

  CLI::App* bounds = app.add_subcommand(
      "bounds", "Tight probability bounds entailed by the knowledge base");
  bounds->add_option("--kb", kb_path, "Knowledge base file")->required();
  bounds->add_option("--query", query_text, "Query sentence")->required();
  bounds->add_flag("--explain", explain, "Show constraints and witnesses");
  bounds->add_option("--require-positive-conditions", positive_conditions,
                     "Add p[condition] >= DELTA for every conditional assertion");
  add_max_atoms(bounds);

  CLI::App* consistent =
      app.add_subcommand("consistent", "Probabilistic consistency check");
  consistent->add_option("--kb", kb_path, "Knowledge base file")->required();
  consistent->add_flag("--explain", explain, "Show a witness distribution");
  consistent->add_option("--require-positive-conditions", positive_conditions,
                         "Add p[condition] >= DELTA for every conditional assertion");
  add_max_atoms(consistent);

  CLI::App* anomaly = app.add_subcommand(
      "anomaly", "Default-rule anomaly table for the bird/penguin hierarchy");
  anomaly->add_option("--epsilon", epsilon_text, "Default-rule epsilon (rational)");
  anomaly->add_option("--terms", terms, "Sweep domain sizes n = 1..TERMS");
  anomaly->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"human", "csv"}));
  anomaly->add_flag("--explain", explain, "Show witness distributions");
  add_max_atoms(anomaly);

  CLI::App* gaifman = app.add_subcommand(
      "gaifman", "Quantifier probability monotonicity report for a distribution");
  gaifman->add_option("--kb", kb_path, "Knowledge base file (for the signature)")
      ->required();
  gaifman->add_option("--dist", dist_path,
                      "Distribution file (default: uniform over the world space)");
  gaifman->add_option("--query", query_text, "Quantified query sentence")->required();
  add_max_atoms(gaifman);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    CompileOptions options;
    options.max_atoms = max_atoms;
    if (!positive_conditions.empty())
      options.require_positive_conditions =
          parse_rational_flag(positive_conditions, "--require-positive-conditions");

    if (app.got_subcommand(eval))
      return cmd_eval(kb_path, dist_path, query_text, explain, max_atoms);
    if (app.got_subcommand(bounds))
      return cmd_bounds(kb_path, query_text, explain, options);
    if (app.got_subcommand(consistent))
      return cmd_consistent(kb_path, explain, options);
    if (app.got_subcommand(anomaly))
      return cmd_anomaly(epsilon_text, terms, format, explain, max_atoms);
    if (app.got_subcommand(gaifman))
      return cmd_gaifman(kb_path, dist_path, query_text, max_atoms);
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const InconsistentKbError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

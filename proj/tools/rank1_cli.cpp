#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "acceptance.hpp"

using namespace rank1;

namespace {

struct RunConfig {
  std::string command;
  std::string target;
  std::optional<std::uint64_t> q;
  std::uint64_t d = 2;
  std::uint32_t kappa = 0;
  std::size_t max_len = 4;
  std::size_t closure_cap = 200;
  std::uint64_t node_budget = 5'000'000;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "report";
  bool timings = false;
};

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json input_echo(RunConfig const &cfg)
{
  Json j{{"command", cfg.command}, {"target", cfg.target}};
  j["q"] = cfg.q ? Json(*cfg.q) : Json(nullptr);
  j["d"] = cfg.d;
  j["max_len"] = cfg.max_len;
  j["closure_cap"] = cfg.closure_cap;
  j["node_budget"] = cfg.node_budget;
  j["seed"] = cfg.seed;
  return j;
}

PipelineConfig pipeline_config(RunConfig const &cfg)
{
  PipelineConfig p;
  p.max_length = cfg.max_len;
  p.closure_cap = cfg.closure_cap;
  p.node_budget = cfg.node_budget;
  return p;
}

Json run_tables(RunConfig const &cfg, std::vector<std::string> &transcript)
{
  Json rows = Json::array();
  bool pass = true;
  if (!cfg.q) {
    for (auto const &c : verify_table_symbolic(cfg.target)) {
      rows.push_back(identity_json(c));
      pass = pass && c.pass();
    }
    transcript.push_back(cfg.target + ": " + std::to_string(rows.size()) + " identities checked symbolically");
  } else {
    auto rep = verify_table_numeric(cfg.target, *cfg.q);
    for (auto const &r : rep.rows) {
      rows.push_back(numeric_row_json(r));
      if (!r.applicable)
        transcript.push_back(r.row + " " + r.case_label + ": skipped, " + r.skipped);
    }
    pass = rep.pass();
    transcript.push_back(cfg.target + " at q = " + std::to_string(*cfg.q) + ": " + std::to_string(rep.applicable()) +
                         " applicable rows");
  }
  Json j{{"table", cfg.target}, {"mode", cfg.q ? "numeric" : "symbolic"}, {"pass", pass}, {"rows", rows}};
  if (!pass)
    throw VerificationFailure(cfg.target + ": a row failed verification");
  return j;
}

Json run_klein(BuiltAction const &b, RunConfig const &cfg, std::vector<std::string> &transcript)
{
  SearchBudget budget{cfg.node_budget};
  Json classes = Json::array();
  try {
    auto ks = klein_subgroups(b.action.group, &budget);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      auto at = build_klein_witness(b.action, ks[i].representative, KleinVariant::automatic, &budget);
      auto j = klein_json(b.action, ks[i].representative, at);
      j["class_size"] = ks[i].size;
      classes.push_back(j);
      transcript.push_back("class " + std::to_string(i) + ": " +
                           (at.certificate ? "certificate on " + std::to_string(at.certificate->lambda.size()) + " points"
                                           : at.reason));
    }
  } catch (BudgetExceeded const &) {
    transcript.push_back("undecided: budget exhausted");
  }
  return Json{{"action", action_json(b)}, {"classes", classes}};
}

Json run_command(RunConfig const &cfg, std::vector<std::string> &transcript)
{
  if (cfg.command == "verify-tables")
    return run_tables(cfg, transcript);
  if (cfg.command == "frobenius") {
    auto n = static_cast<std::uint32_t>(std::stoul(cfg.target));
    auto a = frobenius_metacyclic(n, cfg.kappa);
    auto w = frobenius_witness(n, cfg.kappa);
    transcript.push_back("C_" + std::to_string(n) + ":C_3 with kappa = " + std::to_string(cfg.kappa));
    return Json{{"n", n}, {"kappa", cfg.kappa}, {"order", a.group.order()},
                {"witness", verified_witness_json(a.group, w, "frobenius")}};
  }

  auto b = build_action(cfg.target);
  transcript.push_back("built " + b.descriptor.to_string() + " on " + std::to_string(b.action.degree()) + " points");
  if (cfg.command == "construct") {
    Json gens = Json::array();
    for (auto const &g : b.action.group.generators())
      gens.push_back(permutation_json(g));
    bool chain_ok = b.action.group.order() == b.action.group.chain().order();
    return Json{{"action", action_json(b)}, {"generators", gens}, {"chain_consistent", chain_ok}};
  }
  if (cfg.command == "classify") {
    auto const &g = b.action.group;
    point_t alpha = b.action.home.value_or(0);
    std::vector<std::size_t> lengths;
    for (auto const &o : g.stabilizer(alpha).orbits())
      lengths.push_back(o.size());
    std::sort(lengths.begin(), lengths.end());
    return Json{{"action", action_json(b)}, {"alpha", alpha}, {"suborbit_lengths", lengths}};
  }
  if (cfg.command == "witness") {
    auto r = find_nonbinary_witness(b, pipeline_config(cfg));
    transcript.insert(transcript.end(), r.transcript.begin(), r.transcript.end());
    return pipeline_json(b, r);
  }
  if (cfg.command == "closure") {
    SearchBudget budget{cfg.node_budget};
    try {
      auto r = two_closure(b.action, cfg.closure_cap, &budget);
      transcript.push_back(r.is_closed ? "2-closed" : "not 2-closed");
      return closure_json(b, r);
    } catch (BudgetExceeded const &) {
      transcript.push_back("undecided: budget exhausted");
      return Json{{"action", action_json(b)}, {"undecided", true}};
    }
  }
  if (cfg.command == "beautiful") {
    SearchBudget budget{cfg.node_budget};
    try {
      auto r = find_beautiful_subset(b, {}, &budget);
      transcript.insert(transcript.end(), r.tried.begin(), r.tried.end());
      return beautiful_json(b, r);
    } catch (BudgetExceeded const &) {
      transcript.push_back("undecided: budget exhausted");
      return Json{{"action", action_json(b)}, {"found", false}, {"undecided", true}};
    }
  }
  if (cfg.command == "klein")
    return run_klein(b, cfg, transcript);
  if (cfg.command == "suborbits") {
    auto r = suborbit_divisibility_report(b.action, cfg.d, cfg.max_len, cfg.node_budget);
    transcript.push_back(r.conclusion);
    return suborbit_json(b, r);
  }
  throw std::invalid_argument("unknown command " + cfg.command);
}

Json run_corpus(std::vector<std::string> &transcript, bool &pass)
{
  Json criteria = Json::array(), matrix = Json::array();
  for (auto const &f : acceptance::all_criteria()) {
    auto c = f();
    pass = pass && c.pass;
    criteria.push_back(Json{{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"summary", c.summary}});
    for (auto const &r : c.rows)
      matrix.push_back(Json{{"criterion", c.id}, {"subject", r.subject}, {"outcome", r.outcome}, {"pass", r.pass}});
    transcript.push_back("criterion " + std::to_string(c.id) + (c.pass ? " passed" : " failed"));
  }
  return Json{{"criteria", criteria}, {"matrix", matrix}};
}

void flatten(Json const &j, std::string const &path, std::ostream &os)
{
  if (j.is_object()) {
    for (auto const &[k, v] : j.items())
      flatten(v, path.empty() ? k : path + "." + k, os);
  } else if (j.is_array()) {
    bool scalars = true;
    for (auto const &v : j)
      scalars = scalars && !v.is_structured();
    if (scalars) {
      os << path << '\t';
      for (std::size_t i = 0; i < j.size(); ++i)
        os << (i ? "," : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
      os << '\n';
    } else {
      for (std::size_t i = 0; i < j.size(); ++i)
        flatten(j[i], path + "." + std::to_string(i), os);
    }
  } else {
    os << path << '\t' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

void write_tsv(Json const &report, std::ostream &os)
{
  auto const &results = report["results"];
  if (results.contains("matrix")) {
    os << "criterion\tsubject\tpass\toutcome\n";
    for (auto const &r : results["matrix"])
      os << r["criterion"].get<int>() << '\t' << r["subject"].get<std::string>() << '\t'
         << (r["pass"].get<bool>() ? "pass" : "fail") << '\t' << r["outcome"].get<std::string>() << '\n';
    return;
  }
  flatten(report, "", os);
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Non-binary certificates for rank-one groups of Lie type"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  RunConfig cfg;
  bool corpus = false;
  app.add_flag("--corpus", corpus, "run the acceptance suite and emit a summary matrix");
  app.add_option("--max-len", cfg.max_len, "maximum witness length")->check(CLI::PositiveNumber);
  app.add_option("--closure-cap", cfg.closure_cap, "largest degree for 2-closure")->check(CLI::PositiveNumber);
  app.add_option("--node-budget", cfg.node_budget, "search nodes per strategy")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed for candidate ordering (searches are deterministic)");
  app.add_option("--out", cfg.out, "output file (default stdout)");
  app.add_option("--format", cfg.format, "report or tsv")->check(CLI::IsMember({"report", "tsv"}));
  app.add_flag("--timings", cfg.timings, "add wall-clock timings");

  for (auto name : {"construct", "classify", "witness", "closure", "beautiful", "klein", "suborbits"}) {
    auto *sub = app.add_subcommand(name, std::string(name) + " for an action descriptor");
    sub->add_option("descriptor", cfg.target, "family:q[/ext:<gens>][/coset:<key>[:param]]")->required();
    if (std::string(name) == "suborbits")
      sub->add_option("--d", cfg.d, "divisor")->check(CLI::PositiveNumber);
  }
  auto *tables = app.add_subcommand("verify-tables", "verify a fixed-point table");
  tables->add_option("table", cfg.target, "T1 to T5")->required()->check(CLI::IsMember({"T1", "T2", "T3", "T4", "T5"}));
  tables->add_option("--q", cfg.q, "numeric check at this q (symbolic without it)");
  auto *frob = app.add_subcommand("frobenius", "metacyclic witness for C_n:C_3");
  frob->add_option("n", cfg.target, "n")->required()->check(CLI::PositiveNumber);
  frob->add_option("kappa", cfg.kappa, "kappa with kappa^3 = 1 mod n")->required();

  CLI11_PARSE(app, argc, argv);
  auto subs = app.get_subcommands();
  if (corpus == !subs.empty()) {
    std::cerr << "give exactly one command or --corpus\n";
    return 2;
  }
  cfg.command = corpus ? "corpus" : subs.front()->get_name();

  auto start = std::chrono::steady_clock::now();
  std::vector<std::string> transcript;
  Json results;
  int status = 0;
  bool pass = true;
  try {
    results = corpus ? run_corpus(transcript, pass) : run_command(cfg, transcript);
    if (!pass)
      status = 3;
  } catch (DescriptorError const &e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (VerificationFailure const &e) {
    transcript.push_back(e.what());
    status = 3;
  } catch (ReportError const &e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return 3;
  } catch (WitnessError const &e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return 3;
  } catch (std::invalid_argument const &e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (std::exception const &e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }

  Json report{{"format", report_format}, {"schema_version", report_schema_version}, {"input", input_echo(cfg)},
              {"status", status == 0 ? "completed" : "verification-failed"}};
  report["results"] = results;
  report["transcript"] = transcript;
  if (cfg.timings)
    report["timings"] = Json{
        {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};

  std::ofstream file;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) {
      std::cerr << "cannot write " << cfg.out << '\n';
      return 2;
    }
  }
  std::ostream &os = cfg.out.empty() ? std::cout : file;
  if (cfg.format == "tsv")
    write_tsv(report, os);
  else
    os << report.dump(2) << '\n';
  return status;
}

#include "ontoqual/cli/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "ontoqual/cq/alignment.hpp"
#include "ontoqual/cq/suite.hpp"
#include "ontoqual/metrics/metrics.hpp"
#include "ontoqual/ontology/view.hpp"
#include "ontoqual/rdf/turtle.hpp"
#include "ontoqual/scoring/report.hpp"
#include "ontoqual/sparql/eval.hpp"
#include "ontoqual/sparql/query.hpp"

namespace ontoqual::cli {

namespace fs = std::filesystem;

void write_atomically(const std::string& path, const std::string& content) {
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot write " + target.string() + ": " + ec.message());
  }
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses a Turtle file, printing a file:line:col diagnostic on failure.
std::optional<rdf::Graph> load_graph(const std::string& path, std::ostream& err) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    err << path << ": error: " << e.what() << "\n";
    return std::nullopt;
  }
  try {
    return rdf::parse_turtle(text, "file://" + fs::absolute(path).string());
  } catch (const rdf::SyntaxError& e) {
    err << path << ":" << e.line() << ":" << e.column() << ": error: " << e.message() << "\n";
  } catch (const std::exception& e) {
    err << path << ": error: " << e.what() << "\n";
  }
  return std::nullopt;
}

void emit(const std::string& content, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << content;
  } else {
    write_atomically(output, content);
  }
}

struct Options {
  bool verbose = false;

  // evaluate
  std::string interp = "default";
  std::string format = "json";
  bool dump_view = false;
  std::string output_dir = ".";
  std::vector<std::string> inputs;

  // query
  std::string graph;
  std::string query;
  std::string inference = "none";
  std::string query_format = "json";
  std::string output;

  // cq
  std::string suite;
  std::string graphs_dir;
  std::string cq_format = "md";

  // rewrite
  std::string from, to, alignment, rewrite_input, unmappable;

  // dump-view
  std::string view_input;
};

int cmd_evaluate(const Options& o, std::ostream& out, std::ostream& err) {
  auto interp = metrics::parse_interpretation(o.interp);
  auto format = scoring::parse_report_format(o.format);
  fs::create_directories(o.output_dir);
  int status = kOk;
  std::set<std::string> used;
  for (const auto& input : o.inputs) {
    std::string stem = fs::path(input).stem().string();
    for (int n = 2; used.contains(stem); ++n) stem = fs::path(input).stem().string() + "-" + std::to_string(n);
    used.insert(stem);

    auto graph = load_graph(input, err);
    if (!graph) {
      status = kFailure;
      out << input << "\terror\tparse\n";
      continue;
    }
    try {
      auto view = ontology::extract_view(*graph);
      auto vector = metrics::compute_metric_vector(view, interp);
      auto evaluation = scoring::score_metrics(fs::path(input).filename().string(), vector, interp,
                                               view.warnings());
      fs::path report = fs::path(o.output_dir) / (stem + "." + std::string(scoring::report_extension(format)));
      write_atomically(report.string(), scoring::render_report(evaluation, format));
      if (o.dump_view) {
        fs::path vpath = fs::path(o.output_dir) / (stem + ".view.json");
        write_atomically(vpath.string(), ontology::view_to_json(view));
      }
      if (o.verbose)
        for (const auto& w : evaluation.warnings) err << input << ": warning: " << w << "\n";
      out << input << "\t" << to_decimal(evaluation.card.overall, 2) << "\t" << report.string()
          << "\n";
    } catch (const ontology::EmptyOntology&) {
      err << input << ": error: empty ontology\n";
      out << input << "\terror\tempty ontology\n";
      if (status == kOk) status = kEmptyOntology;
    }
  }
  return status;
}

int cmd_query(const Options& o, std::ostream& out, std::ostream& err) {
  auto inference = sparql::parse_inference(o.inference);
  if (o.query_format != "json" && o.query_format != "tsv") {
    err << "error: --format must be json or tsv\n";
    return kUsage;
  }
  std::string text;
  try {
    text = read_file(o.query);
  } catch (const std::exception& e) {
    err << o.query << ": error: " << e.what() << "\n";
    return kFailure;
  }
  sparql::Query query;
  try {
    query = sparql::parse_query(text);
  } catch (const sparql::UnsupportedFeature& e) {
    err << o.query << ": error: " << e.what() << "\n";
    return kUnsupported;
  } catch (const sparql::QuerySyntaxError& e) {
    err << o.query << ":" << e.line() << ":" << e.column() << ": error: " << e.what() << "\n";
    return kFailure;
  }
  auto graph = load_graph(o.graph, err);
  if (!graph) return kFailure;
  auto results = sparql::evaluate(query, *graph, inference);
  emit(o.query_format == "json" ? sparql::results_to_json(results) : sparql::results_to_tsv(results),
       o.output, out);
  return kOk;
}

int cmd_cq(const Options& o, std::ostream& out, std::ostream& err) {
  auto inference = sparql::parse_inference(o.inference);
  if (o.cq_format != "json" && o.cq_format != "md") {
    err << "error: --format must be json or md\n";
    return kUsage;
  }
  cq::CqSuite suite;
  try {
    suite = cq::load_suite(o.suite);
  } catch (const std::exception& e) {
    err << o.suite << ": error: " << e.what() << "\n";
    return kFailure;
  }
  std::map<std::string, rdf::Graph> graphs;
  bool load_failed = false;
  for (const auto& name : suite.ontologies) {
    fs::path p = fs::path(o.graphs_dir) / (name + ".ttl");
    if (!fs::exists(p)) continue;  // entries record the missing graph
    auto g = load_graph(p.string(), err);
    if (g) {
      graphs.emplace(name, std::move(*g));
    } else {
      load_failed = true;
    }
  }
  auto report = cq::run_suite(suite, graphs, inference);
  for (const auto& outcome : report.outcomes)
    if (outcome.error)
      err << o.suite << ": " << outcome.question_id << " " << outcome.ontology
          << ": error: " << *outcome.error << "\n";
  emit(o.cq_format == "json" ? cq::report_to_json(report) : cq::report_to_markdown(suite, report),
       o.output, out);
  return load_failed || report.any_error() ? kFailure : kOk;
}

int cmd_rewrite(const Options& o, std::ostream& out, std::ostream& err) {
  auto from = cq::parse_vocabulary(o.from);
  auto to = cq::parse_vocabulary(o.to);
  if (from == to) {
    err << "error: --from and --to must differ\n";
    return kUsage;
  }
  cq::AlignmentMap map = cq::AlignmentMap::builtin();
  if (!o.alignment.empty()) {
    try {
      map = cq::AlignmentMap::from_json(read_file(o.alignment));
    } catch (const std::exception& e) {
      err << o.alignment << ": error: " << e.what() << "\n";
      return kFailure;
    }
  }
  auto graph = load_graph(o.rewrite_input, err);
  if (!graph) return kFailure;
  std::vector<rdf::Triple> triples;
  for (const auto& t : graph->triples()) triples.push_back(graph->materialize(t));
  auto result = cq::rewrite_with_alignment(triples, from, to, map);

  rdf::Graph rewritten;
  for (const auto& [prefix, ns] : graph->prefixes()) rewritten.set_prefix(prefix, ns);
  static const std::pair<const char*, const char*> kKnown[] = {
      {"sosa", "http://www.w3.org/ns/sosa/"},
      {"ssn", "http://www.w3.org/ns/ssn/"},
      {"brick", "https://brickschema.org/schema/Brick#"},
      {"core", "https://w3id.org/rec/core#"},
      {"phIoT", "https://project-haystack.org/def/phIoT/3.9.11#"},
      {"qudt", "http://qudt.org/schema/qudt/"},
  };
  std::set<std::string> declared;
  for (const auto& [prefix, ns] : graph->prefixes()) declared.insert(ns);
  for (const auto& t : result.triples) {
    rewritten.add(t);
    for (auto [prefix, ns] : kKnown) {
      if (t.predicate.value().starts_with(ns) && !declared.contains(ns) &&
          !graph->prefixes().contains(prefix)) {
        rewritten.set_prefix(prefix, ns);
        declared.insert(ns);
      }
    }
  }
  rewritten.seal();
  emit(rdf::serialize_turtle(rewritten), o.output, out);

  std::string sidecar = o.unmappable;
  if (sidecar.empty()) {
    fs::path dir = o.output.empty() ? fs::path(".") : fs::path(o.output).parent_path();
    sidecar = (dir / "unmappable.json").string();
  }
  write_atomically(sidecar, cq::unmappable_to_json(result.unmappable));
  if (o.verbose)
    for (const auto& u : result.unmappable)
      err << o.rewrite_input << ": unmappable: " << u.triple.predicate.to_ntriples() << ": "
          << u.reason << "\n";
  return kOk;
}

int cmd_dump_view(const Options& o, std::ostream& out, std::ostream& err) {
  auto graph = load_graph(o.view_input, err);
  if (!graph) return kFailure;
  try {
    out << ontology::view_to_json(ontology::extract_view(*graph));
  } catch (const ontology::EmptyOntology&) {
    err << o.view_input << ": error: empty ontology\n";
    return kEmptyOntology;
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Ontology quality metrics, SPARQL queries and competency-question suites",
               "ontoqual");
  app.require_subcommand(1);
  app.add_flag("-v,--verbose", o.verbose, "Print warnings to stderr");

  auto* evaluate = app.add_subcommand("evaluate", "Compute metric reports for ontologies");
  evaluate->add_option("--interp", o.interp, "Metric interpretation")
      ->check(CLI::IsMember({"default", "literal"}));
  evaluate->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "csv", "md"}));
  evaluate->add_flag("--dump-view", o.dump_view, "Also write the extracted hierarchy");
  evaluate->add_option("--output-dir", o.output_dir, "Directory for report files");
  evaluate->add_option("files", o.inputs, "Turtle files")->required();

  auto* query = app.add_subcommand("query", "Evaluate a SPARQL query over a graph");
  query->add_option("--graph", o.graph, "Turtle file")->required();
  query->add_option("--query", o.query, "Query file")->required();
  query->add_option("--inference", o.inference)->check(CLI::IsMember({"none", "rdfs-subclass"}));
  query->add_option("--format", o.query_format)->check(CLI::IsMember({"json", "tsv"}));
  query->add_option("--output", o.output, "Write results here instead of stdout");

  auto* cqcmd = app.add_subcommand("cq", "Run a competency-question suite");
  cqcmd->add_option("--suite", o.suite, "Suite JSON")->required();
  cqcmd->add_option("--graphs", o.graphs_dir, "Directory holding <ontology>.ttl")->required();
  cqcmd->add_option("--inference", o.inference)->check(CLI::IsMember({"none", "rdfs-subclass"}));
  cqcmd->add_option("--format", o.cq_format)->check(CLI::IsMember({"json", "md"}));
  cqcmd->add_option("--output", o.output, "Write the report here instead of stdout");

  auto* rewrite = app.add_subcommand("rewrite", "Rewrite predicates through the ODP alignment");
  rewrite->add_option("--from", o.from, "Source vocabulary")->required();
  rewrite->add_option("--to", o.to, "Target vocabulary")->required();
  rewrite->add_option("--alignment", o.alignment, "Alignment JSON (default: built-in table)");
  rewrite->add_option("--output", o.output, "Write Turtle here instead of stdout");
  rewrite->add_option("--unmappable", o.unmappable, "Sidecar path (default: unmappable.json)");
  rewrite->add_option("input", o.rewrite_input, "Turtle file")->required();

  auto* dump = app.add_subcommand("dump-view", "Print the extracted class hierarchy as JSON");
  dump->add_option("file", o.view_input, "Turtle file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (evaluate->parsed()) return cmd_evaluate(o, out, err);
    if (query->parsed()) return cmd_query(o, out, err);
    if (cqcmd->parsed()) return cmd_cq(o, out, err);
    if (rewrite->parsed()) return cmd_rewrite(o, out, err);
    if (dump->parsed()) return cmd_dump_view(o, out, err);
  } catch (const cq::UnknownVocabulary& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace ontoqual::cli

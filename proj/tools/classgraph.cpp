// classgraph: prime graphs on conjugacy class sizes.
//
//   classgraph analyze <spec.json> [--dot out.dot] [--weak-witness]
//   classgraph construct --blocks m1,m2,m3,m4 [--avoid p,...] [--out dir]
//   classgraph corpus <dir>
//   classgraph export-dot <spec.json> [--out file]
//   classgraph verify <spec.json> <prediction.json>
//
// exit codes: 0 ok, 2 parse/usage, 3 enumeration cap, 4 internal invariant,
// 5 prime search bound, 1 corpus rows failing.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "classgraph.hpp"

namespace fs = std::filesystem;
using namespace classgraph;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCorpus = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;
constexpr int kExitInternal = 4;
constexpr int kExitBound = 5;

int exit_code_for(const Error& e) {
  if (e.is_internal()) return kExitInternal;
  switch (e.kind()) {
    case ErrorKind::CapExceeded:
    case ErrorKind::TooManyVertices:
      return kExitCap;
    case ErrorKind::BoundExhausted:
      return kExitBound;
    default:
      return kExitUsage;
  }
}

AnalysisOptions options_from_env() {
  AnalysisOptions opts;
  if (const char* cap = std::getenv("CLASSGRAPH_CAP")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(cap, &used);
      if (used != std::string(cap).size() || v == 0) throw std::invalid_argument(cap);
      opts.perm_cap = v;
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, std::string("CLASSGRAPH_CAP is not a positive integer: ") + cap);
    }
  }
  return opts;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_analyze(const std::string& path, const std::string& dot, bool weak) {
  auto opts = options_from_env();
  opts.block.weak_witness = weak;
  const auto report = analyze(load_spec(path), opts);
  std::cout << report_text(report);
  if (!dot.empty()) write_file(dot, export_dot(report.theorem_a.graph));
  if (!report.invariants_ok()) {
    for (const auto& i : report.invariants) {
      if (!i.ok) std::cerr << "invariant " << i.name << " failed: " << i.detail << "\n";
    }
    return kExitInternal;
  }
  return kExitOk;
}

int cmd_construct(const std::vector<std::uint64_t>& blocks, const std::vector<std::uint64_t>& avoid,
                  const std::string& out_dir) {
  if (blocks.size() != 4) throw Error(ErrorKind::InvalidArgument, "--blocks needs exactly four sizes");
  ConstructOptions copts;
  copts.avoid = PrimeSet(avoid.begin(), avoid.end());
  const auto c = construct_block_square_group(blocks[0], blocks[1], blocks[2], blocks[3], copts);
  std::string name = "block_square";
  for (auto m : blocks) name += "_" + std::to_string(m);
  const GroupSpecFile spec{name, c.expr};

  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / (name + ".json"), serialize_spec(spec));
  write_file(fs::path(out_dir) / (name + ".prediction.json"), prediction_json(c).dump(2) + "\n");

  verify_construction(c, options_from_env());
  std::cout << serialize_spec(spec);
  std::cerr << name << ": |A| = " << c.a_order << ", |B| = " << c.b_order << ", prediction verified\n";
  return kExitOk;
}

int cmd_corpus(const std::string& dir) {
  const auto rows = run_corpus(dir, options_from_env());
  std::cout << corpus_table(rows);
  bool all_ok = true;
  for (const auto& r : rows) all_ok = all_ok && r.ok();
  return all_ok ? kExitOk : kExitCorpus;
}

int cmd_export_dot(const std::string& path, const std::string& out) {
  const auto opts = options_from_env();
  const auto spec = load_spec(path);
  const auto evaluated = evaluate(spec.construct, opts.perm_cap);
  Spectrum s;
  if (const auto* m = std::get_if<MetabelianGroup>(&evaluated)) {
    s = class_size_spectrum(*m, opts.spectrum_cap);
  } else {
    s = conjugacy_class_sizes(as_permutation_group(evaluated, opts.perm_cap));
  }
  const auto dot = export_dot(delta_of(s));
  if (out.empty()) {
    std::cout << dot;
  } else {
    write_file(out, dot);
  }
  return kExitOk;
}

int cmd_verify(const std::string& spec_path, const std::string& prediction_path) {
  Json prediction;
  try {
    prediction = Json::parse(read_file(prediction_path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("malformed prediction: ") + e.what());
  }
  const auto spec = load_spec(spec_path);
  check_prediction(spec, prediction, options_from_env());
  std::cout << spec.name << ": prediction verified\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prime graphs on conjugacy class sizes"};
  app.require_subcommand(1);

  std::string path;
  std::string dot;
  bool weak = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "analyze a group spec and print a JSON report");
  analyze_cmd->add_option("path", path, "spec file")->required();
  analyze_cmd->add_option("--dot", dot, "also write the prime graph as DOT");
  analyze_cmd->add_flag("--weak-witness", weak, "looser witness condition for block squares");

  std::vector<std::uint64_t> blocks;
  std::vector<std::uint64_t> avoid;
  std::string out_dir = ".";
  auto* construct_cmd = app.add_subcommand("construct", "build a group realizing a block square");
  construct_cmd->add_option("--blocks", blocks, "m1,m2,m3,m4")->required()->delimiter(',')->expected(4);
  construct_cmd->add_option("--avoid", avoid, "primes not to use")->delimiter(',');
  construct_cmd->add_option("--out", out_dir, "output directory");

  std::string dir;
  auto* corpus_cmd = app.add_subcommand("corpus", "analyze every spec in a directory");
  corpus_cmd->add_option("dir", dir, "directory of spec files")->required();

  std::string dot_out;
  auto* dot_cmd = app.add_subcommand("export-dot", "print the prime graph in DOT");
  dot_cmd->add_option("path", path, "spec file")->required();
  dot_cmd->add_option("--out", dot_out, "write to a file instead");

  std::string prediction;
  auto* verify_cmd = app.add_subcommand("verify", "check a spec against a stored prediction");
  verify_cmd->add_option("spec", path, "spec file")->required();
  verify_cmd->add_option("prediction", prediction, "prediction file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(path, dot, weak);
    if (*construct_cmd) return cmd_construct(blocks, avoid, out_dir);
    if (*corpus_cmd) return cmd_corpus(dir);
    if (*dot_cmd) return cmd_export_dot(path, dot_out);
    if (*verify_cmd) return cmd_verify(path, prediction);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

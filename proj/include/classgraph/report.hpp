#pragma once

// Analysis reports (JSON) and the batch corpus runner.

#include <algorithm>
#include <filesystem>
#include <future>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "classgraph/block_square.hpp"
#include "classgraph/constructor.hpp"
#include "classgraph/error.hpp"
#include "classgraph/group_expr.hpp"
#include "classgraph/prime_graph.hpp"
#include "classgraph/spec_io.hpp"
#include "classgraph/spectrum.hpp"
#include "classgraph/structure_analysis.hpp"

namespace classgraph {

/// Above this many classes the flat "spectrum" array is replaced by null;
/// "class_sizes" always carries the compressed form.
inline constexpr std::uint64_t kFlatSpectrumLimit = 100'000;

struct InvariantResult {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct AnalysisReport {
  std::string name;
  TheoremAReport theorem_a;
  bool spectral_dgroup = false;
  std::optional<DGroupWitness> dgroup;
  bool admissible = false;
  std::vector<InvariantResult> invariants;
  std::vector<std::string> warnings;

  bool invariants_ok() const {
    return std::all_of(invariants.begin(), invariants.end(), [](const auto& i) { return i.ok; });
  }
};

namespace detail {

/// p outside V(G) exactly when the Sylow p-subgroup is central, for every
/// prime dividing |G|.
inline InvariantResult central_sylow_check(const EvaluatedGroup& g, const PrimeGraph& graph, std::uint64_t order,
                                           const AnalysisOptions& opts) {
  InvariantResult r{"central_sylow", true, ""};
  std::uint64_t z = 0;
  if (const auto* m = std::get_if<MetabelianGroup>(&g)) {
    z = center_order(*m);
  } else {
    z = center(as_permutation_group(g, opts.perm_cap)).order();
  }
  for (Prime p : nt::prime_divisors(order)) {
    const bool central = nt::valuation(z, p) == nt::valuation(order, p);
    const bool vertex = graph.vertices().count(p) != 0;
    if (central == vertex) {
      r.ok = false;
      r.detail += "p=" + std::to_string(p) + (vertex ? " is a vertex with central Sylow; " : " missing but Sylow not central; ");
    }
  }
  return r;
}

inline InvariantResult nonneighbor_clique_check(const PrimeGraph& graph) {
  InvariantResult r{"nonneighbor_clique", true, ""};
  for (Prime v : graph.vertices()) {
    if (!is_clique(graph, non_neighbors(graph, v))) {
      r.ok = false;
      r.detail += "non-neighbours of " + std::to_string(v) + " not a clique; ";
    }
  }
  return r;
}

}  // namespace detail

inline AnalysisReport analyze(const GroupSpecFile& spec, const AnalysisOptions& opts = {}) {
  AnalysisReport rep;
  rep.name = spec.name;
  rep.theorem_a = verify_theorem_A(spec.construct, opts);
  const auto& ta = rep.theorem_a;
  auto evaluated = evaluate(spec.construct, opts.perm_cap);

  rep.spectral_dgroup = is_dgroup_spectral(ta.spectrum);
  rep.dgroup = dgroup_witness(evaluated, opts);
  rep.admissible = std::any_of(ta.partitions.begin(), ta.partitions.end(),
                               [&](const BlockPartition& p) { return is_admissible_block_square(ta.graph, p); });

  if (!has_identity_class(ta.spectrum)) rep.warnings.emplace_back("spectrum has no class of size 1");
  for (const auto& note : ta.notes) rep.warnings.push_back(note);

  auto& inv = rep.invariants;
  inv.push_back({"spectrum_sum", spectrum_total(ta.spectrum) == ta.order,
                 "sum " + std::to_string(spectrum_total(ta.spectrum)) + " vs order " + std::to_string(ta.order)});
  inv.push_back({"identity_class", has_identity_class(ta.spectrum), ""});
  inv.push_back({"dgroup_agreement", rep.spectral_dgroup == rep.dgroup.has_value(),
                 std::string("spectral ") + (rep.spectral_dgroup ? "yes" : "no") + ", structural " +
                     (rep.dgroup ? "yes" : "no")});
  if (rep.dgroup) {
    inv.push_back({"dgroup_sizes", size_set(ta.spectrum) == rep.dgroup->class_size_set, ""});
  }
  inv.push_back({"theorem_a", ta.status != TheoremAStatus::CounterexampleCandidate && ta.forward_check != false,
                 ta.notes.empty() ? "" : ta.notes.front()});
  inv.push_back(detail::nonneighbor_clique_check(ta.graph));
  inv.push_back(detail::central_sylow_check(evaluated, ta.graph, ta.order, opts));
  for (auto& i : inv) {
    if (i.ok) i.detail.clear();
  }
  return rep;
}

inline Json partition_json(const BlockPartition& p) {
  return Json{{"pi1", p.pi1()}, {"pi2", p.pi2()}, {"pi3", p.pi3()}, {"pi4", p.pi4()}};
}

inline Json dgroup_witness_json(const DGroupWitness& w) {
  return Json{{"a_order", w.a_order},         {"b_order", w.b_order},
              {"center_order", w.center_order}, {"a_primes", w.a_primes},
              {"quotient_primes", w.quotient_primes}, {"class_size_set", w.class_size_set}};
}

inline Json graph_json(const PrimeGraph& g) {
  Json edges = Json::array();
  for (auto [p, q] : g.edges()) edges.push_back(Json::array({p, q}));
  return Json{{"vertices", g.vertices()}, {"edges", edges}};
}

inline Json to_json(const AnalysisReport& rep) {
  const auto& ta = rep.theorem_a;
  Json j;
  j["name"] = rep.name;
  j["order"] = ta.order;
  if (class_count(ta.spectrum) <= kFlatSpectrumLimit) {
    j["spectrum"] = spectrum_to_list(ta.spectrum);
  } else {
    j["spectrum"] = nullptr;
  }
  Json sizes = Json::array();
  for (auto [size, count] : ta.spectrum) sizes.push_back(Json::array({size, count}));
  j["class_sizes"] = sizes;
  j["graph"] = graph_json(ta.graph);
  j["connected"] = components(ta.graph).size() <= 1;
  j["dgroup"] = Json{{"spectral", rep.spectral_dgroup},
                     {"witness", rep.dgroup ? dgroup_witness_json(*rep.dgroup) : Json(nullptr)}};
  Json parts = Json::array();
  for (const auto& p : ta.partitions) parts.push_back(partition_json(p));
  j["block_square"] = Json{{"found", !ta.partitions.empty()}, {"partitions", parts}, {"admissible", rep.admissible}};
  Json wit = nullptr;
  if (ta.witness) {
    wit = Json{{"central_primes", ta.witness->central_primes},
               {"a_order", ta.witness->a_order},
               {"b_order", ta.witness->b_order},
               {"a_dgroup", dgroup_witness_json(ta.witness->a_dgroup)},
               {"b_dgroup", dgroup_witness_json(ta.witness->b_dgroup)},
               {"partition", partition_json(ta.witness->partition)}};
  }
  j["theorem_a"] = Json{{"status", std::string(to_string(ta.status))},
                        {"witness", wit},
                        {"forward_check", ta.forward_check ? Json(*ta.forward_check) : Json(nullptr)},
                        {"notes", ta.notes}};
  j["route"] = ta.route;
  Json inv = Json::array();
  for (const auto& i : rep.invariants) {
    Json e{{"name", i.name}, {"ok", i.ok}};
    if (!i.detail.empty()) e["detail"] = i.detail;
    inv.push_back(e);
  }
  j["invariants"] = inv;
  j["warnings"] = rep.warnings;
  return j;
}

inline std::string report_text(const AnalysisReport& rep) { return to_json(rep).dump(2) + "\n"; }

// ---- construction predictions ----

inline Json prediction_json(const Construction& c) {
  return Json{{"blocks", c.block_sizes},
              {"a_order", c.a_order},
              {"b_order", c.b_order},
              {"partition", partition_json(c.partition)},
              {"graph", graph_json(c.predicted)},
              {"kernel_prime_rule", "each kernel prime is 1 mod the complement order of its factor"}};
}

inline PrimeGraph graph_from_json(const Json& j) {
  PrimeGraph g;
  try {
    for (const auto& v : j.at("vertices")) g.add_vertex(v.get<Prime>());
    for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<Prime>(), e.at(1).get<Prime>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("bad graph object: ") + e.what());
  }
  return g;
}

/// Recomputes the graph of `spec` and compares it with a stored prediction.
inline void check_prediction(const GroupSpecFile& spec, const Json& prediction, const AnalysisOptions& opts = {}) {
  if (!prediction.is_object() || !prediction.contains("graph")) {
    throw Error(ErrorKind::ParseError, "prediction has no \"graph\" object");
  }
  const auto expected = graph_from_json(prediction["graph"]);
  const auto report = verify_theorem_A(spec.construct, opts);
  if (!(report.graph == expected)) throw Error(ErrorKind::PredictionMismatch, "graph of " + spec.name + " differs from prediction");
  if (report.status != TheoremAStatus::Verified) {
    throw Error(ErrorKind::PredictionMismatch, spec.name + ": decomposition did not verify");
  }
}

// ---- corpus ----

struct CorpusRow {
  std::string file;
  std::optional<AnalysisReport> report;
  std::optional<ErrorKind> error;
  std::string message;

  bool ok() const { return !error && report && report->invariants_ok(); }
};

inline CorpusRow analyze_file(const std::filesystem::path& path, const AnalysisOptions& opts) {
  CorpusRow row;
  row.file = path.filename().string();
  try {
    row.report = analyze(load_spec(path), opts);
    if (!row.report->invariants_ok()) {
      for (const auto& i : row.report->invariants) {
        if (!i.ok) row.message += i.name + (i.detail.empty() ? "" : ": " + i.detail) + "; ";
      }
    }
  } catch (const Error& e) {
    row.error = e.kind();
    row.message = e.what();
  } catch (const std::exception& e) {
    row.error = ErrorKind::InvariantViolation;
    row.message = e.what();
  }
  return row;
}

/// Every *.json spec in `dir`, analyzed concurrently; rows sorted by file name.
inline std::vector<CorpusRow> run_corpus(const std::filesystem::path& dir, const AnalysisOptions& opts = {}) {
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorKind::InvalidArgument, dir.string() + " is not a directory");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (!entry.is_regular_file() || entry.path().extension() != ".json") continue;
    // prediction reports written next to constructed specs
    if (name.size() > 16 && name.ends_with(".prediction.json")) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::future<CorpusRow>> tasks;
  tasks.reserve(files.size());
  for (const auto& f : files) tasks.push_back(std::async(std::launch::async, analyze_file, f, opts));
  std::vector<CorpusRow> rows;
  rows.reserve(tasks.size());
  for (auto& t : tasks) rows.push_back(t.get());
  return rows;
}

inline std::string corpus_table(const std::vector<CorpusRow>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(30) << "file" << std::setw(22) << "name" << std::right << std::setw(14) << "order"
      << std::setw(5) << "|V|" << std::setw(5) << "|E|" << std::setw(6) << "comp" << "  " << std::left
      << std::setw(8) << "dgroup" << std::setw(8) << "square" << std::setw(26) << "theorem_a"
      << "status\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(30) << r.file;
    if (r.report) {
      const auto& ta = r.report->theorem_a;
      out << std::setw(22) << r.report->name << std::right << std::setw(14) << ta.order << std::setw(5)
          << ta.graph.vertices().size() << std::setw(5) << ta.graph.edges().size() << std::setw(6)
          << components(ta.graph).size() << "  " << std::left << std::setw(8)
          << (r.report->spectral_dgroup ? "yes" : "no") << std::setw(8) << (ta.partitions.empty() ? "no" : "yes")
          << std::setw(26) << to_string(ta.status);
    } else {
      out << std::setw(22) << "-" << std::right << std::setw(14) << "-" << std::setw(5) << "-" << std::setw(5) << "-"
          << std::setw(6) << "-" << "  " << std::left << std::setw(8) << "-" << std::setw(8) << "-"
          << std::setw(26) << "-";
    }
    if (r.ok()) {
      out << "OK\n";
    } else if (r.error) {
      out << "ERROR " << r.message << "\n";
    } else {
      out << "FAIL " << r.message << "\n";
    }
  }
  return out.str();
}

}  // namespace classgraph

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fcs/fcs.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kVerifyFailed = 2, kParseError = 3, kGuardExceeded = 4, kInvalidInput = 5 };

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    fcs::write_file(path, content);
  }
}

fcs::Graph load_graph(const std::string& path) { return fcs::parse_graph(fcs::read_file(path)); }

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::int64_t> split_numbers(const std::string& text) {
  std::vector<std::int64_t> out;
  for (const std::string& s : split_list(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(s, &used));
      if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
      fcs::fail(fcs::ErrorKind::kInvalidArgument, "not an integer list: '" + text + "'");
    }
  }
  return out;
}

int verification_failed(const std::string& what) {
  std::cerr << "verification failed: " << what << '\n';
  return kVerifyFailed;
}

int verify_ghtree(const fcs::Graph& g, const std::string& text, bool structural, int spot, std::uint64_t seed,
                  int threads) {
  fcs::GHTree t = fcs::parse_gh_tree(text);
  if (!structural) fcs::oracle::guard(g, fcs::oracle::kMaxEnumerate, "verify");
  fcs::TreeCheck c = fcs::validate_gh_tree(g, t, structural ? spot : -1, seed);
  if (!c.passed) return verification_failed(c.reason + " (pair " + std::to_string(c.s) + "," + std::to_string(c.t) + ")");
  if (!structural) {
    fcs::oracle::CutMatrix lambda = fcs::oracle::all_pairs_min_cut(g, threads);
    for (fcs::NodeId s = 0; s < g.node_count(); ++s) {
      for (fcs::NodeId u = s + 1; u < g.node_count(); ++u) {
        fcs::GHQuery q = fcs::gh_query(t, s, u);
        if (q.value != lambda[s][u]) {
          return verification_failed("pair " + std::to_string(s) + "," + std::to_string(u) + ": tree gives " +
                                     std::to_string(q.value) + ", minimum cut is " + std::to_string(lambda[s][u]));
        }
      }
    }
  }
  std::cout << "ok: gh tree valid (" << t.edges.size() << " edges, " << t.components << " components"
            << (structural ? ", structural" : "") << ")\n";
  return kOk;
}

int verify_sparsifier(const fcs::Graph& g, const std::string& text, const std::string& property, std::int64_t w,
                      const std::string& terminals_path, bool structural) {
  fcs::Sparsifier h = fcs::parse_sparsifier(text, g);
  fcs::PreservationReport r = fcs::verify_sparsifier_structure(g, h);
  if (!r.passed) return verification_failed(r.reason);
  if (!structural) {
    if (property == "friendly") {
      r = fcs::verify_friendly_preservation(g, h, w);
    } else if (property == "mincut") {
      r = fcs::verify_mincut_preservation(g, h);
    } else if (property == "terminal") {
      if (terminals_path.empty()) fcs::fail(fcs::ErrorKind::kInvalidArgument, "--property terminal needs --terminals");
      std::vector<fcs::NodeId> t = fcs::parse_subset(fcs::read_file(terminals_path), g.node_count());
      r = fcs::verify_terminal_preservation(g, h, t, w);
    } else {
      fcs::fail(fcs::ErrorKind::kInvalidArgument, "unknown property '" + property + "'");
    }
  }
  if (!r.passed) {
    std::ostringstream os;
    os << r.reason << "; witness {";
    for (std::size_t i = 0; i < r.witness.size(); ++i) os << (i ? " " : "") << r.witness[i];
    os << '}';
    return verification_failed(os.str());
  }
  std::cout << "ok: sparsifier valid (" << h.graph.node_count() << " super-nodes, " << h.graph.total_weight()
            << " weighted edges";
  if (!structural) std::cout << ", " << r.checked << " cuts checked, property " << property;
  std::cout << ")\n";
  return kOk;
}

int verify_single_source(const fcs::Graph& g, const std::string& text, bool structural, int spot,
                         std::uint64_t seed) {
  fcs::SingleSourceArtifact a = fcs::parse_single_source(text);
  const fcs::EstimateTable& t = a.table;
  if (t.size() != g.node_count()) {
    return verification_failed("artifact covers " + std::to_string(t.size()) + " nodes but the graph has " +
                               std::to_string(g.node_count()));
  }
  std::string why;
  if (!fcs::witnesses_valid(g, t, &why)) return verification_failed(why);
  if (!structural) fcs::oracle::guard(g, fcs::oracle::kMaxClassify, "verify");
  std::vector<fcs::NodeId> check;
  for (fcs::NodeId v = 0; v < g.node_count(); ++v) {
    if (v != t.source) check.push_back(v);
  }
  if (structural && spot >= 0 && static_cast<std::size_t>(spot) < check.size()) {
    std::mt19937_64 rng(seed);
    std::shuffle(check.begin(), check.end(), rng);
    check.resize(spot);
  }
  const bool exact = a.mode != "unfriendly";
  for (fcs::NodeId v : check) {
    fcs::Weight lambda = fcs::max_flow(g, t.source, v).value;
    bool must_match = exact;
    if (!exact && !structural) must_match = fcs::oracle::min_cut_friendliness(g, t.source, v).has_unfriendly();
    if (t.value[v] < lambda || (must_match && t.value[v] != lambda)) {
      return verification_failed("node " + std::to_string(v) + ": value " + std::to_string(t.value[v]) +
                                 ", minimum cut is " + std::to_string(lambda));
    }
  }
  std::cout << "ok: single-source cuts valid (" << check.size() << " nodes checked, mode " << a.mode << ")\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Friendly cut sparsifiers, Gomory-Hu trees and single-source minimum cuts"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "Worker threads for all-pairs and isolating-cut flows")->check(CLI::PositiveNumber);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a graph");
  std::string family;
  fcs::gen::Params params;
  std::string gen_out;
  gen->add_option("--family", family, "clique|clique-of-cliques|alt-cycle|gnp|path|star|dumbbell|random-regular")
      ->required()
      ->check(CLI::IsMember(fcs::gen::families()));
  gen->add_option("--n", params.n, "Node count (base size for clique-of-cliques, clique size for dumbbell)");
  gen->add_option("--p", params.p, "Edge probability for gnp");
  gen->add_option("--d", params.d, "Degree for random-regular");
  gen->add_option("--blob", params.blob, "Blob size for clique-of-cliques (default ceil(10 sqrt n))");
  gen->add_option("--scale", params.scale, "Weight scale for alt-cycle");
  gen->add_option("--seed", params.seed, "Random seed");
  gen->add_option("--out", gen_out, "Output file (default stdout)");

  // sparsify
  auto* sp = app.add_subcommand("sparsify", "Build a sparsifier");
  std::string sp_in, sp_mode = "iterative", sp_terminals, sp_out;
  std::int64_t sp_w = 1;
  fcs::SparsifyConfig cfg;
  bool sp_report = false;
  sp->add_option("--in", sp_in, "Input graph")->required();
  sp->add_option("--w", sp_w, "Cut value bound w");
  sp->add_option("--mode", sp_mode, "oneshot|iterative|terminal|gh-based")
      ->check(CLI::IsMember({"oneshot", "iterative", "terminal", "gh-based"}));
  sp->add_option("--terminals", sp_terminals, "Terminal subset file (terminal mode)");
  sp->add_option("--seed", cfg.seed, "Random seed");
  sp->add_option("--low-degree-factor", cfg.low_degree_factor, "Shave nodes with degree below f sqrt(w)");
  sp->add_option("--out", sp_out, "Output artifact (default stdout)");
  sp->add_flag("--report", sp_report, "Print a size report to stderr");

  // ghtree
  auto* gh = app.add_subcommand("ghtree", "Build a Gomory-Hu tree");
  std::string gh_in, gh_algo = "classical", gh_out;
  gh->add_option("--in", gh_in, "Input graph")->required();
  gh->add_option("--algo", gh_algo, "classical|accelerated")->check(CLI::IsMember({"classical", "accelerated"}));
  gh->add_option("--out", gh_out, "Output artifact (default stdout)");

  // sscut
  auto* ss = app.add_subcommand("sscut", "Single-source minimum cuts");
  std::string ss_in, ss_mode = "unfriendly", ss_out;
  fcs::NodeId ss_source = 0;
  ss->add_option("--in", ss_in, "Input graph")->required();
  ss->add_option("--source", ss_source, "Source node")->required();
  ss->add_option("--mode", ss_mode, "unfriendly|exact|accelerated")
      ->check(CLI::IsMember({"unfriendly", "exact", "accelerated"}));
  ss->add_option("--out", ss_out, "Output artifact (default stdout)");

  // verify
  auto* ver = app.add_subcommand("verify", "Check an artifact against its graph");
  std::string v_in, v_artifact, v_property = "friendly", v_terminals;
  std::int64_t v_w = 1;
  bool v_structural = false;
  int v_spot = 16;
  std::uint64_t v_seed = 1;
  ver->add_option("--in", v_in, "Input graph")->required();
  ver->add_option("--artifact", v_artifact, "Artifact file")->required();
  ver->add_option("--w", v_w, "Cut value bound for sparsifier checks");
  ver->add_option("--property", v_property, "Sparsifier property: friendly|mincut|terminal")
      ->check(CLI::IsMember({"friendly", "mincut", "terminal"}));
  ver->add_option("--terminals", v_terminals, "Terminal subset file (terminal property)");
  ver->add_flag("--structural", v_structural, "Skip oracle enumeration; check structure and spot pairs");
  ver->add_option("--spot", v_spot, "Max-flow spot checks in structural mode");
  ver->add_option("--seed", v_seed, "Seed for spot-check selection");

  // bench
  auto* be = app.add_subcommand("bench", "Measure sparsifier sizes, CSV output");
  std::string b_families = "clique-of-cliques,gnp", b_sizes = "4,9,16", b_wgrid = "4,16,64", b_modes = "oneshot,iterative",
              b_csv;
  double b_avg_degree = 50;
  std::uint64_t b_seed = 1;
  fcs::Weight b_f = 10;
  be->add_option("--family", b_families, "Comma-separated families");
  be->add_option("--sizes", b_sizes, "Comma-separated sizes (base size for clique-of-cliques)");
  be->add_option("--w-grid", b_wgrid, "Comma-separated w values; 'n' means w = n");
  be->add_option("--modes", b_modes, "Comma-separated modes: oneshot,iterative,gh-based");
  be->add_option("--avg-degree", b_avg_degree, "gnp uses p = avg-degree / n");
  be->add_option("--seed", b_seed, "Random seed");
  be->add_option("--low-degree-factor", b_f, "Shaving factor f");
  be->add_option("--csv", b_csv, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      emit(gen_out, fcs::serialize_graph(fcs::gen::generate(family, params)));
    } else if (*sp) {
      fcs::Graph g = load_graph(sp_in);
      fcs::Sparsifier h;
      if (sp_mode == "oneshot") {
        h = fcs::friendly_sparsify_oneshot(g, sp_w, cfg);
      } else if (sp_mode == "iterative") {
        h = fcs::friendly_sparsify(g, sp_w, cfg);
      } else if (sp_mode == "terminal") {
        if (sp_terminals.empty()) fcs::fail(fcs::ErrorKind::kInvalidArgument, "terminal mode needs --terminals");
        std::vector<fcs::NodeId> t = fcs::parse_subset(fcs::read_file(sp_terminals), g.node_count());
        h = fcs::terminal_sparsify(g, t, sp_w, cfg);
      } else {
        h = fcs::friendly_mincut_sparsifier_from_gh(g, fcs::gomory_hu(g));
      }
      emit(sp_out, fcs::serialize_sparsifier(h));
      if (sp_report) {
        fcs::SizeReport r = fcs::sparsifier_size_report(h);
        std::cerr << "nodes " << r.nodes << " weighted_edges " << r.weighted_edges << '\n';
      }
    } else if (*gh) {
      fcs::Graph g = load_graph(gh_in);
      fcs::GHTree t = gh_algo == "classical" ? fcs::gomory_hu(g) : fcs::accelerated_gomory_hu(g);
      emit(gh_out, fcs::serialize_gh_tree(t));
    } else if (*ss) {
      fcs::Graph g = load_graph(ss_in);
      fcs::SingleSourceOptions opt;
      opt.threads = threads;
      fcs::EstimateTable t;
      if (ss_mode == "exact") {
        t = fcs::approx_single_source(g, ss_source, opt.eps, {}, threads);
      } else if (ss_mode == "unfriendly") {
        t = fcs::single_source_unfriendly(g, ss_source, opt);
      } else {
        t = fcs::accelerated_single_source(g, ss_source, opt);
      }
      emit(ss_out, fcs::serialize_single_source(t, ss_mode));
    } else if (*ver) {
      fcs::Graph g = load_graph(v_in);
      std::string text = fcs::read_file(v_artifact);
      switch (fcs::artifact_kind(text)) {
        case fcs::ArtifactKind::kGHTree: return verify_ghtree(g, text, v_structural, v_spot, v_seed, threads);
        case fcs::ArtifactKind::kSparsifier:
          return verify_sparsifier(g, text, v_property, v_w, v_terminals, v_structural);
        case fcs::ArtifactKind::kSingleSource: return verify_single_source(g, text, v_structural, v_spot, v_seed);
        case fcs::ArtifactKind::kUnknown:
          fcs::fail(fcs::ErrorKind::kParse, "unrecognised artifact: missing '# fcs ...' header line");
      }
    } else if (*be) {
      std::ostringstream csv;
      csv << fcs::bench::kHeader << '\n';
      fcs::SparsifyConfig bcfg;
      bcfg.seed = b_seed;
      bcfg.low_degree_factor = b_f;
      for (const std::string& fam : split_list(b_families)) {
        for (std::int64_t size : split_numbers(b_sizes)) {
          fcs::gen::Params p;
          p.n = static_cast<fcs::NodeId>(size);
          p.seed = b_seed;
          p.p = std::min(1.0, b_avg_degree / static_cast<double>(size));
          fcs::Graph g = fcs::gen::generate(fam, p);
          for (const std::string& wtext : split_list(b_wgrid)) {
            fcs::Weight w = wtext == "n" ? g.node_count() : split_numbers(wtext).at(0);
            for (const std::string& mode : split_list(b_modes)) {
              csv << fcs::bench::to_csv(fcs::bench::run(fam, g, w, mode, bcfg)) << '\n';
            }
          }
        }
      }
      emit(b_csv, csv.str());
    }
  } catch (const fcs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case fcs::ErrorKind::kParse: return kParseError;
      case fcs::ErrorKind::kGuard: return kGuardExceeded;
      case fcs::ErrorKind::kVerification: return kVerifyFailed;
      case fcs::ErrorKind::kInvalidArgument: return kInvalidInput;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return kOk;
}

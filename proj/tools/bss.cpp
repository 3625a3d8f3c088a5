// bss: binding-site similarity pipeline driver.
//
// Subcommands: fetch, pairs, run, bench, report, product.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "bss/fetch.hpp"
#include "bss/graph_match.hpp"
#include "bss/pipeline.hpp"
#include "bss/report.hpp"
#include "bss/stats.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path default_cache_dir() {
  if (const char* env = std::getenv("BSS_CACHE_DIR")) return env;
  return "pdb-cache";
}

struct CommonOpts {
  fs::path cache_dir = default_cache_dir();
  std::string base_url = bss::FetchOptions{}.base_url;
  bool offline = false;

  bss::PipelineParams params;
  int workers = 1;
  std::string strategy = "broadcast";
  int level = 1;

  void add_run_flags(CLI::App* cmd) {
    add_fetch_flags(cmd);
    cmd->add_option("--workers", workers, "worker count")->check(CLI::PositiveNumber);
    cmd->add_option("--strategy", strategy, "broadcast|scatter")
        ->check(CLI::IsMember({"broadcast", "scatter"}));
    cmd->add_option("--level", level, "parallelization level")->check(CLI::IsMember({1, 2}));
    cmd->add_option("--site-cutoff", params.site.site_cutoff, "binding-site cutoff, A");
    cmd->add_option("--eps", params.site.eps, "distance compatibility tolerance, A");
    cmd->add_option("--dmax", params.site.dmax, "intra-site distance ceiling, A");
    cmd->add_option("--min-patch", params.site.min_patch, "minimum patch size");
    cmd->add_option("--patch-rmsd-cutoff", params.site.patch_rmsd_cutoff, "A");
    cmd->add_option("--angle-cutoff", params.site.angle_cutoff, "degrees");
    cmd->add_flag("--exact-residue-names", params.site.exact_residue_names,
                  "match residues by exact name instead of class");
    cmd->add_option("--ligand-rmsd-cutoff", params.ligand_rmsd_cutoff,
                    "similar-binding-mode gate, A");
    cmd->add_option("--min-heavy-atoms", params.ligand_filter.min_heavy_atoms,
                    "minimum ligand heavy-atom count");
  }

  void add_fetch_flags(CLI::App* cmd) {
    cmd->add_option("--cache-dir", cache_dir, "PDB cache directory (env BSS_CACHE_DIR)");
    cmd->add_option("--base-url", base_url, "download URL base");
    cmd->add_flag("--offline", offline, "never touch the network");
  }

  bss::PipelineParams finalize() {
    params.cache_dir = cache_dir;
    params.fetch.base_url = base_url;
    params.fetch.offline = offline;
    return params;
  }

  bss::FarmConfig farm() const {
    bss::FarmConfig cfg;
    cfg.workers = workers;
    cfg.strategy = bss::parse_strategy(strategy);
    cfg.level = level;
    return cfg;
  }
};

int write_outputs(const bss::CorpusResult& run, const fs::path& out) {
  if (out.empty()) {
    std::cout << bss::to_jsonl(run);
  } else {
    std::ofstream(out) << bss::to_jsonl(run);
    fs::path csv = out;
    csv.replace_extension(".csv");
    std::ofstream(csv) << bss::to_csv(run.results);
    std::cerr << "wrote " << out << " and " << csv << "\n";
  }
  return run.any_error ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"binding-site similarity pipeline"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::vector<std::string> ids;
  fs::path out_path;
  int reps = 5;
  fs::path inject_path;
  fs::path breakdown_path;
  fs::path product_a, product_b;
  int ligand_index_a = 0, ligand_index_b = 0;

  auto* fetch_cmd = app.add_subcommand("fetch", "download structures into the cache");
  fetch_cmd->add_option("ids", ids, "PDB ids")->required();
  opts.add_fetch_flags(fetch_cmd);

  auto* pairs_cmd = app.add_subcommand("pairs", "enumerate unique protein pairs");
  pairs_cmd->add_option("ids", ids, "PDB ids")->required();

  auto* run_cmd = app.add_subcommand("run", "run the full pipeline over all pairs");
  run_cmd->add_option("ids", ids, "PDB ids")->required();
  run_cmd->add_option("--out", out_path, "write results JSONL (+ CSV summary)");
  opts.add_run_flags(run_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "repeated timed runs, mean +- 95% CI");
  bench_cmd->add_option("ids", ids, "PDB ids");
  bench_cmd->add_option("--reps", reps, "repetitions")->check(CLI::Range(2, 1000));
  bench_cmd->add_option("--inject", inject_path,
                        "statistics-only mode: read wall times from a file");
  opts.add_run_flags(bench_cmd);

  auto* report_cmd = app.add_subcommand("report", "reports over saved results");
  report_cmd->add_option("--breakdown", breakdown_path, "results JSONL file")->required();

  auto* product_cmd =
      app.add_subcommand("product", "dump the modular product graph of two ligands");
  product_cmd->add_option("pdb_a", product_a, "first PDB file")->required();
  product_cmd->add_option("pdb_b", product_b, "second PDB file")->required();
  product_cmd->add_option("--ligand-a", ligand_index_a, "ligand index in file A");
  product_cmd->add_option("--ligand-b", ligand_index_b, "ligand index in file B");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*fetch_cmd) {
      bss::FetchOptions fo{opts.base_url, opts.offline};
      for (const auto& id : ids)
        std::cout << bss::fetch_structure(id, opts.cache_dir, fo).string() << "\n";
      return 0;
    }

    if (*pairs_cmd) {
      auto tasks = bss::unique_pairs(ids);
      for (const auto& t : tasks)
        std::cout << t.index << "\t" << t.id_a << "\t" << t.id_b << "\n";
      std::cout << tasks.size() << "\n";
      return 0;
    }

    if (*run_cmd) {
      auto run = bss::run_corpus(ids, opts.finalize(), opts.farm());
      return write_outputs(run, out_path);
    }

    if (*bench_cmd) {
      if (!inject_path.empty()) {
        auto stats = bss::make_stats(bss::read_samples(inject_path));
        std::cout << bss::format_bench_table(stats);
        return 0;
      }
      if (ids.size() < 2) throw std::runtime_error("need at least 2 ids");
      auto params = opts.finalize();
      auto cfg = opts.farm();
      std::vector<double> samples;
      for (int i = 0; i < reps; ++i) {
        auto run = bss::run_corpus(ids, params, cfg);
        if (run.any_error) throw std::runtime_error("bench aborted: a pair failed");
        samples.push_back(run.manifest.wall_seconds);
      }
      std::cout << bss::format_bench_table(bss::make_stats(samples));
      return 0;
    }

    if (*report_cmd) {
      auto results = bss::read_results_jsonl(breakdown_path);
      std::cout << bss::format_breakdown(bss::breakdown_report(results));
      return 0;
    }

    if (*product_cmd) {
      auto load = [&](const fs::path& p, int index) {
        auto ligands = bss::extract_ligands(bss::parse_pdb(slurp(p)));
        if (index < 0 || index >= static_cast<int>(ligands.size()))
          throw std::runtime_error("no ligand at index " + std::to_string(index) +
                                   " in " + p.string());
        return ligands[index];
      };
      auto a = load(product_a, ligand_index_a);
      auto b = load(product_b, ligand_index_b);
      std::cout << bss::dump_compat_graph(bss::modular_product(a, b));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "bss/fetch.hpp"
#include "bss/mol.hpp"
#include "bss/pairs.hpp"
#include "bss/site.hpp"
#include "bss/taskfarm.hpp"

namespace bss {

struct PipelineParams {
  std::filesystem::path cache_dir = "pdb-cache";
  FetchOptions fetch;
  LigandFilter ligand_filter;
  SiteParams site;
  double ligand_rmsd_cutoff = 2.0;  // Å, the similar-binding-mode gate
};

enum class PairStatus { Similar, NotSimilar, NoSharedChemistry, Error };

std::string status_name(PairStatus s);
std::string match_kind_name(MatchKind k);

struct SiteSummary {
  int correspondence_size = 0;
  double patch_rmsd = 0.0;
  double surface_vector_angle = 0.0;
  bool accepted = false;
};

struct TimingBreakdown {
  int find_iso_calls = 0;
  double find_iso_seconds = 0.0;
  int find_mcs_calls = 0;
  double find_mcs_seconds = 0.0;
  double total_seconds = 0.0;

  double remaining_seconds() const {
    return total_seconds - find_iso_seconds - find_mcs_seconds;
  }
};

struct PairResult {
  std::string id_a;
  std::string id_b;
  PairStatus status = PairStatus::Error;
  std::string error;
  std::optional<SiteSummary> site;
  std::optional<std::pair<LigandKey, LigandKey>> best_ligand_pair;
  MatchKind match_kind = MatchKind::NoOverlap;
  double tanimoto = 0.0;
  double ligand_rmsd = 0.0;
  int candidates_evaluated = 0;
  TimingBreakdown timing;
};

// Fetch + parse + ligand extraction, memoized per id and safe to call from
// any worker. Entries are immutable once published.
class StructureStore {
 public:
  explicit StructureStore(PipelineParams params) : params_(std::move(params)) {}

  struct Entry {
    Structure structure;
    std::vector<MolecularGraph> ligands;
  };

  std::shared_ptr<const Entry> get(const std::string& pdb_id);
  const PipelineParams& params() const { return params_; }

 private:
  PipelineParams params_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const Entry>> cache_;
};

// One full pipeline pass over a protein pair. `inner` controls the ligand
// candidate fan-out: workers == 1 evaluates candidates inline, anything
// larger routes them through the task farm (level-2 parallelism).
PairResult run_pair(const PairTask& pair, StructureStore& store,
                    const FarmConfig& inner);

struct RunManifest {
  std::vector<std::string> ids;
  int workers = 0;
  unsigned hardware_threads = 0;
  std::string strategy;
  int level = 0;
  PipelineParams params;
  double wall_seconds = 0.0;
};

struct CorpusResult {
  std::vector<PairResult> results;  // canonical pair order
  RunManifest manifest;
  bool any_error = false;
};

CorpusResult run_corpus(const std::vector<std::string>& ids,
                        const PipelineParams& params, const FarmConfig& cfg);

// one self-describing record per line; first line is the run manifest
std::string to_jsonl(const CorpusResult& run);
std::string to_csv(const std::vector<PairResult>& results);
std::vector<PairResult> read_results_jsonl(const std::filesystem::path& path);

}  // namespace bss

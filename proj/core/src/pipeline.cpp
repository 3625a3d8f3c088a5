#include "bss/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace bss {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CandidateTask {
  int index = 0;
  int ligand_a = 0;  // index into store entry A's ligand list
  int ligand_b = 0;
};

struct CandidateOutcome {
  int ligand_a = 0;
  int ligand_b = 0;
  LigandKey key_a;
  LigandKey key_b;
  SiteSummary site;
  std::string site_note;  // "empty binding site" etc., empty when usable
  MatchKind kind = MatchKind::NoOverlap;
  double tanimoto = 0.0;
  int mcs_size = 0;
  double ligand_rmsd = std::numeric_limits<double>::infinity();
  int iso_calls = 0;
  int mcs_calls = 0;
  double iso_seconds = 0.0;
  double mcs_seconds = 0.0;
};

CandidateOutcome evaluate_candidate(const StructureStore::Entry& ea,
                                    const StructureStore::Entry& eb,
                                    const CandidateTask& task,
                                    const PipelineParams& params) {
  const MolecularGraph& la = ea.ligands[task.ligand_a];
  const MolecularGraph& lb = eb.ligands[task.ligand_b];

  CandidateOutcome out;
  out.ligand_a = task.ligand_a;
  out.ligand_b = task.ligand_b;
  out.key_a = la.ligand_key;
  out.key_b = lb.ligand_key;

  // binding-site alignment; an empty site leaves the candidate unscorable
  // geometrically but the ligand match still runs (and is still counted)
  std::optional<Superposition> sup;
  try {
    BindingSite sa = extract_binding_site(ea.structure, la, params.site.site_cutoff);
    BindingSite sb = extract_binding_site(eb.structure, lb, params.site.site_cutoff);
    SiteAlignment alignment = align_sites(sa, sb, params.site);
    out.site.correspondence_size = static_cast<int>(alignment.correspondence.size());
    out.site.patch_rmsd = alignment.patch_rmsd;
    out.site.surface_vector_angle = alignment.surface_vector_angle;
    out.site.accepted = alignment.accepted;
    sup = alignment.superposition;
  } catch (const std::exception& e) {
    out.site_note = e.what();
  }

  auto t0 = Clock::now();
  std::vector<VertexMapping> isos = find_isomorphisms(la, lb);
  out.iso_seconds = seconds_since(t0);

  // a candidate counts as one iso run when an isomorphism exists, otherwise
  // as one MCS run; iso_calls + mcs_calls == candidates evaluated
  std::vector<VertexMapping> mappings;
  if (!isos.empty()) {
    out.iso_calls = 1;
    out.kind = MatchKind::Isomorphic;
    out.mcs_size = la.vertex_count();
    out.tanimoto = tanimoto(out.mcs_size, la.vertex_count(), lb.vertex_count());
    mappings = std::move(isos);
  } else {
    auto t1 = Clock::now();
    MatchOutcome mcs = find_mcs(la, lb);
    out.mcs_seconds = seconds_since(t1);
    out.mcs_calls = 1;
    out.kind = mcs.kind;
    out.mcs_size = mcs.mcs_size;
    out.tanimoto = mcs.tanimoto;
    mappings = std::move(mcs.mappings);
  }

  if (sup) {
    // several isomorphisms: keep the one placed best by the site alignment
    for (const VertexMapping& m : mappings) {
      if (m.pairs.size() < 3) continue;
      try {
        LigandRmsdScore score = ligand_rmsd(la.positions, lb.positions, *sup, m);
        out.ligand_rmsd = std::min(out.ligand_rmsd, score.ligand_rmsd);
      } catch (const std::exception&) {
        // degenerate mapped geometry; candidate stays unscored
      }
    }
  }
  return out;
}

bool candidate_better(const CandidateOutcome& a, const CandidateOutcome& b) {
  if (a.tanimoto != b.tanimoto) return a.tanimoto > b.tanimoto;
  if (a.ligand_rmsd != b.ligand_rmsd) return a.ligand_rmsd < b.ligand_rmsd;
  if (a.key_a != b.key_a) return a.key_a < b.key_a;
  return a.key_b < b.key_b;
}

json key_json(const LigandKey& k) {
  return json{{"residue_name", k.residue_name},
              {"chain", std::string(1, k.chain)},
              {"residue_seq", k.residue_seq}};
}

LigandKey key_from_json(const json& j) {
  LigandKey k;
  k.residue_name = j.at("residue_name").get<std::string>();
  k.chain = j.at("chain").get<std::string>().at(0);
  k.residue_seq = j.at("residue_seq").get<int>();
  return k;
}

}  // namespace

std::string status_name(PairStatus s) {
  switch (s) {
    case PairStatus::Similar: return "similar";
    case PairStatus::NotSimilar: return "not_similar";
    case PairStatus::NoSharedChemistry: return "no_shared_chemistry";
    case PairStatus::Error: return "error";
  }
  return "error";
}

std::string match_kind_name(MatchKind k) {
  switch (k) {
    case MatchKind::Isomorphic: return "isomorphic";
    case MatchKind::CommonSubgraph: return "common_subgraph";
    case MatchKind::NoOverlap: return "no_overlap";
  }
  return "no_overlap";
}

std::shared_ptr<const StructureStore::Entry> StructureStore::get(
    const std::string& pdb_id) {
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(pdb_id);
    if (it != cache_.end()) return it->second;
  }

  auto path = fetch_structure(pdb_id, params_.cache_dir, params_.fetch);
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();

  auto entry = std::make_shared<Entry>();
  entry->structure = parse_pdb(buf.str(), normalize_pdb_id(pdb_id));
  entry->ligands = extract_ligands(entry->structure, params_.ligand_filter);

  std::lock_guard lock(mutex_);
  auto [it, inserted] = cache_.emplace(pdb_id, std::move(entry));
  return it->second;
}

PairResult run_pair(const PairTask& pair, StructureStore& store,
                    const FarmConfig& inner) {
  const PipelineParams& params = store.params();
  PairResult result;
  result.id_a = pair.id_a;
  result.id_b = pair.id_b;

  auto t_start = Clock::now();

  std::shared_ptr<const StructureStore::Entry> ea, eb;
  try {
    ea = store.get(pair.id_a);
    eb = store.get(pair.id_b);
  } catch (const std::exception& e) {
    result.status = PairStatus::Error;
    result.error = e.what();
    result.timing.total_seconds = seconds_since(t_start);
    return result;
  }

  if (ea->ligands.empty() || eb->ligands.empty()) {
    result.status = PairStatus::NoSharedChemistry;
    result.error = "no shared ligand chemistry";
    result.timing.total_seconds = seconds_since(t_start);
    return result;
  }

  // candidate ligand pairs: identical element multisets first, every cross
  // pair when nothing matches exactly (MCS then does the work)
  std::vector<CandidateTask> candidates;
  int index = 0;
  for (int i = 0; i < static_cast<int>(ea->ligands.size()); ++i)
    for (int j = 0; j < static_cast<int>(eb->ligands.size()); ++j)
      if (ea->ligands[i].element_multiset() == eb->ligands[j].element_multiset())
        candidates.push_back({index++, i, j});
  if (candidates.empty()) {
    for (int i = 0; i < static_cast<int>(ea->ligands.size()); ++i)
      for (int j = 0; j < static_cast<int>(eb->ligands.size()); ++j)
        candidates.push_back({index++, i, j});
  }

  auto eval = [&](const CandidateTask& t) {
    return evaluate_candidate(*ea, *eb, t, params);
  };

  std::vector<CandidateOutcome> outcomes;
  if (inner.workers <= 1) {
    outcomes.reserve(candidates.size());
    for (const CandidateTask& t : candidates) outcomes.push_back(eval(t));
  } else {
    auto farmed = run_farm<CandidateTask, CandidateOutcome>(candidates, inner, eval);
    for (std::size_t i = 0; i < farmed.results.size(); ++i) {
      if (!farmed.results[i].ok())
        throw std::runtime_error("candidate " + std::to_string(i) + ": " +
                                 farmed.results[i].error);
      outcomes.push_back(std::move(*farmed.results[i].value));
    }
  }

  result.candidates_evaluated = static_cast<int>(outcomes.size());
  const CandidateOutcome* best = nullptr;
  for (const CandidateOutcome& c : outcomes) {
    result.timing.find_iso_calls += c.iso_calls;
    result.timing.find_iso_seconds += c.iso_seconds;
    result.timing.find_mcs_calls += c.mcs_calls;
    result.timing.find_mcs_seconds += c.mcs_seconds;
    if (!best || candidate_better(c, *best)) best = &c;
  }

  result.best_ligand_pair = {best->key_a, best->key_b};
  result.match_kind = best->kind;
  result.tanimoto = best->tanimoto;
  result.ligand_rmsd = best->ligand_rmsd;
  result.site = best->site;
  if (!best->site_note.empty()) result.error = best->site_note;

  bool similar = best->site.accepted &&
                 std::isfinite(best->ligand_rmsd) &&
                 best->ligand_rmsd <= params.ligand_rmsd_cutoff;
  result.status = similar ? PairStatus::Similar : PairStatus::NotSimilar;

  // under level-2 fan-out the per-function times are CPU sums across
  // workers, so total is floored at their sum to keep the shares additive
  double wall = seconds_since(t_start);
  result.timing.total_seconds =
      std::max(wall, result.timing.find_iso_seconds + result.timing.find_mcs_seconds);
  return result;
}

CorpusResult run_corpus(const std::vector<std::string>& ids,
                        const PipelineParams& params, const FarmConfig& cfg) {
  if (ids.size() < 2) throw std::runtime_error("need at least 2 ids");
  std::vector<PairTask> tasks = unique_pairs(ids);

  StructureStore store(params);
  // structures are loaded up front so workers share one immutable view
  for (const PairTask& t : tasks) {
    try {
      store.get(t.id_a);
      store.get(t.id_b);
    } catch (const std::exception&) {
      // per-pair handling below reports the error in its result slot
    }
  }

  auto farm = run_level<PairTask, PairResult>(
      tasks, cfg, [&](const PairTask& t, const FarmConfig& inner) {
        return run_pair(t, store, inner);
      });

  CorpusResult out;
  out.manifest.ids = tasks.empty() ? ids : [&] {
    std::vector<std::string> norm;
    for (const auto& id : ids) norm.push_back(normalize_pdb_id(id));
    std::sort(norm.begin(), norm.end());
    norm.erase(std::unique(norm.begin(), norm.end()), norm.end());
    return norm;
  }();
  out.manifest.workers = cfg.workers;
  out.manifest.hardware_threads = std::thread::hardware_concurrency();
  out.manifest.strategy = strategy_name(cfg.strategy);
  out.manifest.level = cfg.level;
  out.manifest.params = params;
  out.manifest.wall_seconds = farm.wall_seconds;

  for (std::size_t i = 0; i < farm.results.size(); ++i) {
    if (farm.results[i].ok()) {
      out.results.push_back(std::move(*farm.results[i].value));
    } else {
      PairResult r;
      r.id_a = tasks[i].id_a;
      r.id_b = tasks[i].id_b;
      r.status = PairStatus::Error;
      r.error = farm.results[i].error;
      out.results.push_back(std::move(r));
    }
    if (out.results.back().status == PairStatus::Error) out.any_error = true;
  }
  return out;
}

std::string to_jsonl(const CorpusResult& run) {
  std::ostringstream os;
  const RunManifest& m = run.manifest;
  json manifest{{"record", "manifest"},
                {"ids", m.ids},
                {"workers", m.workers},
                {"hardware_threads", m.hardware_threads},
                {"strategy", m.strategy},
                {"level", m.level},
                {"wall_seconds", m.wall_seconds},
                {"params",
                 {{"site_cutoff", m.params.site.site_cutoff},
                  {"eps", m.params.site.eps},
                  {"dmax", m.params.site.dmax},
                  {"min_patch", m.params.site.min_patch},
                  {"patch_rmsd_cutoff", m.params.site.patch_rmsd_cutoff},
                  {"angle_cutoff", m.params.site.angle_cutoff},
                  {"exact_residue_names", m.params.site.exact_residue_names},
                  {"ligand_rmsd_cutoff", m.params.ligand_rmsd_cutoff},
                  {"min_heavy_atoms", m.params.ligand_filter.min_heavy_atoms}}}};
  os << manifest.dump() << '\n';

  for (const PairResult& r : run.results) {
    json j{{"record", "pair"},
           {"id_a", r.id_a},
           {"id_b", r.id_b},
           {"status", status_name(r.status)},
           {"match_kind", match_kind_name(r.match_kind)},
           {"tanimoto", r.tanimoto},
           {"candidates_evaluated", r.candidates_evaluated},
           {"timing",
            {{"find_iso_calls", r.timing.find_iso_calls},
             {"find_iso_seconds", r.timing.find_iso_seconds},
             {"find_mcs_calls", r.timing.find_mcs_calls},
             {"find_mcs_seconds", r.timing.find_mcs_seconds},
             {"total_seconds", r.timing.total_seconds}}}};
    if (std::isfinite(r.ligand_rmsd)) j["ligand_rmsd"] = r.ligand_rmsd;
    if (!r.error.empty()) j["error"] = r.error;
    if (r.site)
      j["site"] = {{"correspondence_size", r.site->correspondence_size},
                   {"patch_rmsd", r.site->patch_rmsd},
                   {"surface_vector_angle", r.site->surface_vector_angle},
                   {"accepted", r.site->accepted}};
    if (r.best_ligand_pair)
      j["best_ligand_pair"] = {key_json(r.best_ligand_pair->first),
                               key_json(r.best_ligand_pair->second)};
    os << j.dump() << '\n';
  }
  return os.str();
}

std::string to_csv(const std::vector<PairResult>& results) {
  std::ostringstream os;
  os << "id_a,id_b,status,match_kind,tanimoto,ligand_rmsd,"
        "find_iso_calls,find_mcs_calls,total_seconds\n";
  for (const PairResult& r : results) {
    os << r.id_a << ',' << r.id_b << ',' << status_name(r.status) << ','
       << match_kind_name(r.match_kind) << ',' << r.tanimoto << ',';
    if (std::isfinite(r.ligand_rmsd)) os << r.ligand_rmsd;
    os << ',' << r.timing.find_iso_calls << ',' << r.timing.find_mcs_calls << ','
       << r.timing.total_seconds << '\n';
  }
  return os.str();
}

std::vector<PairResult> read_results_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  std::vector<PairResult> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    if (j.value("record", "") != "pair") continue;

    PairResult r;
    r.id_a = j.at("id_a").get<std::string>();
    r.id_b = j.at("id_b").get<std::string>();
    std::string st = j.at("status").get<std::string>();
    r.status = st == "similar"               ? PairStatus::Similar
               : st == "not_similar"         ? PairStatus::NotSimilar
               : st == "no_shared_chemistry" ? PairStatus::NoSharedChemistry
                                             : PairStatus::Error;
    std::string mk = j.at("match_kind").get<std::string>();
    r.match_kind = mk == "isomorphic"      ? MatchKind::Isomorphic
                   : mk == "common_subgraph" ? MatchKind::CommonSubgraph
                                             : MatchKind::NoOverlap;
    r.tanimoto = j.value("tanimoto", 0.0);
    r.ligand_rmsd = j.contains("ligand_rmsd")
                        ? j["ligand_rmsd"].get<double>()
                        : std::numeric_limits<double>::infinity();
    r.candidates_evaluated = j.value("candidates_evaluated", 0);
    r.error = j.value("error", "");
    if (j.contains("timing")) {
      const json& t = j["timing"];
      r.timing.find_iso_calls = t.value("find_iso_calls", 0);
      r.timing.find_iso_seconds = t.value("find_iso_seconds", 0.0);
      r.timing.find_mcs_calls = t.value("find_mcs_calls", 0);
      r.timing.find_mcs_seconds = t.value("find_mcs_seconds", 0.0);
      r.timing.total_seconds = t.value("total_seconds", 0.0);
    }
    if (j.contains("site")) {
      SiteSummary s;
      s.correspondence_size = j["site"].value("correspondence_size", 0);
      s.patch_rmsd = j["site"].value("patch_rmsd", 0.0);
      s.surface_vector_angle = j["site"].value("surface_vector_angle", 0.0);
      s.accepted = j["site"].value("accepted", false);
      r.site = s;
    }
    if (j.contains("best_ligand_pair")) {
      r.best_ligand_pair = {key_from_json(j["best_ligand_pair"][0]),
                            key_from_json(j["best_ligand_pair"][1])};
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace bss

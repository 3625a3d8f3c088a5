#pragma once

#include <filesystem>
#include <string>

namespace bss {

struct FetchOptions {
  std::string base_url = "https://files.rcsb.org/download";
  bool offline = false;
};

// Returns {cache_dir}/{id}.pdb, downloading it first on a cache miss.
// Cache hits never touch the network. Downloads are written to a temp file
// and renamed into place; concurrent fetches of one id share a download.
// Errors: "unknown pdb id: <id>" on HTTP 404, "fetch failed: <id>" on any
// other failure (including offline mode with an empty cache).
std::filesystem::path fetch_structure(const std::string& pdb_id,
                                      const std::filesystem::path& cache_dir,
                                      const FetchOptions& opts = {});

}  // namespace bss

#include "bss/fetch.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "bss/pdb.hpp"
#include "httplib.h"

namespace fs = std::filesystem;

namespace bss {

namespace {

// one mutex per id so concurrent fetches of the same entry download once
std::mutex& id_mutex(const std::string& id) {
  static std::mutex registry_mutex;
  static std::map<std::string, std::unique_ptr<std::mutex>> registry;
  std::lock_guard lock(registry_mutex);
  auto& slot = registry[id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

// "http://host:port/path" -> {"http://host:port", "/path"}
std::pair<std::string, std::string> split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  std::size_t host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
  auto path_start = url.find('/', host_start);
  if (path_start == std::string::npos) return {url, ""};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

fs::path fetch_structure(const std::string& pdb_id, const fs::path& cache_dir,
                         const FetchOptions& opts) {
  std::string id = normalize_pdb_id(pdb_id);
  fs::path target = cache_dir / (id + ".pdb");

  std::lock_guard lock(id_mutex(id));
  if (fs::exists(target)) return target;

  if (opts.offline) throw std::runtime_error("fetch failed: " + id);

  std::string upper = id;
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  auto [host, prefix] = split_url(opts.base_url);

  httplib::Client client(host);
  client.set_follow_location(true);
  client.set_connection_timeout(15);
  client.set_read_timeout(60);

  auto res = client.Get(prefix + "/" + upper + ".pdb");
  if (res && res->status == 404)
    throw std::runtime_error("unknown pdb id: " + id);
  if (!res || res->status != 200)
    throw std::runtime_error("fetch failed: " + id);

  fs::create_directories(cache_dir);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << res->body;
    if (!out) throw std::runtime_error("fetch failed: " + id);
  }
  fs::rename(tmp, target);
  return target;
}

}  // namespace bss

#include "bss/pdb.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bss/elements.hpp"

namespace bss {

namespace {

std::string strip(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// 1-based inclusive column slice, padded with spaces past the line end.
std::string_view cols(const std::string& line, std::size_t from, std::size_t to) {
  if (line.size() < from) return {};
  std::size_t n = std::min(to, line.size()) - (from - 1);
  return std::string_view(line).substr(from - 1, n);
}

[[noreturn]] void malformed(std::size_t line_no) {
  throw std::runtime_error("malformed record at line " + std::to_string(line_no));
}

double parse_coord(std::string_view field, std::size_t line_no) {
  std::string t = strip(field);
  if (t.empty()) malformed(line_no);
  double v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size() || !std::isfinite(v))
    malformed(line_no);
  return v;
}

int parse_int(std::string_view field, std::size_t line_no) {
  std::string t = strip(field);
  if (t.empty()) return 0;
  int v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || p != t.data() + t.size()) malformed(line_no);
  return v;
}

// Element from cols 77-78, else from the atom-name field. A two-letter
// guess is only trusted when column 13 is occupied (PDB left-justifies
// two-letter element symbols into it).
std::string deduce_element(const std::string& line, std::size_t line_no) {
  std::string sym = normalize_element(cols(line, 77, 78));
  if (!sym.empty()) {
    if (!is_known_element(sym)) throw std::runtime_error("unknown element: " + sym);
    return sym;
  }
  std::string_view name_field = cols(line, 13, 16);
  std::string alpha;
  for (char c : name_field) {
    if (std::isalpha(static_cast<unsigned char>(c))) alpha.push_back(c);
    else if (!alpha.empty()) break;
  }
  if (alpha.empty()) malformed(line_no);
  if (name_field.size() >= 2 && std::isalpha(static_cast<unsigned char>(name_field[0]))) {
    std::string two = normalize_element(alpha.substr(0, 2));
    if (is_known_element(two)) return two;
  }
  std::string one = normalize_element(alpha.substr(0, 1));
  if (!is_known_element(one)) throw std::runtime_error("unknown element: " + alpha);
  return one;
}

}  // namespace

std::string normalize_pdb_id(std::string_view id) {
  std::string out;
  for (char c : id) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  bool ok = out.size() == 4 && std::isdigit(static_cast<unsigned char>(out[0]));
  for (std::size_t i = 1; ok && i < 4; ++i)
    ok = std::isalnum(static_cast<unsigned char>(out[i]));
  if (!ok) throw std::runtime_error("invalid pdb id: " + std::string(id));
  return out;
}

Structure parse_pdb(const std::string& text, std::string pdb_id) {
  Structure s;
  s.pdb_id = std::move(pdb_id);

  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  int model_seen = 0;
  bool past_first_model = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string rec = strip(cols(line, 1, 6));

    if (rec == "MODEL") {
      ++model_seen;
      if (model_seen > 1) past_first_model = true;
      continue;
    }
    if (rec == "ENDMDL") continue;
    if (past_first_model) continue;

    if (rec == "ATOM" || rec == "HETATM") {
      if (line.size() < 54) malformed(line_no);
      Atom a;
      a.is_hetatm = (rec == "HETATM");
      a.serial = parse_int(cols(line, 7, 11), line_no);
      a.name = strip(cols(line, 13, 16));
      a.residue_name = strip(cols(line, 18, 20));
      a.chain = line[21];
      a.residue_seq = parse_int(cols(line, 23, 26), line_no);
      a.position = Vec3(parse_coord(cols(line, 31, 38), line_no),
                        parse_coord(cols(line, 39, 46), line_no),
                        parse_coord(cols(line, 47, 54), line_no));
      a.element = deduce_element(line, line_no);
      s.atoms.push_back(std::move(a));
    } else if (rec == "CONECT") {
      int from = parse_int(cols(line, 7, 11), line_no);
      if (from == 0) continue;
      for (std::size_t start = 12; start + 4 < line.size() + 1; start += 5) {
        int to = parse_int(cols(line, start, start + 4), line_no);
        if (to == 0) continue;
        s.conect.emplace_back(std::min(from, to), std::max(from, to));
      }
    }
  }

  // conect must reference parsed serials
  std::set<int> serials;
  for (const Atom& a : s.atoms) serials.insert(a.serial);
  std::erase_if(s.conect, [&](const auto& p) {
    return !serials.count(p.first) || !serials.count(p.second);
  });

  return s;
}

std::string write_pdb(const Structure& s) {
  std::string out;
  char buf[96];
  for (const Atom& a : s.atoms) {
    // atom-name alignment: 1-char element symbols start in column 14
    std::string name = a.name;
    if (name.size() < 4 && a.element.size() == 1) name = " " + name;
    std::string el = a.element;
    for (char& c : el) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    std::snprintf(buf, sizeof buf, "%-6s%5d %-4s %-3s %c%4d    %8.3f%8.3f%8.3f%22s%2s\n",  // cols 22=chain, 23-26=resSeq
                  a.is_hetatm ? "HETATM" : "ATOM", a.serial, name.c_str(),
                  a.residue_name.c_str(), a.chain, a.residue_seq, a.position.x(),
                  a.position.y(), a.position.z(), "", el.c_str());
    out += buf;
  }
  for (const auto& [x, y] : s.conect) {
    std::snprintf(buf, sizeof buf, "CONECT%5d%5d\n", x, y);
    out += buf;
  }
  out += "END\n";
  return out;
}

bool operator==(const Atom& a, const Atom& b) {
  return a.serial == b.serial && a.name == b.name && a.element == b.element &&
         a.residue_name == b.residue_name && a.chain == b.chain &&
         a.residue_seq == b.residue_seq && a.is_hetatm == b.is_hetatm &&
         a.position == b.position;
}

bool operator==(const Structure& a, const Structure& b) {
  return a.pdb_id == b.pdb_id && a.atoms == b.atoms && a.conect == b.conect;
}

}  // namespace bss

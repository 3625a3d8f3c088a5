#pragma once

#include <Eigen/Core>
#include <string>
#include <utility>
#include <vector>

namespace bss {

using Vec3 = Eigen::Vector3d;

struct Atom {
  int serial = 0;
  std::string name;          // 4-char PDB atom name, stripped
  std::string element;       // normalized symbol, validated against the radius table
  std::string residue_name;  // 3-char, stripped
  char chain = ' ';
  int residue_seq = 0;
  Vec3 position = Vec3::Zero();
  bool is_hetatm = false;
};

struct Structure {
  std::string pdb_id;  // 4-char lowercase, may be empty for ad-hoc files
  std::vector<Atom> atoms;
  std::vector<std::pair<int, int>> conect;  // serial pairs
};

// "1IEI" -> "1iei"; throws on ids not matching [0-9][a-z0-9]{3}.
std::string normalize_pdb_id(std::string_view id);

// Parses ATOM/HETATM/CONECT/MODEL/ENDMDL records; everything else is skipped.
// Only the first MODEL of a multi-model file is retained. Element comes from
// columns 77-78 with a fallback to the leading alphabetic characters of the
// atom name. Throws std::runtime_error("malformed record at line N") on short
// or non-numeric ATOM/HETATM records.
Structure parse_pdb(const std::string& text, std::string pdb_id = "");

// Fixed-column re-serialization; parse_pdb(write_pdb(s)) == s.
std::string write_pdb(const Structure& s);

bool operator==(const Atom& a, const Atom& b);
bool operator==(const Structure& a, const Structure& b);

}  // namespace bss

#ifndef TANGO_INVENTORY_HPP
#define TANGO_INVENTORY_HPP

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_set>

#include "tango/molgraph.hpp"

namespace tango {

/// Set of purchasable building blocks, keyed by canonical SMILES.
class Inventory {
 public:
  Inventory() = default;

  // Newline-delimited SMILES, plain or gzip-compressed. Anything after the
  // first whitespace on a line is ignored. Lines that fail to parse are
  // skipped and counted. Throws std::runtime_error if the file cannot be read.
  static Inventory load(const std::filesystem::path& path);

  void insert(const Molecule& mol) { members_.insert(mol.canonical_key()); }
  // Returns false when the SMILES does not parse.
  bool insert_smiles(std::string_view smiles);
  void reserve(std::size_t n) { members_.reserve(n); }

  bool contains(const Molecule& mol) const { return contains(mol.canonical_key()); }
  // `canonical` must already be canonical SMILES.
  bool contains(std::string_view canonical) const { return members_.find(canonical) != members_.end(); }

  std::size_t size() const { return members_.size(); }
  std::size_t skipped_lines() const { return skipped_; }
  const std::filesystem::path& source() const { return source_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };

  std::unordered_set<std::string, Hash, std::equal_to<>> members_;
  std::size_t skipped_ = 0;
  std::filesystem::path source_;
};

}  // namespace tango

#endif  // TANGO_INVENTORY_HPP

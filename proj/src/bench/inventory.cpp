#include "tango/inventory.hpp"

#include <memory>
#include <stdexcept>
#include <string>

#include <zlib.h>

namespace tango {

bool Inventory::insert_smiles(std::string_view smiles) {
  try {
    members_.insert(parse_smiles(smiles).canonical_key());
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

Inventory Inventory::load(const std::filesystem::path& path) {
  // gzread passes uncompressed files through unchanged.
  std::unique_ptr<gzFile_s, int (*)(gzFile)> file(gzopen(path.c_str(), "rb"), gzclose);
  if (!file) throw std::runtime_error("cannot open inventory " + path.string());
  gzbuffer(file.get(), 1 << 17);

  Inventory inv;
  inv.source_ = path;
  std::string line;
  char buf[8192];
  auto take_line = [&] {
    const auto end = line.find_first_of(" \t\r\n");
    std::string_view smiles = std::string_view(line).substr(0, end);
    if (!smiles.empty() && !inv.insert_smiles(smiles)) ++inv.skipped_;
    line.clear();
  };
  while (gzgets(file.get(), buf, sizeof(buf)) != nullptr) {
    line += buf;
    if (!line.empty() && line.back() == '\n') take_line();
  }
  int err = Z_OK;
  gzerror(file.get(), &err);
  if (err != Z_OK && err != Z_STREAM_END) {
    throw std::runtime_error("error reading inventory " + path.string());
  }
  if (!line.empty()) take_line();
  return inv;
}

}  // namespace tango

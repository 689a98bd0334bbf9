#pragma once

#include <flatendo/io.hpp>

#include <string>

namespace flatendo::testing {

inline std::string corpus_path(const std::string& name) { return std::string(FLATENDO_CORPUS_DIR) + "/" + name; }

inline CrystGroup corpus_group(const std::string& name) {
  return io::build_group(io::read_group_spec(corpus_path(name)));
}

inline AffineMap corpus_map(const std::string& name) { return io::read_affine_map(corpus_path(name)); }

}  // namespace flatendo::testing

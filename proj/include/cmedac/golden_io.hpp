#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>

#include "cmedac/cm_model.hpp"

namespace cmedac {

struct GoldenFileError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Versioned text format:
//   cmedac-golden v1
//   geometry <rows> <cols>
//   tasks <N>
//   frames_per_task <n>
//   hash <z> <128 hex chars>
//   hp <z> <hex row-major bits>
//   vp <k> <hex row-major bits>
void write_golden(std::ostream& out, const GoldenStore& store);
void write_golden_file(const std::filesystem::path& path, const GoldenStore& store);

GoldenStore read_golden(std::istream& in);
GoldenStore read_golden_file(const std::filesystem::path& path);

}  // namespace cmedac

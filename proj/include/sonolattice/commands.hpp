#pragma once

#include <filesystem>
#include <iosfwd>

#include "sonolattice/runconfig.hpp"

namespace sono {

/// CLI entry points. Each returns the process exit code: 0 success (for
/// verify: all predictions confirmed), 1 invalid input, 2 verification
/// failure. Output files land in out_dir.
int cmd_coeffs(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_design(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out,
               std::ostream& err);
int cmd_predict(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out,
                std::ostream& err);
int cmd_sample(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out,
               std::ostream& err);
int cmd_verify(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out,
               std::ostream& err);
int cmd_relax(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out,
              std::ostream& err);

}  // namespace sono

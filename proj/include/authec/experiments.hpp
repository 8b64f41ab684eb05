// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "authec/config.hpp"

namespace authec {

struct SubcommandInfo {
    std::string name;
    std::string summary;
};

const std::vector<SubcommandInfo>& subcommands();

/// Runs one subcommand, writing its CSV outputs and "<name>.manifest" into
/// out_dir (created if needed). Returns the paths written, manifest last.
/// Diagnostics that are not part of the result (dropped samples, timings)
/// go to stderr so the files stay byte-reproducible.
std::vector<std::string> run_subcommand(const std::string& name, ExperimentConfig cfg, const std::string& out_dir);

}  // namespace authec

// Copyright 2026 The qsc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSC_DRIVER_HPP
#define QSC_DRIVER_HPP

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qsc/diagnostics.hpp"

namespace qsc {

enum class EmitMode { Tokens, Ast, Qasm };

struct DriverConfig {
    std::filesystem::path input;
    EmitMode emit = EmitMode::Qasm;
    std::optional<std::filesystem::path> output;  // stdout when absent
    bool timings = false;
    bool no_prelude = false;
    bool compat_qelib = false;
};

/// Wall-clock milliseconds per stage.
struct StageTimings {
    double lexing = 0;
    double parsing = 0;
    double compilation = 0;
    double total = 0;
};

struct PipelineResult {
    std::string artifact;
    std::vector<Diagnostic> diagnostics;  // sorted by position
    StageTimings timings;
};

/// Runs the stages needed for `config.emit` over in-memory source. The
/// artifact is empty when an earlier stage reported errors.
PipelineResult run_pipeline(std::string_view source, const DriverConfig &config);

std::string format_timings(const StageTimings &t);

/// Reads the input, runs the pipeline, writes the artifact and rendered
/// diagnostics. Returns 0 on success, 1 if any error diagnostic was reported,
/// 2 on I/O failure.
int run(const DriverConfig &config, std::ostream &out, std::ostream &err);

}  // namespace qsc

#endif

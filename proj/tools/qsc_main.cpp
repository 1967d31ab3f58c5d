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

#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "qsc/driver.hpp"

int main(int argc, char **argv) {
    CLI::App app{"Q# to OpenQASM 3.0 compiler"};
    qsc::DriverConfig config;
    std::string output;
    std::string compat;

    const std::map<std::string, qsc::EmitMode> modes = {
        {"tokens", qsc::EmitMode::Tokens}, {"ast", qsc::EmitMode::Ast}, {"qasm", qsc::EmitMode::Qasm}};
    app.add_option("input", config.input, "Q# source file")->required();
    app.add_option("--emit", config.emit, "Artifact to emit: tokens, ast or qasm")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case))
        ->default_str("qasm");
    app.add_option("-o,--output", output, "Write the artifact to a file instead of stdout");
    app.add_flag("--timings", config.timings, "Print per-stage wall-clock times to stderr");
    app.add_flag("--no-prelude", config.no_prelude, "Omit the OPENQASM header and classical register");
    app.add_option("--compat", compat, "Emit gate definitions for a legacy gate library")
        ->check(CLI::IsMember({"qelib"}));

    CLI11_PARSE(app, argc, argv);
    if (!output.empty()) {
        config.output = output;
    }
    config.compat_qelib = compat == "qelib";
    return qsc::run(config, std::cout, std::cerr);
}

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

#include "qsc/driver.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qsc/ast_json.hpp"
#include "qsc/codegen.hpp"
#include "qsc/lexer.hpp"
#include "qsc/parser.hpp"

namespace qsc {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

}  // namespace

PipelineResult run_pipeline(std::string_view source, const DriverConfig &config) {
    PipelineResult result;
    auto start = Clock::now();

    auto t = Clock::now();
    LexResult lexed = tokenize(source);
    result.timings.lexing = elapsed_ms(t);
    result.diagnostics = std::move(lexed.diagnostics);

    if (config.emit == EmitMode::Tokens) {
        result.artifact = dump_tokens(lexed.tokens);
    } else if (!has_errors(result.diagnostics)) {
        t = Clock::now();
        ParseResult parsed = parse_program(lexed.tokens);
        result.timings.parsing = elapsed_ms(t);
        for (auto &d : parsed.diagnostics) {
            result.diagnostics.push_back(std::move(d));
        }
        if (!has_errors(result.diagnostics)) {
            if (config.emit == EmitMode::Ast) {
                result.artifact = serialize_ast(parsed.program) + "\n";
            } else {
                t = Clock::now();
                CodegenResult compiled =
                    compile(parsed.program, CodegenOptions{!config.no_prelude, config.compat_qelib});
                result.timings.compilation = elapsed_ms(t);
                for (auto &d : compiled.diagnostics) {
                    result.diagnostics.push_back(std::move(d));
                }
                if (!has_errors(result.diagnostics)) {
                    result.artifact = std::move(compiled.qasm);
                }
            }
        }
    }
    sort_by_position(result.diagnostics);
    result.timings.total = elapsed_ms(start);
    return result;
}

std::string format_timings(const StageTimings &t) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "lexing: %.2f ms\nparsing: %.2f ms\ncompilation: %.2f ms\ntotal: %.2f ms\n",
                  t.lexing, t.parsing, t.compilation, t.total);
    return buf;
}

int run(const DriverConfig &config, std::ostream &out, std::ostream &err) {
    auto start = Clock::now();
    std::ifstream in(config.input, std::ios::binary);
    if (!in) {
        err << "error: cannot read " << config.input.string() << "\n";
        return 2;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::string source = buffer.str();

    PipelineResult result = run_pipeline(source, config);
    err << render_all(result.diagnostics, source);

    if (config.output) {
        std::ofstream file(*config.output, std::ios::binary);
        if (!file || !(file << result.artifact)) {
            err << "error: cannot write " << config.output->string() << "\n";
            return 2;
        }
    } else {
        out << result.artifact;
    }
    if (config.timings) {
        result.timings.total = elapsed_ms(start);
        err << format_timings(result.timings);
    }
    return has_errors(result.diagnostics) ? 1 : 0;
}

}  // namespace qsc

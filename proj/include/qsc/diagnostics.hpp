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

#ifndef QSC_DIAGNOSTICS_HPP
#define QSC_DIAGNOSTICS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qsc {

/// Half-open byte range into the source plus the 1-based line/column of its start.
struct SourceSpan {
    std::size_t start_offset = 0;
    std::size_t end_offset = 0;
    std::size_t line = 1;
    std::size_t column = 1;

    std::size_t length() const {
        return end_offset - start_offset;
    }
    bool operator==(const SourceSpan &) const = default;
};

enum class Severity { Error, Warning };

enum class DiagnosticKind {
    LexError,
    UnexpectedToken,
    UnbalancedDelimiter,
    UnbalancedScope,
    MissingApply,
    EmptyExpression,
    BadArgument,
    UnsupportedConstruct,
    IndeterminateType,
};

struct Diagnostic {
    Severity severity = Severity::Error;
    DiagnosticKind kind = DiagnosticKind::UnexpectedToken;
    std::string message;
    SourceSpan span;

    bool operator==(const Diagnostic &) const = default;
};

std::string_view to_string(Severity severity);
std::string_view to_string(DiagnosticKind kind);

Diagnostic make_error(DiagnosticKind kind, std::string message, SourceSpan span);
Diagnostic make_warning(DiagnosticKind kind, std::string message, SourceSpan span);

/// `severity[kind] line:col: message`, then the offending source line and a caret
/// underline. No trailing newline.
std::string render(const Diagnostic &d, std::string_view source);

/// Renders every diagnostic ordered by span start, one block per diagnostic,
/// each terminated by a newline.
std::string render_all(std::span<const Diagnostic> diagnostics, std::string_view source);

/// Stable sort by span start offset.
void sort_by_position(std::vector<Diagnostic> &diagnostics);

bool has_errors(std::span<const Diagnostic> diagnostics);

}  // namespace qsc

#endif

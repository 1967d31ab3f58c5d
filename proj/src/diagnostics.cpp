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

#include "qsc/diagnostics.hpp"

#include <algorithm>

namespace qsc {

std::string_view to_string(Severity severity) {
    return severity == Severity::Error ? "error" : "warning";
}

std::string_view to_string(DiagnosticKind kind) {
    switch (kind) {
        case DiagnosticKind::LexError:
            return "LexError";
        case DiagnosticKind::UnexpectedToken:
            return "UnexpectedToken";
        case DiagnosticKind::UnbalancedDelimiter:
            return "UnbalancedDelimiter";
        case DiagnosticKind::UnbalancedScope:
            return "UnbalancedScope";
        case DiagnosticKind::MissingApply:
            return "MissingApply";
        case DiagnosticKind::EmptyExpression:
            return "EmptyExpression";
        case DiagnosticKind::BadArgument:
            return "BadArgument";
        case DiagnosticKind::UnsupportedConstruct:
            return "UnsupportedConstruct";
        case DiagnosticKind::IndeterminateType:
            return "IndeterminateType";
    }
    return "Unknown";
}

Diagnostic make_error(DiagnosticKind kind, std::string message, SourceSpan span) {
    return Diagnostic{Severity::Error, kind, std::move(message), span};
}

Diagnostic make_warning(DiagnosticKind kind, std::string message, SourceSpan span) {
    return Diagnostic{Severity::Warning, kind, std::move(message), span};
}

namespace {

std::string_view line_text(std::string_view source, std::size_t line) {
    std::size_t begin = 0;
    for (std::size_t current = 1; current < line; ++current) {
        auto nl = source.find('\n', begin);
        if (nl == std::string_view::npos) {
            return {};
        }
        begin = nl + 1;
    }
    auto end = source.find('\n', begin);
    if (end == std::string_view::npos) {
        end = source.size();
    }
    auto text = source.substr(begin, end - begin);
    if (!text.empty() && text.back() == '\r') {
        text.remove_suffix(1);
    }
    return text;
}

}  // namespace

std::string render(const Diagnostic &d, std::string_view source) {
    std::string out;
    out += to_string(d.severity);
    out += '[';
    out += to_string(d.kind);
    out += "] ";
    out += std::to_string(d.span.line);
    out += ':';
    out += std::to_string(d.span.column);
    out += ": ";
    out += d.message;

    auto text = line_text(source, d.span.line);
    out += '\n';
    out += text;
    out += '\n';
    // Keep tabs so the caret lines up with the echoed source line.
    std::size_t col = d.span.column == 0 ? 0 : d.span.column - 1;
    for (std::size_t i = 0; i < col; ++i) {
        out += (i < text.size() && text[i] == '\t') ? '\t' : ' ';
    }
    std::size_t available = col < text.size() ? text.size() - col : 0;
    std::size_t width = std::max<std::size_t>(1, std::min(d.span.length(), available));
    out.append(width, '^');
    return out;
}

void sort_by_position(std::vector<Diagnostic> &diagnostics) {
    std::stable_sort(diagnostics.begin(), diagnostics.end(), [](const Diagnostic &a, const Diagnostic &b) {
        return a.span.start_offset < b.span.start_offset;
    });
}

std::string render_all(std::span<const Diagnostic> diagnostics, std::string_view source) {
    std::vector<Diagnostic> sorted(diagnostics.begin(), diagnostics.end());
    sort_by_position(sorted);
    std::string out;
    for (const auto &d : sorted) {
        out += render(d, source);
        out += '\n';
    }
    return out;
}

bool has_errors(std::span<const Diagnostic> diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic &d) {
        return d.severity == Severity::Error;
    });
}

}  // namespace qsc

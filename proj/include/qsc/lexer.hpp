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

#ifndef QSC_LEXER_HPP
#define QSC_LEXER_HPP

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsc/diagnostics.hpp"
#include "qsc/token.hpp"

namespace qsc {

struct LexResult {
    std::vector<Token> tokens;  // always terminated by EndOfFile
    std::vector<Diagnostic> diagnostics;
};

/// Splits Q# source into tokens using maximal munch. Whitespace is skipped but
/// recoverable from the spans; comments are kept as tokens. Lexing stops at the
/// first error, and the tokens read so far are returned with EndOfFile appended.
LexResult tokenize(std::string_view source);

/// Keyword, Bool/Pauli/Result literal, or Identifier for an identifier-shaped run.
TokenKind classify_word(std::string_view lexeme);

/// Kinds that may occur inside an Expression.
bool is_expression_token(TokenKind kind);

/// Kinds that may occur inside a Parameter.
bool is_parameter_token(TokenKind kind);

/// `KIND<TAB>lexeme<TAB>line:col`, one token per line. EndOfFile is not listed.
std::string dump_tokens(std::span<const Token> tokens);

}  // namespace qsc

#endif

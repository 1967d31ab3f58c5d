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

#ifndef QSC_PARSER_HPP
#define QSC_PARSER_HPP

#include <bitset>
#include <initializer_list>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qsc/ast.hpp"
#include "qsc/diagnostics.hpp"
#include "qsc/token.hpp"

namespace qsc {

class TokenSet {
  public:
    TokenSet() = default;
    TokenSet(std::initializer_list<TokenKind> kinds) {
        for (auto k : kinds) {
            bits_.set(static_cast<std::size_t>(k));
        }
    }
    bool contains(TokenKind k) const {
        return bits_.test(static_cast<std::size_t>(k));
    }

  private:
    std::bitset<kTokenKindCount> bits_;
};

enum class ScopeKind { Top, Function, Operation, Block };

enum class SymbolKind { Variable, Mutable, Qubit, Parameter, LoopVariable, Callable };

struct Symbol {
    SymbolKind kind = SymbolKind::Variable;
    std::string type;  // declared Q# type, when written
};

/// Recursive-descent parser over one brace-delimited token range. Every braced
/// scope gets its own child Parser whose range is exactly the tokens between the
/// braces; name lookup walks the parent chain.
///
/// Parse errors are collected into the shared diagnostics vector; after an error
/// the parser resumes at the next statement boundary (`;` or a closing brace).
class Parser {
  public:
    Parser(std::span<const Token> tokens, std::vector<Diagnostic> &diagnostics, ScopeKind scope = ScopeKind::Top,
           const Parser *parent = nullptr);

    /// Parses statements until the range is exhausted.
    NodeList parse_all();

    /// Parses one statement (possibly yielding zero or several nodes).
    NodeList parse_node();

    Expression parse_expression(const TokenSet &terminators);
    ParamGroups parse_parameters();
    NodeList parse_scope(ScopeKind kind, const std::vector<std::pair<std::string, Symbol>> &seed = {});

    AstNode parse_callable();
    AstNode parse_conjugation();
    AstNode parse_loop();
    AstNode parse_allocation();
    AstNode parse_gate_application();
    AstNode parse_binding();

    std::size_t cursor() const {
        return pos_;
    }
    bool at_end() const;
    ScopeKind scope_kind() const {
        return scope_;
    }

    void declare(const std::string &name, Symbol symbol);
    const Symbol *lookup(const std::string &name) const;
    const std::unordered_map<std::string, Symbol> &symbols() const {
        return symbols_;
    }

  private:
    struct Error {
        Diagnostic diagnostic;
    };

    const Token &peek(std::size_t ahead = 0) const;
    const Token &advance();
    bool check(TokenKind kind) const;
    const Token &expect(TokenKind kind, std::string_view what);
    [[noreturn]] void fail(DiagnosticKind kind, std::string message, const SourceSpan &span) const;
    [[noreturn]] void unexpected(std::string_view expected) const;

    NodeList dispatch();
    void recover();
    void parse_attribute();
    AstNode parse_struct();
    AstNode parse_import();
    NodeList parse_namespace();
    std::string parse_qualified_name();
    std::string collect_type(const TokenSet &stops);

    Expression parse_expression_impl(const TokenSet &terminators, bool nested);
    Parameter parse_atom(bool nested);
    Parameter parse_identifier_atom(bool nested);
    Parameter parse_number() const;
    std::size_t find_matching_brace(std::size_t open) const;

    AstNode finish(NodeVariant node, std::size_t start) const;

    std::span<const Token> tokens_;
    std::vector<Diagnostic> &diagnostics_;
    ScopeKind scope_;
    const Parser *parent_;
    Token end_token_;
    std::size_t pos_ = 0;
    std::unordered_map<std::string, Symbol> symbols_;
    bool pending_entry_point_ = false;
};

struct ParseResult {
    AstNode program;
    std::vector<Diagnostic> diagnostics;
};

ParseResult parse_program(std::span<const Token> tokens);

}  // namespace qsc

#endif

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

#include "qsc/parser.hpp"

#include <charconv>
#include <functional>
#include <optional>

#include "qsc/lexer.hpp"

namespace qsc {

namespace {

std::string describe(const Token &t) {
    if (t.kind == TokenKind::EndOfFile) {
        return "end of input";
    }
    return std::string(token_kind_name(t.kind)) + " '" + t.lexeme + "'";
}

std::optional<Pauli> pauli_from(std::string_view lexeme) {
    if (lexeme == "PauliI") {
        return Pauli::I;
    }
    if (lexeme == "PauliX") {
        return Pauli::X;
    }
    if (lexeme == "PauliY") {
        return Pauli::Y;
    }
    if (lexeme == "PauliZ") {
        return Pauli::Z;
    }
    return std::nullopt;
}

BigInt parse_integer(std::string_view text) {
    unsigned base = 10;
    if (text.size() > 2 && text[0] == '0') {
        switch (text[1]) {
            case 'x':
            case 'X':
                base = 16;
                break;
            case 'o':
                base = 8;
                break;
            case 'b':
                base = 2;
                break;
            default:
                break;
        }
        if (base != 10) {
            text.remove_prefix(2);
        }
    }
    BigInt value = 0;
    for (char c : text) {
        unsigned digit;
        if (c >= '0' && c <= '9') {
            digit = static_cast<unsigned>(c - '0');
        } else if (c >= 'a' && c <= 'f') {
            digit = static_cast<unsigned>(c - 'a' + 10);
        } else if (c >= 'A' && c <= 'F') {
            digit = static_cast<unsigned>(c - 'A' + 10);
        } else {
            continue;  // '_' separators, 'L' suffix
        }
        value = value * base + digit;
    }
    return value;
}

bool spaced_in_type(TokenKind k) {
    return k == TokenKind::FatArrow || k == TokenKind::Arrow || k == TokenKind::KwIs || k == TokenKind::Plus ||
           k == TokenKind::Star;
}

const TokenSet kAssignOps = {
    TokenKind::Assign,           TokenKind::PlusAssign,      TokenKind::MinusAssign,      TokenKind::StarAssign,
    TokenKind::SlashAssign,      TokenKind::PercentAssign,   TokenKind::CaretAssign,      TokenKind::BitwiseAndAssign,
    TokenKind::BitwiseOrAssign,  TokenKind::BitwiseXorAssign, TokenKind::ShiftLeftAssign, TokenKind::ShiftRightAssign,
    TokenKind::CopyUpdateAssign,
};

// ---------------------------------------------------------------------------
// Intrinsic gate signatures
// ---------------------------------------------------------------------------

struct GateArgs {
    std::vector<Parameter> args;
    const std::vector<std::string> &functors;
    bool adjoint;
};

using GateBuilder = std::function<NodeVariant(GateArgs &)>;

struct GateSignature {
    std::size_t arity;
    std::vector<std::size_t> qubit_positions;
    bool adjointable;
    GateBuilder build;
};

const std::unordered_map<std::string, GateSignature> &gate_table() {
    static const std::unordered_map<std::string, GateSignature> table = [] {
        std::unordered_map<std::string, GateSignature> t;
        auto single = [&](const char *name, SingleQubitOp op) {
            t[name] = {1, {0}, true, [op](GateArgs &a) -> NodeVariant {
                           return SingleQubitGate{op, std::move(a.args[0]), a.adjoint};
                       }};
        };
        single("X", SingleQubitOp::X);
        single("Y", SingleQubitOp::Y);
        single("Z", SingleQubitOp::Z);
        single("H", SingleQubitOp::H);
        single("S", SingleQubitOp::S);
        single("T", SingleQubitOp::T);
        single("I", SingleQubitOp::I);
        auto two = [&](const char *name, TwoQubitOp op) {
            t[name] = {2, {0, 1}, true, [op](GateArgs &a) -> NodeVariant {
                           return TwoQubitGate{op, std::move(a.args[0]), std::move(a.args[1])};
                       }};
        };
        two("CNOT", TwoQubitOp::CNOT);
        two("CZ", TwoQubitOp::CZ);
        two("SWAP", TwoQubitOp::SWAP);
        t["CCNOT"] = {3, {0, 1, 2}, true, [](GateArgs &a) -> NodeVariant {
                          return CcnotGate{std::move(a.args[0]), std::move(a.args[1]), std::move(a.args[2])};
                      }};
        auto rotation = [&](const char *name, RotationOp op) {
            t[name] = {2, {1}, true, [op](GateArgs &a) -> NodeVariant {
                           return RotationGate{op, std::move(a.args[0]), std::move(a.args[1]), a.adjoint};
                       }};
        };
        rotation("Rx", RotationOp::Rx);
        rotation("Ry", RotationOp::Ry);
        rotation("Rz", RotationOp::Rz);
        rotation("R1", RotationOp::R1);
        t["R"] = {3, {2}, true, [](GateArgs &a) -> NodeVariant {
                      return PauliRotationGate{std::move(a.args[0]), std::move(a.args[1]), std::move(a.args[2]),
                                               a.adjoint};
                  }};
        t["RFrac"] = {4, {3}, true, [](GateArgs &a) -> NodeVariant {
                          return RFracGate{std::move(a.args[0]), std::move(a.args[1]), std::move(a.args[2]),
                                           std::move(a.args[3]), a.adjoint};
                      }};
        t["R1Frac"] = {3, {2}, true, [](GateArgs &a) -> NodeVariant {
                           return R1FracGate{std::move(a.args[0]), std::move(a.args[1]), std::move(a.args[2]),
                                             a.adjoint};
                       }};
        auto ising = [&](const char *name, IsingOp op) {
            t[name] = {3, {1, 2}, true, [op](GateArgs &a) -> NodeVariant {
                           return IsingGate{op, std::move(a.args[0]), std::move(a.args[1]), std::move(a.args[2]),
                                            a.adjoint};
                       }};
        };
        ising("Rxx", IsingOp::Rxx);
        ising("Ryy", IsingOp::Ryy);
        ising("Rzz", IsingOp::Rzz);
        t["Measure"] = {2, {}, false, [](GateArgs &a) -> NodeVariant {
                            MeasureGate m;
                            if (auto *bases = std::get_if<ArrayLiteral>(&a.args[0]); bases && !bases->items.empty()) {
                                m.basis = as_parameter(bases->items.front());
                            } else {
                                m.basis = std::move(a.args[0]);
                            }
                            if (auto *qubits = std::get_if<ArrayLiteral>(&a.args[1])) {
                                for (auto &e : qubits->items) {
                                    m.qubits.push_back(as_parameter(std::move(e)));
                                }
                            } else {
                                m.qubits.push_back(std::move(a.args[1]));
                            }
                            return m;
                        }};
        t["M"] = {1, {0}, false, [](GateArgs &a) -> NodeVariant { return MGate{std::move(a.args[0])}; }};
        t["Reset"] = {1, {0}, false, [](GateArgs &a) -> NodeVariant { return ResetGate{std::move(a.args[0])}; }};
        t["ResetAll"] = {1, {0}, false,
                         [](GateArgs &a) -> NodeVariant { return ResetAllGate{std::move(a.args[0])}; }};
        t["ApplyUnitary"] = {2, {}, false, [](GateArgs &a) -> NodeVariant {
                                 return ArbitraryUnitary{std::move(a.args[0]), std::move(a.args[1])};
                             }};
        return t;
    }();
    return table;
}

std::optional<SingleQubitOp> controllable_op(const std::string &name) {
    static const std::unordered_map<std::string, SingleQubitOp> ops = {
        {"X", SingleQubitOp::X}, {"Y", SingleQubitOp::Y}, {"Z", SingleQubitOp::Z}, {"H", SingleQubitOp::H},
        {"S", SingleQubitOp::S}, {"T", SingleQubitOp::T}, {"I", SingleQubitOp::I},
    };
    auto it = ops.find(name);
    if (it == ops.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool is_qubit_reference(const Parameter &p) {
    return std::holds_alternative<IdentifierRef>(p) || std::holds_alternative<VariableRef>(p) ||
           std::holds_alternative<IndexAccess>(p) || std::holds_alternative<FunctionCall>(p) ||
           std::holds_alternative<ArrayLiteral>(p);
}

}  // namespace

// ---------------------------------------------------------------------------
// Cursor plumbing
// ---------------------------------------------------------------------------

Parser::Parser(std::span<const Token> tokens, std::vector<Diagnostic> &diagnostics, ScopeKind scope,
               const Parser *parent)
    : tokens_(tokens), diagnostics_(diagnostics), scope_(scope), parent_(parent) {
    if (!tokens_.empty() && tokens_.back().kind == TokenKind::EndOfFile) {
        end_token_ = tokens_.back();
        tokens_ = tokens_.first(tokens_.size() - 1);
    } else if (!tokens_.empty()) {
        const auto &last = tokens_.back();
        end_token_ = Token{TokenKind::EndOfFile, "",
                           SourceSpan{last.span.end_offset, last.span.end_offset, last.span.line,
                                      last.span.column + last.span.length()}};
    }
}

bool Parser::at_end() const {
    return pos_ >= tokens_.size();
}

const Token &Parser::peek(std::size_t ahead) const {
    return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : end_token_;
}

const Token &Parser::advance() {
    const Token &t = peek();
    if (!at_end()) {
        ++pos_;
    }
    return t;
}

bool Parser::check(TokenKind kind) const {
    return !at_end() && peek().kind == kind;
}

const Token &Parser::expect(TokenKind kind, std::string_view what) {
    if (!check(kind)) {
        unexpected(what);
    }
    return advance();
}

void Parser::fail(DiagnosticKind kind, std::string message, const SourceSpan &span) const {
    throw Error{make_error(kind, std::move(message), span)};
}

void Parser::unexpected(std::string_view expected) const {
    fail(DiagnosticKind::UnexpectedToken, "expected " + std::string(expected) + ", found " + describe(peek()),
         peek().span);
}

void Parser::declare(const std::string &name, Symbol symbol) {
    symbols_[name] = std::move(symbol);
}

const Symbol *Parser::lookup(const std::string &name) const {
    for (const Parser *p = this; p != nullptr; p = p->parent_) {
        auto it = p->symbols_.find(name);
        if (it != p->symbols_.end()) {
            return &it->second;
        }
    }
    return nullptr;
}

AstNode Parser::finish(NodeVariant node, std::size_t start) const {
    AstNode out{std::move(node), {}, false, {}};
    const Token &first = start < tokens_.size() ? tokens_[start] : end_token_;
    const Token &last = pos_ > start && pos_ - 1 < tokens_.size() ? tokens_[pos_ - 1] : first;
    out.span = first.span;
    out.span.end_offset = std::max(first.span.end_offset, last.span.end_offset);
    return out;
}

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

NodeList Parser::parse_all() {
    NodeList out;
    while (!at_end()) {
        std::size_t before = pos_;
        auto nodes = parse_node();
        for (auto &n : nodes) {
            out.push_back(std::move(n));
        }
        if (pos_ == before) {
            advance();  // never loop without progress
        }
    }
    return out;
}

NodeList Parser::parse_node() {
    std::size_t start = pos_;
    bool blank = start > 0 && start < tokens_.size() && tokens_[start].span.line >= tokens_[start - 1].span.line + 2;
    try {
        auto nodes = dispatch();
        if (!nodes.empty()) {
            nodes.front().blank_line_before = nodes.front().blank_line_before || blank;
        }
        return nodes;
    } catch (const Error &e) {
        diagnostics_.push_back(e.diagnostic);
        // A statement rejected after its terminator was read needs no skipping.
        bool terminated = pos_ > start && (tokens_[pos_ - 1].kind == TokenKind::Semicolon ||
                                           tokens_[pos_ - 1].kind == TokenKind::RBrace);
        if (!terminated) {
            recover();
        }
        if (pos_ == start) {
            advance();
        }
        return {};
    }
}

void Parser::recover() {
    while (!at_end()) {
        TokenKind k = peek().kind;
        if (k == TokenKind::Semicolon || k == TokenKind::RBrace) {
            advance();
            return;
        }
        if (k == TokenKind::LBrace) {
            std::size_t close = find_matching_brace(pos_);
            pos_ = close == tokens_.size() ? close : close + 1;
            return;
        }
        advance();
    }
}

NodeList Parser::dispatch() {
    std::size_t start = pos_;
    const Token &t = peek();
    switch (t.kind) {
        case TokenKind::Comment: {
            advance();
            NodeList out;
            out.push_back(finish(Comment{std::string(t.comment_text())}, start));
            return out;
        }
        case TokenKind::At:
            parse_attribute();
            return {};
        case TokenKind::Semicolon:
            advance();
            return {};
        case TokenKind::KwInternal:
            advance();
            return dispatch();
        case TokenKind::KwNamespace:
            return parse_namespace();
        case TokenKind::LBrace:
            return parse_scope(ScopeKind::Block);
        default:
            break;
    }
    NodeList out;
    switch (t.kind) {
        case TokenKind::KwOpen:
        case TokenKind::KwImport:
            out.push_back(parse_import());
            break;
        case TokenKind::KwFunction:
        case TokenKind::KwOperation:
            out.push_back(parse_callable());
            break;
        case TokenKind::KwStruct:
        case TokenKind::KwNewtype:
            out.push_back(parse_struct());
            break;
        case TokenKind::KwUse:
        case TokenKind::KwBorrow:
            out.push_back(parse_allocation());
            break;
        case TokenKind::KwLet:
        case TokenKind::KwMutable:
        case TokenKind::KwSet:
        case TokenKind::KwReturn:
        case TokenKind::KwFail:
        case TokenKind::KwIf:
            out.push_back(parse_binding());
            break;
        case TokenKind::KwFor:
        case TokenKind::KwWhile:
        case TokenKind::KwRepeat:
            out.push_back(parse_loop());
            break;
        case TokenKind::KwWithin:
            out.push_back(parse_conjugation());
            break;
        case TokenKind::KwAdjoint:
        case TokenKind::KwControlled:
        case TokenKind::Identifier:
            out.push_back(parse_gate_application());
            break;
        default:
            unexpected("a statement");
    }
    return out;
}

void Parser::parse_attribute() {
    expect(TokenKind::At, "'@'");
    const Token &name = expect(TokenKind::Identifier, "an attribute name");
    if (check(TokenKind::LParen)) {
        int depth = 0;
        do {
            if (check(TokenKind::LParen)) {
                ++depth;
            } else if (check(TokenKind::RParen)) {
                --depth;
            }
            advance();
        } while (depth > 0 && !at_end());
        if (depth > 0) {
            fail(DiagnosticKind::UnbalancedDelimiter, "missing ')' in attribute", peek().span);
        }
    }
    if (name.lexeme == "EntryPoint") {
        pending_entry_point_ = true;
    }
}

std::string Parser::parse_qualified_name() {
    std::string name = expect(TokenKind::Identifier, "an identifier").lexeme;
    while ((check(TokenKind::Dot) || check(TokenKind::DoubleColon)) && peek(1).kind == TokenKind::Identifier) {
        name += advance().lexeme;
        name += advance().lexeme;
    }
    return name;
}

NodeList Parser::parse_namespace() {
    advance();
    parse_qualified_name();
    return parse_scope(ScopeKind::Top);
}

AstNode Parser::parse_import() {
    std::size_t start = pos_;
    advance();
    std::string path;
    while (!at_end() && !check(TokenKind::Semicolon)) {
        path += advance().lexeme;
    }
    if (path.empty()) {
        unexpected("an import path");
    }
    expect(TokenKind::Semicolon, "';'");
    return finish(ImportStatement{std::move(path)}, start);
}

std::string Parser::collect_type(const TokenSet &stops) {
    std::string text;
    int depth = 0;
    TokenKind previous = TokenKind::EndOfFile;
    while (!at_end()) {
        TokenKind k = peek().kind;
        if (depth == 0 && stops.contains(k)) {
            break;
        }
        if (k == TokenKind::LParen || k == TokenKind::LBracket) {
            ++depth;
        } else if ((k == TokenKind::RParen || k == TokenKind::RBracket) && depth > 0) {
            --depth;
        } else if (k == TokenKind::LBrace || k == TokenKind::RBrace || k == TokenKind::Semicolon) {
            break;
        }
        if (!text.empty() && (spaced_in_type(k) || spaced_in_type(previous) || previous == TokenKind::Comma)) {
            text += ' ';
        }
        text += advance().lexeme;
        previous = k;
    }
    return text;
}

AstNode Parser::parse_callable() {
    std::size_t start = pos_;
    CallableDecl decl;
    decl.kind = advance().kind == TokenKind::KwFunction ? CallableKind::Function : CallableKind::Operation;
    decl.name = expect(TokenKind::Identifier, "a callable name").lexeme;
    decl.entry_point = pending_entry_point_;
    pending_entry_point_ = false;

    if (check(TokenKind::Less)) {
        while (!at_end() && !check(TokenKind::Greater)) {
            advance();
        }
        expect(TokenKind::Greater, "'>'");
    }

    expect(TokenKind::LParen, "'(' after callable name");
    while (!check(TokenKind::RParen)) {
        const Token &name = expect(TokenKind::Identifier, "a parameter name");
        expect(TokenKind::Colon, "':' after parameter name");
        std::string type = collect_type({TokenKind::Comma, TokenKind::RParen});
        if (type.empty()) {
            unexpected("a parameter type");
        }
        decl.params.push_back({make_expression({make_identifier(name.lexeme)})});
        decl.signature.push_back({name.lexeme, std::move(type)});
        if (check(TokenKind::Comma)) {
            advance();
        } else if (!check(TokenKind::RParen)) {
            unexpected("',' or ')' in parameter list");
        }
    }
    advance();

    if (check(TokenKind::Colon)) {
        advance();
        std::string ret = collect_type({TokenKind::KwIs, TokenKind::LBrace});
        if (ret.empty()) {
            unexpected("a return type");
        }
        if (ret != "Unit") {
            decl.return_type = std::move(ret);
        }
    }
    if (check(TokenKind::KwIs)) {
        advance();
        while (!at_end() && !check(TokenKind::LBrace)) {
            const Token &t = advance();
            if (t.kind == TokenKind::Identifier) {
                decl.modifiers.push_back(t.lexeme);
            } else if (t.kind != TokenKind::Plus && t.kind != TokenKind::Star) {
                fail(DiagnosticKind::UnexpectedToken, "unexpected " + describe(t) + " in characteristics", t.span);
            }
        }
    }
    if (!check(TokenKind::LBrace)) {
        unexpected("'{' to open the callable body");
    }

    declare(decl.name, Symbol{SymbolKind::Callable, {}});
    std::vector<std::pair<std::string, Symbol>> seed;
    for (const auto &p : decl.signature) {
        seed.push_back({p.name, Symbol{SymbolKind::Parameter, p.type}});
    }
    decl.nodes = parse_scope(decl.kind == CallableKind::Function ? ScopeKind::Function : ScopeKind::Operation, seed);
    return finish(std::move(decl), start);
}

AstNode Parser::parse_struct() {
    std::size_t start = pos_;
    bool is_newtype = advance().kind == TokenKind::KwNewtype;
    StructDecl decl;
    decl.name = expect(TokenKind::Identifier, "a struct name").lexeme;
    TokenKind close = TokenKind::RBrace;
    if (is_newtype) {
        expect(TokenKind::Assign, "'=' after newtype name");
        expect(TokenKind::LParen, "'('");
        close = TokenKind::RParen;
    } else {
        expect(TokenKind::LBrace, "'{' after struct name");
    }
    while (!at_end() && !check(close)) {
        std::string field = collect_type({TokenKind::Comma, close});
        if (field.empty()) {
            unexpected("a field");
        }
        decl.fields.push_back(std::move(field));
        if (check(TokenKind::Comma)) {
            advance();
        }
    }
    expect(close, is_newtype ? "')'" : "'}'");
    if (is_newtype) {
        expect(TokenKind::Semicolon, "';'");
    }
    declare(decl.name, Symbol{SymbolKind::Callable, {}});
    return finish(std::move(decl), start);
}

std::size_t Parser::find_matching_brace(std::size_t open) const {
    int depth = 0;
    for (std::size_t i = open; i < tokens_.size(); ++i) {
        if (tokens_[i].kind == TokenKind::LBrace) {
            ++depth;
        } else if (tokens_[i].kind == TokenKind::RBrace) {
            if (--depth == 0) {
                return i;
            }
        }
    }
    return tokens_.size();
}

NodeList Parser::parse_scope(ScopeKind kind, const std::vector<std::pair<std::string, Symbol>> &seed) {
    if (!check(TokenKind::LBrace)) {
        unexpected("'{'");
    }
    std::size_t open = pos_;
    std::size_t close = find_matching_brace(open);
    if (close == tokens_.size()) {
        const Token &opener = tokens_[open];
        pos_ = tokens_.size();
        fail(DiagnosticKind::UnbalancedScope,
             "missing '}' for scope opened at " + std::to_string(opener.span.line) + ":" +
                 std::to_string(opener.span.column),
             end_token_.span);
    }
    Parser child(tokens_.subspan(open + 1, close - open - 1), diagnostics_, kind, this);
    child.end_token_ = tokens_[close];
    for (const auto &[name, symbol] : seed) {
        child.declare(name, symbol);
    }
    NodeList nodes = child.parse_all();
    pos_ = close + 1;
    return nodes;
}

AstNode Parser::parse_conjugation() {
    std::size_t start = pos_;
    expect(TokenKind::KwWithin, "'within'");
    Conjugation c;
    c.within = parse_scope(ScopeKind::Block);
    if (!check(TokenKind::KwApply)) {
        fail(DiagnosticKind::MissingApply, "expected 'apply' after within block, found " + describe(peek()),
             peek().span);
    }
    advance();
    c.applies = parse_scope(ScopeKind::Block);
    return finish(std::move(c), start);
}

AstNode Parser::parse_loop() {
    std::size_t start = pos_;
    const Token &kw = advance();
    if (kw.kind == TokenKind::KwFor) {
        bool parenthesized = check(TokenKind::LParen);
        if (parenthesized) {
            advance();
        }
        const Token &var = expect(TokenKind::Identifier, "a loop variable");
        expect(TokenKind::KwIn, "'in' in for header");
        ForLoop loop;
        loop.variable = std::get<VariableRef>(make_variable(var.lexeme));
        loop.iterable = parse_expression(parenthesized ? TokenSet{TokenKind::RParen} : TokenSet{TokenKind::LBrace});
        if (parenthesized) {
            expect(TokenKind::RParen, "')'");
        }
        loop.inside = parse_scope(ScopeKind::Block, {{var.lexeme, Symbol{SymbolKind::LoopVariable, {}}}});
        return finish(std::move(loop), start);
    }
    if (kw.kind == TokenKind::KwWhile) {
        WhileLoop loop;
        loop.condition = parse_expression({TokenKind::LBrace});
        loop.inside = parse_scope(ScopeKind::Block);
        return finish(std::move(loop), start);
    }
    RepeatUntilFixup loop;
    loop.body = parse_scope(ScopeKind::Block);
    expect(TokenKind::KwUntil, "'until' after repeat block");
    loop.condition = parse_expression({TokenKind::Semicolon, TokenKind::KwFixup});
    if (check(TokenKind::KwFixup)) {
        advance();
        loop.fixup = parse_scope(ScopeKind::Block);
        if (check(TokenKind::Semicolon)) {
            advance();
        }
    } else {
        expect(TokenKind::Semicolon, "';'");
    }
    return finish(std::move(loop), start);
}

AstNode Parser::parse_allocation() {
    std::size_t start = pos_;
    QubitAllocation alloc;
    alloc.kind = advance().kind == TokenKind::KwUse ? AllocationKind::Use : AllocationKind::Borrow;
    alloc.name = expect(TokenKind::Identifier, "a qubit name").lexeme;
    expect(TokenKind::Assign, "'='");
    if (!check(TokenKind::Identifier) || peek().lexeme != "Qubit") {
        unexpected("Qubit() or Qubit[n]");
    }
    advance();
    if (check(TokenKind::LParen)) {
        advance();
        expect(TokenKind::RParen, "')'");
        alloc.length = make_int(1);
    } else if (check(TokenKind::LBracket)) {
        advance();
        Expression length = parse_expression_impl({TokenKind::RBracket}, true);
        expect(TokenKind::RBracket, "']'");
        alloc.length = as_parameter(std::move(length));
        alloc.is_array = true;
    } else {
        unexpected("Qubit() or Qubit[n]");
    }
    expect(TokenKind::Semicolon, "';'");
    declare(alloc.name, Symbol{SymbolKind::Qubit, alloc.is_array ? "Qubit[]" : "Qubit"});
    return finish(std::move(alloc), start);
}

AstNode Parser::parse_binding() {
    std::size_t start = pos_;
    const Token &kw = advance();
    switch (kw.kind) {
        case TokenKind::KwLet:
        case TokenKind::KwMutable: {
            const Token &name = expect(TokenKind::Identifier, "a variable name");
            std::string type;
            if (check(TokenKind::Colon)) {
                advance();
                type = collect_type({TokenKind::Assign});
            }
            expect(TokenKind::Assign, "'='");
            Expression rhs = parse_expression({TokenKind::Semicolon});
            expect(TokenKind::Semicolon, "';'");
            auto variable = std::get<VariableRef>(make_variable(name.lexeme));
            bool is_mutable = kw.kind == TokenKind::KwMutable;
            declare(name.lexeme, Symbol{is_mutable ? SymbolKind::Mutable : SymbolKind::Variable, type});
            if (is_mutable) {
                return finish(MutableBinding{std::move(variable), std::move(rhs)}, start);
            }
            return finish(LetBinding{std::move(variable), std::move(rhs)}, start);
        }
        case TokenKind::KwSet: {
            const Token &name = expect(TokenKind::Identifier, "a variable name");
            if (!kAssignOps.contains(peek().kind) || at_end()) {
                unexpected("an assignment operator");
            }
            std::string op = advance().lexeme;
            Expression rhs = parse_expression({TokenKind::Semicolon});
            expect(TokenKind::Semicolon, "';'");
            return finish(SetAssignment{std::get<VariableRef>(make_variable(name.lexeme)), std::move(op),
                                        std::move(rhs)},
                          start);
        }
        case TokenKind::KwReturn: {
            Expression value = parse_expression({TokenKind::Semicolon});
            if (!at_end()) {
                expect(TokenKind::Semicolon, "';'");
            }
            return finish(ReturnStatement{std::move(value)}, start);
        }
        case TokenKind::KwFail: {
            if (!check(TokenKind::StringLiteral)) {
                unexpected("a string message after 'fail'");
            }
            auto msg = std::get<StringLiteral>(make_string(advance().lexeme));
            expect(TokenKind::Semicolon, "';'");
            return finish(FailStatement{std::move(msg)}, start);
        }
        default: {
            IfStatement stmt;
            stmt.condition = parse_expression({TokenKind::LBrace});
            stmt.if_clause = parse_scope(ScopeKind::Block);
            while (check(TokenKind::KwElif)) {
                advance();
                ElifClause clause;
                clause.condition = parse_expression({TokenKind::LBrace});
                clause.clause = parse_scope(ScopeKind::Block);
                stmt.elif_clauses.push_back(std::move(clause));
            }
            if (check(TokenKind::KwElse)) {
                advance();
                stmt.else_clause = parse_scope(ScopeKind::Block);
            }
            return finish(std::move(stmt), start);
        }
    }
}

AstNode Parser::parse_gate_application() {
    std::size_t start = pos_;
    std::vector<std::string> functors;
    while (check(TokenKind::KwAdjoint) || check(TokenKind::KwControlled)) {
        functors.push_back(advance().lexeme);
    }
    const Token &name_token = peek();
    std::string name = parse_qualified_name();
    if (!check(TokenKind::LParen)) {
        unexpected("'(' after '" + name + "'");
    }
    SourceSpan args_span = peek().span;
    ParamGroups groups = parse_parameters();
    if (check(TokenKind::Semicolon)) {
        advance();
    } else if (!at_end()) {
        unexpected("';'");
    }

    std::size_t controlled = 0;
    bool adjoint = false;
    for (const auto &f : functors) {
        if (f == "Controlled") {
            ++controlled;
        } else {
            adjoint = !adjoint;
        }
    }
    if (controlled > 1) {
        fail(DiagnosticKind::UnexpectedToken, "nested Controlled functors are not supported", name_token.span);
    }

    auto fallback = [&]() {
        return finish(NonIntrinsicCall{name, std::move(groups), functors}, start);
    };

    auto flatten = [&](std::size_t expected) {
        if (groups.size() != expected) {
            fail(DiagnosticKind::BadArgument,
                 (controlled ? "Controlled " : "") + name + " expects " + std::to_string(expected) +
                     " argument(s), found " + std::to_string(groups.size()),
                 args_span);
        }
        std::vector<Parameter> args;
        for (auto &group : groups) {
            args.push_back(as_parameter(std::move(group.front())));
        }
        return args;
    };
    auto check_qubit = [&](const Parameter &p, std::size_t index) {
        if (!is_qubit_reference(p)) {
            fail(DiagnosticKind::BadArgument,
                 name + " argument " + std::to_string(index + 1) + " must be a qubit, found '" + repr_of(p) + "'",
                 args_span);
        }
    };

    if (controlled == 1) {
        auto op = controllable_op(name);
        if (!op) {
            return fallback();
        }
        auto args = flatten(2);
        check_qubit(args[0], 0);
        check_qubit(args[1], 1);
        return finish(ControlledGate{*op, std::move(args[0]), std::move(args[1]), adjoint}, start);
    }

    const auto &table = gate_table();
    auto it = table.find(name);
    if (it == table.end()) {
        return fallback();
    }
    const GateSignature &sig = it->second;
    if (adjoint && !sig.adjointable) {
        fail(DiagnosticKind::BadArgument, "Adjoint cannot be applied to " + name, name_token.span);
    }
    auto args = flatten(sig.arity);
    for (std::size_t q : sig.qubit_positions) {
        check_qubit(args[q], q);
    }
    GateArgs gate_args{std::move(args), functors, adjoint};
    return finish(sig.build(gate_args), start);
}

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

ParamGroups Parser::parse_parameters() {
    expect(TokenKind::LParen, "'('");
    ParamGroups groups;
    if (check(TokenKind::RParen)) {
        advance();
        return groups;
    }
    while (true) {
        groups.push_back({parse_expression_impl({TokenKind::Comma, TokenKind::RParen}, true)});
        if (check(TokenKind::Comma)) {
            advance();
            continue;
        }
        if (check(TokenKind::RParen)) {
            advance();
            return groups;
        }
        fail(DiagnosticKind::UnbalancedDelimiter, "missing ')' to close argument list", peek().span);
    }
}

Expression Parser::parse_expression(const TokenSet &terminators) {
    return parse_expression_impl(terminators, false);
}

Expression Parser::parse_expression_impl(const TokenSet &terminators, bool nested) {
    std::vector<std::vector<Parameter>> segments(1);
    std::size_t range_ops = 0;
    SourceSpan first_range_span;
    while (!at_end()) {
        const Token &t = peek();
        if (terminators.contains(t.kind)) {
            break;
        }
        if (t.kind == TokenKind::RParen || t.kind == TokenKind::RBracket) {
            fail(DiagnosticKind::UnbalancedDelimiter, "unmatched '" + t.lexeme + "'", t.span);
        }
        if (!is_expression_token(t.kind)) {
            if (nested) {
                fail(DiagnosticKind::UnbalancedDelimiter,
                     "unclosed delimiter before " + describe(t), t.span);
            }
            fail(DiagnosticKind::UnexpectedToken, "unexpected " + describe(t) + " in expression", t.span);
        }
        if (t.kind == TokenKind::Range || t.kind == TokenKind::OpenRange) {
            if (range_ops == 0) {
                first_range_span = t.span;
            }
            ++range_ops;
            advance();
            segments.emplace_back();
            continue;
        }
        segments.back().push_back(parse_atom(nested));
    }
    if (at_end() && nested) {
        fail(DiagnosticKind::UnbalancedDelimiter, "unclosed delimiter at " + describe(peek()), peek().span);
    }

    if (range_ops == 0) {
        if (segments.front().empty()) {
            fail(DiagnosticKind::EmptyExpression, "expected an expression, found " + describe(peek()), peek().span);
        }
        return make_expression(std::move(segments.front()));
    }
    if (range_ops > 2) {
        fail(DiagnosticKind::UnexpectedToken, "a range takes at most a lower bound, a step and an upper bound",
             first_range_span);
    }
    auto bound = [](std::vector<Parameter> &seg) -> std::optional<Expression> {
        if (seg.empty()) {
            return std::nullopt;
        }
        return make_expression(std::move(seg));
    };
    Range r = range_ops == 1 ? make_range(bound(segments[0]), std::nullopt, bound(segments[1]))
                             : make_range(bound(segments[0]), bound(segments[1]), bound(segments[2]));
    return make_expression({Parameter(std::move(r))});
}

Parameter Parser::parse_number() const {
    const Token &t = peek();
    if (t.kind == TokenKind::DoubleLiteral) {
        std::string digits;
        for (char c : t.lexeme) {
            if (c != '_') {
                digits += c;
            }
        }
        double value = 0;
        std::from_chars(digits.data(), digits.data() + digits.size(), value);
        return make_double(value);
    }
    BigInt value = parse_integer(t.lexeme);
    if (t.kind == TokenKind::IntLiteral && value <= std::numeric_limits<std::int64_t>::max()) {
        return make_int(static_cast<std::int64_t>(value));
    }
    return make_bigint(std::move(value));
}

Parameter Parser::parse_atom(bool nested) {
    (void)nested;
    const Token &t = peek();
    switch (t.kind) {
        case TokenKind::Identifier:
            return parse_identifier_atom(nested);
        case TokenKind::IntLiteral:
        case TokenKind::BigIntLiteral:
        case TokenKind::DoubleLiteral: {
            Parameter p = parse_number();
            advance();
            return p;
        }
        case TokenKind::StringLiteral:
            return make_string(advance().lexeme);
        case TokenKind::BoolLiteral:
            return make_bool(advance().lexeme == "true");
        case TokenKind::PauliLiteral:
            return make_pauli(*pauli_from(advance().lexeme));
        case TokenKind::ResultLiteral:
            return make_result(advance().lexeme == "One" ? ResultValue::One : ResultValue::Zero);
        case TokenKind::LParen: {
            advance();
            if (check(TokenKind::RParen)) {
                advance();
                return make_subexpression(Expression{}, true);
            }
            Expression inner = parse_expression_impl({TokenKind::RParen}, true);
            expect(TokenKind::RParen, "')'");
            return make_subexpression(std::move(inner), true);
        }
        case TokenKind::LBracket: {
            advance();
            std::vector<Expression> items;
            while (!check(TokenKind::RBracket)) {
                items.push_back(parse_expression_impl({TokenKind::Comma, TokenKind::RBracket}, true));
                if (check(TokenKind::Comma)) {
                    advance();
                }
            }
            advance();
            return make_array(std::move(items));
        }
        default:
            return make_operator(advance().lexeme);
    }
}

Parameter Parser::parse_identifier_atom(bool nested) {
    (void)nested;
    std::string name = parse_qualified_name();
    Parameter p;
    if (check(TokenKind::LParen)) {
        p = make_call(name, parse_parameters());
    } else {
        const Symbol *symbol = lookup(name);
        bool is_variable = symbol && (symbol->kind == SymbolKind::Variable || symbol->kind == SymbolKind::Mutable);
        p = is_variable ? make_variable(name) : make_identifier(name);
    }
    while (check(TokenKind::LBracket)) {
        advance();
        Expression index = parse_expression_impl({TokenKind::RBracket}, true);
        expect(TokenKind::RBracket, "']'");
        std::string instance = repr_of(p);
        if (index.elements.size() == 1 && std::holds_alternative<Range>(index.elements.front())) {
            p = make_index(std::move(instance), std::get<Range>(std::move(index.elements.front())));
        } else {
            p = make_index(std::move(instance), std::move(index));
        }
    }
    return p;
}

ParseResult parse_program(std::span<const Token> tokens) {
    ParseResult result;
    Parser parser(tokens, result.diagnostics);
    Program program;
    program.nodes = parser.parse_all();
    result.program = AstNode{std::move(program), {}, false, {}};
    if (!tokens.empty()) {
        result.program.span = tokens.front().span;
        result.program.span.end_offset = tokens.back().span.end_offset;
    }
    return result;
}

}  // namespace qsc

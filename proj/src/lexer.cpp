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

#include "qsc/lexer.hpp"

#include <array>
#include <unordered_map>

namespace qsc {

namespace {

constexpr std::array<std::string_view, kTokenKindCount> kTokenNames = {
#define QSC_TOKEN_NAME(name, text) text,
    QSC_TOKEN_KINDS(QSC_TOKEN_NAME)
#undef QSC_TOKEN_NAME
};

struct OperatorEntry {
    std::string_view text;
    TokenKind kind;
};

// Longest first, so the first prefix match is the maximal munch.
constexpr OperatorEntry kOperators[] = {
    {"&&&=", TokenKind::BitwiseAndAssign},
    {"|||=", TokenKind::BitwiseOrAssign},
    {"^^^=", TokenKind::BitwiseXorAssign},
    {"<<<=", TokenKind::ShiftLeftAssign},
    {">>>=", TokenKind::ShiftRightAssign},
    {"&&&", TokenKind::BitwiseAnd},
    {"|||", TokenKind::BitwiseOr},
    {"^^^", TokenKind::BitwiseXor},
    {"~~~", TokenKind::BitwiseNot},
    {"<<<", TokenKind::ShiftLeft},
    {">>>", TokenKind::ShiftRight},
    {"...", TokenKind::OpenRange},
    {"==", TokenKind::Equal},
    {"!=", TokenKind::NotEqual},
    {"<=", TokenKind::LessEqual},
    {">=", TokenKind::GreaterEqual},
    {"=>", TokenKind::FatArrow},
    {"->", TokenKind::Arrow},
    {"<-", TokenKind::LeftArrow},
    {"..", TokenKind::Range},
    {"+=", TokenKind::PlusAssign},
    {"-=", TokenKind::MinusAssign},
    {"*=", TokenKind::StarAssign},
    {"/=", TokenKind::SlashAssign},
    {"%=", TokenKind::PercentAssign},
    {"^=", TokenKind::CaretAssign},
    {"::", TokenKind::DoubleColon},
    {"<", TokenKind::Less},
    {">", TokenKind::Greater},
    {"+", TokenKind::Plus},
    {"-", TokenKind::Minus},
    {"*", TokenKind::Star},
    {"/", TokenKind::Slash},
    {"%", TokenKind::Percent},
    {"^", TokenKind::Caret},
    {"=", TokenKind::Assign},
    {"(", TokenKind::LParen},
    {")", TokenKind::RParen},
    {"[", TokenKind::LBracket},
    {"]", TokenKind::RBracket},
    {"{", TokenKind::LBrace},
    {"}", TokenKind::RBrace},
    {",", TokenKind::Comma},
    {":", TokenKind::Colon},
    {";", TokenKind::Semicolon},
    {".", TokenKind::Dot},
    {"?", TokenKind::Question},
    {"|", TokenKind::Pipe},
    {"!", TokenKind::Bang},
    {"@", TokenKind::At},
};

const std::unordered_map<std::string_view, TokenKind> &word_table() {
    static const std::unordered_map<std::string_view, TokenKind> table = {
        {"operation", TokenKind::KwOperation},
        {"function", TokenKind::KwFunction},
        {"use", TokenKind::KwUse},
        {"borrow", TokenKind::KwBorrow},
        {"let", TokenKind::KwLet},
        {"mutable", TokenKind::KwMutable},
        {"set", TokenKind::KwSet},
        {"if", TokenKind::KwIf},
        {"elif", TokenKind::KwElif},
        {"else", TokenKind::KwElse},
        {"for", TokenKind::KwFor},
        {"in", TokenKind::KwIn},
        {"while", TokenKind::KwWhile},
        {"repeat", TokenKind::KwRepeat},
        {"until", TokenKind::KwUntil},
        {"fixup", TokenKind::KwFixup},
        {"within", TokenKind::KwWithin},
        {"apply", TokenKind::KwApply},
        {"return", TokenKind::KwReturn},
        {"fail", TokenKind::KwFail},
        {"import", TokenKind::KwImport},
        {"open", TokenKind::KwOpen},
        {"namespace", TokenKind::KwNamespace},
        {"struct", TokenKind::KwStruct},
        {"newtype", TokenKind::KwNewtype},
        {"new", TokenKind::KwNew},
        {"is", TokenKind::KwIs},
        {"internal", TokenKind::KwInternal},
        {"Adjoint", TokenKind::KwAdjoint},
        {"Controlled", TokenKind::KwControlled},
        {"and", TokenKind::KwAnd},
        {"or", TokenKind::KwOr},
        {"not", TokenKind::KwNot},
        {"true", TokenKind::BoolLiteral},
        {"false", TokenKind::BoolLiteral},
        {"PauliI", TokenKind::PauliLiteral},
        {"PauliX", TokenKind::PauliLiteral},
        {"PauliY", TokenKind::PauliLiteral},
        {"PauliZ", TokenKind::PauliLiteral},
        {"Zero", TokenKind::ResultLiteral},
        {"One", TokenKind::ResultLiteral},
    };
    return table;
}

bool is_ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}

bool is_ident_char(unsigned char c) {
    return is_ident_start(c) || (c >= '0' && c <= '9');
}

bool is_digit(unsigned char c) {
    return c >= '0' && c <= '9';
}

bool is_hex_digit(unsigned char c) {
    return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class Lexer {
  public:
    explicit Lexer(std::string_view source) : src_(source) {
    }

    LexResult run() {
        LexResult result;
        while (true) {
            skip_whitespace();
            if (pos_ >= src_.size()) {
                break;
            }
            if (!lex_one(result)) {
                break;
            }
        }
        result.tokens.push_back(end_of_file());
        return result;
    }

  private:
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_whitespace() {
        while (pos_ < src_.size() && is_space(src_[pos_])) {
            advance(1);
        }
    }

    SourceSpan start_span() const {
        return SourceSpan{pos_, pos_, line_, col_};
    }

    void emit(LexResult &result, TokenKind kind, SourceSpan span, std::size_t length) {
        advance(length);
        span.end_offset = pos_;
        result.tokens.push_back(Token{kind, std::string(src_.substr(span.start_offset, length)), span});
    }

    bool lex_one(LexResult &result) {
        auto span = start_span();
        unsigned char c = static_cast<unsigned char>(peek());

        if (c == '/' && peek(1) == '/') {
            std::size_t end = src_.find('\n', pos_);
            if (end == std::string_view::npos) {
                end = src_.size();
            }
            if (end > pos_ && src_[end - 1] == '\r') {
                --end;
            }
            emit(result, TokenKind::Comment, span, end - pos_);
            return true;
        }
        if (c == '"' || (c == '$' && peek(1) == '"')) {
            return lex_string(result, span);
        }
        if (is_digit(c)) {
            lex_number(result, span);
            return true;
        }
        if (c == '\'' && is_ident_start(static_cast<unsigned char>(peek(1)))) {
            // type parameter such as 'T
            std::size_t n = 1;
            while (is_ident_char(static_cast<unsigned char>(peek(n)))) {
                ++n;
            }
            emit(result, TokenKind::Identifier, span, n);
            return true;
        }
        if (is_ident_start(c)) {
            std::size_t n = 0;
            while (is_ident_char(static_cast<unsigned char>(peek(n)))) {
                ++n;
            }
            auto word = src_.substr(pos_, n);
            if (word == "w" && peek(1) == '/') {
                if (peek(2) == '=') {
                    emit(result, TokenKind::CopyUpdateAssign, span, 3);
                } else {
                    emit(result, TokenKind::CopyUpdate, span, 2);
                }
                return true;
            }
            emit(result, classify_word(word), span, n);
            return true;
        }
        auto rest = src_.substr(pos_);
        for (const auto &op : kOperators) {
            if (op.text[0] == rest[0] && rest.starts_with(op.text)) {
                emit(result, op.kind, span, op.text.size());
                return true;
            }
        }
        span.end_offset = span.start_offset + 1;
        std::string shown = (c >= 0x20 && c < 0x7f) ? std::string(1, static_cast<char>(c)) : "\\x" + to_hex(c);
        result.diagnostics.push_back(make_error(DiagnosticKind::LexError, "illegal character '" + shown + "'", span));
        return false;
    }

    static std::string to_hex(unsigned char c) {
        constexpr char digits[] = "0123456789abcdef";
        return {digits[c >> 4], digits[c & 0xf]};
    }

    bool lex_string(LexResult &result, SourceSpan span) {
        std::size_t n = peek() == '$' ? 2 : 1;
        while (true) {
            char c = peek(n);
            if (pos_ + n >= src_.size() || c == '\n') {
                span.end_offset = pos_ + n;
                result.diagnostics.push_back(
                    make_error(DiagnosticKind::LexError, "unterminated string literal", span));
                return false;
            }
            if (c == '\\') {
                n += 2;
                continue;
            }
            ++n;
            if (c == '"') {
                break;
            }
        }
        emit(result, TokenKind::StringLiteral, span, n);
        return true;
    }

    void lex_number(LexResult &result, SourceSpan span) {
        std::size_t n = 0;
        auto digits = [&](auto pred) {
            while (pred(static_cast<unsigned char>(peek(n))) || (peek(n) == '_' && pred(static_cast<unsigned char>(peek(n + 1))))) {
                ++n;
            }
        };
        if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X' || peek(1) == 'o' || peek(1) == 'b') &&
            is_hex_digit(static_cast<unsigned char>(peek(2)))) {
            n = 2;
            digits(is_hex_digit);
            if (peek(n) == 'L') {
                emit(result, TokenKind::BigIntLiteral, span, n + 1);
            } else {
                emit(result, TokenKind::IntLiteral, span, n);
            }
            return;
        }
        digits(is_digit);
        bool is_double = false;
        // `1.` is a Double but `1..3` and `1...` are ranges.
        if (peek(n) == '.' && peek(n + 1) != '.') {
            is_double = true;
            ++n;
            digits(is_digit);
        }
        if ((peek(n) == 'e' || peek(n) == 'E')) {
            std::size_t m = n + 1;
            if (peek(m) == '+' || peek(m) == '-') {
                ++m;
            }
            if (is_digit(static_cast<unsigned char>(peek(m)))) {
                n = m;
                digits(is_digit);
                is_double = true;
            }
        }
        if (!is_double && peek(n) == 'L') {
            emit(result, TokenKind::BigIntLiteral, span, n + 1);
            return;
        }
        emit(result, is_double ? TokenKind::DoubleLiteral : TokenKind::IntLiteral, span, n);
    }

    Token end_of_file() const {
        // Synthetic: zero width, placed at the end of the last non-empty line so
        // diagnostics at EOF point somewhere visible.
        std::size_t line = line_;
        std::size_t col = col_;
        if (pos_ == src_.size() && !src_.empty() && src_.back() == '\n' && line_ > 1) {
            std::size_t end = src_.size() - 1;
            if (end > 0 && src_[end - 1] == '\r') {
                --end;
            }
            std::size_t begin = src_.rfind('\n', end == 0 ? 0 : end - 1);
            begin = (begin == std::string_view::npos || end == 0) ? 0 : begin + 1;
            line = line_ - 1;
            col = end - begin + 1;
        }
        return Token{TokenKind::EndOfFile, "", SourceSpan{pos_, pos_, line, col}};
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

}  // namespace

std::string_view token_kind_name(TokenKind kind) {
    return kTokenNames[static_cast<std::size_t>(kind)];
}

bool is_keyword(TokenKind kind) {
    return kind >= TokenKind::KwOperation && kind <= TokenKind::KwNot;
}

bool is_literal(TokenKind kind) {
    return kind >= TokenKind::IntLiteral && kind <= TokenKind::ResultLiteral;
}

std::string_view Token::comment_text() const {
    if (kind != TokenKind::Comment || lexeme.size() < 2) {
        return {};
    }
    return std::string_view(lexeme).substr(2);
}

TokenKind classify_word(std::string_view lexeme) {
    const auto &table = word_table();
    auto it = table.find(lexeme);
    return it == table.end() ? TokenKind::Identifier : it->second;
}

bool is_expression_token(TokenKind kind) {
    switch (kind) {
        case TokenKind::Identifier:
        case TokenKind::KwAnd:
        case TokenKind::KwOr:
        case TokenKind::KwNot:
        case TokenKind::BitwiseAnd:
        case TokenKind::BitwiseOr:
        case TokenKind::BitwiseXor:
        case TokenKind::BitwiseNot:
        case TokenKind::ShiftLeft:
        case TokenKind::ShiftRight:
        case TokenKind::Equal:
        case TokenKind::NotEqual:
        case TokenKind::Less:
        case TokenKind::LessEqual:
        case TokenKind::Greater:
        case TokenKind::GreaterEqual:
        case TokenKind::Plus:
        case TokenKind::Minus:
        case TokenKind::Star:
        case TokenKind::Slash:
        case TokenKind::Percent:
        case TokenKind::Caret:
        case TokenKind::CopyUpdate:
        case TokenKind::LeftArrow:
        case TokenKind::Range:
        case TokenKind::OpenRange:
        case TokenKind::LParen:
        case TokenKind::RParen:
        case TokenKind::LBracket:
        case TokenKind::RBracket:
        case TokenKind::Comma:
        case TokenKind::Dot:
        case TokenKind::DoubleColon:
        case TokenKind::Question:
        case TokenKind::Pipe:
        case TokenKind::Bang:
            return true;
        default:
            return is_literal(kind);
    }
}

bool is_parameter_token(TokenKind kind) {
    switch (kind) {
        case TokenKind::Identifier:
        case TokenKind::Range:
        case TokenKind::OpenRange:
        case TokenKind::LBracket:
        case TokenKind::RBracket:
        case TokenKind::Dot:
        case TokenKind::DoubleColon:
            return true;
        default:
            return is_literal(kind);
    }
}

LexResult tokenize(std::string_view source) {
    return Lexer(source).run();
}

std::string dump_tokens(std::span<const Token> tokens) {
    std::string out;
    for (const auto &t : tokens) {
        if (t.kind == TokenKind::EndOfFile) {
            continue;
        }
        out += token_kind_name(t.kind);
        out += '\t';
        for (char c : t.lexeme) {
            if (c == '\t') {
                out += "\\t";
            } else {
                out += c;
            }
        }
        out += '\t';
        out += std::to_string(t.span.line);
        out += ':';
        out += std::to_string(t.span.column);
        out += '\n';
    }
    return out;
}

}  // namespace qsc

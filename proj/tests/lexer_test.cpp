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

#include <gtest/gtest.h>

using namespace qsc;

namespace {

std::vector<TokenKind> kinds(std::string_view src) {
    std::vector<TokenKind> out;
    for (const auto &t : tokenize(src).tokens) {
        out.push_back(t.kind);
    }
    return out;
}

std::vector<std::string> lexemes(std::string_view src) {
    std::vector<std::string> out;
    for (const auto &t : tokenize(src).tokens) {
        out.push_back(t.lexeme);
    }
    return out;
}

}  // namespace

TEST(Lexer, TripleAmpersandIsOneToken) {
    auto r = tokenize("&&&");
    ASSERT_EQ(r.tokens.size(), 2u);
    EXPECT_EQ(r.tokens[0].kind, TokenKind::BitwiseAnd);
    EXPECT_EQ(r.tokens[0].lexeme, "&&&");
    EXPECT_EQ(r.tokens[1].kind, TokenKind::EndOfFile);
    EXPECT_TRUE(r.diagnostics.empty());
}

TEST(Lexer, EmptySourceYieldsOnlyEof) {
    auto r = tokenize("");
    ASSERT_EQ(r.tokens.size(), 1u);
    EXPECT_EQ(r.tokens[0].kind, TokenKind::EndOfFile);
}

TEST(Lexer, IsingCallLine) {
    using K = TokenKind;
    EXPECT_EQ(kinds("Rxx(1.5, register[0], register[1]);"),
              (std::vector<K>{K::Identifier, K::LParen, K::DoubleLiteral, K::Comma, K::Identifier, K::LBracket,
                              K::IntLiteral, K::RBracket, K::Comma, K::Identifier, K::LBracket, K::IntLiteral,
                              K::RBracket, K::RParen, K::Semicolon, K::EndOfFile}));
    EXPECT_EQ(lexemes("Rxx(1.5, register[0], register[1]);")[2], "1.5");
}

TEST(Lexer, ShiftLeftBinding) {
    using K = TokenKind;
    EXPECT_EQ(kinds("let nItems = 1 <<< nQubits;"),
              (std::vector<K>{K::KwLet, K::Identifier, K::Assign, K::IntLiteral, K::ShiftLeft, K::Identifier,
                              K::Semicolon, K::EndOfFile}));
}

TEST(Lexer, AllOperatorsMunchLongest) {
    const std::vector<std::pair<std::string, TokenKind>> cases = {
        {"&&&", TokenKind::BitwiseAnd},   {"|||", TokenKind::BitwiseOr},       {"^^^", TokenKind::BitwiseXor},
        {"~~~", TokenKind::BitwiseNot},   {"<<<", TokenKind::ShiftLeft},       {">>>", TokenKind::ShiftRight},
        {"==", TokenKind::Equal},         {"!=", TokenKind::NotEqual},         {"<=", TokenKind::LessEqual},
        {">=", TokenKind::GreaterEqual},  {"=>", TokenKind::FatArrow},         {"->", TokenKind::Arrow},
        {"<-", TokenKind::LeftArrow},     {"w/", TokenKind::CopyUpdate},       {"w/=", TokenKind::CopyUpdateAssign},
        {"..", TokenKind::Range},         {"...", TokenKind::OpenRange},       {"<<<=", TokenKind::ShiftLeftAssign},
        {"&&&=", TokenKind::BitwiseAndAssign}, {"::", TokenKind::DoubleColon}, {"+=", TokenKind::PlusAssign},
    };
    for (const auto &[text, kind] : cases) {
        auto r = tokenize(text);
        ASSERT_EQ(r.tokens.size(), 2u) << text;
        EXPECT_EQ(r.tokens[0].kind, kind) << text;
        EXPECT_EQ(r.tokens[0].lexeme, text);
    }
}

TEST(Lexer, ClassifyWord) {
    EXPECT_EQ(classify_word("operation"), TokenKind::KwOperation);
    EXPECT_EQ(classify_word("outputQubit"), TokenKind::Identifier);
    EXPECT_EQ(classify_word("PauliX"), TokenKind::PauliLiteral);
    EXPECT_EQ(classify_word("Zero"), TokenKind::ResultLiteral);
    EXPECT_EQ(classify_word("true"), TokenKind::BoolLiteral);
    EXPECT_EQ(classify_word("Controlled"), TokenKind::KwControlled);
    EXPECT_EQ(classify_word("Qubit"), TokenKind::Identifier);
}

TEST(Lexer, CategoryPredicates) {
    EXPECT_TRUE(is_expression_token(TokenKind::BitwiseAnd));
    EXPECT_FALSE(is_expression_token(TokenKind::KwFunction));
    EXPECT_TRUE(is_expression_token(TokenKind::IntLiteral));
    EXPECT_TRUE(is_parameter_token(TokenKind::Identifier));
    EXPECT_FALSE(is_parameter_token(TokenKind::KwWhile));
    EXPECT_TRUE(is_parameter_token(TokenKind::OpenRange));
    EXPECT_FALSE(is_expression_token(TokenKind::Semicolon));
    EXPECT_FALSE(is_expression_token(TokenKind::LBrace));
}

TEST(Lexer, TrailingDotDouble) {
    auto r = tokenize("1. / x");
    EXPECT_EQ(r.tokens[0].kind, TokenKind::DoubleLiteral);
    EXPECT_EQ(r.tokens[0].lexeme, "1.");
}

TEST(Lexer, RangesAfterIntegers) {
    using K = TokenKind;
    EXPECT_EQ(kinds("1..3"), (std::vector<K>{K::IntLiteral, K::Range, K::IntLiteral, K::EndOfFile}));
    EXPECT_EQ(kinds("1..."), (std::vector<K>{K::IntLiteral, K::OpenRange, K::EndOfFile}));
    EXPECT_EQ(kinds("...2..."), (std::vector<K>{K::OpenRange, K::IntLiteral, K::OpenRange, K::EndOfFile}));
}

TEST(Lexer, NumericForms) {
    using K = TokenKind;
    EXPECT_EQ(kinds("0xFF 0b101 0o17 12L 1_000 1e-3 2.5e2"),
              (std::vector<K>{K::IntLiteral, K::IntLiteral, K::IntLiteral, K::BigIntLiteral, K::IntLiteral,
                              K::DoubleLiteral, K::DoubleLiteral, K::EndOfFile}));
}

TEST(Lexer, CommentKeepsLeadingSpace) {
    auto r = tokenize("// note\nX(q);");
    ASSERT_EQ(r.tokens[0].kind, TokenKind::Comment);
    EXPECT_EQ(r.tokens[0].lexeme, "// note");
    EXPECT_EQ(r.tokens[0].comment_text(), " note");
    EXPECT_EQ(r.tokens[1].span.line, 2u);
}

TEST(Lexer, StringLiterals) {
    auto r = tokenize(R"(fail "a \"b\" c";)");
    ASSERT_EQ(r.tokens[1].kind, TokenKind::StringLiteral);
    EXPECT_EQ(r.tokens[1].lexeme, R"("a \"b\" c")");
    auto i = tokenize(R"($"n = {n}")");
    EXPECT_EQ(i.tokens[0].kind, TokenKind::StringLiteral);
    EXPECT_TRUE(i.diagnostics.empty());
}

TEST(Lexer, UnterminatedStringReportsAndKeepsPrefix) {
    auto r = tokenize("let s = \"abc\nX(q);");
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_EQ(r.diagnostics[0].kind, DiagnosticKind::LexError);
    EXPECT_EQ(r.diagnostics[0].span.line, 1u);
    EXPECT_EQ(r.diagnostics[0].span.column, 9u);
    ASSERT_EQ(r.tokens.size(), 4u);
    EXPECT_EQ(r.tokens[2].kind, TokenKind::Assign);
    EXPECT_EQ(r.tokens.back().kind, TokenKind::EndOfFile);
}

TEST(Lexer, IllegalCharacter) {
    auto r = tokenize("X(q) # 1");
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_EQ(r.diagnostics[0].kind, DiagnosticKind::LexError);
    EXPECT_EQ(r.diagnostics[0].message, "illegal character '#'");
    EXPECT_EQ(r.diagnostics[0].span.column, 6u);
}

TEST(Lexer, SpansSliceTheSource) {
    std::string src = "operation F(q : Qubit) : Unit {\n    H(q); // x\n    let a = 1 <<< 2;\n}\n";
    auto r = tokenize(src);
    ASSERT_TRUE(r.diagnostics.empty());
    std::size_t last_end = 0;
    for (const auto &t : r.tokens) {
        if (t.kind == TokenKind::EndOfFile) {
            break;
        }
        EXPECT_LT(t.span.start_offset, t.span.end_offset);
        EXPECT_GE(t.span.start_offset, last_end);
        EXPECT_EQ(src.substr(t.span.start_offset, t.span.length()), t.lexeme);
        last_end = t.span.end_offset;
    }
}

TEST(Lexer, LineAndColumn) {
    auto r = tokenize("use q = Qubit();\n  H(q);");
    const auto &h = r.tokens[7];
    EXPECT_EQ(h.lexeme, "H");
    EXPECT_EQ(h.span.line, 2u);
    EXPECT_EQ(h.span.column, 3u);
}

TEST(Lexer, DumpFormat) {
    auto r = tokenize("&&&");
    EXPECT_EQ(dump_tokens(r.tokens), "BitwiseAnd\t&&&\t1:1\n");
    auto k = tokenize("let x");
    EXPECT_EQ(dump_tokens(k.tokens), "Keyword(let)\tlet\t1:1\nIdentifier\tx\t1:5\n");
}

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

#ifndef QSC_TOKEN_HPP
#define QSC_TOKEN_HPP

#include <string>
#include <string_view>

#include "qsc/diagnostics.hpp"

namespace qsc {

// X(enumerator, dump name)
#define QSC_TOKEN_KINDS(X)                         \
    /* keywords */                                 \
    X(KwOperation, "Keyword(operation)")           \
    X(KwFunction, "Keyword(function)")             \
    X(KwUse, "Keyword(use)")                       \
    X(KwBorrow, "Keyword(borrow)")                 \
    X(KwLet, "Keyword(let)")                       \
    X(KwMutable, "Keyword(mutable)")               \
    X(KwSet, "Keyword(set)")                       \
    X(KwIf, "Keyword(if)")                         \
    X(KwElif, "Keyword(elif)")                     \
    X(KwElse, "Keyword(else)")                     \
    X(KwFor, "Keyword(for)")                       \
    X(KwIn, "Keyword(in)")                         \
    X(KwWhile, "Keyword(while)")                   \
    X(KwRepeat, "Keyword(repeat)")                 \
    X(KwUntil, "Keyword(until)")                   \
    X(KwFixup, "Keyword(fixup)")                   \
    X(KwWithin, "Keyword(within)")                 \
    X(KwApply, "Keyword(apply)")                   \
    X(KwReturn, "Keyword(return)")                 \
    X(KwFail, "Keyword(fail)")                     \
    X(KwImport, "Keyword(import)")                 \
    X(KwOpen, "Keyword(open)")                     \
    X(KwNamespace, "Keyword(namespace)")           \
    X(KwStruct, "Keyword(struct)")                 \
    X(KwNewtype, "Keyword(newtype)")               \
    X(KwNew, "Keyword(new)")                       \
    X(KwIs, "Keyword(is)")                         \
    X(KwInternal, "Keyword(internal)")             \
    X(KwAdjoint, "Keyword(Adjoint)")               \
    X(KwControlled, "Keyword(Controlled)")         \
    X(KwAnd, "Keyword(and)")                       \
    X(KwOr, "Keyword(or)")                         \
    X(KwNot, "Keyword(not)")                       \
    /* bitwise */                                  \
    X(BitwiseAnd, "BitwiseAnd")                    \
    X(BitwiseOr, "BitwiseOr")                      \
    X(BitwiseXor, "BitwiseXor")                    \
    X(BitwiseNot, "BitwiseNot")                    \
    X(ShiftLeft, "ShiftLeft")                      \
    X(ShiftRight, "ShiftRight")                    \
    /* comparison */                               \
    X(Equal, "Equal")                              \
    X(NotEqual, "NotEqual")                        \
    X(Less, "Less")                                \
    X(LessEqual, "LessEqual")                      \
    X(Greater, "Greater")                          \
    X(GreaterEqual, "GreaterEqual")                \
    /* arithmetic */                               \
    X(Plus, "Plus")                                \
    X(Minus, "Minus")                              \
    X(Star, "Star")                                \
    X(Slash, "Slash")                              \
    X(Percent, "Percent")                          \
    X(Caret, "Caret")                              \
    /* assignment and arrows */                    \
    X(Assign, "Assign")                            \
    X(FatArrow, "FatArrow")                        \
    X(Arrow, "Arrow")                              \
    X(LeftArrow, "LeftArrow")                      \
    X(CopyUpdate, "CopyUpdate")                    \
    X(CopyUpdateAssign, "CopyUpdateAssign")        \
    X(PlusAssign, "PlusAssign")                    \
    X(MinusAssign, "MinusAssign")                  \
    X(StarAssign, "StarAssign")                    \
    X(SlashAssign, "SlashAssign")                  \
    X(PercentAssign, "PercentAssign")              \
    X(CaretAssign, "CaretAssign")                  \
    X(BitwiseAndAssign, "BitwiseAndAssign")        \
    X(BitwiseOrAssign, "BitwiseOrAssign")          \
    X(BitwiseXorAssign, "BitwiseXorAssign")        \
    X(ShiftLeftAssign, "ShiftLeftAssign")          \
    X(ShiftRightAssign, "ShiftRightAssign")        \
    /* range */                                    \
    X(Range, "Range")                              \
    X(OpenRange, "OpenRange")                      \
    /* delimiters and punctuation */               \
    X(LParen, "LParen")                            \
    X(RParen, "RParen")                            \
    X(LBracket, "LBracket")                        \
    X(RBracket, "RBracket")                        \
    X(LBrace, "LBrace")                            \
    X(RBrace, "RBrace")                            \
    X(Comma, "Comma")                              \
    X(Colon, "Colon")                              \
    X(Semicolon, "Semicolon")                      \
    X(Dot, "Dot")                                  \
    X(DoubleColon, "DoubleColon")                  \
    X(Question, "Question")                        \
    X(Pipe, "Pipe")                                \
    X(Bang, "Bang")                                \
    X(At, "At")                                    \
    /* literals */                                 \
    X(IntLiteral, "Int")                           \
    X(BigIntLiteral, "BigInt")                     \
    X(DoubleLiteral, "Double")                     \
    X(StringLiteral, "String")                     \
    X(BoolLiteral, "Bool")                         \
    X(PauliLiteral, "Pauli")                       \
    X(ResultLiteral, "Result")                     \
    /* misc */                                     \
    X(Identifier, "Identifier")                    \
    X(Comment, "Comment")                          \
    X(EndOfFile, "EndOfFile")

enum class TokenKind {
#define QSC_TOKEN_ENUM(name, text) name,
    QSC_TOKEN_KINDS(QSC_TOKEN_ENUM)
#undef QSC_TOKEN_ENUM
};

inline constexpr std::size_t kTokenKindCount = static_cast<std::size_t>(TokenKind::EndOfFile) + 1;

std::string_view token_kind_name(TokenKind kind);

bool is_keyword(TokenKind kind);
bool is_literal(TokenKind kind);

struct Token {
    TokenKind kind = TokenKind::EndOfFile;
    std::string lexeme;
    SourceSpan span;

    /// For comments, the text after `//` (leading whitespace preserved).
    std::string_view comment_text() const;

    bool operator==(const Token &) const = default;
};

}  // namespace qsc

#endif

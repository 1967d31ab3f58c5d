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

#include <fstream>
#include <gtest/gtest.h>
#include <set>
#include <sstream>

#include "qsc/ast_json.hpp"
#include "qsc/lexer.hpp"

using namespace qsc;

namespace {

std::string read_file(const std::string &name) {
    std::ifstream in(std::string(QSC_TEST_DATA) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ParseResult parse(std::string_view src) {
    auto lexed = tokenize(src);
    EXPECT_TRUE(lexed.diagnostics.empty());
    return parse_program(lexed.tokens);
}

const NodeList &nodes(const ParseResult &r) {
    return std::get<Program>(r.program.node).nodes;
}

std::vector<DiagnosticKind> kinds(const ParseResult &r) {
    std::vector<DiagnosticKind> out;
    for (const auto &d : r.diagnostics) {
        out.push_back(d.kind);
    }
    return out;
}

}  // namespace

TEST(Parser, SingleQubitAllocation) {
    auto r = parse("use q = Qubit();");
    ASSERT_TRUE(r.diagnostics.empty());
    ASSERT_EQ(nodes(r).size(), 1u);
    EXPECT_EQ(to_json(nodes(r)[0]).dump(),
              R"({"name":{"repr":"q","val":"q"},"qubits":{"repr":"q","name":"q","length":{"repr":"1","val":1}}})");
}

TEST(Parser, RegisterAndBorrow) {
    auto r = parse("use register = Qubit[2];\nborrow b = Qubit[4];");
    ASSERT_EQ(nodes(r).size(), 2u);
    const auto *a = nodes(r)[0].as<QubitAllocation>();
    ASSERT_NE(a, nullptr);
    EXPECT_TRUE(a->is_array);
    EXPECT_EQ(repr_of(a->length), "2");
    const auto *b = nodes(r)[1].as<QubitAllocation>();
    EXPECT_EQ(b->kind, AllocationKind::Borrow);
    EXPECT_EQ(repr_of(b->length), "4");
}

TEST(Parser, EmptyProgram) {
    auto r = parse("");
    EXPECT_TRUE(nodes(r).empty());
    EXPECT_TRUE(r.diagnostics.empty());
}

TEST(Parser, GateStatements) {
    auto r = parse("X(q);\n// note\nControlled X(inputQubits, outputQubit);\nI(q);");
    ASSERT_TRUE(r.diagnostics.empty());
    ASSERT_EQ(nodes(r).size(), 4u);
    EXPECT_EQ(to_json(nodes(r)[0]).dump(), R"({"target":{"repr":"q","id":"q"}})");
    EXPECT_EQ(nodes(r)[1].as<Comment>()->val, " note");
    const auto *cx = nodes(r)[2].as<ControlledGate>();
    ASSERT_NE(cx, nullptr);
    EXPECT_EQ(cx->op, SingleQubitOp::X);
    EXPECT_EQ(repr_of(cx->control), "inputQubits");
    EXPECT_EQ(repr_of(cx->target), "outputQubit");
    EXPECT_EQ(nodes(r)[3].as<SingleQubitGate>()->op, SingleQubitOp::I);
}

TEST(Parser, IsingAndMeasure) {
    auto r = parse("Rxx(1.5, register[0], register[1]);\nMeasure([PauliX], [q]);");
    ASSERT_TRUE(r.diagnostics.empty());
    const auto *rxx = nodes(r)[0].as<IsingGate>();
    ASSERT_NE(rxx, nullptr);
    EXPECT_EQ(repr_of(rxx->rads), "1.5");
    EXPECT_EQ(repr_of(rxx->qubit0), "register[0]");
    EXPECT_EQ(repr_of(rxx->qubit1), "register[1]");
    const auto *m = nodes(r)[1].as<MeasureGate>();
    ASSERT_NE(m, nullptr);
    EXPECT_EQ(std::get<PauliLiteral>(m->basis).val, Pauli::X);
    ASSERT_EQ(m->qubits.size(), 1u);
    EXPECT_EQ(repr_of(m->qubits[0]), "q");
}

TEST(Parser, AdjointFlagsIntrinsic) {
    auto r = parse("Adjoint S(q);\nAdjoint Adjoint T(q);\nAdjoint Rz(0.5, q);");
    EXPECT_TRUE(nodes(r)[0].as<SingleQubitGate>()->adjoint);
    EXPECT_FALSE(nodes(r)[1].as<SingleQubitGate>()->adjoint);
    EXPECT_TRUE(nodes(r)[2].as<RotationGate>()->adjoint);
}

TEST(Parser, UnknownCallIsNonIntrinsic) {
    auto r = parse("ApplyToEach(H, qs);\nAdjoint Prepare(qs);");
    ASSERT_TRUE(r.diagnostics.empty());
    const auto *call = nodes(r)[0].as<NonIntrinsicCall>();
    ASSERT_NE(call, nullptr);
    EXPECT_EQ(call->name, "ApplyToEach");
    EXPECT_EQ(call->params.size(), 2u);
    EXPECT_EQ(nodes(r)[1].as<NonIntrinsicCall>()->functors, std::vector<std::string>{"Adjoint"});
}

TEST(Parser, ExpressionShapes) {
    auto r = parse("let a = Round(0.25 * PI() / angle - 0.5);\nlet b = x;");
    ASSERT_TRUE(r.diagnostics.empty());
    const auto &e = nodes(r)[0].as<LetBinding>()->expression;
    ASSERT_EQ(e.elements.size(), 1u);
    const auto &call = std::get<FunctionCall>(e.elements[0]);
    ASSERT_EQ(call.params.size(), 1u);
    EXPECT_EQ(call.params[0][0].elements.size(), 7u);
    EXPECT_EQ(call.repr, "Round(0.25*PI()/angle-0.5, )");
    const auto &pi = std::get<FunctionCall>(call.params[0][0].elements[2]);
    EXPECT_TRUE(pi.params.empty());
    EXPECT_EQ(nodes(r)[1].as<LetBinding>()->expression.repr, "x");
}

TEST(Parser, BoundNamesBecomeVariables) {
    auto r = parse("let n = 3;\nlet m = n + k;");
    const auto &e = nodes(r)[1].as<LetBinding>()->expression;
    EXPECT_TRUE(std::holds_alternative<VariableRef>(e.elements[0]));
    EXPECT_TRUE(std::holds_alternative<IdentifierRef>(e.elements[2]));
}

TEST(Parser, ParametersOfCall) {
    auto r = parse("Rzz(8.5, register[0], register[1]);");
    const auto *rzz = nodes(r)[0].as<IsingGate>();
    ASSERT_NE(rzz, nullptr);
    EXPECT_EQ(repr_of(rzz->rads), "8.5");
}

TEST(Parser, Scopes) {
    auto r = parse("within { } apply { }\nwithin { X(q); } apply { H(q); }");
    ASSERT_TRUE(r.diagnostics.empty());
    const auto *empty = nodes(r)[0].as<Conjugation>();
    EXPECT_TRUE(empty->within.empty());
    EXPECT_TRUE(empty->applies.empty());
    const auto *c = nodes(r)[1].as<Conjugation>();
    ASSERT_EQ(c->within.size(), 1u);
    EXPECT_NE(c->within[0].as<SingleQubitGate>(), nullptr);
    ASSERT_EQ(c->applies.size(), 1u);
    EXPECT_EQ(c->applies[0].as<SingleQubitGate>()->op, SingleQubitOp::H);
}

TEST(Parser, Loops) {
    auto r = parse("for q in inputQubits[...2...] { X(q); }\nwhile false { }\nfor i in 0..3 { }\n"
                   "repeat { H(q); } until M(q) == Zero fixup { X(q); }");
    ASSERT_TRUE(r.diagnostics.empty()) << r.diagnostics[0].message;
    const auto *f = nodes(r)[0].as<ForLoop>();
    EXPECT_EQ(f->variable.name, "q");
    EXPECT_EQ(f->iterable.repr, "inputQubits[...2...]");
    EXPECT_EQ(f->inside.size(), 1u);
    const auto *w = nodes(r)[1].as<WhileLoop>();
    EXPECT_EQ(w->condition.repr, "false");
    EXPECT_TRUE(w->inside.empty());
    const auto *g = nodes(r)[2].as<ForLoop>();
    const auto &range = std::get<Range>(g->iterable.elements[0]);
    EXPECT_EQ(repr_of(**range.lower), "0");
    EXPECT_EQ(repr_of(**range.upper), "3");
    const auto *rep = nodes(r)[3].as<RepeatUntilFixup>();
    EXPECT_EQ(rep->condition.repr, "M(q, )==Zero");
    ASSERT_TRUE(rep->fixup.has_value());
    EXPECT_EQ(rep->fixup->size(), 1u);
}

TEST(Parser, Bindings) {
    auto r = parse("mutable x = 1;\nset x += 2;\nset x = 3;\nreturn x;\nfail \"bad\";\n"
                   "if x > 1 { X(q); } elif x == 0 { } else { H(q); }");
    ASSERT_TRUE(r.diagnostics.empty());
    EXPECT_NE(nodes(r)[0].as<MutableBinding>(), nullptr);
    EXPECT_EQ(nodes(r)[1].as<SetAssignment>()->op, "+=");
    EXPECT_EQ(nodes(r)[3].as<ReturnStatement>()->expr.repr, "x");
    EXPECT_EQ(nodes(r)[4].as<FailStatement>()->msg.val, "bad");
    const auto *i = nodes(r)[5].as<IfStatement>();
    EXPECT_EQ(i->condition.repr, "x>1");
    EXPECT_EQ(i->elif_clauses.size(), 1u);
    ASSERT_TRUE(i->else_clause.has_value());
}

TEST(Parser, NamespaceIsTransparent) {
    auto r = parse("namespace A.B {\n  open Microsoft.Quantum.Math;\n  function F() : Unit { }\n}");
    ASSERT_TRUE(r.diagnostics.empty());
    ASSERT_EQ(nodes(r).size(), 2u);
    EXPECT_EQ(nodes(r)[0].as<ImportStatement>()->path, "Microsoft.Quantum.Math");
    EXPECT_EQ(nodes(r)[1].as<CallableDecl>()->name, "F");
}

TEST(Parser, CallableSignature) {
    auto r = parse("@EntryPoint()\noperation Op(qs : Qubit[], f : (Qubit[] => Unit)) : Result[] is Adj + Ctl { }");
    ASSERT_TRUE(r.diagnostics.empty());
    const auto *op = nodes(r)[0].as<CallableDecl>();
    EXPECT_TRUE(op->entry_point);
    ASSERT_EQ(op->signature.size(), 2u);
    EXPECT_EQ(op->signature[0].type, "Qubit[]");
    EXPECT_EQ(op->signature[1].type, "(Qubit[] => Unit)");
    EXPECT_EQ(op->return_type, std::optional<std::string>("Result[]"));
    EXPECT_EQ(op->modifiers, (std::vector<std::string>{"Adj", "Ctl"}));
    EXPECT_EQ(to_json(op->params[0][0]).dump(), R"({"repr":"qs","elements":[{"repr":"qs","id":"qs"}]})");
}

TEST(Parser, EmptyFunction) {
    auto r = parse("function Id() : Unit {}");
    const auto *f = nodes(r)[0].as<CallableDecl>();
    EXPECT_EQ(f->kind, CallableKind::Function);
    EXPECT_TRUE(f->params.empty());
    EXPECT_TRUE(f->nodes.empty());
    EXPECT_FALSE(f->return_type.has_value());
}

TEST(Parser, ReflectAboutMarkedTree) {
    auto r = parse(read_file("reflect_about_marked.qs"));
    ASSERT_TRUE(r.diagnostics.empty());
    ASSERT_EQ(nodes(r).size(), 1u);
    auto expected = Json::parse(read_file("reflect_about_marked.json"));
    EXPECT_EQ(to_json(nodes(r)[0]), expected);
    const auto *conj = nodes(r)[0].as<CallableDecl>()->nodes[1].as<Conjugation>();
    EXPECT_EQ(conj->within.size(), 8u);
    EXPECT_EQ(conj->applies.size(), 1u);
}

TEST(Parser, CalculateOptimalIterationsReprs) {
    auto r = parse(read_file("calculate_optimal_iterations.qs"));
    ASSERT_TRUE(r.diagnostics.empty());
    std::set<std::string> reprs;
    for (const auto &n : nodes(r)) {
        for (const auto &inner : n.as<CallableDecl>()->nodes) {
            for_each_expression(inner, [&](const Expression &e) { reprs.insert(e.repr); });
        }
    }
    for (const char *want : {"nQubits>63", "1<<<nQubits", "ArcSin(1/Sqrt(IntAsDouble(nItems, ), ), )",
                             "Round(0.25*PI()/angle-0.5, )", "iterations"}) {
        EXPECT_TRUE(reprs.count(want)) << want;
    }
}

TEST(Parser, BlankLinesAreRecorded) {
    auto r = parse("X(q);\n\n// c\nH(q);");
    EXPECT_FALSE(nodes(r)[0].blank_line_before);
    EXPECT_TRUE(nodes(r)[1].blank_line_before);
    EXPECT_FALSE(nodes(r)[2].blank_line_before);
}

TEST(ParserErrors, MissingIn) {
    auto r = parse("for q inputQubits { }");
    EXPECT_EQ(kinds(r), std::vector<DiagnosticKind>{DiagnosticKind::UnexpectedToken});
}

TEST(ParserErrors, MissingApply) {
    auto r = parse("within { X(q); } H(q);");
    ASSERT_FALSE(r.diagnostics.empty());
    EXPECT_EQ(r.diagnostics[0].kind, DiagnosticKind::MissingApply);
}

TEST(ParserErrors, UnbalancedScope) {
    auto r = parse("operation F() : Unit {\n  X(q);\n");
    EXPECT_EQ(kinds(r), std::vector<DiagnosticKind>{DiagnosticKind::UnbalancedScope});
}

TEST(ParserErrors, EmptyExpression) {
    auto r = parse("let x = ;\nX(q);");
    EXPECT_EQ(kinds(r), std::vector<DiagnosticKind>{DiagnosticKind::EmptyExpression});
    ASSERT_EQ(nodes(r).size(), 1u);
    EXPECT_NE(nodes(r)[0].as<SingleQubitGate>(), nullptr);
}

TEST(ParserErrors, UnbalancedDelimiter) {
    EXPECT_EQ(kinds(parse("let x = (1 + 2;")), std::vector<DiagnosticKind>{DiagnosticKind::UnbalancedDelimiter});
    EXPECT_EQ(kinds(parse("let x = 1 + 2);")), std::vector<DiagnosticKind>{DiagnosticKind::UnbalancedDelimiter});
    EXPECT_EQ(kinds(parse("H(q;")), std::vector<DiagnosticKind>{DiagnosticKind::UnbalancedDelimiter});
}

TEST(ParserErrors, BadGateArity) {
    auto r = parse("Rxx(1.5, q);\nCNOT(a);\nH(1);\nX(q);");
    EXPECT_EQ(kinds(r), (std::vector<DiagnosticKind>{DiagnosticKind::BadArgument, DiagnosticKind::BadArgument,
                                                     DiagnosticKind::BadArgument}));
    ASSERT_EQ(nodes(r).size(), 1u);
}

TEST(ParserErrors, NestedControlled) {
    auto r = parse("Controlled Controlled X(a, (b, c));");
    ASSERT_EQ(r.diagnostics.size(), 1u);
    EXPECT_EQ(r.diagnostics[0].kind, DiagnosticKind::UnexpectedToken);
}

TEST(ParserErrors, RecoveryContinuesAfterBlock) {
    auto r = parse("operation F() : Unit { let = 3; X(q); }\nH(q);");
    EXPECT_EQ(kinds(r), std::vector<DiagnosticKind>{DiagnosticKind::UnexpectedToken});
    ASSERT_EQ(nodes(r).size(), 2u);
    EXPECT_EQ(nodes(r)[0].as<CallableDecl>()->nodes.size(), 1u);
    EXPECT_NE(nodes(r)[1].as<SingleQubitGate>(), nullptr);
}

TEST(ParserErrors, FailNeedsString) {
    auto r = parse("fail 3;");
    EXPECT_EQ(kinds(r), std::vector<DiagnosticKind>{DiagnosticKind::UnexpectedToken});
}

TEST(ParserErrors, StrayClosingBrace) {
    auto r = parse("X(q); } H(q);");
    EXPECT_EQ(kinds(r), std::vector<DiagnosticKind>{DiagnosticKind::UnexpectedToken});
    EXPECT_EQ(nodes(r).size(), 2u);
}

TEST(ParserScope, ChildSeesParentSymbols) {
    std::vector<Diagnostic> diags;
    auto lexed = tokenize("let a = 1; { let b = a; }");
    Parser parser(lexed.tokens, diags);
    auto out = parser.parse_all();
    ASSERT_EQ(out.size(), 2u);
    const auto &inner = out[1].as<LetBinding>()->expression;
    EXPECT_TRUE(std::holds_alternative<VariableRef>(inner.elements[0]));
    EXPECT_NE(parser.lookup("a"), nullptr);
    EXPECT_EQ(parser.lookup("b"), nullptr);
}

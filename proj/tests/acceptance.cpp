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

// Acceptance checks. Prints one [PASS]/[FAIL] line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>

#include "qsc/ast_json.hpp"
#include "qsc/driver.hpp"
#include "support/oracles.hpp"

using namespace qsc;
using namespace oracle;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

NodeList &top_nodes(AstNode &program) {
    return std::get<Program>(program.node).nodes;
}

Outcome golden_lowering() {
    auto t = Clock::now();
    DriverConfig config;
    config.no_prelude = true;
    auto result = run_pipeline(read_data("ising_demo.qs"), config);
    double elapsed = ms_since(t);
    if (result.artifact != read_data("ising_demo.qasm")) {
        return {false, "output differs from golden listing"};
    }
    if (elapsed >= 1000) {
        return {false, "took " + std::to_string(elapsed) + " ms"};
    }
    return {true, "byte-identical"};
}

Outcome golden_ast() {
    auto parsed = parse_program(tokenize(read_data("reflect_about_marked.qs")).tokens);
    if (!parsed.diagnostics.empty() || top_nodes(parsed.program).size() != 1) {
        return {false, "source did not parse to a single operation"};
    }
    auto got = to_json(top_nodes(parsed.program)[0]);
    auto want = Json::parse(read_data("reflect_about_marked.json"));
    if (got != want) {
        return {false, "tree differs from golden listing"};
    }
    return {true, "structurally equal"};
}

Outcome golden_reprs() {
    auto parsed = parse_program(tokenize(read_data("calculate_optimal_iterations.qs")).tokens);
    std::set<std::string> reprs;
    for (const auto &callable : top_nodes(parsed.program)) {
        if (const auto *decl = callable.as<CallableDecl>()) {
            for (const auto &n : decl->nodes) {
                for_each_expression(n, [&](const Expression &e) { reprs.insert(e.repr); });
            }
        }
    }
    for (const char *want : {"nQubits>63", "1<<<nQubits", "ArcSin(1/Sqrt(IntAsDouble(nItems, ), ), )",
                             "Round(0.25*PI()/angle-0.5, )", "iterations"}) {
        if (!reprs.count(want)) {
            return {false, std::string("missing ") + want};
        }
    }
    return {true, "all five present"};
}

Outcome width_table() {
    struct Row {
        TypeTag ty;
        BigInt max;
        std::optional<std::string> want;
    };
    const std::vector<Row> rows = {
        {TypeTag::Int, 127, "int[8]"},
        {TypeTag::Int, 128, "int[16]"},
        {TypeTag::Int, 32767, "int[16]"},
        {TypeTag::Int, 32768, "int[32]"},
        {TypeTag::Int, 2147483647, "int[32]"},
        {TypeTag::Int, BigInt(2147483648LL), "int[64]"},
        {TypeTag::BigInt, BigInt(1) << 64, "int"},
        {TypeTag::Double, 0, "float"},
        {TypeTag::Bool, 0, "bool"},
        {TypeTag::Qubit, 0, "qubit"},
    };
    for (const auto &row : rows) {
        if (infer_width(row.ty, row.max) != row.want) {
            return {false, "wrong width for " + row.max.str()};
        }
    }
    return {true, "10 rows"};
}

std::string lower(const std::string &src, std::vector<Diagnostic> *diags = nullptr) {
    auto parsed = parse_program(tokenize(src).tokens);
    auto r = compile(parsed.program, {false, false});
    if (diags) {
        *diags = r.diagnostics;
    }
    return r.qasm;
}

Outcome measure_lowering() {
    const std::string alloc = "use q0 = Qubit();\nuse q1 = Qubit();\n";
    const std::string header = "qubit q0;\nqubit q1;\n";
    if (lower(alloc + "Measure([PauliX], [q0, q1]);") !=
        header + "h q0;\nh q1;\nmeasure q0 -> c[0];\nmeasure q1 -> c[1];\n") {
        return {false, "PauliX"};
    }
    if (lower(alloc + "Measure([PauliY], [q1]);") != header + "sdg q1;\nh q1;\nmeasure q1 -> c[1];\n") {
        return {false, "PauliY"};
    }
    if (lower(alloc + "Measure([PauliZ], [q0]);") != header + "measure q0 -> c[0];\n") {
        return {false, "PauliZ"};
    }
    std::vector<Diagnostic> diags;
    lower(alloc + "Measure([PauliI], [q0]);", &diags);
    if (diags.size() != 1 || diags[0].kind != DiagnosticKind::BadArgument || diags[0].severity != Severity::Error) {
        return {false, "non-Pauli basis not rejected"};
    }
    return {true, "X, Y, Z, and rejection"};
}

Outcome unitary_equivalence() {
    int checked = 0;
    for (char p : {'X', 'Y', 'Z'}) {
        for (double theta : kAngles) {
            std::string src = ising_call(p, theta);
            if (!equivalent(simulate(emit(src), {"a", "b"}), ising(p, theta))) {
                return {false, src};
            }
            ++checked;
        }
    }
    return {true, std::to_string(checked) + " sequences within 1e-9"};
}

void walk(const AstNode &node, const std::function<void(const AstNode &)> &fn) {
    fn(node);
    std::visit(
        [&](const auto &v) {
            using T = std::decay_t<decltype(v)>;
            auto each = [&](const NodeList &list) {
                for (const auto &n : list) {
                    walk(n, fn);
                }
            };
            if constexpr (std::is_same_v<T, Program> || std::is_same_v<T, CallableDecl>) {
                each(v.nodes);
            } else if constexpr (std::is_same_v<T, Conjugation>) {
                each(v.within);
                each(v.applies);
            } else if constexpr (std::is_same_v<T, ForLoop> || std::is_same_v<T, WhileLoop>) {
                each(v.inside);
            } else if constexpr (std::is_same_v<T, IfStatement>) {
                each(v.if_clause);
                for (const auto &e : v.elif_clauses) {
                    each(e.clause);
                }
                if (v.else_clause) {
                    each(*v.else_clause);
                }
            } else if constexpr (std::is_same_v<T, RepeatUntilFixup>) {
                each(v.body);
                if (v.fixup) {
                    each(*v.fixup);
                }
            }
        },
        node.node);
}

std::string nesting(std::mt19937 &rng, int depth) {
    std::uniform_int_distribution<int> count(0, 3);
    std::uniform_int_distribution<int> pick(0, depth > 4 ? 0 : 2);
    std::string out;
    for (int i = count(rng); i > 0; --i) {
        switch (pick(rng)) {
            case 0:
                out += "X(q);\n";
                break;
            case 1:
                out += "{\n" + nesting(rng, depth + 1) + "}\n";
                break;
            default:
                out += "if c {\n" + nesting(rng, depth + 1) + "}\n";
                break;
        }
    }
    return out;
}

Outcome properties() {
    // Maximal munch against the longest-prefix splitter.
    std::mt19937 rng(424242);
    std::vector<std::string> pool(kOperatorLexemes.begin(), kOperatorLexemes.end());
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    int munch = 0;
    while (munch < 1000) {
        std::string s;
        for (int i = 0; i < 6; ++i) {
            s += pool[pick(rng)];
        }
        if (s.find("//") != std::string::npos) {
            continue;
        }
        auto lexed = tokenize(s);
        std::vector<std::string> got;
        std::string rebuilt;
        for (const auto &t : lexed.tokens) {
            if (t.kind != TokenKind::EndOfFile) {
                got.push_back(t.lexeme);
                rebuilt += s.substr(t.span.start_offset, t.span.length());
            }
        }
        if (!lexed.diagnostics.empty() || got != oracle_split(s) || rebuilt != s) {
            return {false, "munch/round-trip mismatch on " + s};
        }
        ++munch;
    }

    // Repr compositionality over the corpus.
    int exprs = 0;
    for (const char *name : {"ising_demo.qs", "grover.qs", "reflect_about_marked.qs", "calculate_optimal_iterations.qs"}) {
        auto parsed = parse_program(tokenize(read_data(name)).tokens);
        bool ok = parsed.diagnostics.empty();
        walk(parsed.program, [&](const AstNode &n) {
            for_each_expression(n, [&](const Expression &e) {
                ok = ok && compositional(e);
                ++exprs;
            });
        });
        if (!ok) {
            return {false, std::string("repr not compositional in ") + name};
        }
    }

    // Scope balance and parser progress over random nestings.
    for (int round = 0; round < 300; ++round) {
        std::string src = nesting(rng, 0);
        auto lexed = tokenize(src);
        if (!parse_program(lexed.tokens).diagnostics.empty()) {
            return {false, "balanced nesting rejected"};
        }
        auto brace = src.find_last_of("{}");
        if (brace == std::string::npos) {
            continue;
        }
        src.erase(brace, 1);
        auto broken = tokenize(src);
        auto parsed = parse_program(broken.tokens);
        if (parsed.diagnostics.empty() || parsed.diagnostics.size() > broken.tokens.size()) {
            return {false, "unbalanced nesting not reported"};
        }
    }

    // Determinism.
    auto src = read_data("grover.qs");
    auto a = parse_program(tokenize(src).tokens);
    auto b = parse_program(tokenize(src).tokens);
    if (serialize_ast(a.program) != serialize_ast(b.program) || compile(a.program).qasm != compile(b.program).qasm) {
        return {false, "non-deterministic output"};
    }
    return {true, std::to_string(munch) + " munch cases, " + std::to_string(exprs) + " exprs, 300 nestings"};
}

Outcome performance() {
    auto src = read_data("grover.qs");
    constexpr int kRuns = 51;
    std::vector<double> lex, parse, comp, total;
    for (int i = 0; i < kRuns; ++i) {
        auto r = run_pipeline(src, DriverConfig{});
        if (has_errors(r.diagnostics)) {
            return {false, "Grover sample did not compile"};
        }
        lex.push_back(r.timings.lexing);
        parse.push_back(r.timings.parsing);
        comp.push_back(r.timings.compilation);
        total.push_back(r.timings.total);
    }
    auto median = [](std::vector<double> v) {
        std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
        return v[v.size() / 2];
    };
    double l = median(lex), p = median(parse), c = median(comp), t = median(total);
    double worst = *std::max_element(total.begin(), total.end());
    char buf[160];
    std::snprintf(buf, sizeof buf, "median lex %.3f, parse %.3f, compile %.3f, total %.3f ms (worst %.3f)", l, p, c,
                  t, worst);
    if (worst >= 100) {
        return {false, buf};
    }
    if (!(p > l && p > c)) {
        return {false, std::string("parse is not the largest stage: ") + buf};
    }
    return {true, buf};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"AC1 golden lowering", golden_lowering},
        {"AC2 golden AST", golden_ast},
        {"AC3 golden reprs", golden_reprs},
        {"AC4 width inference", width_table},
        {"AC5 measure lowering", measure_lowering},
        {"AC6 unitary equivalence", unitary_equivalence},
        {"AC7 property suites", properties},
        {"AC8 performance envelope", performance},
    };
    int failed = 0;
    for (const auto &[name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %s: %s\n", o.ok ? "PASS" : "FAIL", name, o.detail.c_str());
        failed += !o.ok;
    }
    return failed == 0 ? 0 : 1;
}

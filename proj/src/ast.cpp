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

#include "qsc/ast.hpp"

#include <charconv>

namespace qsc {

const std::string &repr_of(const Parameter &p) {
    return std::visit([](const auto &v) -> const std::string & { return v.repr; }, p);
}

const std::string &repr_of(const Expression &e) {
    return e.repr;
}

std::string canonical_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

std::string_view pauli_name(Pauli p) {
    switch (p) {
        case Pauli::I:
            return "PauliI";
        case Pauli::X:
            return "PauliX";
        case Pauli::Y:
            return "PauliY";
        case Pauli::Z:
            return "PauliZ";
    }
    return "PauliI";
}

Parameter make_identifier(std::string id) {
    std::string repr = id;
    return IdentifierRef{std::move(id), std::move(repr)};
}

Parameter make_variable(std::string name) {
    std::string repr = name;
    return VariableRef{std::move(name), std::move(repr)};
}

Parameter make_int(std::int64_t value) {
    return IntLiteral{value, std::to_string(value)};
}

Parameter make_bigint(BigInt value) {
    std::string repr = value.str();
    return BigIntLiteral{std::move(value), std::move(repr)};
}

Parameter make_double(double value) {
    return DoubleLiteral{value, canonical_double(value)};
}

Parameter make_string(std::string quoted_lexeme) {
    std::string_view body = quoted_lexeme;
    if (body.starts_with('$')) {
        body.remove_prefix(1);
    }
    if (body.size() >= 2 && body.front() == '"' && body.back() == '"') {
        body = body.substr(1, body.size() - 2);
    }
    return StringLiteral{std::string(body), std::move(quoted_lexeme)};
}

Parameter make_bool(bool value) {
    return BoolLiteral{value, value ? "true" : "false"};
}

Parameter make_pauli(Pauli value) {
    return PauliLiteral{value, std::string(pauli_name(value))};
}

Parameter make_result(ResultValue value) {
    return ResultLiteral{value, value == ResultValue::One ? "One" : "Zero"};
}

Parameter make_operator(std::string symbol) {
    return OperatorAtom{std::move(symbol)};
}

Parameter make_call(std::string name, ParamGroups params) {
    std::string repr = name + "(";
    for (const auto &group : params) {
        for (const auto &e : group) {
            repr += e.repr;
        }
        repr += ", ";
    }
    repr += ")";
    return FunctionCall{std::move(name), std::move(params), std::move(repr)};
}

Parameter make_index(std::string instance, Expression index) {
    std::string repr = instance + "[" + index.repr + "]";
    return IndexAccess{std::move(instance), Box<Expression>(std::move(index)), std::move(repr)};
}

Parameter make_index(std::string instance, Range index) {
    std::string repr = instance + "[" + index.repr + "]";
    return IndexAccess{std::move(instance), std::move(index), std::move(repr)};
}

Range make_range(std::optional<Expression> lower, std::optional<Expression> step, std::optional<Expression> upper) {
    // `...` stands for `..` next to an omitted bound.
    std::string repr;
    if (lower) {
        repr += lower->repr;
    }
    if (step) {
        repr += lower ? ".." : "...";
        repr += step->repr;
        repr += upper ? ".." : "...";
    } else {
        repr += (lower && upper) ? ".." : "...";
    }
    if (upper) {
        repr += upper->repr;
    }
    Range r;
    if (lower) {
        r.lower.emplace(std::move(*lower));
    }
    if (step) {
        r.step.emplace(std::move(*step));
    }
    if (upper) {
        r.upper.emplace(std::move(*upper));
    }
    r.repr = std::move(repr);
    return r;
}

Parameter make_subexpression(Expression inner, bool parenthesized) {
    std::string repr = parenthesized ? "(" + inner.repr + ")" : inner.repr;
    return SubExpression{Box<Expression>(std::move(inner)), parenthesized, std::move(repr)};
}

Parameter make_array(std::vector<Expression> items) {
    std::string repr = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) {
            repr += ",";
        }
        repr += items[i].repr;
    }
    repr += "]";
    return ArrayLiteral{std::move(items), std::move(repr)};
}

Expression make_expression(std::vector<Parameter> elements) {
    std::string repr;
    for (const auto &p : elements) {
        repr += repr_of(p);
    }
    return Expression{std::move(elements), std::move(repr)};
}

Parameter as_parameter(Expression e) {
    if (e.elements.size() == 1) {
        return std::move(e.elements.front());
    }
    return make_subexpression(std::move(e), false);
}

std::string_view op_name(SingleQubitOp op) {
    constexpr std::string_view names[] = {"X", "Y", "Z", "H", "S", "T", "I"};
    return names[static_cast<int>(op)];
}

std::string_view op_name(TwoQubitOp op) {
    constexpr std::string_view names[] = {"CNOT", "CZ", "SWAP"};
    return names[static_cast<int>(op)];
}

std::string_view op_name(RotationOp op) {
    constexpr std::string_view names[] = {"Rx", "Ry", "Rz", "R1"};
    return names[static_cast<int>(op)];
}

std::string_view op_name(IsingOp op) {
    constexpr std::string_view names[] = {"Rxx", "Ryy", "Rzz"};
    return names[static_cast<int>(op)];
}

std::string_view node_kind_name(const AstNode &node) {
    constexpr std::string_view names[] = {
        "Program",          "Comment",         "CallableDecl",     "QubitAllocation", "Conjugation",
        "ForLoop",          "WhileLoop",       "RepeatUntilFixup", "If",              "LetBinding",
        "MutableBinding",   "SetAssignment",   "Return",           "Fail",            "Import",
        "Struct",           "SingleQubitGate", "ControlledGate",   "TwoQubitGate",    "CCNOT",
        "Rotation",         "R",               "RFrac",            "R1Frac",          "IsingRotation",
        "Measure",          "M",               "Reset",            "ResetAll",        "ArbitraryUnitary",
        "NonIntrinsicCall",
    };
    static_assert(std::size(names) == std::variant_size_v<NodeVariant>);
    return names[node.node.index()];
}

namespace {

using ExprFn = std::function<void(const Expression &)>;

void walk(const Expression &e, const ExprFn &fn);

void walk(const Parameter &p, const ExprFn &fn) {
    if (auto *call = std::get_if<FunctionCall>(&p)) {
        for (const auto &group : call->params) {
            for (const auto &e : group) {
                walk(e, fn);
            }
        }
    } else if (auto *index = std::get_if<IndexAccess>(&p)) {
        if (auto *e = std::get_if<Box<Expression>>(&index->index)) {
            walk(**e, fn);
        } else {
            walk(Parameter(std::get<Range>(index->index)), fn);
        }
    } else if (auto *range = std::get_if<Range>(&p)) {
        for (const auto *bound : {&range->lower, &range->step, &range->upper}) {
            if (*bound) {
                walk(***bound, fn);
            }
        }
    } else if (auto *sub = std::get_if<SubExpression>(&p)) {
        walk(*sub->inner, fn);
    } else if (auto *array = std::get_if<ArrayLiteral>(&p)) {
        for (const auto &e : array->items) {
            walk(e, fn);
        }
    }
}

void walk(const Expression &e, const ExprFn &fn) {
    fn(e);
    for (const auto &p : e.elements) {
        walk(p, fn);
    }
}

void walk(const NodeList &nodes, const ExprFn &fn) {
    for (const auto &n : nodes) {
        for_each_expression(n, fn);
    }
}

void walk(const ParamGroups &groups, const ExprFn &fn) {
    for (const auto &group : groups) {
        for (const auto &e : group) {
            walk(e, fn);
        }
    }
}

template <class... Ts>
void walk_all(const ExprFn &fn, const Ts &...items) {
    (walk(items, fn), ...);
}

}  // namespace

void for_each_expression(const AstNode &node, const std::function<void(const Expression &)> &fn) {
    std::visit(
        [&](const auto &n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Program>) {
                walk_all(fn, n.nodes);
            } else if constexpr (std::is_same_v<T, CallableDecl>) {
                walk_all(fn, n.params, n.nodes);
            } else if constexpr (std::is_same_v<T, QubitAllocation>) {
                walk_all(fn, n.length);
            } else if constexpr (std::is_same_v<T, Conjugation>) {
                walk_all(fn, n.within, n.applies);
            } else if constexpr (std::is_same_v<T, ForLoop>) {
                walk_all(fn, n.iterable, n.inside);
            } else if constexpr (std::is_same_v<T, WhileLoop>) {
                walk_all(fn, n.condition, n.inside);
            } else if constexpr (std::is_same_v<T, RepeatUntilFixup>) {
                walk_all(fn, n.body, n.condition);
                if (n.fixup) {
                    walk_all(fn, *n.fixup);
                }
            } else if constexpr (std::is_same_v<T, IfStatement>) {
                walk_all(fn, n.condition, n.if_clause);
                for (const auto &elif : n.elif_clauses) {
                    walk_all(fn, elif.condition, elif.clause);
                }
                if (n.else_clause) {
                    walk_all(fn, *n.else_clause);
                }
            } else if constexpr (std::is_same_v<T, LetBinding> || std::is_same_v<T, MutableBinding> ||
                                 std::is_same_v<T, SetAssignment>) {
                walk_all(fn, n.expression);
            } else if constexpr (std::is_same_v<T, ReturnStatement>) {
                walk_all(fn, n.expr);
            } else if constexpr (std::is_same_v<T, SingleQubitGate> || std::is_same_v<T, ResetGate>) {
                walk_all(fn, n.target);
            } else if constexpr (std::is_same_v<T, ControlledGate>) {
                walk_all(fn, n.control, n.target);
            } else if constexpr (std::is_same_v<T, TwoQubitGate>) {
                walk_all(fn, n.first, n.second);
            } else if constexpr (std::is_same_v<T, CcnotGate>) {
                walk_all(fn, n.control0, n.control1, n.target);
            } else if constexpr (std::is_same_v<T, RotationGate>) {
                walk_all(fn, n.rads, n.target);
            } else if constexpr (std::is_same_v<T, PauliRotationGate>) {
                walk_all(fn, n.pauli, n.rads, n.target);
            } else if constexpr (std::is_same_v<T, RFracGate>) {
                walk_all(fn, n.pauli, n.numerator, n.power, n.target);
            } else if constexpr (std::is_same_v<T, R1FracGate>) {
                walk_all(fn, n.numerator, n.power, n.target);
            } else if constexpr (std::is_same_v<T, IsingGate>) {
                walk_all(fn, n.rads, n.qubit0, n.qubit1);
            } else if constexpr (std::is_same_v<T, MeasureGate>) {
                walk_all(fn, n.basis);
                for (const auto &q : n.qubits) {
                    walk_all(fn, q);
                }
            } else if constexpr (std::is_same_v<T, MGate>) {
                walk_all(fn, n.qubit);
            } else if constexpr (std::is_same_v<T, ResetAllGate>) {
                walk_all(fn, n.reg);
            } else if constexpr (std::is_same_v<T, ArbitraryUnitary>) {
                walk_all(fn, n.matrix, n.targets);
            } else if constexpr (std::is_same_v<T, NonIntrinsicCall>) {
                walk_all(fn, n.params);
            }
        },
        node.node);
}

}  // namespace qsc

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

#include "qsc/ast_json.hpp"

#include <cmath>

namespace qsc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Json number(double v) {
    // Integral doubles print as integers ("1." shows up as 1).
    if (std::isfinite(v) && std::trunc(v) == v && std::fabs(v) < 9007199254740992.0) {
        return Json(static_cast<std::int64_t>(v));
    }
    return Json(v);
}

Json object() {
    return Json::object();
}

Json list(const NodeList &nodes) {
    Json out = Json::array();
    for (const auto &n : nodes) {
        out.push_back(to_json(n));
    }
    return out;
}

Json groups(const ParamGroups &params) {
    Json out = Json::array();
    for (const auto &group : params) {
        Json inner = Json::array();
        for (const auto &e : group) {
            inner.push_back(to_json(e));
        }
        out.push_back(std::move(inner));
    }
    return out;
}

Json optional_expression(const std::optional<Box<Expression>> &e) {
    return e ? to_json(**e) : object();
}

Json range_json(const Range &r) {
    Json j = object();
    j["repr"] = r.repr;
    j["lower"] = optional_expression(r.lower);
    j["upper"] = optional_expression(r.upper);
    return j;
}

Json variable_json(const VariableRef &v) {
    return to_json(Parameter(v));
}

Json expression_pair(const Expression &e, const VariableRef &v) {
    Json j = object();
    j["expression"] = to_json(e);
    j["variable"] = variable_json(v);
    return j;
}

void flag_adjoint(Json &j, bool adjoint) {
    if (adjoint) {
        j["adjoint"] = true;
    }
}

}  // namespace

Json to_json(const Expression &e) {
    Json j = object();
    j["repr"] = e.repr;
    Json elements = Json::array();
    for (const auto &p : e.elements) {
        elements.push_back(to_json(p));
    }
    j["elements"] = std::move(elements);
    return j;
}

Json to_json(const Parameter &p) {
    return std::visit(
        Overloaded{
            [](const IdentifierRef &v) {
                Json j = object();
                j["repr"] = v.repr;
                j["id"] = v.id;
                return j;
            },
            [](const VariableRef &v) {
                Json j = object();
                j["repr"] = v.repr;
                j["name"] = v.name;
                return j;
            },
            [](const IntLiteral &v) {
                Json j = object();
                j["repr"] = v.repr;
                j["val"] = v.val;
                return j;
            },
            [](const BigIntLiteral &v) {
                Json j = object();
                j["repr"] = v.repr;
                j["val"] = v.val.str();
                return j;
            },
            [](const DoubleLiteral &v) {
                Json j = object();
                j["repr"] = v.repr;
                j["val"] = number(v.val);
                return j;
            },
            [](const StringLiteral &v) {
                Json j = object();
                j["repr"] = v.repr;
                j["val"] = v.val;
                return j;
            },
            [](const BoolLiteral &v) {
                Json j = object();
                j["repr"] = v.repr;
                j["val"] = v.val;
                return j;
            },
            [](const PauliLiteral &v) {
                Json j = object();
                j["repr"] = v.repr;
                j["val"] = std::string(pauli_name(v.val));
                return j;
            },
            [](const ResultLiteral &v) {
                Json j = object();
                j["repr"] = v.repr;
                j["val"] = v.repr;
                return j;
            },
            [](const OperatorAtom &v) {
                Json j = object();
                j["repr"] = v.repr;
                return j;
            },
            [](const FunctionCall &v) {
                Json j = object();
                j["repr"] = v.repr;
                j["name"] = v.name;
                j["params"] = groups(v.params);
                return j;
            },
            [](const IndexAccess &v) {
                Json j = object();
                j["repr"] = v.repr;
                j["instance"] = v.instance;
                j["index"] = std::visit(Overloaded{[](const Box<Expression> &e) { return to_json(*e); },
                                                   [](const Range &r) { return range_json(r); }},
                                        v.index);
                return j;
            },
            [](const Range &v) { return range_json(v); },
            [](const SubExpression &v) {
                Json j = object();
                j["repr"] = v.repr;
                j["elements"] = to_json(*v.inner)["elements"];
                return j;
            },
            [](const ArrayLiteral &v) {
                Json j = object();
                j["repr"] = v.repr;
                Json items = Json::array();
                for (const auto &e : v.items) {
                    items.push_back(to_json(e));
                }
                j["items"] = std::move(items);
                return j;
            },
        },
        p);
}

Json to_json(const AstNode &node) {
    return std::visit(
        Overloaded{
            [](const Program &v) {
                Json j = object();
                j["nodes"] = list(v.nodes);
                return j;
            },
            [](const Comment &v) {
                Json j = object();
                j["val"] = v.val;
                return j;
            },
            [](const CallableDecl &v) {
                Json j = object();
                j["name"] = v.name;
                j["nodes"] = list(v.nodes);
                j["params"] = groups(v.params);
                j["modifiers"] = v.modifiers;
                Json ret = object();
                if (v.return_type) {
                    ret["repr"] = *v.return_type;
                }
                j["returnType"] = std::move(ret);
                return j;
            },
            [](const QubitAllocation &v) {
                Json j = object();
                Json name = object();
                name["repr"] = v.name;
                name["val"] = v.name;
                j["name"] = std::move(name);
                Json qubits = object();
                qubits["repr"] = v.name;
                qubits["name"] = v.name;
                qubits["length"] = to_json(v.length);
                j["qubits"] = std::move(qubits);
                return j;
            },
            [](const Conjugation &v) {
                Json j = object();
                j["within"] = list(v.within);
                j["applies"] = list(v.applies);
                return j;
            },
            [](const ForLoop &v) {
                Json j = object();
                j["variable"] = variable_json(v.variable);
                j["inside"] = list(v.inside);
                Json vals = object();
                vals["repr"] = v.iterable.repr;
                Json items = Json::array();
                for (const auto &p : v.iterable.elements) {
                    items.push_back(to_json(p));
                }
                vals["vals"] = std::move(items);
                vals["size"] = v.iterable.elements.size();
                j["vals"] = std::move(vals);
                return j;
            },
            [](const WhileLoop &v) {
                Json j = object();
                j["condition"] = to_json(v.condition);
                j["inside"] = list(v.inside);
                return j;
            },
            [](const RepeatUntilFixup &v) {
                Json j = object();
                j["body"] = list(v.body);
                j["condition"] = to_json(v.condition);
                j["fixup"] = v.fixup ? list(*v.fixup) : Json::array();
                return j;
            },
            [](const IfStatement &v) {
                Json j = object();
                j["condition"] = to_json(v.condition);
                j["ifClause"] = list(v.if_clause);
                Json elifs = Json::array();
                for (const auto &e : v.elif_clauses) {
                    Json c = object();
                    c["condition"] = to_json(e.condition);
                    c["clause"] = list(e.clause);
                    elifs.push_back(std::move(c));
                }
                j["elifClauses"] = std::move(elifs);
                j["elseClause"] = v.else_clause ? list(*v.else_clause) : Json::array();
                return j;
            },
            [](const LetBinding &v) { return expression_pair(v.expression, v.variable); },
            [](const MutableBinding &v) { return expression_pair(v.expression, v.variable); },
            [](const SetAssignment &v) {
                Json j = expression_pair(v.expression, v.variable);
                j["operator"] = v.op;
                return j;
            },
            [](const ReturnStatement &v) {
                Json j = object();
                j["expr"] = to_json(v.expr);
                return j;
            },
            [](const FailStatement &v) {
                Json j = object();
                j["msg"] = to_json(Parameter(v.msg));
                return j;
            },
            [](const ImportStatement &v) {
                Json j = object();
                j["path"] = v.path;
                return j;
            },
            [](const StructDecl &v) {
                Json j = object();
                j["name"] = v.name;
                j["fields"] = v.fields;
                return j;
            },
            [](const SingleQubitGate &v) {
                Json j = object();
                j["target"] = to_json(v.target);
                flag_adjoint(j, v.adjoint);
                return j;
            },
            [](const ControlledGate &v) {
                Json j = object();
                j["control"] = to_json(v.control);
                j["target"] = to_json(v.target);
                flag_adjoint(j, v.adjoint);
                return j;
            },
            [](const TwoQubitGate &v) {
                Json j = object();
                bool swap = v.op == TwoQubitOp::SWAP;
                j[swap ? "qubit0" : "control"] = to_json(v.first);
                j[swap ? "qubit1" : "target"] = to_json(v.second);
                return j;
            },
            [](const CcnotGate &v) {
                Json j = object();
                j["control0"] = to_json(v.control0);
                j["control1"] = to_json(v.control1);
                j["target"] = to_json(v.target);
                return j;
            },
            [](const RotationGate &v) {
                Json j = object();
                j["rads"] = to_json(v.rads);
                j["target"] = to_json(v.target);
                flag_adjoint(j, v.adjoint);
                return j;
            },
            [](const PauliRotationGate &v) {
                Json j = object();
                j["pauli"] = to_json(v.pauli);
                j["rads"] = to_json(v.rads);
                j["target"] = to_json(v.target);
                flag_adjoint(j, v.adjoint);
                return j;
            },
            [](const RFracGate &v) {
                Json j = object();
                j["pauli"] = to_json(v.pauli);
                j["numerator"] = to_json(v.numerator);
                j["power"] = to_json(v.power);
                j["target"] = to_json(v.target);
                flag_adjoint(j, v.adjoint);
                return j;
            },
            [](const R1FracGate &v) {
                Json j = object();
                j["numerator"] = to_json(v.numerator);
                j["power"] = to_json(v.power);
                j["target"] = to_json(v.target);
                flag_adjoint(j, v.adjoint);
                return j;
            },
            [](const IsingGate &v) {
                Json j = object();
                j["rads"] = to_json(v.rads);
                j["qubit0"] = to_json(v.qubit0);
                j["qubit1"] = to_json(v.qubit1);
                flag_adjoint(j, v.adjoint);
                return j;
            },
            [](const MeasureGate &v) {
                Json j = object();
                j["basis"] = to_json(v.basis);
                Json qubits = Json::array();
                for (const auto &q : v.qubits) {
                    qubits.push_back(to_json(q));
                }
                j["qubits"] = std::move(qubits);
                return j;
            },
            [](const MGate &v) {
                Json j = object();
                j["qubit"] = to_json(v.qubit);
                return j;
            },
            [](const ResetGate &v) {
                Json j = object();
                j["target"] = to_json(v.target);
                return j;
            },
            [](const ResetAllGate &v) {
                Json j = object();
                j["register"] = to_json(v.reg);
                return j;
            },
            [](const ArbitraryUnitary &v) {
                Json j = object();
                j["matrix"] = to_json(v.matrix);
                j["targets"] = to_json(v.targets);
                return j;
            },
            [](const NonIntrinsicCall &v) {
                Json j = object();
                j["name"] = v.name;
                j["params"] = groups(v.params);
                j["functors"] = v.functors;
                return j;
            },
        },
        node.node);
}

std::string serialize_ast(const AstNode &root) {
    return to_json(root).dump(2, ' ', false, Json::error_handler_t::replace);
}

}  // namespace qsc

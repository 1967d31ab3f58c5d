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

#include "qsc/codegen.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

namespace qsc {

namespace {

// ---------------------------------------------------------------------------
// Emitted statements
// ---------------------------------------------------------------------------

struct Emit;
using EmitList = std::vector<Emit>;

struct GateCall {
    std::string name;
    std::vector<std::string> params;
    std::vector<std::string> qubits;
};

/// A classical or non-unitary statement, or a comment.
struct Line {
    std::string text;
};

struct Blank {};

struct Continuation {
    std::string header;
    EmitList body;
};

struct Block {
    std::string header;
    EmitList body;
    std::vector<Continuation> continuations;
};

struct Emit {
    std::variant<GateCall, Line, Blank, Block> v;
};

std::string join(const std::vector<std::string> &parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) {
            out += sep;
        }
        out += parts[i];
    }
    return out;
}

void append_joined(std::string &out, const std::vector<std::string> &parts, std::string_view sep) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) {
            out += sep;
        }
        out += parts[i];
    }
}

void render(const EmitList &list, std::size_t indent, std::string &out) {
    for (const auto &e : list) {
        if (auto *g = std::get_if<GateCall>(&e.v)) {
            out.append(indent, ' ');
            out += g->name;
            if (!g->params.empty()) {
                out += '(';
                append_joined(out, g->params, ", ");
                out += ')';
            }
            out += ' ';
            append_joined(out, g->qubits, ",");
            out += ";\n";
        } else if (auto *l = std::get_if<Line>(&e.v)) {
            out.append(indent, ' ');
            out += l->text;
            out += '\n';
        } else if (std::holds_alternative<Blank>(e.v)) {
            out += '\n';
        } else {
            const auto &b = std::get<Block>(e.v);
            out.append(indent, ' ');
            out += b.header;
            out += " {\n";
            render(b.body, indent + 2, out);
            for (const auto &c : b.continuations) {
                out.append(indent, ' ');
                out += "} ";
                out += c.header;
                out += " {\n";
                render(c.body, indent + 2, out);
            }
            out.append(indent, ' ');
            out += "}\n";
        }
    }
}

std::string render(const EmitList &list) {
    std::string out;
    render(list, 0, out);
    return out;
}

// Avoids the copy an initializer list would make.
template <class T>
EmitList single(T item) {
    EmitList out;
    out.push_back(Emit{std::move(item)});
    return out;
}

void append(EmitList &dst, EmitList src) {
    if (dst.empty()) {
        dst = std::move(src);
        return;
    }
    if (dst.capacity() < dst.size() + src.size()) {
        dst.reserve(std::max(dst.size() + src.size(), 2 * dst.capacity()));
    }
    std::move(src.begin(), src.end(), std::back_inserter(dst));
}

// ---------------------------------------------------------------------------
// Angle text
// ---------------------------------------------------------------------------

bool is_atomic(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    if (s.front() == '(' && s.back() == ')') {
        int depth = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            depth += s[i] == '(' ? 1 : s[i] == ')' ? -1 : 0;
            if (depth == 0 && i + 1 < s.size()) {
                return false;
            }
        }
        return true;
    }
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '[' || c == ']';
    });
}

std::string negate(const std::string &s) {
    if (s == "0") {
        return s;
    }
    if (s.size() > 1 && s.front() == '-' && is_atomic(std::string_view(s).substr(1))) {
        return s.substr(1);
    }
    return is_atomic(s) ? "-" + s : "-(" + s + ")";
}

std::string wrap(const std::string &s) {
    return is_atomic(s) ? s : "(" + s + ")";
}

/// sign * pi * k / 2^e as QASM text.
std::string dyadic_angle(int sign, std::int64_t k, std::int64_t e) {
    if (k == 0) {
        return "0";
    }
    BigInt num = k < 0 ? BigInt(-k) : BigInt(k);
    bool negative = (k < 0) != (sign < 0);
    if (e < 0) {
        num <<= static_cast<unsigned>(-e);
        e = 0;
    }
    std::string out = negative ? "-pi" : "pi";
    if (num != 1) {
        out += "*" + num.str();
    }
    if (e > 0) {
        out += "/" + (BigInt(1) << static_cast<unsigned>(e)).str();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Expression rewriting
// ---------------------------------------------------------------------------

const std::unordered_map<std::string, std::string> &operator_map() {
    static const std::unordered_map<std::string, std::string> m = {
        {"&&&", "&"}, {"|||", "|"}, {"^^^", "^"}, {"<<<", "<<"}, {">>>", ">>"}, {"~~~", "~"},
        {"and", "&&"}, {"or", "||"},  {"not", "!"}, {"^", "**"},
    };
    return m;
}

const std::unordered_map<std::string, std::string> &function_map() {
    static const std::unordered_map<std::string, std::string> m = {
        {"Sqrt", "sqrt"},     {"Sin", "sin"},       {"Cos", "cos"},       {"Tan", "tan"},
        {"ArcSin", "arcsin"}, {"ArcCos", "arccos"}, {"ArcTan", "arctan"}, {"Exp", "exp"},
        {"Log", "log"},       {"Floor", "floor"},   {"Ceiling", "ceiling"}, {"IntAsDouble", "float[64]"},
    };
    return m;
}

const std::unordered_map<std::string, std::string> &compound_assign_map() {
    static const std::unordered_map<std::string, std::string> m = {
        {"&&&=", "&="}, {"|||=", "|="}, {"^^^=", "^="}, {"<<<=", "<<="}, {">>>=", ">>="}, {"^=", "**="},
    };
    return m;
}

std::optional<std::string> declared_type(const std::string &q) {
    static const std::unordered_map<std::string, std::string> m = {
        {"Int", "int[64]"}, {"Double", "float[64]"}, {"Bool", "bool"},
        {"Result", "bit"},  {"Qubit", "qubit"},      {"BigInt", "int"},
    };
    auto it = m.find(q);
    if (it == m.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool is_logical_operator(const std::string &op) {
    static const std::unordered_set<std::string> ops = {"==", "!=", "<", "<=", ">", ">=", "and", "or", "not"};
    return ops.count(op) > 0;
}

/// Result type of a call to a library function, as QASM type text.
std::optional<std::string> library_return_type(const std::string &name) {
    static const std::unordered_map<std::string, std::string> m = {
        {"PI", "float"},     {"Sqrt", "float"},   {"Sin", "float"},     {"Cos", "float"},
        {"Tan", "float"},    {"ArcSin", "float"}, {"ArcCos", "float"},  {"ArcTan", "float"},
        {"Exp", "float"},    {"Log", "float"},    {"IntAsDouble", "float"}, {"Round", "int[64]"},
        {"Floor", "int[64]"}, {"Ceiling", "int[64]"}, {"Truncate", "int[64]"},
    };
    auto it = m.find(name);
    if (it == m.end()) {
        return std::nullopt;
    }
    return it->second;
}

/// Decides the source type of an expression from its literals, operators and
/// any operand whose QASM type is already known.
struct TypeScan {
    using Lookup = std::function<std::optional<std::string>(const std::string &)>;

    Lookup variable_type = [](const std::string &) { return std::nullopt; };
    Lookup call_type = [](const std::string &) { return std::nullopt; };

    BigInt max = 0;
    bool saw_double = false;
    bool saw_bool = false;
    bool saw_bigint = false;
    bool saw_result = false;
    bool wide = false;  // an Int operand of unknown magnitude
    bool indeterminate = false;

    void scan(const Expression &e) {
        for (const auto &p : e.elements) {
            scan(p);
        }
    }

    void known(const std::optional<std::string> &qasm) {
        if (!qasm) {
            indeterminate = true;
        } else if (*qasm == "float" || *qasm == "float[64]") {
            saw_double = true;
        } else if (*qasm == "bool") {
            saw_bool = true;
        } else if (*qasm == "bit") {
            saw_result = true;
        } else if (*qasm == "int") {
            saw_bigint = true;
            wide = true;
        } else if (qasm->rfind("int[", 0) == 0) {
            wide = true;
        } else {
            indeterminate = true;
        }
    }

    void scan(const Parameter &p) {
        std::visit(
            [&](const auto &v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, IntLiteral>) {
                    BigInt a = v.val < 0 ? -BigInt(v.val) : BigInt(v.val);
                    max = std::max(max, a);
                } else if constexpr (std::is_same_v<T, BigIntLiteral>) {
                    saw_bigint = true;
                    max = std::max(max, BigInt(abs(v.val)));
                } else if constexpr (std::is_same_v<T, DoubleLiteral>) {
                    saw_double = true;
                } else if constexpr (std::is_same_v<T, BoolLiteral>) {
                    saw_bool = true;
                } else if constexpr (std::is_same_v<T, ResultLiteral>) {
                    saw_result = true;
                } else if constexpr (std::is_same_v<T, OperatorAtom>) {
                    if (is_logical_operator(v.repr)) {
                        saw_bool = true;
                    }
                } else if constexpr (std::is_same_v<T, SubExpression>) {
                    scan(*v.inner);
                } else if constexpr (std::is_same_v<T, IdentifierRef>) {
                    known(variable_type(v.id));
                } else if constexpr (std::is_same_v<T, VariableRef>) {
                    known(variable_type(v.name));
                } else if constexpr (std::is_same_v<T, FunctionCall>) {
                    known(call_type(v.name));
                } else {
                    indeterminate = true;
                }
            },
            p);
    }

    TypeTag result() const {
        if (saw_bool) {
            return TypeTag::Bool;
        }
        if (indeterminate) {
            return TypeTag::Indeterminate;
        }
        if (saw_result) {
            return saw_double || max > 0 || wide ? TypeTag::Indeterminate : TypeTag::Result;
        }
        if (saw_double) {
            return TypeTag::Double;
        }
        return saw_bigint ? TypeTag::BigInt : TypeTag::Int;
    }

    /// QASM type text, or nullopt when the type cannot be decided.
    std::optional<std::string> qasm_type() const {
        TypeTag tag = result();
        if (wide && tag == TypeTag::Int) {
            return "int[64]";
        }
        if (wide && tag == TypeTag::BigInt) {
            return "int";
        }
        return infer_width(tag, max);
    }
};

// ---------------------------------------------------------------------------
// Gate inversion
// ---------------------------------------------------------------------------

std::optional<GateCall> inverse(const GateCall &g) {
    static const std::unordered_set<std::string> self_inverse = {"x",  "y",  "z",  "h",   "id",
                                                                 "cx", "cy", "cz", "ch", "swap", "ccx"};
    static const std::unordered_map<std::string, std::string> swapped = {
        {"s", "sdg"}, {"sdg", "s"}, {"t", "tdg"}, {"tdg", "t"}};
    static const std::unordered_set<std::string> angle_gates = {"rx", "ry", "rz", "u1", "p"};

    std::size_t at = g.name.rfind("@ ");
    std::string_view name = g.name;
    std::string_view prefix = at == std::string::npos ? std::string_view{} : name.substr(0, at + 2);
    std::string base(at == std::string::npos ? name : name.substr(at + 2));
    GateCall out = g;
    if (self_inverse.count(base)) {
        return out;
    }
    if (auto it = swapped.find(base); it != swapped.end()) {
        out.name.replace(prefix.size(), std::string::npos, it->second);
        return out;
    }
    if (angle_gates.count(base) && g.params.size() == 1) {
        out.params[0] = negate(g.params[0]);
        return out;
    }
    if (base == "u2" && g.params.size() == 2) {
        out.name.replace(prefix.size(), std::string::npos, "u3");
        out.params = {"-pi/2", negate(g.params[1]), negate(g.params[0])};
        return out;
    }
    if (base == "u3" && g.params.size() == 3) {
        out.params = {negate(g.params[0]), negate(g.params[2]), negate(g.params[1])};
        return out;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Lowering
// ---------------------------------------------------------------------------

class Lowerer {
  public:
    explicit Lowerer(std::vector<Diagnostic> &diagnostics) : diagnostics_(diagnostics) {
    }

    EmitList lower_program(AstNode &root);
    std::string expression_text(const Expression &e) {
        return expr(e);
    }

    std::vector<std::string> qubits;

  private:
    struct Frame {
        std::unordered_map<std::string, std::string> subst;
        std::unordered_map<std::string, std::int64_t> consts;
        std::unordered_map<std::string, std::string> types;  // QASM type of each known name
    };

    // Rebinds one name for the lifetime of the guard. Q# forbids shadowing, so
    // restoring just this name is enough to scope a loop variable.
    class NameGuard {
      public:
        NameGuard(Frame &frame, const std::string &name) : frame_(frame), name_(name) {
            take(frame_.subst, subst_);
            take(frame_.consts, consts_);
            take(frame_.types, types_);
        }
        ~NameGuard() {
            give(frame_.subst, subst_);
            give(frame_.consts, consts_);
            give(frame_.types, types_);
        }
        NameGuard(const NameGuard &) = delete;
        NameGuard &operator=(const NameGuard &) = delete;

      private:
        template <class Map, class V>
        void take(Map &map, std::optional<V> &slot) {
            if (auto it = map.find(name_); it != map.end()) {
                slot = std::move(it->second);
                map.erase(it);
            }
        }
        template <class Map, class V>
        void give(Map &map, std::optional<V> &slot) {
            map.erase(name_);
            if (slot) {
                map.emplace(name_, std::move(*slot));
            }
        }

        Frame &frame_;
        const std::string &name_;
        std::optional<std::string> subst_;
        std::optional<std::int64_t> consts_;
        std::optional<std::string> types_;
    };

    TypeScan make_scan() const;
    const CallableDecl *find_callable(const std::string &name) const;

    // Statements
    EmitList lower_list(NodeList &nodes);
    EmitList lower_nodes(const std::vector<AstNode *> &nodes);
    std::string joined_text(const std::vector<AstNode *> &nodes);
    EmitList nested(NodeList &nodes) {
        ++depth_;
        EmitList out = lower_list(nodes);
        --depth_;
        return out;
    }
    EmitList lower_node(AstNode &node);
    EmitList lower(AstNode &node, Comment &n);
    EmitList lower(AstNode &node, CallableDecl &n);
    EmitList lower(AstNode &node, QubitAllocation &n);
    EmitList lower(AstNode &node, Conjugation &n);
    EmitList lower(AstNode &node, ForLoop &n);
    EmitList lower(AstNode &node, WhileLoop &n);
    EmitList lower(AstNode &node, RepeatUntilFixup &n);
    EmitList lower(AstNode &node, IfStatement &n);
    EmitList lower(AstNode &node, LetBinding &n);
    EmitList lower(AstNode &node, MutableBinding &n);
    EmitList lower(AstNode &node, SetAssignment &n);
    EmitList lower(AstNode &node, ReturnStatement &n);
    EmitList lower(AstNode &node, FailStatement &n);
    EmitList lower(AstNode &node, ImportStatement &n);
    EmitList lower(AstNode &node, StructDecl &n);
    EmitList lower(AstNode &node, Program &n);
    EmitList lower(AstNode &node, SingleQubitGate &n);
    EmitList lower(AstNode &node, ControlledGate &n);
    EmitList lower(AstNode &node, TwoQubitGate &n);
    EmitList lower(AstNode &node, CcnotGate &n);
    EmitList lower(AstNode &node, RotationGate &n);
    EmitList lower(AstNode &node, PauliRotationGate &n);
    EmitList lower(AstNode &node, RFracGate &n);
    EmitList lower(AstNode &node, R1FracGate &n);
    EmitList lower(AstNode &node, IsingGate &n);
    EmitList lower(AstNode &node, MeasureGate &n);
    EmitList lower(AstNode &node, MGate &n);
    EmitList lower(AstNode &node, ResetGate &n);
    EmitList lower(AstNode &node, ResetAllGate &n);
    EmitList lower(AstNode &node, ArbitraryUnitary &n);
    EmitList lower(AstNode &node, NonIntrinsicCall &n);

    EmitList lower_binding(AstNode &node, const VariableRef &variable, const Expression &rhs);
    EmitList measure(const AstNode &node, const Parameter &basis, const std::vector<Parameter> &targets);
    EmitList inline_call(AstNode &node, CallableDecl &callee, const ParamGroups &args, bool adjoint);
    EmitList apply_to_each(AstNode &node, const NonIntrinsicCall &n);
    EmitList invert(const EmitList &list, const SourceSpan &span);
    std::optional<std::string> rotation_gate(const AstNode &node, const Parameter &pauli, std::string_view gate);
    std::string loop_variable_type(const Range &r);

    // Expressions
    std::string expr(const Expression &e);
    std::string param(const Parameter &p);
    std::string resolve(const std::string &name) const;
    std::optional<std::int64_t> int_value(const Parameter &p) const;
    std::vector<std::string> expand_qubits(const Parameter &p);
    std::optional<std::size_t> register_size(const std::string &name) const;
    std::optional<std::size_t> qubit_index(const std::string &q) const;
    void shadow(const std::string &name);

    void warn(DiagnosticKind kind, std::string message, const SourceSpan &span) {
        diagnostics_.push_back(make_warning(kind, std::move(message), span));
    }
    void error(DiagnosticKind kind, std::string message, const SourceSpan &span) {
        diagnostics_.push_back(make_error(kind, std::move(message), span));
    }

    std::vector<Diagnostic> &diagnostics_;
    Frame frame_;
    std::unordered_map<std::string, std::size_t> registers_;
    std::unordered_set<std::string> declared_;
    std::unordered_map<std::string, AstNode *> callables_;
    std::unordered_set<std::string> entries_;
    std::vector<std::string> call_stack_;
    bool in_def_ = false;
    int depth_ = 0;  // nesting of braced QASM blocks
    EmitList hoisted_;
    std::size_t fresh_ = 0;
};

EmitList Lowerer::lower_program(AstNode &root) {
    auto &program = std::get<Program>(root.node);
    std::vector<const CallableDecl *> operations;
    for (auto &n : program.nodes) {
        if (auto *c = n.as<CallableDecl>()) {
            callables_[c->name] = &n;
            if (c->kind == CallableKind::Operation) {
                operations.push_back(c);
            }
        }
    }
    for (const auto *op : operations) {
        if (op->entry_point) {
            entries_.insert(op->name);
        }
    }
    if (entries_.empty() && callables_.count("Main") && callables_["Main"]->as<CallableDecl>()->kind ==
                                                             CallableKind::Operation) {
        entries_.insert("Main");
    }
    if (entries_.empty()) {
        for (const auto *op : operations) {
            if (op->signature.empty()) {
                entries_.insert(op->name);
            }
        }
    }
    // Subroutines are hoisted so every call follows its definition.
    std::vector<AstNode *> functions;
    std::vector<AstNode *> rest;
    rest.reserve(program.nodes.size());
    for (auto &n : program.nodes) {
        auto *c = n.as<CallableDecl>();
        (c && c->kind == CallableKind::Function ? functions : rest).push_back(&n);
    }
    EmitList out = lower_nodes(functions);
    EmitList body = lower_nodes(rest);
    // Top-level nodes already hold their text, so the root is assembled rather than re-rendered.
    std::string text = joined_text(functions);
    std::string body_text = joined_text(rest);
    if (!hoisted_.empty()) {
        std::string decls_text = render(hoisted_);
        EmitList decls = std::move(hoisted_);
        if (!body.empty()) {
            decls.push_back({Blank{}});
            decls_text += '\n';
        }
        append(decls, std::move(body));
        body = std::move(decls);
        body_text = decls_text + body_text;
    }
    if (!out.empty() && !body.empty()) {
        out.push_back({Blank{}});
        text += '\n';
    }
    append(out, std::move(body));
    root.qasm_string = std::move(text) + body_text;
    return out;
}

std::string Lowerer::joined_text(const std::vector<AstNode *> &nodes) {
    std::string out;
    for (const auto *n : nodes) {
        if (n->qasm_string.empty()) {
            continue;
        }
        if (n->blank_line_before && !out.empty()) {
            out += '\n';
        }
        out += n->qasm_string;
    }
    return out;
}

TypeScan Lowerer::make_scan() const {
    TypeScan scan;
    scan.variable_type = [this](const std::string &name) -> std::optional<std::string> {
        auto it = frame_.types.find(name);
        if (it == frame_.types.end()) {
            return std::nullopt;
        }
        return it->second;
    };
    scan.call_type = [this](const std::string &name) -> std::optional<std::string> {
        if (auto ty = library_return_type(name)) {
            return ty;
        }
        const auto *decl = find_callable(name);
        if (decl && decl->return_type) {
            return declared_type(*decl->return_type);
        }
        return std::nullopt;
    };
    return scan;
}

const CallableDecl *Lowerer::find_callable(const std::string &name) const {
    auto it = callables_.find(resolve(name));
    if (it == callables_.end()) {
        it = callables_.find(name);
    }
    return it == callables_.end() ? nullptr : it->second->as<CallableDecl>();
}

EmitList Lowerer::lower_list(NodeList &nodes) {
    std::vector<AstNode *> ptrs;
    ptrs.reserve(nodes.size());
    for (auto &n : nodes) {
        ptrs.push_back(&n);
    }
    return lower_nodes(ptrs);
}

EmitList Lowerer::lower_nodes(const std::vector<AstNode *> &nodes) {
    EmitList out;
    for (auto *n : nodes) {
        EmitList part = lower_node(*n);
        if (part.empty()) {
            continue;
        }
        if (n->blank_line_before && !out.empty()) {
            out.push_back({Blank{}});
        }
        append(out, std::move(part));
    }
    return out;
}

EmitList Lowerer::lower_node(AstNode &node) {
    EmitList out = std::visit([&](auto &n) { return lower(node, n); }, node.node);
    // Inlined bodies expand once per call site, so their nodes keep no text.
    if (call_stack_.empty()) {
        node.qasm_string = render(out);
    }
    return out;
}

EmitList Lowerer::lower(AstNode &, Program &n) {
    return lower_list(n.nodes);
}

EmitList Lowerer::lower(AstNode &, Comment &n) {
    return single(Line{"// " + n.val});
}

EmitList Lowerer::lower(AstNode &node, CallableDecl &n) {
    if (n.kind == CallableKind::Operation) {
        if (!entries_.count(n.name) || !call_stack_.empty()) {
            return {};
        }
        return inline_call(node, n, {}, false);
    }
    std::vector<std::string> args;
    for (const auto &p : n.signature) {
        auto ty = declared_type(p.type);
        if (!ty) {
            warn(DiagnosticKind::IndeterminateType,
                 "no QASM type for parameter '" + p.name + "' of type " + p.type, node.span);
        }
        args.push_back(ty.value_or(p.type) + " " + p.name);
    }
    std::string header = "def " + n.name + "(" + join(args, ", ") + ")";
    if (n.return_type) {
        auto ty = declared_type(*n.return_type);
        if (!ty) {
            warn(DiagnosticKind::IndeterminateType, "no QASM type for return type " + *n.return_type, node.span);
        }
        header += " -> " + ty.value_or(*n.return_type);
    }
    Frame saved = std::move(frame_);
    frame_ = {};
    for (const auto &p : n.signature) {
        if (auto ty = declared_type(p.type)) {
            frame_.types[p.name] = *ty;
        }
    }
    bool saved_def = in_def_;
    in_def_ = true;
    EmitList body = nested(n.nodes);
    in_def_ = saved_def;
    frame_ = std::move(saved);
    return single(Block{std::move(header), std::move(body), {}});
}

EmitList Lowerer::inline_call(AstNode &node, CallableDecl &callee, const ParamGroups &args, bool adjoint) {
    if (std::find(call_stack_.begin(), call_stack_.end(), callee.name) != call_stack_.end()) {
        warn(DiagnosticKind::UnsupportedConstruct, "recursive call to '" + callee.name + "' cannot be inlined",
             node.span);
        return {};
    }
    if (args.size() != callee.signature.size()) {
        error(DiagnosticKind::BadArgument,
              callee.name + " expects " + std::to_string(callee.signature.size()) + " argument(s), found " +
                  std::to_string(args.size()),
              node.span);
        return {};
    }
    Frame inner;
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::vector<std::string> parts;
        for (const auto &e : args[i]) {
            parts.push_back(expr(e));
        }
        inner.subst[callee.signature[i].name] = join(parts, ", ");
        if (auto ty = declared_type(callee.signature[i].type)) {
            inner.types[callee.signature[i].name] = *ty;
        }
        if (args[i].size() == 1 && args[i][0].elements.size() == 1) {
            if (auto v = int_value(args[i][0].elements[0])) {
                inner.consts[callee.signature[i].name] = *v;
            }
        }
    }
    Frame saved = std::move(frame_);
    frame_ = std::move(inner);
    call_stack_.push_back(callee.name);
    EmitList body = lower_list(callee.nodes);
    call_stack_.pop_back();
    frame_ = std::move(saved);
    if (adjoint) {
        return invert(body, node.span);
    }
    return body;
}

EmitList Lowerer::lower(AstNode &node, QubitAllocation &n) {
    std::size_t size = 1;
    if (n.is_array) {
        auto v = int_value(n.length);
        if (!v || *v < 0) {
            warn(DiagnosticKind::UnsupportedConstruct,
                 "qubit register '" + n.name + "' needs a literal length, found '" + repr_of(n.length) + "'",
                 node.span);
            return {};
        }
        size = static_cast<std::size_t>(*v);
    }
    frame_.subst.erase(n.name);
    // TODO: an operation inlined twice re-uses its first allocation instead of renaming.
    if (!declared_.insert(n.name).second) {
        return {};
    }
    Line decl;
    if (!n.is_array) {
        qubits.push_back(n.name);
        decl.text = "qubit " + n.name + ";";
    } else {
        registers_[n.name] = size;
        for (std::size_t i = 0; i < size; ++i) {
            qubits.push_back(n.name + "[" + std::to_string(i) + "]");
        }
        decl.text = "qubit[" + std::to_string(size) + "] " + n.name + ";";
    }
    // Qubit declarations are only legal at global scope.
    if (depth_ > 0) {
        hoisted_.push_back({std::move(decl)});
        return {};
    }
    return single(std::move(decl));
}

EmitList Lowerer::lower(AstNode &node, Conjugation &n) {
    EmitList out = lower_list(n.within);
    EmitList applies = lower_list(n.applies);
    EmitList undo = invert(out, node.span);
    append(out, std::move(applies));
    append(out, std::move(undo));
    return out;
}

std::string Lowerer::loop_variable_type(const Range &r) {
    TypeScan scan = make_scan();
    for (const auto *bound : {&r.lower, &r.step, &r.upper}) {
        if (*bound) {
            scan.scan(***bound);
        }
    }
    auto ty = scan.qasm_type();
    return ty && ty->rfind("int", 0) == 0 ? *ty : "int";
}

EmitList Lowerer::lower(AstNode &node, ForLoop &n) {
    const std::string &var = n.variable.name;
    const auto &elements = n.iterable.elements;

    // Qubit iteration is unrolled over the register.
    if (elements.size() == 1) {
        std::string reg;
        std::optional<Range> slice;
        if (std::holds_alternative<IdentifierRef>(elements[0]) || std::holds_alternative<VariableRef>(elements[0])) {
            reg = param(elements[0]);
        } else if (auto *ix = std::get_if<IndexAccess>(&elements[0])) {
            if (auto *r = std::get_if<Range>(&ix->index)) {
                reg = resolve(ix->instance);
                slice = *r;
            }
        }
        if (auto size = register_size(reg)) {
            std::int64_t lo = 0, step = 1, hi = static_cast<std::int64_t>(*size) - 1;
            bool ok = true;
            auto bound = [&](const std::optional<Box<Expression>> &b, std::int64_t &dst) {
                if (!b) {
                    return;
                }
                auto v = (*b)->elements.size() == 1 ? int_value((*b)->elements[0]) : std::nullopt;
                if (v) {
                    dst = *v;
                } else {
                    ok = false;
                }
            };
            if (slice) {
                bound(slice->lower, lo);
                bound(slice->step, step);
                bound(slice->upper, hi);
            }
            if (!ok || step == 0) {
                warn(DiagnosticKind::UnsupportedConstruct,
                     "cannot unroll loop over '" + repr_of(n.iterable) + "' without literal bounds", node.span);
                return {};
            }
            EmitList out;
            for (std::int64_t i = lo; step > 0 ? i <= hi : i >= hi; i += step) {
                if (i < 0 || static_cast<std::size_t>(i) >= *size) {
                    continue;
                }
                NameGuard guard(frame_, var);
                frame_.subst[var] = reg + "[" + std::to_string(i) + "]";
                append(out, lower_list(n.inside));
            }
            return out;
        }
    }

    std::string type;
    std::string iterable;
    if (elements.size() == 1 && std::holds_alternative<Range>(elements[0])) {
        const auto &r = std::get<Range>(elements[0]);
        if (!r.lower || !r.upper) {
            warn(DiagnosticKind::UnsupportedConstruct, "loop range '" + r.repr + "' needs both bounds", node.span);
            return {};
        }
        type = loop_variable_type(r);
        iterable = param(elements[0]);
    } else if (elements.size() == 1 && std::holds_alternative<ArrayLiteral>(elements[0])) {
        TypeScan scan = make_scan();
        for (const auto &item : std::get<ArrayLiteral>(elements[0]).items) {
            scan.scan(item);
        }
        auto ty = scan.qasm_type();
        if (!ty) {
            warn(DiagnosticKind::IndeterminateType, "cannot infer element type of '" + repr_of(n.iterable) + "'",
                 node.span);
        }
        type = ty.value_or("int");
        iterable = param(elements[0]);
    } else {
        warn(DiagnosticKind::IndeterminateType, "cannot infer element type of '" + repr_of(n.iterable) + "'",
             node.span);
        type = "int";
        iterable = expr(n.iterable);
    }
    EmitList body;
    {
        NameGuard guard(frame_, var);
        frame_.types[var] = type;
        body = nested(n.inside);
    }
    return single(Block{"for " + type + " " + var + " in " + iterable, std::move(body), {}});
}

EmitList Lowerer::lower(AstNode &, WhileLoop &n) {
    std::string header = "while (" + expr(n.condition) + ")";
    return single(Block{std::move(header), nested(n.inside), {}});
}

EmitList Lowerer::lower(AstNode &, RepeatUntilFixup &n) {
    std::string flag = "__repeat_" + std::to_string(fresh_++);
    EmitList body = nested(n.body);
    Block check{"if (" + expr(n.condition) + ")", {{Line{flag + " = true;"}}}, {}};
    if (n.fixup) {
        check.continuations.push_back({"else", nested(*n.fixup)});
    }
    body.push_back({std::move(check)});
    EmitList out;
    out.push_back({Line{"bool " + flag + " = false;"}});
    out.push_back({Block{"while (!" + flag + ")", std::move(body), {}}});
    return out;
}

EmitList Lowerer::lower(AstNode &, IfStatement &n) {
    Block b{"if (" + expr(n.condition) + ")", nested(n.if_clause), {}};
    for (auto &elif : n.elif_clauses) {
        b.continuations.push_back({"else if (" + expr(elif.condition) + ")", nested(elif.clause)});
    }
    if (n.else_clause) {
        b.continuations.push_back({"else", nested(*n.else_clause)});
    }
    return single(std::move(b));
}

EmitList Lowerer::lower_binding(AstNode &node, const VariableRef &variable, const Expression &rhs) {
    const std::string &name = variable.name;
    if (rhs.elements.size() == 1) {
        if (auto *call = std::get_if<FunctionCall>(&rhs.elements[0])) {
            std::optional<EmitList> measured;
            if (call->name == "M" && call->params.size() == 1) {
                measured = measure(node, make_pauli(Pauli::Z), {as_parameter(call->params[0].front())});
            } else if (call->name == "Measure" && call->params.size() == 2) {
                Parameter basis = as_parameter(call->params[0].front());
                if (auto *arr = std::get_if<ArrayLiteral>(&basis); arr && !arr->items.empty()) {
                    basis = as_parameter(arr->items.front());
                }
                Parameter targets = as_parameter(call->params[1].front());
                std::vector<Parameter> list;
                if (auto *arr = std::get_if<ArrayLiteral>(&targets)) {
                    for (const auto &item : arr->items) {
                        list.push_back(as_parameter(item));
                    }
                } else {
                    list.push_back(targets);
                }
                measured = measure(node, basis, list);
            }
            if (measured) {
                std::string last;
                for (auto it = measured->rbegin(); it != measured->rend(); ++it) {
                    if (auto *l = std::get_if<Line>(&it->v); l && l->text.rfind("measure ", 0) == 0) {
                        last = l->text.substr(l->text.find("-> ") + 3);
                        last.pop_back();
                        break;
                    }
                }
                shadow(name);
                frame_.types[name] = "bit";
                if (!last.empty()) {
                    measured->push_back({Line{"bit " + name + " = " + last + ";"}});
                }
                return *measured;
            }
        }
    }

    if (rhs.elements.size() == 1) {
        if (auto *call = std::get_if<FunctionCall>(&rhs.elements[0])) {
            if (const auto *callee = find_callable(call->name); callee && callee->kind == CallableKind::Operation) {
                shadow(name);
                return inline_call(node, *const_cast<CallableDecl *>(callee), call->params, false);
            }
        }
    }

    std::string value = expr(rhs);
    TypeScan scan = make_scan();
    scan.scan(rhs);
    std::optional<std::string> type = scan.qasm_type();
    shadow(name);
    if (rhs.elements.size() == 1) {
        if (auto v = int_value(rhs.elements[0])) {
            frame_.consts[name] = *v;
        }
    }
    if (type) {
        frame_.types[name] = *type;
    }
    if (!type) {
        warn(DiagnosticKind::IndeterminateType, "cannot infer a QASM type for '" + name + "' from '" + rhs.repr + "'",
             node.span);
        return single(Line{name + " = " + value + ";"});
    }
    return single(Line{*type + " " + name + " = " + value + ";"});
}

EmitList Lowerer::lower(AstNode &node, LetBinding &n) {
    return lower_binding(node, n.variable, n.expression);
}

EmitList Lowerer::lower(AstNode &node, MutableBinding &n) {
    return lower_binding(node, n.variable, n.expression);
}

EmitList Lowerer::lower(AstNode &node, SetAssignment &n) {
    std::string op = n.op;
    if (op == "w/=") {
        warn(DiagnosticKind::UnsupportedConstruct, "copy-and-update assignment is not supported", node.span);
        return {};
    }
    if (auto it = compound_assign_map().find(op); it != compound_assign_map().end()) {
        op = it->second;
    }
    frame_.consts.erase(n.variable.name);
    return single(Line{resolve(n.variable.name) + " " + op + " " + expr(n.expression) + ";"});
}

EmitList Lowerer::lower(AstNode &node, ReturnStatement &n) {
    if (!in_def_) {
        warn(DiagnosticKind::UnsupportedConstruct, "return from an inlined operation is dropped", node.span);
        return {};
    }
    return single(Line{"return " + expr(n.expr) + ";"});
}

EmitList Lowerer::lower(AstNode &node, FailStatement &n) {
    warn(DiagnosticKind::UnsupportedConstruct, "fail " + n.msg.repr + " has no QASM equivalent", node.span);
    return {};
}

EmitList Lowerer::lower(AstNode &, ImportStatement &) {
    return {};
}

EmitList Lowerer::lower(AstNode &node, StructDecl &n) {
    warn(DiagnosticKind::UnsupportedConstruct, "Struct '" + n.name + "' cannot be lowered", node.span);
    return {};
}

EmitList Lowerer::lower(AstNode &, SingleQubitGate &n) {
    static const char *names[] = {"x", "y", "z", "h", "s", "t", "id"};
    GateCall g{names[static_cast<int>(n.op)], {}, {param(n.target)}};
    if (n.adjoint) {
        g = *inverse(g);
    }
    return single(std::move(g));
}

EmitList Lowerer::lower(AstNode &, ControlledGate &n) {
    static const char *names[] = {"x", "y", "z", "h", "s", "t", "id"};
    std::string base = names[static_cast<int>(n.op)];
    if (n.adjoint) {
        base = inverse(GateCall{base, {}, {}})->name;
    }
    std::vector<std::string> operands = expand_qubits(n.control);
    std::size_t controls = operands.size();
    auto targets = expand_qubits(n.target);
    operands.push_back(targets.size() == 1 ? targets.front() : param(n.target));
    std::string name;
    if (controls == 1 && (base == "x" || base == "y" || base == "z" || base == "h")) {
        name = "c" + base;
    } else if (controls == 2 && base == "x") {
        name = "ccx";
    } else if (controls == 1) {
        name = "ctrl @ " + base;
    } else {
        name = "ctrl(" + std::to_string(controls) + ") @ " + base;
    }
    return single(GateCall{std::move(name), {}, std::move(operands)});
}

EmitList Lowerer::lower(AstNode &, TwoQubitGate &n) {
    static const char *names[] = {"cx", "cz", "swap"};
    return single(GateCall{names[static_cast<int>(n.op)], {}, {param(n.first), param(n.second)}});
}

EmitList Lowerer::lower(AstNode &, CcnotGate &n) {
    return single(GateCall{"ccx", {}, {param(n.control0), param(n.control1), param(n.target)}});
}

EmitList Lowerer::lower(AstNode &, RotationGate &n) {
    static const char *names[] = {"rx", "ry", "rz", "u1"};
    std::string angle = param(n.rads);
    return single(GateCall{names[static_cast<int>(n.op)], {n.adjoint ? negate(angle) : angle}, {param(n.target)}});
}

std::optional<std::string> Lowerer::rotation_gate(const AstNode &node, const Parameter &pauli,
                                                  std::string_view gate) {
    auto *lit = std::get_if<PauliLiteral>(&pauli);
    if (!lit || lit->val == Pauli::I) {
        error(DiagnosticKind::BadArgument,
              std::string(gate) + " axis must be PauliX, PauliY, or PauliZ, found '" + repr_of(pauli) + "'",
              node.span);
        return std::nullopt;
    }
    switch (lit->val) {
        case Pauli::X:
            return "rx";
        case Pauli::Y:
            return "ry";
        default:
            return "rz";
    }
}

EmitList Lowerer::lower(AstNode &node, PauliRotationGate &n) {
    auto name = rotation_gate(node, n.pauli, "R");
    if (!name) {
        return {};
    }
    std::string angle = param(n.rads);
    return single(GateCall{*name, {n.adjoint ? negate(angle) : angle}, {param(n.target)}});
}

EmitList Lowerer::lower(AstNode &node, RFracGate &n) {
    auto name = rotation_gate(node, n.pauli, "RFrac");
    if (!name) {
        return {};
    }
    auto k = int_value(n.numerator);
    auto p = int_value(n.power);
    int sign = n.adjoint ? 1 : -1;
    std::string angle;
    if (k && p) {
        angle = dyadic_angle(sign, *k, *p - 1);
    } else {
        angle = std::string(sign < 0 ? "-" : "") + "pi*" + wrap(param(n.numerator)) + "/2**(" + param(n.power) +
                "-1)";
    }
    return single(GateCall{*name, {angle}, {param(n.target)}});
}

EmitList Lowerer::lower(AstNode &, R1FracGate &n) {
    auto k = int_value(n.numerator);
    auto p = int_value(n.power);
    int sign = n.adjoint ? -1 : 1;
    std::string angle;
    if (k && p) {
        angle = dyadic_angle(sign, *k, *p);
    } else {
        angle = std::string(sign < 0 ? "-" : "") + "pi*" + wrap(param(n.numerator)) + "/2**" + wrap(param(n.power));
    }
    return single(GateCall{"u1", {angle}, {param(n.target)}});
}

EmitList Lowerer::lower(AstNode &node, IsingGate &n) {
    std::string t = param(n.rads);
    std::string a = param(n.qubit0);
    std::string b = param(n.qubit1);
    EmitList out;
    switch (n.op) {
        case IsingOp::Rxx:
            out = {
                {GateCall{"u3", {"pi/2", t, "0"}, {a}}},
                {GateCall{"h", {}, {b}}},
                {GateCall{"cx", {}, {a, b}}},
                {GateCall{"u1", {negate(t)}, {b}}},
                {GateCall{"cx", {}, {a, b}}},
                {GateCall{"h", {}, {b}}},
                {GateCall{"u2", {"-pi", "pi-" + wrap(t)}, {a}}},
            };
            break;
        case IsingOp::Ryy:
            out = {
                {GateCall{"cy", {}, {a, b}}},
                {GateCall{"ry", {t}, {a}}},
                {GateCall{"cy", {}, {a, b}}},
            };
            break;
        case IsingOp::Rzz:
            out = {
                {GateCall{"cx", {}, {a, b}}},
                {GateCall{"u1", {t}, {b}}},
                {GateCall{"cx", {}, {a, b}}},
            };
            break;
    }
    return n.adjoint ? invert(out, node.span) : out;
}

EmitList Lowerer::measure(const AstNode &node, const Parameter &basis, const std::vector<Parameter> &targets) {
    auto *lit = std::get_if<PauliLiteral>(&basis);
    if (!lit || lit->val == Pauli::I) {
        error(DiagnosticKind::BadArgument, "Measure basis must be PauliX, PauliY, or PauliZ", node.span);
        return {};
    }
    std::vector<std::string> names;
    for (const auto &t : targets) {
        for (auto &q : expand_qubits(t)) {
            names.push_back(std::move(q));
        }
    }
    EmitList out;
    for (const auto &q : names) {
        if (lit->val == Pauli::X) {
            out.push_back({GateCall{"h", {}, {q}}});
        } else if (lit->val == Pauli::Y) {
            out.push_back({GateCall{"sdg", {}, {q}}});
            out.push_back({GateCall{"h", {}, {q}}});
        }
    }
    for (const auto &q : names) {
        auto index = qubit_index(q);
        if (!index) {
            warn(DiagnosticKind::UnsupportedConstruct, "measured qubit '" + q + "' is not a declared qubit",
                 node.span);
            continue;
        }
        out.push_back({Line{"measure " + q + " -> c[" + std::to_string(*index) + "];"}});
    }
    return out;
}

EmitList Lowerer::lower(AstNode &node, MeasureGate &n) {
    return measure(node, n.basis, n.qubits);
}

EmitList Lowerer::lower(AstNode &node, MGate &n) {
    return measure(node, make_pauli(Pauli::Z), {n.qubit});
}

EmitList Lowerer::lower(AstNode &, ResetGate &n) {
    return single(Line{"reset " + param(n.target) + ";"});
}

EmitList Lowerer::lower(AstNode &, ResetAllGate &n) {
    EmitList out;
    for (const auto &q : expand_qubits(n.reg)) {
        out.push_back({Line{"reset " + q + ";"}});
    }
    return out;
}

EmitList Lowerer::lower(AstNode &node, ArbitraryUnitary &) {
    warn(DiagnosticKind::UnsupportedConstruct, "ApplyUnitary cannot be lowered", node.span);
    return {};
}

EmitList Lowerer::apply_to_each(AstNode &node, const NonIntrinsicCall &n) {
    static const std::unordered_map<std::string, std::string> gates = {
        {"X", "x"}, {"Y", "y"}, {"Z", "z"}, {"H", "h"}, {"S", "s"}, {"T", "t"}, {"I", "id"}};
    if (n.params.size() != 2 || n.params[0].size() != 1 || n.params[0][0].elements.size() != 1) {
        warn(DiagnosticKind::UnsupportedConstruct, "cannot lower call to '" + n.name + "'", node.span);
        return {};
    }
    const auto *id = std::get_if<IdentifierRef>(&n.params[0][0].elements[0]);
    auto gate = id ? gates.find(id->id) : gates.end();
    if (gate == gates.end()) {
        warn(DiagnosticKind::UnsupportedConstruct, "cannot lower call to '" + n.name + "'", node.span);
        return {};
    }
    bool adjoint = std::count(n.functors.begin(), n.functors.end(), "Adjoint") % 2 == 1;
    EmitList out;
    for (const auto &q : expand_qubits(as_parameter(n.params[1].front()))) {
        GateCall g{gate->second, {}, {q}};
        out.push_back({adjoint ? *inverse(g) : g});
    }
    return out;
}

EmitList Lowerer::lower(AstNode &node, NonIntrinsicCall &n) {
    if (n.name == "ApplyToEach" || n.name == "ApplyToEachA" || n.name == "ApplyToEachC" ||
        n.name == "ApplyToEachCA") {
        return apply_to_each(node, n);
    }
    const auto *found = find_callable(n.name);
    if (!found) {
        warn(DiagnosticKind::UnsupportedConstruct, "call to unknown callable '" + n.name + "' is dropped",
             node.span);
        return {};
    }
    auto &decl = *const_cast<CallableDecl *>(found);
    if (std::count(n.functors.begin(), n.functors.end(), "Controlled")) {
        warn(DiagnosticKind::UnsupportedConstruct, "Controlled " + n.name + " cannot be lowered", node.span);
        return {};
    }
    bool adjoint = std::count(n.functors.begin(), n.functors.end(), "Adjoint") % 2 == 1;
    if (decl.kind == CallableKind::Function) {
        std::vector<std::string> args;
        for (const auto &group : n.params) {
            for (const auto &e : group) {
                args.push_back(expr(e));
            }
        }
        return single(Line{decl.name + "(" + join(args, ", ") + ");"});
    }
    return inline_call(node, decl, n.params, adjoint);
}

EmitList Lowerer::invert(const EmitList &list, const SourceSpan &span) {
    EmitList out;
    out.reserve(list.size());
    bool reported = false;
    for (auto it = list.rbegin(); it != list.rend(); ++it) {
        if (auto *g = std::get_if<GateCall>(&it->v)) {
            if (auto inv = inverse(*g)) {
                out.push_back({std::move(*inv)});
                continue;
            }
            if (!reported) {
                warn(DiagnosticKind::UnsupportedConstruct, "no adjoint known for gate '" + g->name + "'", span);
                reported = true;
            }
            continue;
        }
        if (auto *l = std::get_if<Line>(&it->v)) {
            if (l->text.rfind("//", 0) == 0) {
                continue;
            }
            if (!reported) {
                warn(DiagnosticKind::UnsupportedConstruct, "cannot take the adjoint of '" + l->text + "'", span);
                reported = true;
            }
            continue;
        }
        if (std::holds_alternative<Block>(it->v) && !reported) {
            warn(DiagnosticKind::UnsupportedConstruct, "cannot take the adjoint of a control-flow block", span);
            reported = true;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

void Lowerer::shadow(const std::string &name) {
    frame_.subst.erase(name);
    frame_.consts.erase(name);
}

std::string Lowerer::resolve(const std::string &name) const {
    auto it = frame_.subst.find(name);
    return it == frame_.subst.end() ? name : it->second;
}

std::optional<std::int64_t> Lowerer::int_value(const Parameter &p) const {
    if (auto *i = std::get_if<IntLiteral>(&p)) {
        return i->val;
    }
    const std::string *name = nullptr;
    if (auto *id = std::get_if<IdentifierRef>(&p)) {
        name = &id->id;
    } else if (auto *v = std::get_if<VariableRef>(&p)) {
        name = &v->name;
    }
    if (name) {
        auto it = frame_.consts.find(*name);
        if (it != frame_.consts.end()) {
            return it->second;
        }
        return std::nullopt;
    }
    if (auto *sub = std::get_if<SubExpression>(&p)) {
        const auto &els = sub->inner->elements;
        if (els.size() == 1) {
            return int_value(els[0]);
        }
        if (els.size() == 2 && std::holds_alternative<OperatorAtom>(els[0]) &&
            std::get<OperatorAtom>(els[0]).repr == "-") {
            if (auto v = int_value(els[1])) {
                return -*v;
            }
        }
    }
    return std::nullopt;
}

std::optional<std::size_t> Lowerer::register_size(const std::string &name) const {
    auto it = registers_.find(name);
    if (it == registers_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::optional<std::size_t> Lowerer::qubit_index(const std::string &q) const {
    auto it = std::find(qubits.begin(), qubits.end(), q);
    if (it == qubits.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - qubits.begin());
}

std::vector<std::string> Lowerer::expand_qubits(const Parameter &p) {
    if (auto *call = std::get_if<FunctionCall>(&p); call && call->params.size() == 1) {
        const std::string &f = call->name;
        if (f == "Most" || f == "Rest" || f == "Head" || f == "Tail") {
            std::string reg = expr(call->params[0].front());
            auto all = expand_qubits(as_parameter(call->params[0].front()));
            if (register_size(reg) && !all.empty()) {
                if (f == "Most") {
                    all.pop_back();
                } else if (f == "Rest") {
                    all.erase(all.begin());
                } else if (f == "Head") {
                    all.resize(1);
                } else {
                    all.erase(all.begin(), all.end() - 1);
                }
                return all;
            }
        }
    }
    if (auto *arr = std::get_if<ArrayLiteral>(&p)) {
        std::vector<std::string> out;
        for (const auto &item : arr->items) {
            for (auto &q : expand_qubits(as_parameter(item))) {
                out.push_back(std::move(q));
            }
        }
        return out;
    }
    std::string name = param(p);
    if (auto size = register_size(name)) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < *size; ++i) {
            out.push_back(name + "[" + std::to_string(i) + "]");
        }
        return out;
    }
    return {name};
}

std::string Lowerer::expr(const Expression &e) {
    std::string out;
    for (const auto &p : e.elements) {
        out += param(p);
    }
    return out;
}

std::string Lowerer::param(const Parameter &p) {
    return std::visit(
        [&](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, IdentifierRef>) {
                return resolve(v.id);
            } else if constexpr (std::is_same_v<T, VariableRef>) {
                return resolve(v.name);
            } else if constexpr (std::is_same_v<T, ResultLiteral>) {
                return v.val == ResultValue::One ? "1" : "0";
            } else if constexpr (std::is_same_v<T, OperatorAtom>) {
                auto it = operator_map().find(v.repr);
                return it == operator_map().end() ? v.repr : it->second;
            } else if constexpr (std::is_same_v<T, FunctionCall>) {
                if (v.name == "PI") {
                    return "pi";
                }
                std::vector<std::string> args;
                for (const auto &group : v.params) {
                    for (const auto &e : group) {
                        args.push_back(expr(e));
                    }
                }
                auto it = function_map().find(v.name);
                return (it == function_map().end() ? v.name : it->second) + "(" + join(args, ", ") + ")";
            } else if constexpr (std::is_same_v<T, IndexAccess>) {
                std::string index;
                if (auto *r = std::get_if<Range>(&v.index)) {
                    std::vector<std::string> parts;
                    parts.push_back(r->lower ? expr(**r->lower) : "");
                    if (r->step) {
                        parts.push_back(expr(**r->step));
                    }
                    parts.push_back(r->upper ? expr(**r->upper) : "");
                    index = join(parts, ":");
                } else {
                    index = expr(*std::get<Box<Expression>>(v.index));
                }
                return resolve(v.instance) + "[" + index + "]";
            } else if constexpr (std::is_same_v<T, Range>) {
                std::vector<std::string> parts;
                parts.push_back(v.lower ? expr(**v.lower) : "");
                if (v.step) {
                    parts.push_back(expr(**v.step));
                }
                parts.push_back(v.upper ? expr(**v.upper) : "");
                return "[" + join(parts, ":") + "]";
            } else if constexpr (std::is_same_v<T, SubExpression>) {
                std::string inner = expr(*v.inner);
                return v.parenthesized ? "(" + inner + ")" : inner;
            } else if constexpr (std::is_same_v<T, ArrayLiteral>) {
                std::vector<std::string> items;
                for (const auto &item : v.items) {
                    items.push_back(expr(item));
                }
                return "{" + join(items, ", ") + "}";
            } else {
                return v.repr;
            }
        },
        p);
}

const char *kQelibDefinitions =
    "gate u1(lambda) q { U(0, 0, lambda) q; }\n"
    "gate u2(phi, lambda) q { U(pi/2, phi, lambda) q; }\n"
    "gate u3(theta, phi, lambda) q { U(theta, phi, lambda) q; }\n"
    "gate sdg a { U(0, 0, -pi/2) a; }\n"
    "gate cy a, b { sdg b; cx a, b; s b; }\n";

}  // namespace

std::optional<std::string> infer_width(TypeTag ty, const BigInt &max) {
    switch (ty) {
        case TypeTag::Int:
        case TypeTag::BigInt: {
            BigInt m = abs(max);
            if (m < 128) {
                return "int[8]";
            }
            if (m < 32768) {
                return "int[16]";
            }
            if (m < BigInt(2147483648LL)) {
                return "int[32]";
            }
            if (m < (BigInt(1) << 63)) {
                return "int[64]";
            }
            return "int";
        }
        case TypeTag::Double:
            return "float";
        case TypeTag::Bool:
            return "bool";
        case TypeTag::Result:
            return "bit";
        case TypeTag::Qubit:
            return "qubit";
        case TypeTag::Indeterminate:
            break;
    }
    return std::nullopt;
}

std::string lower_expression(const Expression &e) {
    std::vector<Diagnostic> unused;
    return Lowerer(unused).expression_text(e);
}

CodegenResult compile(AstNode &program, const CodegenOptions &options) {
    CodegenResult result;
    Lowerer lowerer(result.diagnostics);
    EmitList body = lowerer.lower_program(program);
    result.qubits = lowerer.qubits;

    std::string text;
    if (options.prelude) {
        text += "OPENQASM 3.0;\n";
        text += "include \"stdgates.inc\";\n";
        if (options.compat_qelib) {
            text += kQelibDefinitions;
        }
        if (!result.qubits.empty()) {
            text += "bit[" + std::to_string(result.qubits.size()) + "] c;\n";
        }
        if (!body.empty()) {
            text += "\n";
        }
    }
    text += program.qasm_string;  // the body, rendered by the lowerer
    program.qasm_string = text;
    result.qasm = std::move(text);
    sort_by_position(result.diagnostics);
    return result;
}

}  // namespace qsc

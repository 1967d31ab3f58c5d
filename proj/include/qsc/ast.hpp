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

#ifndef QSC_AST_HPP
#define QSC_AST_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qsc/diagnostics.hpp"

namespace qsc {

using BigInt = boost::multiprecision::cpp_int;

/// Heap-allocated value with deep-copy semantics, for recursive node members.
template <class T>
class Box {
  public:
    Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {
    }
    Box(const Box &other) : ptr_(std::make_unique<T>(*other.ptr_)) {
    }
    Box(Box &&) noexcept = default;
    Box &operator=(const Box &other) {
        if (this != &other) {
            ptr_ = std::make_unique<T>(*other.ptr_);
        }
        return *this;
    }
    Box &operator=(Box &&) noexcept = default;

    T &operator*() {
        return *ptr_;
    }
    const T &operator*() const {
        return *ptr_;
    }
    T *operator->() {
        return ptr_.get();
    }
    const T *operator->() const {
        return ptr_.get();
    }

  private:
    std::unique_ptr<T> ptr_;
};

// ---------------------------------------------------------------------------
// Expressions and parameters
//
// An Expression is a flat sequence of Parameters; operators are atoms between
// operands. Every node stores its `repr` at construction time; the factories
// below are the only place reprs are composed.
// ---------------------------------------------------------------------------

struct Expression;

enum class Pauli { I, X, Y, Z };
enum class ResultValue { Zero, One };

struct IdentifierRef {
    std::string id;
    std::string repr;
};

/// Reference to a let/mutable-bound name.
struct VariableRef {
    std::string name;
    std::string repr;
};

struct IntLiteral {
    std::int64_t val = 0;
    std::string repr;
};

struct BigIntLiteral {
    BigInt val;
    std::string repr;
};

struct DoubleLiteral {
    double val = 0;
    std::string repr;
};

struct StringLiteral {
    std::string val;  // contents between the quotes, escapes untouched
    std::string repr;  // the quoted lexeme
};

struct BoolLiteral {
    bool val = false;
    std::string repr;
};

struct PauliLiteral {
    Pauli val = Pauli::I;
    std::string repr;
};

struct ResultLiteral {
    ResultValue val = ResultValue::Zero;
    std::string repr;
};

struct OperatorAtom {
    std::string repr;
};

using ParamGroups = std::vector<std::vector<Expression>>;

struct FunctionCall {
    std::string name;
    ParamGroups params;
    std::string repr;
};

struct Range {
    std::optional<Box<Expression>> lower;
    std::optional<Box<Expression>> step;
    std::optional<Box<Expression>> upper;
    std::string repr;
};

struct IndexAccess {
    std::string instance;
    std::variant<Box<Expression>, Range> index;
    std::string repr;
};

struct SubExpression {
    Box<Expression> inner;
    bool parenthesized = false;
    std::string repr;
};

struct ArrayLiteral {
    std::vector<Expression> items;
    std::string repr;
};

using Parameter = std::variant<IdentifierRef, VariableRef, IntLiteral, BigIntLiteral, DoubleLiteral, StringLiteral,
                               BoolLiteral, PauliLiteral, ResultLiteral, OperatorAtom, FunctionCall, IndexAccess,
                               Range, SubExpression, ArrayLiteral>;

struct Expression {
    std::vector<Parameter> elements;
    std::string repr;
};

const std::string &repr_of(const Parameter &p);
const std::string &repr_of(const Expression &e);

/// Shortest round-trip decimal, without a trailing ".0" ("1." -> "1").
std::string canonical_double(double value);
std::string_view pauli_name(Pauli p);

Parameter make_identifier(std::string id);
Parameter make_variable(std::string name);
Parameter make_int(std::int64_t value);
Parameter make_bigint(BigInt value);
Parameter make_double(double value);
Parameter make_string(std::string quoted_lexeme);
Parameter make_bool(bool value);
Parameter make_pauli(Pauli value);
Parameter make_result(ResultValue value);
Parameter make_operator(std::string symbol);
Parameter make_call(std::string name, ParamGroups params);
Parameter make_index(std::string instance, Expression index);
Parameter make_index(std::string instance, Range index);
Range make_range(std::optional<Expression> lower, std::optional<Expression> step, std::optional<Expression> upper);
Parameter make_subexpression(Expression inner, bool parenthesized);
Parameter make_array(std::vector<Expression> items);
Expression make_expression(std::vector<Parameter> elements);

/// The expression as a single Parameter: its sole element, or a transparent
/// SubExpression when it has several.
Parameter as_parameter(Expression e);

// ---------------------------------------------------------------------------
// Statement-level nodes
// ---------------------------------------------------------------------------

struct AstNode;
using NodeList = std::vector<AstNode>;

struct Program {
    NodeList nodes;
};

struct Comment {
    std::string val;
};

enum class CallableKind { Function, Operation };

struct TypedName {
    std::string name;
    std::string type;  // Q# type text as written, e.g. "Qubit[]"
};

struct CallableDecl {
    CallableKind kind = CallableKind::Operation;
    std::string name;
    ParamGroups params;
    NodeList nodes;
    std::vector<std::string> modifiers;
    std::optional<std::string> return_type;  // absent encodes Unit
    std::vector<TypedName> signature;
    bool entry_point = false;
};

enum class AllocationKind { Use, Borrow };

struct QubitAllocation {
    AllocationKind kind = AllocationKind::Use;
    std::string name;
    Parameter length;  // IntLiteral when known at parse time
    bool is_array = false;
};

struct Conjugation {
    NodeList within;
    NodeList applies;
};

struct ForLoop {
    VariableRef variable;
    Expression iterable;
    NodeList inside;
};

struct WhileLoop {
    Expression condition;
    NodeList inside;
};

struct RepeatUntilFixup {
    NodeList body;
    Expression condition;
    std::optional<NodeList> fixup;
};

struct ElifClause {
    Expression condition;
    NodeList clause;
};

struct IfStatement {
    Expression condition;
    NodeList if_clause;
    std::vector<ElifClause> elif_clauses;
    std::optional<NodeList> else_clause;
};

struct LetBinding {
    VariableRef variable;
    Expression expression;
};

struct MutableBinding {
    VariableRef variable;
    Expression expression;
};

struct SetAssignment {
    VariableRef variable;
    std::string op;  // "=", "+=", ...
    Expression expression;
};

struct ReturnStatement {
    Expression expr;
};

struct FailStatement {
    StringLiteral msg;
};

struct ImportStatement {
    std::string path;
};

struct StructDecl {
    std::string name;
    std::vector<std::string> fields;
};

enum class SingleQubitOp { X, Y, Z, H, S, T, I };
enum class TwoQubitOp { CNOT, CZ, SWAP };
enum class RotationOp { Rx, Ry, Rz, R1 };
enum class IsingOp { Rxx, Ryy, Rzz };

std::string_view op_name(SingleQubitOp op);
std::string_view op_name(TwoQubitOp op);
std::string_view op_name(RotationOp op);
std::string_view op_name(IsingOp op);

struct SingleQubitGate {
    SingleQubitOp op = SingleQubitOp::I;
    Parameter target;
    bool adjoint = false;
};

/// `Controlled G(controls, target)` for a single-qubit intrinsic G.
struct ControlledGate {
    SingleQubitOp op = SingleQubitOp::X;
    Parameter control;
    Parameter target;
    bool adjoint = false;
};

/// CNOT/CZ use (first=control, second=target); SWAP uses (qubit0, qubit1).
struct TwoQubitGate {
    TwoQubitOp op = TwoQubitOp::CNOT;
    Parameter first;
    Parameter second;
};

struct CcnotGate {
    Parameter control0;
    Parameter control1;
    Parameter target;
};

struct RotationGate {
    RotationOp op = RotationOp::Rz;
    Parameter rads;
    Parameter target;
    bool adjoint = false;
};

/// R(pauli, rads, target)
struct PauliRotationGate {
    Parameter pauli;
    Parameter rads;
    Parameter target;
    bool adjoint = false;
};

/// RFrac(pauli, numerator, power, target)
struct RFracGate {
    Parameter pauli;
    Parameter numerator;
    Parameter power;
    Parameter target;
    bool adjoint = false;
};

/// R1Frac(numerator, power, target)
struct R1FracGate {
    Parameter numerator;
    Parameter power;
    Parameter target;
    bool adjoint = false;
};

struct IsingGate {
    IsingOp op = IsingOp::Rzz;
    Parameter rads;
    Parameter qubit0;
    Parameter qubit1;
    bool adjoint = false;
};

struct MeasureGate {
    Parameter basis;
    std::vector<Parameter> qubits;
};

/// M(q): single-qubit Z measurement.
struct MGate {
    Parameter qubit;
};

struct ResetGate {
    Parameter target;
};

struct ResetAllGate {
    Parameter reg;
};

struct ArbitraryUnitary {
    Parameter matrix;
    Parameter targets;
};

struct NonIntrinsicCall {
    std::string name;
    ParamGroups params;
    std::vector<std::string> functors;  // "Adjoint" / "Controlled", outermost first
};

using NodeVariant =
    std::variant<Program, Comment, CallableDecl, QubitAllocation, Conjugation, ForLoop, WhileLoop, RepeatUntilFixup,
                 IfStatement, LetBinding, MutableBinding, SetAssignment, ReturnStatement, FailStatement,
                 ImportStatement, StructDecl, SingleQubitGate, ControlledGate, TwoQubitGate, CcnotGate, RotationGate,
                 PauliRotationGate, RFracGate, R1FracGate, IsingGate, MeasureGate, MGate, ResetGate, ResetAllGate,
                 ArbitraryUnitary, NonIntrinsicCall>;

struct AstNode {
    NodeVariant node;
    SourceSpan span;
    bool blank_line_before = false;  // source had an empty line before this statement
    std::string qasm_string;          // filled by codegen

    template <class T>
    const T *as() const {
        return std::get_if<T>(&node);
    }
    template <class T>
    T *as() {
        return std::get_if<T>(&node);
    }
};

/// Calls `fn` on every Expression reachable from `node`, including expressions
/// nested inside calls, indices, ranges, and array literals.
void for_each_expression(const AstNode &node, const std::function<void(const Expression &)> &fn);

/// Node-kind name for diagnostics ("Struct", "ForLoop", ...).
std::string_view node_kind_name(const AstNode &node);

}  // namespace qsc

#endif

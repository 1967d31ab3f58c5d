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

#ifndef QSC_CODEGEN_HPP
#define QSC_CODEGEN_HPP

#include <optional>
#include <string>
#include <vector>

#include "qsc/ast.hpp"
#include "qsc/diagnostics.hpp"

namespace qsc {

/// Source-level type of a binding whose QASM type is being chosen.
enum class TypeTag { Int, BigInt, Double, Bool, Result, Qubit, Indeterminate };

/// QASM type text for a literal-determined value. `max` is the largest absolute
/// integer literal seen; it only matters for Int and BigInt. Returns nullopt
/// for Indeterminate.
std::optional<std::string> infer_width(TypeTag ty, const BigInt &max = 0);

struct CodegenOptions {
    bool prelude = true;
    bool compat_qelib = false;
};

struct CodegenResult {
    std::string qasm;
    std::vector<Diagnostic> diagnostics;
    std::vector<std::string> qubits;  // registered qubits; index i measures into c[i]
};

/// Lowers a Program to OpenQASM 3.0. Every lowered node gets its qasm_string
/// filled in.
CodegenResult compile(AstNode &program, const CodegenOptions &options = {});

/// Expression text with Q# operator spellings rewritten to their QASM forms.
std::string lower_expression(const Expression &e);

}  // namespace qsc

#endif

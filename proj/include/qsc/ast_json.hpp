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

#ifndef QSC_AST_JSON_HPP
#define QSC_AST_JSON_HPP

#include <string>

#include "json.hpp"
#include "qsc/ast.hpp"

namespace qsc {

using Json = nlohmann::ordered_json;

// Objects never carry a node-type tag; keys appear in construction order and
// optional members serialize as `{}` instead of being dropped.
Json to_json(const Parameter &p);
Json to_json(const Expression &e);
Json to_json(const AstNode &node);

/// Two-space indented JSON text of the tree.
std::string serialize_ast(const AstNode &root);

}  // namespace qsc

#endif

#pragma once

#include <string>

#include "dnml/algebra.hpp"

namespace dnml {

// Canonical expression forms for the cross-product unit laws: an expression
// that always evaluates to the empty instance, and one that always evaluates
// to the instance holding only the empty narrative.
AlgebraExpr empty_instance_expr();
AlgebraExpr empty_narrative_expr();

// Applies the equivalence-preserving rule set to fixpoint:
//   select(p, select(q, e))          -> select(and(p, q), e)
//   select(true, e)                  -> e
//   dedup(dedup(e))                  -> dedup(e)
//   union(e, e)                      -> e
//   cross(e, {<>})                   -> e           (and symmetric)
//   cross(e, {})                     -> {}          (and symmetric)
// where {<>} is any project(false, message(...)) and {} any select(false, _).
// Each rule strictly shrinks the operator tree, so the fixpoint is reached
// within node_count(expr) passes.
AlgebraExpr rewrite(const AlgebraExpr& expr);

// Deterministic indented rendering of one expression tree.
std::string render_plan(const AlgebraExpr& expr);

// The plan before and after rewriting, as printed by the CLI.
std::string explain_plan(const AlgebraExpr& expr);

}  // namespace dnml

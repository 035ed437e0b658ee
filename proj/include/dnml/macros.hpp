#pragma once

#include <string>
#include <vector>

#include "dnml/algebra.hpp"

namespace dnml {

// Macro expansions for the derived operations. Expansion is purely syntactic:
// each returns a tree of core operators over the given inputs, so the
// evaluator and rewriter never see a macro.

// Merge the messages of two inputs that mention all of the shared characters:
// select each side on the shared characters, cross, group-aggregate merging
// the mentioning messages and dropping the rest, project out empty messages.
// Throws Error on an empty character list.
AlgebraExpr expand_join(std::vector<std::string> shared_chars, AlgebraExpr lhs,
                        AlgebraExpr rhs);

// Summarize toward more general characters: select narratives mentioning the
// character, select narratives mentioning a generalization of it, cross the
// two, merge the mentioning messages, drop and project out the rest.
AlgebraExpr expand_rollup(std::string character, AlgebraExpr input);

// The inverse walk of roll-up: the hierarchy atom points at specializations
// of the character instead of generalizations.
AlgebraExpr expand_drilldown(std::string character, AlgebraExpr input);

// Keep only contradictory messages about the given characters: select, pool
// across narratives with a contradiction check, project out empty messages.
// Throws Error on an empty character list.
AlgebraExpr expand_compare(std::vector<std::string> characters,
                           AlgebraExpr input);

}  // namespace dnml

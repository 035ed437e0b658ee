#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "dnml/algebra.hpp"

namespace dnml {

struct ParseError : Error {
    ParseError(std::size_t line, std::size_t column, const std::string& what);
    std::size_t line;
    std::size_t column;
};

// Parses the textual query syntax into an algebra expression. Keywords are
// case-insensitive, string contents case-sensitive. Macro calls (join,
// rollup, drilldown, compare) are expanded during parsing.
//
//   query    := expr ";"?
//   expr     := "select" "(" dncond "," expr ")"
//             | "project" "(" msgcond "," expr ")"
//             | "dedup" "(" expr ")"
//             | "groupagg" "(" specs "," expr ")"
//             | "groupaggacross" "(" specs "," expr ")"
//             | "orderby" "(" sortspecs "," expr ")"
//             | "concat" "(" expr ")"
//             | "cross" "(" expr "," expr ")" | "union" "(" expr "," expr ")"
//             | "intersect" "(" expr "," expr ")" | "diff" "(" expr "," expr ")"
//             | "message" "(" strlist ";" strlist ";" str ")"
//             | "join" "(" strlist "," expr "," expr ")"
//             | "rollup" "(" str "," expr ")" | "drilldown" "(" str "," expr ")"
//             | "compare" "(" strlist "," expr ")"
//             | IDENT
//   specs    := "[" msgcond ":" AGG ("," msgcond ":" AGG)* "]"
//   sortspecs:= "[" msgcond ":" SORT ("," msgcond ":" SORT)* "]"
//   dncond   := "exists" "(" msgcond ")" | "forall" "(" msgcond ")"
//             | "msgrel" "(" REL ")" | "and" "(" dncond "," dncond ")"
//             | "or" "(" dncond "," dncond ")" | "not" "(" dncond ")"
//             | "true" | "false"
//   msgcond  := "hasChar" "(" str ")" | "hasMeasure" "(" str ")"
//             | "hasPredicate" "(" str ")" | "hasCharRel" "(" REL "," str ")"
//             | "hasCharRelInv" "(" REL "," str ")" | "isEmpty"
//             | "and" "(" msgcond "," msgcond ")" | "or" "(" msgcond "," msgcond ")"
//             | "not" "(" msgcond ")" | "true" | "false"
//   AGG      := "unionMerge" | "check" | "drop" | "first"
//   SORT     := "byCharLex" | "byMeasureLex" | "byPosition" | "reversed" "(" SORT ")"
//   REL      := "spec" | "spatial" | "temporal" | "sim"
//   strlist  := (str ("," str)*)?
//   str      := double-quoted, backslash-escaped
AlgebraExpr parse_query(std::string_view text);

// Inverse pretty-printers: parse_query(render(e)) == e.
std::string render(const AlgebraExpr& expr);
std::string render(const MsgCondition& condition);
std::string render(const DnCondition& condition);
std::string render(const Sorter& sorter);

}  // namespace dnml

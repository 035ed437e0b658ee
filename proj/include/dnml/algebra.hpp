#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "dnml/conditions.hpp"
#include "dnml/model.hpp"
#include "dnml/relations.hpp"

namespace dnml {

struct EvalError : Error {
    using Error::Error;
};

// Built-in aggregation functions. Every aggregator maps the empty group to
// the empty message.
//   UnionMerge: union of characters and measures; the predicate is kept when
//               all inputs agree, otherwise merged(p1,...,pk) over the sorted
//               distinct input predicates.
//   Check:      UnionMerge result if the group is contradictory, else empty.
//               Two messages are contradictory iff they have equal character
//               and measure sets but different predicates.
//   Drop:       always the empty message.
//   First:      the group member with the smallest source position.
enum class AggregatorKind { UnionMerge, Check, Drop, First };

std::string_view to_string(AggregatorKind kind);

// Sorting functions for order-by. Ties always fall back to the source
// position, which is unique per occurrence, so every sorter is a total
// deterministic order.
struct Sorter {
    enum class Kind { ByCharLex, ByMeasureLex, ByPosition, Reversed };

    Kind kind = Kind::ByPosition;
    std::vector<Sorter> inner;  // size 1 for Reversed

    static Sorter by_char_lex();
    static Sorter by_measure_lex();
    static Sorter by_position();
    static Sorter reversed(Sorter inner);

    bool operator==(const Sorter&) const = default;
};

struct AggSpec {
    MsgCondition condition;
    AggregatorKind aggregator = AggregatorKind::UnionMerge;
    bool operator==(const AggSpec&) const = default;
};

struct SortSpec {
    MsgCondition condition;
    Sorter sorter;
    bool operator==(const SortSpec&) const = default;
};

struct PositionedMessage {
    std::size_t position = 0;  // 1-based position in the source narrative
    Message message;
};

// group must hold distinct messages ordered by first occurrence (First picks
// the front).
Message apply_aggregator(AggregatorKind kind, const std::vector<Message>& group);

// Maps the selected occurrences to a tuple containing each occurrence exactly
// once, in the sorter's order.
std::vector<Message> apply_sorter(const Sorter& sorter,
                                  std::vector<PositionedMessage> occurrences);

// The operators. Each maps instances to an instance (closure); the ones that
// evaluate conditions take the relation store.
Instance op_constant(const Message& m);
Instance op_select(const DnCondition& condition, const Instance& input,
                   const RelationStore& store);
Instance op_project(const MsgCondition& condition, const Instance& input,
                    const RelationStore& store);
Instance op_dedup(const Instance& input);
Instance op_group_aggregate(const std::vector<AggSpec>& specs,
                            const Instance& input, const RelationStore& store);
Instance op_group_aggregate_across(const std::vector<AggSpec>& specs,
                                   const Instance& input,
                                   const RelationStore& store);
Instance op_order_by(const std::vector<SortSpec>& specs, const Instance& input,
                     const RelationStore& store);
Instance op_concat(const Instance& input);
Instance op_cross(const Instance& lhs, const Instance& rhs);
Instance op_union(const Instance& lhs, const Instance& rhs);
Instance op_intersect(const Instance& lhs, const Instance& rhs);
Instance op_difference(const Instance& lhs, const Instance& rhs);

// Expression tree over the operators. Constants carry a message, sources a
// name resolved against the evaluation environment.
struct AlgebraExpr {
    enum class Kind {
        Constant,
        Source,
        Select,
        Project,
        Dedup,
        GroupAgg,
        GroupAggAcross,
        OrderBy,
        Concat,
        Cross,
        Union,
        Intersect,
        Difference
    };

    Kind kind = Kind::Constant;
    Message constant;
    std::string source;
    DnCondition dn_condition;
    MsgCondition msg_condition;
    std::vector<AggSpec> agg_specs;
    std::vector<SortSpec> sort_specs;
    std::vector<AlgebraExpr> children;

    static AlgebraExpr make_constant(Message m);
    static AlgebraExpr make_source(std::string name);
    static AlgebraExpr select(DnCondition condition, AlgebraExpr input);
    static AlgebraExpr project(MsgCondition condition, AlgebraExpr input);
    static AlgebraExpr dedup(AlgebraExpr input);
    static AlgebraExpr group_agg(std::vector<AggSpec> specs, AlgebraExpr input);
    static AlgebraExpr group_agg_across(std::vector<AggSpec> specs,
                                        AlgebraExpr input);
    static AlgebraExpr order_by(std::vector<SortSpec> specs, AlgebraExpr input);
    static AlgebraExpr concat(AlgebraExpr input);
    static AlgebraExpr cross(AlgebraExpr lhs, AlgebraExpr rhs);
    static AlgebraExpr union_(AlgebraExpr lhs, AlgebraExpr rhs);
    static AlgebraExpr intersect(AlgebraExpr lhs, AlgebraExpr rhs);
    static AlgebraExpr difference(AlgebraExpr lhs, AlgebraExpr rhs);

    bool operator==(const AlgebraExpr&) const = default;
};

// Number of operator nodes (conditions not counted). Rewrite termination is
// bounded by this.
std::size_t node_count(const AlgebraExpr& expr);

struct Environment {
    std::map<std::string, Instance> sources;
    RelationStore store;
};

// Bottom-up evaluation. The final result's narratives are renamed
// q<query_id>#<ordinal> with ordinals following the canonical tuple order.
// Throws EvalError on an unbound source or an empty spec list.
Instance evaluate(const AlgebraExpr& expr, const Environment& env,
                  int query_id = 1);

}  // namespace dnml

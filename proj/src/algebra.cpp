#include "dnml/algebra.hpp"

#include <algorithm>
#include <utility>

namespace dnml {

std::string_view to_string(AggregatorKind kind) {
    switch (kind) {
        case AggregatorKind::UnionMerge: return "unionMerge";
        case AggregatorKind::Check: return "check";
        case AggregatorKind::Drop: return "drop";
        case AggregatorKind::First: return "first";
    }
    return "?";
}

Sorter Sorter::by_char_lex() { return {Kind::ByCharLex, {}}; }
Sorter Sorter::by_measure_lex() { return {Kind::ByMeasureLex, {}}; }
Sorter Sorter::by_position() { return {Kind::ByPosition, {}}; }

Sorter Sorter::reversed(Sorter inner) {
    Sorter s;
    s.kind = Kind::Reversed;
    s.inner.push_back(std::move(inner));
    return s;
}

namespace {

Message union_merge(const std::vector<Message>& group) {
    std::vector<std::string> characters;
    std::vector<std::string> measures;
    std::set<std::string> predicates;
    for (const Message& m : group) {
        characters.insert(characters.end(), m.characters().begin(),
                          m.characters().end());
        measures.insert(measures.end(), m.measures().begin(),
                        m.measures().end());
        predicates.insert(m.predicate());
    }
    std::string predicate;
    if (predicates.size() == 1) {
        predicate = *predicates.begin();
    } else {
        // Merging must still yield a single predicate; fold the disagreeing
        // ones into a canonical composite over the sorted distinct names.
        predicate = "merged(";
        bool first = true;
        for (const auto& p : predicates) {
            if (!first) predicate += ",";
            predicate += p;
            first = false;
        }
        predicate += ")";
    }
    return Message(std::move(characters), std::move(measures),
                   std::move(predicate));
}

bool is_contradictory(const std::vector<Message>& group) {
    for (std::size_t i = 0; i < group.size(); ++i) {
        for (std::size_t j = i + 1; j < group.size(); ++j) {
            if (group[i].characters() == group[j].characters() &&
                group[i].measures() == group[j].measures() &&
                group[i].predicate() != group[j].predicate())
                return true;
        }
    }
    return false;
}

// Iteration order over a set of narratives wherever the output depends on it
// (concatenation, cross product, the across-pool): ascending name, ties
// broken by the canonical tuple order.
std::vector<const Narrative*> by_name_order(const Instance& instance) {
    std::vector<const Narrative*> order;
    order.reserve(instance.size());
    for (const Narrative& n : instance.narratives()) order.push_back(&n);
    std::stable_sort(order.begin(), order.end(),
                     [](const Narrative* a, const Narrative* b) {
                         if (a->name() != b->name()) return a->name() < b->name();
                         return a->messages() < b->messages();
                     });
    return order;
}

// Distinct messages of n satisfying the condition, in first-occurrence order.
std::vector<Message> group_of(const Narrative& n, const MsgCondition& condition,
                              const RelationStore& store) {
    std::vector<Message> group;
    for (const Message& m : n.messages()) {
        if (!eval_msg_condition(condition, m, store)) continue;
        if (std::find(group.begin(), group.end(), m) == group.end())
            group.push_back(m);
    }
    return group;
}

void require_specs(const std::vector<AggSpec>& specs) {
    if (specs.empty())
        throw EvalError("group-aggregate requires at least one spec");
}

void require_specs(const std::vector<SortSpec>& specs) {
    if (specs.empty()) throw EvalError("order-by requires at least one spec");
}

std::string joined_name(const Narrative& lhs, const Narrative& rhs) {
    if (lhs.name().empty()) return rhs.name();
    if (rhs.name().empty()) return lhs.name();
    return lhs.name() + "+" + rhs.name();
}

}  // namespace

Message apply_aggregator(AggregatorKind kind,
                         const std::vector<Message>& group) {
    if (group.empty()) return Message();
    switch (kind) {
        case AggregatorKind::UnionMerge: return union_merge(group);
        case AggregatorKind::Check:
            return is_contradictory(group) ? union_merge(group) : Message();
        case AggregatorKind::Drop: return Message();
        case AggregatorKind::First: return group.front();
    }
    return Message();
}

std::vector<Message> apply_sorter(const Sorter& sorter,
                                  std::vector<PositionedMessage> occurrences) {
    using Kind = Sorter::Kind;
    auto char_key = [](const Message& m) -> const std::string& {
        static const std::string empty;
        return m.characters().empty() ? empty : *m.characters().begin();
    };
    auto measure_key = [](const Message& m) -> const std::string& {
        static const std::string empty;
        return m.measures().empty() ? empty : *m.measures().begin();
    };
    switch (sorter.kind) {
        case Kind::ByPosition:
            std::sort(occurrences.begin(), occurrences.end(),
                      [](const PositionedMessage& a, const PositionedMessage& b) {
                          return a.position < b.position;
                      });
            break;
        case Kind::ByCharLex:
            std::sort(occurrences.begin(), occurrences.end(),
                      [&](const PositionedMessage& a, const PositionedMessage& b) {
                          return std::tie(char_key(a.message),
                                          measure_key(a.message), a.position) <
                                 std::tie(char_key(b.message),
                                          measure_key(b.message), b.position);
                      });
            break;
        case Kind::ByMeasureLex:
            std::sort(occurrences.begin(), occurrences.end(),
                      [&](const PositionedMessage& a, const PositionedMessage& b) {
                          return std::tie(measure_key(a.message),
                                          char_key(a.message), a.position) <
                                 std::tie(measure_key(b.message),
                                          char_key(b.message), b.position);
                      });
            break;
        case Kind::Reversed: {
            auto inner = apply_sorter(sorter.inner[0], std::move(occurrences));
            std::reverse(inner.begin(), inner.end());
            return inner;
        }
    }
    std::vector<Message> out;
    out.reserve(occurrences.size());
    for (auto& occ : occurrences) out.push_back(std::move(occ.message));
    return out;
}

Instance op_constant(const Message& m) {
    Instance out;
    out.add(Narrative("", {m}));
    return out;
}

Instance op_select(const DnCondition& condition, const Instance& input,
                   const RelationStore& store) {
    Instance out;
    for (const Narrative& n : input.narratives()) {
        if (eval_dn_condition(condition, n, store)) out.add(n);
    }
    return out;
}

Instance op_project(const MsgCondition& condition, const Instance& input,
                    const RelationStore& store) {
    Instance out;
    for (const Narrative& n : input.narratives()) {
        MessageSeq kept;
        for (const Message& m : n.messages()) {
            if (eval_msg_condition(condition, m, store)) kept.push_back(m);
        }
        out.add(Narrative(n.name(), std::move(kept)));
    }
    return out;
}

Instance op_dedup(const Instance& input) {
    Instance out;
    for (const Narrative& n : input.narratives()) {
        MessageSeq kept;
        for (const Message& m : n.messages()) {
            if (std::find(kept.begin(), kept.end(), m) == kept.end())
                kept.push_back(m);
        }
        out.add(Narrative(n.name(), std::move(kept)));
    }
    return out;
}

Instance op_group_aggregate(const std::vector<AggSpec>& specs,
                            const Instance& input, const RelationStore& store) {
    require_specs(specs);
    Instance out;
    for (const Narrative& n : input.narratives()) {
        MessageSeq result;
        result.reserve(specs.size());
        for (const AggSpec& spec : specs) {
            result.push_back(
                apply_aggregator(spec.aggregator, group_of(n, spec.condition, store)));
        }
        out.add(Narrative(n.name(), std::move(result)));
    }
    return out;
}

Instance op_group_aggregate_across(const std::vector<AggSpec>& specs,
                                   const Instance& input,
                                   const RelationStore& store) {
    require_specs(specs);
    // Pool the distinct messages of every narrative. The pool order matches
    // dedup(concat(input)), which keeps the across/per-narrative equivalence
    // exact for position-sensitive aggregators.
    std::vector<Message> pool;
    for (const Narrative* n : by_name_order(input)) {
        for (const Message& m : n->messages()) {
            if (std::find(pool.begin(), pool.end(), m) == pool.end())
                pool.push_back(m);
        }
    }
    MessageSeq result;
    result.reserve(specs.size());
    for (const AggSpec& spec : specs) {
        std::vector<Message> group;
        for (const Message& m : pool) {
            if (eval_msg_condition(spec.condition, m, store)) group.push_back(m);
        }
        result.push_back(apply_aggregator(spec.aggregator, group));
    }
    Instance out;
    out.add(Narrative("", std::move(result)));
    return out;
}

Instance op_order_by(const std::vector<SortSpec>& specs, const Instance& input,
                     const RelationStore& store) {
    require_specs(specs);
    Instance out;
    for (const Narrative& n : input.narratives()) {
        MessageSeq result;
        for (const SortSpec& spec : specs) {
            std::vector<PositionedMessage> occurrences;
            for (std::size_t i = 0; i < n.length(); ++i) {
                if (eval_msg_condition(spec.condition, n.messages()[i], store))
                    occurrences.push_back({i + 1, n.messages()[i]});
            }
            auto sorted = apply_sorter(spec.sorter, std::move(occurrences));
            result.insert(result.end(), std::make_move_iterator(sorted.begin()),
                          std::make_move_iterator(sorted.end()));
        }
        out.add(Narrative(n.name(), std::move(result)));
    }
    return out;
}

Instance op_concat(const Instance& input) {
    MessageSeq all;
    for (const Narrative* n : by_name_order(input)) {
        all.insert(all.end(), n->messages().begin(), n->messages().end());
    }
    Instance out;
    out.add(Narrative("", std::move(all)));
    return out;
}

Instance op_cross(const Instance& lhs, const Instance& rhs) {
    Instance out;
    for (const Narrative* l : by_name_order(lhs)) {
        for (const Narrative* r : by_name_order(rhs)) {
            MessageSeq seq = l->messages();
            seq.insert(seq.end(), r->messages().begin(), r->messages().end());
            out.add(Narrative(joined_name(*l, *r), std::move(seq)));
        }
    }
    return out;
}

Instance op_union(const Instance& lhs, const Instance& rhs) {
    Instance out = lhs;
    for (const Narrative& n : rhs.narratives()) out.add(n);
    return out;
}

Instance op_intersect(const Instance& lhs, const Instance& rhs) {
    Instance out;
    for (const Narrative& n : lhs.narratives()) {
        if (rhs.contains_tuple(n.messages())) out.add(n);
    }
    return out;
}

Instance op_difference(const Instance& lhs, const Instance& rhs) {
    Instance out;
    for (const Narrative& n : lhs.narratives()) {
        if (!rhs.contains_tuple(n.messages())) out.add(n);
    }
    return out;
}

AlgebraExpr AlgebraExpr::make_constant(Message m) {
    AlgebraExpr e;
    e.kind = Kind::Constant;
    e.constant = std::move(m);
    return e;
}

AlgebraExpr AlgebraExpr::make_source(std::string name) {
    AlgebraExpr e;
    e.kind = Kind::Source;
    e.source = std::move(name);
    return e;
}

AlgebraExpr AlgebraExpr::select(DnCondition condition, AlgebraExpr input) {
    AlgebraExpr e;
    e.kind = Kind::Select;
    e.dn_condition = std::move(condition);
    e.children.push_back(std::move(input));
    return e;
}

AlgebraExpr AlgebraExpr::project(MsgCondition condition, AlgebraExpr input) {
    AlgebraExpr e;
    e.kind = Kind::Project;
    e.msg_condition = std::move(condition);
    e.children.push_back(std::move(input));
    return e;
}

AlgebraExpr AlgebraExpr::dedup(AlgebraExpr input) {
    AlgebraExpr e;
    e.kind = Kind::Dedup;
    e.children.push_back(std::move(input));
    return e;
}

AlgebraExpr AlgebraExpr::group_agg(std::vector<AggSpec> specs,
                                   AlgebraExpr input) {
    AlgebraExpr e;
    e.kind = Kind::GroupAgg;
    e.agg_specs = std::move(specs);
    e.children.push_back(std::move(input));
    return e;
}

AlgebraExpr AlgebraExpr::group_agg_across(std::vector<AggSpec> specs,
                                          AlgebraExpr input) {
    AlgebraExpr e;
    e.kind = Kind::GroupAggAcross;
    e.agg_specs = std::move(specs);
    e.children.push_back(std::move(input));
    return e;
}

AlgebraExpr AlgebraExpr::order_by(std::vector<SortSpec> specs,
                                  AlgebraExpr input) {
    AlgebraExpr e;
    e.kind = Kind::OrderBy;
    e.sort_specs = std::move(specs);
    e.children.push_back(std::move(input));
    return e;
}

AlgebraExpr AlgebraExpr::concat(AlgebraExpr input) {
    AlgebraExpr e;
    e.kind = Kind::Concat;
    e.children.push_back(std::move(input));
    return e;
}

namespace {

AlgebraExpr binary(AlgebraExpr::Kind kind, AlgebraExpr lhs, AlgebraExpr rhs) {
    AlgebraExpr e;
    e.kind = kind;
    e.children.push_back(std::move(lhs));
    e.children.push_back(std::move(rhs));
    return e;
}

}  // namespace

AlgebraExpr AlgebraExpr::cross(AlgebraExpr lhs, AlgebraExpr rhs) {
    return binary(Kind::Cross, std::move(lhs), std::move(rhs));
}

AlgebraExpr AlgebraExpr::union_(AlgebraExpr lhs, AlgebraExpr rhs) {
    return binary(Kind::Union, std::move(lhs), std::move(rhs));
}

AlgebraExpr AlgebraExpr::intersect(AlgebraExpr lhs, AlgebraExpr rhs) {
    return binary(Kind::Intersect, std::move(lhs), std::move(rhs));
}

AlgebraExpr AlgebraExpr::difference(AlgebraExpr lhs, AlgebraExpr rhs) {
    return binary(Kind::Difference, std::move(lhs), std::move(rhs));
}

std::size_t node_count(const AlgebraExpr& expr) {
    std::size_t count = 1;
    for (const AlgebraExpr& child : expr.children) count += node_count(child);
    return count;
}

namespace {

Instance eval_node(const AlgebraExpr& expr, const Environment& env) {
    using Kind = AlgebraExpr::Kind;
    switch (expr.kind) {
        case Kind::Constant: return op_constant(expr.constant);
        case Kind::Source: {
            auto it = env.sources.find(expr.source);
            if (it == env.sources.end())
                throw EvalError("unbound source '" + expr.source + "'");
            return it->second;
        }
        case Kind::Select:
            return op_select(expr.dn_condition, eval_node(expr.children[0], env),
                             env.store);
        case Kind::Project:
            return op_project(expr.msg_condition,
                              eval_node(expr.children[0], env), env.store);
        case Kind::Dedup: return op_dedup(eval_node(expr.children[0], env));
        case Kind::GroupAgg:
            return op_group_aggregate(expr.agg_specs,
                                      eval_node(expr.children[0], env),
                                      env.store);
        case Kind::GroupAggAcross:
            return op_group_aggregate_across(expr.agg_specs,
                                             eval_node(expr.children[0], env),
                                             env.store);
        case Kind::OrderBy:
            return op_order_by(expr.sort_specs, eval_node(expr.children[0], env),
                               env.store);
        case Kind::Concat: return op_concat(eval_node(expr.children[0], env));
        case Kind::Cross:
            return op_cross(eval_node(expr.children[0], env),
                            eval_node(expr.children[1], env));
        case Kind::Union:
            return op_union(eval_node(expr.children[0], env),
                            eval_node(expr.children[1], env));
        case Kind::Intersect:
            return op_intersect(eval_node(expr.children[0], env),
                                eval_node(expr.children[1], env));
        case Kind::Difference:
            return op_difference(eval_node(expr.children[0], env),
                                 eval_node(expr.children[1], env));
    }
    throw EvalError("unknown expression node");
}

}  // namespace

Instance evaluate(const AlgebraExpr& expr, const Environment& env,
                  int query_id) {
    Instance raw = eval_node(expr, env);
    Instance named;
    std::size_t ordinal = 1;
    for (const Narrative& n : raw.narratives()) {
        named.add(Narrative(
            "q" + std::to_string(query_id) + "#" + std::to_string(ordinal++),
            n.messages()));
    }
    return named;
}

}  // namespace dnml

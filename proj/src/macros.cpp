#include "dnml/macros.hpp"

#include <algorithm>
#include <set>

namespace dnml {

namespace {

// Conjunction of hasChar atoms over the sorted distinct labels, so the same
// character set always expands to the same condition.
MsgCondition all_chars_condition(const std::vector<std::string>& labels,
                                 const char* macro) {
    std::set<std::string> sorted;
    for (const auto& raw : labels) {
        auto label = canonical_label(raw);
        if (label.empty())
            throw Error(std::string(macro) +
                        ": character label is empty after canonicalization");
        sorted.insert(std::move(label));
    }
    if (sorted.empty())
        throw Error(std::string(macro) + " requires at least one character");
    auto it = sorted.begin();
    MsgCondition condition = MsgCondition::has_char(*it);
    for (++it; it != sorted.end(); ++it) {
        condition = MsgCondition::and_(std::move(condition),
                                       MsgCondition::has_char(*it));
    }
    return condition;
}

// Shared shape of the hierarchy walks: select the mentioning narratives,
// select the related ones, cross, merge the messages matching the merge
// condition, drop the rest, and project out the empties.
AlgebraExpr hierarchy_pipeline(const MsgCondition& mention,
                               const MsgCondition& related,
                               AlgebraExpr input) {
    AlgebraExpr mentioned =
        AlgebraExpr::select(DnCondition::exists(mention), input);
    AlgebraExpr neighbors =
        AlgebraExpr::select(DnCondition::exists(related), std::move(input));
    AlgebraExpr crossed =
        AlgebraExpr::cross(std::move(mentioned), std::move(neighbors));
    MsgCondition merge_condition = MsgCondition::or_(mention, related);
    AlgebraExpr grouped = AlgebraExpr::group_agg(
        {{merge_condition, AggregatorKind::UnionMerge},
         {MsgCondition::not_(merge_condition), AggregatorKind::Drop}},
        std::move(crossed));
    return AlgebraExpr::project(MsgCondition::not_(MsgCondition::is_empty()),
                                std::move(grouped));
}

}  // namespace

AlgebraExpr expand_join(std::vector<std::string> shared_chars, AlgebraExpr lhs,
                        AlgebraExpr rhs) {
    MsgCondition shared = all_chars_condition(shared_chars, "join");
    AlgebraExpr left =
        AlgebraExpr::select(DnCondition::exists(shared), std::move(lhs));
    AlgebraExpr right =
        AlgebraExpr::select(DnCondition::exists(shared), std::move(rhs));
    AlgebraExpr crossed = AlgebraExpr::cross(std::move(left), std::move(right));
    AlgebraExpr grouped = AlgebraExpr::group_agg(
        {{shared, AggregatorKind::UnionMerge},
         {MsgCondition::not_(shared), AggregatorKind::Drop}},
        std::move(crossed));
    return AlgebraExpr::project(MsgCondition::not_(MsgCondition::is_empty()),
                                std::move(grouped));
}

AlgebraExpr expand_rollup(std::string character, AlgebraExpr input) {
    MsgCondition mention = MsgCondition::has_char(character);
    // A generalization of the character appears among the message's
    // characters: character < x with x in C.
    MsgCondition generalizes = MsgCondition::has_char_rel(
        RelationKind::Specialization, std::move(character), /*inverted=*/true);
    return hierarchy_pipeline(mention, generalizes, std::move(input));
}

AlgebraExpr expand_drilldown(std::string character, AlgebraExpr input) {
    MsgCondition mention = MsgCondition::has_char(character);
    // A specialization of the character: c' < character with c' in C.
    MsgCondition specializes = MsgCondition::has_char_rel(
        RelationKind::Specialization, std::move(character), /*inverted=*/false);
    return hierarchy_pipeline(mention, specializes, std::move(input));
}

AlgebraExpr expand_compare(std::vector<std::string> characters,
                           AlgebraExpr input) {
    MsgCondition about = all_chars_condition(characters, "compare");
    AlgebraExpr selected =
        AlgebraExpr::select(DnCondition::exists(about), std::move(input));
    AlgebraExpr checked = AlgebraExpr::group_agg_across(
        {{about, AggregatorKind::Check},
         {MsgCondition::not_(about), AggregatorKind::Drop}},
        std::move(selected));
    return AlgebraExpr::project(MsgCondition::not_(MsgCondition::is_empty()),
                                std::move(checked));
}

}  // namespace dnml

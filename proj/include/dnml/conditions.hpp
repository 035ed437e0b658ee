#pragma once

#include <string>
#include <vector>

#include "dnml/model.hpp"
#include "dnml/relations.hpp"

namespace dnml {

// A condition over a single message. Closed atom vocabulary plus the Boolean
// connectives; And/Or are binary, Not unary.
//
// HasCharRel comes in two directions. The default binds the named character
// on the right: the message has some character c' with c' R label ("has a
// character more specific than label" for the hierarchy). The inverted form
// binds it on the left: the message has some character x with label R x
// ("has a character more general than label"), which is what roll-up needs.
struct MsgCondition {
    enum class Kind {
        True,
        False,
        IsEmpty,
        HasChar,
        HasMeasure,
        HasPredicate,
        HasCharRel,
        And,
        Or,
        Not
    };

    Kind kind = Kind::True;
    std::string label;
    RelationKind rel = RelationKind::Specialization;
    bool rel_inverted = false;
    std::vector<MsgCondition> children;

    static MsgCondition constant(bool value);
    static MsgCondition is_empty();
    static MsgCondition has_char(std::string label);
    static MsgCondition has_measure(std::string label);
    static MsgCondition has_predicate(std::string label);
    static MsgCondition has_char_rel(RelationKind rel, std::string label,
                                     bool inverted = false);
    static MsgCondition and_(MsgCondition lhs, MsgCondition rhs);
    static MsgCondition or_(MsgCondition lhs, MsgCondition rhs);
    static MsgCondition not_(MsgCondition inner);

    bool operator==(const MsgCondition&) const = default;
};

// A condition over a whole narrative. Exists/ForAll quantify a MsgCondition
// over the narrative's messages; MsgPairRel asks for two messages standing in
// the given relation.
struct DnCondition {
    enum class Kind { True, False, Exists, ForAll, MsgPairRel, And, Or, Not };

    Kind kind = Kind::True;
    RelationKind rel = RelationKind::Specialization;
    std::vector<MsgCondition> msg;      // payload of Exists/ForAll
    std::vector<DnCondition> children;  // operands of And/Or/Not

    static DnCondition constant(bool value);
    static DnCondition exists(MsgCondition inner);
    static DnCondition for_all(MsgCondition inner);
    static DnCondition msg_pair_rel(RelationKind rel);
    static DnCondition and_(DnCondition lhs, DnCondition rhs);
    static DnCondition or_(DnCondition lhs, DnCondition rhs);
    static DnCondition not_(DnCondition inner);

    bool operator==(const DnCondition&) const = default;
};

bool eval_msg_condition(const MsgCondition& condition, const Message& m,
                        const RelationStore& store);

// ForAll is vacuously true on the empty narrative.
bool eval_dn_condition(const DnCondition& condition, const Narrative& n,
                       const RelationStore& store);

}  // namespace dnml

#include "dnml/conditions.hpp"

#include <algorithm>

namespace dnml {

namespace {

std::string canonical_atom_label(std::string label, const char* what) {
    auto canonical = canonical_label(label);
    if (canonical.empty())
        throw Error(std::string(what) + " label '" + label +
                    "' is empty after canonicalization");
    return canonical;
}

}  // namespace

MsgCondition MsgCondition::constant(bool value) {
    MsgCondition c;
    c.kind = value ? Kind::True : Kind::False;
    return c;
}

MsgCondition MsgCondition::is_empty() {
    MsgCondition c;
    c.kind = Kind::IsEmpty;
    return c;
}

MsgCondition MsgCondition::has_char(std::string label) {
    MsgCondition c;
    c.kind = Kind::HasChar;
    c.label = canonical_atom_label(std::move(label), "character");
    return c;
}

MsgCondition MsgCondition::has_measure(std::string label) {
    MsgCondition c;
    c.kind = Kind::HasMeasure;
    c.label = canonical_atom_label(std::move(label), "measure");
    return c;
}

MsgCondition MsgCondition::has_predicate(std::string label) {
    MsgCondition c;
    c.kind = Kind::HasPredicate;
    c.label = canonical_label(label);  // the empty predicate is matchable
    return c;
}

MsgCondition MsgCondition::has_char_rel(RelationKind rel, std::string label,
                                        bool inverted) {
    MsgCondition c;
    c.kind = Kind::HasCharRel;
    c.rel = rel;
    c.rel_inverted = inverted;
    c.label = canonical_atom_label(std::move(label), "character");
    return c;
}

MsgCondition MsgCondition::and_(MsgCondition lhs, MsgCondition rhs) {
    MsgCondition c;
    c.kind = Kind::And;
    c.children.push_back(std::move(lhs));
    c.children.push_back(std::move(rhs));
    return c;
}

MsgCondition MsgCondition::or_(MsgCondition lhs, MsgCondition rhs) {
    MsgCondition c;
    c.kind = Kind::Or;
    c.children.push_back(std::move(lhs));
    c.children.push_back(std::move(rhs));
    return c;
}

MsgCondition MsgCondition::not_(MsgCondition inner) {
    MsgCondition c;
    c.kind = Kind::Not;
    c.children.push_back(std::move(inner));
    return c;
}

DnCondition DnCondition::constant(bool value) {
    DnCondition c;
    c.kind = value ? Kind::True : Kind::False;
    return c;
}

DnCondition DnCondition::exists(MsgCondition inner) {
    DnCondition c;
    c.kind = Kind::Exists;
    c.msg.push_back(std::move(inner));
    return c;
}

DnCondition DnCondition::for_all(MsgCondition inner) {
    DnCondition c;
    c.kind = Kind::ForAll;
    c.msg.push_back(std::move(inner));
    return c;
}

DnCondition DnCondition::msg_pair_rel(RelationKind rel) {
    DnCondition c;
    c.kind = Kind::MsgPairRel;
    c.rel = rel;
    return c;
}

DnCondition DnCondition::and_(DnCondition lhs, DnCondition rhs) {
    DnCondition c;
    c.kind = Kind::And;
    c.children.push_back(std::move(lhs));
    c.children.push_back(std::move(rhs));
    return c;
}

DnCondition DnCondition::or_(DnCondition lhs, DnCondition rhs) {
    DnCondition c;
    c.kind = Kind::Or;
    c.children.push_back(std::move(lhs));
    c.children.push_back(std::move(rhs));
    return c;
}

DnCondition DnCondition::not_(DnCondition inner) {
    DnCondition c;
    c.kind = Kind::Not;
    c.children.push_back(std::move(inner));
    return c;
}

bool eval_msg_condition(const MsgCondition& condition, const Message& m,
                        const RelationStore& store) {
    using Kind = MsgCondition::Kind;
    switch (condition.kind) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::IsEmpty: return m.is_empty();
        case Kind::HasChar: return m.has_character(condition.label);
        case Kind::HasMeasure: return m.has_measure(condition.label);
        case Kind::HasPredicate: return m.predicate() == condition.label;
        case Kind::HasCharRel:
            return std::any_of(
                m.characters().begin(), m.characters().end(),
                [&](const std::string& c) {
                    return condition.rel_inverted
                               ? store.related(condition.label, c, condition.rel)
                               : store.related(c, condition.label, condition.rel);
                });
        case Kind::And:
            return eval_msg_condition(condition.children[0], m, store) &&
                   eval_msg_condition(condition.children[1], m, store);
        case Kind::Or:
            return eval_msg_condition(condition.children[0], m, store) ||
                   eval_msg_condition(condition.children[1], m, store);
        case Kind::Not:
            return !eval_msg_condition(condition.children[0], m, store);
    }
    return false;
}

bool eval_dn_condition(const DnCondition& condition, const Narrative& n,
                       const RelationStore& store) {
    using Kind = DnCondition::Kind;
    switch (condition.kind) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Exists:
            return std::any_of(n.messages().begin(), n.messages().end(),
                               [&](const Message& m) {
                                   return eval_msg_condition(condition.msg[0], m,
                                                             store);
                               });
        case Kind::ForAll:
            return std::all_of(n.messages().begin(), n.messages().end(),
                               [&](const Message& m) {
                                   return eval_msg_condition(condition.msg[0], m,
                                                             store);
                               });
        case Kind::MsgPairRel:
            for (const Message& a : n.messages()) {
                for (const Message& b : n.messages()) {
                    if (msg_related(a, b, condition.rel, store)) return true;
                }
            }
            return false;
        case Kind::And:
            return eval_dn_condition(condition.children[0], n, store) &&
                   eval_dn_condition(condition.children[1], n, store);
        case Kind::Or:
            return eval_dn_condition(condition.children[0], n, store) ||
                   eval_dn_condition(condition.children[1], n, store);
        case Kind::Not:
            return !eval_dn_condition(condition.children[0], n, store);
    }
    return false;
}

}  // namespace dnml

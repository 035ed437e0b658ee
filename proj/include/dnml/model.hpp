#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dnml {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonical form of a character/measure/predicate label: leading and trailing
// whitespace removed, internal whitespace runs collapsed to a single space.
// Case is preserved.
std::string canonical_label(std::string_view raw);

// A message <C, V, P>: a set of characters, a set of measures, and exactly one
// predicate. The empty string is the distinguished empty predicate, so the
// default-constructed Message is the empty message <{}, {}, "">.
class Message {
public:
    Message() = default;

    // Canonicalizes every label. Throws Error if a character or measure
    // canonicalizes to the empty string; an empty predicate is legal.
    Message(std::vector<std::string> characters,
            std::vector<std::string> measures,
            std::string predicate);

    const std::set<std::string>& characters() const { return characters_; }
    const std::set<std::string>& measures() const { return measures_; }
    const std::string& predicate() const { return predicate_; }

    bool is_empty() const {
        return characters_.empty() && measures_.empty() && predicate_.empty();
    }
    bool has_character(const std::string& label) const {
        return characters_.count(label) != 0;
    }
    bool has_measure(const std::string& label) const {
        return measures_.count(label) != 0;
    }

    // Structural identity; also the canonical total order used everywhere a
    // deterministic enumeration of messages is needed.
    auto operator<=>(const Message&) const = default;

private:
    std::set<std::string> characters_;
    std::set<std::string> measures_;
    std::string predicate_;
};

using MessageSeq = std::vector<Message>;

// An ordered tuple of messages with a display name. Positions are 1-based and
// the same message value may occupy several positions. The schema length
// normally equals the tuple length; the two-length constructor exists so a
// mismatching schema (e.g. read from a file) can be represented and reported
// by validate_instance.
class Narrative {
public:
    Narrative() = default;
    Narrative(std::string name, MessageSeq messages);
    Narrative(std::string name, std::size_t schema_length, MessageSeq messages);

    const std::string& name() const { return name_; }
    std::size_t schema_length() const { return schema_length_; }
    const MessageSeq& messages() const { return messages_; }
    std::size_t length() const { return messages_.size(); }
    bool empty() const { return messages_.empty(); }

    // All 1-based positions holding m; empty if m does not occur.
    std::set<std::size_t> positions_of(const Message& m) const;

private:
    std::string name_;
    std::size_t schema_length_ = 0;
    MessageSeq messages_;
};

// A set of narratives. Identity is the message tuple; the name is metadata
// and the first-added name wins on collision. Narratives are kept in the
// canonical tuple order, which makes every enumeration deterministic.
class Instance {
public:
    Instance() = default;
    explicit Instance(std::vector<Narrative> narratives);

    // Returns false (keeping the existing element) when an equal tuple is
    // already present.
    bool add(Narrative n);

    const std::vector<Narrative>& narratives() const { return narratives_; }
    std::size_t size() const { return narratives_.size(); }
    bool empty() const { return narratives_.empty(); }

    bool contains_tuple(const MessageSeq& messages) const;
    const Narrative* find_tuple(const MessageSeq& messages) const;

    // Equality on the tuple set, ignoring names.
    bool same_tuples(const Instance& other) const;

private:
    std::vector<Narrative> narratives_;
};

struct Violation {
    std::string narrative;  // display name of the offending narrative
    std::size_t position;   // 1-based message position, 0 for narrative-level
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::vector<std::string> warnings;
    bool ok() const { return violations.empty(); }
};

// Re-checks the model invariants on an instance: schema lengths match tuple
// lengths, all labels canonical, set semantics over tuples hold.
ValidationReport validate_instance(const Instance& instance);

}  // namespace dnml

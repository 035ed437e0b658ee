#include "dnml/model.hpp"

#include <algorithm>
#include <cctype>

namespace dnml {

std::string canonical_label(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(c);
        }
    }
    return out;
}

Message::Message(std::vector<std::string> characters,
                 std::vector<std::string> measures, std::string predicate)
    : predicate_(canonical_label(predicate)) {
    for (const auto& raw : characters) {
        auto label = canonical_label(raw);
        if (label.empty())
            throw Error("character label '" + raw +
                        "' is empty after canonicalization");
        characters_.insert(std::move(label));
    }
    for (const auto& raw : measures) {
        auto label = canonical_label(raw);
        if (label.empty())
            throw Error("measure label '" + raw +
                        "' is empty after canonicalization");
        measures_.insert(std::move(label));
    }
}

Narrative::Narrative(std::string name, MessageSeq messages)
    : name_(std::move(name)),
      schema_length_(messages.size()),
      messages_(std::move(messages)) {}

Narrative::Narrative(std::string name, std::size_t schema_length,
                     MessageSeq messages)
    : name_(std::move(name)),
      schema_length_(schema_length),
      messages_(std::move(messages)) {}

std::set<std::size_t> Narrative::positions_of(const Message& m) const {
    std::set<std::size_t> positions;
    for (std::size_t i = 0; i < messages_.size(); ++i) {
        if (messages_[i] == m) positions.insert(i + 1);
    }
    return positions;
}

Instance::Instance(std::vector<Narrative> narratives) {
    for (auto& n : narratives) add(std::move(n));
}

bool Instance::add(Narrative n) {
    auto it = std::lower_bound(
        narratives_.begin(), narratives_.end(), n,
        [](const Narrative& a, const Narrative& b) {
            return a.messages() < b.messages();
        });
    if (it != narratives_.end() && it->messages() == n.messages()) return false;
    narratives_.insert(it, std::move(n));
    return true;
}

const Narrative* Instance::find_tuple(const MessageSeq& messages) const {
    auto it = std::lower_bound(
        narratives_.begin(), narratives_.end(), messages,
        [](const Narrative& a, const MessageSeq& b) { return a.messages() < b; });
    if (it != narratives_.end() && it->messages() == messages) return &*it;
    return nullptr;
}

bool Instance::contains_tuple(const MessageSeq& messages) const {
    return find_tuple(messages) != nullptr;
}

bool Instance::same_tuples(const Instance& other) const {
    if (narratives_.size() != other.narratives_.size()) return false;
    for (std::size_t i = 0; i < narratives_.size(); ++i) {
        if (narratives_[i].messages() != other.narratives_[i].messages())
            return false;
    }
    return true;
}

namespace {

void check_labels(const Narrative& n, std::size_t position, const Message& m,
                  ValidationReport& report) {
    auto check = [&](const std::string& label, const char* what) {
        if (label.empty() || label != canonical_label(label)) {
            report.violations.push_back(
                {n.name(), position,
                 std::string(what) + " label '" + label + "' is not canonical"});
        }
    };
    for (const auto& c : m.characters()) check(c, "character");
    for (const auto& v : m.measures()) check(v, "measure");
    if (m.predicate() != canonical_label(m.predicate())) {
        report.violations.push_back(
            {n.name(), position,
             "predicate '" + m.predicate() + "' is not canonical"});
    }
}

}  // namespace

ValidationReport validate_instance(const Instance& instance) {
    ValidationReport report;
    const auto& narratives = instance.narratives();
    for (const auto& n : narratives) {
        if (n.schema_length() != n.length()) {
            report.violations.push_back(
                {n.name(), 0,
                 "schema declares length " + std::to_string(n.schema_length()) +
                     " but the tuple has " + std::to_string(n.length()) +
                     " messages"});
        }
        for (std::size_t p = 1; p <= n.length(); ++p) {
            check_labels(n, p, n.messages()[p - 1], report);
        }
    }
    for (std::size_t i = 0; i + 1 < narratives.size(); ++i) {
        if (!(narratives[i].messages() < narratives[i + 1].messages())) {
            report.violations.push_back(
                {narratives[i + 1].name(), 0,
                 "set semantics violated: duplicate or out-of-order tuple"});
        }
    }
    return report;
}

}  // namespace dnml

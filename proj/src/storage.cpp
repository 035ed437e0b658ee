#include "dnml/storage.hpp"

#include <fstream>
#include <sstream>

#include "dnml/query.hpp"
#include "dnml/rewrite.hpp"

namespace dnml {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& path,
                       const std::string& message) {
    throw LoadError(origin + ": " + path + ": " + message);
}

const json& member(const json& object, const std::string& path,
                   const char* key, const std::string& origin) {
    auto it = object.find(key);
    if (it == object.end())
        fail(origin, path, std::string("missing required field '") + key + "'");
    return *it;
}

std::vector<std::string> string_array(const json& node, const std::string& path,
                                      const std::string& origin) {
    if (!node.is_array()) fail(origin, path, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
        const json& item = node[i];
        if (!item.is_string())
            fail(origin, path + "[" + std::to_string(i) + "]",
                 "expected a string");
        out.push_back(item.get<std::string>());
    }
    return out;
}

Message parse_message(const json& node, const std::string& path,
                      const std::string& origin) {
    if (!node.is_object()) fail(origin, path, "expected a message object");
    auto characters =
        string_array(member(node, path, "characters", origin),
                     path + ".characters", origin);
    auto measures = string_array(member(node, path, "measures", origin),
                                 path + ".measures", origin);
    const json& predicate = member(node, path, "predicate", origin);
    if (!predicate.is_string())
        fail(origin, path + ".predicate", "expected a string");
    try {
        return Message(std::move(characters), std::move(measures),
                       predicate.get<std::string>());
    } catch (const Error& e) {
        fail(origin, path, e.what());
    }
}

RelationKind kind_from_key(const std::string& key, const std::string& path,
                           const std::string& origin) {
    for (RelationKind kind : kAllRelationKinds) {
        if (key == to_string(kind)) return kind;
    }
    fail(origin, path,
         "unknown relation kind '" + key +
             "' (expected specialization, spatial, temporal or similarity)");
}

}  // namespace

Database parse_database(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw LoadError(origin + ": invalid JSON: " + e.what());
    }
    if (!doc.is_object()) fail(origin, "$", "expected a JSON object");

    const json& format = member(doc, "$", "format", origin);
    if (!format.is_number_integer() || format.get<int>() != 1)
        fail(origin, "$.format", "unsupported format (expected 1)");

    std::map<RelationKind, PairSet> base;
    if (auto relations = doc.find("relations"); relations != doc.end()) {
        if (!relations->is_object())
            fail(origin, "$.relations", "expected an object");
        for (const auto& [key, value] : relations->items()) {
            const std::string path = "$.relations." + key;
            RelationKind kind = kind_from_key(key, path, origin);
            if (!value.is_array()) fail(origin, path, "expected an array of pairs");
            PairSet pairs;
            for (std::size_t i = 0; i < value.size(); ++i) {
                const std::string pair_path = path + "[" + std::to_string(i) + "]";
                const json& pair = value[i];
                if (!pair.is_array() || pair.size() != 2 ||
                    !pair[0].is_string() || !pair[1].is_string())
                    fail(origin, pair_path, "expected a pair of strings");
                pairs.insert({pair[0].get<std::string>(),
                              pair[1].get<std::string>()});
            }
            base[kind] = std::move(pairs);
        }
    }

    Database db;
    try {
        db.store = RelationStore::build(base);
    } catch (const Error& e) {
        throw LoadError(origin + ": $.relations: " + e.what());
    }

    if (auto narratives = doc.find("narratives"); narratives != doc.end()) {
        if (!narratives->is_array())
            fail(origin, "$.narratives", "expected an array");
        std::set<std::string> names;
        for (std::size_t i = 0; i < narratives->size(); ++i) {
            const std::string path = "$.narratives[" + std::to_string(i) + "]";
            const json& node = (*narratives)[i];
            if (!node.is_object()) fail(origin, path, "expected an object");
            const json& name_node = member(node, path, "name", origin);
            if (!name_node.is_string())
                fail(origin, path + ".name", "expected a string");
            std::string name = name_node.get<std::string>();
            if (!names.insert(name).second)
                fail(origin, path + ".name",
                     "duplicate narrative name '" + name + "'");

            const json& messages_node = member(node, path, "messages", origin);
            if (!messages_node.is_array())
                fail(origin, path + ".messages", "expected an array");
            MessageSeq messages;
            for (std::size_t j = 0; j < messages_node.size(); ++j) {
                messages.push_back(parse_message(
                    messages_node[j],
                    path + ".messages[" + std::to_string(j) + "]", origin));
            }

            if (auto length = node.find("length"); length != node.end()) {
                if (!length->is_number_unsigned())
                    fail(origin, path + ".length",
                         "expected a non-negative integer");
                if (length->get<std::size_t>() != messages.size())
                    fail(origin, path + ".length",
                         "declared length " +
                             std::to_string(length->get<std::size_t>()) +
                             " but the narrative has " +
                             std::to_string(messages.size()) + " messages");
            }

            Narrative narrative(std::move(name), std::move(messages));
            if (!db.instance.add(narrative)) {
                const Narrative* kept = db.instance.find_tuple(narrative.messages());
                db.warnings.push_back(
                    "narrative '" + narrative.name() +
                    "' has the same message tuple as '" + kept->name() +
                    "' and was collapsed into it");
            }
        }
    }
    return db;
}

Database load_database(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_database(buffer.str(), path.filename().string());
}

json instance_to_json(const Instance& instance) {
    json narratives = json::array();
    for (const Narrative& n : instance.narratives()) {
        json messages = json::array();
        for (const Message& m : n.messages()) {
            messages.push_back(
                {{"characters", m.characters()},
                 {"measures", m.measures()},
                 {"predicate", m.predicate()}});
        }
        narratives.push_back(
            {{"name", n.name()}, {"messages", std::move(messages)}});
    }
    return {{"narratives", std::move(narratives)}};
}

json store_to_json(const RelationStore& store) {
    json relations = json::object();
    for (RelationKind kind : kAllRelationKinds) {
        json pairs = json::array();
        for (const auto& [from, to] : store.base_pairs(kind)) {
            pairs.push_back({from, to});
        }
        relations[std::string(to_string(kind))] = std::move(pairs);
    }
    return relations;
}

std::string serialize_database(const Instance& instance,
                               const RelationStore& store) {
    json doc = instance_to_json(instance);
    doc["format"] = 1;
    doc["relations"] = store_to_json(store);
    return doc.dump(2) + "\n";
}

std::string serialize_result(const ResultDocument& document) {
    json doc = instance_to_json(document.result);
    doc["format"] = 1;
    doc["query"] = document.query;
    doc["plan"] = document.plan;
    return doc.dump(2) + "\n";
}

ResultDocument run_query(const Database& db, std::string_view query_text,
                         int query_id) {
    AlgebraExpr parsed = parse_query(query_text);
    AlgebraExpr optimized = rewrite(parsed);
    Environment env;
    env.sources["db"] = db.instance;
    env.store = db.store;
    ResultDocument document;
    document.query = std::string(query_text);
    document.plan = explain_plan(parsed);
    document.result = evaluate(optimized, env, query_id);
    return document;
}

ResultDocument run_query(const std::filesystem::path& db_path,
                         std::string_view query_text) {
    return run_query(load_database(db_path), query_text);
}

std::string to_display(const Message& m) {
    auto join = [](const std::set<std::string>& items) {
        std::string out = "{";
        bool first = true;
        for (const auto& item : items) {
            if (!first) out += ", ";
            out += item;
            first = false;
        }
        return out + "}";
    };
    return "<" + join(m.characters()) + "; " + join(m.measures()) + "; \"" +
           m.predicate() + "\">";
}

std::string to_display(const Narrative& n) {
    std::string out =
        n.name() + "  (" + std::to_string(n.length()) +
        (n.length() == 1 ? " message)" : " messages)");
    for (std::size_t i = 0; i < n.length(); ++i) {
        out += "\n  " + std::to_string(i + 1) + "  " +
               to_display(n.messages()[i]);
    }
    return out;
}

}  // namespace dnml

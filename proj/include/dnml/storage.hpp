#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dnml/algebra.hpp"
#include "dnml/model.hpp"
#include "dnml/relations.hpp"

namespace dnml {

struct LoadError : Error {
    using Error::Error;
};

struct Database {
    Instance instance;
    RelationStore store;
    std::vector<std::string> warnings;  // e.g. collapsed duplicate tuples
};

// Database file layout (format 1):
//   {
//     "format": 1,
//     "relations": { "specialization": [["a","b"], ...], "spatial": [...],
//                    "temporal": [...], "similarity": [...] },
//     "narratives": [ { "name": "...", "length": 3,
//                       "messages": [ { "characters": [...],
//                                       "measures": [...],
//                                       "predicate": "..." }, ... ] }, ... ]
//   }
// "length" is optional and must match the message count when present.
// Narrative names must be unique within a file. Error messages carry the
// document path of the offending field.
Database parse_database(const std::string& text,
                        const std::string& origin = "<memory>");
Database load_database(const std::filesystem::path& path);

nlohmann::json instance_to_json(const Instance& instance);
nlohmann::json store_to_json(const RelationStore& store);

// Full database document; load(serialize(...)) reproduces the model.
std::string serialize_database(const Instance& instance,
                               const RelationStore& store);

struct ResultDocument {
    std::string query;
    std::string plan;
    Instance result;
};

// The result document's "narratives" array uses the database schema, so a
// result can be reloaded as the narratives section of a database file.
std::string serialize_result(const ResultDocument& document);

// parse -> rewrite -> evaluate against the database bound to source name
// "db". Output is byte-deterministic for identical inputs.
ResultDocument run_query(const Database& db, std::string_view query_text,
                         int query_id = 1);
ResultDocument run_query(const std::filesystem::path& db_path,
                         std::string_view query_text);

// One-line rendering of a message, used by the REPL and validation output.
std::string to_display(const Message& m);
std::string to_display(const Narrative& n);

}  // namespace dnml

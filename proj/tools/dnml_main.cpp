#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dnml/query.hpp"
#include "dnml/rewrite.hpp"
#include "dnml/storage.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIoOrValidation = 1;
constexpr int kExitQueryError = 2;

int write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kExitIoOrValidation;
    }
    out << text;
    return kExitOk;
}

int cmd_query(const std::string& db_path, const std::string& query_text,
              const std::string& out_path) {
    dnml::ResultDocument document = dnml::run_query(db_path, query_text);
    return write_output(dnml::serialize_result(document), out_path);
}

int cmd_explain(const std::string& query_text) {
    std::cout << dnml::explain_plan(dnml::parse_query(query_text));
    return kExitOk;
}

int cmd_validate(const std::string& db_path) {
    dnml::Database db = dnml::load_database(db_path);
    for (const auto& warning : db.warnings)
        std::cout << "warning: " << warning << "\n";
    dnml::ValidationReport report = dnml::validate_instance(db.instance);
    for (const auto& violation : report.violations) {
        std::cout << "violation: narrative '" << violation.narrative << "'";
        if (violation.position != 0)
            std::cout << " message " << violation.position;
        std::cout << ": " << violation.detail << "\n";
    }
    if (!report.ok()) return kExitIoOrValidation;
    std::cout << "ok: " << db.instance.size() << " narrative"
              << (db.instance.size() == 1 ? "" : "s") << "\n";
    return kExitOk;
}

std::string trim(const std::string& text) {
    auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

void print_result(const dnml::Instance& result) {
    std::cout << result.size() << " narrative"
              << (result.size() == 1 ? "" : "s") << "\n";
    for (const dnml::Narrative& n : result.narratives())
        std::cout << dnml::to_display(n) << "\n";
}

int cmd_repl(const std::string& db_path) {
    dnml::Database db = dnml::load_database(db_path);
    for (const auto& warning : db.warnings)
        std::cout << "warning: " << warning << "\n";
    std::cout << "loaded " << db.instance.size() << " narrative"
              << (db.instance.size() == 1 ? "" : "s") << " from " << db_path
              << "\ncommands: :load <path>, :explain <query>, :quit\n";
    int query_id = 1;
    std::string line;
    while (true) {
        std::cout << "dnml> " << std::flush;
        if (!std::getline(std::cin, line)) break;  // EOF ends the session
        std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        try {
            if (trimmed == ":quit") break;
            if (trimmed.rfind(":load ", 0) == 0) {
                db = dnml::load_database(trimmed.substr(6));
                for (const auto& warning : db.warnings)
                    std::cout << "warning: " << warning << "\n";
                std::cout << "loaded " << db.instance.size() << " narrative"
                          << (db.instance.size() == 1 ? "" : "s") << "\n";
                continue;
            }
            if (trimmed.rfind(":explain ", 0) == 0) {
                std::cout << dnml::explain_plan(
                    dnml::parse_query(trimmed.substr(9)));
                continue;
            }
            if (trimmed[0] == ':') {
                std::cout << "unknown command '" << trimmed
                          << "' (commands: :load, :explain, :quit)\n";
                continue;
            }
            dnml::ResultDocument document =
                dnml::run_query(db, trimmed, query_id++);
            print_result(document.result);
        } catch (const std::exception& e) {
            std::cout << "error: " << e.what() << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"data narrative database: query, inspect and validate"};
    app.require_subcommand(1);

    std::string db_path;
    std::string query_text;
    std::string out_path;

    CLI::App* query = app.add_subcommand("query", "run one query against a database");
    query->add_option("-d,--database", db_path, "database file")->required();
    query->add_option("-q,--query", query_text, "query text")->required();
    query->add_option("-o,--output", out_path, "write the result document here");

    CLI::App* repl = app.add_subcommand("repl", "interactive session");
    repl->add_option("-d,--database", db_path, "database file")->required();

    CLI::App* explain = app.add_subcommand("explain", "show a query plan");
    explain->add_option("-q,--query", query_text, "query text")->required();

    CLI::App* validate = app.add_subcommand("validate", "check a database file");
    validate->add_option("-d,--database", db_path, "database file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (query->parsed()) return cmd_query(db_path, query_text, out_path);
        if (repl->parsed()) return cmd_repl(db_path);
        if (explain->parsed()) return cmd_explain(query_text);
        if (validate->parsed()) return cmd_validate(db_path);
    } catch (const dnml::ParseError& e) {
        std::cerr << "query error: " << e.what() << "\n";
        return kExitQueryError;
    } catch (const dnml::EvalError& e) {
        std::cerr << "query error: " << e.what() << "\n";
        return kExitQueryError;
    } catch (const dnml::LoadError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoOrValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoOrValidation;
    }
    return kExitOk;
}

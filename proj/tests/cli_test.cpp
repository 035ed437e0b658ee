#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

// End-to-end checks of the installed command-line surface: exit statuses,
// output documents, and the REPL loop, all driven through a shell.

namespace {

struct RunResult {
    int status = -1;
    std::string output;  // stdout only; stderr goes to a capture file
    std::string error;
};

RunResult run_cli(const std::string& args, const std::string& stdin_text = "") {
    const std::string err_file =
        std::string(DNML_CLI_PATH) + ".stderr";  // per-binary scratch path
    std::string command;
    if (!stdin_text.empty()) {
        const std::string in_file = std::string(DNML_CLI_PATH) + ".stdin";
        std::ofstream in(in_file, std::ios::binary);
        in << stdin_text;
        in.close();
        command = std::string(DNML_CLI_PATH) + " " + args + " < " + in_file +
                  " 2> " + err_file;
    } else {
        command =
            std::string(DNML_CLI_PATH) + " " + args + " 2> " + err_file;
    }
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer;
    std::size_t read = 0;
    while ((read = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), read);
    int raw = pclose(pipe);
    result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;

    std::ifstream err(err_file, std::ios::binary);
    result.error.assign(std::istreambuf_iterator<char>(err),
                        std::istreambuf_iterator<char>());
    return result;
}

const std::string kFixture = DNML_FIXTURE_JSON;

}  // namespace

TEST_CASE("query subcommand") {
    SUBCASE("a valid query exits 0 and prints the document") {
        RunResult result = run_cli(
            "query -d " + kFixture +
            " -q 'select(exists(hasMeasure(\"stroke deaths\")), db)'");
        CHECK(result.status == 0);
        CHECK(result.output.find("\"format\": 1") != std::string::npos);
        CHECK(result.output.find("q1#1") != std::string::npos);
        CHECK(result.output.find("q1#2") != std::string::npos);
        CHECK(result.output.find("q1#3") == std::string::npos);
    }
    SUBCASE("a syntactically invalid query exits 2 with a position") {
        RunResult result =
            run_cli("query -d " + kFixture + " -q 'select(, db)'");
        CHECK(result.status == 2);
        CHECK(result.output.empty());
        CHECK(result.error.find("1:8") != std::string::npos);
    }
    SUBCASE("an unbound source exits 2") {
        RunResult result = run_cli("query -d " + kFixture + " -q 'nosuch'");
        CHECK(result.status == 2);
        CHECK(result.error.find("unbound source") != std::string::npos);
    }
    SUBCASE("a missing database exits 1") {
        RunResult result =
            run_cli("query -d /nonexistent.json -q 'select(true, db)'");
        CHECK(result.status == 1);
        CHECK(result.error.find("cannot open") != std::string::npos);
    }
}

TEST_CASE("validate subcommand") {
    RunResult ok = run_cli("validate -d " + kFixture);
    CHECK(ok.status == 0);
    CHECK(ok.output.find("ok: 3 narratives") != std::string::npos);

    RunResult missing = run_cli("validate -d /nonexistent.json");
    CHECK(missing.status == 1);
}

TEST_CASE("explain subcommand shows both plans without evaluating") {
    RunResult result = run_cli("explain -q 'select(true, db)'");
    CHECK(result.status == 0);
    CHECK(result.output.find("plan:") != std::string::npos);
    CHECK(result.output.find("rewritten:") != std::string::npos);
    CHECK(result.output.find("select true") != std::string::npos);
}

TEST_CASE("repl session") {
    SUBCASE("quit exits cleanly") {
        RunResult result = run_cli("repl -d " + kFixture, ":quit\n");
        CHECK(result.status == 0);
    }
    SUBCASE("eof exits cleanly") {
        RunResult result = run_cli("repl -d " + kFixture, "");
        CHECK(result.status == 0);
    }
    SUBCASE("a query renders a result table and the session continues") {
        RunResult result = run_cli(
            "repl -d " + kFixture,
            "project(hasChar(\"black women\"), db)\n:quit\n");
        CHECK(result.status == 0);
        CHECK(result.output.find("3 narratives") != std::string::npos);
        CHECK(result.output.find("black women, stroke") != std::string::npos);
        CHECK(result.output.find("higher-risk") != std::string::npos);
    }
    SUBCASE("errors are reported without ending the session") {
        RunResult result = run_cli("repl -d " + kFixture,
                                   "select(,db)\nselect(false, db)\n:quit\n");
        CHECK(result.status == 0);
        CHECK(result.output.find("error:") != std::string::npos);
        CHECK(result.output.find("0 narratives") != std::string::npos);
    }
    SUBCASE(":explain prints a plan, not a result") {
        RunResult result =
            run_cli("repl -d " + kFixture, ":explain select(true, db)\n:quit\n");
        CHECK(result.status == 0);
        CHECK(result.output.find("rewritten:") != std::string::npos);
        CHECK(result.output.find("narratives\ndnml>") == std::string::npos);
    }
    SUBCASE(":load swaps the database") {
        RunResult result = run_cli("repl -d " + kFixture,
                                   ":load " + kFixture + "\n:quit\n");
        CHECK(result.status == 0);
        CHECK(result.output.find("loaded 3 narratives") != std::string::npos);
    }
}

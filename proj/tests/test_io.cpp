#include "doctest.h"

#include <fstream>
#include <string>

#include "flatd/errors.hpp"
#include "flatd/io.hpp"
#include "flatd/vasquez.hpp"

using namespace flatd;

namespace {

// line/col of the parse error raised by a text, or (0,0) when none
std::pair<int, int> err_at(const std::string& text) {
    try {
        parse_matrix_text(text);
    } catch (const parse_error& e) {
        return {e.line, e.col};
    }
    return {0, 0};
}

}  // namespace

TEST_CASE("matrix text round-trips for every named example") {
    for (const NamedExample& e : examples()) {
        CHECK(parse_matrix_text(matrix_to_file_text(e.matrix)) == e.matrix);
        CHECK(resolve_matrix_argument("example:" + e.name) == e.matrix);
        CHECK(!e.note.empty());
    }
}

TEST_CASE("matrix serialization (frozen)") {
    CHECK(matrix_to_file_text(resolve_matrix_argument("example:min.19.1.1.7")) ==
          "2 4\n2 2 1 3\n1 0 2 2\n");
    CHECK(matrix_to_file_text(make_matrix(1, 1, {{1}})) == "1 1\n1\n");
}

TEST_CASE("comments, blank lines and padding are ignored") {
    GenMatrix m = parse_matrix_text(
        "# a header comment\n"
        "\n"
        "  2 3  \n"
        "# rows follow\n"
        "\t1 2 2\r\n"
        "  2 1 3\n"
        "\n"
        "# trailing comment\n");
    CHECK(m == make_matrix(2, 3, {{1, 2, 2}, {2, 1, 3}}));
}

TEST_CASE("parse errors carry exact line and column positions") {
    CHECK(err_at("") == std::pair<int, int>{1, 1});                  // missing header
    CHECK(err_at("# only comments\n") == std::pair<int, int>{1, 1});
    CHECK(err_at("x 3\n") == std::pair<int, int>{1, 1});             // no generator count
    CHECK(err_at("2\n") == std::pair<int, int>{1, 2});               // no column count
    CHECK(err_at("2 4 x\n") == std::pair<int, int>{1, 5});           // stray header text
    CHECK(err_at("7 3\n") == std::pair<int, int>{1, 1});             // k out of range
    CHECK(err_at("2 33\n") == std::pair<int, int>{1, 1});            // n out of range
    CHECK(err_at("0 3\n") == std::pair<int, int>{1, 1});
    CHECK(err_at("1 2\n1 4\n") == std::pair<int, int>{2, 3});        // entry 4
    CHECK(err_at("1 2\n1 12\n") == std::pair<int, int>{2, 3});       // multi-digit entry
    CHECK(err_at("1 2\n1 x\n") == std::pair<int, int>{2, 3});        // non-numeric entry
    CHECK(err_at("2 2\n1 1\n") == std::pair<int, int>{2, 1});        // missing row 2
    CHECK(err_at("1 2\n1 1 1\n") == std::pair<int, int>{2, 5});      // extra entry
    CHECK(err_at("1 1\n1\n1\n") == std::pair<int, int>{3, 1});       // extra line

    try {
        parse_matrix_text("1 2\n1 4\n");
        CHECK(false);
    } catch (const parse_error& e) {
        CHECK(std::string(e.what()) == "line 2, col 3: entry must be one of 0, 1, 2, 3");
    }
}

TEST_CASE("argument resolution") {
    CHECK_THROWS_AS(resolve_matrix_argument("example:nope"), parse_error);
    CHECK_THROWS_AS(resolve_matrix_argument("/no/such/file.mat"), parse_error);
    CHECK_THROWS_AS(load_matrix_file("/no/such/file.mat"), parse_error);
}

TEST_CASE("fnv1a64 reference vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(hex64(fnv1a64("")) == "cbf29ce484222325");
    CHECK(hex64(0) == "0000000000000000");
}

TEST_CASE("certificate envelope shape and field order") {
    nlohmann::ordered_json payload{{"answer", 42}};
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    checks.push_back({{"name", "c1"}, {"pass", true}});
    nlohmann::ordered_json j = make_certificate("demo", "2 4\n", payload, checks);

    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"schema", "type", "input_hash", "payload", "checks"});

    CHECK(j["schema"] == "flatd-certificate/1");
    CHECK(j["type"] == "demo");
    CHECK(j["input_hash"] == hex64(fnv1a64("2 4\n")));
    CHECK(j["input_hash"].get<std::string>().size() == 16);
    CHECK(j["payload"]["answer"] == 42);
    REQUIRE(j["checks"].size() == 1);
    CHECK(j["checks"][0]["name"] == "c1");
    CHECK(j["checks"][0]["pass"] == true);

    nlohmann::ordered_json empty = make_certificate("demo", "", {}, {});
    CHECK(empty["checks"].is_array());
    CHECK(empty["checks"].empty());
}

TEST_CASE("matrix_json layout") {
    nlohmann::ordered_json j = matrix_json(make_matrix(2, 3, {{1, 3, 2}, {2, 1, 3}}));
    CHECK(j["k"] == 2);
    CHECK(j["n"] == 3);
    REQUIRE(j["rows"].size() == 2);
    CHECK(j["rows"][0] == nlohmann::ordered_json::array({1, 3, 2}));
    CHECK(j["rows"][1] == nlohmann::ordered_json::array({2, 1, 3}));
}

TEST_CASE("published schema file matches the envelope the code emits") {
    std::ifstream f(FLATD_SCHEMA);
    REQUIRE(f.good());
    nlohmann::json s = nlohmann::json::parse(f);
    CHECK(s["$id"] == "flatd-certificate/1");
    CHECK(s["required"] ==
          nlohmann::json::array({"schema", "type", "input_hash", "payload", "checks"}));
    CHECK(s["properties"]["schema"]["const"] == "flatd-certificate/1");
    CHECK(s["properties"]["input_hash"]["pattern"] == "^[0-9a-f]{16}$");
    CHECK(s["properties"]["checks"]["items"]["required"] ==
          nlohmann::json::array({"name", "pass"}));

    // every field the envelope builder writes is declared, in order
    nlohmann::ordered_json j = make_certificate("validate", "x", {}, {});
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    std::vector<std::string> declared;
    for (const auto& r : s["required"]) declared.push_back(r.get<std::string>());
    CHECK(keys == declared);
}

TEST_CASE("lower-bound examples equal the construction output") {
    for (int k = 2; k <= 5; ++k) {
        std::string name = "lower:k" + std::to_string(k);
        CHECK(resolve_matrix_argument("example:" + name) == build_lower_bound_matrix(k));
    }
}

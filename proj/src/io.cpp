#include "flatd/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "flatd/errors.hpp"

namespace flatd {

namespace {

struct LineScanner {
    const std::string& s;
    int lineno;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r')) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos >= s.size();
    }
    int col() { return static_cast<int>(pos) + 1; }
    long parse_int(const char* what) {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw parse_error(lineno, col(), std::string("expected ") + what);
        long v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > 1000000) throw parse_error(lineno, col(), std::string(what) + " out of range");
            ++pos;
        }
        return v;
    }
};

}  // namespace

GenMatrix parse_matrix_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    auto next_content_line = [&]() -> std::optional<int> {
        while (std::getline(in, line)) {
            ++lineno;
            const std::size_t i = line.find_first_not_of(" \t\r");
            if (i == std::string::npos) continue;
            if (line[i] == '#') continue;
            return lineno;
        }
        return std::nullopt;
    };

    if (!next_content_line())
        throw parse_error(lineno > 0 ? lineno : 1, 1, "missing header line 'k n'");
    LineScanner hd{line, lineno};
    const long k = hd.parse_int("generator count");
    const long n = hd.parse_int("column count");
    if (!hd.at_end()) throw parse_error(lineno, hd.col(), "unexpected text after header");
    if (k < 1 || k > max_gens)
        throw parse_error(lineno, 1, "generator count must be in [1, 6]");
    if (n < 1 || n > max_cols)
        throw parse_error(lineno, 1, "column count must be in [1, 32]");

    GenMatrix a;
    a.k = static_cast<int>(k);
    a.n = static_cast<int>(n);
    for (int i = 0; i < a.k; ++i) {
        if (!next_content_line())
            throw parse_error(lineno > 0 ? lineno : 1, 1,
                              "missing matrix row " + std::to_string(i + 1));
        LineScanner sc{line, lineno};
        for (int j = 0; j < a.n; ++j) {
            const int col = (sc.skip_ws(), sc.col());
            const long e = sc.parse_int("matrix entry");
            if (e > 3) throw parse_error(lineno, col, "entry must be one of 0, 1, 2, 3");
            a.set(i, j, static_cast<entry_t>(e));
        }
        if (!sc.at_end()) throw parse_error(lineno, sc.col(), "unexpected extra entry");
    }
    if (next_content_line()) throw parse_error(lineno, 1, "unexpected extra line");
    return a;
}

GenMatrix load_matrix_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw parse_error(1, 1, "cannot open file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_matrix_text(buf.str());
}

std::string matrix_to_file_text(const GenMatrix& a) {
    std::ostringstream out;
    out << a.k << ' ' << a.n << '\n';
    for (int i = 0; i < a.k; ++i) {
        for (int j = 0; j < a.n; ++j) {
            if (j) out << ' ';
            out << int(a.at(i, j));
        }
        out << '\n';
    }
    return out.str();
}

const std::vector<NamedExample>& examples() {
    static const std::vector<NamedExample> table = {
        {"min.19.1.1.7",
         "4-dim, holonomy C2^2, non-diffuse (CARAT min.19.1.1.7)",
         make_matrix(2, 4, {{2, 2, 1, 3}, {1, 0, 2, 2}})},
        {"min.72.1.1.502",
         "5-dim, holonomy C2^3, col-irreducible (CARAT min.72.1.1.502)",
         make_matrix(3, 5, {{0, 3, 2, 1, 2}, {2, 2, 1, 1, 1}, {1, 1, 0, 2, 2}})},
        {"deltaP",
         "3-dim Promislow (Hantzsche-Wendt) group, the classic non-diffuse example",
         make_matrix(2, 3, {{1, 3, 2}, {2, 1, 3}})},
        {"lower:k2", "certified 3-dim lower-bound construction for C2^2",
         make_matrix(2, 3, {{1, 2, 2}, {2, 1, 3}})},
        {"lower:k3", "certified 5-dim lower-bound construction for C2^3",
         make_matrix(3, 5, {{0, 3, 2, 1, 2}, {2, 2, 1, 1, 1}, {1, 1, 0, 2, 2}})},
        {"lower:k4", "certified 10-dim lower-bound construction for C2^4",
         make_matrix(4, 10,
                     {{1, 2, 2, 2, 2, 2, 2, 0, 0, 0},
                      {2, 1, 2, 2, 3, 0, 0, 2, 2, 0},
                      {2, 2, 1, 2, 0, 3, 0, 3, 0, 2},
                      {2, 2, 2, 1, 0, 0, 3, 0, 3, 3}})},
        {"lower:k5", "certified 14-dim lower-bound construction for C2^5",
         make_matrix(5, 14,
                     {{1, 2, 2, 2, 2, 2, 2, 0, 0, 0, 0, 0, 0, 2},
                      {2, 1, 2, 2, 2, 0, 0, 2, 2, 2, 0, 0, 0, 3},
                      {2, 2, 1, 2, 2, 0, 0, 3, 0, 0, 2, 2, 0, 3},
                      {2, 2, 2, 1, 2, 3, 0, 0, 3, 0, 3, 0, 2, 0},
                      {2, 2, 2, 2, 1, 0, 3, 0, 0, 3, 0, 3, 3, 0}})},
    };
    return table;
}

GenMatrix resolve_matrix_argument(const std::string& arg) {
    if (arg.rfind("example:", 0) == 0) {
        const std::string name = arg.substr(8);
        for (const NamedExample& e : examples())
            if (e.name == name) return e.matrix;
        throw parse_error(1, 1, "unknown example: " + name);
    }
    return load_matrix_file(arg);
}

std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

nlohmann::ordered_json make_certificate(const std::string& type,
                                        const std::string& input_text,
                                        nlohmann::ordered_json payload,
                                        nlohmann::ordered_json checks) {
    nlohmann::ordered_json j;
    j["schema"] = "flatd-certificate/1";
    j["type"] = type;
    j["input_hash"] = hex64(fnv1a64(input_text));
    j["payload"] = std::move(payload);
    j["checks"] = checks.is_null() ? nlohmann::ordered_json::array() : std::move(checks);
    return j;
}

nlohmann::ordered_json matrix_json(const GenMatrix& a) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < a.k; ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int j = 0; j < a.n; ++j) row.push_back(int(a.at(i, j)));
        rows.push_back(std::move(row));
    }
    return nlohmann::ordered_json{{"k", a.k}, {"n", a.n}, {"rows", std::move(rows)}};
}

}  // namespace flatd

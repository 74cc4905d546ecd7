#pragma once
// Text and JSON I/O: the matrix file format, the named example table, and
// JSON certificate envelopes shared by all CLI subcommands.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "flatd/matrix.hpp"

namespace flatd {

// Format: optional '#' comment lines, then a "k n" header line, then k lines
// of n space-separated entries from {0,1,2,3}. Throws parse_error carrying
// 1-based line/column on malformed input.
GenMatrix parse_matrix_text(const std::string& text);
GenMatrix load_matrix_file(const std::string& path);

// Inverse of parse_matrix_text (header line plus k rows).
std::string matrix_to_file_text(const GenMatrix& a);

struct NamedExample {
    std::string name;
    std::string note;
    GenMatrix matrix;
};

const std::vector<NamedExample>& examples();

// Accepts a filesystem path or "example:NAME".
GenMatrix resolve_matrix_argument(const std::string& arg);

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t value);

// Envelope: {schema, type, input_hash, payload, checks:[{name, pass}]}.
nlohmann::ordered_json make_certificate(const std::string& type,
                                        const std::string& input_text,
                                        nlohmann::ordered_json payload,
                                        nlohmann::ordered_json checks);

nlohmann::ordered_json matrix_json(const GenMatrix& a);

}  // namespace flatd

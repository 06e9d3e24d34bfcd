#ifndef BIL_MODEL_IO_HPP
#define BIL_MODEL_IO_HPP

// Model files:
//   {"signature": ["p","q"], "worlds": ["a","b"], "order": [["a","b"]],
//    "valuation": {"p": ["b"], "q": []}, "point": "a"}
// "order" lists generating pairs; "point" is optional; any other key is an
// error.  Emitted files list only the covering pairs.

#include <optional>
#include <string>
#include <string_view>

#include "bil/kripke.hpp"

namespace bil {

// Throws ParseError on malformed JSON or schema violations.
RawModel raw_from_json(std::string_view text);
std::string raw_to_json(const RawModel& raw);

std::string model_to_json(const KripkeModel& m, std::optional<std::size_t> point = std::nullopt);

// Reads and parses a file.  Throws Error when it cannot be read.
RawModel load_raw(const std::string& path);

}  // namespace bil

#endif  // BIL_MODEL_IO_HPP

#ifndef BIL_TEST_HELPERS_HPP
#define BIL_TEST_HELPERS_HPP

#include <memory>
#include <string>

#include "bil/kripke.hpp"
#include "bil/model_io.hpp"

namespace bil::test {

inline std::shared_ptr<const KripkeModel> model(const std::string& json) {
  return std::make_shared<const KripkeModel>(normalize_or_throw(raw_from_json(json), NormalizeMode::strict));
}

// a < b with p at b
inline std::shared_ptr<const KripkeModel> chain2() {
  return model(R"({"signature":["p"],"worlds":["a","b"],"order":[["a","b"]],"valuation":{"p":["b"]}})");
}

// single point u with p
inline std::shared_ptr<const KripkeModel> point_p() {
  return model(R"({"signature":["p"],"worlds":["u"],"order":[],"valuation":{"p":["u"]}})");
}

// r < s, r < t with p at s and q at t
inline std::shared_ptr<const KripkeModel> fork() {
  return model(R"({"signature":["p","q"],"worlds":["r","s","t"],"order":[["r","s"],["r","t"]],
                   "valuation":{"p":["s"],"q":["t"]}})");
}

inline std::string data(const std::string& name) { return std::string(BIL_TEST_DATA) + "/" + name; }

}  // namespace bil::test

#endif  // BIL_TEST_HELPERS_HPP

#pragma once

namespace lelogic::fixtures {

// The two bundled worked examples. The same content ships under data/ for
// direct use with the CLI file flags.

inline constexpr const char* plays_csv =
    ",x,y,z\n"
    "a,0,0,1\n"
    "b,1,0,0\n"
    "c,1,1,0\n";

inline constexpr const char* plays_frame_json = R"({
  "kind": "polarity",
  "objects": ["a", "b", "c"],
  "attributes": ["x", "y", "z"],
  "incidence": [["a", "z"], ["b", "x"], ["c", "x"], ["c", "y"]],
  "signature": {"f": {}, "g": {}},
  "relations": {}
})";

inline constexpr const char* plays_valuation_json = R"({
  "d": {"extent": ["b", "c"]},
  "h": {"extent": ["c"]},
  "r": {"extent": ["a"]}
})";

inline constexpr const char* witness_frame_json = R"({
  "kind": "graph",
  "nodes": ["u", "v", "z"],
  "edges": [["u", "u"], ["u", "v"], ["v", "v"], ["v", "z"], ["z", "z"]],
  "signature": {"f": {}, "g": {}},
  "relations": {}
})";

inline constexpr const char* witness_valuation_json = R"({
  "p": {"extent": ["z"]},
  "q": {"extent": ["u"]}
})";

}  // namespace lelogic::fixtures

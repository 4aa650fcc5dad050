#pragma once

#include <string>
#include <vector>

#include "projdyn/ratmap.hpp"

namespace projdyn {

// Built-in example map with its expected metadata; the metadata is
// re-derived and checked by the test suite, never trusted blindly.
struct CorpusEntry {
  std::string name;
  std::string expression;
  int degree = 0;
  bool stable = false;  // bounded certificate up to as_depth
  int as_depth = 0;
  int as_witness = 0;              // first degree drop when not stable
  std::vector<Vec3c> indeterminacy;
  std::string oracle;              // closed-form oracle id or "none"
  std::string note;
};

const std::vector<CorpusEntry>& builtin_corpus();
const CorpusEntry* corpus_find(const std::string& name);
RationalMap corpus_map(const std::string& name);  // InvalidArgument if unknown

// Line-oriented text format, one block per entry:
//   entry <name>
//   expr <map expression>
//   degree <d>
//   as stable <depth> | as unstable <witness>
//   ind <a,b,c> <a,b,c> ...     (complex parts as re or re+imi)
//   oracle <id>
//   note <free text>
//   end
std::string corpus_serialize(const CorpusEntry& e);
std::vector<CorpusEntry> corpus_parse(const std::string& text);

}  // namespace projdyn

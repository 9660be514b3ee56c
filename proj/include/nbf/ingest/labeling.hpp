#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nbf/ingest/methods.hpp"

namespace nbf {

struct Warning {
  std::string kind;
  int line = 1;
  std::string method_id;
};

struct LabeledCorpus {
  std::string kind;
  std::vector<MethodSequence> buggy;
  std::vector<MethodSequence> non_buggy;
  // Warnings of this kind whose method_id matched no method.
  std::size_t unknown_method_warnings = 0;
  // Methods flagged only beyond their token window, moved to non_buggy.
  std::size_t beyond_window = 0;
};

// A method is buggy for `kind` when one of its warnings of that kind sits on
// or before the last line covered by its token window. Both output lists are
// ordered by method_id.
LabeledCorpus label(const std::vector<MethodSequence>& methods,
                    const std::vector<Warning>& warnings,
                    const std::string& kind);

}  // namespace nbf

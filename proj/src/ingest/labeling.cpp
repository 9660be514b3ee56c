#include "nbf/ingest/labeling.hpp"

#include <algorithm>
#include <unordered_map>

#include "nbf/error.hpp"

namespace nbf {

LabeledCorpus label(const std::vector<MethodSequence>& methods,
                    const std::vector<Warning>& warnings, const std::string& kind) {
  std::unordered_map<std::string, std::size_t> by_id;
  by_id.reserve(methods.size());
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (!by_id.emplace(methods[i].method_id(), i).second) {
      throw Error("duplicate method_id " + methods[i].method_id());
    }
  }

  LabeledCorpus out;
  out.kind = kind;
  // 0 = no warning of this kind, 1 = only beyond the window, 2 = buggy.
  std::vector<int> state(methods.size(), 0);
  for (const Warning& w : warnings) {
    if (w.kind != kind) continue;
    const auto it = by_id.find(w.method_id);
    if (it == by_id.end()) {
      ++out.unknown_method_warnings;
      continue;
    }
    int& s = state[it->second];
    if (w.line <= methods[it->second].last_real_line()) {
      s = 2;
    } else {
      s = std::max(s, 1);
    }
  }

  std::vector<std::size_t> order(methods.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return methods[a].method_id() < methods[b].method_id();
  });
  for (std::size_t i : order) {
    if (state[i] == 2) {
      out.buggy.push_back(methods[i]);
    } else {
      if (state[i] == 1) ++out.beyond_window;
      out.non_buggy.push_back(methods[i]);
    }
  }
  return out;
}

}  // namespace nbf

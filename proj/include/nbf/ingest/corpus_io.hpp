#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nbf/ingest/labeling.hpp"
#include "nbf/ingest/methods.hpp"

namespace nbf {

// Loads methods from either a directory of .java files (lexed and extracted,
// file paths relative to the directory) or a JSONL file with one
// {method_id, file, tokens:[{lexeme, class, line}]} object per line.
std::vector<RawMethod> load_corpus(const std::filesystem::path& path);

std::vector<RawMethod> read_methods_jsonl(const std::filesystem::path& path);
void write_methods_jsonl(std::ostream& out, const std::vector<RawMethod>& methods);

// One {kind, line, method_id} object per line; blank lines are ignored.
std::vector<Warning> read_warnings_jsonl(const std::filesystem::path& path);
void write_warnings_jsonl(std::ostream& out, const std::vector<Warning>& warnings);

// Labeled corpus as JSONL: {method_id, file, label, n, tokens:[...]}, buggy
// rows first.
void write_labeled_jsonl(std::ostream& out, const LabeledCorpus& corpus);
LabeledCorpus read_labeled_jsonl(const std::filesystem::path& path,
                                 const std::string& kind);

}  // namespace nbf

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "durcsp/syntax.hpp"

namespace durcsp {

struct CorpusError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CorpusEntry {
  std::string name;  // file stem
  std::string path;
  Spec spec;
};

/// Reads and parses one spec file. A ".dcsp.in" template is instantiated
/// first: every @key@ placeholder is replaced by the value of `key` in the
/// JSON sidecar "<stem>.params.json" next to it. Parse or validation
/// failures, missing sidecars, and leftover placeholders become CorpusError.
Spec load_spec_file(const std::string& path);

/// Loads every *.dcsp and *.dcsp.in spec in the directory, sorted by name.
/// An empty or unreadable directory is a CorpusError.
std::vector<CorpusEntry> load_corpus(const std::string& dir);

}  // namespace durcsp

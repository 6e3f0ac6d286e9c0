#include "durcsp/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace fs = std::filesystem;

namespace durcsp {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string instantiate(const std::string& text, const std::string& sidecar) {
  nlohmann::json params;
  try {
    params = nlohmann::json::parse(read_file(sidecar));
  } catch (const nlohmann::json::exception& e) {
    throw CorpusError(sidecar + ": " + e.what());
  }
  std::string out = text;
  for (auto it = params.begin(); it != params.end(); ++it) {
    std::string value = it->is_string() ? it->get<std::string>() : it->dump();
    std::string key = "@" + it.key() + "@";
    size_t at = 0;
    while ((at = out.find(key, at)) != std::string::npos) {
      out.replace(at, key.size(), value);
      at += value.size();
    }
  }
  size_t open = out.find('@');
  if (open != std::string::npos) {
    size_t close = out.find('@', open + 1);
    throw CorpusError(sidecar + " leaves placeholder " +
                      out.substr(open, close == std::string::npos
                                           ? std::string::npos
                                           : close - open + 1) + " unresolved");
  }
  return out;
}

}  // namespace

Spec load_spec_file(const std::string& path) {
  std::string text = read_file(path);
  if (ends_with(path, ".dcsp.in")) {
    std::string sidecar = path.substr(0, path.size() - 8) + ".params.json";
    text = instantiate(text, sidecar);
  }
  Spec spec;
  try {
    spec = parse_spec(text);
  } catch (const ParseError& e) {
    throw CorpusError(path + ": " + e.what());
  }
  std::vector<Diagnostic> findings = validate(spec);
  if (!findings.empty())
    throw CorpusError(path + ": " + to_string(findings.front().category) + ": " +
                      findings.front().message);
  return spec;
}

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  std::error_code ec;
  std::vector<CorpusEntry> out;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    std::string p = entry.path().string();
    std::string stem;
    if (ends_with(p, ".dcsp.in"))
      stem = entry.path().filename().string().substr(
          0, entry.path().filename().string().size() - 8);
    else if (ends_with(p, ".dcsp"))
      stem = entry.path().stem().string();
    else
      continue;
    out.push_back({stem, p, load_spec_file(p)});
  }
  if (ec) throw CorpusError("cannot open corpus directory " + dir);
  if (out.empty()) throw CorpusError("corpus directory " + dir + " holds no specs");
  std::sort(out.begin(), out.end(),
            [](const CorpusEntry& a, const CorpusEntry& b) { return a.name < b.name; });
  return out;
}

}  // namespace durcsp

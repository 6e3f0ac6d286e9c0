#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "durcsp/corpus.hpp"
#include "durcsp/tcts.hpp"

using namespace durcsp;
namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("the bundled corpus loads, validates and stays sorted") {
  auto entries = load_corpus(DURCSP_CORPUS_DIR);
  REQUIRE(entries.size() == 4);
  CHECK(entries[0].name == "delayed_run");
  CHECK(entries[1].name == "indep_par");
  CHECK(entries[2].name == "seq_choice");
  CHECK(entries[3].name == "ticktock");
  for (const auto& e : entries) {
    CAPTURE(e.name);
    CHECK(validate(e.spec).empty());
    CHECK_FALSE(e.spec.main.empty());
  }
}

TEST_CASE("the recursive corpus entry compiles to a small closed model") {
  auto entries = load_corpus(DURCSP_CORPUS_DIR);
  const Spec& tick = entries[3].spec;
  TimedCTS m = compile(tick);
  CHECK_FALSE(m.truncated);
  CHECK(m.states.size() == 32);
  CHECK(m.transitions.size() == 50);
  CHECK(validate_cts(m, tick).empty());
}

TEST_CASE("empty or missing corpus directories are corrupt") {
  TempDir dir("durcsp-empty-corpus");
  CHECK_THROWS_AS(load_corpus(dir.path.string()), CorpusError);
  CHECK_THROWS_AS(load_corpus((dir.path / "nope").string()), CorpusError);
}

TEST_CASE("spec templates are instantiated from their parameter sidecars") {
  TempDir dir("durcsp-template-corpus");
  write_file(dir.path / "t.dcsp.in",
             "durations a=@da@;\nmain m;\nprocess m := a{@w@}; stop endproc\n");
  write_file(dir.path / "t.params.json", "{\"da\": \"2\", \"w\": \"5\"}");
  auto entries = load_corpus(dir.path.string());
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].name == "t");
  CHECK(entries[0].spec.durations.at("a") == Rat(2));
  CHECK(entries[0].spec.processes.at("m")->bound == Rat(5));
}

TEST_CASE("unsubstituted placeholders are an error, not a silent artifact") {
  TempDir dir("durcsp-holey-corpus");
  write_file(dir.path / "t.dcsp.in",
             "durations a=@da@;\nmain m;\nprocess m := a{@w@}; stop endproc\n");
  write_file(dir.path / "t.params.json", "{\"da\": \"2\"}");
  CHECK_THROWS_AS(load_corpus(dir.path.string()), CorpusError);
}

TEST_CASE("single files load directly") {
  Spec s = load_spec_file(std::string(DURCSP_CORPUS_DIR) + "/seq_choice.dcsp");
  CHECK(s.durations.at("a") == Rat(2));
  CHECK(s.durations.at("b") == Rat(3));
  CHECK_THROWS_AS(load_spec_file(std::string(DURCSP_CORPUS_DIR) + "/absent.dcsp"), CorpusError);
}

TEST_CASE("invalid specs are rejected at load time with their diagnostics") {
  TempDir dir("durcsp-invalid-corpus");
  write_file(dir.path / "bad.dcsp", "main m;\nprocess m := a{1}; stop endproc\n");
  try {
    load_corpus(dir.path.string());
    FAIL("expected CorpusError");
  } catch (const CorpusError& e) {
    CHECK(std::string(e.what()).find("MissingDuration") != std::string::npos);
  }
}

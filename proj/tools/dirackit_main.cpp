#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dirackit/dsl.hpp"

namespace {

int runFile(const std::string& file, const std::string& fixtureDir, bool assertMode, bool text) {
  namespace fs = std::filesystem;
  fs::path path(file);
  if (!fs::exists(path) && !fixtureDir.empty()) path = fs::path(fixtureDir) / file;
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open " << file << "\n";
    return 3;
  }
  std::ostringstream buf;
  buf << in.rdbuf();

  try {
    dirackit::dsl::Document doc = dirackit::dsl::parseDocument(buf.str());
    dirackit::dsl::Json run = dirackit::dsl::executeDocument(doc);
    if (text)
      std::cout << dirackit::dsl::renderText(run);
    else
      std::cout << run.dump(2) << "\n";
    if (assertMode && !dirackit::dsl::allAssertionsHold(run)) return 1;
    return 0;
  } catch (const dirackit::SyntaxError& e) {
    std::cerr << "syntax error: " << e.what() << "\n";
    return 2;
  } catch (const dirackit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact checks for Lagrangian families in TM + T*M"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute a document and print its report");
  std::string file, fixtureDir;
  bool assertMode = false, json = false, text = false;
  run->add_option("file", file, "document to execute")->required();
  run->add_flag("--assert", assertMode, "exit 1 unless every command's assertion holds");
  run->add_flag("--json", json, "emit the canonical JSON report (default)");
  run->add_flag("--text", text, "emit a one-line-per-command summary");
  run->add_option("--fixture-dir", fixtureDir, "directory searched when file is not found");

  CLI11_PARSE(app, argc, argv);
  if (json && text) {
    std::cerr << "--json and --text are mutually exclusive\n";
    return 3;
  }
  return runFile(file, fixtureDir, assertMode, text);
}

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <sys/wait.h>

#include "latmon/automaton.hpp"
#include "latmon/error.hpp"
#include "latmon/io.hpp"
#include "latmon/lattice.hpp"
#include "latmon/ordered_monoid.hpp"

// Runs `stmt` and checks that it throws latmon::Error of the given kind.
#define EXPECT_LATMON_ERROR(stmt, expected_kind)                                   \
  do {                                                                             \
    bool thrown_ = false;                                                          \
    try {                                                                          \
      stmt;                                                                        \
    } catch (const latmon::Error& e_) {                                            \
      thrown_ = true;                                                              \
      EXPECT_EQ(e_.kind(), latmon::ErrorKind::expected_kind) << e_.what();         \
    }                                                                              \
    EXPECT_TRUE(thrown_) << "expected " #expected_kind;                            \
  } while (0)

namespace testing_support {

using namespace latmon;

inline std::string data_path(const std::string& file) { return std::string(LATMON_DATA_DIR) + "/" + file; }

inline LatticePtr share(Lattice l) { return std::make_shared<const Lattice>(std::move(l)); }
inline MonoidPtr share(OrderedMonoid m) { return std::make_shared<const OrderedMonoid>(std::move(m)); }

inline LatticePtr powerset(std::size_t n) { return share(standard_lattice(StandardLattice::Powerset, n)); }
inline LatticePtr chain(std::size_t n) { return share(standard_lattice(StandardLattice::Chain, n)); }
inline LatticePtr boolean() { return share(standard_lattice(StandardLattice::Boolean, 2)); }

// U1 = {1, z}, z absorbing. order: "z<1", "1<z" or "eq".
inline MonoidPtr u1(const std::string& order = "z<1") {
  std::vector<std::pair<std::size_t, std::size_t>> leq;
  if (order == "z<1") leq.emplace_back(1, 0);
  if (order == "1<z") leq.emplace_back(0, 1);
  return share(OrderedMonoid::build({"1", "z"}, 0, {0, 1, 1, 1}, leq));
}

inline MonoidPtr z2() { return share(OrderedMonoid::build({"1", "g"}, 0, {0, 1, 1, 0}, {})); }

inline MonoidPtr trivial_monoid() { return share(OrderedMonoid::build({"1"}, 0, {0}, {})); }

inline LatticeAutomaton load_automaton(const std::string& file) {
  return io::automaton_from_json(io::read_json_file(data_path(file)));
}

inline Word word(const LatticeAutomaton& a, const std::string& text) { return parse_word(a.alphabet(), text); }

inline Lattice::Element elem(const Lattice& l, const std::string& name) { return l.index(name); }

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI with `args` (shell-quoted by the caller), capturing stdout.
inline CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + LATMON_CLI + "\" " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

// Writes `j` to a file under the temp directory and returns its path.
inline std::string temp_json(const std::string& name, const nlohmann::json& j) {
  const auto path = std::filesystem::temp_directory_path() / ("latmon_test_" + name + ".json");
  std::ofstream(path) << j.dump();
  return path.string();
}

}  // namespace testing_support

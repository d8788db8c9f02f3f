#pragma once

// Command-line front end: configuration, field dispatch and exit codes.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cosilt/field.hpp"
#include "cosilt/spec_io.hpp"

namespace cosilt {

enum ExitCode { kOk = 0, kConsistency = 1, kInput = 2, kBudget = 3 };

struct RunConfig {
  std::string command;         // catalog | lattice | pairs | verify | reject
  std::string algebra_path;
  std::string family = "auto";  // auto | hereditary | nakayama | explicit
  std::vector<std::string> module_paths;
  std::string dot_path, json_path;
  std::string check = "all";
  bool assert_complete = false;
  std::uint64_t budget_subsets = 1u << 16;
  std::uint64_t budget_submodules = 1u << 20;
  std::uint64_t budget_decompose = 1u << 16;
  std::uint64_t seed = 1;
};

template <class F>
int run_pipeline(const RunConfig& cfg, const AlgebraFile& file, std::ostream& out);

extern template int run_pipeline<Fp<2>>(const RunConfig&, const AlgebraFile&, std::ostream&);
extern template int run_pipeline<Fp<3>>(const RunConfig&, const AlgebraFile&, std::ostream&);
extern template int run_pipeline<Fp<5>>(const RunConfig&, const AlgebraFile&, std::ostream&);
extern template int run_pipeline<Fp<7>>(const RunConfig&, const AlgebraFile&, std::ostream&);
extern template int run_pipeline<Rational>(const RunConfig&, const AlgebraFile&, std::ostream&);

/// Loads the algebra, picks the field and runs the command. Errors are reported on err
/// and mapped to exit codes.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace cosilt

#include "cosilt/cli.hpp"

#include <ostream>

#include "cosilt/errors.hpp"

namespace cosilt {

namespace {

int dispatch(const RunConfig& cfg, const AlgebraFile& file, std::ostream& out) {
  if (file.field.kind == FieldDescriptor::Kind::rationals) return run_pipeline<Rational>(cfg, file, out);
  switch (file.field.prime) {
    case 2:
      return run_pipeline<Fp<2>>(cfg, file, out);
    case 3:
      return run_pipeline<Fp<3>>(cfg, file, out);
    case 5:
      return run_pipeline<Fp<5>>(cfg, file, out);
    case 7:
      return run_pipeline<Fp<7>>(cfg, file, out);
  }
  throw UnsupportedFieldError("field F_" + std::to_string(file.field.prime) + " is not built in; use 2, 3, 5, 7 or rationals");
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.algebra_path.empty()) throw InputError("missing --algebra");
    if (cfg.budget_subsets == 0 || cfg.budget_submodules == 0 || cfg.budget_decompose == 0)
      throw InputError("budgets must be positive");
    return dispatch(cfg, load_algebra(cfg.algebra_path), out);
  } catch (const ConsistencyError& e) {
    err << "consistency error: " << e.what() << "\n";
    return kConsistency;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const DimensionError& e) {
    err << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const UnsupportedFieldError& e) {
    err << "unsupported: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kConsistency;
  }
}

}  // namespace cosilt

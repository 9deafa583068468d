#include "nmcheck/smv_export.hpp"

#include <sstream>

namespace nmcheck {

std::string export_smv(const NMParams& params, const std::set<SpecId>& which, const SpecOptions& options) {
  params.validate();
  const int n = params.sections;
  const int m = params.levels;
  std::ostringstream out;

  out << "-- N-M switching control system: N = " << n << " sections, M = " << m << " levels\n";
  out << "-- requirement mode: " << (options.strict ? "strict" : "faithful")
      << (options.literal_paper ? ", literal level anchors" : "") << '\n';
  out << "MODULE main\n";
  out << "VAR\n";
  out << "  k : 0.." << n << ";\n";
  out << "  j : 1.." << m << ";\n";
  out << "  v : {none, low, normal, high};\n";
  out << "ASSIGN\n";
  out << "  init(k) := 0;\n";
  out << "  init(j) := " << params.start_level() << ";\n";
  out << "  init(v) := none;\n";
  out << "  next(k) := case\n";
  out << "    v = low & j = " << m << " & k > 0 : k - 1;\n";
  out << "    v = normal & k < " << n << " : k + 1;\n";
  out << "    v = high & j = 1 : 0;\n";
  out << "    TRUE : k;\n";
  out << "  esac;\n";
  out << "  next(j) := case\n";
  out << "    v = low & j < " << m << " : j + 1;\n";
  out << "    v = high & j > 1 : j - 1;\n";
  out << "    TRUE : j;\n";
  out << "  esac;\n";
  out << "  next(v) := {low, normal, high};\n";
  out << "DEFINE\n";
  for (int i = 1; i <= n; ++i) out << "  W" << i << " := k >= " << i << ";\n";
  for (int j = 1; j <= m; ++j) out << "  L" << j << " := j = " << j << ";\n";
  out << "  l := v = low;\n";
  out << "  n := v = normal;\n";
  out << "  h := v = high;\n";

  for (const auto& inst : instantiate(params, which, options)) {
    out << "-- " << inst.label();
    if (inst.polarity == Polarity::RefutationWitness) out << ": must be refuted; the counterexample witnesses D8";
    out << '\n';
    out << "LTLSPEC " << to_smv(inst.formula) << '\n';
  }
  return out.str();
}

}  // namespace nmcheck

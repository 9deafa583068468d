#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "nmcheck/nm_model.hpp"
#include "nmcheck/smv_export.hpp"

using namespace nmcheck;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(' ');
  const auto b = s.find_last_not_of(" ;");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, const std::string& sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (auto pos = s.find(sep); pos != std::string::npos; pos = s.find(sep, start)) {
    out.push_back(s.substr(start, pos - start));
    start = pos + sep.size();
  }
  out.push_back(s.substr(start));
  return out;
}

// A tiny interpreter for the subset of SMV the exporter emits: integer vars
// k, j and the enum v; case branches whose guards are conjunctions of
// comparisons; results that are constants or var +/- constant.
struct SmvState {
  int k;
  int j;
  std::string v;
};

int value_of(const SmvState& s, const std::string& name) {
  if (name == "k") return s.k;
  if (name == "j") return s.j;
  return std::stoi(name);
}

bool atom_true(const SmvState& s, const std::string& cmp) {
  if (cmp == "TRUE") return true;
  for (const char* op : {" >= ", " = ", " < ", " > "}) {
    const auto pos = cmp.find(op);
    if (pos == std::string::npos) continue;
    const auto lhs = cmp.substr(0, pos);
    const auto rhs = cmp.substr(pos + std::string(op).size());
    if (lhs == "v") return s.v == rhs;
    const int a = value_of(s, lhs);
    const int b = value_of(s, rhs);
    const std::string o = trim(op);
    if (o == ">=") return a >= b;
    if (o == "=") return a == b;
    if (o == "<") return a < b;
    return a > b;
  }
  FAIL("cannot interpret guard: " << cmp);
  return false;
}

int eval_expr(const SmvState& s, const std::string& e) {
  const auto parts = split(e, " ");
  if (parts.size() == 1) return value_of(s, parts[0]);
  REQUIRE(parts.size() == 3);
  const int a = value_of(s, parts[0]);
  const int b = value_of(s, parts[2]);
  return parts[1] == "+" ? a + b : a - b;
}

struct SmvModel {
  std::map<std::string, std::string> init;
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> cases;  // var -> (guard, result)
  std::map<std::string, std::string> defines;
  std::vector<std::string> next_v;
  std::vector<std::string> specs;

  static SmvModel parse(const std::string& text) {
    SmvModel m;
    std::istringstream in(text);
    std::string line;
    std::string in_case;
    bool in_define = false;
    while (std::getline(in, line)) {
      const auto t = trim(line);
      if (t.rfind("--", 0) == 0 || t.empty()) continue;
      if (t.rfind("LTLSPEC ", 0) == 0) {
        m.specs.push_back(t.substr(8));
        continue;
      }
      if (t == "DEFINE") {
        in_define = true;
        continue;
      }
      if (!in_case.empty()) {
        if (t == "esac") {
          in_case.clear();
          continue;
        }
        const auto colon = t.rfind(" : ");
        REQUIRE(colon != std::string::npos);
        m.cases[in_case].emplace_back(t.substr(0, colon), t.substr(colon + 3));
        continue;
      }
      if (t.rfind("init(", 0) == 0) {
        m.init[t.substr(5, 1)] = t.substr(t.find(":= ") + 3);
      } else if (t.rfind("next(v) := {", 0) == 0) {
        m.next_v = split(t.substr(12, t.size() - 13), ", ");
      } else if (t.rfind("next(", 0) == 0 && t.find("case") != std::string::npos) {
        in_case = t.substr(5, 1);
      } else if (in_define) {
        const auto eq = t.find(" := ");
        m.defines[t.substr(0, eq)] = t.substr(eq + 4);
      }
    }
    return m;
  }

  int step(const SmvState& s, const std::string& var) const {
    for (const auto& [guard, result] : cases.at(var)) {
      bool ok = true;
      for (const auto& cmp : split(guard, " & ")) ok = ok && atom_true(s, cmp);
      if (ok) return eval_expr(s, result);
    }
    FAIL("no case branch fired for " << var);
    return 0;
  }
};

const char* reading_name(Reading r) { return to_string(r); }

Reading reading_of(const std::string& v) {
  if (v == "low") return Reading::Low;
  if (v == "normal") return Reading::Normal;
  if (v == "high") return Reading::High;
  return Reading::None;
}

}  // namespace

TEST_CASE("golden export for N=3, M=2") {
  const auto text = export_smv({3, 2}, all_specs());
  CHECK(text == slurp(std::string(NMCHECK_GOLDEN_DIR) + "/nm_3_2.smv"));
  CHECK(export_smv({3, 2}, all_specs()) == text);
}

TEST_CASE("N=1, M=1 export") {
  const auto text = export_smv({1, 1}, all_specs());
  CHECK(text.find("k : 0..1;") != std::string::npos);
  CHECK(text.find("j : 1..1;") != std::string::npos);
  const auto m = SmvModel::parse(text);
  CHECK(m.specs.size() == 4);
  CHECK(text.find("must be refuted") != std::string::npos);
}

TEST_CASE("export follows the selected specs and mode") {
  const auto d2 = SmvModel::parse(export_smv({3, 2}, {SpecId::D2}));
  REQUIRE(d2.specs.size() == 1);
  CHECK(d2.specs[0] == "G((L1 & h) -> X((!W1 & !W2) & !W3))");
  const auto strict = export_smv({3, 2}, {SpecId::D1}, {true, false});
  CHECK(strict.find("strict") != std::string::npos);
  CHECK(strict.find("!W3") != std::string::npos);
  const auto w = export_smv({2, 2}, {SpecId::D8});
  CHECK(w.find("LTLSPEC !F(W1 & W2)") != std::string::npos);
}

TEST_CASE("interpreted next-state logic matches the controller") {
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= 3; ++m) {
      const NMParams p{n, m};
      const auto smv = SmvModel::parse(export_smv(p, all_specs()));
      CHECK(std::stoi(smv.init.at("k")) == 0);
      CHECK(std::stoi(smv.init.at("j")) == start_state(p).level);
      CHECK(smv.init.at("v") == "none");
      CHECK(smv.next_v == std::vector<std::string>{"low", "normal", "high"});
      for (int k = 0; k <= n; ++k) {
        for (int j = 1; j <= m; ++j) {
          for (auto r : {Reading::None, Reading::Low, Reading::Normal, Reading::High}) {
            const SmvState s{k, j, reading_name(r)};
            const auto c = controller_step(p, {k, j, r});
            CHECK(smv.step(s, "k") == c.powered);
            CHECK(smv.step(s, "j") == c.level);

            // DEFINEs give the same labels as the internal model.
            const auto atoms = nm_atoms(p);
            const auto label = nm_label(p, {k, j, r});
            for (AtomId a = 0; a < atoms.size(); ++a) {
              CHECK_MESSAGE(atom_true(s, smv.defines.at(atoms.name(a))) == label.contains(a), atoms.name(a));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("exported state space matches the generated model for N=2, M=2") {
  const NMParams p{2, 2};
  const auto smv = SmvModel::parse(export_smv(p, all_specs()));
  std::set<std::tuple<int, int, std::string>> seen;
  std::queue<SmvState> work;
  const SmvState init{std::stoi(smv.init.at("k")), std::stoi(smv.init.at("j")), smv.init.at("v")};
  work.push(init);
  seen.insert({init.k, init.j, init.v});
  while (!work.empty()) {
    const auto s = work.front();
    work.pop();
    const int k = smv.step(s, "k");
    const int j = smv.step(s, "j");
    for (const auto& v : smv.next_v) {
      if (seen.insert({k, j, v}).second) work.push({k, j, v});
    }
  }
  std::set<std::tuple<int, int, std::string>> internal;
  for (const auto& s : build_transition_system(p).states) internal.insert({s.powered, s.level, to_string(s.reading)});
  CHECK(seen == internal);
  CHECK(seen.size() == 19);
  for (const auto& [k, j, v] : seen) CHECK((reading_of(v) != Reading::None || (k == 0 && j == 1)));
}

TEST_CASE("external checker agrees when available") {
  if (std::system("command -v NuSMV > /dev/null 2>&1") != 0) {
    MESSAGE("NuSMV not found; skipping external cross-check");
    return;
  }
  const std::string path = "nm_3_2_check.smv";
  {
    std::ofstream out(path);
    out << export_smv({3, 2}, all_specs());
  }
  const std::string cmd = "NuSMV " + path + " 2>&1";
  std::string output;
  if (FILE* pipe = popen(cmd.c_str(), "r")) {
    char buf[4096];
    while (fgets(buf, sizeof buf, pipe)) output += buf;
    pclose(pipe);
  }
  std::size_t true_count = 0;
  std::size_t false_count = 0;
  for (std::size_t pos = 0; (pos = output.find("-- specification", pos)) != std::string::npos; ++pos) {
    const auto eol = output.find('\n', pos);
    const auto line = output.substr(pos, eol - pos);
    if (line.find("is true") != std::string::npos) ++true_count;
    if (line.find("is false") != std::string::npos) ++false_count;
  }
  CHECK(true_count == 16);  // D1..D7 instances
  CHECK(false_count == 1);  // D8'
}
